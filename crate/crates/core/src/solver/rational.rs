use num_traits::{One, Zero};
use serde::Serialize;

use super::order1::order1_rational_test;
use super::SolverError;
use crate::exact::{Poly, RatFun, RatMatrix, Rational};
use crate::qmodule::{laurent_solutions, regular_presentation, QDiffSystem};

/// Row solutions y(qx) = y(x) A(x), verified by substitution.
#[derive(Clone, Debug, Serialize)]
pub struct RationalSolutionBasis {
    #[serde(serialize_with = "super::ser_ratfun_rows")]
    pub solutions: Vec<Vec<RatFun>>,
    /// det of the matrix whose rows are the solutions; nonzero.
    #[serde(serialize_with = "super::ser_ratfun")]
    pub certificate: RatFun,
}

impl RationalSolutionBasis {
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.solutions.clone()).expect("rectangular")
    }
}

/// Exact check of y(qx) = y(x) A(x).
pub fn is_solution(s: &QDiffSystem, y: &[RatFun]) -> bool {
    let a = s.matrix();
    (0..s.rank()).all(|j| {
        let mut acc = RatFun::zero();
        for (i, yi) in y.iter().enumerate() {
            if !yi.is_zero() {
                acc = &acc + &(yi * a.get(i, j));
            }
        }
        acc == y[j].dilate(s.q())
    })
}

/// Padé approximant P/Q of f with deg P, deg Q <= d, from 2d + 1 coefficients.
pub fn pade(f: &[Rational], d: usize) -> Option<(Poly, Poly)> {
    let len = 2 * d + 1;
    if f.len() < len {
        return None;
    }
    let mut r0 = Poly::monomial(Rational::one(), len);
    let mut r1 = Poly::new(f[..len].to_vec());
    let mut t0 = Poly::zero();
    let mut t1 = Poly::one();
    while r1.degree().map_or(false, |dg| dg > d) {
        let (quo, rem) = r0.div_rem(&r1);
        let t2 = &t0 - &(&quo * &t1);
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.coeff(0).is_zero() || t1.degree().unwrap_or(0) > d {
        return None;
    }
    Some((r1, t1))
}

/// Q f - P vanishes on all available coefficients.
fn matches_series(f: &[Rational], p: &Poly, q: &Poly) -> bool {
    (0..f.len()).all(|n| {
        let mut acc = -p.coeff(n);
        for (k, qk) in q.coeffs().iter().enumerate().take(n + 1) {
            if !qk.is_zero() {
                acc += qk * &f[n - k];
            }
        }
        acc.is_zero()
    })
}

/// Smallest d <= cap whose Padé approximant reproduces every given coefficient.
pub fn reconstruct(f: &[Rational], cap: usize) -> Option<RatFun> {
    if f.iter().all(|c| c.is_zero()) {
        return Some(RatFun::zero());
    }
    for d in 0..=cap {
        if let Some((p, q)) = pade(f, d) {
            if matches_series(f, &p, &q) {
                return RatFun::new(p, q).ok();
            }
        }
    }
    None
}

/// Rational solution basis via Laurent series at 0, Padé reconstruction and exact verification.
///
/// `Ok(None)` is a proof that no full basis exists (too few Laurent solutions, or the exact
/// order one test in rank one); `Err(Inconclusive)` means reconstruction failed at the cap.
pub fn rational_solutions(
    s: &QDiffSystem,
    degree_cap: usize,
    terms: usize,
) -> Result<Option<RationalSolutionBasis>, SolverError> {
    let mu = s.rank();
    let exact_rank1 = || -> Result<Option<RationalSolutionBasis>, SolverError> {
        match order1_rational_test(s.matrix().get(0, 0), s.q()) {
            Some(f) => Ok(Some(RationalSolutionBasis { solutions: vec![vec![f.clone()]], certificate: f })),
            None => Ok(None),
        }
    };
    let reg = match regular_presentation(s, degree_cap as i64) {
        Some(r) => r,
        None if mu == 1 => return exact_rank1(),
        None => return Err(SolverError::PoleAtZero),
    };
    let terms = terms.max(2 * degree_cap + 4);
    let laurent = laurent_solutions(&reg.system, terms)?;
    if laurent.dimension() < mu {
        return Ok(None);
    }
    let mut solutions = Vec::with_capacity(mu);
    for b in &laurent.basis {
        let mut y = Vec::with_capacity(mu);
        for j in 0..mu {
            let series: Vec<Rational> = b.iter().map(|c| c[j].clone()).collect();
            let Some(f) = reconstruct(&series, degree_cap) else {
                return if mu == 1 { exact_rank1() } else { Err(SolverError::Inconclusive(degree_cap)) };
            };
            let shift = laurent.start + reg.shifts[j];
            y.push(&f * &RatFun::x().pow(shift).expect("x is a unit"));
        }
        if !is_solution(s, &y) {
            return if mu == 1 { exact_rank1() } else { Err(SolverError::Inconclusive(degree_cap)) };
        }
        solutions.push(y);
    }
    let certificate = RatMatrix::from_rows(solutions.clone()).expect("square").det();
    if certificate.is_zero() {
        return Err(SolverError::Inconclusive(degree_cap));
    }
    Ok(Some(RationalSolutionBasis { solutions, certificate }))
}
