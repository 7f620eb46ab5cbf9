use num_traits::{One, Zero};

use super::ops::delta_matrices;
use super::{QDiffSystem, QModuleError};
use crate::exact::linalg::{nullspace, solve};
use crate::exact::rational::pow_rational;
use crate::exact::{q_power_test, rational_roots, QMatrix, RatFun, RatMatrix, Rational};
use crate::qcalc::q_factorial;

/// Truncated fundamental solution Y(x) = sum_n Y_n x^n at x = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSolution {
    pub q: Rational,
    pub coeffs: Vec<QMatrix>,
}

impl FormalSolution {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

fn regular_taylor(a: &RatMatrix, n: usize) -> Result<Vec<QMatrix>, QModuleError> {
    a.taylor(n).ok_or(QModuleError::PoleAtZero)
}

/// Y_0 = I and Y_n (q^n - 1) = sum_(k >= 1) Y_(n-k) A_k, i.e. sum_n G_n(0)/[n]_q! x^n.
/// Requires A regular at 0 with A(0) = I.
pub fn formal_solution(s: &QDiffSystem, order: usize) -> Result<FormalSolution, QModuleError> {
    let mu = s.rank();
    let ak = regular_taylor(s.matrix(), order + 1)?;
    if ak[0] != QMatrix::identity(mu) {
        return Err(QModuleError::NotUnipotentAtZero);
    }
    let mut ys = vec![QMatrix::identity(mu)];
    for n in 1..=order {
        let mut rhs = QMatrix::zero(mu, mu);
        for k in 1..=n {
            if ak[k].is_zero() {
                continue;
            }
            rhs = &rhs + &(&ys[n - k] * &ak[k]);
        }
        let c = pow_rational(s.q(), n as i64) - Rational::one();
        ys.push(rhs.scale(&c.recip()));
    }
    Ok(FormalSolution { q: s.q().clone(), coeffs: ys })
}

/// Same series computed as G_n(0)/[n]_q!.
pub fn formal_solution_via_delta(s: &QDiffSystem, order: usize) -> Result<FormalSolution, QModuleError> {
    let gs = delta_matrices(s, order);
    let mut coeffs = Vec::with_capacity(order + 1);
    for (n, g) in gs.iter().enumerate() {
        let g0 = g.value_at_zero().ok_or(QModuleError::PoleAtZero)?;
        coeffs.push(g0.scale(&q_factorial(n as u64, s.q()).recip()));
    }
    Ok(FormalSolution { q: s.q().clone(), coeffs })
}

/// F(x) = I + sum F_n x^n with F(qx) A(0) = A(x) F(x) mod x^(N+1).
pub fn constant_form_at_zero(s: &QDiffSystem, order: usize) -> Result<Vec<QMatrix>, QModuleError> {
    let mu = s.rank();
    let ak = regular_taylor(s.matrix(), order + 1)?;
    let a0 = &ak[0];
    if a0.det().is_zero() {
        return Err(QModuleError::PoleAtZero);
    }
    let mut fs = vec![QMatrix::identity(mu)];
    for n in 1..=order {
        let mut rhs = QMatrix::zero(mu, mu);
        for k in 1..=n {
            rhs = &rhs + &(&ak[k] * &fs[n - k]);
        }
        let qn = pow_rational(s.q(), n as i64);
        // unknown X, equation q^n X A0 - A0 X = rhs, vectorized row-major
        let mut rows = vec![vec![Rational::zero(); mu * mu]; mu * mu];
        for i in 0..mu {
            for j in 0..mu {
                let r = i * mu + j;
                for k in 0..mu {
                    rows[r][i * mu + k] += &qn * a0.get(k, j);
                    rows[r][k * mu + j] -= a0.get(i, k);
                }
            }
        }
        let lhs = QMatrix::from_rows(rows.clone());
        if lhs.det().is_zero() {
            return Err(QModuleError::Resonant(n));
        }
        let b: Vec<Rational> = (0..mu * mu).map(|r| rhs.get(r / mu, r % mu).clone()).collect();
        let x = solve(&rows, mu * mu, &b).expect("nonsingular");
        fs.push(QMatrix::from_fn(mu, mu, |i, j| x[i * mu + j].clone()));
    }
    Ok(fs)
}

/// A presentation regular at 0 obtained by a diagonal shearing, possibly of the reversed system.
#[derive(Clone, Debug)]
pub struct Regularized {
    pub system: QDiffSystem,
    /// Solutions of the original system are y_j = z_j x^(shifts[j]).
    pub shifts: Vec<i64>,
    pub reversed: bool,
}

/// Finds s with ord_0(A_ij) + s_i - s_j >= 0, then B_ij = q^(-s_j) x^(s_i - s_j) A_ij.
fn shear(s: &QDiffSystem, cap: i64) -> Option<(QDiffSystem, Vec<i64>)> {
    let a = s.matrix();
    let mu = s.rank();
    let ord: Vec<Vec<Option<i64>>> =
        (0..mu).map(|i| (0..mu).map(|j| a.get(i, j).order_at_zero()).collect()).collect();
    let mut sh = vec![0i64; mu];
    for round in 0..=mu {
        let mut changed = false;
        for i in 0..mu {
            for j in 0..mu {
                if let Some(o) = ord[i][j] {
                    if sh[j] > sh[i] + o {
                        sh[j] = sh[i] + o;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
        if round == mu {
            return None;
        }
    }
    if sh.iter().any(|v| v.abs() > cap) {
        return None;
    }
    let q = s.q();
    let b = RatMatrix::from_fn(mu, mu, |i, j| {
        let mono = RatFun::x().pow(sh[i] - sh[j]).unwrap().scale(&pow_rational(q, -sh[j]));
        &mono * a.get(i, j)
    });
    Some((QDiffSystem::new(q.clone(), b).ok()?, sh))
}

/// Tries the system and its reversal (1/q, A(x/q)^(-1)), which has the same solutions.
pub fn regular_presentation(s: &QDiffSystem, cap: i64) -> Option<Regularized> {
    if let Some((sys, shifts)) = shear(s, cap) {
        return Some(Regularized { system: sys, shifts, reversed: false });
    }
    let qi = s.q().recip();
    let rev = s.matrix().dilate(&qi).inverse().ok()?;
    let rs = QDiffSystem::new(qi, rev).ok()?;
    let (sys, shifts) = shear(&rs, cap)?;
    Some(Regularized { system: sys, shifts, reversed: true })
}

/// Basis of Laurent series row solutions at 0 of a system regular at 0.
#[derive(Clone, Debug)]
pub struct LaurentSolutions {
    /// Index of the first stored coefficient.
    pub start: i64,
    /// `basis[b][n][j]` is the coefficient of x^(start + n) in component j of solution b.
    pub basis: Vec<Vec<Vec<Rational>>>,
}

impl LaurentSolutions {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Exponents n in Z with q^n an eigenvalue of A(0).
pub fn resonant_indices(a0: &QMatrix, q: &Rational) -> Vec<i64> {
    let mut out: Vec<i64> = rational_roots(&a0.char_poly())
        .iter()
        .filter(|l| !l.is_zero())
        .filter_map(|l| q_power_test(l, q))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Laurent solutions y(qx) = y(x) A(x) computed to `terms` coefficients past the lowest
/// exponent, always continuing past the last resonant index.
pub fn laurent_solutions(s: &QDiffSystem, terms: usize) -> Result<LaurentSolutions, QModuleError> {
    let mu = s.rank();
    let q = s.q();
    let a0 = s.matrix().value_at_zero().ok_or(QModuleError::PoleAtZero)?;
    let res = resonant_indices(&a0, q);
    if res.is_empty() {
        return Ok(LaurentSolutions { start: 0, basis: Vec::new() });
    }
    let n0 = res[0];
    let n_end = (*res.last().unwrap()).max(n0 + terms as i64 - 1);
    let len = (n_end - n0 + 1) as usize;
    let ak = regular_taylor(s.matrix(), len)?;
    // ys[m] is (#params x mu), coefficient of x^(n0 + m)
    let mut ys: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(len);
    let mut nparams = 0usize;
    for m in 0..len {
        let n = n0 + m as i64;
        let mut rhs = vec![vec![Rational::zero(); mu]; nparams];
        for k in 1..=m {
            if ak[k].is_zero() {
                continue;
            }
            for (pi, row) in rhs.iter_mut().enumerate() {
                let prod = QMatrix::vec_mul(&ys[m - k][pi], &ak[k]);
                for (r, v) in row.iter_mut().zip(prod) {
                    *r += v;
                }
            }
        }
        let mm = &QMatrix::identity(mu).scale(&pow_rational(q, n)) - &a0;
        if !res.contains(&n) {
            let inv = mm.inverse().expect("non-resonant");
            ys.push(rhs.iter().map(|r| QMatrix::vec_mul(r, &inv)).collect());
            continue;
        }
        let kern = mm.right_kernel();
        // constraint c_p = rhs_p . k for each kernel vector k
        let cons: Vec<Vec<Rational>> = rhs
            .iter()
            .map(|r| kern.iter().map(|k| r.iter().zip(k).map(|(a, b)| a * b).sum()).collect())
            .collect();
        if nparams > 0 && !kern.is_empty() {
            let ct: Vec<Vec<Rational>> =
                (0..kern.len()).map(|c| (0..nparams).map(|p| cons[p][c].clone()).collect()).collect();
            let t = nullspace(&ct, nparams);
            if t.len() < nparams {
                let remap = |rows: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
                    t.iter()
                        .map(|tr| {
                            let mut acc = vec![Rational::zero(); mu];
                            for (c, row) in tr.iter().zip(rows) {
                                if c.is_zero() {
                                    continue;
                                }
                                for (a, v) in acc.iter_mut().zip(row) {
                                    *a += c * v;
                                }
                            }
                            acc
                        })
                        .collect()
                };
                for y in ys.iter_mut() {
                    *y = remap(y);
                }
                rhs = remap(&rhs);
                nparams = t.len();
            }
        }
        let mt = mm.transpose().to_rows();
        let mut yn: Vec<Vec<Rational>> =
            rhs.iter().map(|r| solve(&mt, mu, r).expect("constraints imposed")).collect();
        let fresh = mm.left_kernel();
        for y in ys.iter_mut() {
            for _ in 0..fresh.len() {
                y.push(vec![Rational::zero(); mu]);
            }
        }
        nparams += fresh.len();
        yn.extend(fresh);
        ys.push(yn);
    }
    let basis = (0..nparams).map(|p| ys.iter().map(|y| y[p].clone()).collect()).collect();
    Ok(LaurentSolutions { start: n0, basis })
}

/// Triviality over Q((x)): the Laurent solution space at 0 has full dimension.
pub fn is_trivial_over_formal(s: &QDiffSystem, order: usize) -> Result<bool, QModuleError> {
    let reg = regular_presentation(s, order.max(64) as i64).ok_or(QModuleError::PoleAtZero)?;
    let sols = laurent_solutions(&reg.system, order.max(1))?;
    Ok(sols.dimension() == s.rank())
}
