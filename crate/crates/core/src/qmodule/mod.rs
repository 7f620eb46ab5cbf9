//! q-difference modules presented by a matrix: Phi(e) = e A(x), Y(qx) = Y(x) A(x).

mod cyclic;
mod formal;
mod ops;

pub use cyclic::{casorati_rank, cyclic_vector, delta_cyclic_coefficients, CyclicVector};
pub use formal::{
    constant_form_at_zero, formal_solution, formal_solution_via_delta, is_trivial_over_formal,
    laurent_solutions, regular_presentation, FormalSolution, LaurentSolutions, Regularized,
};
pub use ops::{delta_matrices, dual, phi_iterate, power_system, tensor};

use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use crate::exact::{ExactError, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QModuleError {
    #[error("q must be a nonzero rational different from 1 and -1")]
    DegenerateQ,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular over Q(x)")]
    Singular,
    #[error("the system has a pole at x = 0 that no shearing removes")]
    PoleAtZero,
    #[error("A(0) is not the identity, so there is no solution in I + x Q[[x]]")]
    NotUnipotentAtZero,
    #[error("resonance at order {0}")]
    Resonant(usize),
    #[error("no cyclic vector found in the search range")]
    NoCyclicVector,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A q-difference system of rank mu over Q(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDiffSystem {
    q: Rational,
    a: RatMatrix,
}

impl QDiffSystem {
    pub fn new(q: Rational, a: RatMatrix) -> Result<Self, QModuleError> {
        if q.is_zero() || q.abs().is_one() {
            return Err(QModuleError::DegenerateQ);
        }
        if !a.is_square() {
            return Err(QModuleError::NotSquare);
        }
        if a.det().is_zero() {
            return Err(QModuleError::Singular);
        }
        Ok(QDiffSystem { q, a })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn rank(&self) -> usize {
        self.a.rows
    }

    /// Canonical text: q followed by the entries in row-major order.
    pub fn canonical_text(&self) -> String {
        format!("q={};A={}", self.q, self.a)
    }

    pub fn system_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    Zero,
    Infinity,
}

/// Regular presentation at a point: A and A^(-1) have no pole there and A is invertible at it.
pub fn is_regular_singular_presentation(s: &QDiffSystem, at: Point) -> bool {
    let a = s.matrix();
    let m = match at {
        Point::Zero => a.clone(),
        Point::Infinity => a.map(substitute_inverse),
    };
    match m.value_at_zero() {
        Some(v) => !v.det().is_zero(),
        None => false,
    }
}

/// f(1/t) written as a rational function of t.
fn substitute_inverse(f: &crate::exact::RatFun) -> crate::exact::RatFun {
    let dn = f.num().degree().unwrap_or(0);
    let dd = f.den().degree().unwrap();
    let d = dn.max(dd);
    let rev = |p: &crate::exact::Poly| {
        let mut c = p.coeffs().to_vec();
        c.resize(d + 1, Rational::zero());
        c.reverse();
        crate::exact::Poly::new(c)
    };
    crate::exact::RatFun::new(rev(f.num()), rev(f.den())).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Poly, RatFun};

    #[test]
    fn regular_points() {
        let x = RatFun::x();
        let a = RatMatrix::diag(vec![&RatFun::one() + &x, RatFun::from_i64(2)]);
        let s = QDiffSystem::new(rat(2), a).unwrap();
        assert!(is_regular_singular_presentation(&s, Point::Zero));
        assert!(!is_regular_singular_presentation(&s, Point::Infinity));
        let b = RatMatrix::diag(vec![RatFun::new(Poly::from_i64(&[1, 2]), Poly::from_i64(&[3, 1])).unwrap()]);
        let s = QDiffSystem::new(rat(2), b).unwrap();
        assert!(is_regular_singular_presentation(&s, Point::Infinity));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert_eq!(QDiffSystem::new(rat(1), RatMatrix::identity(1)), Err(QModuleError::DegenerateQ));
        assert_eq!(QDiffSystem::new(rat(2), RatMatrix::zero(1, 1)), Err(QModuleError::Singular));
    }
}
