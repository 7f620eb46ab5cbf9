use num_traits::One;

use super::QDiffSystem;
use crate::exact::{Poly, RatFun, RatMatrix, Rational};
use crate::exact::rational::pow_rational;
use crate::qcalc::dq;

/// A_n(x) = A(x) A(qx) ... A(q^(n-1) x), the matrix of Phi^n.
pub fn phi_iterate(s: &QDiffSystem, n: u64) -> RatMatrix {
    let mut acc = RatMatrix::identity(s.rank());
    for k in 0..n {
        acc = &acc * &s.matrix().dilate_q(s.q(), k as i64);
    }
    acc
}

/// G_0 = I, G_1 = (A - I)/((q-1)x), G_(n+1) = G_1 G_n(qx) + d_q G_n.
pub fn delta_matrices(s: &QDiffSystem, n: usize) -> Vec<RatMatrix> {
    let mu = s.rank();
    let q = s.q();
    let g1 = delta_matrix(s);
    let mut out = vec![RatMatrix::identity(mu)];
    for k in 0..n {
        let prev = &out[k];
        let next = if k == 0 {
            g1.clone()
        } else {
            &(&g1 * &prev.dilate(q)) + &prev.map(|f| dq(f, q))
        };
        out.push(next);
    }
    out
}

pub(crate) fn delta_matrix(s: &QDiffSystem) -> RatMatrix {
    let mu = s.rank();
    let den = RatFun::from_poly(Poly::monomial(s.q() - Rational::one(), 1)).inv().unwrap();
    (s.matrix() - &RatMatrix::identity(mu)).scale(&den)
}

/// Dual module: matrix (A^(-1))^T.
pub fn dual(s: &QDiffSystem) -> QDiffSystem {
    let b = s.matrix().inverse().expect("invertible by construction").transpose();
    QDiffSystem::new(s.q().clone(), b).unwrap()
}

/// Tensor product: Kronecker product of the matrices; q must agree.
pub fn tensor(s1: &QDiffSystem, s2: &QDiffSystem) -> Option<QDiffSystem> {
    if s1.q() != s2.q() {
        return None;
    }
    QDiffSystem::new(s1.q().clone(), s1.matrix().kron(s2.matrix())).ok()
}

/// The module seen as a q^k-difference module: (q^k, A_k).
pub fn power_system(s: &QDiffSystem, k: u64) -> QDiffSystem {
    QDiffSystem::new(pow_rational(s.q(), k as i64), phi_iterate(s, k)).unwrap()
}
