//! Exact arithmetic substrate: Q, Q[x], Q(x), matrices, reductions mod p^ell.

pub mod factor;
pub mod linalg;
pub mod matrix;
pub mod modring;
pub mod poly;
pub mod qpower;
pub mod ratfun;
pub mod rational;

pub use factor::{factor_poly, rational_roots, Factorization};
pub use linalg::QMatrix;
pub use matrix::RatMatrix;
pub use modring::{mod_reduce, mod_reduce_matrix, ModMatrix, ModPoly, ModRatFun, ModRing};
pub use poly::Poly;
pub use qpower::{q_power_test, q_rational_power_test, rational_q_power, rational_root};
pub use ratfun::RatFun;
pub use rational::{rat, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("bad prime {p}: a denominator vanishes or a coefficient is not p-integral")]
    BadPrime { p: u64 },
    #[error("modulus {p}^{ell} does not fit in 62 bits")]
    ModulusOverflow { p: u64, ell: u32 },
}
