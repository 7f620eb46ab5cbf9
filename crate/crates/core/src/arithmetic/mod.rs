//! p-adic invariants: prime profiles, curvature, radii of convergence and size.

pub mod chi;
pub mod curvature;
pub mod profile;
pub mod size;

use thiserror::Error;

use crate::exact::ExactError;

pub use chi::{chi_bounds, chi_truncated, ChiBound, ChiBoundKind, ChiBoundsReport, ChiContext, ChiEstimate, Relation};
pub use curvature::{
    curvature_is_identity, curvature_matrix, curvature_scan, unipotent_order, CurvatureStatus, CurvatureVerdict,
    Modulus, ScanOptions, ScanReport,
};
pub use profile::{kappa, prime_profile, PrimeProfile};
pub use size::{compare_kappa_profiles, kappa_sum_partial, size_partial, KappaSum, SizeReport, SizeTarget};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("q is not a {p}-adic unit")]
    NotAUnit { p: u64 },
    #[error("prime {p} is not strong for q")]
    NotStrong { p: u64 },
    #[error("A or its inverse has a pole modulo {p}")]
    BadPrime { p: u64 },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
