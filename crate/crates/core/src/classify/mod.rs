//! Generic Galois groups of the worked families and the q-analogue of Schwarz's list.

mod galois;
mod hypergeom;
mod schwarz;

use thiserror::Error;

use crate::exact::ExactError;
use crate::qmodule::QModuleError;

pub use galois::{
    antidiagonal_instance, curvature_membership, galois_antidiagonal2, galois_rank1, galois_triangular2,
    rank1_instance, triangular_instance, GaloisInstance, GroupDescriptor, MembershipReport,
};
pub use hypergeom::{
    hypergeom_operator, hypergeom_system, phi21_defined, phi21_truncate, HypergeomParams, QParam, QEXP_DCAP,
};
pub use schwarz::{
    goursat_rational, in_z_set, log_singularity_infinity, log_singularity_zero, schwarz_algebraic, schwarz_rational,
    z_clause, SchwarzVerdict, Witness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("the basic hypergeometric series is not defined for these parameters")]
    UndefinedParameters,
    #[error("parameter {0} is not a rational number")]
    NotRational(String),
    #[error("abx - c/q vanishes identically")]
    DegenerateEquation,
    #[error(transparent)]
    Module(#[from] QModuleError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
