//! Rational solutions: exact order one decisions, series reconstruction for higher rank,
//! and the two-sided curvature test.

mod order1;
mod rational;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::arithmetic::curvature::{curvature_scan, CurvatureStatus, ScanOptions, ScanReport};
use crate::exact::RatFun;
use crate::qmodule::{QDiffSystem, QModuleError};

pub use order1::{order1_kummer_test, order1_rational_test, KummerSolution, ScaledRatFun};
pub use rational::{is_solution, pade, rational_solutions, reconstruct, RationalSolutionBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("no rational basis reconstructed at degree cap {0}")]
    Inconclusive(usize),
    #[error("no admissible shearing makes the system regular at 0")]
    PoleAtZero,
    #[error(transparent)]
    Module(#[from] QModuleError),
}

pub(crate) fn ser_ratfun<S: Serializer>(f: &RatFun, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

pub(crate) fn ser_ratfun_rows<S: Serializer>(rows: &[Vec<RatFun>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        let strs: Vec<String> = r.iter().map(|f| f.to_string()).collect();
        seq.serialize_element(&strs)?;
    }
    seq.end()
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SolverOutcome {
    Basis(RationalSolutionBasis),
    /// Proven: no full rational basis.
    NoBasis,
    Inconclusive { degree_cap: usize },
    Failed { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    ConsistentTrivial,
    ConsistentNontrivial,
    Inconsistent { details: String },
    Inconclusive { degree_cap: usize, reason: String },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Caps {
    pub degree_cap: usize,
    pub terms: usize,
    pub pmax: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrothendieckReport {
    pub verdict: Verdict,
    pub scan: ScanReport,
    pub solver: SolverOutcome,
    pub solutions: Vec<Vec<String>>,
    pub caps: Caps,
}

/// Curvature scan and rational solving, run concurrently, compared.
pub fn grothendieck_test(
    s: &QDiffSystem,
    pmax: u64,
    degree_cap: usize,
    terms: usize,
    opts: ScanOptions,
) -> GrothendieckReport {
    let (scan, solved) = rayon::join(|| curvature_scan(s, pmax, opts), || rational_solutions(s, degree_cap, terms));
    let solver = match solved {
        Ok(Some(b)) => SolverOutcome::Basis(b),
        Ok(None) => SolverOutcome::NoBasis,
        Err(SolverError::Inconclusive(c)) => SolverOutcome::Inconclusive { degree_cap: c },
        Err(e) => SolverOutcome::Failed { reason: e.to_string() },
    };
    let failing: Vec<u64> = scan
        .entries
        .iter()
        .filter(|e| matches!(e.mod_p_ell, CurvatureStatus::Other | CurvatureStatus::Unipotent(_)))
        .map(|e| e.p)
        .collect();
    let verdict = match (&solver, failing.is_empty()) {
        (SolverOutcome::Basis(_), true) => Verdict::ConsistentTrivial,
        (SolverOutcome::Basis(_), false) => Verdict::Inconsistent {
            details: format!("verified rational basis but non-identity curvature at p in {failing:?}"),
        },
        (_, false) => Verdict::ConsistentNontrivial,
        (SolverOutcome::NoBasis, true) => Verdict::Inconclusive {
            degree_cap,
            reason: "identity curvature up to pmax but no full rational basis".into(),
        },
        (SolverOutcome::Inconclusive { .. }, true) => {
            Verdict::Inconclusive { degree_cap, reason: "reconstruction reached the degree cap".into() }
        }
        (SolverOutcome::Failed { reason }, true) => Verdict::Inconclusive { degree_cap, reason: reason.clone() },
    };
    let solutions = match &solver {
        SolverOutcome::Basis(b) => b.solutions.iter().map(|y| y.iter().map(|f| f.to_string()).collect()).collect(),
        _ => Vec::new(),
    };
    GrothendieckReport { verdict, scan, solver, solutions, caps: Caps { degree_cap, terms, pmax } }
}
