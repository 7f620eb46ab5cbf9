use rayon::prelude::*;
use serde::Serialize;

use super::profile::{prime_profile, PrimeProfile};
use super::ArithmeticError;
use crate::exact::rational::{pow_mod, primes_up_to};
use crate::exact::{mod_reduce_matrix, ExactError, ModMatrix, ModRing};
use crate::qmodule::QDiffSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Modulus {
    /// Reduction modulo p.
    P,
    /// Reduction modulo p^ell.
    PEll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "order", rename_all = "snake_case")]
pub enum CurvatureStatus {
    Identity,
    Unipotent(u32),
    Other,
    BadPrime,
}

impl CurvatureStatus {
    pub fn order(&self) -> Option<u32> {
        match self {
            CurvatureStatus::Identity => Some(1),
            CurvatureStatus::Unipotent(n) => Some(*n),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurvatureVerdict {
    pub p: u64,
    pub kappa: u64,
    pub ell: u32,
    pub modulus: Modulus,
    #[serde(flatten)]
    pub status: CurvatureStatus,
}

fn bad(p: u64) -> impl Fn(ExactError) -> ArithmeticError {
    move |e| match e {
        ExactError::BadPrime { .. } => ArithmeticError::BadPrime { p },
        other => ArithmeticError::Exact(other),
    }
}

/// Phi^kappa reduced modulo p^e, computed as A(x) A(qx) ... A(q^(kappa-1) x) over Z/p^e.
fn reduced_iterate(s: &QDiffSystem, prof: &PrimeProfile, e: u32) -> Result<ModMatrix, ArithmeticError> {
    let p = prof.p;
    let det = s.matrix().det();
    if det.gauss_valuation(p) != Some(0) {
        return Err(ArithmeticError::BadPrime { p });
    }
    let ring = ModRing::new(p, e).map_err(bad(p))?;
    let m = mod_reduce_matrix(s.matrix(), ring).map_err(bad(p))?;
    let qbar = ring.reduce(s.q()).ok_or(ArithmeticError::NotAUnit { p })?;
    let mut acc = ModMatrix::identity(ring, s.rank());
    for k in 0..prof.kappa {
        acc = acc.mul(&m.dilate(pow_mod(qbar, k, ring.modulus)));
    }
    Ok(acc)
}

fn exponent(prof: &PrimeProfile, modulus: Modulus) -> u32 {
    match modulus {
        Modulus::P => 1,
        Modulus::PEll => prof.ell,
    }
}

fn checked_profile(s: &QDiffSystem, p: u64) -> Result<PrimeProfile, ArithmeticError> {
    let prof = prime_profile(s.q(), p);
    prof.require_good()?;
    if !prof.strong {
        return Err(ArithmeticError::NotStrong { p });
    }
    Ok(prof)
}

/// Phi^kappa_p reduced modulo p^ell_p (or modulo p).
pub fn curvature_matrix(s: &QDiffSystem, p: u64, modulus: Modulus) -> Result<ModMatrix, ArithmeticError> {
    let prof = checked_profile(s, p)?;
    reduced_iterate(s, &prof, exponent(&prof, modulus))
}

/// Smallest n with (M - I)^n = 0, searched up to mu * e (the nilpotency bound over Z/p^e).
fn classify(m: &ModMatrix, mu: usize, e: u32) -> CurvatureStatus {
    let n1 = m.minus_identity();
    if n1.is_zero() {
        return CurvatureStatus::Identity;
    }
    let bound = (mu as u32 * e).max(1);
    let mut pw = n1.clone();
    for n in 2..=bound {
        pw = pw.mul(&n1);
        if pw.is_zero() {
            return CurvatureStatus::Unipotent(n);
        }
    }
    CurvatureStatus::Other
}

fn verdict_for(s: &QDiffSystem, prof: &PrimeProfile, modulus: Modulus) -> Result<CurvatureVerdict, ArithmeticError> {
    let e = exponent(prof, modulus);
    let status = match reduced_iterate(s, prof, e) {
        Ok(m) => classify(&m, s.rank(), e),
        Err(ArithmeticError::BadPrime { .. }) => CurvatureStatus::BadPrime,
        Err(other) => return Err(other),
    };
    Ok(CurvatureVerdict { p: prof.p, kappa: prof.kappa, ell: prof.ell, modulus, status })
}

pub fn curvature_is_identity(s: &QDiffSystem, p: u64) -> Result<CurvatureVerdict, ArithmeticError> {
    let prof = checked_profile(s, p)?;
    let v = verdict_for(s, &prof, Modulus::PEll)?;
    Ok(CurvatureVerdict {
        status: match v.status {
            CurvatureStatus::Identity | CurvatureStatus::BadPrime => v.status,
            _ => CurvatureStatus::Other,
        },
        ..v
    })
}

pub fn unipotent_order(s: &QDiffSystem, p: u64, modulus: Modulus) -> Result<CurvatureVerdict, ArithmeticError> {
    let prof = checked_profile(s, p)?;
    verdict_for(s, &prof, modulus)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub p: u64,
    pub kappa: u64,
    pub ell: u32,
    pub strong: bool,
    pub mod_p_ell: CurvatureStatus,
    pub mod_p: CurvatureStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedPrime {
    pub p: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ScanSummary {
    pub identity: usize,
    pub unipotent: usize,
    pub other: usize,
    pub bad: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub system_hash: String,
    pub q: String,
    pub pmax: u64,
    pub entries: Vec<ScanEntry>,
    pub skipped: Vec<SkippedPrime>,
    pub summary: ScanSummary,
}

impl ScanReport {
    pub fn all_identity(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.mod_p_ell, CurvatureStatus::Identity | CurvatureStatus::BadPrime))
    }

    pub fn any_non_identity(&self) -> bool {
        self.entries.iter().any(|e| matches!(e.mod_p_ell, CurvatureStatus::Unipotent(_) | CurvatureStatus::Other))
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        self.entries.iter().filter(|e| e.mod_p_ell == CurvatureStatus::BadPrime).map(|e| e.p).collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    /// Also scan good primes where |1 - q^kappa| >= |p|^(1/(p-1)).
    pub include_weak: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

fn scan_prime(s: &QDiffSystem, p: u64, opts: &ScanOptions) -> Result<ScanEntry, SkippedPrime> {
    let prof = prime_profile(s.q(), p);
    if !prof.good {
        return Err(SkippedPrime { p, reason: "q is not a unit".into() });
    }
    if !prof.strong && !opts.include_weak {
        return Err(SkippedPrime { p, reason: "not strong".into() });
    }
    let run = |m| verdict_for(s, &prof, m).map_err(|e| SkippedPrime { p, reason: e.to_string() });
    let hi = run(Modulus::PEll)?;
    let lo = run(Modulus::P)?;
    Ok(ScanEntry { p, kappa: prof.kappa, ell: prof.ell, strong: prof.strong, mod_p_ell: hi.status, mod_p: lo.status })
}

/// Curvature verdicts at every good strong prime p <= pmax, sorted by p.
pub fn curvature_scan(s: &QDiffSystem, pmax: u64, opts: ScanOptions) -> ScanReport {
    let primes = primes_up_to(pmax);
    let work = || primes.par_iter().map(|&p| scan_prime(s, p, &opts)).collect::<Vec<_>>();
    let results = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build().expect("thread pool").install(work),
        None => work(),
    };
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r {
            Ok(e) => entries.push(e),
            Err(sk) => skipped.push(sk),
        }
    }
    let mut summary = ScanSummary::default();
    for e in &entries {
        match e.mod_p_ell {
            CurvatureStatus::Identity => summary.identity += 1,
            CurvatureStatus::Unipotent(_) => summary.unipotent += 1,
            CurvatureStatus::Other => summary.other += 1,
            CurvatureStatus::BadPrime => summary.bad += 1,
        }
    }
    ScanReport { system_hash: s.system_hash(), q: s.q().to_string(), pmax, entries, skipped, summary }
}
