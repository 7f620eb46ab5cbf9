use num_traits::{Signed, Zero};
use serde::Serialize;

use super::curvature::{unipotent_order, Modulus};
use super::profile::{prime_profile, valuation_one_minus_q_power, PrimeProfile};
use super::ArithmeticError;
use crate::exact::rational::ser;
use crate::exact::{RatFun, Rational};
use crate::qcalc::{q_factorial_valuation, q_int_valuation};
use crate::qmodule::{cyclic_vector, delta_cyclic_coefficients, delta_matrices, QDiffSystem};

/// Truncated radius data: h(n) = sup_(s <= n) log_p |G_s / [s]_q!| for n = 0..N.
/// All values are exponents of p; `log_chi = -h(N)/N` estimates log_p of the radius.
#[derive(Clone, Debug, Serialize)]
pub struct ChiEstimate {
    pub p: u64,
    pub n: usize,
    #[serde(serialize_with = "ser::vec_rational")]
    pub h: Vec<Rational>,
    #[serde(serialize_with = "ser::rational")]
    pub log_chi: Rational,
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn frac(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// h(n) for the Delta-matrices of a system, exactly, for a prime where q is a unit.
pub fn h_sequence(s: &QDiffSystem, p: u64, n: usize) -> Result<Vec<Rational>, ArithmeticError> {
    let prof = prime_profile(s.q(), p);
    prof.require_good()?;
    let gs = delta_matrices(s, n);
    let mut out = Vec::with_capacity(n + 1);
    let mut best = Rational::zero();
    for (k, g) in gs.iter().enumerate() {
        if let Some(v) = g.gauss_valuation(p) {
            let vf = q_factorial_valuation(k as u64, p, s.q()).map_err(|_| ArithmeticError::NotAUnit { p })?;
            let val = r(vf - v);
            if val > best {
                best = val;
            }
        }
        out.push(best.clone());
    }
    Ok(out)
}

pub fn chi_truncated(s: &QDiffSystem, p: u64, n: usize) -> Result<ChiEstimate, ArithmeticError> {
    if n == 0 {
        return Err(ArithmeticError::HypothesisNotMet("truncation order must be positive".into()));
    }
    let h = h_sequence(s, p, n)?;
    let log_chi = -(&h[n] / r(n as i64));
    Ok(ChiEstimate { p, n, h, log_chi })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChiBoundKind {
    /// chi >= |[kappa]|^(1/kappa) |p|^(1/(kappa(p-1))) / sup(|G|, 1).
    Trivial,
    /// Phi^kappa unipotent of order n modulo p.
    NilpotentModP { n: u32 },
    /// Phi^kappa unipotent of order n modulo 1 - q^kappa.
    NilpotentModPEll { n: u32 },
    /// kappa = 1 and a cyclic form with sup |a_i| > 1: closed form.
    DworkFrobenius,
    /// |1 - q^kappa| >= |p|^(1/(p-1)): two-sided bound.
    WeakRange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtLeast,
    Equal,
    Between,
}

/// Bounds on log_p chi.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiBound {
    #[serde(flatten)]
    pub kind: ChiBoundKind,
    pub relation: Relation,
    #[serde(serialize_with = "ser::rational")]
    pub lower: Rational,
    #[serde(serialize_with = "ser::opt_rational")]
    pub upper: Option<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedBound {
    pub kind: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiBoundsReport {
    pub profile: PrimeProfile,
    pub bounds: Vec<ChiBound>,
    pub skipped: Vec<SkippedBound>,
}

#[derive(Clone, Debug, Default)]
pub struct ChiContext {
    /// Coefficients a_0..a_(mu-1) of a Delta-cyclic form.
    pub cyclic_coefficients: Option<Vec<RatFun>>,
    pub order_mod_p: Option<u32>,
    pub order_mod_p_ell: Option<u32>,
}

fn sup_g_exponent(s: &QDiffSystem, p: u64) -> Rational {
    let g1 = &delta_matrices(s, 1)[1];
    match g1.gauss_valuation(p) {
        Some(v) if v < 0 => r(-v),
        _ => Rational::zero(),
    }
}

fn skip(kind: &str, reason: &str) -> SkippedBound {
    SkippedBound { kind: kind.into(), reason: reason.into() }
}

/// Every applicable closed-form bound on log_p chi, with skipped ones recorded.
pub fn chi_bounds(s: &QDiffSystem, p: u64, ctx: &ChiContext) -> Result<ChiBoundsReport, ArithmeticError> {
    let prof = prime_profile(s.q(), p);
    prof.require_good()?;
    let kappa = prof.kappa as i64;
    let vk = q_int_valuation(prof.kappa, p, s.q());
    let base = -frac(1, kappa * (p as i64 - 1));
    let sup_g = sup_g_exponent(s, p);
    let mut bounds = Vec::new();
    let mut skipped = Vec::new();

    if !prof.strong {
        let mut e = 1u64;
        let thr = frac(1, p as i64 - 1);
        let ve = loop {
            let v = valuation_one_minus_q_power(s.q(), e * prof.kappa, p);
            if r(v) > thr {
                break v;
            }
            e += 1;
        };
        let ek = e as i64 * kappa;
        let lower = -&sup_g + &base - frac(ve, ek);
        let upper = -&sup_g - frac(vk, kappa);
        bounds.push(ChiBound { kind: ChiBoundKind::WeakRange, relation: Relation::Between, lower, upper: Some(upper) });
        for k in ["trivial", "nilpotent_mod_p", "nilpotent_mod_p_ell", "dwork_frobenius"] {
            skipped.push(skip(k, "requires |1 - q^kappa| < |p|^(1/(p-1))"));
        }
        return Ok(ChiBoundsReport { profile: prof, bounds, skipped });
    }
    skipped.push(skip("weak_range", "prime is strong"));

    bounds.push(ChiBound {
        kind: ChiBoundKind::Trivial,
        relation: Relation::AtLeast,
        lower: -frac(vk, kappa) + &base - &sup_g,
        upper: None,
    });

    let order = |given: Option<u32>, m: Modulus| -> Option<u32> {
        given.or_else(|| unipotent_order(s, p, m).ok().and_then(|v| v.status.order()))
    };
    let delta_small = |n: u32| {
        let m = n as usize * prof.kappa as usize;
        delta_matrices(s, m)[m].gauss_valuation(p).map_or(true, |v| v >= 1)
    };
    match order(ctx.order_mod_p, Modulus::P) {
        Some(n) if !delta_small(n) => {
            skipped.push(skip("nilpotent_mod_p", "|G_(n kappa)| > |p| although Phi^kappa is unipotent modulo p"))
        }
        Some(n) => bounds.push(ChiBound {
            kind: ChiBoundKind::NilpotentModP { n },
            relation: Relation::AtLeast,
            lower: frac(1, kappa * n as i64) - frac(vk, kappa) + &base,
            upper: None,
        }),
        None => skipped.push(skip("nilpotent_mod_p", "curvature not unipotent modulo p")),
    }
    match order(ctx.order_mod_p_ell, Modulus::PEll) {
        Some(n) => bounds.push(ChiBound {
            kind: ChiBoundKind::NilpotentModPEll { n },
            relation: Relation::AtLeast,
            lower: -frac(vk * (n as i64 - 1), n as i64 * kappa) + &base,
            upper: None,
        }),
        None => skipped.push(skip("nilpotent_mod_p_ell", "curvature not unipotent modulo p^ell")),
    }

    if kappa != 1 {
        skipped.push(skip("dwork_frobenius", "requires kappa = 1"));
    } else {
        let coeffs = match &ctx.cyclic_coefficients {
            Some(c) => Some(c.clone()),
            None => cyclic_vector(s).ok().and_then(|cv| delta_cyclic_coefficients(s, &cv.vector).ok()),
        };
        match coeffs {
            None => skipped.push(skip("dwork_frobenius", "no cyclic vector")),
            Some(a) => match dwork_frobenius(&a, p) {
                Some(v) => bounds.push(ChiBound {
                    kind: ChiBoundKind::DworkFrobenius,
                    relation: Relation::Equal,
                    lower: v,
                    upper: None,
                }),
                None => skipped.push(skip("dwork_frobenius", "requires sup |a_i| > 1")),
            },
        }
    }
    Ok(ChiBoundsReport { profile: prof, bounds, skipped })
}

/// log_p chi = -1/(p-1) - max_i (-v_p(a_i))/(mu - i), valid when some v_p(a_i) < 0.
pub fn dwork_frobenius(a: &[RatFun], p: u64) -> Option<Rational> {
    let mu = a.len() as i64;
    let mut best: Option<Rational> = None;
    for (i, ai) in a.iter().enumerate() {
        if let Some(v) = ai.gauss_valuation(p) {
            let t = frac(-v, mu - i as i64);
            if best.as_ref().map_or(true, |b| t > *b) {
                best = Some(t);
            }
        }
    }
    let best = best?;
    if !best.is_positive() {
        return None;
    }
    Some(-frac(1, p as i64 - 1) - best)
}
