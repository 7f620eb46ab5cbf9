use num_traits::{Signed, Zero};
use serde::Serialize;

use super::chi::h_sequence;
use super::profile::{kappa, prime_profile};
use crate::exact::rational::{ln_abs, ser, primes_up_to, to_f64, valuation};
use crate::exact::Rational;
use crate::qmodule::{FormalSolution, QDiffSystem};

pub enum SizeTarget<'a> {
    Series(&'a FormalSolution),
    System(&'a QDiffSystem),
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceContribution {
    /// "p" for a prime, "inf" for the archimedean place.
    pub place: String,
    /// h in units of log p (finite places only).
    #[serde(serialize_with = "ser::opt_rational")]
    pub log_p: Option<Rational>,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeReport {
    pub n: usize,
    pub pmax: u64,
    pub partial_sum: f64,
    pub contributions: Vec<PlaceContribution>,
}

/// (1/N) sum_v h(y, N, v) over p <= pmax and infinity for a series, or over strong
/// good primes p <= pmax for a system.
pub fn size_partial(target: SizeTarget<'_>, n: usize, pmax: u64) -> SizeReport {
    let mut contributions = Vec::new();
    match target {
        SizeTarget::Series(y) => {
            let coeffs: Vec<Rational> = y.coeffs.iter().take(n + 1).flat_map(|m| m.to_rows().into_iter().flatten()).collect();
            for p in primes_up_to(pmax) {
                let h = coeffs
                    .iter()
                    .filter_map(|c| valuation(c, p))
                    .map(|v| (-v).max(0))
                    .max()
                    .unwrap_or(0);
                let h = Rational::from_integer(h.into());
                let value = to_f64(&h) * (p as f64).ln();
                contributions.push(PlaceContribution { place: p.to_string(), log_p: Some(h), value });
            }
            let arch = coeffs.iter().filter(|c| !c.is_zero()).map(|c| ln_abs(&c.abs()).max(0.0)).fold(0.0, f64::max);
            contributions.push(PlaceContribution { place: "inf".into(), log_p: None, value: arch });
        }
        SizeTarget::System(s) => {
            for p in primes_up_to(pmax) {
                let prof = prime_profile(s.q(), p);
                if !prof.good || !prof.strong {
                    continue;
                }
                if let Ok(h) = h_sequence(s, p, n) {
                    let hn = h[n].clone();
                    let value = to_f64(&hn) * (p as f64).ln();
                    contributions.push(PlaceContribution { place: p.to_string(), log_p: Some(hn), value });
                }
            }
        }
    }
    let total: f64 = contributions.iter().map(|c| c.value).sum();
    SizeReport { n, pmax, partial_sum: total / n.max(1) as f64, contributions }
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaRow {
    pub p: u64,
    pub kappa: u64,
    pub term: f64,
    pub cumulative: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaSum {
    pub pmax: u64,
    pub total: f64,
    pub rows: Vec<KappaRow>,
}

/// sum over good p <= pmax of log p / (kappa_p (p - 1)).
pub fn kappa_sum_partial(q: &Rational, pmax: u64) -> KappaSum {
    let mut rows = Vec::new();
    let mut total = 0.0;
    for p in primes_up_to(pmax) {
        if valuation(q, p) != Some(0) {
            continue;
        }
        let Some(k) = kappa(q, p) else { continue };
        let term = (p as f64).ln() / (k as f64 * (p - 1) as f64);
        total += term;
        rows.push(KappaRow { p, kappa: k, term, cumulative: total });
    }
    KappaSum { pmax, total, rows }
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaComparison {
    pub compared: usize,
    pub equal: bool,
    pub mismatches: Vec<(u64, u64, u64)>,
}

pub fn compare_kappa_profiles(q1: &Rational, q2: &Rational, pmax: u64) -> KappaComparison {
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for p in primes_up_to(pmax) {
        let (Some(k1), Some(k2)) = (
            if valuation(q1, p) == Some(0) { kappa(q1, p) } else { None },
            if valuation(q2, p) == Some(0) { kappa(q2, p) } else { None },
        ) else {
            continue;
        };
        compared += 1;
        if k1 != k2 {
            mismatches.push((p, k1, k2));
        }
    }
    KappaComparison { compared, equal: mismatches.is_empty(), mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn kappa_sum_small() {
        let s = kappa_sum_partial(&rat(3), 2);
        assert!((s.total - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn inverse_has_same_orders() {
        let c = compare_kappa_profiles(&ratio(2, 3), &ratio(3, 2), 200);
        assert!(c.equal);
        assert!(c.compared > 0);
    }
}
