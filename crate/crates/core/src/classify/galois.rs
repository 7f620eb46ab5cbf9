use num_integer::Integer;
use serde::Serialize;

use super::ClassifyError;
use crate::arithmetic::curvature::{curvature_matrix, Modulus, SkippedPrime};
use crate::arithmetic::profile::prime_profile;
use crate::arithmetic::ArithmeticError;
use crate::exact::modring::{mod_reduce, ModRatFun};
use crate::exact::rational::primes_up_to;
use crate::exact::{RatFun, RatMatrix, Rational};
use crate::qmodule::QDiffSystem;
use crate::solver::{order1_kummer_test, order1_rational_test, KummerSolution, ScaledRatFun};

/// Generic Galois groups of the rank one, triangular and antidiagonal families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", content = "d")]
pub enum GroupDescriptor {
    Trivial,
    Mu(u64),
    Gm,
    AdditiveGa,
    GaSemidirectMu(u64),
    GaSemidirectGm,
    Diag2,
    Diag2UnionAntidiag2,
    FiniteDihedralLike(u64),
    FourElement,
}

fn rational_or_kummer(b: &ScaledRatFun, q: &Rational, dcap: u64) -> (bool, Option<KummerSolution>) {
    if let Some(f) = b.to_ratfun(q) {
        if order1_rational_test(&f, q).is_some() {
            return (true, None);
        }
    }
    (false, order1_kummer_test(b, q, dcap))
}

/// y(qx) = b(x) y(x).
pub fn galois_rank1(b: &ScaledRatFun, q: &Rational, dcap: u64) -> GroupDescriptor {
    match rational_or_kummer(b, q, dcap) {
        (true, _) => GroupDescriptor::Trivial,
        (false, Some(k)) if k.d == 1 => GroupDescriptor::Trivial,
        (false, Some(k)) => GroupDescriptor::Mu(k.d),
        (false, None) => GroupDescriptor::Gm,
    }
}

/// Phi(e) = e [[1, 0], [a, b]].
pub fn galois_triangular2(
    a: &RatFun,
    b: &ScaledRatFun,
    q: &Rational,
    dcap: u64,
) -> Result<GroupDescriptor, ClassifyError> {
    if a.is_zero() || a.value_at_zero().map_or(true, |v| num_traits::Zero::is_zero(&v)) {
        return Err(ClassifyError::HypothesisNotMet("a must be nonzero and regular, nonvanishing at 0".into()));
    }
    Ok(match galois_rank1(b, q, dcap) {
        GroupDescriptor::Trivial => GroupDescriptor::AdditiveGa,
        GroupDescriptor::Mu(d) => GroupDescriptor::GaSemidirectMu(d),
        _ => GroupDescriptor::GaSemidirectGm,
    })
}

/// Phi(e) = e [[0, 1], [r, 0]]; decided by y(q^2 x) = r(x) y(x).
pub fn galois_antidiagonal2(r: &ScaledRatFun, q: &Rational, dcap: u64) -> GroupDescriptor {
    let q2 = q * q;
    match galois_rank1(r, &q2, dcap) {
        GroupDescriptor::Trivial => GroupDescriptor::FourElement,
        GroupDescriptor::Mu(d) => GroupDescriptor::FiniteDihedralLike(d),
        _ => GroupDescriptor::Diag2UnionAntidiag2,
    }
}

/// A classified system over Q(x) with a diagonal gauge in which the group takes its displayed form.
#[derive(Clone, Debug)]
pub struct GaloisInstance {
    pub system: QDiffSystem,
    pub group: GroupDescriptor,
    pub gauge: Vec<RatFun>,
}

pub fn rank1_instance(b: &RatFun, q: &Rational, dcap: u64) -> Result<GaloisInstance, ClassifyError> {
    let system = QDiffSystem::new(q.clone(), RatMatrix::diag(vec![b.clone()]))?;
    let group = galois_rank1(&ScaledRatFun::plain(b.clone()), q, dcap);
    Ok(GaloisInstance { system, group, gauge: vec![RatFun::one()] })
}

pub fn triangular_instance(a: &RatFun, b: &RatFun, q: &Rational, dcap: u64) -> Result<GaloisInstance, ClassifyError> {
    let group = galois_triangular2(a, &ScaledRatFun::plain(b.clone()), q, dcap)?;
    let m = RatMatrix::from_rows(vec![vec![RatFun::one(), RatFun::zero()], vec![a.clone(), b.clone()]])
        .expect("2x2");
    Ok(GaloisInstance { system: QDiffSystem::new(q.clone(), m)?, group, gauge: vec![RatFun::one(), RatFun::one()] })
}

/// With w = x^floor(delta) f from the Kummer solution of y(q^2 x) = r y, the gauge diag(u, v),
/// u = 1/w(qx), v = r u(qx), turns the matrix into [[0, lambda], [1, 0]] with lambda constant.
pub fn antidiagonal_instance(r: &RatFun, q: &Rational, dcap: u64) -> Result<GaloisInstance, ClassifyError> {
    let m = RatMatrix::from_rows(vec![vec![RatFun::zero(), RatFun::one()], vec![r.clone(), RatFun::zero()]])
        .expect("2x2");
    let system = QDiffSystem::new(q.clone(), m)?;
    let sr = ScaledRatFun::plain(r.clone());
    let group = galois_antidiagonal2(&sr, q, dcap);
    let gauge = match order1_kummer_test(&sr, &(q * q), dcap) {
        Some(k) => {
            let fl = k.delta.numer().div_floor(k.delta.denom());
            let fl: i64 = fl.try_into().map_err(|_| ClassifyError::HypothesisNotMet("exponent too large".into()))?;
            let w = &k.f * &RatFun::x().pow(fl).expect("x is a unit");
            let u = w.dilate(q).inv().expect("w nonzero");
            let v = r * &u.dilate(q);
            vec![u, v]
        }
        None => vec![RatFun::one(), RatFun::one()],
    };
    Ok(GaloisInstance { system, group, gauge })
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub group: GroupDescriptor,
    pub checked: Vec<u64>,
    pub failures: Vec<u64>,
    pub skipped: Vec<SkippedPrime>,
}

impl MembershipReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && !self.checked.is_empty()
    }
}

fn member(g: &GroupDescriptor, m: &[Vec<ModRatFun>]) -> bool {
    let ring = m[0][0].num.ring;
    let c = |v: u64| ModRatFun::constant(ring, v);
    let one = c(1);
    let minus = c(ring.modulus - 1);
    let zero = |f: &ModRatFun| f.is_zero();
    let rootd = |f: &ModRatFun, d: u64| f.pow(d as u32) == one;
    let diag = || zero(&m[0][1]) && zero(&m[1][0]);
    let anti = || zero(&m[0][0]) && zero(&m[1][1]);
    match *g {
        GroupDescriptor::Trivial => m[0][0] == one,
        GroupDescriptor::Mu(d) => rootd(&m[0][0], d),
        GroupDescriptor::Gm => true,
        GroupDescriptor::AdditiveGa => m[0][0] == one && zero(&m[0][1]) && m[1][1] == one,
        GroupDescriptor::GaSemidirectMu(d) => m[0][0] == one && zero(&m[0][1]) && rootd(&m[1][1], d),
        GroupDescriptor::GaSemidirectGm => m[0][0] == one && zero(&m[0][1]),
        GroupDescriptor::Diag2 => diag(),
        GroupDescriptor::Diag2UnionAntidiag2 => diag() || anti(),
        GroupDescriptor::FiniteDihedralLike(d) => {
            (diag() && rootd(&m[0][0], d) && rootd(&m[1][1], d)) || (anti() && rootd(&m[0][1].mul(&m[1][0]), d))
        }
        GroupDescriptor::FourElement => {
            let pm = |s: &ModRatFun| *s == one || *s == minus;
            (diag() && pm(&m[0][0]) && m[0][0] == m[1][1]) || (anti() && pm(&m[0][1]) && m[0][1] == m[1][0])
        }
    }
}

/// Phi^kappa modulo p^ell, conjugated by the gauge, lies in the group at every good strong p <= pmax.
pub fn curvature_membership(inst: &GaloisInstance, pmax: u64) -> MembershipReport {
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    let mut skipped = Vec::new();
    let mu = inst.system.rank();
    for p in primes_up_to(pmax) {
        let prof = prime_profile(inst.system.q(), p);
        if !prof.good || !prof.strong {
            continue;
        }
        let m = match curvature_matrix(&inst.system, p, Modulus::PEll) {
            Ok(m) => m,
            Err(ArithmeticError::BadPrime { .. }) => {
                skipped.push(SkippedPrime { p, reason: "bad reduction".into() });
                continue;
            }
            Err(e) => {
                skipped.push(SkippedPrime { p, reason: e.to_string() });
                continue;
            }
        };
        let gauge: Option<Vec<(ModRatFun, ModRatFun)>> = inst
            .gauge
            .iter()
            .map(|d| {
                let dm = mod_reduce(d, m.ring).ok()?;
                let di = dm.inv()?;
                Some((dm, di))
            })
            .collect();
        let Some(gauge) = gauge else {
            skipped.push(SkippedPrime { p, reason: "gauge does not reduce".into() });
            continue;
        };
        let conj: Vec<Vec<ModRatFun>> = (0..mu)
            .map(|i| (0..mu).map(|j| gauge[i].1.mul(&m.entry(i, j)).mul(&gauge[j].0)).collect())
            .collect();
        checked.push(p);
        if !member(&inst.group, &conj) {
            failures.push(p);
        }
    }
    MembershipReport { group: inst.group, checked, failures, skipped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio, Poly};

    fn one_plus_x() -> RatFun {
        RatFun::from_poly(Poly::from_i64(&[1, 1]))
    }

    #[test]
    fn rank_one_cases() {
        let q = rat(2);
        assert_eq!(galois_rank1(&ScaledRatFun::q_power(ratio(1, 2)), &q, 24), GroupDescriptor::Mu(2));
        assert_eq!(galois_rank1(&ScaledRatFun::plain(RatFun::from_i64(2)), &q, 24), GroupDescriptor::Trivial);
        assert_eq!(galois_rank1(&ScaledRatFun::plain(one_plus_x()), &q, 24), GroupDescriptor::Gm);
    }

    #[test]
    fn antidiagonal_cases() {
        let q = rat(2);
        let r = |v| ScaledRatFun::plain(RatFun::from_i64(v));
        assert_eq!(galois_antidiagonal2(&r(4), &q, 24), GroupDescriptor::FourElement);
        assert_eq!(galois_antidiagonal2(&r(2), &q, 24), GroupDescriptor::FiniteDihedralLike(2));
        assert_eq!(galois_antidiagonal2(&ScaledRatFun::plain(one_plus_x()), &q, 24), GroupDescriptor::Diag2UnionAntidiag2);
    }

    #[test]
    fn four_element_membership() {
        let inst = antidiagonal_instance(&RatFun::from_i64(4), &rat(2), 24).unwrap();
        let rep = curvature_membership(&inst, 60);
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn membership_detects_wrong_group() {
        let mut inst = rank1_instance(&one_plus_x(), &rat(2), 24).unwrap();
        inst.group = GroupDescriptor::Trivial;
        assert!(!curvature_membership(&inst, 40).holds());
    }
}
