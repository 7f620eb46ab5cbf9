#![allow(dead_code)]

use proptest::prelude::*;
use qcurv::exact::{Poly, RatFun, RatMatrix, Rational};
use qcurv::qmodule::QDiffSystem;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(Poly::new)
}

pub fn int_poly(max_deg: usize, c: i64) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-c..=c, 0..=max_deg + 1).prop_map(|v| Poly::from_i64(&v))
}

pub fn ratfun(max_deg: usize) -> impl Strategy<Value = RatFun> {
    (poly(max_deg), poly(max_deg))
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

pub fn nonzero_ratfun(max_deg: usize) -> impl Strategy<Value = RatFun> {
    ratfun(max_deg).prop_filter("nonzero", |f| !f.is_zero())
}

/// q from a small set of rationals that are not roots of unity.
pub fn q_value() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![(2, 1), (3, 1), (2, 3), (-2, 1), (5, 2), (1, 3), (8, 1)])
        .prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Invertible square system with integer polynomial entries.
pub fn int_system(rank: usize, max_deg: usize, q: Rational) -> impl Strategy<Value = QDiffSystem> {
    prop::collection::vec(int_poly(max_deg, 3), rank * rank).prop_filter_map("singular", move |es| {
        let rows: Vec<Vec<RatFun>> =
            es.chunks(rank).map(|r| r.iter().cloned().map(RatFun::from_poly).collect()).collect();
        let m = RatMatrix::from_rows(rows).ok()?;
        QDiffSystem::new(q.clone(), m).ok()
    })
}

pub fn rf(cs: &[i64]) -> RatFun {
    RatFun::from_poly(Poly::from_i64(cs))
}

pub fn c(n: i64, d: i64) -> RatFun {
    RatFun::constant(Rational::new(n.into(), d.into()))
}

pub fn system(q: Rational, rows: Vec<Vec<RatFun>>) -> QDiffSystem {
    QDiffSystem::new(q, RatMatrix::from_rows(rows).unwrap()).unwrap()
}

/// q^k by repeated multiplication.
pub fn qpow(q: &Rational, k: i64) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    for _ in 0..k.unsigned_abs() {
        acc *= q;
    }
    if k < 0 {
        acc = acc.recip();
    }
    acc
}

/// Gaussian binomial from its product formula.
pub fn gauss_binomial(n: u64, i: u64, q: &Rational) -> Rational {
    if i > n {
        return Rational::from_integer(0.into());
    }
    let one = Rational::from_integer(1.into());
    let mut acc = one.clone();
    for k in 0..i {
        acc *= (&one - qpow(q, (n - k) as i64)) / (&one - qpow(q, (k + 1) as i64));
    }
    acc
}

/// Number of independent rows, by plain fraction elimination.
pub fn rank_of(rows: &[Vec<Rational>]) -> usize {
    use num_traits::Zero;
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, piv);
        let pv = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &pv;
                for k in col..ncols {
                    let t = &f * &m[rank][k];
                    m[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}
