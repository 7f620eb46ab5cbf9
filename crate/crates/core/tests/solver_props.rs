mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use qcurv::arithmetic::{curvature_scan, CurvatureStatus, ScanOptions};
use qcurv::exact::{Poly, RatFun, RatMatrix, Rational};
use qcurv::qmodule::QDiffSystem;
use qcurv::solver::{order1_kummer_test, order1_rational_test, rational_solutions, ScaledRatFun};

/// c * x^m * prod (x - r_i)^(e_i)
fn factored() -> impl Strategy<Value = RatFun> {
    (
        small_rational().prop_filter("nonzero", |c| !c.is_zero()),
        -2i64..=2,
        prop::collection::vec((small_rational().prop_filter("nonzero", |r| !r.is_zero()), -2i64..=2), 0..=3),
    )
        .prop_map(|(c, m, fs)| {
            let mut f = RatFun::constant(c);
            f = &f * &RatFun::x().pow(m).unwrap();
            for (r, e) in fs {
                let lin = RatFun::from_poly(Poly::new(vec![-r, Rational::from_integer(1.into())]));
                f = &f * &lin.pow(e).unwrap();
            }
            f
        })
}

fn telescopes(g: &RatFun, b: &RatFun, q: &Rational) -> bool {
    g.dilate(q) == b * g
}

/// Row vector times matrix, checked independently of the solver.
fn solves(s: &QDiffSystem, y: &[RatFun]) -> bool {
    let mu = s.rank();
    (0..mu).all(|j| {
        let rhs = (0..mu).fold(RatFun::zero(), |acc, i| &acc + &(&y[i] * s.matrix().get(i, j)));
        y[j].dilate(s.q()) == rhs
    })
}

/// Y(qx) = Y(x) A(x) with Y = F, i.e. A = F^(-1) F(qx).
fn gauge_trivial(q: Rational) -> impl Strategy<Value = (QDiffSystem, RatMatrix)> {
    prop::collection::vec(int_poly(1, 2), 4).prop_filter_map("singular", move |es| {
        let f = RatMatrix::from_rows(es.chunks(2).map(|r| r.iter().cloned().map(RatFun::from_poly).collect()).collect()).ok()?;
        let inv = f.inverse().ok()?;
        let a = &inv * &f.dilate(&q);
        Some((QDiffSystem::new(q.clone(), a).ok()?, f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn order1_agrees_with_rational_solutions(f in factored(), q in q_value()) {
        let b = f.dilate(&q).checked_div(&f).unwrap();
        let g = order1_rational_test(&b, &q);
        prop_assert!(g.as_ref().is_some_and(|g| telescopes(g, &b, &q)));
        let s = system(q.clone(), vec![vec![b.clone()]]);
        let cap = f.num().degree().unwrap_or(0) + f.den().degree().unwrap_or(0) + 2;
        let basis = rational_solutions(&s, cap, 0).unwrap().expect("basis");
        prop_assert!(solves(&s, &basis.solutions[0]));
    }

    #[test]
    fn non_telescoping_rank_one(b in factored(), q in q_value()) {
        let s = system(q.clone(), vec![vec![b.clone()]]);
        let direct = order1_rational_test(&b, &q);
        if let Some(g) = &direct {
            prop_assert!(telescopes(g, &b, &q));
        }
        match rational_solutions(&s, 12, 0) {
            Ok(Some(basis)) => {
                prop_assert!(solves(&s, &basis.solutions[0]));
                prop_assert!(direct.is_some());
            }
            Ok(None) => prop_assert!(direct.is_none()),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn kummer_with_unit_cap_is_integer_shift(f in factored(), m in -3i64..=3, q in q_value()) {
        let b = f.dilate(&q).checked_div(&f).unwrap().scale(&qpow(&q, m));
        let k = order1_kummer_test(&ScaledRatFun::plain(b.clone()), &q, 1).expect("integer shift exists");
        prop_assert!(k.delta.is_integer());
        let d: i64 = k.delta.to_integer().try_into().unwrap();
        let shifted = b.scale(&qpow(&q, -d));
        prop_assert!(order1_rational_test(&shifted, &q).is_some());
    }

    #[test]
    fn kummer_unit_cap_matches_search(b in factored(), q in q_value()) {
        let k = order1_kummer_test(&ScaledRatFun::plain(b.clone()), &q, 1);
        let found = (-12i64..=12).any(|m| order1_rational_test(&b.scale(&qpow(&q, -m)), &q).is_some());
        prop_assert_eq!(k.is_some(), found);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn gauge_trivial_bases_are_sound((s, _f) in gauge_trivial(Rational::new(2.into(), 3.into()))) {
        let basis = rational_solutions(&s, 12, 0).unwrap().expect("gauge trivial");
        for y in &basis.solutions {
            prop_assert!(solves(&s, y));
        }
        let m = basis.matrix();
        prop_assert_eq!(m.rank(), 2);
        prop_assert!(!m.det().is_zero());
        let scan = curvature_scan(&s, 60, ScanOptions::default());
        for e in &scan.entries {
            prop_assert!(matches!(e.mod_p_ell, CurvatureStatus::Identity | CurvatureStatus::BadPrime), "p = {}", e.p);
        }
    }
}
