//! One PASS/FAIL line per acceptance criterion, with the tolerances and time limits pinned here.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qcurv::arithmetic::{
    chi_bounds, chi_truncated, compare_kappa_profiles, curvature_scan, kappa_sum_partial, prime_profile,
    unipotent_order, ChiBoundKind, ChiContext, CurvatureStatus, Modulus, ScanOptions,
};
use qcurv::classify::{
    antidiagonal_instance, curvature_membership, galois_antidiagonal2, galois_rank1, galois_triangular2,
    goursat_rational, rank1_instance, schwarz_rational, triangular_instance, z_clause, GroupDescriptor,
    HypergeomParams,
};
use qcurv::exact::{rat, ratio, Poly, RatFun, RatMatrix, Rational};
use qcurv::qcalc::{q_binomial, qderive};
use qcurv::qmodule::{casorati_rank, cyclic_vector, delta_matrices, dual, phi_iterate, tensor, QDiffSystem};
use qcurv::solver::{order1_rational_test, rational_solutions, ScaledRatFun};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

// 1. worked example q = 8, p = 3

fn criterion_1() -> Outcome {
    let s = system(rat(8), vec![vec![rf(&[1]), rf(&[3])], vec![rf(&[0]), rf(&[1])]]);
    let prof = prime_profile(s.q(), 3);
    check(prof.kappa == 2 && prof.ell == 2, format!("kappa {} ell {}", prof.kappa, prof.ell))?;
    let lo = unipotent_order(&s, 3, Modulus::P).map_err(|e| e.to_string())?.status;
    let hi = unipotent_order(&s, 3, Modulus::PEll).map_err(|e| e.to_string())?.status;
    check(lo == CurvatureStatus::Identity, format!("mod 3: {lo:?}"))?;
    check(hi == CurvatureStatus::Unipotent(2), format!("mod 9: {hi:?}"))?;
    Ok("kappa=2 ell=2, identity mod 3, unipotent(2) mod 9".into())
}

// 2. gauge-trivial systems: identity curvature and a verified basis

fn random_int_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    Poly::from_i64(&(0..=deg).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>())
}

fn primitive(p: &Poly) -> bool {
    let (_, ints) = p.integer_primitive();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |g, c| g.gcd(c));
    // integer coefficients with content one
    p.coeffs().iter().all(|c| c.is_integer()) && g.is_one()
}

fn criterion_2() -> Outcome {
    let q = ratio(2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut systems = Vec::new();
    while systems.len() < 20 {
        let f = RatMatrix::from_rows(
            (0..2).map(|_| (0..2).map(|_| RatFun::from_poly(random_int_poly(&mut rng, 2))).collect()).collect(),
        )
        .unwrap();
        let det = f.det();
        if det.is_zero() || !primitive(det.num()) {
            continue;
        }
        let a = &f.inverse().unwrap() * &f.dilate(&q);
        systems.push(QDiffSystem::new(q.clone(), a).unwrap());
    }
    let mut primes = 0;
    for (i, s) in systems.iter().enumerate() {
        let scan = curvature_scan(s, 200, ScanOptions::default());
        for e in &scan.entries {
            check(e.mod_p_ell == CurvatureStatus::Identity, format!("system {i}: p = {} gives {:?}", e.p, e.mod_p_ell))?;
        }
        primes += scan.entries.len();
        let basis = rational_solutions(s, 30, 0).map_err(|e| format!("system {i}: {e}"))?.ok_or(format!("system {i}: no basis"))?;
        for y in &basis.solutions {
            check(qcurv::solver::is_solution(s, y), format!("system {i}: unverified solution"))?;
        }
        check(!basis.matrix().det().is_zero(), format!("system {i}: dependent basis"))?;
    }
    Ok(format!("20 systems, {primes} prime verdicts all identity, 20 verified bases"))
}

// 3. A = 1 + x, q = 2

fn criterion_3() -> Outcome {
    let s = system(rat(2), vec![vec![rf(&[1, 1])]]);
    let scan = curvature_scan(&s, 50, ScanOptions::default());
    let bad: Vec<u64> = scan.entries.iter().filter(|e| e.mod_p_ell != CurvatureStatus::Identity).map(|e| e.p).collect();
    check(!bad.is_empty(), "every verdict was identity")?;
    check(order1_rational_test(&rf(&[1, 1]), &rat(2)).is_none(), "order one test found a solution")?;
    Ok(format!("non-identity at p in {bad:?}; no rational solution"))
}

// 4. Schwarz list against brute force

/// Coefficients of prod (x - q^j) over the given exponents, divided by q^shift.
fn roots_poly(q: &Rational, exps: impl Iterator<Item = i64>, shift: i64) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    for j in exps {
        let r = qpow(q, j);
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &r;
        }
        p = next;
    }
    let s = qpow(q, -shift);
    p.into_iter().map(|c| c * &s).collect()
}

/// Dimension of the rational solutions y = N / (x^S D) of L phi^2 y + M phi y + T y = 0, where
/// D = prod_(|j| <= J) (x - q^j) and deg N <= 2S + 2J + 1 + extra.
fn brute_force_nullity(al: i64, be: i64, ga: i64) -> usize {
    const J: i64 = 14;
    const S: i64 = 16;
    const EXTRA: i64 = 40;
    let q = rat(2);
    let (a, b, c) = (qpow(&q, al), qpow(&q, be), qpow(&q, ga));
    let l = vec![-(&c / &q), &a * &b];
    let m = vec![Rational::one() + &c / &q, -(&a + &b)];
    let t = vec![-Rational::one(), Rational::one()];
    let coefs = [t, m, l];
    let prods: Vec<Vec<Rational>> = (0..3)
        .map(|k| {
            let cof = roots_poly(&q, (-J - 2..=J).filter(|j| !(-J..=J).contains(&(j + k))), k * (2 * J + 1));
            let mut out = vec![Rational::zero(); cof.len() + 1];
            for (i, x) in coefs[k as usize].iter().enumerate() {
                for (j, y) in cof.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        })
        .collect();
    let n = (2 * S + 2 * J + 1 + EXTRA + 1) as usize;
    let nrows = n + 4;
    let mut rows = vec![vec![Rational::zero(); n]; nrows];
    for i in 0..n {
        for k in 0..3i64 {
            let sc = qpow(&q, k * i as i64 - k * S);
            for (mi, v) in prods[k as usize].iter().enumerate() {
                rows[mi + i][i] += v * &sc;
            }
        }
    }
    n - integer_rank(rows)
}

/// Rank by fraction-free elimination on integer rows, dividing out row contents.
fn integer_rank(rows: Vec<Vec<Rational>>) -> usize {
    let mut rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            r.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let p = &top[rank];
        rest.par_iter_mut().filter(|r| !r[col].is_zero()).for_each(|r| {
            let (a, b) = (p[col].clone(), r[col].clone());
            for j in col..ncols {
                if !p[j].is_zero() || !r[j].is_zero() {
                    r[j] = &r[j] * &a - &p[j] * &b;
                }
            }
            let g = r.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            if !g.is_zero() && !g.is_one() {
                r.iter_mut().for_each(|c| *c /= &g);
            }
        });
        rank += 1;
    }
    rank
}

fn criterion_4() -> Outcome {
    let triples: Vec<(i64, i64, i64)> =
        (-4..=4).flat_map(|a| (-4..=4).flat_map(move |b| (-4..=4).map(move |c| (a, b, c)))).collect();
    let disagreements: Vec<(i64, i64, i64)> = triples
        .par_iter()
        .filter(|&&(a, b, c)| {
            let p = HypergeomParams::from_exponents(a, b, c, rat(2));
            schwarz_rational(&p).rational_basis != (brute_force_nullity(a, b, c) >= 2)
        })
        .cloned()
        .collect();
    check(disagreements.is_empty(), format!("disagreements {disagreements:?}"))?;
    let mut mismatch = 0;
    for a in -6..=6 {
        for b in -6..=6 {
            for c in -6..=6 {
                if goursat_rational(a, b, c) != z_clause(a, b, c) {
                    mismatch += 1;
                }
            }
        }
    }
    check(mismatch == 0, format!("{mismatch} triangle mismatches"))?;
    Ok(format!("{} triples, 0 disagreements; triangle form equal on [-6,6]^3", triples.len()))
}

// 5. chi truncation against closed forms

fn rel_err(x: &Rational, target: &Rational) -> Rational {
    (x - target).abs() / target.abs()
}

fn criterion_5() -> Outcome {
    let tol = ratio(5, 100);
    let t0 = Instant::now();
    let exp_q = system(rat(6), vec![vec![rf(&[1, 5])]]);
    let est = chi_truncated(&exp_q, 5, 500).map_err(|e| e.to_string())?;
    let e1 = rel_err(&est.log_chi, &ratio(-1, 4));
    check(e1 <= tol, format!("exp_q: {} vs -1/4", est.log_chi))?;
    let t1 = t0.elapsed();
    check(t1 < Duration::from_secs(60), format!("exp_q took {t1:?}"))?;

    // G_1 = a_0 = 1/5, so |a_0|_5 = 5; closed form -1/(p-1) - 1
    let t0 = Instant::now();
    let dw = system(rat(6), vec![vec![rf(&[1, 1])]]);
    let closed = ratio(-1, 4) - rat(1);
    let est2 = chi_truncated(&dw, 5, 500).map_err(|e| e.to_string())?;
    let e2 = rel_err(&est2.log_chi, &closed);
    check(e2 <= tol, format!("Dwork-Frobenius instance: {} vs {closed}", est2.log_chi))?;
    let bounds = chi_bounds(&dw, 5, &ChiContext::default()).map_err(|e| e.to_string())?;
    let df = bounds.bounds.iter().find(|b| b.kind == ChiBoundKind::DworkFrobenius).ok_or("no closed-form bound emitted")?;
    check(df.lower == closed, format!("library closed form {}", df.lower))?;
    let t2 = t0.elapsed();
    check(t2 < Duration::from_secs(60), format!("Dwork-Frobenius instance took {t2:?}"))?;
    Ok(format!(
        "exp_q {} (rel err {:.4}), closed form instance {} (rel err {:.4}), tolerance 0.05",
        est.log_chi,
        qcurv::exact::rational::to_f64(&e1),
        est2.log_chi,
        qcurv::exact::rational::to_f64(&e2)
    ))
}

// 6. q-combinatorics

fn criterion_6() -> Outcome {
    let qs = [ratio(2, 3), rat(3), rat(-2)];
    for q in &qs {
        for n in 0..=30u64 {
            let mut lhs = Poly::one();
            for i in 0..n {
                lhs = &lhs * &Poly::new(vec![Rational::one(), -qpow(q, i as i64)]);
            }
            let rhs = Poly::new(
                (0..=n)
                    .map(|j| {
                        let s = if j % 2 == 0 { rat(1) } else { rat(-1) };
                        s * q_binomial(n, j, q) * qpow(q, (j * j.saturating_sub(1) / 2) as i64)
                    })
                    .collect(),
            );
            check(lhs == rhs, format!("expansion n = {n}"))?;
            for i in 1..=n {
                let (b, l, r) = (q_binomial(n, i, q), q_binomial(n - 1, i - 1, q), q_binomial(n - 1, i, q));
                check(b == &l + &r * qpow(q, i as i64), format!("first recurrence n = {n}, i = {i}"))?;
                check(b == &l * qpow(q, (n - i) as i64) + &r, format!("second recurrence n = {n}, i = {i}"))?;
            }
        }
        let f = RatFun::new(Poly::from_i64(&[1, -2, 0, 3]), Poly::from_i64(&[2, 1])).unwrap();
        let g = RatFun::new(Poly::from_i64(&[0, 1, 1]), Poly::from_i64(&[-3, 0, 1])).unwrap();
        for n in 0..=4u32 {
            let mut sum = RatFun::zero();
            for j in 0..=n {
                let t = &qderive(&f, q, n - j).dilate_q(q, j as i64) * &qderive(&g, q, j);
                sum = &sum + &t.scale(&q_binomial(n as u64, j as u64, q));
            }
            check(sum == qderive(&(&f * &g), q, n), format!("Leibniz n = {n}"))?;
            let mut phi = RatFun::zero();
            for i in 0..=n as u64 {
                let c = q_binomial(n as u64, i, q) * qpow(&(q - rat(1)), i as i64) * qpow(q, (i * i.saturating_sub(1) / 2) as i64);
                phi = &phi + &(&RatFun::x().pow(i as i64).unwrap() * &qderive(&f, q, i as u32)).scale(&c);
            }
            check(phi == f.dilate_q(q, n as i64), format!("phi to d_q n = {n}"))?;
        }
        let s = system(q.clone(), vec![vec![rf(&[1, 2]), rf(&[0, 1])], vec![rf(&[3]), rf(&[1, 0, 1])]]);
        let gs = delta_matrices(&s, 4);
        for n in 0..=4u64 {
            let mut acc = RatMatrix::zero(2, 2);
            for i in 0..=n {
                let c = q_binomial(n, i, q) * qpow(&(q - rat(1)), i as i64) * qpow(q, (i * i.saturating_sub(1) / 2) as i64);
                acc = &acc + &gs[i as usize].scale(&RatFun::x().pow(i as i64).unwrap().scale(&c));
            }
            check(acc == phi_iterate(&s, n), format!("Phi to Delta n = {n}"))?;
            let qi = q.recip();
            let mut back = RatMatrix::zero(2, 2);
            for j in 0..=n {
                let sg = if j % 2 == 0 { rat(1) } else { rat(-1) };
                let c = sg * q_binomial(n, j, &qi) * qpow(q, -((j * j.saturating_sub(1) / 2) as i64));
                back = &back + &phi_iterate(&s, j).scale(&RatFun::constant(c));
            }
            let sg = if n % 2 == 0 { rat(1) } else { rat(-1) };
            let pre = RatFun::from_poly(Poly::monomial(qpow(&(q - rat(1)), n as i64), n as usize)).inv().unwrap();
            check(back.scale(&pre.scale(&sg)) == gs[n as usize], format!("Delta to Phi n = {n}"))?;
        }
    }
    Ok("expansion and both recurrences for n <= 30, Leibniz and both conversions for order <= 4".into())
}

// 7. structural certificates

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = ratio(2, 3);
    let basis = [rf(&[1]), rf(&[0, 1]), rf(&[0, 0, 1]), rf(&[1]).checked_div(&rf(&[-1, 1])).unwrap(), rf(&[1]).checked_div(&rf(&[3, 1])).unwrap()];
    for fam in 0..50 {
        let m = rng.gen_range(1..=5);
        let coeffs: Vec<Vec<Rational>> = (0..m).map(|_| (0..5).map(|_| rat(rng.gen_range(-2..=2))).collect()).collect();
        let fs: Vec<RatFun> = coeffs
            .iter()
            .map(|row| row.iter().zip(&basis).fold(RatFun::zero(), |acc, (k, b)| &acc + &b.scale(k)))
            .collect();
        check(casorati_rank(&fs, &q) == rank_of(&coeffs), format!("family {fam}"))?;
    }
    let mut cyclic = 0;
    for rank in 1..=4usize {
        for _ in 0..3 {
            let s = loop {
                let rows: Vec<Vec<RatFun>> = (0..rank).map(|_| (0..rank).map(|_| RatFun::from_poly(random_int_poly(&mut rng, 1))).collect()).collect();
                if let Ok(s) = QDiffSystem::new(rat(3), RatMatrix::from_rows(rows).unwrap()) {
                    break s;
                }
            };
            let cv = cyclic_vector(&s).map_err(|e| e.to_string())?;
            check(!cv.certificate.is_zero() && cv.basis.det() == cv.certificate, "certificate")?;
            let conj = &(&cv.basis.inverse().unwrap() * s.matrix()) * &cv.basis.dilate(s.q());
            check(conj == cv.companion, "companion conjugation")?;
            for i in 0..rank {
                for j in 0..rank - 1 {
                    let want = if i == j + 1 { RatFun::one() } else { RatFun::zero() };
                    check(cv.companion.get(i, j) == &want, "companion shape")?;
                }
            }
            cyclic += 1;
        }
    }
    let s1 = system(q.clone(), vec![vec![rf(&[1, 1]), rf(&[2])], vec![rf(&[0, 1]), rf(&[3])]]);
    let s2 = system(q.clone(), vec![vec![rf(&[2, 0, 1])]]);
    for n in 1..=3 {
        let an = phi_iterate(&s1, n);
        check(phi_iterate(&dual(&s1), n) == an.inverse().unwrap().transpose(), format!("dual n = {n}"))?;
        check(phi_iterate(&tensor(&s1, &s2).unwrap(), n) == an.kron(&phi_iterate(&s2, n)), format!("tensor n = {n}"))?;
    }
    Ok(format!("50 Casorati families, {cyclic} cyclic vector certificates, dual and tensor for n <= 3"))
}

// 8. Galois taxonomy with curvature membership

fn criterion_8() -> Outcome {
    let dcap = 24;
    let half = ScaledRatFun::q_power(ratio(1, 2));
    check(galois_rank1(&half, &rat(2), dcap) == GroupDescriptor::Mu(2), "q^(1/2) is not Mu(2)")?;
    let one = rf(&[1]);
    let tri = |b: &ScaledRatFun, q: &Rational| galois_triangular2(&one, b, q, dcap).map_err(|e| e.to_string());
    check(tri(&ScaledRatFun::q_power(rat(1)), &rat(2))? == GroupDescriptor::AdditiveGa, "triangular case 1")?;
    check(tri(&half, &rat(2))? == GroupDescriptor::GaSemidirectMu(2), "triangular case 2")?;
    check(tri(&ScaledRatFun::plain(rf(&[1, 1])), &rat(2))? == GroupDescriptor::GaSemidirectGm, "triangular case 3")?;
    let anti = |r: RatFun| galois_antidiagonal2(&ScaledRatFun::plain(r), &rat(2), dcap);
    check(anti(rf(&[4])) == GroupDescriptor::FourElement, "antidiagonal case 1")?;
    check(anti(rf(&[2])) == GroupDescriptor::FiniteDihedralLike(2), "antidiagonal case 2")?;
    check(anti(rf(&[1, 1])) == GroupDescriptor::Diag2UnionAntidiag2, "antidiagonal case 3")?;

    // rational instances; q = 4 realizes q^(1/2) = 2
    let e = |r: Result<_, qcurv::classify::ClassifyError>| r.map_err(|e| e.to_string());
    let instances = vec![
        (e(rank1_instance(&rf(&[2]), &rat(2), dcap))?, GroupDescriptor::Trivial),
        (e(rank1_instance(&rf(&[2]), &rat(4), dcap))?, GroupDescriptor::Mu(2)),
        (e(rank1_instance(&rf(&[1, 1]), &rat(2), dcap))?, GroupDescriptor::Gm),
        (e(triangular_instance(&one, &rf(&[2]), &rat(2), dcap))?, GroupDescriptor::AdditiveGa),
        (e(triangular_instance(&one, &rf(&[2]), &rat(4), dcap))?, GroupDescriptor::GaSemidirectMu(2)),
        (e(triangular_instance(&one, &rf(&[1, 1]), &rat(2), dcap))?, GroupDescriptor::GaSemidirectGm),
        (e(antidiagonal_instance(&rf(&[4]), &rat(2), dcap))?, GroupDescriptor::FourElement),
        (e(antidiagonal_instance(&rf(&[2]), &rat(2), dcap))?, GroupDescriptor::FiniteDihedralLike(2)),
        (e(antidiagonal_instance(&rf(&[1, 1]), &rat(2), dcap))?, GroupDescriptor::Diag2UnionAntidiag2),
    ];
    let mut checked = 0;
    for (inst, want) in &instances {
        check(inst.group == *want, format!("instance classified {:?}, expected {want:?}", inst.group))?;
        let rep = curvature_membership(inst, 100);
        check(rep.holds(), format!("{want:?}: failures at {:?}", rep.failures))?;
        checked += rep.checked.len();
    }
    Ok(format!("classification of all witnesses, membership at {checked} (instance, prime) pairs"))
}

// 9. arithmetic lemmas

fn criterion_9() -> Outcome {
    let desk = vec![
        (system(rat(8), vec![vec![rf(&[1]), rf(&[3])], vec![rf(&[0]), rf(&[1])]]), 3u64, 1usize),
        (system(rat(6), vec![vec![rf(&[1]), rf(&[0, 25])], vec![rf(&[0]), rf(&[1])]]), 5, 1),
        (system(rat(6), vec![vec![rf(&[1, 125])]]), 5, 1),
        (system(rat(2), vec![vec![rf(&[1]), rf(&[7])], vec![rf(&[0]), rf(&[1])]]), 7, 1),
    ];
    for (s, p, n) in &desk {
        let step = n * prime_profile(s.q(), *p).kappa as usize;
        let g = delta_matrices(s, 4 * step);
        let v = |m: usize| g[m].gauss_valuation(*p).unwrap_or(i64::MAX);
        check(v(step) >= 1, format!("hypothesis fails at p = {p}"))?;
        for k in 1..=4 {
            check(v(k * step) >= k as i64, format!("p = {p}, s = {k}: valuation {}", v(k * step)))?;
        }
    }

    let t0 = Instant::now();
    let ks = kappa_sum_partial(&rat(2), 10_000);
    let el = t0.elapsed();
    check(el < Duration::from_secs(10), format!("kappa sum took {el:?}"))?;
    check(ks.rows.windows(2).all(|w| w[1].cumulative >= w[0].cumulative), "partial sums not monotone")?;
    let at = |b: u64| ks.rows.iter().filter(|r| r.p <= b).map(|r| r.term).sum::<f64>();
    let decades: Vec<f64> = [10u64, 100, 1000, 10_000].iter().map(|&b| at(b)).collect();
    let inc: Vec<f64> = decades.windows(2).map(|w| w[1] - w[0]).collect();
    check(inc.windows(2).all(|w| w[1] < w[0]), format!("increments {inc:?}"))?;

    for (a, b) in [(rat(2), ratio(1, 2)), (ratio(2, 3), ratio(3, 2)), (rat(-5), ratio(-1, 5))] {
        let cmp = compare_kappa_profiles(&a, &b, 1000);
        check(cmp.equal && cmp.compared > 0, format!("{a} vs {b}: {:?}", cmp.mismatches))?;
    }
    Ok(format!("valuation growth on 4 desk systems; sum to 10^4 = {:.6}, decade increments {inc:?}; inverse profiles equal", ks.total))
}

#[test]
fn acceptance() {
    let criteria: Vec<(usize, &str, fn() -> Outcome, u64)> = vec![
        (1, "worked example q=8 p=3", criterion_1, 1),
        (2, "gauge-trivial forward direction", criterion_2, 120),
        (3, "contrapositive sanity A=1+x", criterion_3, 5),
        (4, "Schwarz list vs brute force", criterion_4, 600),
        (5, "chi truncation vs closed forms", criterion_5, 120),
        (6, "q-combinatorics", criterion_6, 600),
        (7, "structural certificates", criterion_7, 600),
        (8, "Galois taxonomy and curvature", criterion_8, 60),
        (9, "arithmetic lemmas", criterion_9, 600),
    ];
    let mut failed = Vec::new();
    for (n, name, f, limit) in criteria {
        let t0 = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let el = t0.elapsed();
        let r = match r {
            Ok(d) if el > Duration::from_secs(limit) => Err(format!("{d}; exceeded {limit} s")),
            other => other,
        };
        match r {
            Ok(d) => println!("PASS criterion {n} ({name}): {d} [{:.2} s, limit {limit} s]", el.as_secs_f64()),
            Err(d) => {
                println!("FAIL criterion {n} ({name}): {d} [{:.2} s, limit {limit} s]", el.as_secs_f64());
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
