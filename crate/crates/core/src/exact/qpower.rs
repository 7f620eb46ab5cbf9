//! Exact tests for r = q^k and r = q^(e/d).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{pow_rational, Rational};

/// Pairwise coprime set of integers > 1 such that every input is a product of its powers.
fn coprime_base(inputs: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = inputs.iter().map(|n| n.abs()).filter(|n| *n > BigInt::one()).collect();
    loop {
        base.sort();
        base.dedup();
        let mut split = None;
        'outer: for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else {
            return base;
        };
        let a = &base[i] / &g;
        let b = &base[j] / &g;
        base.remove(j);
        base.remove(i);
        for v in [a, b, g] {
            if v > BigInt::one() {
                base.push(v);
            }
        }
    }
}

fn exponent_vector(n: &BigInt, base: &[BigInt]) -> Vec<i64> {
    let mut m = n.abs();
    let v = base
        .iter()
        .map(|b| {
            let mut e = 0;
            while (&m % b).is_zero() {
                m /= b;
                e += 1;
            }
            e
        })
        .collect();
    debug_assert!(m.is_one());
    v
}

/// Returns t with |r| = |q|^t, when such a rational t exists.
fn magnitude_exponent(r: &Rational, q: &Rational) -> Option<Rational> {
    let ins = [r.numer().clone(), r.denom().clone(), q.numer().clone(), q.denom().clone()];
    let base = coprime_base(&ins);
    let vr: Vec<i64> = exponent_vector(r.numer(), &base)
        .iter()
        .zip(exponent_vector(r.denom(), &base))
        .map(|(a, b)| a - b)
        .collect();
    let vq: Vec<i64> = exponent_vector(q.numer(), &base)
        .iter()
        .zip(exponent_vector(q.denom(), &base))
        .map(|(a, b)| a - b)
        .collect();
    let mut t: Option<Rational> = None;
    for (a, b) in vr.iter().zip(&vq) {
        if *b == 0 {
            if *a != 0 {
                return None;
            }
            continue;
        }
        let cand = Rational::new(BigInt::from(*a), BigInt::from(*b));
        match &t {
            None => t = Some(cand),
            Some(t0) if *t0 != cand => return None,
            _ => {}
        }
    }
    t
}

/// Finds e/d in lowest terms with r^d = q^e and d <= dcap.
/// Requires q != 0 and |q| != 1; r = 0 has no solution.
pub fn q_rational_power_test(r: &Rational, q: &Rational, dcap: u64) -> Option<Rational> {
    if r.is_zero() || q.is_zero() || q.abs().is_one() {
        return None;
    }
    let t = magnitude_exponent(r, q)?;
    let d = t.denom().clone();
    if d > BigInt::from(dcap) {
        return None;
    }
    let e = t.numer().clone();
    let neg_r = r.is_negative();
    let neg_q = q.is_negative();
    let d_even = d.is_even();
    let e_odd = e.is_odd();
    let sign_lhs = neg_r && !d_even;
    let sign_rhs = neg_q && e_odd;
    if sign_lhs != sign_rhs {
        return None;
    }
    Some(t)
}

/// Integer k with q^k = r, if any.
pub fn q_power_test(r: &Rational, q: &Rational) -> Option<i64> {
    let t = q_rational_power_test(r, q, 1)?;
    let k: i64 = t.to_integer().try_into().ok()?;
    if pow_rational(q, k) == *r {
        Some(k)
    } else {
        None
    }
}

/// Exact d-th root of a rational, if it is rational.
pub fn rational_root(r: &Rational, d: u32) -> Option<Rational> {
    if d == 0 {
        return None;
    }
    if r.is_negative() && d % 2 == 0 {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let m = n.magnitude().nth_root(d);
        let b = BigInt::from_biguint(Sign::Plus, m);
        if num_traits::pow(b.clone(), d as usize) == n.abs() {
            Some(b)
        } else {
            None
        }
    };
    let n = root(r.numer())?;
    let den = root(r.denom())?;
    let v = Rational::new(n, den);
    Some(if r.is_negative() { -v } else { v })
}

/// q^t as a rational number, when it is one.
pub fn rational_q_power(q: &Rational, t: &Rational) -> Option<Rational> {
    let d: u32 = t.denom().try_into().ok()?;
    let e: i64 = t.numer().try_into().ok()?;
    let base = pow_rational(q, e);
    rational_root(&base, d)
}
