//! Factorization in Q[x]: squarefree decomposition, then Zassenhaus
//! (Cantor-Zassenhaus mod p, Hensel lifting, subset recombination).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use super::rational::{is_prime, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    /// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

pub fn factor_poly(f: &Poly) -> Factorization {
    assert!(!f.is_zero(), "factor_poly of zero");
    let unit = f.leading();
    let mut factors = Vec::new();
    for (g, e) in f.squarefree_decomposition() {
        let (_, prim) = g.integer_primitive();
        for h in factor_squarefree_integer(prim) {
            factors.push((Poly::from_bigints(&h).monic(), e));
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())).then(a.1.cmp(&b.1))
    });
    Factorization { unit, factors }
}

/// Rational roots of f, each once.
pub fn rational_roots(f: &Poly) -> Vec<Rational> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    factor_poly(f)
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| -g.coeff(0))
        .collect()
}

type Zp = Vec<u64>;

fn trim(mut a: Zp) -> Zp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn zp_add(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
}

fn zp_sub(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0) % p) % p).collect())
}

fn zp_mul(a: &Zp, b: &Zp, p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y % p) % p;
        }
    }
    trim(out)
}

fn zp_inv(a: u64, p: u64) -> u64 {
    super::rational::inverse_mod(a, p).expect("not invertible mod p")
}

fn zp_divrem(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp) {
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let inv = zp_inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - c * bc % p) % p;
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn zp_monic(a: &Zp, p: u64) -> Zp {
    if a.is_empty() {
        return Vec::new();
    }
    let inv = zp_inv(*a.last().unwrap(), p);
    a.iter().map(|c| c * inv % p).collect()
}

fn zp_gcd(a: &Zp, b: &Zp, p: u64) -> Zp {
    let (mut a, mut b) = (zp_monic(a, p), zp_monic(b, p));
    while !b.is_empty() {
        let r = zp_divrem(&a, &b, p).1;
        a = b;
        b = zp_monic(&r, p);
    }
    a
}

/// (s, t) with s a + t b = 1, assuming coprime.
fn zp_xgcd(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Zp, Zp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Zp, Zp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = zp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = zp_sub(&s0, &zp_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = zp_sub(&t0, &zp_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = zp_inv(r0[0], p);
    (s0.iter().map(|c| c * inv % p).collect(), t0.iter().map(|c| c * inv % p).collect())
}

fn zp_powmod(base: &Zp, exp: &BigUint, m: &Zp, p: u64) -> Zp {
    let mut result: Zp = vec![1];
    let mut b = zp_divrem(base, m, p).1;
    for i in 0..exp.bits() {
        if exp.bit(i) {
            result = zp_divrem(&zp_mul(&result, &b, p), m, p).1;
        }
        b = zp_divrem(&zp_mul(&b, &b, p), m, p).1;
    }
    result
}

fn zp_derivative(a: &Zp, p: u64) -> Zp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

/// Monic irreducible factors of a squarefree monic polynomial over F_p (p odd).
fn zp_factor(f: &Zp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Zp> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Zp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while f.len() > 1 {
        if 2 * d > f.len() - 1 {
            out.push(f.clone());
            break;
        }
        h = zp_powmod(&h, &BigUint::from(p), &f, p);
        let g = zp_gcd(&zp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            equal_degree(&g, d, p, rng, &mut out);
            f = zp_divrem(&f, &g, p).0;
            h = zp_divrem(&h, &f, p).1;
        }
        d += 1;
    }
    out
}

fn equal_degree(g: &Zp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Zp>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.clone());
        return;
    }
    let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: Zp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = zp_sub(&zp_powmod(&a, &e, g, p), &vec![1], p);
        let c = zp_gcd(&b, g, p);
        if c.len() > 1 && c.len() < g.len() {
            equal_degree(&c, d, p, rng, out);
            equal_degree(&zp_divrem(g, &c, p).0, d, p, rng, out);
            return;
        }
    }
}

fn to_zp(f: &[BigInt], p: u64) -> Zp {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn big_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

fn big_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    big_mod(&out, m)
}

fn zp_to_big(a: &Zp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts monic f = g h mod p to mod p^k; f is given mod p^k and monic.
fn hensel_pair(f: &[BigInt], g: &Zp, h: &Zp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = zp_xgcd(g, h, p);
    let pb = BigInt::from(p);
    let mk = num_traits::pow(pb.clone(), k as usize);
    let mut gg = zp_to_big(g);
    let mut hh = zp_to_big(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = big_mul(&gg, &hh, &mk);
        let n = f.len().max(prod.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&mk)
            })
            .collect();
        let e: Zp = trim(e.iter().map(|c| (c / &pj).mod_floor(&pb).to_u64().unwrap()).collect());
        let (q, dh) = zp_divrem(&zp_mul(&s, &e, p), h, p);
        let dg = zp_add(&zp_mul(&t, &e, p), &zp_mul(&q, g, p), p);
        for (i, c) in dg.iter().enumerate() {
            gg[i] += &pj * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            hh[i] += &pj * BigInt::from(*c);
        }
        pj *= &pb;
    }
    (big_mod(&gg, &mk), big_mod(&hh, &mk))
}

fn hensel_lift(f: &[BigInt], facs: &[Zp], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }
    let g = &facs[0];
    let mut h: Zp = vec![1];
    for fc in &facs[1..] {
        h = zp_mul(&h, fc, p);
    }
    let (gl, hl) = hensel_pair(f, g, &h, p, k);
    let mut out = vec![gl];
    out.extend(hensel_lift(&hl, &facs[1..], p, k));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let mut a = a;
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
    let mut g = BigInt::zero();
    for c in &a {
        g = g.gcd(c);
    }
    if a.last().map_or(false, |c| c.is_negative()) {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

fn int_divides(d: &[BigInt], f: &[BigInt]) -> Option<Vec<BigInt>> {
    let (q, r) = Poly::from_bigints(f).div_rem(&Poly::from_bigints(d));
    if !r.is_zero() || q.coeffs().iter().any(|c| !c.denom().is_one()) {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.numer().clone()).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors (primitive, positive leading coefficient) of a squarefree primitive f.
fn factor_squarefree_integer(f: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let f = primitive(f);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    if f[0].is_zero() {
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_integer(f[1..].to_vec()));
        return out;
    }
    let lc = f[n].clone();
    let mut p = 3;
    loop {
        if is_prime(p) && !(&lc % p).is_zero() {
            let fp = to_zp(&f, p);
            let g = zp_gcd(&fp, &zp_derivative(&fp, p), p);
            if g.len() == 1 {
                break;
            }
        }
        p += 2;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fp = zp_monic(&to_zp(&f, p), p);
    let mut facs = zp_factor(&fp, p, &mut rng);
    if facs.len() == 1 {
        return vec![f];
    }
    facs.sort();
    let norm: f64 = f.iter().map(|c| c.to_f64().unwrap_or(f64::MAX).powi(2)).sum::<f64>().sqrt();
    let bound = 2f64.powi(n as i32) * (norm + 1.0) * lc.abs().to_f64().unwrap_or(f64::MAX) * 2.0;
    let mut k = 1u32;
    while (p as f64).powi(k as i32) <= bound {
        k += 1;
    }
    let mk = num_traits::pow(BigInt::from(p), k as usize);
    let lc_inv = lc.modinv(&mk).unwrap();
    let fmonic: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&mk)).collect();
    let lifted = hensel_lift(&fmonic, &facs, p, k);

    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut g = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = false;
        for subset in subsets(remaining.len(), s) {
            let lcg = g.last().unwrap().clone();
            let mut prod = vec![lcg];
            for &i in &subset {
                prod = big_mul(&prod, &remaining[i], &mk);
            }
            let cand = primitive(symmetric(&prod, &mk));
            if let Some(q) = int_divides(&cand, &g) {
                out.push(cand);
                g = primitive(q);
                for &i in subset.iter().rev() {
                    remaining.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if g.len() > 1 {
        out.push(g);
    }
    out
}
