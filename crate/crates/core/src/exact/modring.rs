//! Reduction of Q(x) data modulo p^ell.
//!
//! Elements are fractions over (Z/p^ell)[x] whose denominators reduce to a nonzero
//! polynomial mod p. Such denominators are non-zero-divisors, so equality is tested by
//! cross multiplication and nothing needs to be cancelled.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::matrix::RatMatrix;
use super::poly::Poly;
use super::ratfun::RatFun;
use super::rational::{reduce_mod, Rational};
use super::ExactError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ModRing {
    pub p: u64,
    pub ell: u32,
    pub modulus: u64,
}

impl ModRing {
    pub fn new(p: u64, ell: u32) -> Result<Self, ExactError> {
        let mut m: u64 = 1;
        for _ in 0..ell {
            m = m.checked_mul(p).filter(|&v| v < (1u64 << 62)).ok_or(ExactError::ModulusOverflow { p, ell })?;
        }
        Ok(ModRing { p, ell, modulus: m })
    }

    pub fn reduce(&self, r: &Rational) -> Option<u64> {
        reduce_mod(r, self.modulus)
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModPoly {
    pub ring: ModRing,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(ring: ModRing, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= ring.modulus;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { ring, coeffs }
    }

    pub fn constant(ring: ModRing, c: u64) -> Self {
        ModPoly::new(ring, vec![c])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the reduction mod p is nonzero.
    pub fn is_unit_content(&self) -> bool {
        self.coeffs.iter().any(|&c| c % self.ring.p != 0)
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let m = self.ring.modulus;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = *self.coeffs.get(i).unwrap_or(&0);
                let b = *o.coeffs.get(i).unwrap_or(&0);
                ((a as u128 + b as u128) % m as u128) as u64
            })
            .collect();
        ModPoly::new(self.ring, v)
    }

    pub fn neg(&self) -> ModPoly {
        let m = self.ring.modulus;
        ModPoly::new(self.ring, self.coeffs.iter().map(|&c| (m - c) % m).collect())
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::new(self.ring, Vec::new());
        }
        let m = self.ring.modulus as u128;
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % m;
            }
        }
        ModPoly::new(self.ring, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        ModPoly::new(self.ring, self.coeffs.iter().map(|&a| self.ring.mulm(a, c)).collect())
    }

    /// p(c x).
    pub fn dilate(&self, c: u64) -> ModPoly {
        let mut pw = 1 % self.ring.modulus;
        let mut v = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            v.push(self.ring.mulm(a, pw));
            pw = self.ring.mulm(pw, c);
        }
        ModPoly::new(self.ring, v)
    }
}

/// Reduces a polynomial with p-integral coefficients.
pub fn reduce_poly(p: &Poly, ring: ModRing) -> Option<ModPoly> {
    let v: Option<Vec<u64>> = p.coeffs().iter().map(|c| ring.reduce(c)).collect();
    Some(ModPoly::new(ring, v?))
}

#[derive(Clone, Debug)]
pub struct ModRatFun {
    pub num: ModPoly,
    pub den: ModPoly,
}

impl ModRatFun {
    pub fn add(&self, o: &ModRatFun) -> ModRatFun {
        ModRatFun { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    pub fn mul(&self, o: &ModRatFun) -> ModRatFun {
        ModRatFun { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn constant(ring: ModRing, c: u64) -> ModRatFun {
        ModRatFun { num: ModPoly::constant(ring, c), den: ModPoly::constant(ring, 1) }
    }

    pub fn neg(&self) -> ModRatFun {
        ModRatFun { num: self.num.neg(), den: self.den.clone() }
    }

    /// Defined when the numerator is not a zero divisor.
    pub fn inv(&self) -> Option<ModRatFun> {
        if self.num.is_unit_content() {
            Some(ModRatFun { num: self.den.clone(), den: self.num.clone() })
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> ModRatFun {
        let mut acc = ModRatFun { num: ModPoly::constant(self.num.ring, 1), den: ModPoly::constant(self.num.ring, 1) };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl PartialEq for ModRatFun {
    fn eq(&self, o: &ModRatFun) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

/// Splits f = c * N / D with D a primitive integer polynomial; errors when f is not
/// p-integral for the Gauss norm.
fn integral_split(f: &RatFun, p: u64) -> Result<(Poly, Poly), ExactError> {
    let (cd, dprim) = f.den().integer_primitive();
    let den = Poly::from_bigints(&dprim);
    let num = f.num().scale(&cd.recip());
    if let Some(v) = num.gauss_valuation(p) {
        if v < 0 {
            return Err(ExactError::BadPrime { p });
        }
    }
    Ok((num, den))
}

pub fn mod_reduce(f: &RatFun, ring: ModRing) -> Result<ModRatFun, ExactError> {
    let (num, den) = integral_split(f, ring.p)?;
    let bad = ExactError::BadPrime { p: ring.p };
    Ok(ModRatFun {
        num: reduce_poly(&num, ring).ok_or(bad.clone())?,
        den: reduce_poly(&den, ring).ok_or(bad)?,
    })
}

/// Matrix over (Z/p^ell)[x] with one common denominator.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub ring: ModRing,
    pub rows: usize,
    pub cols: usize,
    num: Vec<ModPoly>,
    pub den: ModPoly,
}

impl ModMatrix {
    pub fn identity(ring: ModRing, n: usize) -> ModMatrix {
        let num = (0..n * n).map(|k| ModPoly::constant(ring, if k % (n + 1) == 0 { 1 } else { 0 })).collect();
        ModMatrix { ring, rows: n, cols: n, num, den: ModPoly::constant(ring, 1) }
    }

    pub fn numerator(&self, i: usize, j: usize) -> &ModPoly {
        &self.num[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> ModRatFun {
        ModRatFun { num: self.numerator(i, j).clone(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &ModMatrix) -> ModMatrix {
        let zero = ModPoly::new(self.ring, Vec::new());
        let mut num = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    acc = acc.add(&self.numerator(i, k).mul(o.numerator(k, j)));
                }
                num.push(acc);
            }
        }
        ModMatrix { ring: self.ring, rows: self.rows, cols: o.cols, num, den: self.den.mul(&o.den) }
    }

    pub fn dilate(&self, c: u64) -> ModMatrix {
        ModMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            num: self.num.iter().map(|p| p.dilate(c)).collect(),
            den: self.den.dilate(c),
        }
    }

    /// M - I, keeping the denominator.
    pub fn minus_identity(&self) -> ModMatrix {
        let mut num = self.num.clone();
        for i in 0..self.rows.min(self.cols) {
            num[i * self.cols + i] = num[i * self.cols + i].sub(&self.den);
        }
        ModMatrix { ring: self.ring, rows: self.rows, cols: self.cols, num, den: self.den.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|p| p.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.minus_identity().is_zero()
    }

    pub fn pow(&self, e: u32) -> ModMatrix {
        let mut r = ModMatrix::identity(self.ring, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Entries as (numerator, denominator) coefficient lists.
    pub fn to_coefficients(&self) -> Vec<Vec<(Vec<u64>, Vec<u64>)>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| (self.numerator(i, j).coeffs().to_vec(), self.den.coeffs().to_vec()))
                    .collect()
            })
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.num.iter().map(|p| p.coeffs().len()).max().unwrap_or(0)
    }
}

/// Reduces a matrix over Q(x) whose entries are Gauss-integral at p.
pub fn mod_reduce_matrix(a: &RatMatrix, ring: ModRing) -> Result<ModMatrix, ExactError> {
    let mut l = Poly::one();
    for f in a.entries() {
        l = lcm(&l, f.den());
    }
    let (_, lprim) = l.integer_primitive();
    let lp = Poly::from_bigints(&lprim);
    let mut num = Vec::with_capacity(a.rows * a.cols);
    for f in a.entries() {
        let n = &f.num().clone() * &lp.exact_div(f.den());
        if let Some(v) = n.gauss_valuation(ring.p) {
            if v < 0 {
                return Err(ExactError::BadPrime { p: ring.p });
            }
        }
        num.push(reduce_poly(&n, ring).ok_or(ExactError::BadPrime { p: ring.p })?);
    }
    let den = reduce_poly(&lp, ring).ok_or(ExactError::BadPrime { p: ring.p })?;
    Ok(ModMatrix { ring, rows: a.rows, cols: a.cols, num, den })
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = Poly::gcd(a, b);
    (a * &b.exact_div(&g)).monic()
}

pub fn bigint_mod(n: &BigInt, m: u64) -> u64 {
    let mb = BigInt::from(m);
    let r = ((n % &mb) + &mb) % &mb;
    if r.is_zero() {
        0
    } else {
        r.to_u64().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(Poly::from_i64(n), Poly::from_i64(d)).unwrap()
    }

    #[test]
    fn reduce_unipotent_example() {
        let ring = ModRing::new(3, 2).unwrap();
        let a = RatMatrix::from_rows(vec![
            vec![RatFun::from_i64(1), RatFun::from_i64(3)],
            vec![RatFun::from_i64(0), RatFun::from_i64(1)],
        ])
        .unwrap();
        let m = mod_reduce_matrix(&a, ring).unwrap();
        assert_eq!(m.numerator(0, 1).coeffs(), &[3]);
        assert!(!m.is_identity());
        let ring3 = ModRing::new(3, 1).unwrap();
        assert!(mod_reduce_matrix(&a, ring3).unwrap().is_identity());
    }

    #[test]
    fn bad_prime_detected() {
        let ring = ModRing::new(3, 1).unwrap();
        assert!(mod_reduce(&rf(&[1], &[3, 3]), ring).is_err());
        assert!(mod_reduce(&RatFun::constant(ratio(1, 3)), ring).is_err());
        assert!(mod_reduce(&RatFun::constant(ratio(1, 2)), ring).is_ok());
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let ring = ModRing::new(5, 2).unwrap();
        let f = rf(&[1, 2], &[3, 1]);
        let g = rf(&[7, 0, 1], &[1, 1]);
        let lhs = mod_reduce(&(&f * &g), ring).unwrap();
        let rhs = mod_reduce(&f, ring).unwrap().mul(&mod_reduce(&g, ring).unwrap());
        assert_eq!(lhs, rhs);
        let lhs = mod_reduce(&(&f + &g), ring).unwrap();
        let rhs = mod_reduce(&f, ring).unwrap().add(&mod_reduce(&g, ring).unwrap());
        assert_eq!(lhs, rhs);
    }
}
