use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{pow_rational, Rational};

/// Dense univariate polynomial over Q, coefficients from degree 0 upward.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest k with x^k dividing self; `None` for zero.
    pub fn x_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.leading().recip();
        self.scale(&l)
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Drops the lowest `k` coefficients (division by x^k when exact).
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// p(c x).
    pub fn dilate(&self, c: &Rational) -> Poly {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Poly::new(out)
    }

    pub fn dilate_q(&self, q: &Rational, k: i64) -> Poly {
        self.dilate(&pow_rational(q, k))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = d.leading().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.monic();
        let mut b = b.monic();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a
    }

    /// Returns (g, s, t) with s a + t b = g, g monic.
    pub fn xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.leading().recip();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// Writes self = c * P with P in Z[x] primitive and positive leading coefficient.
    pub fn integer_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, l), prim)
    }

    pub fn from_bigints(cs: &[BigInt]) -> Poly {
        Poly::new(cs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Gauss valuation at p: min of coefficient valuations; `None` for zero.
    pub fn gauss_valuation(&self, p: u64) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| super::rational::valuation(c, p)).min()
    }

    pub fn compose(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Yun's squarefree decomposition: self = lc * prod f_i^i.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Poly::gcd(&f, &df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = Poly::gcd(&b, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            if i == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", a, mono));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => v.push(a + b),
                (Some(a), None) => v.push(a.clone()),
                (None, Some(b)) => v.push(b.clone()),
                _ => unreachable!(),
            }
        }
        Poly::new(v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_i64(&[-1, 0, 1]);
        let b = Poly::from_i64(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_i64(&[1, 1]));
        assert!(r.is_zero());
        let g = Poly::gcd(&a, &Poly::from_i64(&[1, 2, 1]));
        assert_eq!(g, Poly::from_i64(&[1, 1]));
    }

    #[test]
    fn xgcd_identity() {
        let a = Poly::from_i64(&[2, 3, 1]);
        let b = Poly::from_i64(&[5, 0, 1]);
        let (g, s, t) = Poly::xgcd(&a, &b);
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn primitive_part() {
        let p = Poly::new(vec![ratio(3, 2), rat(3)]);
        let (c, prim) = p.integer_primitive();
        assert_eq!(c, ratio(3, 2));
        assert_eq!(prim, vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn yun() {
        let f = &Poly::from_i64(&[1, 1]).pow(3) * &Poly::from_i64(&[-2, 1]);
        let sq = f.squarefree_decomposition();
        assert_eq!(sq, vec![(Poly::from_i64(&[-2, 1]), 1), (Poly::from_i64(&[1, 1]), 3)]);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64(&[2, -3, 1]).to_string(), "x^2 - 3*x + 2");
        assert_eq!(Poly::new(vec![rat(0), ratio(-1, 2)]).to_string(), "-1/2*x");
    }
}
