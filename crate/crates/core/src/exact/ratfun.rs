use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{pow_rational, valuation, Rational};
use super::ExactError;

/// Element of Q(x) kept as num/den with gcd 1 and monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let l = den.leading();
        if l.is_one() {
            RatFun { num, den }
        } else {
            let inv = l.recip();
            RatFun { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn x() -> Self {
        RatFun::from_poly(Poly::x())
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        RatFun::constant(Rational::from_integer(c.into()))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFun, ExactError> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &RatFun) -> Result<RatFun, ExactError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<RatFun, ExactError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(RatFun { num: self.num.pow(e as u32), den: self.den.pow(e as u32) })
    }

    /// f(c x).
    pub fn dilate(&self, c: &Rational) -> RatFun {
        RatFun::normalized(self.num.dilate(c), self.den.dilate(c))
    }

    /// f(q^k x).
    pub fn dilate_q(&self, q: &Rational, k: i64) -> RatFun {
        self.dilate(&pow_rational(q, k))
    }

    /// x-adic order: ord_0(num) - ord_0(den); `None` for zero.
    pub fn order_at_zero(&self) -> Option<i64> {
        let a = self.num.x_order()? as i64;
        let b = self.den.x_order().unwrap() as i64;
        Some(a - b)
    }

    /// Order of the pole at infinity is deg num - deg den.
    pub fn degree_at_infinity(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn value_at_zero(&self) -> Option<Rational> {
        if self.den.coeff(0).is_zero() {
            return None;
        }
        Some(self.num.coeff(0) / self.den.coeff(0))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Laurent expansion at 0: returns (v, c) with f = sum_i c[i] x^(v+i) + O(x^(v+n)).
    pub fn laurent(&self, n: usize) -> (i64, Vec<Rational>) {
        if self.is_zero() {
            return (0, vec![Rational::zero(); n]);
        }
        let a = self.num.x_order().unwrap();
        let b = self.den.x_order().unwrap();
        let num = self.num.shift_down(a);
        let den = self.den.shift_down(b);
        (a as i64 - b as i64, series_div(&num, &den, n))
    }

    /// Taylor coefficients at 0 of a function regular there.
    pub fn taylor(&self, n: usize) -> Option<Vec<Rational>> {
        if self.den.coeff(0).is_zero() {
            return None;
        }
        Some(series_div(&self.num, &self.den, n))
    }

    /// Gauss valuation at p: v_p(num) - v_p(den); `None` for zero.
    pub fn gauss_valuation(&self, p: u64) -> Option<i64> {
        Some(self.num.gauss_valuation(p)? - self.den.gauss_valuation(p).unwrap())
    }
}

/// First n coefficients of num/den as a power series; den(0) must be nonzero.
pub fn series_div(num: &Poly, den: &Poly, n: usize) -> Vec<Rational> {
    let d0 = den.coeff(0);
    assert!(!d0.is_zero());
    let inv = d0.recip();
    let dc = den.coeffs();
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        for j in 1..dc.len().min(k + 1) {
            acc -= &dc[j] * &out[k - j];
        }
        out.push(acc * &inv);
    }
    out
}

pub fn rational_valuation(c: &Rational, p: u64) -> Option<i64> {
    valuation(c, p)
}

fn needs_parens(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
        || p.coeffs().last().map_or(false, |c| !c.denom().is_one())
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if needs_parens(&self.num) { format!("({})", self.num) } else { self.num.to_string() };
        write!(f, "{}/({})", n, self.den)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::normalized(&self.num + &o.num, self.den.clone());
        }
        RatFun::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun { num: &self.num * &o.num, den: Poly::one() };
        }
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n = &self.num.exact_div(&g1) * &o.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &o.den.exact_div(&g1);
        let l = d.leading();
        if l.is_one() {
            RatFun { num: n, den: d }
        } else {
            let inv = l.recip();
            RatFun { num: n.scale(&inv), den: d.scale(&inv) }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, o: RatFun) -> RatFun {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(Poly::from_i64(n), Poly::from_i64(d)).unwrap()
    }

    #[test]
    fn normal_form() {
        let f = rf(&[2, -3, 1], &[-1, 1]);
        assert_eq!(f, RatFun::from_poly(Poly::from_i64(&[-2, 1])));
        let g = rf(&[1], &[2, 2]);
        assert_eq!(g.den(), &Poly::from_i64(&[1, 1]));
        assert_eq!(g.num(), &Poly::constant(ratio(1, 2)));
        assert!(RatFun::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn field_ops() {
        let f = rf(&[1], &[1, 1]);
        let g = rf(&[0, 1], &[1, 1]);
        assert_eq!(&f + &g, RatFun::one());
        assert_eq!((&f * &f.inv().unwrap()), RatFun::one());
    }

    #[test]
    fn laurent_expansion() {
        let f = rf(&[1], &[0, 1, -1]);
        let (v, c) = f.laurent(4);
        assert_eq!(v, -1);
        assert_eq!(c, vec![rat(1); 4]);
    }

    #[test]
    fn dilation() {
        let f = rf(&[0, 1], &[1, 1]);
        let g = f.dilate(&rat(2));
        assert_eq!(g, rf(&[0, 2], &[1, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(rf(&[1], &[1, 1]).to_string(), "1/(x + 1)");
        assert_eq!(rf(&[1, 2], &[0, 1]).to_string(), "(2*x + 1)/(x)");
    }
}
