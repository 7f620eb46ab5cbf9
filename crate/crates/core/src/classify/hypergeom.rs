use num_traits::{One, Zero};
use serde::Serialize;

use super::ClassifyError;
use crate::exact::rational::pow_rational;
use crate::exact::{q_power_test, q_rational_power_test, rational_q_power, Poly, RatFun, RatMatrix, Rational};
use crate::qmodule::QDiffSystem;

/// Cap on denominators when deciding membership in q^Q for raw rationals.
pub const QEXP_DCAP: u64 = 64;

/// A parameter given either as a rational value or as an exact power q^e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QParam {
    Value(Rational),
    QPower(Rational),
}

impl QParam {
    pub fn value(&self, q: &Rational) -> Option<Rational> {
        match self {
            QParam::Value(v) => Some(v.clone()),
            QParam::QPower(e) => rational_q_power(q, e),
        }
    }

    /// e with the parameter equal to q^e, denominators up to `QEXP_DCAP`.
    pub fn exponent(&self, q: &Rational) -> Option<Rational> {
        match self {
            QParam::QPower(e) => Some(e.clone()),
            QParam::Value(v) => q_rational_power_test(v, q, QEXP_DCAP),
        }
    }

    /// Integer n with the parameter equal to q^n.
    pub fn int_exponent(&self, q: &Rational) -> Option<i64> {
        match self {
            QParam::QPower(e) if e.is_integer() => e.to_integer().try_into().ok(),
            QParam::QPower(_) => None,
            QParam::Value(v) => q_power_test(v, q),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, QParam::Value(v) if v.is_zero())
    }
}

impl std::fmt::Display for QParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QParam::Value(v) => write!(f, "{v}"),
            QParam::QPower(e) => write!(f, "q^({e})"),
        }
    }
}

impl Serialize for QParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypergeomParams {
    pub a: QParam,
    pub b: QParam,
    pub c: QParam,
    #[serde(serialize_with = "crate::exact::rational::ser::rational")]
    pub q: Rational,
}

impl HypergeomParams {
    pub fn new(a: QParam, b: QParam, c: QParam, q: Rational) -> Result<Self, ClassifyError> {
        if (a.is_zero() || b.is_zero()) && c.is_zero() {
            return Err(ClassifyError::DegenerateEquation);
        }
        Ok(HypergeomParams { a, b, c, q })
    }

    pub fn from_exponents(alpha: i64, beta: i64, gamma: i64, q: Rational) -> Self {
        let e = |n: i64| QParam::QPower(Rational::from_integer(n.into()));
        HypergeomParams { a: e(alpha), b: e(beta), c: e(gamma), q }
    }

    fn values(&self) -> Result<(Rational, Rational, Rational), ClassifyError> {
        let v = |p: &QParam, name: &str| p.value(&self.q).ok_or_else(|| ClassifyError::NotRational(name.into()));
        Ok((v(&self.a, "a")?, v(&self.b, "b")?, v(&self.c, "c")?))
    }
}

/// The polynomial coefficients (L, M, T) of L y(q^2 x) + M y(qx) + T y(x) = 0,
/// L = abx - c/q, M = (1 + c/q) - (a + b)x, T = x - 1.
pub fn hypergeom_operator(p: &HypergeomParams) -> Result<[Poly; 3], ClassifyError> {
    let (a, b, c) = p.values()?;
    let cq = &c / &p.q;
    let l = Poly::new(vec![-cq.clone(), &a * &b]);
    if l.is_zero() {
        return Err(ClassifyError::DegenerateEquation);
    }
    let m = Poly::new(vec![Rational::one() + &cq, -(&a + &b)]);
    let t = Poly::from_i64(&[-1, 1]);
    Ok([l, m, t])
}

/// Companion system of the basic hypergeometric equation for Y = (y, y(qx)):
/// A = [[0, -P0], [1, P1]] with P1 = ((a+b)x - (1 + c/q))/(abx - c/q), P0 = (x - 1)/(abx - c/q).
pub fn hypergeom_system(p: &HypergeomParams) -> Result<QDiffSystem, ClassifyError> {
    let [l, m, t] = hypergeom_operator(p)?;
    let p1 = RatFun::new(-m, l.clone())?;
    let p0 = RatFun::new(t, l)?;
    let a = RatMatrix::from_rows(vec![vec![RatFun::zero(), -p0], vec![RatFun::one(), p1]]).expect("2x2");
    Ok(QDiffSystem::new(p.q.clone(), a)?)
}

fn in_nonpositive_powers(p: &QParam, q: &Rational) -> bool {
    p.int_exponent(q).map_or(false, |e| e <= 0)
}

/// Definedness of the basic hypergeometric series.
pub fn phi21_defined(p: &HypergeomParams) -> bool {
    let q = &p.q;
    if !in_nonpositive_powers(&p.c, q) {
        return true;
    }
    let gamma = p.c.int_exponent(q).expect("checked");
    let ok = |x: &QParam| x.int_exponent(q).map_or(false, |e| e <= 0 && e - gamma >= 0);
    ok(&p.a) || ok(&p.b)
}

/// Coefficients of sum (a;q)_n (b;q)_n / ((c;q)_n (q;q)_n) x^n for n = 0..=N.
pub fn phi21_truncate(p: &HypergeomParams, n: usize) -> Result<Vec<Rational>, ClassifyError> {
    if !phi21_defined(p) {
        return Err(ClassifyError::UndefinedParameters);
    }
    let (a, b, c) = p.values()?;
    let q = &p.q;
    let mut out = vec![Rational::one()];
    let mut cur = Rational::one();
    for k in 1..=n {
        if !cur.is_zero() {
            let qk = pow_rational(q, k as i64 - 1);
            let num = (Rational::one() - &a * &qk) * (Rational::one() - &b * &qk);
            if num.is_zero() {
                cur = Rational::zero();
            } else {
                let den = (Rational::one() - &c * &qk) * (Rational::one() - &qk * q);
                cur = cur * num / den;
            }
        }
        out.push(cur.clone());
    }
    Ok(out)
}
