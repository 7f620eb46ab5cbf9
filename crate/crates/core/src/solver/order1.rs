use num_traits::Zero;
use serde::Serialize;

use crate::exact::rational::{pow_rational, ser};
use crate::exact::{factor_poly, q_power_test, q_rational_power_test, Poly, RatFun, Rational};

/// q^qexp * f: a rank one coefficient that may involve a rational power of q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledRatFun {
    pub qexp: Rational,
    pub f: RatFun,
}

impl ScaledRatFun {
    pub fn plain(f: RatFun) -> Self {
        ScaledRatFun { qexp: Rational::zero(), f }
    }

    pub fn q_power(e: Rational) -> Self {
        ScaledRatFun { qexp: e, f: RatFun::one() }
    }

    /// The element of Q(x) it denotes, when q^qexp is rational.
    pub fn to_ratfun(&self, q: &Rational) -> Option<RatFun> {
        let c = crate::exact::rational_q_power(q, &self.qexp)?;
        Some(self.f.scale(&c))
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerSolution {
    pub d: u64,
    /// y = x^delta f(x).
    #[serde(serialize_with = "ser::rational")]
    pub delta: Rational,
    #[serde(serialize_with = "crate::solver::ser_ratfun")]
    pub f: RatFun,
}

/// b = c * x^m * prod p_i^e_i with p_i monic irreducible, p_i != x.
struct Decomposition {
    c: Rational,
    m: i64,
    factors: Vec<(Poly, i64)>,
}

fn decompose(b: &RatFun) -> Decomposition {
    let mut factors = Vec::new();
    let mut m = 0i64;
    let num = factor_poly(b.num());
    let den = factor_poly(b.den());
    for (fac, sign) in [(&num, 1i64), (&den, -1i64)] {
        for (p, e) in &fac.factors {
            if *p == Poly::x() {
                m += sign * *e as i64;
            } else {
                factors.push((p.clone(), sign * *e as i64));
            }
        }
    }
    Decomposition { c: &num.unit / &den.unit, m, factors }
}

/// sigma^t(p) = p(q^t x) / q^(t deg p).
fn sigma(p: &Poly, q: &Rational, t: i64) -> Poly {
    let d = p.degree().unwrap_or(0) as i64;
    p.dilate_q(q, t).scale(&pow_rational(q, -t * d))
}

/// The t with p = sigma^t(rep), if any.
fn shift_between(rep: &Poly, p: &Poly, q: &Rational) -> Option<i64> {
    if rep.degree() != p.degree() {
        return None;
    }
    let d = rep.degree()? as i64;
    let ratio = rep.coeff(0) / p.coeff(0);
    let e = q_power_test(&ratio, q)?;
    if e % d != 0 {
        return None;
    }
    let t = e / d;
    if sigma(rep, q, t) == *p {
        Some(t)
    } else {
        None
    }
}

/// Telescopes every sigma-class. Returns f = prod g^n with f(qx)/f(x) = q^(sum n deg g) * prod p_i^e_i,
/// together with sum n deg g, or None when a class does not telescope.
fn telescope(factors: &[(Poly, i64)], q: &Rational) -> Option<(RatFun, i64)> {
    let mut classes: Vec<(Poly, Vec<(i64, i64)>)> = Vec::new();
    for (p, e) in factors {
        let mut placed = false;
        for (rep, members) in classes.iter_mut() {
            if let Some(t) = shift_between(rep, p, q) {
                members.push((t, *e));
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((p.clone(), vec![(0, *e)]));
        }
    }
    let mut f = RatFun::one();
    let mut weight = 0i64;
    for (rep, mut members) in classes {
        members.sort();
        let deg = rep.degree().unwrap_or(0) as i64;
        let (tmin, tmax) = (members[0].0, members.last().unwrap().0);
        let mut n = 0i64;
        let mut idx = 0;
        for t in tmin..=tmax {
            let mut e = 0;
            while idx < members.len() && members[idx].0 == t {
                e += members[idx].1;
                idx += 1;
            }
            n -= e;
            if t == tmax {
                break;
            }
            if n != 0 {
                let g = RatFun::from_poly(sigma(&rep, q, t));
                f = &f * &g.pow(n).ok()?;
                weight += n * deg;
            }
        }
        if n != 0 {
            return None;
        }
    }
    Some((f, weight))
}

/// f in Q(x) with f(qx)/f(x) = b, decided exactly through q-shift classes of the factors of b.
pub fn order1_rational_test(b: &RatFun, q: &Rational) -> Option<RatFun> {
    if b.is_zero() {
        return None;
    }
    let dec = decompose(b);
    if dec.m != 0 {
        return None;
    }
    let (f, weight) = telescope(&dec.factors, q)?;
    let k = q_power_test(&(&dec.c / pow_rational(q, weight)), q)?;
    let sol = &f * &RatFun::x().pow(k).ok()?;
    debug_assert_eq!(sol.dilate(q).checked_div(&sol).ok().as_ref(), Some(b));
    Some(sol)
}

/// y = x^delta f(x) with f in Q(x) and delta in (1/d)Z, d <= dcap minimal, solving y(qx) = b y(x).
pub fn order1_kummer_test(b: &ScaledRatFun, q: &Rational, dcap: u64) -> Option<KummerSolution> {
    if b.is_zero() || dcap == 0 {
        return None;
    }
    let dec = decompose(&b.f);
    if dec.m != 0 {
        return None;
    }
    let (f, weight) = telescope(&dec.factors, q)?;
    let rest = &dec.c / pow_rational(q, weight);
    let t = q_rational_power_test(&rest, q, dcap)?;
    let delta = &b.qexp + t;
    let d: u64 = delta.denom().try_into().ok()?;
    if d > dcap {
        return None;
    }
    Some(KummerSolution { d, delta, f })
}
