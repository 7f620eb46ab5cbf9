use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (quo, rem) = m.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        m = quo;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn valuation(r: &Rational, p: u64) -> Option<i64> {
    let vn = valuation_int(r.numer(), p)?;
    let vd = valuation_int(r.denom(), p).unwrap_or(0);
    Some(vn - vd)
}

pub fn pow_rational(q: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(q.clone(), k as usize)
    } else {
        num_traits::pow(q.recip(), (-k) as usize)
    }
}

/// Image of `r` in Z/mZ, `None` when the denominator is not a unit mod m.
pub fn reduce_mod(r: &Rational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let num = r.numer().mod_floor(&mb).to_u64().unwrap();
    let den = r.denom().mod_floor(&mb).to_u64().unwrap();
    let inv = inverse_mod(den, m)?;
    Some(((num as u128 * inv as u128) % m as u128) as u64)
}

pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Natural log of |n| for a nonzero integer, without overflowing f64.
pub fn ln_abs_int(n: &BigInt) -> f64 {
    let mag: BigUint = n.magnitude().clone();
    let bits = mag.bits();
    if bits <= 1000 {
        return mag.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (&mag >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_abs(r: &Rational) -> f64 {
    ln_abs_int(r.numer()) - ln_abs_int(r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let s = if r.is_negative() { -1.0 } else { 1.0 };
    s * ln_abs(r).exp()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn sign_of(r: &Rational) -> Sign {
    r.numer().sign()
}

pub fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factorial(n: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 2..=n {
        r *= i;
    }
    r
}


/// Serde helpers that write rationals as strings like "-3/4".
pub mod ser {
    use super::Rational;
    use serde::ser::{SerializeSeq, Serializer};

    pub fn rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn vec_rational<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }
}
