use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::exact::rational::{inverse_mod, valuation};
use crate::exact::Rational;

/// Arithmetic data of q at a prime p.
///
/// For a unit q: `kappa` is the order of q mod p and `ell = v_p(1 - q^kappa)`.
/// For a non-unit q the profile has `good = false` and `kappa = ell = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeProfile {
    pub p: u64,
    pub kappa: u64,
    pub ell: u32,
    pub strong: bool,
    pub good: bool,
}

impl PrimeProfile {
    pub fn require_good(&self) -> Result<&Self, super::ArithmeticError> {
        if self.good {
            Ok(self)
        } else {
            Err(super::ArithmeticError::NotAUnit { p: self.p })
        }
    }
}

fn residue(n: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let r = ((n % &pb) + &pb) % &pb;
    r.to_u64().unwrap()
}

/// Multiplicative order of q mod p for a unit q.
pub fn kappa(q: &Rational, p: u64) -> Option<u64> {
    let a = residue(q.numer(), p);
    let b = residue(q.denom(), p);
    if a == 0 || b == 0 {
        return None;
    }
    let r = (a as u128 * inverse_mod(b, p)? as u128 % p as u128) as u64;
    let mut x = r;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * r as u128 % p as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// v_p(1 - q^n) for a p-adic unit q with q^n != 1.
pub fn valuation_one_minus_q_power(q: &Rational, n: u64, p: u64) -> i64 {
    let a = q.numer();
    let b = q.denom();
    if a.abs() == *b {
        let minus = a.is_negative() && n % 2 == 1;
        assert!(minus, "q^n = 1");
        return valuation(&Rational::from_integer(BigInt::from(2)), p).unwrap_or(0);
    }
    let e = BigUint::from(n);
    let mut k = 32u32;
    loop {
        let m = num_traits::pow(BigInt::from(p), k as usize);
        let an = a.modpow(&BigInt::from(e.clone()), &m);
        let bn = b.modpow(&BigInt::from(e.clone()), &m);
        let d = ((bn - an) % &m + &m) % &m;
        if !d.is_zero() {
            return crate::exact::rational::valuation_int(&d, p).unwrap();
        }
        k *= 2;
    }
}

pub fn prime_profile(q: &Rational, p: u64) -> PrimeProfile {
    let unit = valuation(q, p) == Some(0);
    let Some(k) = (if unit { kappa(q, p) } else { None }) else {
        return PrimeProfile { p, kappa: 0, ell: 0, strong: false, good: false };
    };
    let ell = valuation_one_minus_q_power(q, k, p) as u32;
    let strong = ell >= 1 && (p > 2 || ell >= 2);
    PrimeProfile { p, kappa: k, ell, strong, good: true }
}
