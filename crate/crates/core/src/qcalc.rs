//! q-numbers, q-factorials, q-binomials, q-Pochhammer symbols and the q-derivation.

use num_traits::{One, Zero};

use crate::arithmetic::profile::{prime_profile, valuation_one_minus_q_power};
use crate::exact::{Poly, RatFun, Rational};
use crate::exact::rational::pow_rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QCalcError {
    #[error("q is not a p-adic unit for p = {p}")]
    NotAUnit { p: u64 },
    #[error("q must differ from 0 and 1")]
    DegenerateQ,
}

/// [n]_q = 1 + q + ... + q^(n-1), extended to n < 0 by (1 - q^n)/(1 - q).
pub fn q_int(n: i64, q: &Rational) -> Rational {
    if n >= 0 {
        let mut acc = Rational::zero();
        let mut pw = Rational::one();
        for _ in 0..n {
            acc += &pw;
            pw *= q;
        }
        acc
    } else {
        (Rational::one() - pow_rational(q, n)) / (Rational::one() - q)
    }
}

pub fn q_factorial(n: u64, q: &Rational) -> Rational {
    let mut acc = Rational::one();
    for k in 1..=n {
        acc *= q_int(k as i64, q);
    }
    acc
}

/// Gaussian binomial via the Pascal rule C(n,i) = C(n-1,i-1) + q^i C(n-1,i).
pub fn q_binomial(n: u64, i: u64, q: &Rational) -> Rational {
    if i > n {
        return Rational::zero();
    }
    q_binomial_row(n, q).swap_remove(i as usize)
}

fn q_binomial_row(n: u64, q: &Rational) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    let mut qpow = vec![Rational::one()];
    for m in 1..=n as usize {
        qpow.push(&qpow[m - 1] * q);
        let mut next = vec![Rational::one(); m + 1];
        for i in 1..m {
            next[i] = &row[i - 1] + &qpow[i] * &row[i];
        }
        row = next;
    }
    row
}

/// (a; q)_n = (1 - a)(1 - aq)...(1 - a q^(n-1)).
pub fn q_pochhammer(a: &Rational, n: u64, q: &Rational) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc *= Rational::one() - &t;
        t *= q;
    }
    acc
}

/// (x - a)_n = (x - a)(x - qa)...(x - q^(n-1) a) as a polynomial in x.
pub fn q_pochhammer_x(a: &Rational, n: u64, q: &Rational) -> Poly {
    let mut acc = Poly::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc = &acc * &Poly::new(vec![-t.clone(), Rational::one()]);
        t *= q;
    }
    acc
}

/// d_q f = (f(qx) - f(x)) / ((q - 1) x).
pub fn dq(f: &RatFun, q: &Rational) -> RatFun {
    let num = &f.dilate(q) - f;
    let den = RatFun::from_poly(Poly::monomial(q - Rational::one(), 1));
    num.checked_div(&den).expect("q != 1")
}

/// n-fold q-derivative.
pub fn qderive(f: &RatFun, q: &Rational, n: u32) -> RatFun {
    let mut g = f.clone();
    for _ in 0..n {
        g = dq(&g, q);
    }
    g
}

/// Coefficients c_i with phi^n = sum_i c_i x^i d_q^i, c_i = C(n,i) (q-1)^i q^(i(i-1)/2).
pub fn phi_to_dq_coeffs(n: u64, q: &Rational) -> Vec<Rational> {
    let row = q_binomial_row(n, q);
    let qm1 = q - Rational::one();
    (0..=n as usize)
        .map(|i| {
            &row[i] * pow_rational(&qm1, i as i64) * pow_rational(q, (i * i.saturating_sub(1) / 2) as i64)
        })
        .collect()
}

/// Coefficients b_j with d_q^n = x^(-n) sum_j b_j phi^j,
/// b_j = (-1)^(n+j) C_(1/q)(n,j) q^(-j(j-1)/2) / (q-1)^n.
pub fn dq_to_phi_coeffs(n: u64, q: &Rational) -> Vec<Rational> {
    let qi = q.recip();
    let row = q_binomial_row(n, &qi);
    let scale = pow_rational(&(q - Rational::one()), -(n as i64));
    (0..=n as usize)
        .map(|j| {
            let sign = if (n as usize + j) % 2 == 0 { Rational::one() } else { -Rational::one() };
            sign * &row[j] * pow_rational(q, -((j * j.saturating_sub(1) / 2) as i64)) * &scale
        })
        .collect()
}

/// Applies x^(-n) sum_j b_j phi^j, the right-hand side of the d_q^n inversion formula.
pub fn apply_phi_form(coeffs: &[Rational], f: &RatFun, q: &Rational) -> RatFun {
    let n = coeffs.len() as i64 - 1;
    let mut acc = RatFun::zero();
    for (j, b) in coeffs.iter().enumerate() {
        acc = &acc + &f.dilate_q(q, j as i64).scale(b);
    }
    &acc * &RatFun::x().pow(-n).unwrap()
}

/// Applies sum_i c_i x^i d_q^i.
pub fn apply_dq_form(coeffs: &[Rational], f: &RatFun, q: &Rational) -> RatFun {
    let mut acc = RatFun::zero();
    let mut d = f.clone();
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            d = dq(&d, q);
        }
        let term = &d * &RatFun::from_poly(Poly::monomial(c.clone(), i));
        acc = &acc + &term;
    }
    acc
}

/// v_p([n]_q!) for a p-adic unit q. Uses floor(n/kappa) v_p([kappa]_q) + v_p(floor(n/kappa)!)
/// when |1 - q^kappa| < |p|^(1/(p-1)), and the direct product otherwise.
pub fn q_factorial_valuation(n: u64, p: u64, q: &Rational) -> Result<i64, QCalcError> {
    let prof = prime_profile(q, p);
    if !prof.good {
        return Err(QCalcError::NotAUnit { p });
    }
    if prof.strong {
        let kappa = prof.kappa;
        let m = n / kappa;
        let vk = q_int_valuation(kappa, p, q);
        Ok(m as i64 * vk + legendre(m, p) as i64)
    } else {
        Ok((1..=n).map(|i| q_int_valuation(i, p, q)).sum())
    }
}

/// v_p([n]_q) for a unit q, n >= 1.
pub fn q_int_valuation(n: u64, p: u64, q: &Rational) -> i64 {
    if q.is_one() {
        return crate::exact::rational::valuation_int(&n.into(), p).unwrap();
    }
    valuation_one_minus_q_power(q, n, p) - valuation_one_minus_q_power(q, 1, p)
}

pub fn legendre(n: u64, p: u64) -> u64 {
    let mut s = 0;
    let mut m = n / p;
    while m > 0 {
        s += m;
        m /= p;
    }
    s
}

/// Memoized q-symbols for one fixed q; confined to its owner.
#[derive(Debug, Clone)]
pub struct QSymbolTable {
    q: Rational,
    ints: Vec<Rational>,
    factorials: Vec<Rational>,
    binomial_rows: Vec<Vec<Rational>>,
}

impl QSymbolTable {
    pub fn new(q: Rational) -> Self {
        QSymbolTable {
            q,
            ints: vec![Rational::zero()],
            factorials: vec![Rational::one()],
            binomial_rows: vec![vec![Rational::one()]],
        }
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn int(&mut self, n: usize) -> &Rational {
        while self.ints.len() <= n {
            let k = self.ints.len();
            let next = &self.ints[k - 1] + pow_rational(&self.q, k as i64 - 1);
            self.ints.push(next);
        }
        &self.ints[n]
    }

    pub fn factorial(&mut self, n: usize) -> &Rational {
        while self.factorials.len() <= n {
            let k = self.factorials.len();
            let qk = self.int(k).clone();
            let next = &self.factorials[k - 1] * qk;
            self.factorials.push(next);
        }
        &self.factorials[n]
    }

    pub fn binomial(&mut self, n: usize, i: usize) -> Rational {
        if i > n {
            return Rational::zero();
        }
        while self.binomial_rows.len() <= n {
            let m = self.binomial_rows.len();
            let prev = &self.binomial_rows[m - 1];
            let mut next = vec![Rational::one(); m + 1];
            for (i, slot) in next.iter_mut().enumerate().take(m).skip(1) {
                *slot = &prev[i - 1] + pow_rational(&self.q, i as i64) * &prev[i];
            }
            self.binomial_rows.push(next);
        }
        self.binomial_rows[n][i].clone()
    }
}
