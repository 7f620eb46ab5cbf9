use serde::Serialize;

use super::hypergeom::{HypergeomParams, QParam};
use super::ClassifyError;
use crate::exact::Rational;

/// (m, n) in (Z_{>0} x Z_{<=0}) u (Z_{<=0} x Z_{>0}).
pub fn in_z_set(m: i64, n: i64) -> bool {
    (m > 0 && n <= 0) || (m <= 0 && n > 0)
}

/// Both clauses of the integer criterion for a basis of rational solutions.
pub fn z_clause(alpha: i64, beta: i64, gamma: i64) -> bool {
    (in_z_set(alpha, alpha + 1 - gamma) || in_z_set(beta, beta + 1 - gamma))
        && (in_z_set(alpha, beta) || in_z_set(alpha + 1 - gamma, beta + 1 - gamma))
}

/// |1 - gamma|, |gamma - alpha - beta|, |alpha - beta| are the sides of a (possibly flat) triangle.
pub fn goursat_rational(alpha: i64, beta: i64, gamma: i64) -> bool {
    let mut s = [(1 - gamma).abs(), (gamma - alpha - beta).abs(), (alpha - beta).abs()];
    s.sort();
    s[0] + s[1] >= s[2]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// (alpha, beta, gamma) as exponents of q, when found.
    pub exponents: Option<[String; 3]>,
    pub failing: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchwarzVerdict {
    pub params: HypergeomParams,
    pub rational_basis: bool,
    pub algebraic_basis: bool,
    pub witness: Witness,
    pub log_zero: bool,
    pub log_infinity: bool,
    pub notes: Vec<String>,
}

fn int_exponents(p: &HypergeomParams) -> Option<(i64, i64, i64)> {
    Some((p.a.int_exponent(&p.q)?, p.b.int_exponent(&p.q)?, p.c.int_exponent(&p.q)?))
}

/// (x, qx/c) as exponents of q, when x is in q^Z and c = q^c_int.
fn pair_in_qz(x: &QParam, c_int: i64, q: &Rational) -> Option<(i64, i64)> {
    let e = x.int_exponent(q)?;
    Some((e, e + 1 - c_int))
}

/// Logarithmic singularity at 0. Requires c in q^Z; zero is non-logarithmic exactly when
/// (a, qa/c) or (b, qb/c) lies in q^Z-set.
pub fn log_singularity_zero(p: &HypergeomParams) -> Result<bool, ClassifyError> {
    let q = &p.q;
    let gamma = p.c.int_exponent(q).ok_or_else(|| ClassifyError::HypothesisNotMet("c is not in q^Z".into()))?;
    let clean = |x: &QParam| pair_in_qz(x, gamma, q).map_or(false, |(m, n)| in_z_set(m, n));
    Ok(!(clean(&p.a) || clean(&p.b)))
}

/// Logarithmic singularity at infinity. Requires a/b in q^Z; infinity is non-logarithmic
/// exactly when (a, b) or (qa/c, qb/c) lies in q^Z-set.
pub fn log_singularity_infinity(p: &HypergeomParams) -> Result<bool, ClassifyError> {
    let q = &p.q;
    let ea = p.a.exponent(q);
    let eb = p.b.exponent(q);
    let ratio_int = match (&ea, &eb) {
        (Some(x), Some(y)) => (x - y).is_integer(),
        _ => false,
    };
    if !ratio_int {
        return Err(ClassifyError::HypothesisNotMet("a/b is not in q^Z".into()));
    }
    let Some((alpha, beta, gamma)) = int_exponents(p) else {
        return Ok(true);
    };
    Ok(!(in_z_set(alpha, beta) || in_z_set(alpha + 1 - gamma, beta + 1 - gamma)))
}

fn fmt_exp(e: &Option<Rational>) -> String {
    e.as_ref().map_or("none".into(), |v| v.to_string())
}

fn log_or_note(r: Result<bool, ClassifyError>, notes: &mut Vec<String>, at: &str) -> bool {
    match r {
        Ok(v) => v,
        Err(e) => {
            notes.push(format!("{at}: {e}; recorded as false"));
            false
        }
    }
}

pub fn schwarz_rational(p: &HypergeomParams) -> SchwarzVerdict {
    let mut notes = Vec::new();
    let log_zero = log_or_note(log_singularity_zero(p), &mut notes, "log_zero");
    let log_infinity = log_or_note(log_singularity_infinity(p), &mut notes, "log_infinity");
    let (rational_basis, witness) = match int_exponents(p) {
        Some((a, b, c)) => {
            let ok = z_clause(a, b, c);
            let w = Witness {
                exponents: Some([a.to_string(), b.to_string(), c.to_string()]),
                failing: if ok { None } else { Some("integer exponents fail the Z-set clauses".into()) },
            };
            (ok, w)
        }
        None => (false, Witness { exponents: None, failing: Some("a, b, c are not all in q^Z".into()) }),
    };
    SchwarzVerdict { params: p.clone(), rational_basis, algebraic_basis: rational_basis, witness, log_zero, log_infinity, notes }
}

pub fn schwarz_algebraic(p: &HypergeomParams) -> SchwarzVerdict {
    let mut v = schwarz_rational(p);
    if v.rational_basis {
        return v;
    }
    let q = &p.q;
    let (ea, eb, ec) = (p.a.exponent(q), p.b.exponent(q), p.c.exponent(q));
    let (Some(a), Some(b), Some(c)) = (&ea, &eb, &ec) else {
        v.witness.failing = Some(format!(
            "not all of a, b, c in q^Q (exponents {}, {}, {})",
            fmt_exp(&ea),
            fmt_exp(&eb),
            fmt_exp(&ec)
        ));
        return v;
    };
    v.witness.exponents = Some([a.to_string(), b.to_string(), c.to_string()]);
    let int = |r: &Rational| r.is_integer();
    if int(c) || int(&(a - b)) {
        v.witness.failing = Some("c or a/b lies in q^Z".into());
        return v;
    }
    if (int(a) && int(&(b - c))) || (int(b) && int(&(a - c))) {
        v.algebraic_basis = true;
        v.witness.failing = None;
    } else {
        v.witness.failing = Some("neither a, b/c nor b, a/c lie in q^Z".into());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn goursat_matches_clauses() {
        for a in -6..=6 {
            for b in -6..=6 {
                for c in -6..=6 {
                    assert_eq!(goursat_rational(a, b, c), z_clause(a, b, c), "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn examples() {
        let q = rat(2);
        let p = HypergeomParams::from_exponents(1, 3, 3, q.clone());
        assert!(schwarz_rational(&p).rational_basis);
        assert!(!log_singularity_zero(&p).unwrap());
        let p = HypergeomParams::from_exponents(0, 0, 1, q.clone());
        assert!(log_singularity_zero(&p).unwrap());
        let p = HypergeomParams::new(QParam::QPower(rat(1)), QParam::QPower(ratio(1, 2)), QParam::QPower(ratio(3, 2)), q.clone())
            .unwrap();
        let v = schwarz_algebraic(&p);
        assert!(v.algebraic_basis && !v.rational_basis);
        let p = HypergeomParams::new(QParam::Value(rat(3)), QParam::Value(rat(5)), QParam::Value(rat(7)), q).unwrap();
        let v = schwarz_algebraic(&p);
        assert!(!v.algebraic_basis && !v.rational_basis);
        assert!(matches!(log_singularity_zero(&p), Err(ClassifyError::HypothesisNotMet(_))));
    }
}
