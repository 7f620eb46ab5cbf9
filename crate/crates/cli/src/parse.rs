//! Expression grammar: rational literals, `x`, `+ - * / ^ ( )`, integer exponents only.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use qcurv::classify::QParam;
use qcurv::exact::{ExactError, RatFun, RatMatrix, Rational};
use qcurv::solver::ScaledRatFun;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("domain error: {0}")]
    Domain(#[from] ExactError),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, expected: expected.into() })
    }

    fn expr(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = if self.eat(b'(') {
            let e = self.signed_int()?;
            if !self.eat(b')') {
                return self.err("')'");
            }
            e
        } else {
            self.signed_int()?
        };
        Ok(base.pow(e)?)
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return self.err("integer exponent");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        let v: i64 = match txt.parse() {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.err("exponent fitting in 64 bits");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<RatFun, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(RatFun::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                let n: BigInt = txt.parse().expect("digits");
                Ok(RatFun::constant(Rational::from_integer(n)))
            }
            _ => self.err("number, 'x' or '('"),
        }
    }
}

pub fn parse_ratfun(s: &str) -> Result<RatFun, ParseError> {
    let mut p = Parser::new(s);
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("end of input");
    }
    Ok(v)
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let f = parse_ratfun(s)?;
    f.as_constant().ok_or(ParseError::Syntax { pos: 0, expected: "a rational constant".into() })
}

/// `q`, `q^k`, `q^(e/d)` or a rational literal.
pub fn parse_qparam(s: &str) -> Result<QParam, ParseError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(rest) = t.strip_prefix('q') else {
        return Ok(QParam::Value(parse_rational(&t)?));
    };
    if rest.is_empty() {
        return Ok(QParam::QPower(Rational::one()));
    }
    let Some(e) = rest.strip_prefix('^') else {
        return Err(ParseError::Syntax { pos: 1, expected: "'^' after q".into() });
    };
    let e = e.strip_prefix('(').and_then(|v| v.strip_suffix(')')).unwrap_or(e);
    parse_rational(e).map(QParam::QPower).map_err(|err| match err {
        ParseError::Syntax { pos, expected } => ParseError::Syntax { pos: pos + 2, expected },
        other => other,
    })
}

/// `q^(e/d)` as a pure power of q, `q^(e/d)*expr`, or an expression in x.
pub fn parse_scaled(s: &str) -> Result<ScaledRatFun, ParseError> {
    let t = s.trim();
    if t.starts_with('q') {
        let (head, tail) = match t.find('*') {
            Some(i) if t[..i].matches('(').count() == t[..i].matches(')').count() => (&t[..i], Some(&t[i + 1..])),
            _ => (t, None),
        };
        let e = match parse_qparam(head)? {
            QParam::QPower(e) => e,
            QParam::Value(_) => unreachable!("starts with q"),
        };
        let f = match tail {
            Some(rest) => parse_ratfun(rest)?,
            None => RatFun::one(),
        };
        return Ok(ScaledRatFun { qexp: e, f });
    }
    Ok(ScaledRatFun::plain(parse_ratfun(t)?))
}

/// Matrix entry as written in JSON: an expression string or a bare number.
#[derive(Debug, Clone, serde::Deserialize, serde::Serialize)]
#[serde(untagged)]
pub enum Entry {
    Expr(String),
    Number(serde_json::Number),
}

impl Entry {
    pub fn text(&self) -> String {
        match self {
            Entry::Expr(s) => s.clone(),
            Entry::Number(n) => n.to_string(),
        }
    }
}

/// JSON array of arrays of expression strings (integers may be bare numbers).
pub fn parse_matrix(json: &str) -> anyhow::Result<RatMatrix> {
    let rows: Vec<Vec<Entry>> = serde_json::from_str(json)?;
    let parsed: Result<Vec<Vec<RatFun>>, ParseError> =
        rows.iter().map(|r| r.iter().map(|e| parse_ratfun(&e.text())).collect()).collect();
    Ok(RatMatrix::from_rows(parsed?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcurv::exact::{rat, ratio, Poly};

    #[test]
    fn examples() {
        let f = parse_ratfun("(1+x)/(1-2*x)").unwrap();
        assert_eq!(f.num(), &Poly::new(vec![ratio(-1, 2), ratio(-1, 2)]));
        assert_eq!(f.den(), &Poly::new(vec![ratio(-1, 2), rat(1)]));
        assert_eq!(parse_ratfun("x^3 - 7").unwrap(), RatFun::from_poly(Poly::from_i64(&[-7, 0, 0, 1])));
        assert_eq!(parse_ratfun("1/(x-x)"), Err(ParseError::Domain(ExactError::ZeroDenominator)));
        assert!(matches!(parse_ratfun("x +* 2"), Err(ParseError::Syntax { pos: 3, .. })));
        assert_eq!(parse_ratfun("x^-1").unwrap(), RatFun::x().inv().unwrap());
    }

    #[test]
    fn numeric_entries() {
        assert_eq!(parse_matrix("[[1,3],[0,1]]").unwrap(), parse_matrix(r#"[["1","3"],["0","1"]]"#).unwrap());
        assert!(parse_matrix("[[1.5]]").is_err());
    }

    #[test]
    fn qparams() {
        assert_eq!(parse_qparam("q^(1/2)").unwrap(), QParam::QPower(ratio(1, 2)));
        assert_eq!(parse_qparam("q").unwrap(), QParam::QPower(rat(1)));
        assert_eq!(parse_qparam("q^-3").unwrap(), QParam::QPower(rat(-3)));
        assert_eq!(parse_qparam("3/4").unwrap(), QParam::Value(ratio(3, 4)));
        let s = parse_scaled("q^(1/2)*(1+x)").unwrap();
        assert_eq!(s.qexp, ratio(1, 2));
    }
}
