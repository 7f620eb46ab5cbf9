use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::linalg::QMatrix;
use super::ratfun::RatFun;
use super::rational::Rational;
use super::ExactError;

/// Dense matrix over Q(x).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<RatFun>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![RatFun::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix::from_fn(n, n, |i, j| if i == j { RatFun::one() } else { RatFun::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> RatFun) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Shape("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_const(m: &QMatrix) -> Self {
        RatMatrix::from_fn(m.rows, m.cols, |i, j| RatFun::constant(m.get(i, j).clone()))
    }

    pub fn diag(entries: Vec<RatFun>) -> Self {
        let n = entries.len();
        RatMatrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { RatFun::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFun) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<RatFun> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<RatFun>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|f| f.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    pub fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &RatFun) -> RatMatrix {
        self.map(|a| a * c)
    }

    pub fn dilate(&self, c: &Rational) -> RatMatrix {
        self.map(|a| a.dilate(c))
    }

    pub fn dilate_q(&self, q: &Rational, k: i64) -> RatMatrix {
        self.map(|a| a.dilate_q(q, k))
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn kron(&self, o: &RatMatrix) -> RatMatrix {
        RatMatrix::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols) * o.get(i % o.rows, j % o.cols)
        })
    }

    pub fn det(&self) -> RatFun {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = RatFun::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return RatFun::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = RatMatrix::identity(n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(ExactError::Singular)?;
            a.swap(p, c);
            inv.swap(p, c);
            let pinv = a[c][c].inv()?;
            for k in 0..n {
                a[c][k] = &a[c][k] * &pinv;
                inv[c][k] = &inv[c][k] * &pinv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] = &a[r][k] - &t;
                    let t = &f * &inv[c][k];
                    inv[r][k] = &inv[r][k] - &t;
                }
            }
        }
        RatMatrix::from_rows(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv().unwrap();
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] * &inv;
                for k in c..self.cols {
                    let t = &f * &a[r][k];
                    a[i][k] = &a[i][k] - &t;
                }
            }
            r += 1;
        }
        r
    }

    pub fn pow(&self, e: u32) -> RatMatrix {
        let mut r = RatMatrix::identity(self.rows);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Value at x = 0 when every entry is regular there.
    pub fn value_at_zero(&self) -> Option<QMatrix> {
        let vals: Option<Vec<Rational>> = self.data.iter().map(|f| f.value_at_zero()).collect();
        let vals = vals?;
        Some(QMatrix::from_fn(self.rows, self.cols, |i, j| vals[i * self.cols + j].clone()))
    }

    /// Minimum x-adic order over entries; `None` for the zero matrix.
    pub fn order_at_zero(&self) -> Option<i64> {
        self.data.iter().filter_map(|f| f.order_at_zero()).min()
    }

    /// Taylor coefficient matrices A_0..A_{n-1}; requires regularity at 0.
    pub fn taylor(&self, n: usize) -> Option<Vec<QMatrix>> {
        let series: Option<Vec<Vec<Rational>>> = self.data.iter().map(|f| f.taylor(n)).collect();
        let series = series?;
        Some(
            (0..n)
                .map(|k| QMatrix::from_fn(self.rows, self.cols, |i, j| series[i * self.cols + j][k].clone()))
                .collect(),
        )
    }

    pub fn gauss_valuation(&self, p: u64) -> Option<i64> {
        self.data.iter().filter_map(|f| f.gauss_valuation(p)).min()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_rows().iter().map(|r| r.iter().map(|f| f.to_string()).collect()).collect()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|s| format!("\"{}\"", s)).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = RatMatrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = RatFun::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.data[i * o.cols + j] = acc;
            }
        }
        out
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, o: &RatMatrix) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, o: &RatMatrix) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.map(|a| -a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Poly;

    fn c(v: i64) -> RatFun {
        RatFun::from_i64(v)
    }

    #[test]
    fn inverse_roundtrip() {
        let x = RatFun::x();
        let a = RatMatrix::from_rows(vec![vec![c(1), x.clone()], vec![c(0), &x + &c(1)]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.det(), RatFun::from_poly(Poly::from_i64(&[1, 1])));
    }

    #[test]
    fn rank_over_function_field() {
        let x = RatFun::x();
        let a = RatMatrix::from_rows(vec![vec![c(1), x.clone()], vec![x.clone(), &x * &x]]).unwrap();
        assert_eq!(a.rank(), 1);
        assert!(a.inverse().is_err());
    }
}
