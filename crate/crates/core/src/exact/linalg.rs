//! Dense linear algebra over Q.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::poly::Poly;
use super::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let data: Vec<Rational> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c);
        QMatrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn rank(&self) -> usize {
        rref(&self.to_rows(), self.cols).1.len()
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &piv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.rows;
        let aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let (red, piv) = rref(&aug, 2 * n);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| red[i][n + j].clone()))
    }

    /// Basis of {v : self * v = 0}, as column vectors.
    pub fn right_kernel(&self) -> Vec<Vec<Rational>> {
        nullspace(&self.to_rows(), self.cols)
    }

    /// Basis of {w : w * self = 0}, as row vectors.
    pub fn left_kernel(&self) -> Vec<Vec<Rational>> {
        self.transpose().right_kernel()
    }

    /// Characteristic polynomial det(t I - A) via Faddeev-LeVerrier.
    pub fn char_poly(&self) -> Poly {
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = QMatrix::zero(n, n);
        let id = QMatrix::identity(n);
        for k in 1..=n {
            m = &(self * &m) + &id.scale(&coeffs[n - k + 1]);
            let am = self * &m;
            let tr: Rational = (0..n).map(|i| am.get(i, i).clone()).fold(Rational::zero(), |a, b| a + b);
            coeffs[n - k] = -tr / Rational::from_integer((k as i64).into());
        }
        Poly::new(coeffs)
    }

    pub fn kron(&self, o: &QMatrix) -> QMatrix {
        QMatrix::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols) * o.get(i % o.rows, j % o.cols)
        })
    }

    pub fn vec_mul(v: &[Rational], m: &QMatrix) -> Vec<Rational> {
        (0..m.cols)
            .map(|j| {
                let mut acc = Rational::zero();
                for (i, a) in v.iter().enumerate() {
                    if !a.is_zero() {
                        acc += a * m.get(i, j);
                    }
                }
                acc
            })
            .collect()
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = QMatrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

/// Reduced row echelon form; returns the reduced nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for k in c..ncols {
            let t = &a[r][k] * &inv;
            a[r][k] = t;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..ncols {
                if a[r][k].is_zero() {
                    continue;
                }
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (red, piv) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in piv.iter().enumerate() {
            v[pc] = -red[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Solves M x = b; `None` when inconsistent. Returns one particular solution.
pub fn solve(rows: &[Vec<Rational>], ncols: usize, b: &[Rational]) -> Option<Vec<Rational>> {
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, piv) = rref(&aug, ncols + 1);
    if piv.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &pc) in piv.iter().enumerate() {
        x[pc] = red[r][ncols].clone();
    }
    Some(x)
}
