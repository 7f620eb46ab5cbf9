
use super::ops::delta_matrix;
use super::{QDiffSystem, QModuleError};
use crate::exact::{Poly, RatFun, RatMatrix, Rational};
use crate::qcalc::dq;

/// Rank of the Casorati matrix (u_i(q^j x))_(j, i) over Q(x); equals the dimension of
/// span_Q(u_i) for functions of a q-difference equation.
pub fn casorati_rank(us: &[RatFun], q: &Rational) -> usize {
    let n = us.len();
    if n == 0 {
        return 0;
    }
    let m = RatMatrix::from_fn(n, n, |j, i| us[i].dilate_q(q, j as i64));
    m.rank()
}

/// A cyclic vector m = e v and the companion form of Phi in the basis (m, Phi m, ...).
#[derive(Clone, Debug)]
pub struct CyclicVector {
    /// Coordinates of m in the basis e.
    pub vector: Vec<RatFun>,
    /// Columns are the coordinates of m, Phi(m), ..., Phi^(mu-1)(m).
    pub basis: RatMatrix,
    /// P^(-1) A(x) P(qx): ones below the diagonal, coefficients in the last column.
    pub companion: RatMatrix,
    pub certificate: RatFun,
}

fn phi_column(s: &QDiffSystem, v: &[RatFun]) -> Vec<RatFun> {
    let q = s.q();
    let a = s.matrix();
    let vq: Vec<RatFun> = v.iter().map(|f| f.dilate(q)).collect();
    (0..s.rank())
        .map(|i| {
            let mut acc = RatFun::zero();
            for (j, f) in vq.iter().enumerate() {
                if !f.is_zero() {
                    acc = &acc + &(a.get(i, j) * f);
                }
            }
            acc
        })
        .collect()
}

fn delta_column(s: &QDiffSystem, g1: &RatMatrix, v: &[RatFun]) -> Vec<RatFun> {
    let q = s.q();
    let vq: Vec<RatFun> = v.iter().map(|f| f.dilate(q)).collect();
    (0..s.rank())
        .map(|i| {
            let mut acc = dq(&v[i], q);
            for (j, f) in vq.iter().enumerate() {
                if !f.is_zero() {
                    acc = &acc + &(g1.get(i, j) * f);
                }
            }
            acc
        })
        .collect()
}

fn columns_to_matrix(cols: &[Vec<RatFun>]) -> RatMatrix {
    let n = cols.len();
    RatMatrix::from_fn(n, n, |i, j| cols[j][i].clone())
}

fn krylov(s: &QDiffSystem, v: &[RatFun]) -> RatMatrix {
    let mut cols = vec![v.to_vec()];
    for _ in 1..s.rank() {
        let next = phi_column(s, cols.last().unwrap());
        cols.push(next);
    }
    columns_to_matrix(&cols)
}

fn candidates(mu: usize) -> Vec<Vec<RatFun>> {
    let unit = |i: usize| -> Vec<RatFun> {
        (0..mu).map(|k| if k == i { RatFun::one() } else { RatFun::zero() }).collect()
    };
    let mut out: Vec<Vec<RatFun>> = (0..mu).map(unit).collect();
    let lambdas = [1i64, -1, 2];
    for i in 0..mu {
        for j in 0..mu {
            if i == j {
                continue;
            }
            for s in 0..=2 * mu {
                for &l in &lambdas {
                    let mut v = unit(i);
                    v[j] = RatFun::from_poly(Poly::monomial(Rational::from_integer(l.into()), s));
                    out.push(v);
                }
            }
        }
    }
    for s in 1..=2 * mu {
        out.push((0..mu).map(|i| RatFun::from_poly(Poly::monomial(Rational::from_integer(1.into()), i * s))).collect());
    }
    out
}

/// Deterministic search: e_i, then e_i + l x^s e_j with l in {1, -1, 2}, then sum_i x^(i s) e_i.
pub fn cyclic_vector(s: &QDiffSystem) -> Result<CyclicVector, QModuleError> {
    for v in candidates(s.rank()) {
        let p = krylov(s, &v);
        let det = p.det();
        if det.is_zero() {
            continue;
        }
        let pinv = p.inverse()?;
        let companion = &(&pinv * s.matrix()) * &p.dilate(s.q());
        return Ok(CyclicVector { vector: v, basis: p, companion, certificate: det });
    }
    Err(QModuleError::NoCyclicVector)
}

/// Coefficients a_0..a_(mu-1) of Delta(Delta^(mu-1) m) = sum a_i Delta^i m for m = e v,
/// i.e. the last column of the Delta-matrix in the basis (m, Delta m, ...).
pub fn delta_cyclic_coefficients(s: &QDiffSystem, v: &[RatFun]) -> Result<Vec<RatFun>, QModuleError> {
    let g1 = delta_matrix(s);
    let mut cols = vec![v.to_vec()];
    for _ in 0..s.rank() {
        let next = delta_column(s, &g1, cols.last().unwrap());
        cols.push(next);
    }
    let last = cols.pop().unwrap();
    let p = columns_to_matrix(&cols);
    let pinv = p.inverse().map_err(|_| QModuleError::NoCyclicVector)?;
    Ok((0..s.rank())
        .map(|i| {
            let mut acc = RatFun::zero();
            for (j, f) in last.iter().enumerate() {
                acc = &acc + &(pinv.get(i, j) * f);
            }
            acc
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn sys(q: i64, rows: Vec<Vec<RatFun>>) -> QDiffSystem {
        QDiffSystem::new(rat(q), RatMatrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn casorati_examples() {
        let q = rat(2);
        let x = RatFun::x();
        assert_eq!(casorati_rank(&[RatFun::one(), x.clone()], &q), 2);
        assert_eq!(casorati_rank(&[x.clone(), x.scale(&rat(2))], &q), 1);
    }

    #[test]
    fn cyclic_examples() {
        let c = RatFun::from_i64;
        let s = sys(2, vec![vec![c(1), c(0)], vec![c(0), c(2)]]);
        let cv = cyclic_vector(&s).unwrap();
        assert_eq!(cv.vector, vec![c(1), c(1)]);
        let s = sys(2, vec![vec![c(1), c(0)], vec![c(0), c(1)]]);
        let cv = cyclic_vector(&s).unwrap();
        assert_eq!(cv.vector, vec![c(1), RatFun::x()]);
        assert_eq!(cv.companion.get(1, 0), &RatFun::one());
        assert!(cv.companion.get(0, 0).is_zero());
    }
}
