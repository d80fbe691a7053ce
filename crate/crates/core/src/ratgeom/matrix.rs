use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{int, lcm_denominators, RVector, Rational};
use crate::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RMatrix { rows, cols, data })
    }

    /// Builds from rows; all rows must share one length. An empty list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "ragged rows: {} vs {}",
                bad.len(),
                cols
            )));
        }
        let n = rows.len();
        RMatrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        RMatrix::new(rows, cols, data.iter().map(|&x| int(x)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| Rational::zero()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, int(1));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> RVector {
        RVector::new(self.row(i).to_vec())
    }

    pub fn col_vector(&self, j: usize) -> RVector {
        RVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RMatrix {
        let mut t = RMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RVector) -> Result<RVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        Ok(RVector::new(
            (0..self.rows)
                .map(|i| RVector::new(self.row(i).to_vec()).dot(v))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &RMatrix) -> Result<RMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} minus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RMatrix::new(self.rows, self.cols, data)
    }

    pub fn scale_rows(&self, factors: &[Rational]) -> RMatrix {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = m.get(i, j) * &factors[i];
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn scale_cols(&self, factors: &[Rational]) -> RMatrix {
        self.transpose().scale_rows(factors).transpose()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        RMatrix::from_rows(rows).map(|m| {
            if self.rows == 0 {
                RMatrix::zeros(0, self.cols + other.cols)
            } else {
                m
            }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RMatrix::new(self.rows + other.rows, self.cols, data)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// Exact rank by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers by the lcm of its denominators, which
/// leaves the rank unchanged.
pub fn rank(m: &RMatrix) -> usize {
    let rows = (0..m.rows())
        .map(|i| {
            let l = lcm_denominators(m.row(i));
            m.row(i)
                .iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    int_rank(rows)
}

/// Rank of an integer matrix by Bareiss elimination.
pub fn int_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn int_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn nullspace(m: &RMatrix) -> Vec<RVector> {
    let mut rows = m.to_rows();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = RVector::zeros(m.cols()).into_entries();
            x[f] = int(1);
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -rows[r][f].clone();
            }
            RVector::new(x)
        })
        .collect()
}

/// One solution of `A X = B`, with free variables set to zero, or `None` when inconsistent.
pub fn solve(a: &RMatrix, b: &RMatrix) -> Result<Option<RMatrix>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    let n = a.cols();
    let mut aug = a.hstack(b)?.to_rows();
    let pivots = rref(&mut aug);
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = RMatrix::zeros(n, b.cols());
    for (r, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, aug[r][n + j].clone());
        }
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::rat;
    use alloc::vec;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RMatrix::identity(3)), 3);
        assert_eq!(rank(&RMatrix::zeros(2, 3)), 0);
        let m = RMatrix::from_ints(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]).unwrap();
        assert_eq!(rank(&m), 2);
        let m = RMatrix::new(2, 2, vec![rat(1, 2), rat(1, 3), rat(3, 2), int(1)]).unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn determinant() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
        ];
        // 2*(3-2) - 0 + 1*(1-3) = 0
        assert_eq!(int_determinant(m), BigInt::zero());
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(int_determinant(m), BigInt::from(-1));
    }

    #[test]
    fn kernel_and_solve() {
        let m = RMatrix::from_ints(2, 3, &[1, 1, 0, 0, 1, 1]).unwrap();
        let k = nullspace(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().is_zero());
        let a = RMatrix::from_ints(2, 2, &[2, 1, 1, 1]).unwrap();
        let b = RMatrix::from_ints(2, 1, &[3, 2]).unwrap();
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(x, RMatrix::from_ints(2, 1, &[1, 1]).unwrap());
        let a = RMatrix::from_ints(2, 1, &[1, 1]).unwrap();
        let b = RMatrix::from_ints(2, 1, &[1, 2]).unwrap();
        assert!(solve(&a, &b).unwrap().is_none());
    }
}
