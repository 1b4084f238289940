//! Dense exact linear algebra over `BigRational`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational, RationalVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

/// Dense row-major matrix. Serializes as a list of rows of rational strings.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MatrixRows", try_from = "MatrixRows")]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct MatrixRows(#[serde(with = "rational::serde_str::matrix")] Vec<Vec<Rational>>);

impl From<RationalMatrix> for MatrixRows {
    fn from(m: RationalMatrix) -> Self {
        MatrixRows(m.to_rows())
    }
}

impl TryFrom<MatrixRows> for RationalMatrix {
    type Error = LinAlgError;

    fn try_from(rows: MatrixRows) -> Result<Self, Self::Error> {
        RationalMatrix::from_rows(rows.0)
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinAlgError::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| rational::vec_of(r)).collect()).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> RationalVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M·v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<RationalVector, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|i| rational::dot(self.row(i), v)).collect())
    }

    /// `v·M` (row vector times matrix).
    pub fn vec_mul(&self, v: &[Rational]) -> Result<RationalVector, LinAlgError> {
        if v.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let mut out = rational::zeros(self.cols);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(i)) {
                *o += vi * m;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self, LinAlgError> {
        self.require_square()?;
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    fn require_square(&self) -> Result<(), LinAlgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination on the
    /// row-scaled integer matrix.
    pub fn determinant(&self) -> Result<Rational, LinAlgError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        // Clear denominators row by row; remember the scale.
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(Rational::new(sign * &m[n - 1][n - 1], scale))
    }

    /// Reduced row echelon form; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = &self[(r, j)] * &factor;
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : M·x = 0}`.
    pub fn nullspace(&self) -> Vec<RationalVector> {
        let mut m = self.clone();
        let pivots = m.rref();
        nullspace_from_rref(&m, &pivots)
    }

    pub fn inverse(&self) -> Result<Self, LinAlgError> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinAlgError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Entries of `2·M` when they are all integers.
    pub fn doubled_integer(&self) -> Option<Vec<Vec<BigInt>>> {
        let two = rational::int(2);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        let y = x * &two;
                        y.is_integer().then(|| y.to_integer())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn max_abs(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }
}

fn nullspace_from_rref(m: &RationalMatrix, pivots: &[usize]) -> Vec<RationalVector> {
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = rational::zeros(cols);
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, f)].clone();
            }
            v
        })
        .collect()
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", rational::fmt_vec(self.row(i)))?;
        }
        write!(f, "]")
    }
}

/// Solution set of `M·x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinSolveResult {
    /// Absent when the system is inconsistent.
    pub particular: Option<RationalVector>,
    pub nullspace: Vec<RationalVector>,
}

impl LinSolveResult {
    pub fn is_unique(&self) -> bool {
        self.particular.is_some() && self.nullspace.is_empty()
    }
}

/// Solve `M·x = b` exactly. The nullspace of `M` is reported even when the
/// system is inconsistent.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<LinSolveResult, LinAlgError> {
    if b.len() != m.rows {
        return Err(LinAlgError::DimensionMismatch { expected: m.rows, got: b.len() });
    }
    let n = m.cols;
    let mut aug = RationalMatrix::zeros(m.rows, n + 1);
    for i in 0..m.rows {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref();
    let inconsistent = pivots.last() == Some(&n);
    let coeff_pivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < n).collect();

    let mut coeff = RationalMatrix::zeros(m.rows, n);
    for i in 0..m.rows {
        for j in 0..n {
            coeff[(i, j)] = aug[(i, j)].clone();
        }
    }
    let nullspace = nullspace_from_rref(&coeff, &coeff_pivots);
    let particular = (!inconsistent).then(|| {
        let mut x = rational::zeros(n);
        for (r, &p) in coeff_pivots.iter().enumerate() {
            x[p] = aug[(r, n)].clone();
        }
        x
    });
    Ok(LinSolveResult { particular, nullspace })
}

pub fn determinant(m: &RationalMatrix) -> Result<Rational, LinAlgError> {
    m.determinant()
}

/// Sign of a rational as -1, 0, 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, vec_of};

    #[test]
    fn identity_solve() {
        let m = RationalMatrix::identity(3);
        let b = vec_of(&[1, -2, 5]);
        let r = solve(&m, &b).unwrap();
        assert_eq!(r.particular, Some(b));
        assert!(r.nullspace.is_empty());
    }

    #[test]
    fn underdetermined_solve() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        let r = solve(&m, &vec_of(&[1, 2])).unwrap();
        assert_eq!(r.particular, Some(vec_of(&[1, 0])));
        assert_eq!(r.nullspace, vec![vec_of(&[-1, 1])]);
    }

    #[test]
    fn inconsistent_solve_keeps_nullspace() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        let r = solve(&m, &vec_of(&[1, 2])).unwrap();
        assert_eq!(r.particular, None);
        assert_eq!(r.nullspace.len(), 1);
        assert_eq!(m.mul_vec(&r.nullspace[0]).unwrap(), vec_of(&[0, 0]));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = RationalMatrix::identity(2);
        assert!(matches!(solve(&m, &vec_of(&[1])), Err(LinAlgError::DimensionMismatch { .. })));
    }

    #[test]
    fn determinants() {
        assert_eq!(RationalMatrix::identity(4).determinant().unwrap(), int(1));
        let m = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.determinant().unwrap(), int(-1));
        let h = RationalMatrix::from_rows(vec![vec![int(1), frac(1, 2)], vec![frac(1, 2), int(1)]]).unwrap();
        assert_eq!(h.determinant().unwrap(), frac(3, 4));
        let rect = RationalMatrix::zeros(2, 3);
        assert!(matches!(rect.determinant(), Err(LinAlgError::NotSquare { .. })));
    }

    #[test]
    fn inverse_of_singular_fails() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(LinAlgError::Singular));
    }
}
