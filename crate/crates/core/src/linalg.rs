//! Dense exact linear algebra over the rationals. Sizes are tiny (n <= 16),
//! so plain Gauss-Jordan elimination is used throughout.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Rational;

/// Dense `rows x cols` rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn new(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        RationalMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn from_ints(data: &[Vec<i64>]) -> Self {
        Self::new(data.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += a * &other.data[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RationalMatrix {
        let data = (0..self.cols).map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect()).collect();
        RationalMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Reduced row echelon form; returns the matrix (zero rows removed) and
    /// the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..self.cols {
                        let d = &f * &m[r][j];
                        m[i][j] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (RationalMatrix { rows: r, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.data[row][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].recip();
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let d = &f * &m[c][j];
                    m[i][j] -= d;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let aug: Vec<Vec<Rational>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let (r, pivots) = RationalMatrix::new(aug).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        Ok(RationalMatrix::new(r.data.into_iter().map(|row| row[n..].to_vec()).collect()))
    }

    /// Submatrix with the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> RationalMatrix {
        RationalMatrix::new(self.data.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect())
    }

    /// Column `j` of the result is column `perm_src[j]` of `self`.
    pub fn permute_columns_from(&self, perm_src: &[usize]) -> RationalMatrix {
        self.select_columns(perm_src)
    }

    /// Entries as integers, if they all are.
    pub fn to_integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        self.data
            .iter()
            .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Serializable form with integer-or-fraction strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord(pub Vec<Vec<String>>);

impl From<&RationalMatrix> for MatrixRecord {
    fn from(m: &RationalMatrix) -> Self {
        MatrixRecord(m.data.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to zero.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Primitive integer vector with first nonzero entry positive.
pub fn primitive_line(v: &[Rational]) -> Vec<BigInt> {
    let mut p = primitive_integer(v);
    if p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in p.iter_mut() {
            *x = -x.clone();
        }
    }
    p
}

pub fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
