//! Exact rational scalars and dense matrices.
//!
//! Determinants go through fraction-free (Bareiss) elimination over big
//! integers: each row is first cleared of denominators, so intermediate
//! values stay integral and their size grows only linearly with the
//! elimination step. Linear solves use plain rational elimination with the
//! first nonzero pivot in column order; the arithmetic is exact, so pivot
//! choice only affects speed, never the answer.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always held in canonical form
/// (positive denominator, reduced).
pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| int(rows[i][j]))
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

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Copy of the matrix with row `row` and column `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.select(&rows, &cols)
    }

    /// Submatrix picking the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
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

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "cannot subtract {}x{} from {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        check_blocks(a, b, c, d)?;
        let (p, q) = (a.rows, d.rows);
        Ok(Self::from_fn(p + q, p + q, |i, j| match (i < p, j < p) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - p)].clone(),
            (false, true) => c[(i - p, j)].clone(),
            (false, false) => d[(i - p, j - p)].clone(),
        }))
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn check_blocks(a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix, d: &ExactMatrix) -> Result<()> {
    if !a.is_square() || !d.is_square() {
        return Err(Error::Dimension("diagonal blocks must be square".into()));
    }
    let (p, q) = (a.rows, d.rows);
    if (b.rows, b.cols) != (p, q) || (c.rows, c.cols) != (q, p) {
        return Err(Error::Dimension(format!(
            "off-diagonal blocks {}x{} and {}x{} do not conform to {p}+{q}",
            b.rows, b.cols, c.rows, c.cols
        )));
    }
    Ok(())
}

/// Exact determinant by fraction-free elimination.
pub fn det_exact(m: &ExactMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    // Clear denominators row by row: det(M) = det(scaled) / prod(scales).
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let lcm = m
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect(),
        );
        scale *= lcm;
    }
    let det = bareiss_det(rows);
    Ok(Rational::new(det, scale))
}

/// Bareiss elimination on an integer matrix. Every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut v = &row[j] * pivot;
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = top[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Solves `a * x = b` exactly.
pub fn solve_exact(a: &ExactMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    if b.len() != a.rows {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows
        )));
    }
    let rhs = ExactMatrix::new(b.len(), 1, b.to_vec())?;
    let x = solve_many(a, &rhs)?;
    Ok(x.data)
}

/// Solves `a * X = b` for every column of `b` with a single elimination.
pub fn solve_many(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "solve with non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    if b.rows != a.rows {
        return Err(Error::Dimension(format!(
            "right-hand side has {} rows for {} equations",
            b.rows, a.rows
        )));
    }
    let n = a.rows;
    let k = b.cols;
    let mut lhs: Vec<Vec<Rational>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut rhs: Vec<Vec<Rational>> = (0..n).map(|i| b.row(i).to_vec()).collect();

    for col in 0..n {
        let p = (col..n)
            .find(|&r| !lhs[r][col].is_zero())
            .ok_or(Error::Singular)?;
        lhs.swap(p, col);
        rhs.swap(p, col);
        let inv = lhs[col][col].recip();
        for j in col..n {
            lhs[col][j] *= &inv;
        }
        for j in 0..k {
            rhs[col][j] *= &inv;
        }
        for r in 0..n {
            if r == col || lhs[r][col].is_zero() {
                continue;
            }
            let factor = lhs[r][col].clone();
            for j in col..n {
                if !lhs[col][j].is_zero() {
                    let d = &factor * &lhs[col][j];
                    lhs[r][j] -= d;
                }
            }
            for j in 0..k {
                if !rhs[col][j].is_zero() {
                    let d = &factor * &rhs[col][j];
                    rhs[r][j] -= d;
                }
            }
        }
    }
    ExactMatrix::new(n, k, rhs.into_iter().flatten().collect())
}

pub fn inverse_exact(a: &ExactMatrix) -> Result<ExactMatrix> {
    solve_many(a, &ExactMatrix::identity(a.rows))
}

/// Determinant of `[[a, b], [c, d]]` as `det(d) * det(a - b d^-1 c)`.
pub fn schur_det(
    a: &ExactMatrix,
    b: &ExactMatrix,
    c: &ExactMatrix,
    d: &ExactMatrix,
) -> Result<Rational> {
    check_blocks(a, b, c, d)?;
    let det_d = det_exact(d)?;
    if det_d.is_zero() {
        return Err(Error::Singular);
    }
    let d_inv_c = solve_many(d, c)?;
    let complement = a.sub(&b.mul(&d_inv_c)?)?;
    Ok(det_d * det_exact(&complement)?)
}

/// Renders a rational as `p/q`, or as an integer when `q = 1`.
pub fn render(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<BigInt>().ok()?,
            q.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

pub(crate) fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}
