//! Dense exact-rational vectors and matrices.
//!
//! Elimination routines (determinant, rank, inverse, null vectors) live in
//! [`elim`]; the plain-text matrix format lives in [`text`].

mod elim;
mod text;

use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use elim::{det, inverse, null_vector, rank};
pub use text::{format_rational, parse_matrix, parse_rational, parse_vector};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `numer / denom`.
///
/// Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Sign pattern of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SignProfile {
    pub has_positive: bool,
    pub has_negative: bool,
    pub has_zero: bool,
}

impl SignProfile {
    pub fn of(entries: &[Rational]) -> Self {
        let mut profile = SignProfile::default();
        for x in entries {
            if x.is_positive() {
                profile.has_positive = true;
            } else if x.is_negative() {
                profile.has_negative = true;
            } else {
                profile.has_zero = true;
            }
        }
        profile
    }

    /// Both a positive and a negative entry.
    pub fn mixed(&self) -> bool {
        self.has_positive && self.has_negative
    }

    pub fn nonnegative(&self) -> bool {
        !self.has_negative
    }

    pub fn nonpositive(&self) -> bool {
        !self.has_positive
    }

    /// Every entry strictly positive (false for the empty vector).
    pub fn positive(&self) -> bool {
        self.has_positive && !self.has_negative && !self.has_zero
    }
}

pub fn sign_profile(v: &RatVector) -> SignProfile {
    SignProfile::of(v.entries())
}

/// Dense rational column vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        RatVector(entries.iter().map(|&x| int(x)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        RatVector(vec![Rational::zero(); n])
    }

    /// The all-ones vector `e`.
    pub fn ones(n: usize) -> Self {
        RatVector(vec![Rational::one(); n])
    }

    /// The standard basis vector `e_i` of length `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn sign_profile(&self) -> SignProfile {
        SignProfile::of(&self.0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|x| !x.is_positive())
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|x| x.is_positive())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &RatVector) -> Result<Rational> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "dot product of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(dot(&self.0, &other.0))
    }

    pub fn add(&self, other: &RatVector) -> Result<RatVector> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "sum of vectors of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(RatVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn scale(&self, c: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Smallest entry, `None` for the empty vector.
    pub fn min(&self) -> Option<&Rational> {
        self.0.iter().min()
    }

    /// Applies a coordinate permutation: `result[i] = self[order[i]]`.
    pub fn permuted(&self, order: &[usize]) -> RatVector {
        RatVector(order.iter().map(|&k| self.0[k].clone()).collect())
    }

    /// Concatenates `self` and `tail`.
    pub fn extend(&self, tail: &RatVector) -> RatVector {
        let mut entries = self.0.clone();
        entries.extend(tail.0.iter().cloned());
        RatVector(entries)
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Neg for &RatVector {
    type Output = RatVector;

    fn neg(self) -> RatVector {
        RatVector(self.0.iter().map(|x| -x).collect())
    }
}

impl From<Vec<Rational>> for RatVector {
    fn from(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// The all-ones `rows x cols` matrix.
    pub fn ones(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::one(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    ncols
                )));
            }
            data.extend(row);
        }
        Ok(RatMatrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Integer matrix from row slices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix literal")
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[RatVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {} has length {}, expected {}",
                    j + 1,
                    c.len(),
                    rows
                )));
            }
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        Ok(m)
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Permutation matrix `P` with `(P x)[i] = x[order[i]]`.
    pub fn permutation(order: &[usize]) -> Self {
        let n = order.len();
        let mut m = Self::zeros(n, n);
        for (i, &k) in order.iter().enumerate() {
            m.set(i, k, Rational::one());
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> RatVector {
        RatVector(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> RatVector {
        RatVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    /// Row-major flattening into a vector of length `rows * cols`.
    pub fn vectorize(&self) -> RatVector {
        RatVector(self.data.clone())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `A v`.
    pub fn apply(&self, v: &RatVector) -> Result<RatVector> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(RatVector(
            (0..self.rows)
                .map(|i| dot(self.row(i), v.entries()))
                .collect(),
        ))
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn is_nonpositive(&self) -> bool {
        self.data.iter().all(|x| !x.is_positive())
    }

    pub fn is_positive(&self) -> bool {
        !self.data.is_empty() && self.data.iter().all(|x| x.is_positive())
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// True when every entry above the diagonal is zero.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Submatrix with column `j` removed.
    pub fn delete_column(&self, j: usize) -> RatMatrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select_columns(&keep)
    }

    pub fn select_columns(&self, columns: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (jj, &j) in columns.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> RatMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        RatMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// First `count` rows.
    pub fn top_rows(&self, count: usize) -> RatMatrix {
        let rows: Vec<usize> = (0..count).collect();
        self.select_rows(&rows)
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn det(&self) -> Result<Rational> {
        det(self)
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        inverse(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{what} must be square, got {}x{}",
                self.rows, self.cols
            )))
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;

    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}
