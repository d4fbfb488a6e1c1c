//! Decision procedures for the matrix classes used throughout the crate.
//!
//! * semipositive: some `x >= 0` with `A x > 0`;
//! * minimally semipositive (MSP): semipositive, and no column-deleted
//!   submatrix is semipositive;
//! * row positive: `A >= 0` with no zero row;
//! * inverse nonnegative: `A^{-1}` exists and is entrywise nonnegative;
//! * monomial: `A >= 0` with exactly one nonzero entry per row and column.
//!
//! Semipositivity is decided by the LP `x >= 0, A x >= e`, which is
//! equivalent to the strict system after scaling `x`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{equality_feasible_nonneg, feasible_nonneg};
use crate::ratmat::{RatMatrix, RatVector, Rational};

/// A strictly positive `x` with `A x > 0`, if `A` is semipositive.
///
/// The LP gives `x >= 0` with `A x >= e`. Shifting by `delta * e` with
/// `delta = 1 / (2 (1 + S))`, `S` the largest absolute row sum of `A`, keeps
/// every entry of `A x` above `1/2`.
pub fn semipositivity_vector(a: &RatMatrix) -> Option<RatVector> {
    if a.rows() == 0 || a.cols() == 0 {
        return None;
    }
    let x = feasible_nonneg(a, &RatVector::ones(a.rows()))
        .expect("dimensions agree by construction")
        .into_witness()?;
    let s = max_abs_row_sum(a);
    let delta = Rational::one() / (Rational::from_integer(2.into()) * (Rational::one() + s));
    let shifted = x
        .add(&RatVector::ones(a.cols()).scale(&delta))
        .expect("same length");
    let image = a.apply(&shifted).expect("same length");
    assert!(
        shifted.is_positive() && image.is_positive(),
        "perturbed semipositivity vector failed re-verification"
    );
    Some(shifted)
}

pub fn is_semipositive(a: &RatMatrix) -> bool {
    semipositivity_vector(a).is_some()
}

fn max_abs_row_sum(a: &RatMatrix) -> Rational {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|x| x.abs()).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// A nonnegative `N` with `N A = I`, for `A` with at least as many rows as
/// columns. Row `j` of `N` solves `A^T y = e_j, y >= 0`.
pub fn nonneg_left_inverse(a: &RatMatrix) -> Result<Option<RatMatrix>> {
    if a.rows() < a.cols() {
        return Err(Error::Dimension(format!(
            "left inverse needs rows >= cols, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let at = a.transpose();
    let mut rows = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let target = RatVector::basis(a.cols(), j);
        match equality_feasible_nonneg(&at, &target)?.into_witness() {
            Some(y) => rows.push(y.into_entries()),
            None => return Ok(None),
        }
    }
    let n = RatMatrix::from_rows(rows)?;
    if !n.is_nonnegative() || !n.matmul(a)?.is_identity() {
        return Err(Error::Verification("left inverse failed N A = I".into()));
    }
    Ok(Some(n))
}

pub fn has_nonneg_left_inverse(a: &RatMatrix) -> Result<bool> {
    Ok(nonneg_left_inverse(a)?.is_some())
}

/// MSP test. Uses "semipositive with a nonnegative left inverse" when
/// `rows >= cols`, and the column-deletion definition otherwise.
pub fn is_minimally_semipositive(a: &RatMatrix) -> bool {
    if a.rows() >= a.cols() {
        is_semipositive(a)
            && nonneg_left_inverse(a)
                .expect("rows >= cols checked")
                .is_some()
    } else {
        msp_by_deletion(a)
    }
}

/// Definitional MSP check: `A` is semipositive and deleting any single
/// column leaves a matrix that is not. Deleting more columns only shrinks the
/// set of candidate witnesses, so single deletions suffice. The zero-column
/// matrix is not semipositive.
pub fn msp_by_deletion(a: &RatMatrix) -> bool {
    is_semipositive(a) && (0..a.cols()).all(|j| !is_semipositive(&a.delete_column(j)))
}

pub fn is_row_positive(a: &RatMatrix) -> bool {
    a.is_nonnegative() && (0..a.rows()).all(|i| !a.is_zero_row(i))
}

pub fn is_monomial(a: &RatMatrix) -> Result<bool> {
    a.require_square("monomial test operand")?;
    if !a.is_nonnegative() {
        return Ok(false);
    }
    let n = a.rows();
    let rows_ok = (0..n).all(|i| a.row(i).iter().filter(|x| !x.is_zero()).count() == 1);
    let cols_ok = (0..n).all(|j| (0..n).filter(|&i| !a.get(i, j).is_zero()).count() == 1);
    Ok(rows_ok && cols_ok)
}

/// The inverse of `A` when it exists and is entrywise nonnegative. Returns
/// `None` for singular or non-square input.
pub fn nonneg_inverse(a: &RatMatrix) -> Option<RatMatrix> {
    if !a.is_square() || a.rows() == 0 {
        return None;
    }
    a.inverse().ok().filter(RatMatrix::is_nonnegative)
}

pub fn is_inverse_nonnegative(a: &RatMatrix) -> bool {
    nonneg_inverse(a).is_some()
}

/// Every class verdict for one matrix, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub rows: usize,
    pub cols: usize,
    pub nonnegative: bool,
    pub positive: bool,
    pub row_positive: bool,
    /// Square input only.
    pub monomial: Option<bool>,
    /// Square input only.
    pub inverse_nonnegative: Option<bool>,
    pub semipositive: bool,
    pub minimally_semipositive: bool,
    pub sp_witness: Option<RatVector>,
    pub inverse: Option<RatMatrix>,
    pub left_inverse: Option<RatMatrix>,
}

impl ClassReport {
    /// Re-checks every witness against its definition.
    pub fn verify(&self, a: &RatMatrix) -> bool {
        let sp_ok = match &self.sp_witness {
            Some(x) => x.is_positive() && a.apply(x).is_ok_and(|y| y.is_positive()),
            None => !self.semipositive,
        };
        let inv_ok = self.inverse.as_ref().is_none_or(|inv| {
            a.matmul(inv).is_ok_and(|p| p.is_identity())
                && inv.matmul(a).is_ok_and(|p| p.is_identity())
        });
        let left_ok = self
            .left_inverse
            .as_ref()
            .is_none_or(|n| n.is_nonnegative() && n.matmul(a).is_ok_and(|p| p.is_identity()));
        let implications = (!self.minimally_semipositive || self.semipositive)
            && (self.monomial != Some(true)
                || (self.row_positive && self.inverse_nonnegative == Some(true)));
        sp_ok && inv_ok && left_ok && implications
    }
}

pub fn classify_all(a: &RatMatrix) -> ClassReport {
    let sp_witness = semipositivity_vector(a);
    let semipositive = sp_witness.is_some();
    let square = a.is_square();
    let inverse = if square { a.inverse().ok() } else { None };
    let inverse_nonnegative =
        square.then(|| inverse.as_ref().is_some_and(RatMatrix::is_nonnegative));
    let left_inverse = if a.rows() >= a.cols() {
        nonneg_left_inverse(a).expect("rows >= cols checked")
    } else {
        None
    };
    let minimally_semipositive = if a.rows() >= a.cols() {
        semipositive && left_inverse.is_some()
    } else {
        msp_by_deletion(a)
    };
    let report = ClassReport {
        rows: a.rows(),
        cols: a.cols(),
        nonnegative: a.is_nonnegative(),
        positive: a.is_positive(),
        row_positive: is_row_positive(a),
        monomial: square.then(|| is_monomial(a).expect("square")),
        inverse_nonnegative,
        semipositive,
        minimally_semipositive,
        sp_witness,
        inverse,
        left_inverse,
    };
    debug_assert!(report.verify(a));
    report
}
