//! Constructive witnesses: nonnegative invertible matrices mapping one
//! vector onto another, and mixed-sign vectors with nonnegative image.
//!
//! Each builder normalizes its input with explicit coordinate permutations,
//! runs a fixed row/column recipe on the normalized vectors, maps the result
//! back, and re-checks the defining properties before returning.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratmat::{RatMatrix, RatVector, Rational};

/// Rule used for the first row of `build_np`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FirstRowCase {
    /// `w_1 > 0`
    A,
    /// `w_1 < 0`
    B,
}

/// Rule used for a middle row, keyed by the signs of `(w_i, v_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MiddleRowCase {
    /// `w_i > 0, v_i > 0`
    A,
    /// `w_i > 0, v_i < 0`
    B,
    /// `w_i > 0, v_i = 0`
    C,
    /// `w_i < 0, v_i > 0`
    D,
    /// `w_i < 0, v_i < 0`
    E,
    /// `w_i < 0, v_i = 0`
    F,
    /// `w_i = 0, v_i > 0`
    G,
    /// `w_i = 0, v_i < 0`
    H,
    /// `w_i = 0, v_i = 0`
    I,
}

impl MiddleRowCase {
    pub const ALL: [MiddleRowCase; 9] = [
        MiddleRowCase::A,
        MiddleRowCase::B,
        MiddleRowCase::C,
        MiddleRowCase::D,
        MiddleRowCase::E,
        MiddleRowCase::F,
        MiddleRowCase::G,
        MiddleRowCase::H,
        MiddleRowCase::I,
    ];
}

/// Rule used for the last row, keyed by the signs of `w_n` and `w_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LastRowCase {
    /// `w_n > 0, w_1 < 0`
    A,
    /// `w_n > 0, w_1 > 0`
    B,
    /// `w_n < 0, w_1 < 0`
    C,
    /// `w_n < 0, w_1 > 0`
    D,
    /// `w_n = 0`
    E,
}

impl LastRowCase {
    pub const ALL: [LastRowCase; 5] = [
        LastRowCase::A,
        LastRowCase::B,
        LastRowCase::C,
        LastRowCase::D,
        LastRowCase::E,
    ];
}

macro_rules! lowercase_display {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", format!("{:?}", self).to_lowercase())
            }
        }
    )*};
}
lowercase_display!(FirstRowCase, MiddleRowCase, LastRowCase);

/// Which rule produced each row of a `build_np` result, plus the
/// permutations that normalized the inputs. Row `i` of the trace refers to
/// row `i` of the normalized matrix `B'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpCaseTrace {
    pub first: FirstRowCase,
    pub middle: Vec<MiddleRowCase>,
    pub last: LastRowCase,
    /// `(P v)[i] = v[v_order[i]]`; puts a positive entry first and a negative
    /// entry last.
    pub v_order: Vec<usize>,
    /// `(Q w)[i] = w[w_order[i]]`; puts a nonzero entry first.
    pub w_order: Vec<usize>,
}

/// Result of [`build_np`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpBuild {
    pub matrix: RatMatrix,
    pub trace: NpCaseTrace,
}

/// Result of [`build_pos`]. With `P = permutation(order)`, the matrix
/// `P B P^T` is lower triangular with a nonzero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosBuild {
    pub matrix: RatMatrix,
    pub order: Vec<usize>,
}

impl PosBuild {
    /// `P B P^T`, the lower-triangular form.
    pub fn normalized(&self) -> RatMatrix {
        let p = RatMatrix::permutation(&self.order);
        p.matmul(&self.matrix)
            .and_then(|pb| pb.matmul(&p.transpose()))
            .expect("square permutation product")
    }
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

/// Checks `B >= 0`, `det B != 0` and `B v = w`.
fn verify_invertible_map(b: &RatMatrix, v: &RatVector, w: &RatVector) -> Result<()> {
    if !b.is_nonnegative() {
        return Err(Error::Verification(
            "constructed B has a negative entry".into(),
        ));
    }
    if b.det()?.is_zero() {
        return Err(Error::Verification("constructed B is singular".into()));
    }
    if &b.apply(v)? != w {
        return Err(Error::Verification(
            "constructed B does not map v to w".into(),
        ));
    }
    Ok(())
}

/// Nonnegative invertible `B` with `B v = w`, for `v` with both a positive
/// and a negative entry and `w != 0`.
///
/// `v` is permuted so its first entry is positive and its last negative; `w`
/// is permuted so its first entry is nonzero. Rows of `B'` are then built
/// one at a time:
///
/// * first row: `w_1 / v_1` in column 1 if `w_1 > 0`, else `w_1 / v_n` in
///   column n;
/// * rows `1 < i < n`: a nonzero diagonal entry in column `i` plus at most one
///   entry in column 1 or n, chosen from the sign pair `(w_i, v_i)`;
/// * last row: a combination of columns 1 and n chosen from the signs of
///   `w_n` and `w_1`.
///
/// Columns `2..n-1` are nonzero only on the diagonal and rows 1 and n use
/// independent patterns in columns 1 and n, so `B'` is invertible. The result
/// is `B = Q^T B' P`.
pub fn build_np(v: &RatVector, w: &RatVector) -> Result<NpBuild> {
    let n = v.len();
    if w.len() != n {
        return Err(Error::Dimension(format!(
            "v has length {n} but w has length {}",
            w.len()
        )));
    }
    if n < 2 || !v.sign_profile().mixed() {
        return Err(Error::InvalidInput(
            "v must contain both a positive and a negative entry".into(),
        ));
    }
    if w.is_zero() {
        return Err(Error::InvalidInput("w must be nonzero".into()));
    }

    let mut v_order: Vec<usize> = (0..n).collect();
    let pos = (0..n).find(|&i| v[i].is_positive()).expect("mixed");
    v_order.swap(0, pos);
    let neg = (0..n)
        .rev()
        .find(|&i| v[v_order[i]].is_negative())
        .expect("mixed");
    v_order.swap(n - 1, neg);

    let mut w_order: Vec<usize> = (0..n).collect();
    let nz = (0..n).find(|&i| !w[i].is_zero()).expect("nonzero");
    w_order.swap(0, nz);

    let vp = v.permuted(&v_order);
    let wp = w.permuted(&w_order);
    let (core, first, middle, last) = np_rows(&vp, &wp);

    // B = Q^T B' P: row w_order[i] of B is row i of B', and column v_order[j]
    // of B is column j of B'.
    let mut b = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b.set(w_order[i], v_order[j], core.get(i, j).clone());
        }
    }
    verify_invertible_map(&b, v, w)?;
    Ok(NpBuild {
        matrix: b,
        trace: NpCaseTrace {
            first,
            middle,
            last,
            v_order,
            w_order,
        },
    })
}

/// Row recipe on normalized input: `v[0] > 0`, `v[n-1] < 0`, `w[0] != 0`.
fn np_rows(
    v: &RatVector,
    w: &RatVector,
) -> (RatMatrix, FirstRowCase, Vec<MiddleRowCase>, LastRowCase) {
    let n = v.len();
    let last = n - 1;
    let one = Rational::one();
    let v1 = &v[0];
    let vn = &v[last];
    let w1 = &w[0];
    let mut b = RatMatrix::zeros(n, n);

    let first = if w1.is_positive() {
        b.set(0, 0, w1 / v1);
        FirstRowCase::A
    } else {
        b.set(0, last, w1 / vn);
        FirstRowCase::B
    };

    let mut middle = Vec::with_capacity(n.saturating_sub(2));
    for i in 1..last {
        let wi = &w[i];
        let vi = &v[i];
        let case = match (wi.signum(), vi.signum()) {
            (s, t) if s.is_positive() && t.is_positive() => {
                b.set(i, 0, wi / (two() * v1));
                b.set(i, i, wi / (two() * vi));
                MiddleRowCase::A
            }
            (s, t) if s.is_positive() && t.is_negative() => {
                b.set(i, 0, (wi + &one) / v1);
                b.set(i, i, -&one / vi);
                MiddleRowCase::B
            }
            (s, _) if s.is_positive() => {
                b.set(i, 0, wi / v1);
                b.set(i, i, one.clone());
                MiddleRowCase::C
            }
            (s, t) if s.is_negative() && t.is_positive() => {
                b.set(i, i, &one / vi);
                b.set(i, last, (wi - &one) / vn);
                MiddleRowCase::D
            }
            (s, t) if s.is_negative() && t.is_negative() => {
                b.set(i, i, wi / (two() * vi));
                b.set(i, last, wi / (two() * vn));
                MiddleRowCase::E
            }
            (s, _) if s.is_negative() => {
                b.set(i, i, one.clone());
                b.set(i, last, wi / vn);
                MiddleRowCase::F
            }
            (_, t) if t.is_positive() => {
                b.set(i, i, &one / vi);
                b.set(i, last, -&one / vn);
                MiddleRowCase::G
            }
            (_, t) if t.is_negative() => {
                b.set(i, 0, &one / v1);
                b.set(i, i, -&one / vi);
                MiddleRowCase::H
            }
            _ => {
                b.set(i, i, one.clone());
                MiddleRowCase::I
            }
        };
        middle.push(case);
    }

    let wn = &w[last];
    let last_case = if wn.is_positive() && w1.is_negative() {
        b.set(last, 0, wn / v1);
        LastRowCase::A
    } else if wn.is_positive() {
        b.set(last, 0, (wn + &one) / v1);
        b.set(last, last, -&one / vn);
        LastRowCase::B
    } else if wn.is_negative() && w1.is_negative() {
        b.set(last, 0, &one / v1);
        b.set(last, last, (wn - &one) / vn);
        LastRowCase::C
    } else if wn.is_negative() {
        b.set(last, last, wn / vn);
        LastRowCase::D
    } else {
        b.set(last, 0, &one / v1);
        b.set(last, last, -&one / vn);
        LastRowCase::E
    };

    (b, first, middle, last_case)
}

/// Nonnegative invertible `B` with `B v = w`, for `v >= 0, v != 0` and
/// `w > 0`.
///
/// After permuting the `k` positive entries of `v` to the front (stable
/// order, same permutation on `w`), the columns of `B'` are
///
/// * `B' e_1 = (w_1/v_1, w_2/(2v_1), .., w_k/(2v_1), w_{k+1}/v_1, .., w_n/v_1)`,
/// * `B' e_j = w_j/(2 v_j) e_j` for `2 <= j <= k`,
/// * `B' e_j = e_j` for `j > k`,
///
/// which is lower triangular with a positive diagonal.
pub fn build_pos(v: &RatVector, w: &RatVector) -> Result<PosBuild> {
    let n = v.len();
    if w.len() != n {
        return Err(Error::Dimension(format!(
            "v has length {n} but w has length {}",
            w.len()
        )));
    }
    if !v.is_nonnegative() || v.is_zero() {
        return Err(Error::InvalidInput(
            "v must be nonnegative and nonzero".into(),
        ));
    }
    if !w.is_positive() {
        return Err(Error::InvalidInput("w must be strictly positive".into()));
    }
    let mut order: Vec<usize> = (0..n).filter(|&i| v[i].is_positive()).collect();
    let k = order.len();
    order.extend((0..n).filter(|&i| v[i].is_zero()));

    let vp = v.permuted(&order);
    let wp = w.permuted(&order);
    let v1 = &vp[0];
    let mut core = RatMatrix::zeros(n, n);
    core.set(0, 0, &wp[0] / v1);
    for i in 1..n {
        let scale = if i < k { two() * v1 } else { v1.clone() };
        core.set(i, 0, &wp[i] / scale);
    }
    for j in 1..n {
        let d = if j < k {
            &wp[j] / (two() * &vp[j])
        } else {
            Rational::one()
        };
        core.set(j, j, d);
    }

    // B = P^T B' P.
    let mut b = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b.set(order[i], order[j], core.get(i, j).clone());
        }
    }
    verify_invertible_map(&b, v, w)?;
    let built = PosBuild { matrix: b, order };
    if !built.normalized().is_lower_triangular() {
        return Err(Error::Verification(
            "normalized B is not lower triangular".into(),
        ));
    }
    Ok(built)
}

/// Which branch [`build_rect`] used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RectBranch {
    MixedSign,
    Nonnegative,
}

/// Nonnegative full-row-rank `m x n` matrix `B` with `B v = w`, for
/// `n > m >= 1`, when `v` has mixed signs (any `w`) or `v >= 0, v != 0` and
/// `w > 0`. Extends `w` by ones to length `n`, builds the square witness and
/// keeps its first `m` rows.
pub fn build_rect(v: &RatVector, w: &RatVector) -> Result<(RatMatrix, RectBranch)> {
    let n = v.len();
    let m = w.len();
    if m == 0 {
        return Err(Error::InvalidInput("target vector must be nonempty".into()));
    }
    if n <= m {
        return Err(Error::InvalidInput(format!(
            "need len(v) > len(w), got {n} and {m}"
        )));
    }
    let extended = w.extend(&RatVector::ones(n - m));
    let (square, branch) = if v.sign_profile().mixed() {
        (build_np(v, &extended)?.matrix, RectBranch::MixedSign)
    } else if v.is_nonnegative() && !v.is_zero() && w.is_positive() {
        (build_pos(v, &extended)?.matrix, RectBranch::Nonnegative)
    } else {
        return Err(Error::InvalidInput(
            "need v with mixed signs, or v >= 0 nonzero with w > 0".into(),
        ));
    };
    let b = square.top_rows(m);
    if !b.is_nonnegative() || b.rank() != m || &b.apply(v)? != w {
        return Err(Error::Verification(
            "rectangular witness failed its checks".into(),
        ));
    }
    Ok((b, branch))
}

/// How [`mixed_sign_vector`] obtained its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedSignPath {
    /// A column of `X^{-1}` already had mixed signs.
    Column { column: usize },
    /// Combination `alpha u + beta w` of a nonpositive and a nonnegative
    /// column of `X^{-1}`, using coordinates `(i, j)`.
    Combination { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSignVector {
    pub vector: RatVector,
    pub path: MixedSignPath,
}

/// A vector `v` with both signs and `X v >= 0`, for invertible `X` such that
/// neither `X` nor `-X` is inverse nonnegative.
///
/// Candidates are columns of `X^{-1}` (each maps to a standard basis vector):
/// `u` is the last column with a negative entry and `w` the first with a
/// positive entry. If either is mixed it is returned. Otherwise `u <= 0` and
/// `w >= 0`; for the first coordinate pair `(i, j)` (swapped if needed so that
/// `det D > 0` for `D = [[u_i, w_i], [u_j, w_j]]`), the combination with
/// `alpha = (w_i + w_j) / det D` and `beta = -(u_i + u_j) / det D` has
/// `v_i = 1`, `v_j = -1`, and `alpha, beta >= 0`.
pub fn mixed_sign_vector(x: &RatMatrix) -> Result<MixedSignVector> {
    x.require_square("X")?;
    let inv = x.inverse().map_err(|e| match e {
        Error::Singular => Error::InvalidInput("X is singular".into()),
        other => other,
    })?;
    if inv.is_nonnegative() {
        return Err(Error::InvalidInput("X is inverse nonnegative".into()));
    }
    if inv.is_nonpositive() {
        return Err(Error::InvalidInput("-X is inverse nonnegative".into()));
    }
    let n = x.rows();
    let u_col = (0..n)
        .rev()
        .find(|&j| inv.column(j).sign_profile().has_negative)
        .expect("inverse has a negative entry");
    let w_col = (0..n)
        .find(|&j| inv.column(j).sign_profile().has_positive)
        .expect("inverse has a positive entry");
    let u = inv.column(u_col);
    let w = inv.column(w_col);

    let (vector, path) = if u.sign_profile().mixed() {
        (u, MixedSignPath::Column { column: u_col })
    } else if w.sign_profile().mixed() {
        (w, MixedSignPath::Column { column: w_col })
    } else {
        combine(&u, &w)?
    };

    if !vector.sign_profile().mixed() || !x.apply(&vector)?.is_nonnegative() {
        return Err(Error::Verification(
            "mixed-sign vector failed its checks".into(),
        ));
    }
    Ok(MixedSignVector { vector, path })
}

fn combine(u: &RatVector, w: &RatVector) -> Result<(RatVector, MixedSignPath)> {
    let n = u.len();
    for a in 0..n {
        for b in a + 1..n {
            let det = &u[a] * &w[b] - &w[a] * &u[b];
            if det.is_zero() {
                continue;
            }
            let (i, j, det) = if det.is_positive() {
                (a, b, det)
            } else {
                (b, a, -det)
            };
            let alpha = (&w[i] + &w[j]) / &det;
            let beta = -(&u[i] + &u[j]) / &det;
            let v = u.scale(&alpha).add(&w.scale(&beta))?;
            return Ok((v, MixedSignPath::Combination { i, j }));
        }
    }
    Err(Error::Verification(
        "columns of X^{-1} are linearly dependent".into(),
    ))
}
