//! Exact LP feasibility over the rationals.
//!
//! Both entry points reduce to the standard-form system `E z = f, z >= 0`,
//! which is decided by a phase-one simplex with one artificial variable per
//! row. Pivoting follows Bland's rule (lowest-index entering column,
//! lowest-index leaving basic variable on ratio ties), so the method always
//! terminates, degenerate systems included.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratmat::{RatMatrix, RatVector, Rational};

/// Outcome of a feasibility query. A `Feasible` witness has already been
/// checked against the system it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    Feasible(RatVector),
    Infeasible,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RatVector> {
        match self {
            FeasibilityResult::Feasible(x) => Some(x),
            FeasibilityResult::Infeasible => None,
        }
    }

    pub fn into_witness(self) -> Option<RatVector> {
        match self {
            FeasibilityResult::Feasible(x) => Some(x),
            FeasibilityResult::Infeasible => None,
        }
    }
}

/// Decides whether some `x >= 0` satisfies `A x >= b`.
pub fn feasible_nonneg(a: &RatMatrix, b: &RatVector) -> Result<FeasibilityResult> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let m = a.rows();
    let n = a.cols();
    // A x - s = b with surplus s >= 0.
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = a.row(i).to_vec();
        row.extend((0..m).map(|k| {
            if k == i {
                -Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        rows.push(row);
    }
    let Some(z) = phase_one(rows, b.entries().to_vec(), n + m) else {
        return Ok(FeasibilityResult::Infeasible);
    };
    let x = RatVector::new(z[..n].to_vec());
    let ax = a.apply(&x)?;
    let ok = x.is_nonnegative() && ax.iter().zip(b.iter()).all(|(l, r)| l >= r);
    if !ok {
        return Err(Error::Verification(
            "simplex witness violates A x >= b".into(),
        ));
    }
    Ok(FeasibilityResult::Feasible(x))
}

/// Decides whether some `y >= 0` satisfies `M y = c`.
pub fn equality_feasible_nonneg(m: &RatMatrix, c: &RatVector) -> Result<FeasibilityResult> {
    if c.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} but the matrix has {} rows",
            c.len(),
            m.rows()
        )));
    }
    let rows = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let Some(z) = phase_one(rows, c.entries().to_vec(), m.cols()) else {
        return Ok(FeasibilityResult::Infeasible);
    };
    let y = RatVector::new(z);
    if !y.is_nonnegative() || &m.apply(&y)? != c {
        return Err(Error::Verification(
            "simplex witness violates M y = c".into(),
        ));
    }
    Ok(FeasibilityResult::Feasible(y))
}

/// Phase-one simplex on `rows * z = rhs, z >= 0` with `vars` structural
/// variables. Returns a feasible point or `None`.
fn phase_one(
    mut rows: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
    vars: usize,
) -> Option<Vec<Rational>> {
    let m = rows.len();
    if m == 0 {
        return Some(vec![Rational::zero(); vars]);
    }
    for (row, r) in rows.iter_mut().zip(rhs.iter_mut()) {
        if r.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            *r = -r.clone();
        }
    }
    // Columns: structural 0..vars, artificial vars..vars+m, then rhs.
    let width = vars + m;
    let mut t: Vec<Vec<Rational>> = rows
        .into_iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (mut row, r))| {
            row.extend((0..m).map(|k| {
                if k == i {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            row.push(r);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (vars..vars + m).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![Rational::zero(); width + 1];
    for row in &t {
        for j in 0..vars {
            cost[j] -= &row[j];
        }
        cost[width] -= &row[width];
    }

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-one objective is bounded below by zero.
        let (p, _) = leave.expect("phase-one objective cannot be unbounded");
        pivot(&mut t, &mut cost, p, enter);
        basis[p] = enter;
    }

    if !cost[width].is_zero() {
        return None;
    }
    let mut z = vec![Rational::zero(); vars];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < vars {
            z[bv] = t[i][width].clone();
        }
    }
    Some(z)
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], p: usize, q: usize) {
    let pv = t[p][q].clone();
    for x in t[p].iter_mut() {
        *x /= &pv;
    }
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    if !cost[q].is_zero() {
        let f = cost[q].clone();
        for (x, y) in cost.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}
