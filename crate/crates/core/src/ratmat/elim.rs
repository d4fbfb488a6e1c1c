//! Fraction-free elimination over the integers.
//!
//! Each rational row is first scaled by the lcm of its denominators, so the
//! Bareiss recurrences run on `BigInt` with exact divisions. Intermediate
//! entries are minors of the scaled matrix, which bounds their growth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{RatMatrix, RatVector, Rational};
use crate::error::{Error, Result};

/// Rows scaled to integers, plus the per-row scale factors.
fn integer_rows(a: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(a.rows());
    let mut scales = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let lcm = a
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            a.row(i)
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect(),
        );
        scales.push(lcm);
    }
    (rows, scales)
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "Bareiss division must be exact");
    q
}

/// Exact determinant via Bareiss elimination.
pub fn det(a: &RatMatrix) -> Result<Rational> {
    a.require_square("determinant operand")?;
    let n = a.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut m, scales) = integer_rows(a);
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(t, &prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    let mut d = Rational::new(m[n - 1][n - 1].clone(), scale);
    if negate {
        d = -d;
    }
    Ok(d)
}

/// Exact rank via fraction-free row echelon form.
pub fn rank(a: &RatMatrix) -> usize {
    let (mut m, _) = integer_rows(a);
    let rows = a.rows();
    let cols = a.cols();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = exact_div(t, &prev);
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Exact inverse via fraction-free Gauss-Jordan on `[S A | I]`, where `S`
/// scales rows to integers. The product `A A^{-1} = I` is checked before
/// returning.
pub fn inverse(a: &RatMatrix) -> Result<RatMatrix> {
    a.require_square("inverse operand")?;
    let n = a.rows();
    let (int_rows, scales) = integer_rows(a);
    let mut m: Vec<Vec<BigInt>> = int_rows
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let width = 2 * n;
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n)
            .find(|&r| !m[r][k].is_zero())
            .ok_or(Error::Singular)?;
        m.swap(k, p);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..width {
                if j == k {
                    continue;
                }
                let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(t, &prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    // Left block is now prev * I; right block is prev * (S A)^{-1}.
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let entry = Rational::new(m[i][n + j].clone() * &scales[j], prev.clone());
            inv.set(i, j, entry);
        }
    }
    if !a.matmul(&inv)?.is_identity() {
        return Err(Error::Verification("A * inverse(A) != I".into()));
    }
    Ok(inv)
}

/// A nonzero vector `x` with `A x = 0`, if the null space is nontrivial.
pub fn null_vector(a: &RatMatrix) -> Option<RatVector> {
    let rows = a.rows();
    let cols = a.cols();
    let mut m: Vec<Vec<Rational>> = (0..rows).map(|i| a.row(i).to_vec()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![Rational::zero(); cols];
    x[free] = Rational::one();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -m[row][free].clone();
    }
    debug_assert!(a.apply(&RatVector::new(x.clone())).unwrap().is_zero());
    Some(RatVector::new(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::{int, rat};

    fn worked_b() -> RatMatrix {
        RatMatrix::from_i64(&[&[3, 0, 0, 0], &[2, 1, 0, 0], &[0, 0, 1, 5], &[1, 0, 0, 1]])
    }

    /// Cofactor expansion along the first row; independent of Bareiss.
    fn cofactor_det(a: &RatMatrix) -> Rational {
        let n = a.rows();
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor = a.select_rows(&(1..n).collect::<Vec<_>>()).delete_column(j);
            let term = a.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&RatMatrix::identity(3)).unwrap(), int(1));
        assert_eq!(
            det(&RatMatrix::from_i64(&[&[-1, 0], &[0, 1]])).unwrap(),
            int(-1)
        );
        assert_eq!(det(&worked_b()).unwrap(), int(3));
        assert_eq!(cofactor_det(&worked_b()), int(3));
        assert!(matches!(
            det(&RatMatrix::zeros(2, 3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn det_needs_pivoting_and_fractions() {
        let a = RatMatrix::from_rows(vec![
            vec![int(0), rat(1, 2), int(2)],
            vec![rat(2, 3), int(0), int(1)],
            vec![int(1), int(1), rat(-1, 4)],
        ])
        .unwrap();
        assert_eq!(det(&a).unwrap(), cofactor_det(&a));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            inverse(&RatMatrix::identity(3)).unwrap(),
            RatMatrix::identity(3)
        );
        let a = RatMatrix::from_i64(&[&[2, -1], &[-1, 2]]);
        let expected =
            RatMatrix::from_rows(vec![vec![rat(2, 3), rat(1, 3)], vec![rat(1, 3), rat(2, 3)]])
                .unwrap();
        assert_eq!(inverse(&a).unwrap(), expected);
        assert_eq!(
            inverse(&RatMatrix::from_i64(&[&[1, 1], &[1, 1]])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn inverse_with_fractional_rows() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), int(0)],
            vec![int(0), rat(3, 4), int(5)],
            vec![int(1), int(0), rat(-2, 7)],
        ])
        .unwrap();
        let inv = inverse(&a).unwrap();
        assert!(inv.matmul(&a).unwrap().is_identity());
        assert_eq!(inverse(&inv).unwrap(), a);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::zeros(2, 3)), 0);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[1, 1], &[1, 1]])), 1);
        assert_eq!(rank(&worked_b()), 4);
        assert_eq!(
            rank(&RatMatrix::from_i64(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])),
            2
        );
        assert_eq!(rank(&RatMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn null_vector_found_for_singular() {
        let a = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        let x = null_vector(&a).unwrap();
        assert!(!x.is_zero());
        assert!(a.apply(&x).unwrap().is_zero());
        assert!(null_vector(&RatMatrix::identity(3)).is_none());
    }
}
