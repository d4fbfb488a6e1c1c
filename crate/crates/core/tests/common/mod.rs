//! Test-only oracles. Nothing here calls into the library's elimination or
//! simplex code.

#![allow(dead_code, clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Solves the square system `M x = r` by plain Gaussian elimination with
/// exact rationals. `None` when `M` is singular.
pub fn solve_square(mut m: Vec<Vec<Q>>, mut r: Vec<Q>) -> Option<Vec<Q>> {
    let n = r.len();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        r.swap(col, pivot);
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[col][col];
                for j in col..n {
                    let d = &f * &m[col][j];
                    m[i][j] -= d;
                }
                let d = &f * &r[col];
                r[i] -= d;
            }
        }
    }
    Some((0..n).map(|i| &r[i] / &m[i][i]).collect())
}

fn combinations(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, total: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..total {
            cur.push(i);
            rec(i + 1, total, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, total, k, &mut Vec::new(), &mut out);
    out
}

/// Brute-force feasibility of `{x >= 0 : A x >= b}` for an `m x n` matrix
/// given by rows. The region sits inside the nonnegative orthant, so it is
/// pointed and nonempty exactly when it has a vertex. Every vertex is the
/// unique solution of `n` active constraints, so enumerating all `n`-subsets
/// of the `m + n` constraints decides the question.
pub fn vertex_feasible(a: &[Vec<Q>], b: &[Q], n: usize) -> Option<Vec<Q>> {
    let m = a.len();
    if n == 0 {
        return b.iter().all(|bi| !bi.is_positive()).then(Vec::new);
    }
    // Constraint k < m is row k of A; k >= m is x_{k-m} >= 0.
    let constraint = |k: usize| -> (Vec<Q>, Q) {
        if k < m {
            (a[k].clone(), b[k].clone())
        } else {
            let mut e = vec![Q::zero(); n];
            e[k - m] = Q::one();
            (e, Q::zero())
        }
    };
    for subset in combinations(m + n, n) {
        let (rows, rhs): (Vec<_>, Vec<_>) = subset.iter().map(|&k| constraint(k)).unzip();
        let Some(x) = solve_square(rows, rhs) else {
            continue;
        };
        if satisfies(a, b, &x) {
            return Some(x);
        }
    }
    None
}

pub fn satisfies(a: &[Vec<Q>], b: &[Q], x: &[Q]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && a.iter().zip(b).all(|(row, bi)| {
            let s: Q = row.iter().zip(x).map(|(r, v)| r * v).sum();
            &s >= bi
        })
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    let mut total = Q::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Q>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Sign of a permutation by counting inversions.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
