//! Seeded random generators for each matrix class, the MSP basis search, and
//! the randomized verification campaigns in [`campaign`].
//!
//! The PRNG is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. [`Generator::for_trial`] selects ChaCha stream
//! `trial`, so every trial of a campaign is reproducible on its own.

pub mod campaign;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ratmat::{RatMatrix, RatVector, Rational};

/// Largest denominator drawn for random rational entries.
pub const MAX_DENOMINATOR: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Numerators are drawn from `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
}

impl GenConfig {
    pub fn new(seed: u64) -> Self {
        GenConfig {
            seed,
            entry_bound: 5,
        }
    }

    pub fn with_bound(seed: u64, entry_bound: i64) -> Self {
        assert!(entry_bound >= 1, "entry bound must be positive");
        GenConfig { seed, entry_bound }
    }
}

/// A semipositive matrix together with the positive vector planted in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpSample {
    pub matrix: RatMatrix,
    pub planted: RatVector,
}

pub struct Generator {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Generator {
    pub fn new(cfg: &GenConfig) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            bound: cfg.entry_bound,
        }
    }

    /// Independent stream for trial `trial` of a campaign.
    pub fn for_trial(cfg: &GenConfig, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial);
        Generator {
            rng,
            bound: cfg.entry_bound,
        }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.random_range(lo..=hi_inclusive)
    }

    pub fn int_in(&mut self, lo: i64, hi_inclusive: i64) -> i64 {
        self.rng.random_range(lo..=hi_inclusive)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }

    fn denominator(&mut self) -> i64 {
        self.rng.random_range(1..=MAX_DENOMINATOR)
    }

    /// Numerator in `[-bound, bound]`, denominator in `1..=4`.
    pub fn rational(&mut self) -> Rational {
        let p = self.int_in(-self.bound, self.bound);
        let q = self.denominator();
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn positive_rational(&mut self) -> Rational {
        let p = self.int_in(1, self.bound);
        let q = self.denominator();
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn nonneg_rational(&mut self) -> Rational {
        let p = self.int_in(0, self.bound);
        let q = self.denominator();
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    /// Integer entry in `[-bound, bound]`.
    pub fn small_int(&mut self) -> Rational {
        Rational::from_integer(BigInt::from(self.int_in(-self.bound, self.bound)))
    }

    pub fn vector(&mut self, n: usize) -> RatVector {
        RatVector::new((0..n).map(|_| self.rational()).collect())
    }

    pub fn int_vector(&mut self, n: usize) -> RatVector {
        RatVector::new((0..n).map(|_| self.small_int()).collect())
    }

    pub fn positive_vector(&mut self, n: usize) -> RatVector {
        RatVector::new((0..n).map(|_| self.positive_rational()).collect())
    }

    pub fn nonzero_vector(&mut self, n: usize) -> RatVector {
        loop {
            let v = self.int_vector(n);
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Vector with at least one positive and one negative entry (`n >= 2`).
    pub fn mixed_vector(&mut self, n: usize) -> RatVector {
        assert!(n >= 2, "a mixed-sign vector needs two coordinates");
        loop {
            let v = self.int_vector(n);
            if v.sign_profile().mixed() {
                return v;
            }
        }
    }

    /// Nonzero vector with nonnegative entries, some of them zero at random.
    pub fn nonneg_nonzero_vector(&mut self, n: usize) -> RatVector {
        loop {
            let v = RatVector::new(
                (0..n)
                    .map(|_| {
                        if self.coin() {
                            Rational::zero()
                        } else {
                            self.positive_rational()
                        }
                    })
                    .collect(),
            );
            if !v.is_zero() {
                return v;
            }
        }
    }

    pub fn matrix(&mut self, m: usize, n: usize) -> RatMatrix {
        let rows = (0..m)
            .map(|_| (0..n).map(|_| self.rational()).collect())
            .collect();
        RatMatrix::from_rows(rows).expect("rectangular")
    }

    /// Integer entries in `[-bound, bound]`.
    pub fn int_matrix(&mut self, m: usize, n: usize) -> RatMatrix {
        let rows = (0..m)
            .map(|_| (0..n).map(|_| self.small_int()).collect())
            .collect();
        RatMatrix::from_rows(rows).expect("rectangular")
    }

    pub fn invertible_matrix(&mut self, n: usize) -> RatMatrix {
        loop {
            let a = self.matrix(n, n);
            if !a.det().expect("square").is_zero() {
                return a;
            }
        }
    }

    /// Nonnegative rows, none of them zero.
    pub fn row_positive(&mut self, m: usize, n: usize) -> RatMatrix {
        let rows = (0..m)
            .map(|_| self.nonneg_nonzero_vector(n).into_entries())
            .collect();
        RatMatrix::from_rows(rows).expect("rectangular")
    }

    /// Random permutation with a random positive diagonal scaling.
    pub fn gen_monomial(&mut self, n: usize) -> RatMatrix {
        let mut order: Vec<usize> = (0..n).collect();
        self.shuffle(&mut order);
        let mut a = RatMatrix::zeros(n, n);
        for (i, &j) in order.iter().enumerate() {
            a.set(i, j, self.positive_rational());
        }
        a
    }

    /// Inverse of a random nonnegative, strictly diagonally dominant matrix
    /// with permuted columns.
    pub fn gen_inverse_nonneg(&mut self, n: usize) -> RatMatrix {
        let mut dominant = RatMatrix::zeros(n, n);
        for i in 0..n {
            let mut off = Rational::zero();
            for j in 0..n {
                if i != j {
                    let x = self.nonneg_rational();
                    off += &x;
                    dominant.set(i, j, x);
                }
            }
            dominant.set(i, i, off + self.positive_rational());
        }
        let mut order: Vec<usize> = (0..n).collect();
        self.shuffle(&mut order);
        let nonneg = dominant.select_columns(&order);
        nonneg
            .inverse()
            .expect("diagonally dominant matrices are invertible")
    }

    /// Semipositive `m x n` matrix: plants `x > 0`, draws rows and flips
    /// those with `r . x < 0` (redrawing when `r . x = 0`).
    pub fn gen_sp(&mut self, m: usize, n: usize) -> SpSample {
        let planted = self.positive_vector(n);
        let mut rows = Vec::with_capacity(m);
        while rows.len() < m {
            let r = self.vector(n);
            let s = r.dot(&planted).expect("same length");
            if s.is_zero() {
                continue;
            }
            rows.push(if s.is_negative() {
                (-&r).into_entries()
            } else {
                r.into_entries()
            });
        }
        let matrix = RatMatrix::from_rows(rows).expect("rectangular");
        debug_assert!(matrix.apply(&planted).unwrap().is_positive());
        SpSample { matrix, planted }
    }

    /// Minimally semipositive `m x n` matrix (`m >= n`): an inverse
    /// nonnegative `n x n` block plus `m - n` row-positive rows, rows
    /// shuffled.
    pub fn gen_msp(&mut self, m: usize, n: usize) -> RatMatrix {
        assert!(m >= n && n >= 1, "gen_msp needs m >= n >= 1");
        let square = self.gen_inverse_nonneg(n);
        let stacked = if m > n {
            square
                .vstack(&self.row_positive(m - n, n))
                .expect("same column count")
        } else {
            square.clone()
        };
        let mut order: Vec<usize> = (0..m).collect();
        self.shuffle(&mut order);
        let a = stacked.select_rows(&order);

        // Left inverse [S^{-1} | 0], columns moved with the row shuffle.
        let s_inv = square.inverse().expect("invertible");
        let mut left = RatMatrix::zeros(n, m);
        for (new_row, &old_row) in order.iter().enumerate() {
            if old_row < n {
                for i in 0..n {
                    left.set(i, new_row, s_inv.get(i, old_row).clone());
                }
            }
        }
        let witness = s_inv.apply(&RatVector::ones(n)).expect("square");
        assert!(
            left.is_nonnegative()
                && left.matmul(&a).expect("shapes").is_identity()
                && witness.is_positive()
                && a.apply(&witness).expect("shapes").is_positive(),
            "gen_msp produced a matrix that is not minimally semipositive"
        );
        a
    }
}

/// Collects `m * n` linearly independent MSP matrices by keeping each
/// `gen_msp` sample that increases the rank of the accumulated set.
pub fn msp_basis_search(
    m: usize,
    n: usize,
    cfg: &GenConfig,
    max_trials: usize,
) -> Result<Vec<RatMatrix>> {
    if m < n || n == 0 {
        return Err(Error::InvalidInput(format!(
            "basis search needs m >= n >= 1, got {m}x{n}"
        )));
    }
    let wanted = m * n;
    let mut generator = Generator::new(cfg);
    let mut basis: Vec<RatMatrix> = Vec::with_capacity(wanted);
    let mut span: Option<RatMatrix> = None;
    for _ in 0..max_trials {
        let candidate = generator.gen_msp(m, n);
        let row = RatMatrix::from_rows(vec![candidate.vectorize().into_entries()])?;
        let grown = match &span {
            Some(s) => s.vstack(&row)?,
            None => row,
        };
        if grown.rank() == basis.len() + 1 {
            basis.push(candidate);
            span = Some(grown);
            if basis.len() == wanted {
                return Ok(basis);
            }
        }
    }
    Err(Error::SearchExhausted {
        trials: max_trials,
        found: basis.len(),
        wanted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;

    #[test]
    fn same_seed_same_output() {
        let cfg = GenConfig::new(42);
        let mut a = Generator::new(&cfg);
        let mut b = Generator::new(&cfg);
        for n in 1..5 {
            assert_eq!(a.gen_msp(n + 1, n), b.gen_msp(n + 1, n));
            assert_eq!(a.gen_sp(n, n + 1), b.gen_sp(n, n + 1));
        }
        let mut t1 = Generator::for_trial(&cfg, 7);
        let mut t2 = Generator::for_trial(&cfg, 7);
        assert_eq!(t1.matrix(3, 3), t2.matrix(3, 3));
    }

    #[test]
    fn monomial_generator() {
        let mut g = Generator::new(&GenConfig::new(1));
        let one = g.gen_monomial(1);
        assert!(one.get(0, 0).is_positive());
        for n in 1..6 {
            assert!(classify::is_monomial(&g.gen_monomial(n)).unwrap());
        }
        let mut g2 = Generator::new(&GenConfig::new(2));
        assert!(classify::is_monomial(&g2.gen_monomial(2)).unwrap());
    }

    #[test]
    fn inverse_nonneg_generator() {
        for bound in [1, 5] {
            let mut g = Generator::new(&GenConfig::with_bound(3, bound));
            for n in 1..5 {
                assert!(classify::is_inverse_nonnegative(&g.gen_inverse_nonneg(n)));
            }
        }
    }

    #[test]
    fn sp_generator() {
        let mut g = Generator::new(&GenConfig::new(4));
        let s = g.gen_sp(1, 1);
        assert!(s.matrix.get(0, 0).is_positive());
        let s = g.gen_sp(3, 2);
        assert!(classify::is_semipositive(&s.matrix));
        assert!(s.matrix.apply(&s.planted).unwrap().is_positive());
    }

    #[test]
    fn msp_generator() {
        let mut g = Generator::new(&GenConfig::new(5));
        assert!(classify::is_minimally_semipositive(&g.gen_msp(2, 2)));
        let tall = g.gen_msp(3, 2);
        assert!(classify::is_minimally_semipositive(&tall));
        assert!(classify::msp_by_deletion(&tall));
        let col = g.gen_msp(2, 1);
        assert!(col.is_positive());
    }

    #[test]
    fn basis_search_small() {
        let cfg = GenConfig::new(9);
        let b = msp_basis_search(1, 1, &cfg, 10).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].get(0, 0).is_positive());
        let b = msp_basis_search(2, 2, &cfg, 40).unwrap();
        assert_eq!(b.len(), 4);
        assert!(matches!(
            msp_basis_search(2, 2, &cfg, 2),
            Err(Error::SearchExhausted { .. })
        ));
        assert!(msp_basis_search(1, 2, &cfg, 10).is_err());
    }
}
