//! Falsification certificates and their independent re-verification.

use std::fmt;

use num_traits::Zero;

use crate::classify;
use crate::error::{Error, Result};
use crate::ratmat::{RatMatrix, RatVector};

use super::PreserverMap;

/// Matrix class a map is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreservedClass {
    Semipositive,
    MinimallySemipositive,
}

impl PreservedClass {
    pub fn contains(&self, a: &RatMatrix) -> bool {
        match self {
            PreservedClass::Semipositive => classify::is_semipositive(a),
            PreservedClass::MinimallySemipositive => classify::is_minimally_semipositive(a),
        }
    }
}

impl fmt::Display for PreservedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PreservedClass::Semipositive => "semipositive",
            PreservedClass::MinimallySemipositive => "minimally-semipositive",
        })
    }
}

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FalsifyCase {
    /// `X` has a zero row.
    ZeroRow,
    /// A row of `X` has entries of both signs; `A` repeats a positive `v`
    /// with `(X v)_i = 0`.
    MixedRow,
    /// `X` has a nonpositive row and a nonnegative row; `A = (e, 0, .., 0)`.
    OppositeRows,
    /// `X` (or `-X`) row positive, `Y` singular; rows of `A` are a left null
    /// vector of `Y`.
    SingularY,
    /// `X` (or `-X`) row positive, `Y^{-1}` has a negative entry; rows of `A`
    /// are minus a row of `Y^{-1}`.
    NegativeInverseEntry,
    /// `X` or `Y` singular; `A = I`.
    SingularFactor,
    /// Neither `X` nor `-X` inverse nonnegative; `A = B^{-1}` with `B` from
    /// the mixed-sign construction.
    MixedSignVector,
    /// `X` (or `-X`) inverse nonnegative but `Y` (or `-Y`) not; `A = B^{-1}`
    /// with `B` from the nonnegative construction.
    YNotInverseNonneg,
    /// Tall single-column case: a positive column with a non-positive image.
    PositiveColumn,
    /// Found by sampling MSP matrices.
    RandomSearch,
    /// `X` or `Y` singular, so `A` lies outside the range of the map.
    NotSurjective,
}

impl fmt::Display for FalsifyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FalsifyCase::ZeroRow => "zero-row",
            FalsifyCase::MixedRow => "mixed-row",
            FalsifyCase::OppositeRows => "opposite-rows",
            FalsifyCase::SingularY => "singular-y",
            FalsifyCase::NegativeInverseEntry => "negative-inverse-entry",
            FalsifyCase::SingularFactor => "singular-factor",
            FalsifyCase::MixedSignVector => "mixed-sign-vector",
            FalsifyCase::YNotInverseNonneg => "y-not-inverse-nonnegative",
            FalsifyCase::PositiveColumn => "positive-column",
            FalsifyCase::RandomSearch => "random-search",
            FalsifyCase::NotSurjective => "not-surjective",
        })
    }
}

/// How the certificate matrix `A` shows the map fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `L(A)` is outside the class.
    Image { image: RatMatrix },
    /// `L` is invertible and `L^{-1}(A)` is outside the class, so `A` has no
    /// preimage inside the class.
    InverseImage { preimage: RatMatrix },
    /// `A` is not `X B Y` for any `B`.
    OutsideRange,
}

/// Extra data explaining why the offending matrix leaves the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// The offending matrix has a zero row.
    ZeroRow { row: usize },
    /// Every column of the offending matrix is a multiple of `direction`,
    /// which has entries of both signs.
    ProportionalColumns { direction: RatVector },
    /// The offending matrix is entrywise nonpositive.
    Nonpositive,
    /// The offending matrix is square and singular.
    Singular,
    /// `M u = z` with `z >= 0` and `u` not nonnegative, so `M` has no
    /// nonnegative inverse.
    VectorPair { u: RatVector, z: RatVector },
    /// Only the direct classification is offered.
    Classification,
    /// `z^T X = 0` but `z^T A != 0`.
    LeftNullVector { z: RatVector },
    /// `Y y = 0` but `A y != 0`.
    RightNullVector { y: RatVector },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FalsifyCertificate {
    pub class: PreservedClass,
    pub case: FalsifyCase,
    /// Member of the class.
    pub a: RatMatrix,
    pub violation: Violation,
    pub evidence: Evidence,
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Verification(msg.into()))
}

impl FalsifyCertificate {
    /// The matrix that lands outside the class, if the violation has one.
    pub fn offending(&self) -> Option<&RatMatrix> {
        match &self.violation {
            Violation::Image { image } => Some(image),
            Violation::InverseImage { preimage } => Some(preimage),
            Violation::OutsideRange => None,
        }
    }

    /// Re-checks the certificate against `map` from scratch: `A` is in the
    /// class, the offending matrix is recomputed and classified outside it,
    /// and the evidence holds.
    pub fn verify(&self, map: &PreserverMap) -> Result<()> {
        if !self.class.contains(&self.a) {
            return fail(format!("certificate matrix is not {}", self.class));
        }
        match &self.violation {
            Violation::Image { image } => {
                if &map.apply(&self.a)? != image {
                    return fail("recorded image differs from X A Y");
                }
            }
            Violation::InverseImage { preimage } => {
                let inv = map.inverse()?;
                if &inv.apply(&self.a)? != preimage {
                    return fail("recorded preimage differs from X^-1 A Y^-1");
                }
            }
            Violation::OutsideRange => {}
        }
        if let Some(m) = self.offending() {
            if self.class.contains(m) {
                return fail(format!("offending matrix is {}", self.class));
            }
        }
        self.verify_evidence(map)
    }

    pub fn is_valid(&self, map: &PreserverMap) -> bool {
        self.verify(map).is_ok()
    }

    fn verify_evidence(&self, map: &PreserverMap) -> Result<()> {
        let m = self.offending();
        match &self.evidence {
            Evidence::Classification => Ok(()),
            Evidence::ZeroRow { row } => match m {
                Some(m) if *row < m.rows() && m.is_zero_row(*row) => Ok(()),
                _ => fail("claimed zero row is not zero"),
            },
            Evidence::Nonpositive => match m {
                Some(m) if m.is_nonpositive() => Ok(()),
                _ => fail("offending matrix is not nonpositive"),
            },
            Evidence::Singular => match m {
                Some(m) if m.is_square() && m.det()?.is_zero() => Ok(()),
                _ => fail("offending matrix is not singular"),
            },
            Evidence::ProportionalColumns { direction } => {
                let Some(m) = m else {
                    return fail("no offending matrix");
                };
                if !direction.sign_profile().mixed() || direction.len() != m.rows() {
                    return fail("direction is not a mixed-sign vector of the right length");
                }
                let stacked = RatMatrix::from_columns(m.rows(), std::slice::from_ref(direction))?
                    .hstack(m)?;
                if stacked.rank() > 1 {
                    return fail("columns are not multiples of the direction");
                }
                Ok(())
            }
            Evidence::VectorPair { u, z } => {
                let Some(m) = m else {
                    return fail("no offending matrix");
                };
                if &m.apply(u)? != z || !z.is_nonnegative() || u.is_nonnegative() {
                    return fail("vector pair does not certify a missing nonnegative inverse");
                }
                Ok(())
            }
            Evidence::LeftNullVector { z } => {
                let zx = map.x().transpose().apply(z)?;
                let za = self.a.transpose().apply(z)?;
                if z.is_zero() || !zx.is_zero() || za.is_zero() {
                    return fail("left null vector evidence does not hold");
                }
                Ok(())
            }
            Evidence::RightNullVector { y } => {
                if y.is_zero() || !map.y().apply(y)?.is_zero() || self.a.apply(y)?.is_zero() {
                    return fail("right null vector evidence does not hold");
                }
                Ok(())
            }
        }
    }
}
