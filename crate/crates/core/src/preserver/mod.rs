//! Linear maps `L(A) = X A Y` and whether they preserve semipositive or
//! minimally semipositive matrices.
//!
//! | question | answer `Yes` exactly when (or the same for `-X, -Y`) |
//! |---|---|
//! | into, semipositive | `X` row positive and `Y` inverse nonnegative |
//! | onto, semipositive | `X` and `Y` monomial |
//! | into, MSP, `m = n` | `X` and `Y` inverse nonnegative |
//! | into, MSP, `m > n = 1` | `y > 0` and `X` row positive |
//! | onto, MSP, `m = n` | `X` and `Y` monomial |
//!
//! For into-MSP with `m > n >= 2` only the sufficient condition "`X`
//! monomial, `Y` inverse nonnegative" is known; a sampling search may still
//! turn up a counterexample, and otherwise the answer is `Unknown`.
//!
//! Every `No` carries a [`FalsifyCertificate`] that has been re-verified.

mod certificate;
mod falsify;

use std::fmt;

use num_traits::Signed;

use crate::classify;
use crate::error::{Error, Result};
use crate::genfuzz::GenConfig;
use crate::ratmat::RatMatrix;

pub use certificate::{Evidence, FalsifyCase, FalsifyCertificate, PreservedClass, Violation};
pub use falsify::{falsify_into_msp, falsify_into_sp};

/// The map `A -> X A Y` on `m x n` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreserverMap {
    x: RatMatrix,
    y: RatMatrix,
}

impl PreserverMap {
    pub fn new(x: RatMatrix, y: RatMatrix) -> Result<Self> {
        x.require_square("X")?;
        y.require_square("Y")?;
        if x.rows() == 0 || y.rows() == 0 {
            return Err(Error::Dimension("X and Y must be nonempty".into()));
        }
        Ok(PreserverMap { x, y })
    }

    pub fn x(&self) -> &RatMatrix {
        &self.x
    }

    pub fn y(&self) -> &RatMatrix {
        &self.y
    }

    /// Rows of the matrices acted on.
    pub fn m(&self) -> usize {
        self.x.rows()
    }

    /// Columns of the matrices acted on.
    pub fn n(&self) -> usize {
        self.y.rows()
    }

    pub fn apply(&self, a: &RatMatrix) -> Result<RatMatrix> {
        if a.rows() != self.m() || a.cols() != self.n() {
            return Err(Error::Dimension(format!(
                "map acts on {}x{} matrices, got {}x{}",
                self.m(),
                self.n(),
                a.rows(),
                a.cols()
            )));
        }
        self.x.matmul(a)?.matmul(&self.y)
    }

    /// `A -> (-X) A (-Y)`, the same map.
    pub fn negated(&self) -> PreserverMap {
        PreserverMap {
            x: -&self.x,
            y: -&self.y,
        }
    }

    /// `A -> X^{-1} A Y^{-1}`.
    pub fn inverse(&self) -> Result<PreserverMap> {
        Ok(PreserverMap {
            x: self.x.inverse()?,
            y: self.y.inverse()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Unknown => "unknown",
        })
    }
}

/// The factor condition a `Yes` rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    RowPositiveInverseNonneg,
    MonomialPair,
    InverseNonnegPair,
    PositiveScalarRowPositive,
    MonomialInverseNonneg,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::RowPositiveInverseNonneg => "x-row-positive-y-inverse-nonnegative",
            Condition::MonomialPair => "x-y-monomial",
            Condition::InverseNonnegPair => "x-y-inverse-nonnegative",
            Condition::PositiveScalarRowPositive => "y-positive-scalar-x-row-positive",
            Condition::MonomialInverseNonneg => "x-monomial-y-inverse-nonnegative",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// The condition holds for `(X, Y)`.
    Holds(Condition),
    /// The condition holds for `(-X, -Y)`.
    HoldsNegated(Condition),
    /// A certificate shows the map fails.
    Falsified,
    /// Only a sufficient condition is known, it fails, and sampling found no
    /// counterexample.
    Undecided,
    /// `m < n`: no characterization applies.
    OutsideDecidedRegime,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Holds(c) => write!(f, "{c}"),
            Reason::HoldsNegated(c) => write!(f, "negated-pair:{c}"),
            Reason::Falsified => f.write_str("falsified"),
            Reason::Undecided => f.write_str("undecided"),
            Reason::OutsideDecidedRegime => f.write_str("outside-decided-regime"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreserverVerdict {
    pub status: Status,
    pub reason: Reason,
    pub certificate: Option<FalsifyCertificate>,
}

impl PreserverVerdict {
    fn yes(negated: bool, condition: Condition) -> Self {
        PreserverVerdict {
            status: Status::Yes,
            reason: if negated {
                Reason::HoldsNegated(condition)
            } else {
                Reason::Holds(condition)
            },
            certificate: None,
        }
    }

    fn no(certificate: FalsifyCertificate) -> Self {
        PreserverVerdict {
            status: Status::No,
            reason: Reason::Falsified,
            certificate: Some(certificate),
        }
    }

    fn unknown(reason: Reason) -> Self {
        PreserverVerdict {
            status: Status::Unknown,
            reason,
            certificate: None,
        }
    }
}

/// Seed and trial count for the sampling search used where no
/// characterization is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub seed: u64,
    pub trials: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            seed: 0x5e1f_05e1,
            trials: 64,
        }
    }
}

/// Evaluates `cond` on `(X, Y)` and then on `(-X, -Y)`.
fn either_sign(map: &PreserverMap, cond: impl Fn(&RatMatrix, &RatMatrix) -> bool) -> Option<bool> {
    if cond(map.x(), map.y()) {
        Some(false)
    } else {
        let neg = map.negated();
        cond(neg.x(), neg.y()).then_some(true)
    }
}

fn monomial(a: &RatMatrix) -> bool {
    classify::is_monomial(a).expect("factors are square")
}

pub fn into_sp_preserver(map: &PreserverMap) -> Result<PreserverVerdict> {
    let cond = |x: &RatMatrix, y: &RatMatrix| {
        classify::is_row_positive(x) && classify::is_inverse_nonnegative(y)
    };
    match either_sign(map, cond) {
        Some(negated) => Ok(PreserverVerdict::yes(
            negated,
            Condition::RowPositiveInverseNonneg,
        )),
        None => Ok(PreserverVerdict::no(falsify_into_sp(map)?)),
    }
}

pub fn onto_sp_preserver(map: &PreserverMap) -> Result<PreserverVerdict> {
    match either_sign(map, |x, y| monomial(x) && monomial(y)) {
        Some(negated) => Ok(PreserverVerdict::yes(negated, Condition::MonomialPair)),
        None => Ok(PreserverVerdict::no(onto_certificate(
            map,
            PreservedClass::Semipositive,
        )?)),
    }
}

pub fn into_msp_preserver(map: &PreserverMap) -> Result<PreserverVerdict> {
    into_msp_preserver_with(map, &SearchBudget::default())
}

pub fn into_msp_preserver_with(
    map: &PreserverMap,
    budget: &SearchBudget,
) -> Result<PreserverVerdict> {
    let (m, n) = (map.m(), map.n());
    if m == n {
        let cond = |x: &RatMatrix, y: &RatMatrix| {
            classify::is_inverse_nonnegative(x) && classify::is_inverse_nonnegative(y)
        };
        return match either_sign(map, cond) {
            Some(negated) => Ok(PreserverVerdict::yes(negated, Condition::InverseNonnegPair)),
            None => Ok(PreserverVerdict::no(falsify_into_msp(map)?)),
        };
    }
    if m < n {
        return Ok(PreserverVerdict::unknown(Reason::OutsideDecidedRegime));
    }
    if n == 1 {
        let cond = |x: &RatMatrix, y: &RatMatrix| {
            y.get(0, 0).is_positive() && classify::is_row_positive(x)
        };
        return match either_sign(map, cond) {
            Some(negated) => Ok(PreserverVerdict::yes(
                negated,
                Condition::PositiveScalarRowPositive,
            )),
            None => Ok(PreserverVerdict::no(falsify::falsify_tall_column(map)?)),
        };
    }
    let cond = |x: &RatMatrix, y: &RatMatrix| monomial(x) && classify::is_inverse_nonnegative(y);
    if let Some(negated) = either_sign(map, cond) {
        return Ok(PreserverVerdict::yes(
            negated,
            Condition::MonomialInverseNonneg,
        ));
    }
    let cfg = GenConfig::new(budget.seed);
    match falsify::search_msp_counterexample(map, &cfg, budget.trials)? {
        Some(cert) => Ok(PreserverVerdict::no(cert)),
        None => Ok(PreserverVerdict::unknown(Reason::Undecided)),
    }
}

pub fn onto_msp_preserver(map: &PreserverMap) -> Result<PreserverVerdict> {
    if map.m() != map.n() {
        return Err(Error::Unsupported(
            "onto preservers of minimally semipositive matrices are decided for square spaces only"
                .into(),
        ));
    }
    match either_sign(map, |x, y| monomial(x) && monomial(y)) {
        Some(negated) => Ok(PreserverVerdict::yes(negated, Condition::MonomialPair)),
        None => Ok(PreserverVerdict::no(onto_certificate(
            map,
            PreservedClass::MinimallySemipositive,
        )?)),
    }
}

/// A certificate against `L(S) = S`: either `L` is not an into preserver,
/// or `L` is not surjective, or `L^{-1}` is not an into preserver (so some
/// member of `S` has no preimage in `S`).
fn onto_certificate(map: &PreserverMap, class: PreservedClass) -> Result<FalsifyCertificate> {
    let into = |m: &PreserverMap| match class {
        PreservedClass::Semipositive => into_sp_preserver(m),
        PreservedClass::MinimallySemipositive => into_msp_preserver(m),
    };
    if let Some(cert) = into(map)?.certificate {
        return Ok(cert);
    }
    if let Some(cert) = falsify::not_surjective(map)? {
        return Ok(cert);
    }
    let inverse = map.inverse()?;
    let Some(inner) = into(&inverse)?.certificate else {
        return Err(Error::Verification(
            "map and its inverse both preserve the class but the factors are not monomial".into(),
        ));
    };
    let Violation::Image { image } = inner.violation else {
        return Err(Error::Verification(
            "unexpected certificate shape for L^-1".into(),
        ));
    };
    let cert = FalsifyCertificate {
        class,
        case: inner.case,
        a: inner.a,
        violation: Violation::InverseImage { preimage: image },
        evidence: inner.evidence,
    };
    cert.verify(map)?;
    Ok(cert)
}
