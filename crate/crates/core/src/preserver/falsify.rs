//! Constructive falsifiers. Each one builds a matrix `A` in the class whose
//! image under `L(A) = X A Y` leaves the class, following the case analysis
//! of the corresponding characterization.

use num_traits::{One, Signed, Zero};

use crate::classify;
use crate::construct::{build_np, build_pos, mixed_sign_vector};
use crate::error::{Error, Result};
use crate::genfuzz::{GenConfig, Generator};
use crate::ratmat::{null_vector, RatMatrix, RatVector, Rational};

use super::certificate::{Evidence, FalsifyCase, FalsifyCertificate, PreservedClass, Violation};
use super::PreserverMap;

fn verified(cert: FalsifyCertificate, map: &PreserverMap) -> Result<FalsifyCertificate> {
    cert.verify(map)?;
    Ok(cert)
}

fn image_cert(
    map: &PreserverMap,
    class: PreservedClass,
    case: FalsifyCase,
    a: RatMatrix,
    evidence: Evidence,
) -> Result<FalsifyCertificate> {
    let image = map.apply(&a)?;
    verified(
        FalsifyCertificate {
            class,
            case,
            a,
            violation: Violation::Image { image },
            evidence,
        },
        map,
    )
}

/// Certificate that `L` is not an into preserver of semipositive matrices.
///
/// Cases, checked in order:
/// 1. `X` has a zero row: `A` = all ones.
/// 2. some row of `X` has both signs: `A = (v, .., v)` with `v > 0` and
///    `(X v)_i = 0`.
/// 3. neither `X` nor `-X` row positive (and no zero or mixed rows):
///    `A = (e, 0, .., 0)`; every column of `X A Y` is a multiple of `X e`.
/// 4. `X` (or `-X`) row positive, `Y` (or `-Y`) not inverse nonnegative:
///    rows of `A` are a left null vector of `Y`, or minus a row of `Y^{-1}`
///    holding a negative entry; then `A Y <= 0`.
pub fn falsify_into_sp(map: &PreserverMap) -> Result<FalsifyCertificate> {
    let class = PreservedClass::Semipositive;
    let x = map.x();
    let (m, n) = (map.m(), map.n());

    if let Some(row) = (0..m).find(|&i| x.is_zero_row(i)) {
        return image_cert(
            map,
            class,
            FalsifyCase::ZeroRow,
            RatMatrix::ones(m, n),
            Evidence::ZeroRow { row },
        );
    }

    if let Some(i) = (0..m).find(|&i| map.x().row_vector(i).sign_profile().mixed()) {
        let v = balancing_positive_vector(x.row(i));
        let a = RatMatrix::from_columns(m, &vec![v; n])?;
        return image_cert(
            map,
            class,
            FalsifyCase::MixedRow,
            a,
            Evidence::ZeroRow { row: i },
        );
    }

    let direct = classify::is_row_positive(x);
    let negated = classify::is_row_positive(&-x);
    if !direct && !negated {
        let mut a = RatMatrix::zeros(m, n);
        for i in 0..m {
            a.set(i, 0, Rational::one());
        }
        let direction = x.apply(&RatVector::ones(m))?;
        return image_cert(
            map,
            class,
            FalsifyCase::OppositeRows,
            a,
            Evidence::ProportionalColumns { direction },
        );
    }

    let y = if direct { map.y().clone() } else { -map.y() };
    if classify::is_inverse_nonnegative(&y) {
        return Err(Error::InvalidInput(
            "L preserves semipositive matrices; nothing to falsify".into(),
        ));
    }
    match y.inverse() {
        Err(Error::Singular) => {
            // v^T Y = 0, scaled so some entry is positive.
            let mut v = null_vector(&y.transpose()).expect("singular matrix has a null vector");
            if !v.sign_profile().has_positive {
                v = -&v;
            }
            let a = RatMatrix::from_rows(vec![v.into_entries(); m])?;
            image_cert(map, class, FalsifyCase::SingularY, a, Evidence::Nonpositive)
        }
        Err(e) => Err(e),
        Ok(c) => {
            let (i, _) = first_negative(&c).expect("inverse is not nonnegative");
            let row = -&c.row_vector(i);
            let a = RatMatrix::from_rows(vec![row.into_entries(); m])?;
            image_cert(
                map,
                class,
                FalsifyCase::NegativeInverseEntry,
                a,
                Evidence::Nonpositive,
            )
        }
    }
}

/// Positive `v` with `row . v = 0`, for a row with both signs: weight `t` on
/// one entry and `1` elsewhere. With `s` the row sum and `p` the first
/// positive entry, `t = (x_p - s) / x_p` on `p` works when `s < x_p`;
/// otherwise the first negative entry `q` gives `t = (s - x_q) / |x_q| > 0`.
fn balancing_positive_vector(row: &[Rational]) -> RatVector {
    let sum: Rational = row.iter().sum();
    let p = row.iter().position(|x| x.is_positive()).expect("mixed row");
    let q = row.iter().position(|x| x.is_negative()).expect("mixed row");
    let k = if sum < row[p] { p } else { q };
    let rest = &sum - &row[k];
    let t = -rest / &row[k];
    debug_assert!(t.is_positive());
    let mut v = vec![Rational::one(); row.len()];
    v[k] = t;
    RatVector::new(v)
}

fn first_negative(a: &RatMatrix) -> Option<(usize, usize)> {
    (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| a.get(i, j).is_negative())
}

/// Certificate that a square `L` is not an into preserver of minimally
/// semipositive matrices.
///
/// * `X` or `Y` singular: `A = I`, and `X Y` is singular.
/// * neither `X` nor `-X` inverse nonnegative: `v` mixed with `X v >= 0`,
///   `w = -e_1`, `B` nonnegative invertible with `B v = Y w`, `A = B^{-1}`.
///   Then `L(A) w = X v >= 0` with `w` not nonnegative.
/// * `X` (resp. `-X`) inverse nonnegative but `Y` (resp. `-Y`) not: pick a
///   negative entry `c_ij` of `C = Y^{-1}`, set `w = e_j + delta e` with
///   `delta = |c_ij| / (2 (1 + max_k |(C e)_k|))`, so `w > 0` and `u = C w`
///   keeps `u_i < 0`; `v = X^{-1} w`, `B v = w` from the nonnegative
///   construction, `A = B^{-1}`. Then `L(A) u = w > 0`.
pub fn falsify_into_msp(map: &PreserverMap) -> Result<FalsifyCertificate> {
    if map.m() != map.n() {
        return Err(Error::Unsupported(
            "constructive into-MSP falsification needs a square matrix space".into(),
        ));
    }
    let class = PreservedClass::MinimallySemipositive;
    let n = map.n();
    let x = map.x();
    let y = map.y();

    let x_inv = match x.inverse() {
        Ok(inv) => inv,
        Err(Error::Singular) => return singular_factor(map),
        Err(e) => return Err(e),
    };
    if matches!(y.inverse(), Err(Error::Singular)) {
        return singular_factor(map);
    }

    let x_nonneg = x_inv.is_nonnegative();
    let x_nonpos = x_inv.is_nonpositive();
    if !x_nonneg && !x_nonpos {
        let v = mixed_sign_vector(x)?.vector;
        let w = -&RatVector::basis(n, 0);
        let target = y.apply(&w)?;
        let b = build_np(&v, &target)?.matrix;
        let a = b.inverse()?;
        let z = x.apply(&v)?;
        return image_cert(
            map,
            class,
            FalsifyCase::MixedSignVector,
            a,
            Evidence::VectorPair { u: w, z },
        );
    }

    // Work with the pair whose X factor is inverse nonnegative.
    let (xs, ys) = if x_nonneg {
        (x.clone(), y.clone())
    } else {
        (-x, -y)
    };
    let c = ys.inverse()?;
    if c.is_nonnegative() {
        return Err(Error::InvalidInput(
            "L preserves minimally semipositive matrices; nothing to falsify".into(),
        ));
    }
    let (i, j) = first_negative(&c).expect("checked above");
    let ce = c.apply(&RatVector::ones(n))?;
    let max_abs = ce
        .iter()
        .map(|t| t.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let two = Rational::from_integer(2.into());
    let delta = c.get(i, j).abs() / (two * (Rational::one() + max_abs));
    let w = RatVector::basis(n, j).add(&RatVector::ones(n).scale(&delta))?;
    let u = c.apply(&w)?;
    debug_assert!(u[i].is_negative());
    let v = xs.inverse()?.apply(&w)?;
    let b = build_pos(&v, &w)?.matrix;
    let a = b.inverse()?;
    image_cert(
        map,
        class,
        FalsifyCase::YNotInverseNonneg,
        a,
        Evidence::VectorPair { u, z: w },
    )
}

fn singular_factor(map: &PreserverMap) -> Result<FalsifyCertificate> {
    image_cert(
        map,
        PreservedClass::MinimallySemipositive,
        FalsifyCase::SingularFactor,
        RatMatrix::identity(map.n()),
        Evidence::Singular,
    )
}

/// Tall single-column maps (`m > 1 = n`, `Y = [y]`): a positive column `a`
/// whose image `y X a` is not positive.
pub(super) fn falsify_tall_column(map: &PreserverMap) -> Result<FalsifyCertificate> {
    let m = map.m();
    let y = map.y().get(0, 0).clone();
    let xs = if y.is_negative() {
        -map.x()
    } else {
        map.x().clone()
    };
    let mut a = RatVector::ones(m);
    if !y.is_zero() {
        let xe = xs.apply(&a)?;
        let offending = (0..m)
            .find_map(|i| {
                if xs.is_zero_row(i) {
                    Some(None)
                } else {
                    (0..m)
                        .find(|&k| xs.get(i, k).is_negative())
                        .map(|k| Some((i, k)))
                }
            })
            .ok_or_else(|| {
                Error::InvalidInput("L preserves minimally semipositive columns".into())
            })?;
        if let Some((i, k)) = offending {
            // (X a)_i = (X e)_i + t x_ik <= 0 for t >= (X e)_i / |x_ik|.
            let t = std::cmp::max(Rational::zero(), &xe[i] / xs.get(i, k).abs());
            a = a.add(&RatVector::basis(m, k).scale(&t))?;
        }
    }
    let a = RatMatrix::from_columns(m, &[a])?;
    image_cert(
        map,
        PreservedClass::MinimallySemipositive,
        FalsifyCase::PositiveColumn,
        a,
        Evidence::Classification,
    )
}

/// Samples MSP matrices looking for one whose image is not MSP.
pub(super) fn search_msp_counterexample(
    map: &PreserverMap,
    cfg: &GenConfig,
    trials: usize,
) -> Result<Option<FalsifyCertificate>> {
    let (m, n) = (map.m(), map.n());
    for trial in 0..trials {
        let mut generator = Generator::for_trial(cfg, trial as u64);
        let a = generator.gen_msp(m, n);
        let image = map.apply(&a)?;
        if !classify::is_minimally_semipositive(&image) {
            return image_cert(
                map,
                PreservedClass::MinimallySemipositive,
                FalsifyCase::RandomSearch,
                a,
                Evidence::Classification,
            )
            .map(Some);
        }
    }
    Ok(None)
}

/// For a map with singular `X` or `Y`: a semipositive `A` outside its range.
pub(super) fn not_surjective(map: &PreserverMap) -> Result<Option<FalsifyCertificate>> {
    let (m, n) = (map.m(), map.n());
    let (a, evidence) = if let Some(z) = null_vector(&map.x().transpose()) {
        let col = nudged_ones(&z);
        (
            RatMatrix::from_columns(m, &vec![col; n])?,
            Evidence::LeftNullVector { z },
        )
    } else if let Some(yv) = null_vector(map.y()) {
        let row = nudged_ones(&yv);
        (
            RatMatrix::from_rows(vec![row.into_entries(); m])?,
            Evidence::RightNullVector { y: yv },
        )
    } else {
        return Ok(None);
    };
    verified(
        FalsifyCertificate {
            class: PreservedClass::Semipositive,
            case: FalsifyCase::NotSurjective,
            a,
            violation: Violation::OutsideRange,
            evidence,
        },
        map,
    )
    .map(Some)
}

/// A positive vector `r` with `r . z != 0`, for `z != 0`.
fn nudged_ones(z: &RatVector) -> RatVector {
    let e = RatVector::ones(z.len());
    if !e.dot(z).expect("same length").is_zero() {
        return e;
    }
    let k = z.iter().position(|t| !t.is_zero()).expect("nonzero");
    e.add(&RatVector::basis(z.len(), k)).expect("same length")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balancing_vector_is_positive_and_orthogonal() {
        for row in [
            vec![1, -1],
            vec![1, 2, -1],
            vec![-3, 1, 1],
            vec![2, -2, 0],
            vec![5, -1, -1, 0],
        ] {
            let r = RatVector::from_i64(&row);
            let v = balancing_positive_vector(r.entries());
            assert!(v.is_positive(), "{row:?}");
            assert!(r.dot(&v).unwrap().is_zero(), "{row:?}");
        }
    }

    #[test]
    fn nudged_ones_hits_nonzero_product() {
        let z = RatVector::from_i64(&[1, -1]);
        let r = nudged_ones(&z);
        assert!(r.is_positive());
        assert!(!r.dot(&z).unwrap().is_zero());
    }
}
