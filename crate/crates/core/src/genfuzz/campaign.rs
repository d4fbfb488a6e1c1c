//! Randomized verification campaigns.
//!
//! Each campaign draws its inputs for trial `t` from
//! [`Generator::for_trial`]`(cfg, t)`, runs the operation under test, and
//! re-checks the result against the defining properties using only
//! `ratmat` and `classify`. Failures are collected rather than raised.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::classify;
use crate::construct::{
    build_np, build_pos, build_rect, mixed_sign_vector, MiddleRowCase, MixedSignPath,
};
use crate::error::{Error, Result};
use crate::preserver::{
    falsify_into_msp, falsify_into_sp, into_msp_preserver, into_sp_preserver, onto_msp_preserver,
    FalsifyCase, FalsifyCertificate, PreserverMap, Status,
};
use crate::ratmat::{RatMatrix, RatVector, Rational};

use super::{GenConfig, Generator};

/// Campaign names accepted by [`run`], with their default trial counts.
pub const CAMPAIGNS: &[(&str, usize)] = &[
    ("np", 1000),
    ("pos", 1000),
    ("rect", 500),
    ("mixed-sign", 500),
    ("msp-equiv", 300),
    ("into-msp-sound", 200),
    ("into-msp-falsify", 200),
    ("into-sp-sound", 200),
    ("into-sp-falsify", 200),
    ("onto-msp", 100),
];

/// Samples of `A` drawn per map in the soundness campaigns.
pub const SAMPLES_PER_MAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignSummary {
    pub name: String,
    pub seed: u64,
    pub trials: usize,
    /// Individual property checks performed.
    pub checks: usize,
    /// Checks that held.
    pub passed: usize,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
    /// How often each construction case or branch fired.
    pub counts: BTreeMap<String, usize>,
}

impl CampaignSummary {
    pub fn ok(&self) -> bool {
        self.checks == self.passed
    }

    pub fn count(&self, key: &str) -> usize {
        self.counts.get(key).copied().unwrap_or(0)
    }
}

impl fmt::Display for CampaignSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} seed={} trials={} checks {}/{}",
            self.name, self.seed, self.trials, self.passed, self.checks
        )
    }
}

const MAX_RECORDED_FAILURES: usize = 10;

struct Tally {
    summary: CampaignSummary,
}

impl Tally {
    fn new(name: &str, seed: u64, trials: usize) -> Self {
        Tally {
            summary: CampaignSummary {
                name: name.to_string(),
                seed,
                trials,
                checks: 0,
                passed: 0,
                failures: Vec::new(),
                counts: BTreeMap::new(),
            },
        }
    }

    fn check(&mut self, ok: bool, trial: usize, what: impl FnOnce() -> String) {
        self.summary.checks += 1;
        if ok {
            self.summary.passed += 1;
        } else if self.summary.failures.len() < MAX_RECORDED_FAILURES {
            self.summary
                .failures
                .push(format!("trial {trial}: {}", what()));
        }
    }

    fn error(&mut self, trial: usize, err: Error) {
        self.check(false, trial, || err.to_string());
    }

    fn bump(&mut self, key: impl Into<String>) {
        *self.summary.counts.entry(key.into()).or_insert(0) += 1;
    }

    fn finish(self) -> CampaignSummary {
        self.summary
    }
}

/// Runs campaign `name` with `trials` trials.
pub fn run(name: &str, seed: u64, trials: usize) -> Result<CampaignSummary> {
    let cfg = GenConfig::new(seed);
    let mut tally = Tally::new(name, seed, trials);
    let body: fn(&mut Tally, &GenConfig, usize) -> Result<()> = match name {
        "np" => np_trial,
        "pos" => pos_trial,
        "rect" => rect_trial,
        "mixed-sign" => mixed_sign_trial,
        "msp-equiv" => msp_equiv_trial,
        "into-msp-sound" => into_msp_sound_trial,
        "into-msp-falsify" => into_msp_falsify_trial,
        "into-sp-sound" => into_sp_sound_trial,
        "into-sp-falsify" => into_sp_falsify_trial,
        "onto-msp" => onto_msp_trial,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown campaign {other:?}; expected one of {}",
                CAMPAIGNS
                    .iter()
                    .map(|(n, _)| *n)
                    .collect::<Vec<_>>()
                    .join(", ")
            )))
        }
    };
    for t in 0..trials {
        if let Err(e) = body(&mut tally, &cfg, t) {
            tally.error(t, e);
        }
    }
    Ok(tally.finish())
}

/// `B >= 0`, `det B != 0`, `B v = w`.
fn invertible_map_holds(b: &RatMatrix, v: &RatVector, w: &RatVector) -> Result<bool> {
    Ok(b.is_nonnegative() && !b.det()?.is_zero() && &b.apply(v)? == w)
}

/// 0 for positive, 1 for negative, 2 for zero.
fn sign_slot(x: &Rational) -> usize {
    if x.is_positive() {
        0
    } else if x.is_negative() {
        1
    } else {
        2
    }
}

fn np_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let n = g.range(2, 8);
    let v = g.mixed_vector(n);
    let w = g.nonzero_vector(n);
    let built = build_np(&v, &w)?;
    let ok = invertible_map_holds(&built.matrix, &v, &w)?;
    tally.check(ok, t, || {
        format!("build_np({v}; {w}) violated B >= 0, det B != 0 or Bv = w")
    });

    let trace = &built.trace;
    let vp = v.permuted(&trace.v_order);
    let wp = w.permuted(&trace.w_order);
    let signs_match = trace.middle.iter().enumerate().all(|(k, case)| {
        let i = k + 1;
        MiddleRowCase::ALL[3 * sign_slot(&wp[i]) + sign_slot(&vp[i])] == *case
    });
    tally.check(signs_match, t, || {
        "trace disagrees with the sign pattern".into()
    });
    tally.bump(format!("step1-{}", trace.first));
    for case in &trace.middle {
        tally.bump(format!("step2-{case}"));
    }
    tally.bump(format!("step3-{}", trace.last));
    Ok(())
}

fn pos_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let n = g.range(1, 8);
    let v = g.nonneg_nonzero_vector(n);
    let w = g.positive_vector(n);
    let built = build_pos(&v, &w)?;
    let normalized = built.normalized();
    let diagonal_nonzero = (0..n).all(|i| !normalized.get(i, i).is_zero());
    let ok = invertible_map_holds(&built.matrix, &v, &w)?
        && normalized.is_lower_triangular()
        && diagonal_nonzero;
    tally.check(ok, t, || format!("build_pos({v}; {w}) failed its checks"));
    tally.bump(format!("n={n}"));
    Ok(())
}

fn rect_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let n = g.range(2, 8);
    let m = g.range(1, n - 1);
    let (v, w) = if g.coin() {
        (g.mixed_vector(n), g.int_vector(m))
    } else {
        (g.nonneg_nonzero_vector(n), g.positive_vector(m))
    };
    let (b, branch) = build_rect(&v, &w)?;
    let ok =
        b.rows() == m && b.cols() == n && b.is_nonnegative() && b.rank() == m && b.apply(&v)? == w;
    tally.check(ok, t, || format!("build_rect({v}; {w}) failed its checks"));
    tally.bump(format!("{branch:?}"));
    Ok(())
}

/// Invertible `X` such that neither `X` nor `-X` is inverse nonnegative.
/// Odd trials build `X^{-1}` from sign-pure columns, which forces the
/// combination path.
fn mixed_sign_target(g: &mut Generator, n: usize, sign_pure: bool) -> RatMatrix {
    if sign_pure {
        let base = g.gen_inverse_nonneg(n).inverse().expect("invertible");
        let mut signs: Vec<bool> = (0..n).map(|_| g.coin()).collect();
        signs[0] = true;
        signs[n - 1] = false;
        g.shuffle(&mut signs);
        let mut c = base.clone();
        for j in 0..n {
            if !signs[j] {
                for i in 0..n {
                    c.set(i, j, -base.get(i, j).clone());
                }
            }
        }
        return c.inverse().expect("invertible");
    }
    loop {
        let x = g.int_matrix(n, n);
        if let Ok(inv) = x.inverse() {
            if !inv.is_nonnegative() && !inv.is_nonpositive() {
                return x;
            }
        }
    }
}

fn mixed_sign_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let n = g.range(2, 6);
    let x = mixed_sign_target(&mut g, n, t % 2 == 1);
    let r = mixed_sign_vector(&x)?;
    let ok = r.vector.sign_profile().mixed() && x.apply(&r.vector)?.is_nonnegative();
    tally.check(ok, t, || format!("mixed_sign_vector failed for X =\n{x}"));
    tally.bump(match r.path {
        MixedSignPath::Column { .. } => "column",
        MixedSignPath::Combination { .. } => "combination",
    });
    Ok(())
}

/// Small-integer `m x n` matrix. `family` 0 is uniform on `[-3, 3]`, 1 stacks
/// a permuted triangular Z-matrix (which has a nonnegative inverse) on top of
/// uniform rows, 2 is uniform on `[0, 3]`.
fn small_int_matrix(g: &mut Generator, m: usize, n: usize, family: usize) -> RatMatrix {
    let mut a = RatMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            let v = match family {
                2 => g.int_in(0, 3),
                _ => g.int_in(-3, 3),
            };
            a.set(i, j, Rational::from_integer(v.into()));
        }
    }
    if family == 1 {
        for i in 0..n {
            for j in 0..n {
                let v = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => g.int_in(1, 3),
                    std::cmp::Ordering::Greater => -g.int_in(0, 3),
                    std::cmp::Ordering::Less => 0,
                };
                a.set(i, j, Rational::from_integer(v.into()));
            }
        }
        let mut rows: Vec<usize> = (0..m).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        g.shuffle(&mut rows);
        g.shuffle(&mut cols);
        a = a.select_rows(&rows).select_columns(&cols);
    }
    a
}

fn msp_equiv_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let n = g.range(2, 4);
    let m = g.range(n, 5);
    let a = small_int_matrix(&mut g, m, n, t % 3);
    let fast = classify::is_minimally_semipositive(&a);
    let slow = classify::msp_by_deletion(&a);
    tally.check(fast == slow, t, || {
        format!("left-inverse and deletion tests disagree on\n{a}")
    });
    if a.is_square() {
        let inv_route = a.inverse().map(|inv| inv.is_nonnegative()).unwrap_or(false);
        tally.check(inv_route == fast, t, || {
            format!("inverse route disagrees on\n{a}")
        });
        tally.bump("square");
    }
    tally.bump(if fast { "msp" } else { "not-msp" });
    Ok(())
}

fn maybe_negated(x: RatMatrix, y: RatMatrix, negate: bool) -> Result<PreserverMap> {
    if negate {
        PreserverMap::new(-&x, -&y)
    } else {
        PreserverMap::new(x, y)
    }
}

fn into_msp_sound_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let n = g.range(1, 4);
    let x = g.gen_inverse_nonneg(n);
    let y = g.gen_inverse_nonneg(n);
    let map = maybe_negated(x, y, t % 2 == 1)?;
    let verdict = into_msp_preserver(&map)?;
    tally.check(verdict.status == Status::Yes, t, || {
        "verdict is not Yes".into()
    });
    for _ in 0..SAMPLES_PER_MAP {
        let a = g.gen_msp(n, n);
        let image = map.apply(&a)?;
        tally.check(classify::is_minimally_semipositive(&image), t, || {
            format!("X A Y is not MSP for A =\n{a}")
        });
    }
    tally.bump(if t % 2 == 1 { "negated" } else { "direct" });
    Ok(())
}

/// Square matrix that is singular: a random matrix with a repeated row.
fn singular_matrix(g: &mut Generator, n: usize) -> RatMatrix {
    let mut a = g.int_matrix(n, n);
    if n == 1 {
        return RatMatrix::zeros(1, 1);
    }
    let (src, dst) = (0, g.range(1, n - 1));
    for j in 0..n {
        a.set(dst, j, a.get(src, j).clone());
    }
    a
}

fn not_inverse_nonneg(g: &mut Generator, n: usize) -> RatMatrix {
    loop {
        let y = g.int_matrix(n, n);
        if !classify::is_inverse_nonnegative(&y) {
            return y;
        }
    }
}

fn check_certificate(
    tally: &mut Tally,
    t: usize,
    map: &PreserverMap,
    cert: &FalsifyCertificate,
    in_class: fn(&RatMatrix) -> bool,
) -> Result<()> {
    let image = map.apply(&cert.a)?;
    let ok = cert.is_valid(map) && in_class(&cert.a) && !in_class(&image);
    tally.check(ok, t, || {
        format!("certificate failed re-verification ({})", cert.case)
    });
    tally.bump(cert.case.to_string());
    Ok(())
}

fn into_msp_falsify_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let n = g.range(2, 4);
    let map = match t % 4 {
        0 => loop {
            let map = PreserverMap::new(g.int_matrix(n, n), g.int_matrix(n, n))?;
            if into_msp_preserver(&map)?.status == Status::No {
                break map;
            }
        },
        1 => PreserverMap::new(g.gen_inverse_nonneg(n), not_inverse_nonneg(&mut g, n))?,
        2 => {
            let y = not_inverse_nonneg(&mut g, n);
            PreserverMap::new(-&g.gen_inverse_nonneg(n), -&y)?
        }
        _ => {
            if g.coin() {
                PreserverMap::new(singular_matrix(&mut g, n), g.int_matrix(n, n))?
            } else {
                PreserverMap::new(g.gen_inverse_nonneg(n), singular_matrix(&mut g, n))?
            }
        }
    };
    let verdict = into_msp_preserver(&map)?;
    tally.check(verdict.status == Status::No, t, || {
        "verdict is not No".into()
    });
    let cert = falsify_into_msp(&map)?;
    check_certificate(tally, t, &map, &cert, classify::is_minimally_semipositive)
}

fn into_sp_sound_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let m = g.range(1, 4);
    let n = g.range(1, 4);
    let x = g.row_positive(m, m);
    let y = g.gen_inverse_nonneg(n);
    let map = maybe_negated(x, y, t % 2 == 1)?;
    let verdict = into_sp_preserver(&map)?;
    tally.check(verdict.status == Status::Yes, t, || {
        "verdict is not Yes".into()
    });
    for _ in 0..SAMPLES_PER_MAP {
        let a = g.gen_sp(m, n).matrix;
        let image = map.apply(&a)?;
        tally.check(classify::is_semipositive(&image), t, || {
            format!("X A Y is not semipositive for A =\n{a}")
        });
    }
    tally.bump(if t % 2 == 1 { "negated" } else { "direct" });
    Ok(())
}

/// `X` whose rows are each nonnegative or nonpositive (nonzero), with both
/// kinds present.
fn opposite_rows(g: &mut Generator, m: usize) -> RatMatrix {
    let base = g.row_positive(m, m);
    let mut flip: Vec<bool> = (0..m).map(|_| g.coin()).collect();
    flip[0] = true;
    flip[m - 1] = false;
    g.shuffle(&mut flip);
    let rows = (0..m)
        .map(|i| {
            let r = base.row_vector(i);
            if flip[i] {
                (-&r).into_entries()
            } else {
                r.into_entries()
            }
        })
        .collect();
    RatMatrix::from_rows(rows).expect("rectangular")
}

fn into_sp_falsify_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let m = g.range(2, 4);
    let n = g.range(1, 4);
    let map = match t % 4 {
        0 => {
            let mut x = g.int_matrix(m, m);
            let r = g.range(0, m - 1);
            for j in 0..m {
                x.set(r, j, Default::default());
            }
            PreserverMap::new(x, g.int_matrix(n, n))?
        }
        1 => {
            let mut x = loop {
                let x = g.int_matrix(m, m);
                if (0..m).all(|i| !x.is_zero_row(i)) {
                    break x;
                }
            };
            let r = g.range(0, m - 1);
            let (p, q) = (g.range(0, m - 1), g.range(0, m - 1));
            let q = if p == q { (q + 1) % m } else { q };
            x.set(r, p, g.positive_rational());
            x.set(r, q, -g.positive_rational());
            PreserverMap::new(x, g.int_matrix(n, n))?
        }
        2 => PreserverMap::new(opposite_rows(&mut g, m), g.int_matrix(n, n))?,
        _ => {
            let y = if g.coin() {
                singular_matrix(&mut g, n)
            } else {
                not_inverse_nonneg(&mut g, n)
            };
            let x = g.row_positive(m, m);
            if g.coin() {
                PreserverMap::new(-&x, -&y)?
            } else {
                PreserverMap::new(x, y)?
            }
        }
    };
    let verdict = into_sp_preserver(&map)?;
    tally.check(verdict.status == Status::No, t, || {
        "verdict is not No".into()
    });
    let cert = falsify_into_sp(&map)?;
    check_certificate(tally, t, &map, &cert, classify::is_semipositive)?;
    let case_group = match cert.case {
        FalsifyCase::ZeroRow => "case-i",
        FalsifyCase::MixedRow => "case-ii",
        FalsifyCase::OppositeRows => "case-iii",
        _ => "case-iv",
    };
    tally.bump(case_group);
    Ok(())
}

fn onto_msp_trial(tally: &mut Tally, cfg: &GenConfig, t: usize) -> Result<()> {
    let mut g = Generator::for_trial(cfg, t as u64);
    let n = g.range(1, 4);
    let negate = t % 2 == 1;
    let map = maybe_negated(g.gen_monomial(n), g.gen_monomial(n), negate)?;
    let verdict = onto_msp_preserver(&map)?;
    tally.check(verdict.status == Status::Yes, t, || {
        "monomial pair not accepted".into()
    });
    let inverse = map.inverse()?;
    let into_both = into_msp_preserver(&map)?.status == Status::Yes
        && into_msp_preserver(&inverse)?.status == Status::Yes;
    tally.check(into_both, t, || {
        "onto Yes without into Yes for L and L^-1".into()
    });
    for _ in 0..SAMPLES_PER_MAP {
        let a = g.gen_msp(n, n);
        let forward = classify::is_minimally_semipositive(&map.apply(&a)?);
        let backward = classify::is_minimally_semipositive(&inverse.apply(&a)?);
        tally.check(forward && backward, t, || {
            format!("L or L^-1 left MSP on\n{a}")
        });
    }
    tally.bump("monomial");

    // Inverse nonnegative but not monomial.
    let n = g.range(2, 4);
    let x = loop {
        let x = g.gen_inverse_nonneg(n);
        if !classify::is_monomial(&x)? {
            break x;
        }
    };
    let y = if g.coin() {
        g.gen_monomial(n)
    } else {
        g.gen_inverse_nonneg(n)
    };
    let map = maybe_negated(x, y, negate)?;
    let verdict = onto_msp_preserver(&map)?;
    let cert_ok = verdict
        .certificate
        .as_ref()
        .is_some_and(|c| c.is_valid(&map));
    tally.check(verdict.status == Status::No && cert_ok, t, || {
        "non-monomial inverse-nonnegative X not rejected".into()
    });
    tally.bump("non-monomial");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_campaign_runs_a_few_trials() {
        for (name, _) in CAMPAIGNS {
            let s = run(name, 11, 8).unwrap();
            assert!(s.ok(), "{s}: {:?}", s.failures);
            assert!(s.checks >= 8, "{s}");
        }
    }

    #[test]
    fn unknown_campaign() {
        assert!(matches!(run("nope", 1, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn campaigns_are_reproducible() {
        assert_eq!(run("np", 3, 20).unwrap(), run("np", 3, 20).unwrap());
    }
}
