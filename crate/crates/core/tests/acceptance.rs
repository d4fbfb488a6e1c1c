//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use semipos::classify;
use semipos::construct::build_np;
use semipos::genfuzz::campaign::{self, CampaignSummary};
use semipos::genfuzz::{msp_basis_search, GenConfig, Generator};
use semipos::lp::{equality_feasible_nonneg, feasible_nonneg};
use semipos::preserver::{into_msp_preserver, PreserverMap, Status};
use semipos::{RatMatrix, RatVector};

use common::{vertex_feasible, Q};

const SEED: u64 = 20_240_601;

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

type Criterion = fn() -> (bool, String);

fn campaign(name: &str, trials: usize) -> CampaignSummary {
    campaign::run(name, SEED, trials).expect("known campaign")
}

fn describe(s: &CampaignSummary) -> String {
    let mut out = format!("{}/{} checks over {} trials", s.passed, s.checks, s.trials);
    if let Some(first) = s.failures.first() {
        out.push_str(&format!("; first failure: {first}"));
    }
    out
}

fn worked_example() -> (bool, String) {
    let v = RatVector::from_i64(&[1, 0, -5, -1]);
    let w = RatVector::from_i64(&[3, 2, -10, 0]);
    let expected =
        RatMatrix::from_i64(&[&[3, 0, 0, 0], &[2, 1, 0, 0], &[0, 0, 1, 5], &[1, 0, 0, 1]]);
    match build_np(&v, &w) {
        Ok(built) => {
            let bv_ok = built.matrix.apply(&v).map(|bv| bv == w).unwrap_or(false);
            let same = built.matrix == expected;
            (
                same && bv_ok,
                format!("B = [{}], Bv = w: {bv_ok}", rows_inline(&built.matrix)),
            )
        }
        Err(e) => (false, e.to_string()),
    }
}

fn rows_inline(m: &RatMatrix) -> String {
    m.to_string().lines().collect::<Vec<_>>().join("; ")
}

fn np_property() -> (bool, String) {
    let s = campaign("np", 1000);
    let missing: Vec<String> = ('a'..='i')
        .map(|c| format!("step2-{c}"))
        .chain(('a'..='e').map(|c| format!("step3-{c}")))
        .filter(|k| s.count(k) == 0)
        .collect();
    let ok = s.ok() && s.checks == 2000 && missing.is_empty();
    (
        ok,
        format!("{}; unobserved cases: {missing:?}", describe(&s)),
    )
}

fn pos_property() -> (bool, String) {
    let s = campaign("pos", 1000);
    (s.ok() && s.checks == 1000, describe(&s))
}

fn rect_property() -> (bool, String) {
    let s = campaign("rect", 500);
    (s.ok() && s.checks == 500, describe(&s))
}

fn mixed_sign_property() -> (bool, String) {
    let s = campaign("mixed-sign", 500);
    let combos = s.count("combination");
    (
        s.ok() && s.checks == 500 && combos >= 20,
        format!("{}; combination path {combos} times", describe(&s)),
    )
}

fn msp_cross_check() -> (bool, String) {
    let s = campaign("msp-equiv", 300);
    let ok = s.ok() && s.trials == 300 && s.count("msp") > 0 && s.count("not-msp") > 0;
    (
        ok,
        format!(
            "{}; {} MSP, {} not",
            describe(&s),
            s.count("msp"),
            s.count("not-msp")
        ),
    )
}

fn into_msp_soundness() -> (bool, String) {
    let s = campaign("into-msp-sound", 200);
    let ok = s.ok() && s.checks == 200 * (1 + campaign::SAMPLES_PER_MAP) && s.count("negated") > 0;
    (ok, describe(&s))
}

fn into_msp_falsification() -> (bool, String) {
    let s = campaign("into-msp-falsify", 200);
    (
        s.ok() && s.checks == 400,
        format!("{}; cases {:?}", describe(&s), s.counts),
    )
}

fn into_sp_both_sides() -> (bool, String) {
    let sound = campaign("into-sp-sound", 200);
    let fals = campaign("into-sp-falsify", 200);
    let cases = ["case-i", "case-ii", "case-iii", "case-iv"];
    let cases_ok = cases.iter().all(|c| fals.count(c) >= 10);
    let ok = sound.ok()
        && sound.checks == 200 * (1 + campaign::SAMPLES_PER_MAP)
        && fals.ok()
        && fals.checks == 400
        && cases_ok;
    let counts: Vec<String> = cases
        .iter()
        .map(|c| format!("{c}={}", fals.count(c)))
        .collect();
    (
        ok,
        format!(
            "soundness {}; falsification {}; {}",
            describe(&sound),
            describe(&fals),
            counts.join(" ")
        ),
    )
}

fn onto_consistency() -> (bool, String) {
    let s = campaign("onto-msp", 100);
    let ok = s.ok() && s.count("monomial") == 100 && s.count("non-monomial") == 100;
    (ok, describe(&s))
}

fn tall_counterexample() -> (bool, String) {
    let x = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]);
    let y = RatMatrix::from_i64(&[&[1]]);
    let monomial = classify::is_monomial(&x).unwrap();
    let map = PreserverMap::new(x, y).unwrap();
    let verdict = into_msp_preserver(&map).unwrap();
    (
        verdict.status == Status::Yes && !monomial,
        format!(
            "into-MSP verdict {:?} ({}), X monomial: {monomial}",
            verdict.status, verdict.reason
        ),
    )
}

fn zero_entry_counterexample() -> (bool, String) {
    let x = RatMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[1, 1, 1]]);
    let mono = classify::is_monomial(&x).unwrap() || classify::is_monomial(&-&x).unwrap();
    // v = e + y with y >= 0 turns {v >= e, (Xv)_i = 0} into X_i y = -(X e)_i.
    let xe = x.apply(&RatVector::ones(3)).unwrap();
    let infeasible = (0..3)
        .filter(|&i| {
            let row = x.select_rows(&[i]);
            let rhs = RatVector::new(vec![-xe[i].clone()]);
            !equality_feasible_nonneg(&row, &rhs).unwrap().is_feasible()
        })
        .count();
    (
        !mono && infeasible == 3,
        format!("±X monomial: {mono}; {infeasible}/3 rows infeasible"),
    )
}

fn basis_search() -> (bool, String) {
    let shapes = [(1, 1), (2, 2), (3, 2), (3, 3), (4, 3)];
    let cfg = GenConfig::new(SEED);
    let mut notes = Vec::new();
    let mut ok = true;
    for (m, n) in shapes {
        let found = msp_basis_search(m, n, &cfg, 10 * m * n);
        let good = match &found {
            Ok(basis) => {
                let all_msp = basis.iter().all(classify::is_minimally_semipositive);
                let stacked = RatMatrix::from_columns(
                    m * n,
                    &basis.iter().map(|b| b.vectorize()).collect::<Vec<_>>(),
                );
                let independent = stacked.map(|s| s.rank() == m * n).unwrap_or(false);
                basis.len() == m * n && all_msp && independent
            }
            Err(_) => false,
        };
        ok &= good;
        notes.push(format!("{m}x{n}:{}", if good { "ok" } else { "failed" }));
    }
    (ok, notes.join(" "))
}

fn lp_oracle() -> (bool, String) {
    let cfg = GenConfig::with_bound(SEED, 3);
    let mut agree = 0;
    let mut feasible = 0;
    let mut first_bad = None;
    for t in 0..200u64 {
        let mut g = Generator::for_trial(&cfg, t);
        let m = g.range(1, 7);
        let n = g.range(1, 8 - m);
        let a = g.int_matrix(m, n);
        let b = g.int_vector(m);
        let rows: Vec<Vec<Q>> = (0..m).map(|i| a.row(i).to_vec()).collect();
        let (simplex, oracle) = if t % 2 == 0 {
            (
                feasible_nonneg(&a, &b),
                vertex_feasible(&rows, b.entries(), n),
            )
        } else {
            // M y = c as the pair M y >= c, -M y >= -c.
            let mut both = rows.clone();
            both.extend(
                rows.iter()
                    .map(|r| r.iter().map(|v| -v).collect::<Vec<_>>()),
            );
            let mut rhs = b.entries().to_vec();
            rhs.extend(b.iter().map(|v| -v));
            (
                equality_feasible_nonneg(&a, &b),
                vertex_feasible(&both, &rhs, n),
            )
        };
        let simplex = simplex.map(|r| r.is_feasible());
        if simplex.as_ref().ok() == Some(&oracle.is_some()) {
            agree += 1;
            feasible += oracle.is_some() as usize;
        } else if first_bad.is_none() {
            first_bad = Some(format!(
                "trial {t}: simplex {simplex:?}, oracle {}",
                oracle.is_some()
            ));
        }
    }
    (
        agree == 200,
        format!(
            "{agree}/200 agree ({feasible} feasible){}",
            first_bad.map(|s| format!("; {s}")).unwrap_or_default()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Criterion); 14] = [
        (1, "worked example reproduction", worked_example),
        (2, "mixed-sign construction property", np_property),
        (3, "nonnegative construction property", pos_property),
        (4, "rectangular construction property", rect_property),
        (5, "mixed-sign vector property", mixed_sign_property),
        (6, "MSP characterization cross-check", msp_cross_check),
        (7, "into-MSP soundness", into_msp_soundness),
        (8, "into-MSP falsification", into_msp_falsification),
        (9, "into-SP soundness and falsification", into_sp_both_sides),
        (10, "onto-MSP consistency", onto_consistency),
        (
            11,
            "tall non-monomial into-MSP preserver",
            tall_counterexample,
        ),
        (
            12,
            "no positive vector with a zero image entry",
            zero_entry_counterexample,
        ),
        (13, "MSP basis search", basis_search),
        (14, "LP oracle agreement", lp_oracle),
    ];
    let start = Instant::now();
    let outcomes: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(id, title, f)| {
                scope.spawn(move || {
                    let (pass, detail) = std::panic::catch_unwind(f)
                        .unwrap_or_else(|_| (false, "panicked".to_string()));
                    Outcome {
                        id,
                        title,
                        pass,
                        detail,
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("joined"))
            .collect()
    });
    let mut failed = 0;
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += (!o.pass) as usize;
        println!("{tag} criterion {:>2}: {} | {}", o.id, o.title, o.detail);
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        outcomes.len() - failed,
        outcomes.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
