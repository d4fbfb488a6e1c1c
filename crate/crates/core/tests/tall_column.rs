//! The single-column into-MSP rule is checked against brute-force
//! preservation: `m x 1` MSP matrices are exactly the positive columns, so a
//! map preserves them iff every probe column stays positive.

use semipos::genfuzz::{GenConfig, Generator};
use semipos::preserver::{into_msp_preserver, PreserverMap, Status};
use semipos::{RatMatrix, RatVector, Rational};

/// Positive columns `e + k e_j` for several `k`, plus `e`. A linear image of
/// every positive column is positive iff it is for these, because each row
/// functional is then probed along every coordinate direction.
fn probe_columns(m: usize) -> Vec<RatMatrix> {
    let mut out = vec![RatMatrix::ones(m, 1)];
    for j in 0..m {
        for k in [1i64, 10, 1000] {
            let mut entries = RatVector::ones(m).into_entries();
            entries[j] += Rational::from_integer(k.into());
            out.push(RatMatrix::from_columns(m, &[RatVector::new(entries)]).unwrap());
        }
    }
    out
}

fn sign_pattern_matrix(g: &mut Generator, m: usize) -> RatMatrix {
    let mut x = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            // Mostly nonnegative so that the Yes side is well represented.
            let v = match g.range(0, 9) {
                0 => -g.int_in(1, 3),
                1..=3 => 0,
                _ => g.int_in(1, 3),
            };
            x.set(i, j, Rational::from_integer(v.into()));
        }
    }
    if g.range(0, 3) == 0 {
        x = -&x;
    }
    x
}

#[test]
fn tall_verdict_matches_empirical_preservation() {
    let cfg = GenConfig::new(77);
    let (mut yes, mut no) = (0, 0);
    for t in 0..400 {
        let mut g = Generator::for_trial(&cfg, t);
        let m = g.range(2, 4);
        let x = sign_pattern_matrix(&mut g, m);
        let y_val = [-2i64, -1, 1, 3][g.range(0, 3)];
        let y = RatMatrix::from_i64(&[&[y_val]]);
        let map = PreserverMap::new(x.clone(), y).unwrap();
        let verdict = into_msp_preserver(&map).unwrap();
        let preserved = probe_columns(m)
            .iter()
            .all(|a| map.apply(a).unwrap().is_positive());
        match verdict.status {
            Status::Yes => {
                yes += 1;
                assert!(
                    preserved,
                    "Yes but a probe column fails for X =\n{x}\ny = {y_val}"
                );
            }
            Status::No => {
                no += 1;
                assert!(
                    !preserved,
                    "No but every probe column survives for X =\n{x}\ny = {y_val}"
                );
                assert!(verdict.certificate.unwrap().is_valid(&map));
            }
            Status::Unknown => panic!("single-column case must be decided"),
        }
    }
    assert!(yes >= 40 && no >= 40, "yes={yes} no={no}");
}
