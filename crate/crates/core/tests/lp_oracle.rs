mod common;

use proptest::prelude::*;
use semipos::lp::{equality_feasible_nonneg, feasible_nonneg};
use semipos::{RatMatrix, RatVector};

use common::{q, satisfies, vertex_feasible, Q};

fn system() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>, usize)> {
    (1usize..=5, 1usize..=4).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), m),
            prop::collection::vec(-3i64..=3, m),
            Just(n),
        )
    })
}

fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| q(v)).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn inequality_status_matches_vertex_enumeration((rows, b, n) in system()) {
        let a = RatMatrix::from_i64(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
        let bv = RatVector::from_i64(&b);
        let bq: Vec<Q> = b.iter().map(|&v| q(v)).collect();
        let result = feasible_nonneg(&a, &bv).unwrap();
        let oracle = vertex_feasible(&to_q(&rows), &bq, n);
        prop_assert_eq!(result.is_feasible(), oracle.is_some());
        if let Some(x) = result.witness() {
            prop_assert!(satisfies(&to_q(&rows), &bq, x.entries()));
        }
    }

    #[test]
    fn equality_status_matches_vertex_enumeration((rows, b, n) in system()) {
        let a = RatMatrix::from_i64(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
        let bv = RatVector::from_i64(&b);
        let mut both = to_q(&rows);
        both.extend(to_q(&rows).into_iter().map(|r| r.into_iter().map(|v| -v).collect()));
        let mut rhs: Vec<Q> = b.iter().map(|&v| q(v)).collect();
        rhs.extend(b.iter().map(|&v| q(-v)));
        let result = equality_feasible_nonneg(&a, &bv).unwrap();
        prop_assert_eq!(result.is_feasible(), vertex_feasible(&both, &rhs, n).is_some());
    }
}

#[test]
fn oracle_agrees_on_hand_examples() {
    // x1 - x2 >= 1, x2 - x1 >= 1 has no solution.
    let rows = vec![vec![q(1), q(-1)], vec![q(-1), q(1)]];
    assert!(vertex_feasible(&rows, &[q(1), q(1)], 2).is_none());
    // x1 + x2 >= 2 does.
    let x = vertex_feasible(&[vec![q(1), q(1)]], &[q(2)], 2).unwrap();
    assert!(satisfies(&[vec![q(1), q(1)]], &[q(2)], &x));
}
