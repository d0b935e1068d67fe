mod common;

use plane_curves::exactla::{kernel_dim, rank, rank_bareiss, QMatrix};
use plane_curves::qpoly::{q, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..=9, 1usize..=9).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec((-4i64..=4, 1i64..=3), c), r).prop_map(|rows| {
            rows.into_iter()
                .map(|row| row.into_iter().map(|(n, d)| q(n) / q(d)).collect())
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(common::fixed_seed(128))]

    #[test]
    fn rank_matches_naive_elimination(rows in matrix()) {
        let m = QMatrix::from_rows(rows.clone());
        let expect = common::naive_rank(&rows);
        prop_assert_eq!(rank(&m), expect);
        prop_assert_eq!(rank_bareiss(&m), expect);
        prop_assert_eq!(rank(&m.transpose()), expect);
        prop_assert_eq!(kernel_dim(&m), m.cols() - expect);
    }

    #[test]
    fn row_operations_keep_rank(rows in matrix(), i in 0usize..9, j in 0usize..9, k in -5i64..=5) {
        let n = rows.len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let mut changed = rows.clone();
        let add: Vec<Rational> = rows[j].iter().map(|v| v * q(k)).collect();
        for (a, b) in changed[i].iter_mut().zip(add) {
            *a += b;
        }
        changed.swap(0, j);
        prop_assert_eq!(rank(&QMatrix::from_rows(changed)), rank(&QMatrix::from_rows(rows)));
    }

    #[test]
    fn products_bound_rank(seed in any::<u64>(), inner in 0usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = common::low_rank_matrix(&mut rng, 8, 7, inner);
        let r = rank(&QMatrix::from_rows(rows.clone()));
        prop_assert!(r <= inner);
        prop_assert_eq!(r, common::naive_rank(&rows));
    }
}

/// Matrices above the size threshold take the multi-modular route.
#[test]
fn modular_route_agrees_with_bareiss() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (rows, cols, inner) in [(66, 70, 40), (80, 60, 60), (65, 65, 0), (70, 64, 64)] {
        let entries = common::low_rank_matrix(&mut rng, rows, cols, inner);
        let m = QMatrix::from_rows(entries);
        let r = rank(&m);
        assert_eq!(r, rank_bareiss(&m), "{rows}x{cols}");
        assert_eq!(r, rank(&m.transpose()));
        assert!(r <= inner);
    }
}
