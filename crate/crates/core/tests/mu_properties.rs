use std::sync::OnceLock;

use proptest::prelude::*;
use quadsg::*;

const N_MAX: u64 = 60_000;

fn table() -> &'static MuTable {
    static TABLE: OnceLock<MuTable> = OnceLock::new();
    TABLE.get_or_init(|| MuTable::build(N_MAX).unwrap())
}

/// Unbounded min-cost knapsack with coins `C(i,2)` at cost `i`, looping over
/// coins on the outside. No pruning.
fn coin_order_dp(n_max: usize) -> Vec<u64> {
    let mut dp = vec![u64::MAX; n_max + 1];
    dp[0] = 0;
    let mut i = 2usize;
    while i * (i - 1) / 2 <= n_max {
        let t = i * (i - 1) / 2;
        for n in t..=n_max {
            if dp[n - t] != u64::MAX {
                dp[n] = dp[n].min(dp[n - t] + i as u64);
            }
        }
        i += 1;
    }
    dp
}

#[test]
fn table_matches_coin_order_dp() {
    let reference = coin_order_dp(3000);
    assert_eq!(&table().values()[..=3000], &reference[..]);
}

#[test]
fn table_matches_dfs_oracle() {
    for n in 0..=300 {
        assert_eq!(table().mu(n).unwrap(), mu_oracle(n).unwrap(), "n = {n}");
    }
}

#[test]
fn incremental_growth_matches() {
    let mut t = MuTable::build(1).unwrap();
    for step in [7, 100, 101, 4000, 3999, 12_345] {
        t.extend_to(step).unwrap();
    }
    assert_eq!(t.values(), &table().values()[..=12_345]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn subadditive(n1 in 0..N_MAX / 2, n2 in 0..N_MAX / 2) {
        let t = table();
        prop_assert!(t.mu(n1 + n2).unwrap() <= t.mu(n1).unwrap() + t.mu(n2).unwrap());
    }

    #[test]
    fn sandwiched_by_bounds(n in 1..=N_MAX) {
        let mu = table().mu(n).unwrap() as f64;
        prop_assert!(lower_bound(n).unwrap() <= mu + 1e-9);
        prop_assert!(mu <= gauss_bound(n) + 1e-9);
        prop_assert!(mu <= combined_bound(n).unwrap() + 1e-9);
    }

    #[test]
    fn exact_on_triangular_numbers(i in 2u64..=346) {
        prop_assert_eq!(table().mu(triangular(i).unwrap()).unwrap(), i);
    }

    #[test]
    fn oracle_agrees_on_samples(n in 301u64..=4000) {
        prop_assert_eq!(table().mu(n).unwrap(), mu_oracle(n).unwrap());
    }

    #[test]
    fn f_inverts_triangular(x in 1u64..=3_000_000) {
        let t = triangular(x).unwrap();
        prop_assert!((f_of(t as f64).unwrap() - x as f64).abs() <= 1e-9);
        prop_assert_eq!(triangular(f_of(t as f64).unwrap().round() as u64).unwrap(), t);
    }

    #[test]
    fn lift_rows_switch_once(n in 0..2000u64, m in 0..200u64) {
        let t = table();
        prop_assert_eq!(t.lift_contains(m, n).unwrap(), m >= t.mu(n).unwrap());
    }
}
