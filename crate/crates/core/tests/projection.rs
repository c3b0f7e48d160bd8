mod oracles;

use proptest::prelude::*;
use prom_core::optim::{budget_excess, project, solve_lambda, BISECTION_TOL};

fn instance(max_len: usize) -> impl Strategy<Value = (Vec<f64>, usize)> {
    prop::collection::vec(-1.5f64..2.5, 1..=max_len).prop_flat_map(|t| {
        let d = t.len();
        (Just(t), 0..=d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matches_active_set_brute_force((t, s) in instance(6)) {
        let got = project(&t, s).unwrap();
        let want = oracles::projection_active_set(&t, s as f64);
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() <= 1e-6, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn matches_breakpoint_solve((t, s) in instance(12)) {
        let got = project(&t, s).unwrap();
        let want = oracles::projection_breakpoints(&t, s as f64);
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() <= 1e-6, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn feasible((t, s) in instance(40)) {
        let theta = project(&t, s).unwrap();
        prop_assert!(theta.iter().all(|&v| (0.0..=1.0).contains(&v)));
        prop_assert!(theta.iter().sum::<f64>() <= s as f64 + 1e-6);
    }

    #[test]
    fn root_is_accurate((t, s) in instance(40)) {
        prop_assume!(s > 0);
        let lambda = solve_lambda(&t, s).unwrap();
        prop_assert!(budget_excess(&t, lambda, s).abs() <= BISECTION_TOL);
    }

    #[test]
    fn excess_is_non_increasing((t, s) in instance(20), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(budget_excess(&t, lo, s) >= budget_excess(&t, hi, s));
    }

    #[test]
    fn idempotent((t, s) in instance(20)) {
        let once = project(&t, s).unwrap();
        let twice = project(&once, s).unwrap();
        for (a, b) in once.iter().zip(&twice) {
            prop_assert!((a - b).abs() <= 1e-8);
        }
    }
}
