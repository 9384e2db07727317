mod common;

use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use sts_core::random::{
    binomial_3graph, experiment_discrepancy, linearize, random_sts, triangle_removal, write_csv,
    ProcessOutcome,
};
use sts_core::search::{alpha_star_with, HoleSearchOptions, SearchBudget};
use sts_core::validate_steiner;

/// Index of `{a,b,c}` (ascending) among the 3-subsets of `0..n` in
/// lexicographic order.
fn triangle_rank(n: usize, t: [usize; 3]) -> usize {
    let mut rank = 0;
    let mut index = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if [a, b, c] == t {
                    rank = index;
                }
                index += 1;
            }
        }
    }
    rank
}

/// Pearson statistic for `counts` against equal expected frequencies.
fn pearson(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

#[test]
fn first_triangle_is_uniform() {
    const SAMPLES: u64 = 35_000;
    let mut counts = vec![0u64; 35];
    for seed in 0..SAMPLES {
        let ProcessOutcome::Complete(p) = triangle_removal(7, 1, seed).unwrap() else {
            panic!("one step cannot stick")
        };
        counts[triangle_rank(7, p.triples()[0].vertices())] += 1;
    }
    let stat = pearson(&counts);
    let critical = ChiSquared::new(34.0).unwrap().inverse_cdf(0.999);
    assert!(stat < critical, "chi-square {stat:.2} >= {critical:.2}");
}

#[test]
fn completed_seven_point_runs_are_steiner() {
    let mut complete = 0;
    for seed in 0..2_000 {
        if let ProcessOutcome::Complete(p) = triangle_removal(7, 7, seed).unwrap() {
            complete += 1;
            assert!(validate_steiner(p.to_system()).is_ok(), "seed {seed}");
        }
    }
    assert!(complete > 0);
}

#[test]
fn linearized_binomial_graphs_are_linear() {
    for seed in 0..1_000 {
        let g = binomial_3graph(20, 1.0 / 40.0, seed).unwrap();
        let lin = linearize(&g).to_system();
        let ts = common::triples(&lin);
        for (i, s) in ts.iter().enumerate() {
            for t in &ts[i + 1..] {
                assert!(
                    s.iter().filter(|v| t.contains(v)).count() < 2,
                    "seed {seed}"
                );
            }
        }
        assert!(lin.len() <= g.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn removal_prefixes_are_linear(n in 5usize..=19, frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let m = ((n * (n - 1) / 6) as f64 * frac) as usize;
        match triangle_removal(n, m, seed).unwrap() {
            ProcessOutcome::Complete(p) => {
                prop_assert_eq!(p.len(), m);
                for i in 0..=m {
                    prop_assert!(p.prefix(i).to_system().is_linear());
                }
            }
            ProcessOutcome::Stuck { removed } => prop_assert!(removed < m),
        }
    }

    #[test]
    fn processes_are_deterministic(n in 5usize..=15, seed in any::<u64>()) {
        let m = n * (n - 1) / 12;
        prop_assert_eq!(triangle_removal(n, m, seed).unwrap(), triangle_removal(n, m, seed).unwrap());
        prop_assert_eq!(binomial_3graph(n, 0.1, seed).unwrap(), binomial_3graph(n, 0.1, seed).unwrap());
    }
}

#[test]
fn random_systems_obey_the_hole_bound() {
    let honest = HoleSearchOptions {
        use_steiner_bound: false,
    };
    for n in [7, 9, 13] {
        for seed in 0..10 {
            let s = random_sts(n, seed, 100).unwrap();
            assert!(common::brute_is_steiner(&s));
            let r = alpha_star_with(&s, 3, SearchBudget::default(), honest).unwrap();
            assert!(r.exact);
            assert!(r.value < n / 3, "n = {n}, seed {seed}: {}", r.value);
        }
    }
}

#[test]
fn csv_is_identical_across_runs_and_workers() {
    let render = |workers: usize| {
        let rows =
            experiment_discrepancy(15, 8, 99, SearchBudget::default().with_parallelism(workers))
                .unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf, false).unwrap();
        buf
    };
    let first = render(1);
    assert_eq!(first, render(1));
    assert_eq!(first, render(4));
}
