mod common;

use alliance_core::alliance::{is_global_offensive_r_alliance, is_offensive_r_alliance, valid_r_range};
use alliance_core::bench::CorpusSpec;
use alliance_core::bounds::{
    ceil_half, fiedler_indicator_check, laplacian_matrix, laplacian_spectral_radius, spectral_lower_bound, SPECTRAL_TOL,
};
use alliance_core::solve::{min_dominating, min_global_offensive_alliance, min_offensive_alliance, SolveOptions};
use alliance_core::{generate, Graph, VertexSet};
use common::Brute;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

fn corpus() -> Vec<Graph> {
    CorpusSpec::standard().instances().unwrap().iter().map(|f| generate(f).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solvers_match_subset_enumeration(g in arb_graph(9)) {
        prop_assume!(g.m() > 0);
        let brute = Brute::new(&g);
        let opts = SolveOptions::default();
        for r in valid_r_range(&g).iter() {
            let oa = min_offensive_alliance(&g, r, &opts).unwrap();
            let goa = min_global_offensive_alliance(&g, r, &opts).unwrap();
            prop_assert_eq!(oa.optimum, brute.oa(r));
            prop_assert_eq!(goa.optimum, brute.goa(r));
            prop_assert!(is_offensive_r_alliance(&g, &oa.witness, r).unwrap().holds);
            prop_assert!(is_global_offensive_r_alliance(&g, &goa.witness, r).unwrap().holds);
        }
        prop_assert_eq!(min_dominating(&g, &opts).unwrap().optimum, brute.gamma_k(1));
    }

    #[test]
    fn predicate_matches_oracle(g in arb_graph(10), mask in any::<u32>(), r in -3i64..5) {
        let n = g.n();
        let mask = mask & ((1u32 << n) - 1);
        prop_assume!(mask != 0 && valid_r_range(&g).contains(r));
        let s = VertexSet::from_mask(n, mask as u64);
        let brute = Brute::new(&g);
        prop_assert_eq!(is_offensive_r_alliance(&g, &s, r).unwrap().holds, brute.is_oa(mask, r));
        prop_assert_eq!(is_global_offensive_r_alliance(&g, &s, r).unwrap().holds, brute.is_goa(mask, r));
    }

    #[test]
    fn power_iteration_matches_dense(g in arb_graph(14)) {
        prop_assume!(g.m() > 0);
        let mu = laplacian_spectral_radius(&g, SPECTRAL_TOL).unwrap().mu_star;
        let dense = nalgebra::SymmetricEigen::new(laplacian_matrix(&g)).eigenvalues.iter().copied().fold(f64::MIN, f64::max);
        prop_assert!((mu - dense).abs() <= 1e-7 * dense.max(1.0), "{} vs {}", mu, dense);
    }
}

#[test]
fn witnesses_meet_per_vertex_quota() {
    let opts = SolveOptions::default();
    for g in corpus() {
        for r in valid_r_range(&g).iter() {
            let w = min_global_offensive_alliance(&g, r, &opts).unwrap().witness;
            for v in w.complement().iter() {
                assert!(g.degree_in(v, &w) as i64 >= ceil_half(g.degree(v) as i64 + r));
            }
        }
    }
}

#[test]
fn indicator_quotients_stay_below_mu() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in corpus() {
        let n = g.n();
        let mu = laplacian_spectral_radius(&g, SPECTRAL_TOL).unwrap().mu_star;
        for _ in 0..200 {
            let mask = rng.gen_range(1..(1u64 << n) - 1);
            let s = VertexSet::from_mask(n, mask);
            assert!(fiedler_indicator_check(&g, &s, mu).unwrap(), "{s}");
        }
    }
}

#[test]
fn spectral_bound_monotone_in_r() {
    for g in corpus().into_iter().filter(|g| g.is_connected()) {
        let vals: Vec<i64> = valid_r_range(&g).iter().map(|r| spectral_lower_bound(&g, r).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{vals:?}");
    }
}
