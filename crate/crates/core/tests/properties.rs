//! Randomized invariants over small graphs and rational vectors.

use cyclebound::bounds::{power_sum_max_even, power_sum_max_odd};
use cyclebound::cycles::{closed_walk_classes, count_triangles, walk_cycle_gap};
use cyclebound::graph::{
    complete_edge_pairs, enumerate_graphs, enumerate_graphs_range, enumeration_count, Graph,
};
use cyclebound::powersum::{g_threshold, two_level_solutions, PowerSumProblem};
use cyclebound::spectral::{adjacency_spectrum, spectral_trace, trace_power};
use cyclebound::symfun::{elementary_from_roots, power_sums_from_elementary, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

/// An arbitrary labeled graph on 2..=max_vertices vertices.
fn arb_graph(max_vertices: usize) -> impl Strategy<Value = Graph> {
    (2..=max_vertices).prop_flat_map(|n| {
        let pairs = complete_edge_pairs(n);
        let m = pairs.len();
        (Just(n), Just(pairs), 0u32..(1u32 << m)).prop_map(|(n, pairs, mask)| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(a, b))| (a as usize, b as usize))
                .collect();
            Graph::from_edge_list(&edges, Some(n)).unwrap()
        })
    })
}

/// Vertex and edge counts that admit at least one graph.
fn arb_enumeration_shape() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=6).prop_flat_map(|n| (Just(n), 0..=n * (n - 1) / 2))
}

fn arb_rationals(max_len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-50i64..=50, 1i64..=12), 1..=max_len).prop_map(|parts| {
        parts
            .into_iter()
            .map(|(a, b)| Rational::new(a.into(), b.into()))
            .collect()
    })
}

proptest! {
    /// Eigenvalue power sums agree with the exact integer traces.
    #[test]
    fn spectral_traces_match_exact(g in arb_graph(7), k in 1u32..=6) {
        let s = adjacency_spectrum(&g, 1e-12).unwrap();
        let exact = trace_power(&g, k).to_f64().unwrap();
        let via_eigs = spectral_trace(&s, k);
        prop_assert!((via_eigs - exact).abs() <= 1e-6 * exact.abs().max(1.0));
    }

    /// Closed-walk classes sit between tr A^k / 2k and tr A^k / 2: a class
    /// never holds more than 2k rooted walks, and a walk can only equal its
    /// own one-step rotation at a loop, so every class holds at least 2.
    #[test]
    fn walk_classes_sandwiched_by_trace(g in arb_graph(6), k in 2u32..=6) {
        let trace = trace_power(&g, k);
        let classes = BigInt::from(closed_walk_classes(&g, k).unwrap());
        prop_assert!(&classes * 2u32 <= trace);
        prop_assert!(&classes * (2 * k) >= trace);
    }

    /// At length 3 every closed walk traces a triangle: the surplus is zero.
    /// Cycle lengths are only defined up to the vertex count.
    #[test]
    fn no_walk_surplus_at_length_three(g in arb_graph(7)) {
        if g.vertex_count() >= 3 {
            prop_assert!(walk_cycle_gap(&g, 3).unwrap().is_zero());
        }
        let t = count_triangles(&g).unwrap();
        prop_assert_eq!(trace_power(&g, 3), BigInt::from(6 * t));
    }

    /// Rank-range enumeration partitions the full enumeration exactly.
    #[test]
    fn enumeration_splits_cleanly(shape in arb_enumeration_shape(), percent in 0u8..=100) {
        let (n, e) = shape;
        let total = enumeration_count(n, e).unwrap();
        let cut = total * u128::from(percent) / 100;
        let full: Vec<Graph> = enumerate_graphs(n, e).unwrap().collect();
        let mut split: Vec<Graph> = enumerate_graphs_range(n, e, 0, cut).unwrap().collect();
        split.extend(enumerate_graphs_range(n, e, cut, total).unwrap());
        prop_assert_eq!(full.len() as u128, total);
        prop_assert_eq!(full, split);
    }

    /// Every two-level point solves its own Lagrange system and stays on the
    /// zero-sum hyperplane.
    #[test]
    fn two_level_points_are_stationary(n in 2usize..=12, p in 3u32..=11) {
        let problem = PowerSumProblem::signed(n, p).unwrap();
        for s in two_level_solutions(n, p) {
            prop_assert!(s.stationarity_residual(&problem) <= 1e-9);
            prop_assert!((s.n1 as f64 * s.alpha1 + s.n2 as f64 * s.alpha2).abs() <= 1e-12);
        }
    }

    /// The dimension threshold g is strictly decreasing and stays in (1/2, 1).
    #[test]
    fn threshold_decreases(p1 in 2.01f64..=40.0, dp in 0.01f64..=10.0) {
        let a = g_threshold(p1);
        let b = g_threshold(p1 + dp);
        prop_assert!(a.g_value > b.g_value);
        prop_assert!(b.g_value > 0.5 && a.g_value < 1.0);
    }

    /// Closed-form maxima dominate every two-level candidate.
    #[test]
    fn closed_form_dominates_candidates(n in 3u64..=12, p in 3u32..=10) {
        let closed = if p % 2 == 1 {
            power_sum_max_odd(n, p)
        } else {
            power_sum_max_even(n, p).unwrap()
        };
        for s in two_level_solutions(n as usize, p) {
            prop_assert!(s.objective <= closed + 1e-9 * closed.abs().max(1.0));
        }
    }

    /// Newton's recurrence inverts the elementary symmetric functions exactly.
    #[test]
    fn power_sums_round_trip(xs in arb_rationals(6), k_max in 1u32..=10) {
        let es = elementary_from_roots(&xs);
        let ts = power_sums_from_elementary(&es, k_max);
        prop_assert_eq!(ts.len(), k_max as usize);
        for k in 1..=k_max as usize {
            let direct: Rational = xs.iter().map(|x| x.pow(k as i32)).sum();
            prop_assert_eq!(ts[k - 1].clone(), direct);
        }
    }

    /// Centered vectors have e1 = 0 and e2 = -t2/2 exactly.
    #[test]
    fn centered_vectors_pin_first_two_elementaries(raw in arb_rationals(6)) {
        prop_assume!(raw.len() >= 2);
        let n = BigInt::from(raw.len());
        let mean: Rational = raw.iter().sum::<Rational>() / Rational::from(n);
        let xs: Vec<Rational> = raw.iter().map(|x| x - &mean).collect();
        let es = elementary_from_roots(&xs);
        let t2: Rational = xs.iter().map(|x| x * x).sum();
        prop_assert!(es[0].is_zero());
        prop_assert_eq!(es[1].clone(), -t2 / Rational::from(BigInt::from(2)));
    }
}
