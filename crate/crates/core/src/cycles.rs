//! Exact cycle and closed-walk counting.
//!
//! Simple cycles are enumerated by backtracking with a canonical form: every
//! cycle is generated exactly once, rooted at its smallest vertex with the
//! orientation that makes the second vertex smaller than the last. Closed
//! walks are grouped into equivalence classes under rotation and reversal.

use crate::graph::Graph;
use crate::spectral::trace_power;
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

/// Default node-expansion budget for cycle enumeration.
pub const DEFAULT_EXPANSION_BUDGET: u64 = 50_000_000;

/// Default vertex limit for closed-walk class enumeration.
pub const DEFAULT_WALK_VERTEX_LIMIT: usize = 6;

/// Hard cap on walk length for class enumeration.
pub const MAX_WALK_LENGTH: u32 = 8;

#[derive(Debug, Error, PartialEq)]
pub enum CyclesError {
    #[error("cycle length {k} out of range 3..={vertex_count}")]
    LengthOutOfRange { k: u32, vertex_count: usize },
    #[error("expansion budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("walk enumeration limited to {max_vertices} vertices and length {MAX_WALK_LENGTH}, got {vertex_count} vertices, length {k}")]
    WalkLimits {
        vertex_count: usize,
        k: u32,
        max_vertices: usize,
    },
    #[error("triangle count mismatch between routes: trace gives {trace_based}, enumeration gives {enumerated}")]
    InternalInconsistency { trace_based: u64, enumerated: u64 },
}

/// Triangle count by popcount over common neighborhoods; the cheap route,
/// used directly by exhaustive sweeps.
pub(crate) fn triangle_popcount(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let mut count = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if !g.is_adjacent(i, j) {
                continue;
            }
            // common neighbors above j close a triangle exactly once
            let above = if j + 1 >= 64 { 0 } else { !((1u64 << (j + 1)) - 1) };
            count += (g.neighbors(i) & g.neighbors(j) & above).count_ones() as u64;
        }
    }
    count
}

/// Number of triangles, computed two independent ways: direct enumeration of
/// adjacent vertex triples and tr A^3 / 6. A mismatch is a bug, not bad input.
pub fn count_triangles(g: &Graph) -> Result<u64, CyclesError> {
    let enumerated = triangle_popcount(g);
    let trace = trace_power(g, 3);
    let six_t = BigInt::from(6u64) * BigInt::from(enumerated);
    if trace != six_t {
        let trace_based = (trace / BigInt::from(6)).try_into().unwrap_or(u64::MAX);
        return Err(CyclesError::InternalInconsistency {
            trace_based,
            enumerated,
        });
    }
    Ok(enumerated)
}

/// Number of simple cycles of length exactly `k`, each counted once
/// (unrooted, undirected). Uses the default expansion budget.
pub fn count_simple_cycles(g: &Graph, k: u32) -> Result<u64, CyclesError> {
    count_simple_cycles_with_budget(g, k, DEFAULT_EXPANSION_BUDGET)
}

/// As [`count_simple_cycles`], with an explicit node-expansion budget.
pub fn count_simple_cycles_with_budget(g: &Graph, k: u32, budget: u64) -> Result<u64, CyclesError> {
    let n = g.vertex_count();
    if k < 3 || k as usize > n {
        return Err(CyclesError::LengthOutOfRange { k, vertex_count: n });
    }
    let mut state = CycleSearch {
        g,
        k: k as usize,
        budget,
        expansions: 0,
        count: 0,
        path: Vec::with_capacity(k as usize),
        visited: 0u64,
    };
    for root in 0..n {
        state.path.clear();
        state.path.push(root);
        state.visited = 1 << root;
        state.extend(root)?;
    }
    Ok(state.count)
}

struct CycleSearch<'a> {
    g: &'a Graph,
    k: usize,
    budget: u64,
    expansions: u64,
    count: u64,
    path: Vec<usize>,
    visited: u64,
}

impl CycleSearch<'_> {
    /// Grows the path by one vertex. Vertices below the root are excluded,
    /// which roots each cycle at its minimum; the `path[1] < path[k-1]`
    /// check at closure keeps exactly one of the two orientations.
    fn extend(&mut self, root: usize) -> Result<(), CyclesError> {
        let last = *self.path.last().unwrap();
        if self.path.len() == self.k {
            if self.g.is_adjacent(last, root) && self.path[1] < self.path[self.k - 1] {
                self.count += 1;
            }
            return Ok(());
        }
        let above_root = if root >= 63 { 0 } else { !((1u64 << (root + 1)) - 1) };
        let mut candidates = self.g.neighbors(last) & above_root & !self.visited;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(CyclesError::BudgetExceeded { budget: self.budget });
            }
            self.path.push(v);
            self.visited |= 1 << v;
            self.extend(root)?;
            self.visited &= !(1 << v);
            self.path.pop();
        }
        Ok(())
    }
}

/// tr A^p minus 2p times the simple p-cycle count. Zero exactly when closed
/// p-walks and p-cycles coincide up to the 2p symmetries, which holds at
/// p = 3 and fails above it; the gap measures the surplus of degenerate
/// closed walks.
pub fn walk_cycle_gap(g: &Graph, p: u32) -> Result<BigInt, CyclesError> {
    walk_cycle_gap_with_budget(g, p, DEFAULT_EXPANSION_BUDGET)
}

/// As [`walk_cycle_gap`], with an explicit enumeration budget.
pub fn walk_cycle_gap_with_budget(g: &Graph, p: u32, budget: u64) -> Result<BigInt, CyclesError> {
    let cycles = count_simple_cycles_with_budget(g, p, budget)?;
    Ok(trace_power(g, p) - BigInt::from(2 * p as u64) * BigInt::from(cycles))
}

/// Number of closed k-walk equivalence classes under rotation and reversal,
/// by explicit enumeration with canonical forms. Uses the default vertex
/// limit.
pub fn closed_walk_classes(g: &Graph, k: u32) -> Result<u64, CyclesError> {
    closed_walk_classes_with_limit(g, k, DEFAULT_WALK_VERTEX_LIMIT)
}

/// As [`closed_walk_classes`], with an explicit vertex limit.
pub fn closed_walk_classes_with_limit(
    g: &Graph,
    k: u32,
    max_vertices: usize,
) -> Result<u64, CyclesError> {
    let n = g.vertex_count();
    if !(1..=MAX_WALK_LENGTH).contains(&k) || n > max_vertices {
        return Err(CyclesError::WalkLimits {
            vertex_count: n,
            k,
            max_vertices,
        });
    }
    let k = k as usize;
    let mut classes: HashSet<Vec<u8>> = HashSet::new();
    let mut walk = vec![0u8; k];
    // Enumerate only walks whose first vertex is the walk's minimum; every
    // rotation class contains such a representative.
    for start in 0..n {
        walk[0] = start as u8;
        extend_walk(g, &mut walk, 1, start, &mut classes);
    }
    Ok(classes.len() as u64)
}

fn extend_walk(g: &Graph, walk: &mut Vec<u8>, depth: usize, start: usize, classes: &mut HashSet<Vec<u8>>) {
    let k = walk.len();
    let last = walk[depth - 1] as usize;
    if depth == k {
        if g.is_adjacent(last, start) {
            classes.insert(canonical_walk(walk));
        }
        return;
    }
    let at_least_start = if start == 0 { u64::MAX } else { !((1u64 << start) - 1) };
    let mut candidates = g.neighbors(last) & at_least_start;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        walk[depth] = v as u8;
        extend_walk(g, walk, depth + 1, start, classes);
    }
}

/// Minimum over all rotations of the walk and of its reversal.
fn canonical_walk(walk: &[u8]) -> Vec<u8> {
    let k = walk.len();
    let mut best: Option<Vec<u8>> = None;
    let mut candidate = vec![0u8; k];
    for rev in [false, true] {
        for shift in 0..k {
            for (i, slot) in candidate.iter_mut().enumerate() {
                let src = if rev { (k + shift - i) % k } else { (shift + i) % k };
                *slot = walk[src];
            }
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate.clone());
            }
        }
    }
    best.unwrap()
}

/// Exact counts of simple cycles by length.
#[derive(Debug, Clone, Serialize)]
pub struct CycleCounts {
    pub triangle_count: u64,
    pub by_length: BTreeMap<u32, u64>,
}

/// Counts simple cycles for every length `3..=k_max`. The triangle slot is
/// cross-checked against the trace route and the backtracking route.
pub fn cycle_counts(g: &Graph, k_max: u32, budget: u64) -> Result<CycleCounts, CyclesError> {
    if (k_max as usize) > g.vertex_count() || k_max < 3 {
        return Err(CyclesError::LengthOutOfRange {
            k: k_max,
            vertex_count: g.vertex_count(),
        });
    }
    let triangle_count = count_triangles(g)?;
    let mut by_length = BTreeMap::new();
    for k in 3..=k_max {
        by_length.insert(k, count_simple_cycles_with_budget(g, k, budget)?);
    }
    if by_length[&3] != triangle_count {
        return Err(CyclesError::InternalInconsistency {
            trace_based: triangle_count,
            enumerated: by_length[&3],
        });
    }
    Ok(CycleCounts {
        triangle_count,
        by_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(pairs: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(pairs, None).unwrap()
    }

    #[test]
    fn triangle_counts_on_small_graphs() {
        assert_eq!(count_triangles(&Graph::complete(3)).unwrap(), 1);
        assert_eq!(count_triangles(&Graph::complete(4)).unwrap(), 4);
        assert_eq!(count_triangles(&Graph::complete(6)).unwrap(), 20);
        assert_eq!(count_triangles(&graph(&[(0, 1), (1, 2), (2, 3)])).unwrap(), 0);
        let two_shared = graph(&[(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)]);
        assert_eq!(count_triangles(&two_shared).unwrap(), 2);
    }

    #[test]
    fn complete_graph_cycle_counts() {
        // k-cycles in K_n: C(n,k) * k!/(2k)
        let count = |n: u64, k: u64| {
            let choose = (0..k).fold(1u64, |a, i| a * (n - i) / (i + 1));
            let perm = (1..=k).product::<u64>();
            choose * perm / (2 * k)
        };
        for n in 3..=7usize {
            for k in 3..=n as u32 {
                assert_eq!(
                    count_simple_cycles(&Graph::complete(n), k).unwrap(),
                    count(n as u64, k as u64),
                    "K_{n}, k={k}"
                );
            }
        }
        assert_eq!(count_simple_cycles(&Graph::complete(5), 5).unwrap(), 12);
    }

    #[test]
    fn cycle_counting_handles_sparse_shapes() {
        let square = graph(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(count_simple_cycles(&square, 4).unwrap(), 1);
        assert_eq!(count_simple_cycles(&square, 3).unwrap(), 0);
        let two_triangles = graph(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(count_simple_cycles(&two_triangles, 3).unwrap(), 2);
        let labels_reversed = graph(&[(5, 4), (4, 3), (3, 5)]);
        assert_eq!(count_simple_cycles(&labels_reversed, 3).unwrap(), 1);
    }

    #[test]
    fn cycle_length_preconditions() {
        let g = Graph::complete(4);
        assert!(matches!(
            count_simple_cycles(&g, 2),
            Err(CyclesError::LengthOutOfRange { .. })
        ));
        assert!(matches!(
            count_simple_cycles(&g, 5),
            Err(CyclesError::LengthOutOfRange { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_reports_cleanly() {
        let g = Graph::complete(8);
        assert_eq!(
            count_simple_cycles_with_budget(&g, 8, 10),
            Err(CyclesError::BudgetExceeded { budget: 10 })
        );
    }

    #[test]
    fn walk_cycle_gap_vanishes_at_three() {
        for g in [
            Graph::complete(4),
            Graph::complete(6),
            graph(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]),
        ] {
            assert_eq!(walk_cycle_gap(&g, 3).unwrap(), BigInt::from(0));
        }
    }

    #[test]
    fn walk_cycle_gap_on_k5_at_five() {
        assert_eq!(walk_cycle_gap(&Graph::complete(5), 5).unwrap(), BigInt::from(900));
    }

    #[test]
    fn closed_walk_classes_small_cases() {
        assert_eq!(closed_walk_classes(&Graph::complete(3), 3).unwrap(), 1);
        assert_eq!(closed_walk_classes(&Graph::complete(3), 2).unwrap(), 3);
        let edge = graph(&[(0, 1)]);
        assert_eq!(closed_walk_classes(&edge, 2).unwrap(), 1);
        // one class per edge at k = 2 in general
        let path = graph(&[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(closed_walk_classes(&path, 2).unwrap(), 3);
    }

    #[test]
    fn closed_walk_classes_respect_limits() {
        assert!(matches!(
            closed_walk_classes(&Graph::complete(7), 4),
            Err(CyclesError::WalkLimits { .. })
        ));
        assert!(closed_walk_classes_with_limit(&Graph::complete(7), 4, 7).is_ok());
        assert!(matches!(
            closed_walk_classes(&Graph::complete(4), 9),
            Err(CyclesError::WalkLimits { .. })
        ));
    }

    #[test]
    fn walk_classes_sandwiched_by_trace() {
        for g in [
            Graph::complete(5),
            graph(&[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]),
        ] {
            for k in 1..=6u32 {
                let tr: u64 = trace_power(&g, k).to_string().parse().unwrap();
                if tr == 0 {
                    continue;
                }
                let classes = closed_walk_classes(&g, k).unwrap();
                assert!(tr <= 2 * k as u64 * classes, "lower bound failed k={k}");
                assert!(2 * classes <= tr, "upper bound failed k={k}");
            }
        }
    }

    #[test]
    fn cycle_counts_bundle() {
        let counts = cycle_counts(&Graph::complete(5), 5, DEFAULT_EXPANSION_BUDGET).unwrap();
        assert_eq!(counts.triangle_count, 10);
        assert_eq!(counts.by_length[&3], 10);
        assert_eq!(counts.by_length[&4], 15);
        assert_eq!(counts.by_length[&5], 12);
    }
}
