//! Exhaustive verification sweeps over small labeled graphs.
//!
//! Each sweep walks every labeled graph in a parameter range, checks an
//! inequality on each instance, and reports violations plus the extremal
//! witnesses it found. Sweeps partition the enumeration rank space into
//! chunks that workers process independently; the merge keeps enumeration
//! order, so parallel and serial runs produce identical reports.

use crate::cycles::{closed_walk_classes, triangle_popcount, CyclesError};
use crate::graph::{enumeration_count, enumerate_graphs_range, Graph, GraphError};
use crate::spectral::trace_power;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;
use thiserror::Error;

/// Default cap on the number of graphs a sweep may visit.
pub const DEFAULT_SWEEP_BUDGET: u128 = 50_000_000;

/// Hard vertex cap for edge-layer sweeps; 2^28 pairs is already desk-scale.
pub const MAX_SWEEP_VERTICES: usize = 8;

/// Vertex and length caps for the walk-class sweep, which enumerates every
/// closed walk of every graph.
pub const MAX_WALK_SWEEP_VERTICES: usize = 6;
pub const MAX_WALK_SWEEP_LENGTH: u32 = 6;

/// Ranks per work unit; small enough to balance, large enough to amortize
/// the unranking cost at a chunk boundary.
const CHUNK_RANKS: u128 = 4096;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("average-triangle sweep needs n >= 3, got {0}")]
    NTooSmall(usize),
    #[error("{vertex_max} vertices host at most {available} edges, need {edge_count}")]
    Infeasible {
        vertex_max: usize,
        edge_count: usize,
        available: usize,
    },
    #[error("sweep needs at least one edge")]
    NoEdges,
    #[error("vertex budget for this sweep is {max}, got {given}")]
    VertexBudget { given: usize, max: usize },
    #[error("walk sweep length must be in 1..={max}, got {given}")]
    LengthBudget { given: u32, max: u32 },
    #[error("sweep would visit {instances} instances, over the budget of {budget}")]
    BudgetExceeded { instances: u128, budget: u128 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cycles(#[from] CyclesError),
}

/// One graph that breaks a claimed inequality, with what went wrong.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub graph: Graph,
    pub detail: String,
}

/// Outcome of one exhaustive sweep.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Stable claim identifier, matching the CLI verify grammar.
    pub claim: String,
    pub params: BTreeMap<String, u64>,
    pub instances_checked: u64,
    /// True exactly when `violations` is empty.
    pub verified: bool,
    pub violations: Vec<Violation>,
    /// Graphs attaining equality (or the maximum), in enumeration order.
    pub witnesses: Vec<Graph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

/// Exact maximum triangle count over an edge layer, with every maximizer.
#[derive(Debug, Clone, Serialize)]
pub struct MaxTrianglesReport {
    pub edge_count: usize,
    pub vertex_max: usize,
    pub max_triangles: u64,
    pub instances_checked: u64,
    pub witnesses: Vec<Graph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

/// A rank range of one edge layer, processed by a single worker.
struct Unit {
    edge_count: usize,
    start: u128,
    end: u128,
}

/// Splits the given edge layers into rank chunks and totals the instances.
fn build_units(
    vertex_count: usize,
    edge_counts: impl IntoIterator<Item = usize>,
    chunk: u128,
) -> Result<(Vec<Unit>, u128), GraphError> {
    let mut units = Vec::new();
    let mut total: u128 = 0;
    for edge_count in edge_counts {
        let count = enumeration_count(vertex_count, edge_count)?;
        total += count;
        let mut start = 0u128;
        while start < count {
            let end = (start + chunk).min(count);
            units.push(Unit {
                edge_count,
                start,
                end,
            });
            start = end;
        }
    }
    Ok((units, total))
}

fn check_budget(instances: u128, budget: u128) -> Result<u64, OracleError> {
    if instances > budget {
        return Err(OracleError::BudgetExceeded { instances, budget });
    }
    Ok(instances as u64)
}

struct SweepPartial {
    checked: u64,
    violations: Vec<Violation>,
    witnesses: Vec<Graph>,
}

/// Checks that over all labeled graphs with 1..=n(n-1)/2 edges on up to
/// `vertex_max` vertices, triple the triangle count never exceeds (n-2)
/// times the edge count, and that equality forces the non-isolated part to
/// be the complete graph on n vertices. Uses the default budget.
pub fn verify_triangle_average(n: usize, vertex_max: usize) -> Result<VerificationReport, OracleError> {
    verify_triangle_average_with_budget(n, vertex_max, DEFAULT_SWEEP_BUDGET)
}

/// As [`verify_triangle_average`] with an explicit instance budget.
pub fn verify_triangle_average_with_budget(
    n: usize,
    vertex_max: usize,
    budget: u128,
) -> Result<VerificationReport, OracleError> {
    triangle_average_sweep(n, vertex_max, budget, CHUNK_RANKS)
}

fn triangle_average_sweep(
    n: usize,
    vertex_max: usize,
    budget: u128,
    chunk: u128,
) -> Result<VerificationReport, OracleError> {
    let started = Instant::now();
    if n < 3 {
        return Err(OracleError::NTooSmall(n));
    }
    if vertex_max > MAX_SWEEP_VERTICES {
        return Err(OracleError::VertexBudget {
            given: vertex_max,
            max: MAX_SWEEP_VERTICES,
        });
    }
    let edge_max = n * (n - 1) / 2;
    let available = vertex_max * (vertex_max.max(1) - 1) / 2;
    if available < edge_max {
        return Err(OracleError::Infeasible {
            vertex_max,
            edge_count: edge_max,
            available,
        });
    }
    let (units, total) = build_units(vertex_max, 1..=edge_max, chunk)?;
    check_budget(total, budget)?;
    let cap = (n - 2) as u64;
    let partials: Result<Vec<SweepPartial>, OracleError> = units
        .par_iter()
        .map(|unit| {
            let mut partial = SweepPartial {
                checked: 0,
                violations: Vec::new(),
                witnesses: Vec::new(),
            };
            let graphs =
                enumerate_graphs_range(vertex_max, unit.edge_count, unit.start, unit.end)?;
            for g in graphs {
                partial.checked += 1;
                let lhs = 3 * triangle_popcount(&g);
                let rhs = cap * unit.edge_count as u64;
                if lhs > rhs {
                    partial.violations.push(Violation {
                        detail: format!(
                            "3T = {lhs} exceeds (n-2)E = {rhs} at E = {}",
                            unit.edge_count
                        ),
                        graph: g,
                    });
                } else if lhs == rhs {
                    let support = g.non_isolated();
                    if support.len() == n && g.induces_complete(&support) {
                        partial.witnesses.push(g);
                    } else {
                        partial.violations.push(Violation {
                            detail: format!(
                                "equality 3T = (n-2)E = {rhs} at a graph other than the complete graph on {n} vertices"
                            ),
                            graph: g,
                        });
                    }
                }
            }
            Ok(partial)
        })
        .collect();
    let mut checked = 0u64;
    let mut violations = Vec::new();
    let mut witnesses = Vec::new();
    for partial in partials? {
        checked += partial.checked;
        violations.extend(partial.violations);
        witnesses.extend(partial.witnesses);
    }
    let params: BTreeMap<String, u64> = [
        ("n".to_string(), n as u64),
        ("vertex_max".to_string(), vertex_max as u64),
        ("edge_min".to_string(), 1),
        ("edge_max".to_string(), edge_max as u64),
    ]
    .into_iter()
    .collect();
    Ok(VerificationReport {
        claim: "thm2".to_string(),
        params,
        instances_checked: checked,
        verified: violations.is_empty(),
        violations,
        witnesses,
        wall_time_ms: Some(started.elapsed().as_millis()),
    })
}

/// Exact maximum number of triangles among labeled graphs with exactly
/// `edge_count` edges on up to `vertex_max` vertices, with every graph
/// attaining the maximum. Uses the default budget.
pub fn max_triangles_for_edges(
    edge_count: usize,
    vertex_max: usize,
) -> Result<MaxTrianglesReport, OracleError> {
    max_triangles_with_budget(edge_count, vertex_max, DEFAULT_SWEEP_BUDGET)
}

/// As [`max_triangles_for_edges`] with an explicit instance budget.
pub fn max_triangles_with_budget(
    edge_count: usize,
    vertex_max: usize,
    budget: u128,
) -> Result<MaxTrianglesReport, OracleError> {
    max_triangles_sweep(edge_count, vertex_max, budget, CHUNK_RANKS)
}

fn max_triangles_sweep(
    edge_count: usize,
    vertex_max: usize,
    budget: u128,
    chunk: u128,
) -> Result<MaxTrianglesReport, OracleError> {
    let started = Instant::now();
    if edge_count == 0 {
        return Err(OracleError::NoEdges);
    }
    if vertex_max > MAX_SWEEP_VERTICES {
        return Err(OracleError::VertexBudget {
            given: vertex_max,
            max: MAX_SWEEP_VERTICES,
        });
    }
    let available = vertex_max * (vertex_max.max(1) - 1) / 2;
    if available < edge_count {
        return Err(OracleError::Infeasible {
            vertex_max,
            edge_count,
            available,
        });
    }
    let (units, total) = build_units(vertex_max, [edge_count], chunk)?;
    // two passes: find the maximum, then collect every maximizer; counting
    // only the first pass keeps instances_checked equal to the layer size
    let instances = check_budget(total, budget)?;
    let layer_max: Result<Vec<u64>, OracleError> = units
        .par_iter()
        .map(|unit| {
            let graphs =
                enumerate_graphs_range(vertex_max, unit.edge_count, unit.start, unit.end)?;
            Ok(graphs.map(|g| triangle_popcount(&g)).max().unwrap_or(0))
        })
        .collect();
    let max_triangles = layer_max?.into_iter().max().unwrap_or(0);
    let witness_lists: Result<Vec<Vec<Graph>>, OracleError> = units
        .par_iter()
        .map(|unit| {
            let graphs =
                enumerate_graphs_range(vertex_max, unit.edge_count, unit.start, unit.end)?;
            Ok(graphs
                .filter(|g| triangle_popcount(g) == max_triangles)
                .collect())
        })
        .collect();
    let witnesses: Vec<Graph> = witness_lists?.into_iter().flatten().collect();
    Ok(MaxTrianglesReport {
        edge_count,
        vertex_max,
        max_triangles,
        instances_checked: instances,
        witnesses,
        wall_time_ms: Some(started.elapsed().as_millis()),
    })
}

/// Checks the walk-class sandwich tr A^k <= 2k * classes and
/// 2 * classes <= tr A^k on every labeled graph on `vertex_max` vertices,
/// for every length 1..=k_max, skipping (but counting) zero-trace cases.
pub fn verify_walk_class_sandwich(
    vertex_max: usize,
    k_max: u32,
) -> Result<VerificationReport, OracleError> {
    walk_class_sweep(vertex_max, k_max, CHUNK_RANKS)
}

fn walk_class_sweep(
    vertex_max: usize,
    k_max: u32,
    chunk: u128,
) -> Result<VerificationReport, OracleError> {
    let started = Instant::now();
    if vertex_max > MAX_WALK_SWEEP_VERTICES {
        return Err(OracleError::VertexBudget {
            given: vertex_max,
            max: MAX_WALK_SWEEP_VERTICES,
        });
    }
    if !(1..=MAX_WALK_SWEEP_LENGTH).contains(&k_max) {
        return Err(OracleError::LengthBudget {
            given: k_max,
            max: MAX_WALK_SWEEP_LENGTH,
        });
    }
    let edge_max = vertex_max * (vertex_max.max(1) - 1) / 2;
    let (units, _) = build_units(vertex_max, 0..=edge_max, chunk)?;
    let partials: Result<Vec<SweepPartial>, OracleError> = units
        .par_iter()
        .map(|unit| {
            let mut partial = SweepPartial {
                checked: 0,
                violations: Vec::new(),
                witnesses: Vec::new(),
            };
            let graphs =
                enumerate_graphs_range(vertex_max, unit.edge_count, unit.start, unit.end)?;
            for g in graphs {
                for k in 1..=k_max {
                    partial.checked += 1;
                    let trace = trace_power(&g, k)
                        .to_u64()
                        .expect("trace bounded by 6 * 5^6 in sweep range");
                    if trace == 0 {
                        continue;
                    }
                    let classes = closed_walk_classes(&g, k)?;
                    let upper_ok = trace <= 2 * k as u64 * classes;
                    let lower_ok = 2 * classes <= trace;
                    if !upper_ok || !lower_ok {
                        partial.violations.push(Violation {
                            detail: format!(
                                "walk classes {classes} fall outside [tr/2k, tr/2] at k = {k}, tr = {trace}"
                            ),
                            graph: g.clone(),
                        });
                    }
                }
            }
            Ok(partial)
        })
        .collect();
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for partial in partials? {
        checked += partial.checked;
        violations.extend(partial.violations);
    }
    let params: BTreeMap<String, u64> = [
        ("vertex_max".to_string(), vertex_max as u64),
        ("k_max".to_string(), k_max as u64),
    ]
    .into_iter()
    .collect();
    Ok(VerificationReport {
        claim: "eq5".to_string(),
        params,
        instances_checked: checked,
        verified: violations.is_empty(),
        violations,
        witnesses: Vec::new(),
        wall_time_ms: Some(started.elapsed().as_millis()),
    })
}
