//! Simple undirected graphs on at most 64 vertices.
//!
//! Storage is dense: one neighbor bitmask per vertex plus the sorted edge
//! list. That caps the vertex count at 64, which covers everything the
//! counting and sweep layers are designed for, and makes common-neighbor
//! queries a single AND + popcount.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Hard cap imposed by the bitmask representation.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge ({0}, {0}) is not allowed in a simple graph")]
    LoopEdge(usize),
    #[error("vertex index {index} out of range for vertex count {vertex_count}")]
    IndexOutOfRange { index: usize, vertex_count: usize },
    #[error("cannot infer vertex count from an empty edge list; pass one explicitly")]
    EmptyEdgeList,
    #[error("vertex count {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("edge count {edge_count} exceeds the {available} pairs available on {vertex_count} vertices")]
    EdgeCountTooLarge {
        edge_count: usize,
        vertex_count: usize,
        available: usize,
    },
    #[error("enumeration of {0} graphs does not fit the supported counter width")]
    EnumerationOverflow(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Simple undirected graph: no loops, no multi-edges, labeled vertices
/// `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    adj: Vec<u64>,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph from vertex pairs. Duplicate edges (in either order)
    /// are collapsed silently; loops are rejected. When `vertex_count` is
    /// omitted it defaults to one past the largest index mentioned.
    pub fn from_edge_list(
        pairs: &[(usize, usize)],
        vertex_count: Option<usize>,
    ) -> Result<Self, GraphError> {
        let n = match vertex_count {
            Some(n) => n,
            None => match pairs.iter().map(|&(u, v)| u.max(v)).max() {
                Some(m) => m + 1,
                None => return Err(GraphError::EmptyEdgeList),
            },
        };
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in pairs {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            for ix in [u, v] {
                if ix >= n {
                    return Err(GraphError::IndexOutOfRange {
                        index: ix,
                        vertex_count: n,
                    });
                }
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self::from_adj(n, adj))
    }

    /// Complete graph on `n` vertices, `1 <= n <= 64`.
    pub fn complete(n: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&n), "vertex count {n} out of range");
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let adj = (0..n).map(|v| full & !(1 << v)).collect();
        Self::from_adj(n, adj)
    }

    fn from_adj(vertex_count: usize, adj: Vec<u64>) -> Self {
        let mut edges = Vec::new();
        for (u, row) in adj.iter().enumerate().take(vertex_count) {
            // neighbors strictly above u, so each edge is listed once
            let mut mask = row & !(((1u128 << (u + 1)) - 1) as u64);
            while mask != 0 {
                let v = mask.trailing_zeros() as usize;
                edges.push((u as u32, v as u32));
                mask &= mask - 1;
            }
        }
        Graph {
            vertex_count,
            adj,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Neighbor bitmask of `v`.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Vertices with at least one incident edge.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.vertex_count).filter(|&v| self.adj[v] != 0).collect()
    }

    /// True when the vertices in `verts` are pairwise adjacent.
    pub fn induces_complete(&self, verts: &[usize]) -> bool {
        verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| self.is_adjacent(u, v)))
    }

    /// Dense 0/1 adjacency matrix, row major.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.vertex_count)
            .map(|u| {
                (0..self.vertex_count)
                    .map(|v| self.is_adjacent(u, v) as u8)
                    .collect()
            })
            .collect()
    }

    /// Parses the edge-list text format: an optional first line
    /// `p <vertex_count>`, then one `<u> <v>` pair per line, 0-based,
    /// whitespace separated. `#` starts a comment; blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut declared: Option<usize> = None;
        let mut pairs = Vec::new();
        let mut seen_content = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "p" {
                if seen_content || declared.is_some() {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: "vertex-count line must come first".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: "expected `p <vertex_count>`".into(),
                    });
                }
                let n: usize = tokens[1].parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    message: format!("invalid vertex count `{}`", tokens[1]),
                })?;
                if n == 0 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: "vertex count must be positive".into(),
                    });
                }
                declared = Some(n);
                continue;
            }
            seen_content = true;
            if tokens.len() != 2 {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: format!("expected `<u> <v>`, got `{line}`"),
                });
            }
            let mut pair = [0usize; 2];
            for (slot, tok) in pair.iter_mut().zip(&tokens) {
                *slot = tok.parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    message: format!("invalid vertex index `{tok}`"),
                })?;
            }
            pairs.push((pair[0], pair[1]));
        }
        if pairs.is_empty() && declared.is_none() {
            return Err(GraphError::EmptyEdgeList);
        }
        Graph::from_edge_list(&pairs, declared)
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Graph", 2)?;
        s.serialize_field("vertex_count", &self.vertex_count)?;
        s.serialize_field("edges", &self.edges)?;
        s.end()
    }
}

// ---------------------------------------------------------------------------
// Labeled-graph enumeration: all C(v(v-1)/2, e) edge subsets of the complete
// graph, in lexicographic order of edge-index combinations. Ranks are exposed
// so sweeps can partition the index space across workers deterministically.
// ---------------------------------------------------------------------------

/// Edge pairs of K_v in lexicographic order.
pub fn complete_edge_pairs(vertex_count: usize) -> Vec<(u32, u32)> {
    let mut pairs = Vec::with_capacity(vertex_count * (vertex_count.max(1) - 1) / 2);
    for u in 0..vertex_count {
        for v in u + 1..vertex_count {
            pairs.push((u as u32, v as u32));
        }
    }
    pairs
}

fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128; // exact: product of i+1 consecutive integers
    }
    Some(acc)
}

/// Number of labeled graphs on exactly `vertex_count` vertices with exactly
/// `edge_count` edges.
pub fn enumeration_count(vertex_count: usize, edge_count: usize) -> Result<u128, GraphError> {
    if vertex_count > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(vertex_count));
    }
    let m = vertex_count * (vertex_count.max(1) - 1) / 2;
    if edge_count > m {
        return Err(GraphError::EdgeCountTooLarge {
            edge_count,
            vertex_count,
            available: m,
        });
    }
    binomial_u128(m, edge_count)
        .ok_or_else(|| GraphError::EnumerationOverflow(format!("C({m}, {edge_count})")))
}

/// Iterator over every labeled graph on `vertex_count` vertices with exactly
/// `edge_count` edges, in a fixed deterministic order.
pub fn enumerate_graphs(
    vertex_count: usize,
    edge_count: usize,
) -> Result<GraphEnumeration, GraphError> {
    let total = enumeration_count(vertex_count, edge_count)?;
    enumerate_graphs_range(vertex_count, edge_count, 0, total)
}

/// The sub-range `[start, end)` of the enumeration, by rank. Workers scanning
/// disjoint rank ranges see exactly the graphs of the full enumeration, in
/// order.
pub fn enumerate_graphs_range(
    vertex_count: usize,
    edge_count: usize,
    start: u128,
    end: u128,
) -> Result<GraphEnumeration, GraphError> {
    let total = enumeration_count(vertex_count, edge_count)?;
    let end = end.min(total);
    let start = start.min(end);
    let pairs = complete_edge_pairs(vertex_count);
    // An empty range yields nothing, so never unrank its (possibly
    // out-of-range) start rank.
    let combo = if start == end {
        (0..edge_count).collect()
    } else {
        unrank_combination(pairs.len(), edge_count, start)
    };
    Ok(GraphEnumeration {
        vertex_count,
        pairs,
        combo,
        remaining: end - start,
        fresh: true,
    })
}

/// Lexicographic unranking of an `e`-combination of `0..m`.
fn unrank_combination(m: usize, e: usize, mut rank: u128) -> Vec<usize> {
    let mut combo = Vec::with_capacity(e);
    let mut c = 0usize;
    for i in 0..e {
        loop {
            let with_c = binomial_u128(m - c - 1, e - i - 1).expect("counted at construction");
            if rank < with_c {
                combo.push(c);
                c += 1;
                break;
            }
            rank -= with_c;
            c += 1;
        }
    }
    combo
}

/// Advances `combo` to its lexicographic successor; false when exhausted.
fn next_combination(combo: &mut [usize], m: usize) -> bool {
    let e = combo.len();
    let mut i = e;
    while i > 0 {
        i -= 1;
        if combo[i] != m - e + i {
            combo[i] += 1;
            for j in i + 1..e {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub struct GraphEnumeration {
    vertex_count: usize,
    pairs: Vec<(u32, u32)>,
    combo: Vec<usize>,
    remaining: u128,
    fresh: bool,
}

impl Iterator for GraphEnumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.remaining == 0 {
            return None;
        }
        if !self.fresh && !next_combination(&mut self.combo, self.pairs.len()) {
            return None;
        }
        self.fresh = false;
        self.remaining -= 1;
        let mut adj = vec![0u64; self.vertex_count];
        for &ix in &self.combo {
            let (u, v) = self.pairs[ix];
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        Some(Graph::from_adj(self.vertex_count, adj))
    }
}
