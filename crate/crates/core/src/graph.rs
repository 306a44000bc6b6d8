//! Immutable undirected simple graphs with compact adjacency storage.
//!
//! Graphs are built once (usually from an edge-list file) and queried
//! concurrently afterwards. Adjacency is stored in CSR form with sorted
//! neighbor lists; original node labels are kept alongside the dense
//! indices they were assigned in first-appearance order.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::io::BufRead;

use crate::scalar::{from_count, Scalar};
use crate::{Error, Result};

/// Dense node index.
pub type NodeId = u32;

/// Distance sentinel used by the internal BFS scratch buffers.
pub(crate) const UNREACHED: u32 = u32::MAX;

/// Options for [`parse_edge_list`].
#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Line prefixes treated as comments.
    pub comment_prefixes: Vec<char>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            comment_prefixes: vec!['#', '%'],
        }
    }
}

/// Counts of input lines dropped while parsing an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseWarnings {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl ParseWarnings {
    pub fn is_clean(&self) -> bool {
        self.duplicate_edges == 0 && self.self_loops == 0
    }
}

/// Immutable undirected simple graph.
///
/// Invariants maintained by construction: no self-loops, no parallel edges,
/// symmetric adjacency, neighbor lists sorted ascending, and
/// `edge_count == Σ degree / 2`.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl Graph {
    /// Builds a graph from dense-index edges, dropping self-loops and
    /// duplicates. `node_count` fixes the vertex set (trailing isolated
    /// nodes are allowed).
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Graph {
        let labels = (0..node_count).map(|i| i.to_string()).collect();
        Self::build(node_count, edges, labels).0
    }

    /// As [`Graph::from_edges`] but with explicit node labels
    /// (`labels.len()` fixes the node count).
    pub fn from_labeled_edges(labels: Vec<String>, edges: &[(NodeId, NodeId)]) -> Graph {
        Self::build(labels.len(), edges, labels).0
    }

    fn build(
        node_count: usize,
        edges: &[(NodeId, NodeId)],
        labels: Vec<String>,
    ) -> (Graph, ParseWarnings) {
        assert_eq!(labels.len(), node_count);
        let mut warnings = ParseWarnings::default();
        let mut normalized: Vec<(NodeId, NodeId)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            assert!(
                (a as usize) < node_count && (b as usize) < node_count,
                "edge ({a}, {b}) out of range for {node_count} nodes"
            );
            if a == b {
                warnings.self_loops += 1;
            } else {
                normalized.push((a.min(b), a.max(b)));
            }
        }
        normalized.sort_unstable();
        let before = normalized.len();
        normalized.dedup();
        warnings.duplicate_edges = before - normalized.len();

        let mut degrees = vec![0usize; node_count];
        for &(a, b) in &normalized {
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for &d in &degrees {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0 as NodeId; acc];
        for &(a, b) in &normalized {
            neighbors[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            neighbors[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        for v in 0..node_count {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as NodeId))
            .collect();
        (
            Graph {
                offsets,
                neighbors,
                labels,
                index,
            },
            warnings,
        )
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Degree of `v`.
    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check(v)?;
        Ok(self.nbrs(v).len())
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> Result<&[NodeId]> {
        self.check(v)?;
        Ok(self.nbrs(v))
    }

    /// Unchecked neighbor access for internal hot loops.
    pub(crate) fn nbrs(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub(crate) fn degree_of(&self, v: NodeId) -> usize {
        self.nbrs(v).len()
    }

    /// Degrees of all nodes, dense-indexed.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count())
            .map(|v| self.degree_of(v as NodeId))
            .collect()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Dense index of a label, if present.
    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    fn check(&self, v: NodeId) -> Result<()> {
        if (v as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: v,
                count: self.node_count(),
            })
        }
    }

    /// Hop distances from `source` by breadth-first traversal.
    ///
    /// `None` marks nodes that are unreachable or beyond `max_depth`.
    pub fn bfs_distances(&self, source: NodeId, max_depth: Option<u32>) -> Result<Vec<Option<u32>>> {
        self.check(source)?;
        let mut dist = vec![UNREACHED; self.node_count()];
        let mut queue = VecDeque::new();
        self.bfs_into(source, max_depth.unwrap_or(UNREACHED), &mut dist, &mut queue);
        Ok(dist
            .into_iter()
            .map(|d| (d != UNREACHED).then_some(d))
            .collect())
    }

    /// BFS into caller-provided scratch buffers (`dist` must be prefilled
    /// with [`UNREACHED`]); visited entries are pushed onto `touched` so the
    /// caller can reset only what was written.
    pub(crate) fn bfs_bounded(
        &self,
        source: NodeId,
        max_depth: u32,
        dist: &mut [u32],
        queue: &mut VecDeque<NodeId>,
        touched: &mut Vec<NodeId>,
    ) {
        queue.clear();
        dist[source as usize] = 0;
        touched.push(source);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            if d >= max_depth {
                continue;
            }
            for &u in self.nbrs(v) {
                if dist[u as usize] == UNREACHED {
                    dist[u as usize] = d + 1;
                    touched.push(u);
                    queue.push_back(u);
                }
            }
        }
    }

    fn bfs_into(
        &self,
        source: NodeId,
        max_depth: u32,
        dist: &mut Vec<u32>,
        queue: &mut VecDeque<NodeId>,
    ) {
        let mut touched = Vec::new();
        self.bfs_bounded(source, max_depth, dist, queue, &mut touched);
    }

    /// Size of the connected component containing `v`.
    pub fn component_size(&self, v: NodeId) -> Result<usize> {
        let dist = self.bfs_distances(v, None)?;
        Ok(dist.iter().filter(|d| d.is_some()).count())
    }

    /// Dataset statistics: counts, degree summary, and degree assortativity.
    pub fn stats<F: Scalar>(&self) -> Result<GraphStats<F>> {
        let n = self.node_count();
        if n < 2 {
            return Err(Error::TooFewNodes { min: 2, got: n });
        }
        if self.edge_count() == 0 {
            return Err(Error::EmptyEdgeSet {
                context: "graph statistics",
            });
        }
        let degrees = self.degrees();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let avg_degree = from_count::<F>(2 * self.edge_count()) / from_count::<F>(n);
        Ok(GraphStats {
            num_nodes: n,
            num_edges: self.edge_count(),
            avg_degree,
            max_degree,
            assortativity: self.assortativity(&degrees),
        })
    }

    /// Pearson correlation of endpoint degrees over the directed expansion
    /// of the edge set; `None` when the endpoint degrees have zero variance.
    fn assortativity<F: Scalar>(&self, degrees: &[usize]) -> Option<F> {
        // Each undirected edge contributes both orientations, so the two
        // marginals coincide and integer sums stay exact.
        let mut sum_x: i128 = 0;
        let mut sum_x2: i128 = 0;
        let mut sum_xy: i128 = 0;
        let mut pairs: i128 = 0;
        for v in 0..self.node_count() {
            let dv = degrees[v] as i128;
            for &u in self.nbrs(v as NodeId) {
                let du = degrees[u as usize] as i128;
                sum_x += dv;
                sum_x2 += dv * dv;
                sum_xy += dv * du;
                pairs += 1;
            }
        }
        let var = pairs * sum_x2 - sum_x * sum_x;
        if var == 0 {
            return None;
        }
        let cov = pairs * sum_xy - sum_x * sum_x;
        Some(F::from_i128(cov).unwrap() / F::from_i128(var).unwrap())
    }
}

/// Dataset statistics as displayed in a stats table row.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats<F> {
    pub num_nodes: usize,
    pub num_edges: usize,
    pub avg_degree: F,
    pub max_degree: usize,
    /// `None` when undefined (zero degree variance over edge endpoints).
    pub assortativity: Option<F>,
}

/// Parses a whitespace- or comma-separated edge list into a graph.
///
/// Lines starting with a comment prefix and blank lines are skipped.
/// Self-loops and duplicate edges are dropped; their counts are returned in
/// [`ParseWarnings`]. Labels are assigned dense indices in first-appearance
/// order. Inputs without a single data line are rejected with
/// [`Error::NoEdges`].
pub fn parse_edge_list<R: BufRead>(
    reader: R,
    options: &ParseOptions,
) -> Result<(Graph, ParseWarnings)> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, NodeId> = HashMap::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut intern = |token: &str, labels: &mut Vec<String>| -> NodeId {
        if let Some(&id) = index.get(token) {
            return id;
        }
        let id = labels.len() as NodeId;
        labels.push(token.to_string());
        index.insert(token.to_string(), id);
        id
    };

    let mut data_lines = 0usize;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|_| Error::MalformedLine {
            line: lineno + 1,
            found: 0,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || options.comment_prefixes.iter().any(|&c| trimmed.starts_with(c)) {
            continue;
        }
        let fields: Vec<&str> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .take(3)
            .collect();
        let (a, b) = match fields.as_slice() {
            [a, b] => (*a, *b),
            other => {
                return Err(Error::MalformedLine {
                    line: lineno + 1,
                    found: other.len(),
                });
            }
        };
        data_lines += 1;
        let ai = intern(a, &mut labels);
        let bi = intern(b, &mut labels);
        edges.push((ai, bi));
    }
    if data_lines == 0 {
        return Err(Error::NoEdges);
    }
    let node_count = labels.len();
    Ok(Graph::build(node_count, &edges, labels))
}

/// Convenience wrapper over [`parse_edge_list`] for in-memory text.
pub fn parse_edge_list_str(text: &str) -> Result<(Graph, ParseWarnings)> {
    parse_edge_list(text.as_bytes(), &ParseOptions::default())
}
