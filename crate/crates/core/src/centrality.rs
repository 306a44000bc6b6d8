//! Baseline centrality measures.
//!
//! Covers the degree, k-shell, and H-index primitives plus the neighborhood
//! coreness, weighted neighborhood, gravity, improved gravity, and weighted
//! k-shell degree measures. All of them produce a [`ScoreVector`] indexed by
//! dense node id.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, NodeId, UNREACHED};
use crate::scalar::{from_count, Scalar};
use crate::{Error, Result};

/// The closed set of measure identifiers understood by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "DC")]
    Dc,
    #[serde(rename = "KS")]
    Ks,
    #[serde(rename = "HI")]
    Hi,
    #[serde(rename = "cn")]
    Cn,
    #[serde(rename = "cdc")]
    Cdc,
    #[serde(rename = "cks")]
    Cks,
    #[serde(rename = "G")]
    Gravity,
    #[serde(rename = "IGC")]
    Igc,
    #[serde(rename = "ksd")]
    Ksd,
    #[serde(rename = "IH")]
    Ih,
    #[serde(rename = "MC")]
    Mc,
    #[serde(rename = "IMH")]
    Imh,
    #[serde(rename = "EMH")]
    Emh,
}

impl Measure {
    pub const ALL: [Measure; 13] = [
        Measure::Dc,
        Measure::Ks,
        Measure::Hi,
        Measure::Cn,
        Measure::Cdc,
        Measure::Cks,
        Measure::Gravity,
        Measure::Igc,
        Measure::Ksd,
        Measure::Ih,
        Measure::Mc,
        Measure::Imh,
        Measure::Emh,
    ];

    /// The eight measures compared head-to-head in evaluations.
    pub const COMPARED: [Measure; 8] = [
        Measure::Cdc,
        Measure::Cks,
        Measure::Cn,
        Measure::Dc,
        Measure::Emh,
        Measure::Gravity,
        Measure::Igc,
        Measure::Ksd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Dc => "DC",
            Measure::Ks => "KS",
            Measure::Hi => "HI",
            Measure::Cn => "cn",
            Measure::Cdc => "cdc",
            Measure::Cks => "cks",
            Measure::Gravity => "G",
            Measure::Igc => "IGC",
            Measure::Ksd => "ksd",
            Measure::Ih => "IH",
            Measure::Mc => "MC",
            Measure::Imh => "IMH",
            Measure::Emh => "EMH",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Measure::ALL
            .iter()
            .copied()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let valid: Vec<&str> = Measure::ALL.iter().map(|m| m.name()).collect();
                format!("unknown measure '{s}', valid names: {}", valid.join(", "))
            })
    }
}

/// Per-node real-valued scores produced by one measure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreVector<F> {
    pub measure: Measure,
    pub scores: Vec<F>,
}

impl<F: Scalar> ScoreVector<F> {
    pub fn new(measure: Measure, scores: Vec<F>) -> Self {
        debug_assert!(scores.iter().all(|s| s.is_finite()));
        ScoreVector { measure, scores }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub(crate) fn check_len(&self, g: &Graph) -> Result<()> {
        if self.scores.len() == g.node_count() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: g.node_count(),
                got: self.scores.len(),
            })
        }
    }
}

/// Degree of every node as a score.
pub fn degree_centrality<F: Scalar>(g: &Graph) -> ScoreVector<F> {
    let scores = (0..g.node_count() as NodeId)
        .map(|v| from_count(g.nbrs(v).len()))
        .collect();
    ScoreVector::new(Measure::Dc, scores)
}

/// K-shell index of every node by iterative peeling.
///
/// Linear-time bucket variant: nodes are processed in order of current
/// residual degree, which at removal time equals their shell index.
/// Isolated nodes land in shell 0.
pub fn k_shell_indices(g: &Graph) -> Vec<u32> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let mut degree: Vec<u32> = (0..n).map(|v| g.nbrs(v as NodeId).len() as u32).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0) as usize;

    let mut bin = vec![0usize; max_degree + 1];
    for &d in &degree {
        bin[d as usize] += 1;
    }
    let mut start = 0usize;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut vert = vec![0 as NodeId; n];
    let mut pos = vec![0usize; n];
    for v in 0..n {
        let d = degree[v] as usize;
        pos[v] = bin[d];
        vert[pos[v]] = v as NodeId;
        bin[d] += 1;
    }
    for d in (1..=max_degree).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &u in g.nbrs(v) {
            let u = u as usize;
            if degree[u] > degree[v as usize] {
                let du = degree[u] as usize;
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u as NodeId != w {
                    pos[u] = pw;
                    pos[w as usize] = pu;
                    vert[pu] = w;
                    vert[pw] = u as NodeId;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree
}

/// [`k_shell_indices`] wrapped as a score vector.
pub fn k_shell<F: Scalar>(g: &Graph) -> ScoreVector<F> {
    let scores = k_shell_indices(g)
        .into_iter()
        .map(|k| F::from_u32(k).unwrap())
        .collect();
    ScoreVector::new(Measure::Ks, scores)
}

/// H-index of every node: the largest `h` such that at least `h` neighbors
/// have degree ≥ `h`. Isolated nodes score 0.
pub fn h_index_values(g: &Graph) -> Vec<u32> {
    (0..g.node_count() as NodeId)
        .map(|v| {
            let mut degs: Vec<usize> = g.nbrs(v).iter().map(|&u| g.degree_of(u)).collect();
            degs.sort_unstable_by(|a, b| b.cmp(a));
            let mut h = 0u32;
            for (i, &d) in degs.iter().enumerate() {
                if d >= i + 1 {
                    h = (i + 1) as u32;
                } else {
                    break;
                }
            }
            h
        })
        .collect()
}

/// [`h_index_values`] wrapped as a score vector.
pub fn h_index<F: Scalar>(g: &Graph) -> ScoreVector<F> {
    let scores = h_index_values(g)
        .into_iter()
        .map(|h| F::from_u32(h).unwrap())
        .collect();
    ScoreVector::new(Measure::Hi, scores)
}

/// Neighborhood coreness: the sum of k-shell indices over each node's
/// neighbors.
pub fn neighborhood_coreness<F: Scalar>(g: &Graph, ks: &ScoreVector<F>) -> Result<ScoreVector<F>> {
    ks.check_len(g)?;
    let scores = (0..g.node_count() as NodeId)
        .map(|v| g.nbrs(v).iter().map(|&u| ks.scores[u as usize]).sum())
        .collect();
    Ok(ScoreVector::new(Measure::Cn, scores))
}

/// Which benchmark score enters each neighbor term of
/// [`weight_neighborhood`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborTerm {
    /// Weight the neighbor's benchmark score (the reading that actually uses
    /// neighborhood information).
    #[default]
    NeighborScore,
    /// Weight the node's own benchmark score in every term.
    OwnScore,
}

/// Weighted neighborhood centrality on top of a benchmark score vector:
/// `c_i = φ_i + Σ_{j∈N(i)} (A_ij / ⟨A⟩) · φ_j` with `A_ij = (k_i·k_j)^α`
/// and `⟨A⟩` averaged over the (unordered) edge set.
///
/// The benchmark is degree centrality (`cdc`) or the k-shell index (`cks`);
/// any other vector is accepted and keeps its own measure tag.
pub fn weight_neighborhood<F: Scalar>(
    g: &Graph,
    benchmark: &ScoreVector<F>,
    alpha: F,
) -> Result<ScoreVector<F>> {
    weight_neighborhood_with(g, benchmark, alpha, NeighborTerm::NeighborScore)
}

/// [`weight_neighborhood`] with an explicit choice of neighbor term.
pub fn weight_neighborhood_with<F: Scalar>(
    g: &Graph,
    benchmark: &ScoreVector<F>,
    alpha: F,
    term: NeighborTerm,
) -> Result<ScoreVector<F>> {
    benchmark.check_len(g)?;
    check_unit_interval("alpha", alpha)?;
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet {
            context: "edge-weight average",
        });
    }
    let pair_weight = |i: NodeId, j: NodeId| -> F {
        let prod = from_count::<F>(g.degree_of(i) * g.degree_of(j));
        prod.powf(alpha)
    };
    let mut total = F::zero();
    for v in 0..g.node_count() as NodeId {
        for &u in g.nbrs(v) {
            if u > v {
                total += pair_weight(v, u);
            }
        }
    }
    let mean = total / from_count(g.edge_count());

    let scores = (0..g.node_count() as NodeId)
        .map(|v| {
            let own = benchmark.scores[v as usize];
            let neighbor_sum: F = g
                .nbrs(v)
                .iter()
                .map(|&u| {
                    let phi = match term {
                        NeighborTerm::NeighborScore => benchmark.scores[u as usize],
                        NeighborTerm::OwnScore => own,
                    };
                    pair_weight(v, u) / mean * phi
                })
                .sum();
            own + neighbor_sum
        })
        .collect();
    let measure = match benchmark.measure {
        Measure::Dc => Measure::Cdc,
        Measure::Ks => Measure::Cks,
        other => other,
    };
    Ok(ScoreVector::new(measure, scores))
}

/// Gravity centrality: `Σ ks(i)·ks(j)/d_ij²` over nodes within `radius`
/// hops of `i`.
pub fn gravity<F: Scalar>(g: &Graph, ks: &ScoreVector<F>, radius: u32) -> Result<ScoreVector<F>> {
    ball_sum(g, ks, radius, Measure::Gravity, |ks_i, _g, _j, ks_j| {
        ks_i * ks_j
    })
}

/// Improved gravity centrality: the attracted mass is the neighbor's degree
/// instead of its k-shell index.
pub fn improved_gravity<F: Scalar>(
    g: &Graph,
    ks: &ScoreVector<F>,
    radius: u32,
) -> Result<ScoreVector<F>> {
    ball_sum(g, ks, radius, Measure::Igc, |ks_i, g, j, _ks_j| {
        ks_i * from_count(g.degree_of(j))
    })
}

fn ball_sum<F: Scalar>(
    g: &Graph,
    ks: &ScoreVector<F>,
    radius: u32,
    measure: Measure,
    mass: impl Fn(F, &Graph, NodeId, F) -> F + Sync,
) -> Result<ScoreVector<F>> {
    ks.check_len(g)?;
    if radius < 1 {
        return Err(Error::InvalidParam {
            name: "radius",
            value: radius as f64,
            constraint: "radius >= 1",
        });
    }
    let n = g.node_count();
    let scores: Vec<F> = (0..n as NodeId)
        .into_par_iter()
        .map_init(
            || (vec![UNREACHED; n], VecDeque::new(), Vec::new()),
            |(dist, queue, touched), v| {
                g.bfs_bounded(v, radius, dist, queue, touched);
                let ks_v = ks.scores[v as usize];
                let mut acc = F::zero();
                for &u in touched.iter() {
                    let d = dist[u as usize];
                    if d > 0 {
                        let d2 = from_count::<F>((d as usize) * (d as usize));
                        acc += mass(ks_v, g, u, ks.scores[u as usize]) / d2;
                    }
                }
                for &u in touched.iter() {
                    dist[u as usize] = UNREACHED;
                }
                touched.clear();
                acc
            },
        )
        .collect();
    Ok(ScoreVector::new(measure, scores))
}

/// Tunable weights for [`ksd_centrality`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsdParams<F> {
    pub alpha: F,
    pub mu: F,
}

impl<F: Scalar> Default for KsdParams<F> {
    fn default() -> Self {
        KsdParams {
            alpha: F::from_f64(0.9).unwrap(),
            mu: F::from_f64(0.2).unwrap(),
        }
    }
}

impl<F: Scalar> KsdParams<F> {
    pub fn new(alpha: F, mu: F) -> Result<Self> {
        let params = KsdParams { alpha, mu };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit_interval("ksd alpha", self.alpha)?;
        check_unit_interval("ksd mu", self.mu)
    }
}

/// Weighted k-shell degree neighborhood centrality: each edge gets weight
/// `(α·d_i + μ·core_i)·(α·d_j + μ·core_j)`, and a node scores the sum of
/// its incident edge weights.
pub fn ksd_centrality<F: Scalar>(
    g: &Graph,
    ks: &ScoreVector<F>,
    params: &KsdParams<F>,
) -> Result<ScoreVector<F>> {
    ks.check_len(g)?;
    params.validate()?;
    let endpoint: Vec<F> = (0..g.node_count() as NodeId)
        .map(|v| params.alpha * from_count(g.degree_of(v)) + params.mu * ks.scores[v as usize])
        .collect();
    let scores = (0..g.node_count() as NodeId)
        .map(|v| {
            g.nbrs(v)
                .iter()
                .map(|&u| endpoint[v as usize] * endpoint[u as usize])
                .sum()
        })
        .collect();
    Ok(ScoreVector::new(Measure::Ksd, scores))
}

pub(crate) fn check_unit_interval<F: Scalar>(name: &'static str, value: F) -> Result<()> {
    if value > F::zero() && value < F::one() {
        Ok(())
    } else {
        Err(Error::InvalidParam {
            name,
            value: value.to_f64_lossy(),
            constraint: "0 < value < 1",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{complete, cycle, k_shell_peeling_oracle, path, star, triangle_with_pendant};
    use approx::assert_relative_eq;

    #[test]
    fn measure_names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert!("EMh".parse::<Measure>().is_ok());
        let err = "pagerank".parse::<Measure>().unwrap_err();
        assert!(err.contains("valid names"));
    }

    #[test]
    fn degree_centrality_star_and_cycle() {
        let dc: ScoreVector<f64> = degree_centrality(&star(4));
        assert_eq!(dc.scores, vec![4.0, 1.0, 1.0, 1.0, 1.0]);
        let dc: ScoreVector<f64> = degree_centrality(&cycle(5));
        assert!(dc.scores.iter().all(|&s| s == 2.0));
    }

    #[test]
    fn k_shell_named_cases() {
        assert_eq!(k_shell_indices(&path(4)), vec![1, 1, 1, 1]);
        assert_eq!(k_shell_indices(&triangle_with_pendant()), vec![2, 2, 2, 1]);
        assert_eq!(k_shell_indices(&complete(5)), vec![4; 5]);
        let with_isolated = Graph::from_edges(4, &[(0, 1), (0, 2)]);
        assert_eq!(k_shell_indices(&with_isolated), vec![1, 1, 1, 0]);
    }

    #[test]
    fn k_shell_matches_peeling_oracle() {
        for seed in 0..10 {
            let g = crate::testutil::random_graph(60, 0.07, seed);
            assert_eq!(k_shell_indices(&g), k_shell_peeling_oracle(&g), "seed {seed}");
        }
    }

    #[test]
    fn h_index_named_cases() {
        // Node 0 with neighbor degrees [3, 3, 2, 1].
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 5),
                (1, 6),
                (2, 7),
                (2, 8),
                (3, 5),
            ],
        );
        assert_eq!(g.degree(1).unwrap(), 3);
        assert_eq!(g.degree(2).unwrap(), 3);
        assert_eq!(g.degree(3).unwrap(), 2);
        assert_eq!(g.degree(4).unwrap(), 1);
        assert_eq!(h_index_values(&g)[0], 2);

        assert_eq!(h_index_values(&star(4)), vec![1, 1, 1, 1, 1]);
        let with_isolated = Graph::from_edges(3, &[(0, 1)]);
        assert_eq!(h_index_values(&with_isolated)[2], 0);
    }

    #[test]
    fn neighborhood_coreness_triangle_with_pendant() {
        let g = triangle_with_pendant();
        let ks: ScoreVector<f64> = k_shell(&g);
        let cn = neighborhood_coreness(&g, &ks).unwrap();
        assert_eq!(cn.scores[3], 2.0);
        assert_eq!(cn.scores[0], 5.0);
        let with_isolated = Graph::from_edges(3, &[(0, 1)]);
        let ks: ScoreVector<f64> = k_shell(&with_isolated);
        let cn = neighborhood_coreness(&with_isolated, &ks).unwrap();
        assert_eq!(cn.scores[2], 0.0);
    }

    #[test]
    fn weight_neighborhood_examples() {
        let g = cycle(5);
        let dc: ScoreVector<f64> = degree_centrality(&g);
        for alpha in [0.2, 0.5, 0.8] {
            let cdc = weight_neighborhood(&g, &dc, alpha).unwrap();
            assert_eq!(cdc.measure, Measure::Cdc);
            for &s in &cdc.scores {
                assert_relative_eq!(s, 6.0, max_relative = 1e-12);
            }
        }

        let edge = Graph::from_edges(2, &[(0, 1)]);
        let dc: ScoreVector<f64> = degree_centrality(&edge);
        let cdc = weight_neighborhood(&edge, &dc, 0.5).unwrap();
        assert_eq!(cdc.scores, vec![2.0, 2.0]);

        let with_isolated = Graph::from_edges(3, &[(0, 1)]);
        let dc: ScoreVector<f64> = degree_centrality(&with_isolated);
        let cdc = weight_neighborhood(&with_isolated, &dc, 0.5).unwrap();
        assert_eq!(cdc.scores[2], 0.0);
    }

    #[test]
    fn weight_neighborhood_rejects_edgeless_graph() {
        let g = Graph::from_edges(2, &[]);
        let dc: ScoreVector<f64> = degree_centrality(&g);
        assert!(matches!(
            weight_neighborhood(&g, &dc, 0.5),
            Err(Error::EmptyEdgeSet { .. })
        ));
    }

    #[test]
    fn gravity_path_examples() {
        let g = path(3);
        let ks: ScoreVector<f64> = k_shell(&g);
        let grav = gravity(&g, &ks, 3).unwrap();
        assert_relative_eq!(grav.scores[1], 2.0);
        assert_relative_eq!(grav.scores[0], 1.25);

        let igc = improved_gravity(&g, &ks, 3).unwrap();
        assert_relative_eq!(igc.scores[0], 2.25);
        assert_relative_eq!(igc.scores[1], 2.0);

        let with_isolated = Graph::from_edges(3, &[(0, 1)]);
        let ks: ScoreVector<f64> = k_shell(&with_isolated);
        assert_eq!(gravity(&with_isolated, &ks, 3).unwrap().scores[2], 0.0);
        assert_eq!(
            improved_gravity(&with_isolated, &ks, 3).unwrap().scores[2],
            0.0
        );
    }

    #[test]
    fn gravity_rejects_zero_radius() {
        let g = path(3);
        let ks: ScoreVector<f64> = k_shell(&g);
        assert!(matches!(
            gravity(&g, &ks, 0),
            Err(Error::InvalidParam { name: "radius", .. })
        ));
    }

    #[test]
    fn ksd_examples() {
        let g = complete(3);
        let ks: ScoreVector<f64> = k_shell(&g);
        let params = KsdParams::new(0.9, 0.2).unwrap();
        let ksd = ksd_centrality(&g, &ks, &params).unwrap();
        for &s in &ksd.scores {
            assert_relative_eq!(s, 9.68, max_relative = 1e-12);
        }

        let edge = Graph::from_edges(2, &[(0, 1)]);
        let ks: ScoreVector<f64> = k_shell(&edge);
        let ksd = ksd_centrality(&edge, &ks, &params).unwrap();
        for &s in &ksd.scores {
            assert_relative_eq!(s, 1.21, max_relative = 1e-12);
        }

        let with_isolated = Graph::from_edges(3, &[(0, 1)]);
        let ks: ScoreVector<f64> = k_shell(&with_isolated);
        assert_eq!(
            ksd_centrality(&with_isolated, &ks, &params).unwrap().scores[2],
            0.0
        );
    }

    #[test]
    fn ksd_rejects_out_of_range_params() {
        assert!(KsdParams::new(0.0, 0.5).is_err());
        assert!(KsdParams::new(0.5, 1.0).is_err());
        assert!(KsdParams::new(0.5, 0.5).is_ok());
    }
}
