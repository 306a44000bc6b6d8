//! The mixing H-index centrality family.
//!
//! A five-stage pipeline refines the plain H-index into a measure that uses
//! every neighbor's information:
//!
//! 1. **Neighbor diversity** — how many distinct H-index values occur among
//!    a node's neighbors.
//! 2. **Improved H-index (`IH`)** — a degree-normalized convex combination
//!    that classifies neighbors by whether their diversity beats, ties, or
//!    trails the node's own.
//! 3. **Cumulative centrality (`MC`)** — the node's neighbor `IH` values in
//!    descending order, summed under a geometrically decaying weight
//!    `s^(1 + j²/r)`.
//! 4. **`IMH`** — the sum of `MC` over the node's neighbors.
//! 5. **`EMH`** — the node's `IMH` plus the `IMH` of all its neighbors.
//!
//! [`emh_pipeline`] runs the stages in order and returns every intermediate
//! in an [`EmhTrace`] so results can be inspected node by node.

use serde::{Deserialize, Serialize};

use crate::centrality::{check_unit_interval, h_index_values, Measure, ScoreVector};
use crate::graph::{Graph, NodeId};
use crate::scalar::{from_count, Scalar};
use crate::{Error, Result};

/// Tunable weights of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmhParams<F> {
    /// Weight of neighbors with strictly greater diversity.
    pub alpha1: F,
    /// Weight of neighbors with equal diversity.
    pub alpha2: F,
    /// Decay base of the cumulative weight, in (0, 1).
    pub s: F,
    /// Decay softening divisor, > 0.
    pub r: F,
}

impl<F: Scalar> Default for EmhParams<F> {
    fn default() -> Self {
        EmhParams {
            alpha1: F::from_f64(0.5).unwrap(),
            alpha2: F::from_f64(0.3).unwrap(),
            s: F::from_f64(0.5).unwrap(),
            r: F::from_f64(10.0).unwrap(),
        }
    }
}

impl<F: Scalar> EmhParams<F> {
    pub fn new(alpha1: F, alpha2: F, s: F, r: F) -> Result<Self> {
        let params = EmhParams { alpha1, alpha2, s, r };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit_interval("alpha1", self.alpha1)?;
        check_unit_interval("alpha2", self.alpha2)?;
        check_unit_interval("s", self.s)?;
        if self.alpha1 + self.alpha2 >= F::one() {
            return Err(Error::InvalidParam {
                name: "alpha1 + alpha2",
                value: (self.alpha1 + self.alpha2).to_f64_lossy(),
                constraint: "alpha1 + alpha2 < 1",
            });
        }
        if !(self.r > F::zero()) || !self.r.is_finite() {
            return Err(Error::InvalidParam {
                name: "r",
                value: self.r.to_f64_lossy(),
                constraint: "r > 0",
            });
        }
        Ok(())
    }

    /// Weight of neighbors with strictly smaller diversity.
    pub fn alpha3(&self) -> F {
        F::one() - self.alpha1 - self.alpha2
    }
}

/// How the per-node neighbor-value sequence is assembled before the decayed
/// summation. The default keeps one entry per neighbor; the alternatives
/// exist for sensitivity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CumulativeStrategy {
    /// All neighbor values, sorted descending (length = degree).
    #[default]
    SortedNeighborValues,
    /// Distinct neighbor values only, sorted descending.
    DistinctNeighborValues,
    /// Running prefix sums of the descending neighbor values.
    PrefixSums,
}

/// Every intermediate of the pipeline, dense-indexed per node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmhTrace<F> {
    pub h: Vec<u32>,
    pub diversity: Vec<u32>,
    pub ih: Vec<F>,
    pub s_vectors: Vec<Vec<F>>,
    pub mc: Vec<F>,
    pub imh: Vec<F>,
    pub emh: Vec<F>,
}

impl<F: Scalar> EmhTrace<F> {
    /// Extracts one stage as a tagged score vector.
    pub fn score_vector(&self, measure: Measure) -> Option<ScoreVector<F>> {
        let scores = match measure {
            Measure::Hi => self.h.iter().map(|&h| F::from_u32(h).unwrap()).collect(),
            Measure::Ih => self.ih.clone(),
            Measure::Mc => self.mc.clone(),
            Measure::Imh => self.imh.clone(),
            Measure::Emh => self.emh.clone(),
            _ => return None,
        };
        Some(ScoreVector::new(measure, scores))
    }
}

/// Number of distinct H-index values among each node's neighbors.
pub fn neighbor_diversity(g: &Graph, h: &[u32]) -> Result<Vec<u32>> {
    check_len(g, h.len())?;
    Ok((0..g.node_count() as NodeId)
        .map(|v| {
            let mut values: Vec<u32> = g.nbrs(v).iter().map(|&u| h[u as usize]).collect();
            values.sort_unstable();
            values.dedup();
            values.len() as u32
        })
        .collect())
}

/// Improved H-index: neighbors are classified against the node's own
/// diversity and the three class counts are combined with the `alpha`
/// weights, normalized by degree. Isolated nodes score 0.
pub fn improved_h_index<F: Scalar>(
    g: &Graph,
    diversity: &[u32],
    params: &EmhParams<F>,
) -> Result<Vec<F>> {
    check_len(g, diversity.len())?;
    params.validate()?;
    Ok((0..g.node_count() as NodeId)
        .map(|v| {
            let degree = g.degree_of(v);
            if degree == 0 {
                return F::zero();
            }
            let own = diversity[v as usize];
            let mut greater = 0usize;
            let mut equal = 0usize;
            for &u in g.nbrs(v) {
                match diversity[u as usize].cmp(&own) {
                    std::cmp::Ordering::Greater => greater += 1,
                    std::cmp::Ordering::Equal => equal += 1,
                    std::cmp::Ordering::Less => {}
                }
            }
            let smaller = degree - greater - equal;
            (params.alpha1 * from_count(greater)
                + params.alpha2 * from_count(equal)
                + params.alpha3() * from_count(smaller))
                / from_count(degree)
        })
        .collect())
}

/// The neighbor `IH` values of `v` in descending order (ties broken by node
/// index so traces are byte-for-byte reproducible).
pub fn cumulative_vector<F: Scalar>(g: &Graph, ih: &[F], v: NodeId) -> Result<Vec<F>> {
    cumulative_vector_with(g, ih, v, CumulativeStrategy::SortedNeighborValues)
}

/// [`cumulative_vector`] under an explicit assembly strategy.
pub fn cumulative_vector_with<F: Scalar>(
    g: &Graph,
    ih: &[F],
    v: NodeId,
    strategy: CumulativeStrategy,
) -> Result<Vec<F>> {
    check_len(g, ih.len())?;
    Ok(sorted_neighbor_values(ih, g.neighbors(v)?, strategy))
}

fn sorted_neighbor_values<F: Scalar>(
    ih: &[F],
    neighbors: &[NodeId],
    strategy: CumulativeStrategy,
) -> Vec<F> {
    let mut pairs: Vec<(F, NodeId)> = neighbors.iter().map(|&u| (ih[u as usize], u)).collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite IH").then(a.1.cmp(&b.1)));
    let mut values: Vec<F> = pairs.into_iter().map(|(x, _)| x).collect();
    match strategy {
        CumulativeStrategy::SortedNeighborValues => values,
        CumulativeStrategy::DistinctNeighborValues => {
            values.dedup();
            values
        }
        CumulativeStrategy::PrefixSums => {
            let mut acc = F::zero();
            for x in values.iter_mut() {
                acc += *x;
                *x = acc;
            }
            values
        }
    }
}

/// Cumulative centrality: the decayed sum `Σ_j s^(1 + j²/r) · S_j(v)` over
/// the node's neighbor-value sequence.
pub fn cumulative_centrality<F: Scalar>(g: &Graph, ih: &[F], params: &EmhParams<F>) -> Result<Vec<F>> {
    cumulative_centrality_with(g, ih, params, CumulativeStrategy::SortedNeighborValues)
}

/// [`cumulative_centrality`] under an explicit assembly strategy.
pub fn cumulative_centrality_with<F: Scalar>(
    g: &Graph,
    ih: &[F],
    params: &EmhParams<F>,
    strategy: CumulativeStrategy,
) -> Result<Vec<F>> {
    check_len(g, ih.len())?;
    params.validate()?;
    let weights = decay_weights(g, params);
    Ok((0..g.node_count() as NodeId)
        .map(|v| {
            let values = sorted_neighbor_values(ih, g.nbrs(v), strategy);
            decayed_sum(&values, &weights)
        })
        .collect())
}

/// Precomputed `s^(1 + j²/r)` for j = 1..=max_degree.
fn decay_weights<F: Scalar>(g: &Graph, params: &EmhParams<F>) -> Vec<F> {
    let max_degree = (0..g.node_count() as NodeId)
        .map(|v| g.degree_of(v))
        .max()
        .unwrap_or(0);
    (1..=max_degree)
        .map(|j| {
            let jf = from_count::<F>(j);
            params.s.powf(F::one() + jf * jf / params.r)
        })
        .collect()
}

fn decayed_sum<F: Scalar>(values: &[F], weights: &[F]) -> F {
    values
        .iter()
        .zip(weights)
        .map(|(&value, &weight)| weight * value)
        .sum()
}

/// Neighbor sum of cumulative centrality.
pub fn imh<F: Scalar>(g: &Graph, mc: &[F]) -> Result<Vec<F>> {
    check_len(g, mc.len())?;
    Ok(neighbor_sum(g, mc))
}

/// Extended mixing H-index: own `IMH` plus the neighbors' `IMH`.
pub fn emh<F: Scalar>(g: &Graph, imh: &[F]) -> Result<Vec<F>> {
    check_len(g, imh.len())?;
    Ok((0..g.node_count() as NodeId)
        .map(|v| imh[v as usize] + g.nbrs(v).iter().map(|&u| imh[u as usize]).sum::<F>())
        .collect())
}

fn neighbor_sum<F: Scalar>(g: &Graph, values: &[F]) -> Vec<F> {
    (0..g.node_count() as NodeId)
        .map(|v| g.nbrs(v).iter().map(|&u| values[u as usize]).sum())
        .collect()
}

/// Runs the full pipeline and returns every intermediate.
pub fn emh_pipeline<F: Scalar>(g: &Graph, params: &EmhParams<F>) -> Result<EmhTrace<F>> {
    emh_pipeline_with(g, params, CumulativeStrategy::SortedNeighborValues)
}

/// [`emh_pipeline`] under an explicit assembly strategy.
pub fn emh_pipeline_with<F: Scalar>(
    g: &Graph,
    params: &EmhParams<F>,
    strategy: CumulativeStrategy,
) -> Result<EmhTrace<F>> {
    params.validate()?;
    let h = h_index_values(g);
    let diversity = neighbor_diversity(g, &h)?;
    let ih = improved_h_index(g, &diversity, params)?;
    let s_vectors: Vec<Vec<F>> = (0..g.node_count() as NodeId)
        .map(|v| sorted_neighbor_values(&ih, g.nbrs(v), strategy))
        .collect();
    let weights = decay_weights(g, params);
    let mc: Vec<F> = s_vectors.iter().map(|sv| decayed_sum(sv, &weights)).collect();
    let imh_values = imh(g, &mc)?;
    let emh_values = emh(g, &imh_values)?;
    Ok(EmhTrace {
        h,
        diversity,
        ih,
        s_vectors,
        mc,
        imh: imh_values,
        emh: emh_values,
    })
}

fn check_len(g: &Graph, got: usize) -> Result<()> {
    if got == g.node_count() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: g.node_count(),
            got,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cycle, star};
    use approx::assert_relative_eq;

    fn defaults() -> EmhParams<f64> {
        EmhParams::default()
    }

    #[test]
    fn params_validation() {
        assert!(EmhParams::new(0.5, 0.3, 0.5, 10.0).is_ok());
        assert!(EmhParams::new(0.6, 0.4, 0.5, 10.0).is_err());
        assert!(EmhParams::new(0.5, 0.3, 1.0, 10.0).is_err());
        assert!(EmhParams::new(0.5, 0.3, 0.5, 0.0).is_err());
        assert_relative_eq!(defaults().alpha3(), 0.2);
    }

    #[test]
    fn diversity_counts_distinct_values() {
        // Node 0's neighbors get H values {2, 2, 3, 1}.
        let g = star(4);
        let h = vec![9, 2, 2, 3, 1];
        assert_eq!(neighbor_diversity(&g, &h).unwrap()[0], 3);

        let h_star = h_index_values(&g);
        assert_eq!(neighbor_diversity(&g, &h_star).unwrap(), vec![1; 5]);

        let with_isolated = crate::graph::Graph::from_edges(3, &[(0, 1)]);
        let h = h_index_values(&with_isolated);
        assert_eq!(neighbor_diversity(&with_isolated, &h).unwrap()[2], 0);
    }

    #[test]
    fn improved_h_index_collapses() {
        let g = star(4);
        let h = h_index_values(&g);
        let div = neighbor_diversity(&g, &h).unwrap();
        let ih = improved_h_index(&g, &div, &defaults()).unwrap();
        for &x in &ih {
            assert_relative_eq!(x, 0.3);
        }

        // All neighbors strictly more diverse -> alpha1; strictly less -> alpha3.
        let leafy = star(3);
        let div_hi = vec![0, 5, 5, 5];
        let ih = improved_h_index(&leafy, &div_hi, &defaults()).unwrap();
        assert_relative_eq!(ih[0], 0.5);
        let div_lo = vec![9, 5, 5, 5];
        let ih = improved_h_index(&leafy, &div_lo, &defaults()).unwrap();
        assert_relative_eq!(ih[0], 0.2);
    }

    #[test]
    fn cumulative_vector_sorts_descending() {
        let g = star(3);
        let ih = vec![0.0, 0.2, 0.5, 0.3];
        assert_eq!(cumulative_vector(&g, &ih, 0).unwrap(), vec![0.5, 0.3, 0.2]);
        assert_eq!(cumulative_vector(&g, &ih, 1).unwrap(), vec![0.0]);

        let with_isolated = crate::graph::Graph::from_edges(3, &[(0, 1)]);
        let ih = vec![0.1, 0.2, 0.0];
        assert!(cumulative_vector(&with_isolated, &ih, 2).unwrap().is_empty());
    }

    #[test]
    fn cumulative_strategies() {
        let g = star(3);
        let ih = vec![0.0, 0.5, 0.5, 0.2];
        let multiset =
            cumulative_vector_with(&g, &ih, 0, CumulativeStrategy::SortedNeighborValues).unwrap();
        assert_eq!(multiset, vec![0.5, 0.5, 0.2]);
        let distinct =
            cumulative_vector_with(&g, &ih, 0, CumulativeStrategy::DistinctNeighborValues).unwrap();
        assert_eq!(distinct, vec![0.5, 0.2]);
        let prefix = cumulative_vector_with(&g, &ih, 0, CumulativeStrategy::PrefixSums).unwrap();
        assert_relative_eq!(prefix[0], 0.5);
        assert_relative_eq!(prefix[1], 1.0);
        assert_relative_eq!(prefix[2], 1.2);
    }

    // Star-S4 walkthrough values frozen from a standalone high-precision
    // recomputation of the defining formulas.
    const MC_CENTER: f64 = 0.38349824756300649;
    const MC_LEAF: f64 = 0.13995494873052111;
    const IMH_CENTER: f64 = 0.55981979492208445;
    const EMH_CENTER: f64 = 2.0938127851741104;
    const EMH_LEAF: f64 = 0.94331804248509094;

    #[test]
    fn star_walkthrough_matches_frozen_values() {
        let g = star(4);
        let trace = emh_pipeline(&g, &defaults()).unwrap();
        assert_eq!(trace.h, vec![1; 5]);
        assert_eq!(trace.diversity, vec![1; 5]);
        assert_eq!(trace.s_vectors[0], vec![0.3; 4]);
        assert_eq!(trace.s_vectors[1], vec![0.3]);
        assert_relative_eq!(trace.mc[0], MC_CENTER, max_relative = 1e-12);
        assert_relative_eq!(trace.mc[1], MC_LEAF, max_relative = 1e-12);
        assert_relative_eq!(trace.imh[0], IMH_CENTER, max_relative = 1e-12);
        assert_relative_eq!(trace.imh[1], MC_CENTER, max_relative = 1e-12);
        assert_relative_eq!(trace.emh[0], EMH_CENTER, max_relative = 1e-12);
        assert_relative_eq!(trace.emh[1], EMH_LEAF, max_relative = 1e-12);
    }

    #[test]
    fn symmetric_graphs_stay_symmetric() {
        let edge = crate::graph::Graph::from_edges(2, &[(0, 1)]);
        let trace = emh_pipeline(&edge, &defaults()).unwrap();
        assert_eq!(trace.ih[0], trace.ih[1]);
        assert_eq!(trace.mc[0], trace.mc[1]);
        assert_eq!(trace.imh[0], trace.imh[1]);
        assert_eq!(trace.emh[0], trace.emh[1]);

        let ring = cycle(5);
        let trace = emh_pipeline(&ring, &defaults()).unwrap();
        for stage in [&trace.ih, &trace.mc, &trace.imh, &trace.emh] {
            for &x in stage.iter() {
                assert_eq!(x, stage[0]);
            }
        }
    }

    #[test]
    fn isolated_node_scores_zero_everywhere() {
        let g = crate::graph::Graph::from_edges(3, &[(0, 1)]);
        let trace = emh_pipeline(&g, &defaults()).unwrap();
        assert_eq!(trace.h[2], 0);
        assert_eq!(trace.diversity[2], 0);
        assert_eq!(trace.ih[2], 0.0);
        assert!(trace.s_vectors[2].is_empty());
        assert_eq!(trace.mc[2], 0.0);
        assert_eq!(trace.imh[2], 0.0);
        assert_eq!(trace.emh[2], 0.0);
    }

    #[test]
    fn pipeline_rejects_bad_params() {
        let g = star(2);
        let bad = EmhParams {
            alpha1: 0.7,
            alpha2: 0.4,
            s: 0.5,
            r: 10.0,
        };
        assert!(emh_pipeline(&g, &bad).is_err());
    }
}
