//! Ranking-quality metrics.
//!
//! [`kendall_tau`] implements the pair-counting correlation with the
//! ties-count-toward-neither rule over the all-pairs denominator: pairs tied
//! in either vector contribute to neither the concordant nor the discordant
//! count, but the denominator stays `n(n−1)`. The O(n log n) implementation
//! is kept exactly equal to an exhaustive pair-enumeration oracle (see the
//! test suites) by doing all counting in integers and dividing once.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::centrality::{Measure, ScoreVector};
use crate::graph::{Graph, NodeId};
use crate::scalar::Scalar;
use crate::sir::{spreading_capability, SirConfig};
use crate::{Error, Result};

/// Rank correlation between two score vectors over the same node set.
pub fn kendall_tau<F: Scalar>(m: &ScoreVector<F>, n: &ScoreVector<F>) -> Result<F> {
    kendall_tau_slices(&m.scores, &n.scores)
}

/// [`kendall_tau`] on raw slices.
pub fn kendall_tau_slices<F: Scalar>(x: &[F], y: &[F]) -> Result<F> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::TooFewNodes { min: 2, got: n });
    }
    if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteScore);
    }

    // Sort lexicographically by (x, y).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        x[a].partial_cmp(&x[b])
            .unwrap()
            .then_with(|| y[a].partial_cmp(&y[b]).unwrap())
    });

    // Pairs tied in x, and tied in both, from run lengths.
    let mut tied_x: u64 = 0;
    let mut tied_xy: u64 = 0;
    let mut run_x: u64 = 1;
    let mut run_xy: u64 = 1;
    for w in order.windows(2) {
        if x[w[0]] == x[w[1]] {
            run_x += 1;
            if y[w[0]] == y[w[1]] {
                run_xy += 1;
            } else {
                tied_xy += run_xy * (run_xy - 1) / 2;
                run_xy = 1;
            }
        } else {
            tied_x += run_x * (run_x - 1) / 2;
            run_x = 1;
            tied_xy += run_xy * (run_xy - 1) / 2;
            run_xy = 1;
        }
    }
    tied_x += run_x * (run_x - 1) / 2;
    tied_xy += run_xy * (run_xy - 1) / 2;

    // Merge sort by y, counting discordant pairs as inversions.
    let mut ys: Vec<F> = order.iter().map(|&i| y[i]).collect();
    let mut scratch = ys.clone();
    let discordant = merge_count(&mut ys, &mut scratch);

    // Pairs tied in y, from run lengths over the now-sorted values.
    let mut tied_y: u64 = 0;
    let mut run_y: u64 = 1;
    for w in ys.windows(2) {
        if w[0] == w[1] {
            run_y += 1;
        } else {
            tied_y += run_y * (run_y - 1) / 2;
            run_y = 1;
        }
    }
    tied_y += run_y * (run_y - 1) / 2;

    let total = (n as u64) * (n as u64 - 1) / 2;
    let concordant_minus_discordant =
        total as i64 - tied_x as i64 - tied_y as i64 + tied_xy as i64 - 2 * discordant as i64;

    let numer = F::from_i64(2 * concordant_minus_discordant).unwrap();
    let denom = F::from_u64((n as u64) * (n as u64 - 1)).unwrap();
    Ok(numer / denom)
}

/// Bottom-up merge sort counting strict inversions. Equal keys take the left
/// element first, so ties never count as inversions.
fn merge_count<F: Scalar>(values: &mut Vec<F>, scratch: &mut Vec<F>) -> u64 {
    let n = values.len();
    let mut inversions: u64 = 0;
    let mut width = 1usize;
    while width < n {
        let mut start = 0usize;
        while start < n {
            let mid = (start + width).min(n);
            let end = (start + 2 * width).min(n);
            let (mut i, mut j, mut k) = (start, mid, start);
            while i < mid || j < end {
                if i < mid && (j >= end || values[i] <= values[j]) {
                    scratch[k] = values[i];
                    i += 1;
                } else {
                    inversions += (mid - i) as u64;
                    scratch[k] = values[j];
                    j += 1;
                }
                k += 1;
            }
            start = end;
        }
        std::mem::swap(values, scratch);
        width *= 2;
    }
    inversions
}

/// Nodes grouped into tie classes ordered by descending score.
///
/// Scores are compared after rounding to 12 significant decimal digits so
/// floating-point noise cannot split a genuine tie.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingList {
    /// `(node, rounded score)` ordered by descending score, ties by index.
    pub entries: Vec<(NodeId, f64)>,
    /// Maximal equal-score groups, in descending score order.
    pub tie_classes: Vec<Vec<NodeId>>,
}

/// Comparison precision used by [`ranking_list`].
pub fn round_to_comparison_precision(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

/// Builds the tie-class ranking of a score vector.
pub fn ranking_list<F: Scalar>(scores: &ScoreVector<F>) -> RankingList {
    let mut entries: Vec<(NodeId, f64)> = scores
        .scores
        .iter()
        .enumerate()
        .map(|(i, &s)| (i as NodeId, round_to_comparison_precision(s.to_f64_lossy())))
        .collect();
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite score").then(a.0.cmp(&b.0)));
    let mut tie_classes: Vec<Vec<NodeId>> = Vec::new();
    let mut previous: Option<f64> = None;
    for &(node, score) in &entries {
        if previous == Some(score) {
            tie_classes.last_mut().expect("class exists").push(node);
        } else {
            tie_classes.push(vec![node]);
        }
        previous = Some(score);
    }
    RankingList {
        entries,
        tie_classes,
    }
}

/// Monotonicity of a ranking: `(1 − Σ Nᵢ(Nᵢ−1) / (N(N−1)))²` over tie
/// classes of size `Nᵢ`. 1 means all ranks distinct, 0 a single class.
pub fn monotonicity<F: Scalar>(ranking: &RankingList) -> Result<F> {
    let n = ranking.entries.len() as u64;
    if n < 2 {
        return Err(Error::TooFewNodes {
            min: 2,
            got: n as usize,
        });
    }
    let tied: u64 = ranking
        .tie_classes
        .iter()
        .map(|class| {
            let size = class.len() as u64;
            size * (size - 1)
        })
        .sum();
    let ratio = F::from_u64(tied).unwrap() / F::from_u64(n * (n - 1)).unwrap();
    Ok((F::one() - ratio).powi(2))
}

/// The infection-rate grid `beta_th + k·delta` for `k = 1..=steps`.
///
/// Fails before any simulation if a grid point exceeds 1 (beyond float
/// round-off).
pub fn beta_grid(beta_th: f64, delta: f64, steps: u32) -> Result<Vec<f64>> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParam {
            name: "delta",
            value: delta,
            constraint: "delta > 0",
        });
    }
    if steps == 0 {
        return Err(Error::InvalidParam {
            name: "steps",
            value: 0.0,
            constraint: "steps >= 1",
        });
    }
    let mut grid = Vec::with_capacity(steps as usize);
    for k in 1..=steps {
        let beta = beta_th + f64::from(k) * delta;
        if beta > 1.0 + 1e-9 {
            return Err(Error::BetaOutOfRange { beta });
        }
        grid.push(beta.min(1.0));
    }
    Ok(grid)
}

/// Mean Kendall correlation between a measure and simulated spread over the
/// grid `beta_th + k·delta`, `k = 1..=steps`.
pub fn averaged_tau<F: Scalar>(
    g: &Graph,
    measure: &ScoreVector<F>,
    beta_th: f64,
    delta: f64,
    steps: u32,
    sir_template: &SirConfig,
) -> Result<F> {
    measure.check_len(g)?;
    let grid = beta_grid(beta_th, delta, steps)?;
    let mut total = F::zero();
    for beta in &grid {
        let outcome = spreading_capability::<F>(g, &sir_template.with_beta(*beta))?;
        total += kendall_tau_slices(&measure.scores, &outcome.spread)?;
    }
    Ok(total / F::from_usize(grid.len()).unwrap())
}

/// Relative improvement of one correlation over another, in percent:
/// `(tau_emh − tau_other) / |tau_other| · 100`, and 0 when the reference is 0.
pub fn improvement_pct<F: Scalar>(tau_emh: F, tau_other: F) -> F {
    if tau_other == F::zero() {
        F::zero()
    } else {
        (tau_emh - tau_other) / tau_other.abs() * F::from_f64(100.0).unwrap()
    }
}

/// The literal two-branch form with a signed denominator, kept for
/// comparison runs.
pub fn improvement_pct_as_printed<F: Scalar>(tau_emh: F, tau_other: F) -> F {
    if tau_other == F::zero() {
        F::zero()
    } else {
        (tau_emh - tau_other) / tau_other * F::from_f64(100.0).unwrap()
    }
}

/// Evaluation summary for one measure on one network.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport<F> {
    pub measure: Measure,
    /// `(beta, tau)` samples over the plotted grid.
    pub tau_curve: Vec<(f64, F)>,
    /// Mean tau over the averaging grid only.
    pub avg_tau: F,
    pub monotonicity: F,
    /// Improvement percentage of the proposed measure over each baseline,
    /// from averaged tau values.
    pub eta_vs: BTreeMap<String, F>,
}
