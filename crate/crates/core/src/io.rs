//! Fixed-format CSV and JSON emission.
//!
//! Formats are part of the tool's contract: scores and spreads print with
//! six decimal places, one row per node in original-label order, so reruns
//! with identical inputs produce byte-identical files.

use std::io::Write;

use serde::Serialize;

use crate::centrality::{Measure, ScoreVector};
use crate::emh::EmhTrace;
use crate::eval::EvalReport;
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::sir::{SirConfig, SirOutcome};
use crate::{Error, Result};

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

/// `node,score` with labels and six decimal places.
pub fn write_score_csv<W: Write, F: Scalar>(
    mut w: W,
    g: &Graph,
    scores: &ScoreVector<F>,
) -> Result<()> {
    check_len(g, scores.scores.len())?;
    writeln!(w, "node,score")?;
    for (v, s) in scores.scores.iter().enumerate() {
        writeln!(w, "{},{:.6}", g.label(v as u32), s.to_f64_lossy())?;
    }
    Ok(())
}

/// `node,spread` with labels and six decimal places.
pub fn write_sir_csv<W: Write, F: Scalar>(
    mut w: W,
    g: &Graph,
    outcome: &SirOutcome<F>,
) -> Result<()> {
    check_len(g, outcome.spread.len())?;
    writeln!(w, "node,spread")?;
    for (v, s) in outcome.spread.iter().enumerate() {
        writeln!(w, "{},{:.6}", g.label(v as u32), s.to_f64_lossy())?;
    }
    Ok(())
}

/// JSON sidecar recording how a spread file was produced.
pub fn write_sir_sidecar<W: Write>(w: W, config: &SirConfig) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(w, config)
}

#[derive(Serialize)]
struct TraceRecord<'a, F> {
    node: &'a str,
    h: u32,
    diversity: u32,
    ih: F,
    s_vector: &'a [F],
    mc: F,
    imh: F,
    emh: F,
}

/// One JSON record per node with every pipeline intermediate.
///
/// `nodes` selects and orders the emitted records.
pub fn trace_records_json<F: Scalar + Serialize>(
    g: &Graph,
    trace: &EmhTrace<F>,
    nodes: &[u32],
) -> Result<String> {
    check_len(g, trace.emh.len())?;
    let records: Vec<TraceRecord<F>> = nodes
        .iter()
        .map(|&v| {
            let i = v as usize;
            TraceRecord {
                node: g.label(v),
                h: trace.h[i],
                diversity: trace.diversity[i],
                ih: trace.ih[i],
                s_vector: &trace.s_vectors[i],
                mc: trace.mc[i],
                imh: trace.imh[i],
                emh: trace.emh[i],
            }
        })
        .collect();
    Ok(serde_json::to_string_pretty(&records).expect("serializable trace"))
}

/// Full-graph variant of [`trace_records_json`].
pub fn trace_json<F: Scalar + Serialize>(g: &Graph, trace: &EmhTrace<F>) -> Result<String> {
    let nodes: Vec<u32> = (0..g.node_count() as u32).collect();
    trace_records_json(g, trace, &nodes)
}

/// `measure,beta,tau` rows for correlation-curve plots.
pub fn write_tau_curve_csv<W: Write, F: Scalar>(mut w: W, rows: &[(Measure, f64, F)]) -> Result<()> {
    writeln!(w, "measure,beta,tau")?;
    for (measure, beta, tau) in rows {
        writeln!(w, "{},{beta:.6},{:.6}", measure.name(), tau.to_f64_lossy())?;
    }
    Ok(())
}

/// `baseline,beta,eta_pct` rows for improvement-percentage plots.
pub fn write_eta_curve_csv<W: Write, F: Scalar>(mut w: W, rows: &[(Measure, f64, F)]) -> Result<()> {
    writeln!(w, "baseline,beta,eta_pct")?;
    for (measure, beta, eta) in rows {
        writeln!(w, "{},{beta:.6},{:.6}", measure.name(), eta.to_f64_lossy())?;
    }
    Ok(())
}

/// Pretty JSON for a set of per-measure evaluation reports.
pub fn reports_json<F: Scalar + Serialize>(reports: &[EvalReport<F>]) -> String {
    serde_json::to_string_pretty(reports).expect("serializable reports")
}
