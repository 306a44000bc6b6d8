//! Dataset manifest: one JSON object per dataset recording the statistics
//! the bundled file must satisfy, plus the per-network ksd parameters.

use std::path::Path;

use serde::Deserialize;

use spreadrank::{Graph, GraphStats};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub nodes: usize,
    pub edges: usize,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub ksd_alpha: f64,
    pub ksd_mu: f64,
}

pub fn load(path: &Path) -> Result<Vec<ManifestEntry>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read manifest {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("bad manifest {}: {e}", path.display())))
}

/// Finds the entry whose `file` matches the dataset's file name.
pub fn entry_for<'a>(entries: &'a [ManifestEntry], dataset: &Path) -> Option<&'a ManifestEntry> {
    let file_name = dataset.file_name()?.to_str()?;
    entries.iter().find(|e| e.file == file_name)
}

/// Mismatches between computed statistics and a manifest entry, one line per
/// offending field. Empty means the dataset matches.
pub fn mismatches(entry: &ManifestEntry, g: &Graph, stats: &GraphStats<f64>) -> Vec<String> {
    let mut out = Vec::new();
    if g.node_count() != entry.nodes {
        out.push(format!("nodes: expected {}, found {}", entry.nodes, g.node_count()));
    }
    if g.edge_count() != entry.edges {
        out.push(format!("edges: expected {}, found {}", entry.edges, g.edge_count()));
    }
    if (stats.avg_degree - entry.avg_degree).abs() >= 0.0005 {
        out.push(format!(
            "avg_degree: expected {:.3}, found {:.3}",
            entry.avg_degree, stats.avg_degree
        ));
    }
    if stats.max_degree != entry.max_degree {
        out.push(format!(
            "max_degree: expected {}, found {}",
            entry.max_degree, stats.max_degree
        ));
    }
    out
}
