//! Config-file schema and flag merging.
//!
//! Experiments are driven by a TOML key-value file so whole runs can be
//! archived; any command-line flag overrides its file counterpart.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use spreadrank::centrality::KsdParams;
use spreadrank::emh::{CumulativeStrategy, EmhParams};
use spreadrank::sir::{DEFAULT_GAMMA, DEFAULT_RUNS};
use spreadrank::Measure;

use crate::{CliError, CommonArgs};

/// Raw file contents. Every key is optional; see the README for the schema.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub dataset: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub measures: Option<Vec<String>>,
    pub beta_grid: Option<String>,
    pub runs: Option<u32>,
    pub seed: Option<u64>,
    pub gamma: Option<f64>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub s: Option<f64>,
    pub r: Option<f64>,
    pub ksd_alpha: Option<f64>,
    pub ksd_mu: Option<f64>,
    pub wn_alpha: Option<f64>,
    pub gravity_radius: Option<u32>,
    pub avg_delta: Option<f64>,
    pub avg_steps: Option<u32>,
    pub eta_as_printed: Option<bool>,
    pub wn_own_score_term: Option<bool>,
    pub s_vector_strategy: Option<CumulativeStrategy>,
    pub node: Option<String>,
}

/// Fully resolved run settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub dataset: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub manifest: Option<PathBuf>,
    pub measures: Vec<Measure>,
    pub beta_grid: Option<String>,
    pub runs: u32,
    pub seed: u64,
    pub gamma: f64,
    pub emh: EmhParams<f64>,
    /// `None` defers to the dataset's manifest entry (then to 0.9/0.2).
    pub ksd_alpha: Option<f64>,
    pub ksd_mu: Option<f64>,
    pub wn_alpha: f64,
    pub gravity_radius: u32,
    pub avg_delta: f64,
    pub avg_steps: u32,
    pub eta_as_printed: bool,
    pub wn_own_score_term: bool,
    pub strategy: CumulativeStrategy,
    pub node: Option<String>,
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_GRAVITY_RADIUS: u32 = 3;
pub const DEFAULT_WN_ALPHA: f64 = 0.5;
pub const DEFAULT_AVG_DELTA: f64 = 0.01;
pub const DEFAULT_AVG_STEPS: u32 = 10;

pub fn load(args: &CommonArgs) -> Result<Settings, CliError> {
    let file = match &args.config {
        Some(path) => read_file_config(path)?,
        None => FileConfig::default(),
    };

    let measures = match (&args.measures, &file.measures) {
        (Some(flag), _) => flag.clone(),
        (None, Some(names)) => names
            .iter()
            .map(|n| n.parse::<Measure>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::Usage)?,
        (None, None) => Measure::COMPARED.to_vec(),
    };
    if measures.is_empty() {
        return Err(CliError::Usage("measure list is empty".into()));
    }

    let default_emh = EmhParams::<f64>::default();
    let emh = EmhParams {
        alpha1: args.alpha1.or(file.alpha1).unwrap_or(default_emh.alpha1),
        alpha2: args.alpha2.or(file.alpha2).unwrap_or(default_emh.alpha2),
        s: args.s.or(file.s).unwrap_or(default_emh.s),
        r: args.r.or(file.r).unwrap_or(default_emh.r),
    };
    emh.validate().map_err(CliError::from)?;

    let ksd_alpha = args.ksd_alpha.or(file.ksd_alpha);
    let ksd_mu = args.ksd_mu.or(file.ksd_mu);
    if let (Some(alpha), Some(mu)) = (ksd_alpha, ksd_mu) {
        KsdParams::new(alpha, mu).map_err(CliError::from)?;
    }

    Ok(Settings {
        dataset: args.dataset.clone().or(file.dataset),
        out_dir: args.out_dir.clone().or(file.out_dir).unwrap_or_else(|| "out".into()),
        manifest: file.manifest,
        measures,
        beta_grid: args.beta_grid.clone().or(file.beta_grid),
        runs: args.runs.or(file.runs).unwrap_or(DEFAULT_RUNS),
        seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        gamma: args.gamma.or(file.gamma).unwrap_or(DEFAULT_GAMMA),
        emh,
        ksd_alpha,
        ksd_mu,
        wn_alpha: args.wn_alpha.or(file.wn_alpha).unwrap_or(DEFAULT_WN_ALPHA),
        gravity_radius: file.gravity_radius.unwrap_or(DEFAULT_GRAVITY_RADIUS),
        avg_delta: file.avg_delta.unwrap_or(DEFAULT_AVG_DELTA),
        avg_steps: file.avg_steps.unwrap_or(DEFAULT_AVG_STEPS),
        eta_as_printed: file.eta_as_printed.unwrap_or(false),
        wn_own_score_term: file.wn_own_score_term.unwrap_or(false),
        strategy: file.s_vector_strategy.unwrap_or_default(),
        node: file.node,
    })
}

fn read_file_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

impl Settings {
    pub fn dataset(&self) -> Result<&Path, CliError> {
        self.dataset
            .as_deref()
            .ok_or_else(|| CliError::Usage("no dataset given (use --dataset or a config file)".into()))
    }
}

/// Parses a MIN:MAX:STEP grid specification into concrete rates.
pub fn parse_beta_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [min, max, step] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "bad beta grid '{spec}', expected MIN:MAX:STEP"
        )));
    };
    let parse = |token: &str| {
        token
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("bad beta grid number '{token}'")))
    };
    let (min, max, step) = (parse(min)?, parse(max)?, parse(step)?);
    if !(0.0..=1.0).contains(&min) || !(0.0..=1.0).contains(&max) || min > max || !(step > 0.0) {
        return Err(CliError::Usage(format!(
            "bad beta grid '{spec}': need 0 <= MIN <= MAX <= 1 and STEP > 0"
        )));
    }
    let mut grid = Vec::new();
    let mut k = 0u32;
    loop {
        let beta = min + f64::from(k) * step;
        if beta > max + 1e-9 {
            break;
        }
        grid.push(beta.min(1.0));
        k += 1;
    }
    Ok(grid)
}
