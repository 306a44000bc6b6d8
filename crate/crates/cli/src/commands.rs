//! The four subcommands.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufReader, Write};
use std::path::Path;

use spreadrank::centrality::{
    degree_centrality, gravity, h_index, improved_gravity, k_shell, ksd_centrality,
    neighborhood_coreness, weight_neighborhood_with, KsdParams, NeighborTerm,
};
use spreadrank::emh::emh_pipeline_with;
use spreadrank::eval::{
    improvement_pct, improvement_pct_as_printed, kendall_tau_slices, monotonicity, ranking_list,
    EvalReport,
};
use spreadrank::graph::{parse_edge_list, ParseOptions};
use spreadrank::io as srio;
use spreadrank::sir::{epidemic_threshold, spreading_capability, SirConfig};
use spreadrank::{Graph, GraphStats, Measure, ScoreVec, Score};

use crate::config::{self, Settings};
use crate::manifest;
use crate::{CliError, CommonArgs};

pub fn stats(args: &CommonArgs, manifest_flag: Option<&Path>) -> Result<(), CliError> {
    let settings = config::load(args)?;
    let started = std::time::Instant::now();
    let (g, dataset) = load_graph(&settings)?;
    let stats: GraphStats<Score> = g.stats()?;
    println!("{}", stats_row(&stats));

    let manifest_path = manifest_flag
        .map(Path::to_path_buf)
        .or_else(|| settings.manifest.clone());
    if let Some(path) = manifest_path {
        let entries = manifest::load(&path)?;
        match manifest::entry_for(&entries, &dataset) {
            Some(entry) => {
                let problems = manifest::mismatches(entry, &g, &stats);
                if problems.is_empty() {
                    eprintln!("manifest: {} matches", entry.name);
                } else {
                    for p in &problems {
                        eprintln!("manifest mismatch ({}): {p}", entry.name);
                    }
                    return Err(CliError::Data(format!(
                        "dataset does not match manifest entry '{}'",
                        entry.name
                    )));
                }
            }
            None => eprintln!(
                "manifest: no entry for {}",
                dataset.file_name().unwrap_or_default().to_string_lossy()
            ),
        }
    }
    eprintln!("stats computed in {:.3}s", started.elapsed().as_secs_f64());
    Ok(())
}

/// `|V| |E| avg(3dp) max assortativity(4dp or <undefined>)`.
pub fn stats_row(stats: &GraphStats<Score>) -> String {
    let assort = match stats.assortativity {
        Some(r) => format!("{:.4}", normalize_zero(r)),
        None => "<undefined>".to_string(),
    };
    format!(
        "{} {} {:.3} {} {}",
        stats.num_nodes, stats.num_edges, stats.avg_degree, stats.max_degree, assort
    )
}

fn normalize_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn rank(args: &CommonArgs) -> Result<(), CliError> {
    let settings = config::load(args)?;
    let (g, dataset) = load_graph(&settings)?;
    let scores = compute_measures(&g, &settings, &dataset)?;
    fs::create_dir_all(&settings.out_dir)?;

    println!("measure M");
    for sv in &scores {
        let path = settings.out_dir.join(format!("{}.csv", sv.measure.name()));
        let mut file = fs::File::create(&path)?;
        srio::write_score_csv(&mut file, &g, sv)?;
        let m: Score = monotonicity(&ranking_list(sv))?;
        println!("{} {:.4}", sv.measure.name(), m);
    }
    eprintln!(
        "wrote {} score files to {}",
        scores.len(),
        settings.out_dir.display()
    );
    Ok(())
}

pub fn evaluate(args: &CommonArgs) -> Result<(), CliError> {
    let settings = config::load(args)?;
    let (g, dataset) = load_graph(&settings)?;
    let scores = compute_measures(&g, &settings, &dataset)?;
    fs::create_dir_all(settings.out_dir.join("spread"))?;

    let beta_th: Score = epidemic_threshold(&g)?;
    eprintln!("epidemic threshold {beta_th:.6}");

    // Averaging grid, then the plotted superset.
    let avg_grid = spreadrank::eval::beta_grid(beta_th, settings.avg_delta, settings.avg_steps)?;
    let plot_grid = match &settings.beta_grid {
        Some(spec) => config::parse_beta_grid(spec)?,
        None => {
            let max = (beta_th + 0.15).min(1.0);
            let mut grid = Vec::new();
            let mut k = 1u32;
            loop {
                let beta = f64::from(k) * 0.01;
                if beta > max + 1e-9 {
                    break;
                }
                grid.push(beta);
                k += 1;
            }
            grid
        }
    };
    let mut grid: Vec<f64> = plot_grid.iter().chain(avg_grid.iter()).copied().collect();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-9);

    let template = SirConfig::new(0.0, settings.gamma, settings.runs, settings.seed)
        .map_err(CliError::from)?;

    // Ground truth once per grid point, shared by every measure.
    let mut tau_rows: Vec<(Measure, f64, Score)> = Vec::new();
    let mut tau_by_measure: BTreeMap<Measure, Vec<(f64, Score)>> = BTreeMap::new();
    for &beta in &grid {
        let config = template.with_beta(beta);
        let outcome = spreading_capability::<Score>(&g, &config)?;
        write_spread_files(&settings.out_dir, &g, &config, &outcome)?;
        for sv in &scores {
            let tau = kendall_tau_slices(&sv.scores, &outcome.spread)?;
            tau_rows.push((sv.measure, beta, tau));
            tau_by_measure.entry(sv.measure).or_default().push((beta, tau));
        }
        eprintln!("beta {beta:.4}: simulated {} runs/node", settings.runs);
    }

    let is_avg_point = |beta: f64| avg_grid.iter().any(|&a| (a - beta).abs() < 1e-9);
    let avg_tau: BTreeMap<Measure, Score> = tau_by_measure
        .iter()
        .map(|(&measure, curve)| {
            let taus: Vec<Score> = curve
                .iter()
                .filter(|(beta, _)| is_avg_point(*beta))
                .map(|&(_, tau)| tau)
                .collect();
            (measure, taus.iter().sum::<Score>() / taus.len() as Score)
        })
        .collect();

    let eta = if settings.eta_as_printed {
        improvement_pct_as_printed::<Score>
    } else {
        improvement_pct::<Score>
    };

    // Improvement of the proposed measure over each baseline, per beta and
    // averaged, when it is part of the run.
    let mut eta_rows: Vec<(Measure, f64, Score)> = Vec::new();
    let mut eta_avg: BTreeMap<String, Score> = BTreeMap::new();
    if let Some(emh_curve) = tau_by_measure.get(&Measure::Emh) {
        for (&measure, curve) in &tau_by_measure {
            if measure == Measure::Emh {
                continue;
            }
            for ((beta, tau_other), (_, tau_emh)) in curve.iter().zip(emh_curve) {
                eta_rows.push((measure, *beta, eta(*tau_emh, *tau_other)));
            }
            eta_avg.insert(
                measure.name().to_string(),
                eta(avg_tau[&Measure::Emh], avg_tau[&measure]),
            );
        }
    }
    eta_rows.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.partial_cmp(&b.1).unwrap()));

    let reports: Vec<EvalReport<Score>> = scores
        .iter()
        .map(|sv| -> Result<EvalReport<Score>, CliError> {
            Ok(EvalReport {
                measure: sv.measure,
                tau_curve: tau_by_measure[&sv.measure].clone(),
                avg_tau: avg_tau[&sv.measure],
                monotonicity: monotonicity(&ranking_list(sv))?,
                eta_vs: if sv.measure == Measure::Emh {
                    eta_avg.clone()
                } else {
                    BTreeMap::new()
                },
            })
        })
        .collect::<Result<_, _>>()?;

    let mut tau_file = fs::File::create(settings.out_dir.join("tau_curve.csv"))?;
    srio::write_tau_curve_csv(&mut tau_file, &tau_rows)?;
    let mut eta_file = fs::File::create(settings.out_dir.join("eta_curve.csv"))?;
    srio::write_eta_curve_csv(&mut eta_file, &eta_rows)?;
    fs::write(
        settings.out_dir.join("summary.json"),
        srio::reports_json(&reports),
    )?;

    println!("measure avg_tau");
    for report in &reports {
        println!("{} {:.6}", report.measure.name(), report.avg_tau);
    }
    Ok(())
}

fn write_spread_files(
    out_dir: &Path,
    g: &Graph,
    config: &SirConfig,
    outcome: &spreadrank::sir::SirOutcome<Score>,
) -> Result<(), CliError> {
    let stem = format!("beta_{:.6}", config.beta);
    let mut csv = fs::File::create(out_dir.join("spread").join(format!("{stem}.csv")))?;
    srio::write_sir_csv(&mut csv, g, outcome)?;
    let mut sidecar = fs::File::create(out_dir.join("spread").join(format!("{stem}.meta.json")))?;
    srio::write_sir_sidecar(&mut sidecar, config)
        .map_err(|e| CliError::Runtime(format!("cannot serialize sidecar: {e}")))?;
    sidecar.write_all(b"\n")?;
    Ok(())
}

pub fn trace(args: &CommonArgs, node_flag: Option<&str>) -> Result<(), CliError> {
    let settings = config::load(args)?;
    let (g, _) = load_graph(&settings)?;
    let label = node_flag
        .map(str::to_string)
        .or_else(|| settings.node.clone())
        .ok_or_else(|| CliError::Usage("no node label given (use --node)".into()))?;

    let Some(node) = g.node_by_label(&label) else {
        let suggestion = nearest_label(&g, &label)
            .map(|l| format!(" (closest label: '{l}')"))
            .unwrap_or_default();
        return Err(CliError::Data(format!(
            "unknown node label '{label}'{suggestion}"
        )));
    };

    let trace = emh_pipeline_with::<Score>(&g, &settings.emh, settings.strategy)?;
    let dist = g.bfs_distances(node, Some(2))?;
    let mut nearby: Vec<(u32, u32)> = dist
        .iter()
        .enumerate()
        .filter_map(|(v, d)| d.map(|d| (d, v as u32)))
        .collect();
    nearby.sort_unstable();
    let nodes: Vec<u32> = nearby.into_iter().map(|(_, v)| v).collect();
    println!("{}", srio::trace_records_json(&g, &trace, &nodes)?);
    Ok(())
}

fn nearest_label<'g>(g: &'g Graph, query: &str) -> Option<&'g str> {
    g.labels()
        .iter()
        .map(|l| (edit_distance(l, query), l.as_str()))
        .min_by_key(|&(d, l)| (d, l.len(), l))
        .map(|(_, l)| l)
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut previous_diagonal = row[0];
        row[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let substitution = previous_diagonal + usize::from(ca != cb);
            previous_diagonal = row[j + 1];
            row[j + 1] = substitution.min(row[j] + 1).min(previous_diagonal + 1);
        }
    }
    row[b.len()]
}

fn load_graph(settings: &Settings) -> Result<(Graph, std::path::PathBuf), CliError> {
    let path = settings.dataset()?.to_path_buf();
    let file = fs::File::open(&path)
        .map_err(|e| CliError::Data(format!("cannot open dataset {}: {e}", path.display())))?;
    let (g, warnings) = parse_edge_list(BufReader::new(file), &ParseOptions::default())
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    if warnings.self_loops > 0 {
        eprintln!("warning: dropped {} self-loops", warnings.self_loops);
    }
    if warnings.duplicate_edges > 0 {
        eprintln!("warning: dropped {} duplicate edges", warnings.duplicate_edges);
    }
    Ok((g, path))
}

/// Per-network ksd parameters: explicit flags win, then the manifest entry,
/// then 0.9/0.2.
fn ksd_params(settings: &Settings, dataset: &Path) -> Result<KsdParams<Score>, CliError> {
    let from_manifest = || -> Option<(f64, f64)> {
        let path = settings.manifest.clone()?;
        let entries = manifest::load(&path).ok()?;
        let entry = manifest::entry_for(&entries, dataset)?;
        Some((entry.ksd_alpha, entry.ksd_mu))
    };
    let defaults = KsdParams::<Score>::default();
    let (manifest_alpha, manifest_mu) = from_manifest().unzip();
    let alpha = settings
        .ksd_alpha
        .or(manifest_alpha)
        .unwrap_or(defaults.alpha);
    let mu = settings.ksd_mu.or(manifest_mu).unwrap_or(defaults.mu);
    KsdParams::new(alpha, mu).map_err(CliError::from)
}

/// Computes the requested measures, sharing the k-shell vector and the
/// pipeline trace across everything that needs them.
fn compute_measures(
    g: &Graph,
    settings: &Settings,
    dataset: &Path,
) -> Result<Vec<ScoreVec>, CliError> {
    let needs_ks = settings.measures.iter().any(|m| {
        matches!(
            m,
            Measure::Ks | Measure::Cn | Measure::Cks | Measure::Gravity | Measure::Igc | Measure::Ksd
        )
    });
    let needs_trace = settings
        .measures
        .iter()
        .any(|m| matches!(m, Measure::Ih | Measure::Mc | Measure::Imh | Measure::Emh));

    let ks = needs_ks.then(|| k_shell::<Score>(g));
    let trace = if needs_trace {
        Some(emh_pipeline_with::<Score>(g, &settings.emh, settings.strategy)?)
    } else {
        None
    };
    let wn_term = if settings.wn_own_score_term {
        NeighborTerm::OwnScore
    } else {
        NeighborTerm::NeighborScore
    };

    let mut out = Vec::with_capacity(settings.measures.len());
    for &measure in &settings.measures {
        let sv = match measure {
            Measure::Dc => degree_centrality(g),
            Measure::Ks => ks.clone().expect("ks computed"),
            Measure::Hi => h_index(g),
            Measure::Cn => neighborhood_coreness(g, ks.as_ref().expect("ks computed"))?,
            Measure::Cdc => {
                let dc = degree_centrality(g);
                weight_neighborhood_with(g, &dc, settings.wn_alpha, wn_term)?
            }
            Measure::Cks => {
                weight_neighborhood_with(g, ks.as_ref().expect("ks computed"), settings.wn_alpha, wn_term)?
            }
            Measure::Gravity => gravity(g, ks.as_ref().expect("ks computed"), settings.gravity_radius)?,
            Measure::Igc => {
                improved_gravity(g, ks.as_ref().expect("ks computed"), settings.gravity_radius)?
            }
            Measure::Ksd => {
                let params = ksd_params(settings, dataset)?;
                ksd_centrality(g, ks.as_ref().expect("ks computed"), &params)?
            }
            Measure::Ih | Measure::Mc | Measure::Imh | Measure::Emh => trace
                .as_ref()
                .expect("trace computed")
                .score_vector(measure)
                .expect("pipeline stage"),
        };
        out.push(sv);
    }
    Ok(out)
}
