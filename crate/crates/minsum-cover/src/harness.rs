//! Batch experiment driver: greedy versus repeated local search on seeded
//! random instances, with CSV/SVG emission.
//!
//! For each instance the harness runs greedy once and local search
//! `local_runs` times (the last run starts from the cost-order permutation,
//! the others from seeded random permutations), normalizes every objective by
//! the best of the batch, and reports how often each solver class attains
//! that best. Everything is derived deterministically from `master_seed`:
//!
//! * instance seed  = derive_seed(master_seed, instance_index)
//! * generator seed = derive_seed(instance_seed, 0)
//! * cost seed      = derive_seed(instance_seed, 1)
//! * k-th random-init seed = derive_seed(instance_seed, 2 + k)
//!
//! Instances are processed in index order on one thread, so a (config,
//! master_seed) pair fixes every output byte.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::generators::{
    gen_facility_location, gen_pipelined_set_cover, uniform_costs, FacilityGenConfig,
    SetCoverGenConfig, StationSource,
};
use crate::instance::Instance;
use crate::rng::derive_seed;
use crate::solvers::{
    cost_order_init, greedy, local_search, random_init, LocalSearchConfig, SearchMode,
};

/// Relative slack when deciding whether a run's objective ties the best.
pub const BEST_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    PipelinedSetCover,
    FacilityLocation,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::PipelinedSetCover => "pipelined_set_cover",
            Family::FacilityLocation => "facility_location",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub family: Family,
    /// Elements per instance.
    pub n: usize,
    pub instances: usize,
    /// Local-search runs per instance; the last starts from the cost-order
    /// permutation, the preceding ones from seeded random permutations.
    pub local_runs: usize,
    /// Rounds per local-search run; `None` means n.
    pub rounds_per_run: Option<usize>,
    pub master_seed: u64,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// The defaults the headline comparison uses: n = 30, 100 instances,
    /// 5 local runs of n rounds each.
    pub fn new(family: Family, master_seed: u64, output_dir: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            family,
            n: 30,
            instances: 100,
            local_runs: 5,
            rounds_per_run: None,
            master_seed,
            output_dir: output_dir.into(),
        }
    }

    fn validate(&self) -> Result<()> {
        let fail = |reason: &str| Err(Error::InvalidConfig { reason: reason.to_string() });
        if self.n == 0 {
            return fail("experiment needs n >= 1");
        }
        if self.instances == 0 {
            return fail("experiment needs at least one instance");
        }
        if self.local_runs == 0 {
            return fail("experiment needs at least one local-search run");
        }
        if self.rounds_per_run == Some(0) {
            return fail("rounds_per_run must be >= 1 when set");
        }
        Ok(())
    }
}

/// One solver run on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// "greedy" or "local".
    pub solver: &'static str,
    /// "none" for greedy; "random-k" or "cost" for local runs.
    pub init: String,
    pub objective: f64,
    /// objective / best objective of this instance; ≥ 1.
    pub relative: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRecord {
    pub instance_id: usize,
    pub best_objective: f64,
    /// Greedy first, then local runs in seed order, then the cost-order run.
    pub runs: Vec<RunRecord>,
}

impl InstanceRecord {
    /// Smallest relative value among the local-search runs.
    pub fn best_local_relative(&self) -> f64 {
        self.runs
            .iter()
            .filter(|r| r.solver == "local")
            .map(|r| r.relative)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn greedy_relative(&self) -> f64 {
        self.runs
            .iter()
            .find(|r| r.solver == "greedy")
            .map(|r| r.relative)
            .expect("every instance records a greedy run")
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub records: Vec<InstanceRecord>,
}

impl ExperimentResult {
    /// Fraction of instances whose greedy run ties the best objective.
    pub fn greedy_best_fraction(&self) -> f64 {
        self.fraction(|r| r.greedy_relative() <= 1.0 + BEST_TIE_TOLERANCE)
    }

    /// Fraction of instances where some local run ties the best objective.
    pub fn local_best_fraction(&self) -> f64 {
        self.fraction(|r| r.best_local_relative() <= 1.0 + BEST_TIE_TOLERANCE)
    }

    fn fraction(&self, pred: impl Fn(&InstanceRecord) -> bool) -> f64 {
        self.records.iter().filter(|r| pred(r)).count() as f64 / self.records.len() as f64
    }
}

fn generate_instance(config: &ExperimentConfig, instance_seed: u64) -> Result<Instance> {
    let n = config.n;
    let gen_seed = derive_seed(instance_seed, 0);
    let cost_seed = derive_seed(instance_seed, 1);
    let costs = uniform_costs(n, cost_seed);
    match config.family {
        Family::PipelinedSetCover => {
            let cu = gen_pipelined_set_cover(&SetCoverGenConfig {
                n,
                m: 2 * n,
                gamma: 4,
                p: 0.3,
                p_prime: 0.7,
                seed: gen_seed,
            })?;
            Instance::new(costs, cu)
        }
        Family::FacilityLocation => {
            let fu = gen_facility_location(&FacilityGenConfig {
                stations: StationSource::UnitSquare { count: n },
                customers: 2 * n,
                seed: gen_seed,
            })?;
            Instance::new(costs, fu)
        }
    }
}

fn relative(objective: f64, best: f64) -> f64 {
    if best == 0.0 {
        1.0
    } else {
        objective / best
    }
}

/// Run the full comparison and write the result files into
/// `config.output_dir` (created if missing). See [`emit_results`] for the
/// files.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let n = config.n;
    let rounds = config.rounds_per_run.unwrap_or(n);
    let mut records = Vec::with_capacity(config.instances);
    for instance_id in 0..config.instances {
        let instance_seed = derive_seed(config.master_seed, instance_id as u64);
        let instance = generate_instance(config, instance_seed).map_err(|e| Error::Generation {
            instance_id,
            source: Box::new(e),
        })?;

        let mut objectives: Vec<(&'static str, String, f64, bool)> = Vec::new();
        let g = greedy(&instance);
        objectives.push(("greedy", "none".to_string(), g.objective, g.converged));

        let search_config = LocalSearchConfig {
            max_rounds: Some(rounds),
            mode: SearchMode::Moves,
            ..LocalSearchConfig::default()
        };
        for k in 0..config.local_runs {
            let (label, init) = if k + 1 == config.local_runs {
                ("cost".to_string(), cost_order_init(&instance))
            } else {
                let seed = derive_seed(instance_seed, 2 + k as u64);
                (format!("random-{k}"), random_init(n, seed))
            };
            let result = local_search(&instance, &init, &search_config)?;
            objectives.push(("local", label, result.objective, result.converged));
        }

        let best_objective = objectives
            .iter()
            .map(|&(_, _, obj, _)| obj)
            .fold(f64::INFINITY, f64::min);
        let runs = objectives
            .into_iter()
            .map(|(solver, init, objective, converged)| RunRecord {
                solver,
                init,
                objective,
                relative: relative(objective, best_objective),
                converged,
            })
            .collect();
        records.push(InstanceRecord {
            instance_id,
            best_objective,
            runs,
        });
    }
    let result = ExperimentResult {
        config: config.clone(),
        records,
    };
    emit_results(&result, &config.output_dir)?;
    Ok(result)
}

/// Histogram over relative values with fixed 0.01-wide bins starting at 1.00.
struct Histogram {
    greedy: Vec<usize>,
    best_local: Vec<usize>,
}

const BIN_WIDTH: f64 = 0.01;

fn bin_of(relative: f64) -> usize {
    ((relative - 1.0) / BIN_WIDTH).floor().max(0.0) as usize
}

fn build_histogram(result: &ExperimentResult) -> Histogram {
    let mut greedy_bins: Vec<usize> = Vec::new();
    let mut local_bins: Vec<usize> = Vec::new();
    let count = |bins: &mut Vec<usize>, rel: f64| {
        let b = bin_of(rel);
        if bins.len() <= b {
            bins.resize(b + 1, 0);
        }
        bins[b] += 1;
    };
    for record in &result.records {
        count(&mut greedy_bins, record.greedy_relative());
        count(&mut local_bins, record.best_local_relative());
    }
    let bins = greedy_bins.len().max(local_bins.len()).max(1);
    greedy_bins.resize(bins, 0);
    local_bins.resize(bins, 0);
    Histogram {
        greedy: greedy_bins,
        best_local: local_bins,
    }
}

/// Write `results.csv`, `histogram.csv`, `summary.txt`, and `histogram.svg`
/// into `dir`; returns the written paths in that order.
pub fn emit_results(result: &ExperimentResult, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let write = |name: &str, content: String| -> Result<PathBuf> {
        let path = dir.join(name);
        std::fs::write(&path, content).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    };

    let mut results_csv = String::from("instance_id,solver,init,objective,relative,converged\n");
    for record in &result.records {
        for run in &record.runs {
            results_csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                record.instance_id, run.solver, run.init, run.objective, run.relative, run.converged
            ));
        }
    }

    let hist = build_histogram(result);
    let mut histogram_csv = String::from("bin_lo,bin_hi,greedy,best_local\n");
    for (b, (&g, &l)) in hist.greedy.iter().zip(&hist.best_local).enumerate() {
        histogram_csv.push_str(&format!(
            "{:.2},{:.2},{},{}\n",
            1.0 + b as f64 * BIN_WIDTH,
            1.0 + (b + 1) as f64 * BIN_WIDTH,
            g,
            l
        ));
    }

    let summary = format!(
        "family: {}\ninstances: {}\nlocal_runs: {}\nrounds_per_run: {}\n\
         greedy_best_fraction: {}\nlocal_best_fraction: {}\n",
        result.config.family,
        result.records.len(),
        result.config.local_runs,
        result.config.rounds_per_run.unwrap_or(result.config.n),
        result.greedy_best_fraction(),
        result.local_best_fraction(),
    );

    Ok(vec![
        write("results.csv", results_csv)?,
        write("histogram.csv", histogram_csv)?,
        write("summary.txt", summary)?,
        write("histogram.svg", render_svg(&hist))?,
    ])
}

fn render_svg(hist: &Histogram) -> String {
    let bins = hist.greedy.len();
    let max_count = hist
        .greedy
        .iter()
        .chain(&hist.best_local)
        .copied()
        .max()
        .unwrap_or(1)
        .max(1);
    let (width, height) = (800.0, 320.0);
    let (left, right, top, bottom) = (60.0, 20.0, 30.0, 280.0);
    let plot_w = width - left - right;
    let plot_h = bottom - top;
    let group_w = plot_w / bins as f64;
    let bar_w = group_w * 0.4;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"18\" font-family=\"monospace\" font-size=\"13\">\
         objective relative to best-of-batch (bin width 0.01)</text>\n",
        left
    ));
    for (series, offset, color) in [
        (&hist.greedy, 0.05, "#888888"),
        (&hist.best_local, 0.55, "#2266cc"),
    ] {
        for (b, &count) in series.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let h = plot_h * count as f64 / max_count as f64;
            let x = left + b as f64 * group_w + offset * group_w;
            svg.push_str(&format!(
                "<rect x=\"{x:.2}\" y=\"{:.2}\" width=\"{bar_w:.2}\" height=\"{h:.2}\" \
                 fill=\"{color}\"/>\n",
                bottom - h
            ));
        }
    }
    svg.push_str(&format!(
        "<line x1=\"{left}\" y1=\"{bottom}\" x2=\"{:.2}\" y2=\"{bottom}\" stroke=\"black\"/>\n",
        width - right
    ));
    let stride = (bins / 8).max(1);
    for b in (0..=bins).step_by(stride) {
        let x = left + b as f64 * group_w;
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"300\" font-family=\"monospace\" font-size=\"11\">{:.2}</text>\n",
            1.0 + b as f64 * BIN_WIDTH
        ));
    }
    svg.push_str(&format!(
        "<text x=\"10\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"11\">{max_count}</text>\n",
        top + 10.0
    ));
    svg.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"40\" width=\"12\" height=\"12\" fill=\"#888888\"/>\
         <text x=\"{:.2}\" y=\"50\" font-family=\"monospace\" font-size=\"11\">greedy</text>\n",
        width - 170.0,
        width - 152.0
    ));
    svg.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"58\" width=\"12\" height=\"12\" fill=\"#2266cc\"/>\
         <text x=\"{:.2}\" y=\"68\" font-family=\"monospace\" font-size=\"11\">best local</text>\n",
        width - 170.0,
        width - 152.0
    ));
    svg.push_str("</svg>\n");
    svg
}
