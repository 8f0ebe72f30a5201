//! Reproduction sweeps: sample instances per model, run every configured
//! method on each, and aggregate the `r_b` values into eCDFs, histograms and
//! pairwise comparison matrices.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{sample_instance, Model, ModelParams};
use crate::graph::to_f64;
use crate::partition::{run_method, Method};
use crate::seed::{derive_seed, rng_from_seed, tag, RNG_DESCRIPTION};
use crate::Fraction;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_BINS: usize = 50;
pub const DEFAULT_RANGE: (f64, f64) = (0.5, 1.0);
pub const CSV_HEADER: &str = "model,instance,params,seed,method,r_b_num,r_b_den,r_b,retained,runtime_ns";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub models: Vec<Model>,
    pub n: usize,
    pub instances: usize,
    pub restarts: usize,
    pub methods: Vec<Method>,
    pub master_seed: u64,
    pub include_greedy: bool,
    /// Wall-clock timing per record. Off by default so output bytes depend
    /// on the configuration alone.
    pub timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            models: Model::ALL.to_vec(),
            n: 20,
            instances: 1000,
            restarts: 100,
            methods: Method::ALL.to_vec(),
            master_seed: 0,
            include_greedy: true,
            timings: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.instances == 0 {
            return Err(Error::InvalidParameter("instances must be >= 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be >= 1".into()));
        }
        if self.models.is_empty() {
            return Err(Error::InvalidParameter("no models selected".into()));
        }
        if self.active_methods().is_empty() {
            return Err(Error::InvalidParameter("no methods selected".into()));
        }
        Ok(())
    }

    /// Configured methods in canonical order, dropping greedy ones when
    /// `include_greedy` is off.
    pub fn active_methods(&self) -> Vec<Method> {
        Method::ALL
            .into_iter()
            .filter(|m| self.methods.contains(m) && (self.include_greedy || !m.is_greedy()))
            .collect()
    }

    pub fn active_models(&self) -> Vec<Model> {
        Model::ALL.into_iter().filter(|m| self.models.contains(m)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub model: Model,
    pub instance_index: usize,
    pub params: ModelParams,
    pub instance_seed: u64,
    pub method: Method,
    pub r_b: Fraction,
    pub retained_edges: usize,
    pub runtime_ns: u64,
}

impl ExperimentRecord {
    pub fn r_b_f64(&self) -> f64 {
        to_f64(self.r_b)
    }
}

pub fn instance_seed(master: u64, model: Model, index: usize) -> u64 {
    derive_seed(derive_seed(master, tag(model.name())), index as u64)
}

pub fn method_seed(instance_seed: u64, method: Method) -> u64 {
    derive_seed(instance_seed, tag(method.name()))
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ExperimentRecord>> {
    run_sweep_with_progress(cfg, &|_, _| {})
}

/// `progress(done, total)` is called after each instance, from worker
/// threads and in no particular order.
pub fn run_sweep_with_progress(
    cfg: &SweepConfig,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let methods = cfg.active_methods();
    let jobs: Vec<(Model, usize)> = cfg
        .active_models()
        .into_iter()
        .flat_map(|m| (0..cfg.instances).map(move |i| (m, i)))
        .collect();
    let total = jobs.len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    let per_job: Vec<Result<Vec<ExperimentRecord>>> = jobs
        .par_iter()
        .map(|&(model, index)| {
            let out = run_instance(cfg, &methods, model, index).map_err(|e| Error::Sweep {
                model: model.name().to_string(),
                index,
                source: Box::new(e),
            });
            let k = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            progress(k, total);
            out
        })
        .collect();
    let mut records = Vec::with_capacity(total * methods.len());
    for r in per_job {
        records.extend(r?);
    }
    Ok(records)
}

fn run_instance(cfg: &SweepConfig, methods: &[Method], model: Model, index: usize) -> Result<Vec<ExperimentRecord>> {
    let seed = instance_seed(cfg.master_seed, model, index);
    let (g, spec) = sample_instance(model, cfg.n, &mut rng_from_seed(seed))?;
    methods
        .iter()
        .map(|&method| {
            let start = cfg.timings.then(Instant::now);
            let res = run_method(&g, method, cfg.restarts, method_seed(seed, method))?;
            let runtime_ns = start.map_or(0, |t| t.elapsed().as_nanos() as u64);
            Ok(ExperimentRecord {
                model,
                instance_index: index,
                params: spec.params,
                instance_seed: seed,
                method,
                r_b: res.r_b,
                retained_edges: res.retained_edges,
                runtime_ns,
            })
        })
        .collect()
}

/// Right-continuous step function: one `(x, F(x))` per distinct value,
/// ascending, ending at `F = 1`.
pub fn ecdf(values: &[f64]) -> Result<Vec<(f64, f64)>> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut steps: Vec<(f64, f64)> = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        let f = (i + 1) as f64 / n;
        match steps.last_mut() {
            Some(last) if last.0 == x => last.1 = f,
            _ => steps.push((x, f)),
        }
    }
    Ok(steps)
}

/// Evaluates a step function from [`ecdf`] at `x`.
pub fn ecdf_eval(steps: &[(f64, f64)], x: f64) -> f64 {
    match steps.partition_point(|s| s.0 <= x) {
        0 => 0.0,
        k => steps[k - 1].1,
    }
}

/// Equal-width density histogram over `[lo, hi]`; values outside are
/// clamped into the end bins. Returns `(bin center, density)`.
pub fn histogram(values: &[f64], bins: usize, lo: f64, hi: f64) -> Result<Vec<(f64, f64)>> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if bins == 0 || lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidParameter(format!(
            "histogram needs bins >= 1 and lo < hi (bins={bins}, range=[{lo}, {hi}])"
        )));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &v in values {
        let k = ((v - lo) / width).floor();
        let k = if k.is_nan() || k < 0.0 {
            0
        } else {
            (k as usize).min(bins - 1)
        };
        counts[k] += 1;
    }
    let scale = 1.0 / (values.len() as f64 * width);
    Ok(counts
        .iter()
        .enumerate()
        .map(|(k, &c)| (lo + (k as f64 + 0.5) * width, c as f64 * scale))
        .collect())
}

/// Per-instance pairwise outcomes, kept as integer counts so every fraction
/// is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonMatrices {
    pub methods: Vec<Method>,
    pub instances: usize,
    pub wins: Vec<Vec<usize>>,
    pub ties: Vec<Vec<usize>>,
}

impl ComparisonMatrices {
    fn frac(&self, count: usize) -> Fraction {
        Fraction::new(count as u64, self.instances as u64)
    }

    pub fn index_of(&self, m: Method) -> Option<usize> {
        self.methods.iter().position(|&x| x == m)
    }

    /// Fraction of instances where method `i` beats method `j`.
    pub fn superiority(&self, i: usize, j: usize) -> Fraction {
        self.frac(self.wins[i][j])
    }

    /// Fraction of instances where methods `i` and `j` tie exactly.
    pub fn similarity(&self, i: usize, j: usize) -> Fraction {
        self.frac(self.ties[i][j])
    }

    pub fn superiority_of(&self, a: Method, b: Method) -> Option<Fraction> {
        Some(self.superiority(self.index_of(a)?, self.index_of(b)?))
    }

    fn as_f64(&self, counts: &[Vec<usize>]) -> Vec<Vec<f64>> {
        counts
            .iter()
            .map(|row| row.iter().map(|&c| to_f64(self.frac(c))).collect())
            .collect()
    }
}

/// Compares methods instance by instance for one model. Every instance that
/// appears for any method must appear for all of them.
pub fn comparison_matrices(records: &[ExperimentRecord], model: Model) -> Result<ComparisonMatrices> {
    let own: Vec<&ExperimentRecord> = records.iter().filter(|r| r.model == model).collect();
    if own.is_empty() {
        return Err(Error::EmptyInput);
    }
    let methods: Vec<Method> = Method::ALL
        .into_iter()
        .filter(|m| own.iter().any(|r| r.method == *m))
        .collect();
    let mut idx: Vec<usize> = own.iter().map(|r| r.instance_index).collect();
    idx.sort_unstable();
    idx.dedup();
    let k = methods.len();
    let mut table: Vec<Vec<Option<Fraction>>> = vec![vec![None; k]; idx.len()];
    for r in &own {
        let row = idx.binary_search(&r.instance_index).expect("index collected above");
        let col = methods
            .iter()
            .position(|&m| m == r.method)
            .expect("method collected above");
        table[row][col] = Some(r.r_b);
    }
    let mut wins = vec![vec![0usize; k]; k];
    let mut ties = vec![vec![0usize; k]; k];
    for (row, &instance) in table.iter().zip(&idx) {
        let vals: Vec<Fraction> = row
            .iter()
            .zip(&methods)
            .map(|(v, m)| {
                v.ok_or_else(|| Error::MisalignedRecords {
                    model: model.name().to_string(),
                    instance,
                    method: m.name().to_string(),
                })
            })
            .collect::<Result<_>>()?;
        for i in 0..k {
            for j in 0..k {
                match vals[i].cmp(&vals[j]) {
                    std::cmp::Ordering::Greater => wins[i][j] += 1,
                    std::cmp::Ordering::Equal => ties[i][j] += 1,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
    }
    Ok(ComparisonMatrices {
        methods,
        instances: idx.len(),
        wins,
        ties,
    })
}

pub fn records_to_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.model,
            r.instance_index,
            r.params,
            r.instance_seed,
            r.method,
            r.r_b.numer(),
            r.r_b.denom(),
            r.r_b_f64(),
            r.retained_edges,
            r.runtime_ns
        )
        .expect("writing to a String");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodSeries {
    pub method: String,
    pub mean_r_b: f64,
    pub ecdf: Vec<(f64, f64)>,
    pub histogram: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub methods: Vec<String>,
    pub instances: usize,
    pub superiority: Vec<Vec<f64>>,
    pub similarity: Vec<Vec<f64>>,
    pub superiority_counts: Vec<Vec<usize>>,
    pub similarity_counts: Vec<Vec<usize>>,
}

impl From<&ComparisonMatrices> for ComparisonSummary {
    fn from(c: &ComparisonMatrices) -> Self {
        ComparisonSummary {
            methods: c.methods.iter().map(|m| m.name().to_string()).collect(),
            instances: c.instances,
            superiority: c.as_f64(&c.wins),
            similarity: c.as_f64(&c.ties),
            superiority_counts: c.wins.clone(),
            similarity_counts: c.ties.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub model: String,
    pub series: Vec<MethodSeries>,
    pub comparison: ComparisonSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema_version: u32,
    pub rng: String,
    pub config: SweepConfig,
    pub histogram_bins: usize,
    pub histogram_range: (f64, f64),
    pub models: Vec<ModelSummary>,
}

pub fn summarize(cfg: &SweepConfig, records: &[ExperimentRecord], bins: usize) -> Result<Summary> {
    let (lo, hi) = DEFAULT_RANGE;
    let mut models = Vec::new();
    for model in cfg.active_models() {
        let matrices = comparison_matrices(records, model)?;
        let series = matrices
            .methods
            .iter()
            .map(|&method| {
                let values: Vec<f64> = records
                    .iter()
                    .filter(|r| r.model == model && r.method == method)
                    .map(ExperimentRecord::r_b_f64)
                    .collect();
                let exact_sum = records
                    .iter()
                    .filter(|r| r.model == model && r.method == method)
                    .fold(num_rational::Ratio::<u128>::from_integer(0), |acc, r| {
                        acc + num_rational::Ratio::new(*r.r_b.numer() as u128, *r.r_b.denom() as u128)
                    });
                let mean = exact_sum / values.len() as u128;
                Ok(MethodSeries {
                    method: method.name().to_string(),
                    mean_r_b: *mean.numer() as f64 / *mean.denom() as f64,
                    ecdf: ecdf(&values)?,
                    histogram: histogram(&values, bins, lo, hi)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        models.push(ModelSummary {
            model: model.name().to_string(),
            series,
            comparison: (&matrices).into(),
        });
    }
    Ok(Summary {
        schema_version: SCHEMA_VERSION,
        rng: RNG_DESCRIPTION.to_string(),
        config: cfg.clone(),
        histogram_bins: bins,
        histogram_range: (lo, hi),
        models,
    })
}

pub fn summary_to_json(summary: &Summary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("summary is plain data");
    s.push('\n');
    s
}
