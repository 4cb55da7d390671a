// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Experiment orchestration: repeated seeded trials against exact ground
//! truth, an empirical privacy audit over edge-neighboring graph pairs and a
//! distributional comparison of the two peeling engines.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derived::{densest_from_labels, dp_low_outdegree_ordering, OrderingResult};
use crate::error::{Error, Result};
use crate::exact::{brute_force_densest, density, exact_core_numbers, CoreNumbers, BRUTE_FORCE_MAX_N};
use crate::graph::{generate, read_edge_list, Graph, LoadedGraph, Model, VertexSubset};
use crate::ledp::{ledp_core_numbers, LedpConfig};
use crate::noise::NoiseOracle;
use crate::private::{
    private_peel, scaled_schedule, CoreEstimates, Engine, LogBase, PeelConfig, PeelState, Schedule,
    ScheduleKind, DEFAULT_STEP_CONSTANT,
};

/// Additive slack constant used when judging local-model estimates.
pub const LEDP_SLACK_CONSTANT: f64 = 300.0;

/// Fewer audit trials than this make the verdict inconclusive.
pub const AUDIT_MIN_TRIALS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Oracle,
    DpKcoreAdditive,
    DpKcoreGeometric,
    LedpKcore,
    Densest,
    Ordering,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum GraphSource {
    File { path: PathBuf, remap: bool },
    Generated { model: Model, n: usize, seed: u64 },
}

impl GraphSource {
    pub fn load(&self) -> Result<LoadedGraph> {
        match self {
            GraphSource::File { path, remap } => read_edge_list(path, *remap),
            GraphSource::Generated { model, n, seed } => Ok(LoadedGraph {
                graph: generate(*model, *n, *seed)?,
                original_ids: None,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub algorithm: Algorithm,
    pub graph: GraphSource,
    pub epsilon: f64,
    pub eta: f64,
    /// Schedule unit is `step_constant · ln(n) / ε` ...
    pub step_constant: f64,
    /// ... unless an absolute unit is given here.
    pub step: Option<f64>,
    pub c_prime: f64,
    pub trials: usize,
    pub seed: u64,
    pub engine: Engine,
    pub zero_noise: bool,
    /// Worker threads for trials; 0 lets the pool decide. Does not affect
    /// results.
    #[serde(skip)]
    pub workers: usize,
    /// Record per-trial wall time. Off by default so reports are
    /// byte-reproducible.
    #[serde(skip)]
    pub record_timing: bool,
}

impl ExperimentSpec {
    pub fn new(algorithm: Algorithm, graph: GraphSource) -> Self {
        ExperimentSpec {
            algorithm,
            graph,
            epsilon: 1.0,
            eta: 0.5,
            step_constant: DEFAULT_STEP_CONSTANT,
            step: None,
            c_prime: crate::derived::DEFAULT_C_PRIME,
            trials: 1,
            seed: 0,
            engine: Engine::Fast,
            zero_noise: false,
            workers: 0,
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.epsilon) {
            problems.push(format!("epsilon must be positive (got {})", self.epsilon));
        }
        if !positive(self.eta) {
            problems.push(format!("eta must be positive (got {})", self.eta));
        }
        if !positive(self.step_constant) {
            problems.push(format!("step constant must be positive (got {})", self.step_constant));
        }
        if let Some(s) = self.step {
            if !positive(s) {
                problems.push(format!("step must be positive (got {s})"));
            }
        }
        if !positive(self.c_prime) {
            problems.push(format!("c' must be positive (got {})", self.c_prime));
        }
        if self.trials == 0 {
            problems.push("trials must be at least 1".into());
        }
        if let GraphSource::Generated { model, n, .. } = &self.graph {
            if *n == 0 {
                problems.push("generated graph needs n >= 1".into());
            }
            if let Model::Gnp { p } = model {
                if !(0.0..=1.0).contains(p) {
                    problems.push(format!("gnp probability {p} outside [0, 1]"));
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    /// Schedule unit: the additive step, and the start of either schedule.
    pub fn schedule_unit(&self, n: usize) -> f64 {
        self.step
            .unwrap_or_else(|| self.step_constant * (n.max(2) as f64).ln() / self.epsilon)
    }

    pub fn schedule(&self, n: usize) -> Result<Schedule> {
        let kind = match self.algorithm {
            Algorithm::DpKcoreGeometric => ScheduleKind::Geometric { eta: self.eta },
            _ => ScheduleKind::Additive,
        };
        if let Some(unit) = self.step {
            let s = match kind {
                ScheduleKind::Additive => Schedule::Additive {
                    start: unit,
                    step: unit,
                },
                ScheduleKind::Geometric { eta } => Schedule::Geometric {
                    start: unit,
                    ratio: 1.0 + eta,
                },
            };
            s.validate()?;
            return Ok(s);
        }
        scaled_schedule(n.max(2), self.epsilon, kind, self.step_constant, LogBase::Natural)
    }

    fn oracle(&self, seed: u64) -> NoiseOracle {
        if self.zero_noise {
            NoiseOracle::zero(seed)
        } else {
            NoiseOracle::seeded(seed)
        }
    }
}

/// Raw released output of one trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum TrialOutput {
    Exact(Vec<usize>),
    Labels(Vec<f64>),
    Subset(Vec<usize>),
    Ordering(Vec<usize>),
}

/// Error metrics of one trial against the exact oracle.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialMetrics {
    /// `max_v |k̂(v) - k(v)|`.
    pub max_additive_error: Option<f64>,
    /// `max_v k̂(v) - k(v)`.
    pub max_overestimate: Option<f64>,
    /// `max_v k(v) - k̂(v)`.
    pub max_underestimate: Option<f64>,
    pub subset_size: Option<usize>,
    pub subset_density: Option<f64>,
    /// `D*` when small enough for exhaustive search, else `k_max`.
    pub density_reference: Option<f64>,
    pub density_gap: Option<f64>,
    pub realized_max_outdegree: Option<usize>,
    pub outdegree_gap: Option<i64>,
    /// Whether the algorithm's approximation guarantee held in this trial.
    pub within_bounds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    pub output: TrialOutput,
    pub metrics: TrialMetrics,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentStamp {
    pub package: String,
    pub version: String,
    pub os: String,
    pub arch: String,
}

impl EnvironmentStamp {
    pub fn current() -> Self {
        EnvironmentStamp {
            package: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
        }
    }
}

/// Exact reference quantities computed once per experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub n: usize,
    pub m: usize,
    pub core_numbers: Vec<usize>,
    pub degeneracy: usize,
    /// Exact densest density, when `n` allows exhaustive search.
    pub densest_density: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub original_ids: Option<Vec<u64>>,
}

/// Bounds a trial is judged against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    /// Additive slack on core numbers (and out-degree).
    pub additive_slack: f64,
    /// Multiplicative factor on core numbers.
    pub multiplicative: f64,
    /// Additive slack on densest-subgraph density.
    pub density_slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub trials: usize,
    pub within_bounds: usize,
    pub mean_max_additive_error: Option<f64>,
    pub worst_max_additive_error: Option<f64>,
    pub mean_density_gap: Option<f64>,
    pub worst_outdegree_gap: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub environment: EnvironmentStamp,
    pub truth: GroundTruth,
    pub bounds: Bounds,
    pub trials: Vec<TrialReport>,
    pub aggregate: Aggregate,
}

impl ExperimentReport {
    pub fn all_within_bounds(&self) -> bool {
        self.aggregate.within_bounds == self.aggregate.trials
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialize(e.to_string()))
    }

    /// One row per trial with the scalar metrics.
    pub fn to_csv(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Row {
            trial: usize,
            seed: u64,
            max_additive_error: Option<f64>,
            max_overestimate: Option<f64>,
            max_underestimate: Option<f64>,
            subset_size: Option<usize>,
            subset_density: Option<f64>,
            density_reference: Option<f64>,
            density_gap: Option<f64>,
            realized_max_outdegree: Option<usize>,
            outdegree_gap: Option<i64>,
            within_bounds: bool,
            wall_time_ms: Option<f64>,
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for t in &self.trials {
            let m = &t.metrics;
            w.serialize(Row {
                trial: t.trial,
                seed: t.seed,
                max_additive_error: m.max_additive_error,
                max_overestimate: m.max_overestimate,
                max_underestimate: m.max_underestimate,
                subset_size: m.subset_size,
                subset_density: m.subset_density,
                density_reference: m.density_reference,
                density_gap: m.density_gap,
                realized_max_outdegree: m.realized_max_outdegree,
                outdegree_gap: m.outdegree_gap,
                within_bounds: m.within_bounds,
                wall_time_ms: t.wall_time_ms,
            })
            .map_err(|e| Error::Serialize(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Serialize(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Serialize(e.to_string()))
    }
}

pub fn ground_truth(g: &Graph, original_ids: Option<Vec<u64>>) -> Result<GroundTruth> {
    let cores = exact_core_numbers(g);
    let densest_density = if g.n() >= 1 && g.n() <= BRUTE_FORCE_MAX_N {
        let r = brute_force_densest(g)?;
        Some(*r.density.numer() as f64 / *r.density.denom() as f64)
    } else {
        None
    };
    Ok(GroundTruth {
        n: g.n(),
        m: g.m(),
        degeneracy: cores.degeneracy(),
        core_numbers: cores.0,
        densest_density,
        original_ids,
    })
}

pub fn bounds_for(spec: &ExperimentSpec, n: usize) -> Bounds {
    let ln_n = (n.max(2) as f64).ln();
    let unit = spec.schedule_unit(n);
    match spec.algorithm {
        Algorithm::Oracle => Bounds {
            additive_slack: 0.0,
            multiplicative: 1.0,
            density_slack: 0.0,
        },
        Algorithm::LedpKcore => Bounds {
            additive_slack: LEDP_SLACK_CONSTANT * ln_n / spec.epsilon,
            multiplicative: 2.0 + spec.eta,
            density_slack: 0.0,
        },
        Algorithm::DpKcoreGeometric => Bounds {
            additive_slack: 2.0 * unit,
            multiplicative: 1.0 + spec.eta,
            density_slack: 0.0,
        },
        Algorithm::DpKcoreAdditive | Algorithm::Densest | Algorithm::Ordering => Bounds {
            additive_slack: 2.0 * unit,
            multiplicative: 1.0,
            density_slack: spec.c_prime * ln_n / spec.epsilon,
        },
    }
}

/// Metrics of one output, a pure function of the stored output, the ground
/// truth and the bounds. Needs the graph only for densities and out-degrees.
pub fn compute_metrics(
    algorithm: Algorithm,
    output: &TrialOutput,
    graph: &Graph,
    truth: &GroundTruth,
    bounds: &Bounds,
) -> Result<TrialMetrics> {
    let k = &truth.core_numbers;
    let mut m = TrialMetrics::default();
    let label_errors = |labels: &[f64]| {
        let over = labels.iter().zip(k).map(|(&e, &t)| e - t as f64).fold(f64::NEG_INFINITY, f64::max);
        let under = labels.iter().zip(k).map(|(&e, &t)| t as f64 - e).fold(f64::NEG_INFINITY, f64::max);
        (over, under)
    };
    match output {
        TrialOutput::Exact(values) => {
            let err = values.iter().zip(k).map(|(&a, &b)| a.abs_diff(b)).max().unwrap_or(0) as f64;
            m.max_additive_error = Some(err);
            m.within_bounds = err == 0.0;
        }
        TrialOutput::Labels(labels) => {
            let (over, under) = if labels.is_empty() { (0.0, 0.0) } else { label_errors(labels) };
            m.max_overestimate = Some(over);
            m.max_underestimate = Some(under);
            m.max_additive_error = Some(over.max(under).max(0.0));
            let slack = bounds.additive_slack;
            let phi = bounds.multiplicative;
            m.within_bounds = labels.iter().zip(k).all(|(&e, &t)| {
                let t = t as f64;
                match algorithm {
                    Algorithm::DpKcoreGeometric => e <= t + slack && e >= (t - slack) / phi,
                    _ => e >= t - slack && e <= phi * t + slack,
                }
            });
        }
        TrialOutput::Subset(members) => {
            let subset = VertexSubset::from_members(graph.n(), members.iter().copied())?;
            let d = density(graph, &subset)?;
            let d = *d.numer() as f64 / *d.denom() as f64;
            let reference = truth.densest_density.unwrap_or(truth.degeneracy as f64);
            m.subset_size = Some(subset.len());
            m.subset_density = Some(d);
            m.density_reference = Some(reference);
            m.density_gap = Some(reference - d);
            m.within_bounds = d >= reference / 2.0 - bounds.density_slack;
        }
        TrialOutput::Ordering(order) => {
            let out = crate::exact::orient_and_max_outdegree(graph, order)?;
            let gap = out as i64 - truth.degeneracy as i64;
            m.realized_max_outdegree = Some(out);
            m.outdegree_gap = Some(gap);
            m.within_bounds = (out as f64) <= truth.degeneracy as f64 + bounds.additive_slack;
        }
    }
    Ok(m)
}

fn run_trial(spec: &ExperimentSpec, g: &Graph, cores: &CoreNumbers, seed: u64) -> Result<TrialOutput> {
    let n = g.n();
    let mut oracle = spec.oracle(seed);
    let peel_config = || PeelConfig::new(spec.epsilon, spec.schedule(n)?, spec.engine);
    Ok(match spec.algorithm {
        Algorithm::Oracle => TrialOutput::Exact(cores.0.clone()),
        Algorithm::DpKcoreAdditive | Algorithm::DpKcoreGeometric => {
            TrialOutput::Labels(private_peel(g, &peel_config()?, &mut oracle)?.labels.0)
        }
        Algorithm::LedpKcore => {
            let cfg = LedpConfig::new(spec.epsilon, spec.eta)?;
            TrialOutput::Labels(ledp_core_numbers(g, &cfg, &oracle)?.estimates.0)
        }
        Algorithm::Densest => {
            let labels = private_peel(g, &peel_config()?, &mut oracle)?.labels;
            TrialOutput::Subset(densest_from_labels(&labels, spec.c_prime, spec.epsilon).to_vec())
        }
        Algorithm::Ordering => {
            let OrderingResult { order, .. } = dp_low_outdegree_ordering(g, &peel_config()?, &mut oracle)?;
            TrialOutput::Ordering(order)
        }
    })
}

/// Runs `spec.trials` trials with seeds `seed, seed+1, ...`. Trials run on a
/// thread pool; the report is ordered by trial index and does not depend on
/// the worker count.
pub fn run(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let loaded = spec.graph.load()?;
    run_on_graph(spec, &loaded.graph, loaded.original_ids)
}

/// [`run`] on an already loaded graph.
pub fn run_on_graph(
    spec: &ExperimentSpec,
    g: &Graph,
    original_ids: Option<Vec<u64>>,
) -> Result<ExperimentReport> {
    spec.validate()?;
    let n = g.n();
    if matches!(spec.algorithm, Algorithm::LedpKcore) && n < 2 {
        return Err(Error::Validation(vec!["ledp-kcore needs at least 2 vertices".into()]));
    }
    if !matches!(spec.algorithm, Algorithm::Oracle | Algorithm::LedpKcore) {
        spec.schedule(n)?;
    }
    if matches!(spec.algorithm, Algorithm::Densest) && n == 0 {
        return Err(Error::Validation(vec!["densest needs at least 1 vertex".into()]));
    }
    let truth = ground_truth(g, original_ids)?;
    let cores = CoreNumbers(truth.core_numbers.clone());
    let bounds = bounds_for(spec, n);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
    let trials: Vec<TrialReport> = pool.install(|| {
        (0..spec.trials)
            .into_par_iter()
            .map(|i| {
                let seed = spec.seed.wrapping_add(i as u64);
                let started = Instant::now();
                let output = run_trial(spec, g, &cores, seed)?;
                let elapsed = started.elapsed().as_secs_f64() * 1e3;
                let metrics = compute_metrics(spec.algorithm, &output, g, &truth, &bounds)?;
                Ok(TrialReport {
                    trial: i,
                    seed,
                    output,
                    metrics,
                    wall_time_ms: spec.record_timing.then_some(elapsed),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let aggregate = aggregate(&trials);
    Ok(ExperimentReport {
        spec: spec.clone(),
        environment: EnvironmentStamp::current(),
        truth,
        bounds,
        trials,
        aggregate,
    })
}

fn aggregate(trials: &[TrialReport]) -> Aggregate {
    let errors: Vec<f64> = trials.iter().filter_map(|t| t.metrics.max_additive_error).collect();
    let gaps: Vec<f64> = trials.iter().filter_map(|t| t.metrics.density_gap).collect();
    let mean = |xs: &[f64]| (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64);
    Aggregate {
        trials: trials.len(),
        within_bounds: trials.iter().filter(|t| t.metrics.within_bounds).count(),
        mean_max_additive_error: mean(&errors),
        worst_max_additive_error: errors.iter().copied().reduce(f64::max),
        mean_density_gap: mean(&gaps),
        worst_outdegree_gap: trials.iter().filter_map(|t| t.metrics.outdegree_gap).max(),
    }
}

/// Recomputes every trial's metrics from its stored output and checks they
/// match what the report carries.
pub fn verify_metrics(report: &ExperimentReport, g: &Graph) -> Result<bool> {
    for t in &report.trials {
        let m = compute_metrics(report.spec.algorithm, &t.output, g, &report.truth, &report.bounds)?;
        if m != t.metrics {
            return Ok(false);
        }
    }
    Ok(aggregate(&report.trials) == report.aggregate)
}

// ---------------------------------------------------------------------------
// Privacy audit

/// Mechanism under audit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mechanism", rename_all = "kebab-case")]
pub enum AuditMechanism {
    Peel(PeelConfig),
    Ledp(LedpConfig),
}

impl AuditMechanism {
    fn epsilon(&self) -> f64 {
        match self {
            AuditMechanism::Peel(c) => c.epsilon,
            AuditMechanism::Ledp(c) => c.epsilon,
        }
    }

    fn labels(&self, g: &Graph, oracle: &mut NoiseOracle) -> Result<CoreEstimates> {
        match self {
            AuditMechanism::Peel(c) => Ok(private_peel(g, c, oracle)?.labels),
            AuditMechanism::Ledp(c) => Ok(ledp_core_numbers(g, c, oracle)?.estimates),
        }
    }
}

/// Coarsening of a full output into a small finite outcome space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum AuditEvent {
    /// `⌊k̂(vertex) / width⌋`.
    LabelBucket { vertex: usize, width: f64 },
    /// Whether `vertex` survived the first threshold (`k̂(vertex) > 0`).
    SurvivorBit { vertex: usize },
}

impl AuditEvent {
    pub fn name(&self) -> String {
        match self {
            AuditEvent::LabelBucket { vertex, width } => {
                format!("label of vertex {vertex} in buckets of width {width}")
            }
            AuditEvent::SurvivorBit { vertex } => format!("vertex {vertex} survives the first threshold"),
        }
    }

    fn outcome(&self, labels: &CoreEstimates) -> i64 {
        match *self {
            AuditEvent::LabelBucket { vertex, width } => (labels.get(vertex) / width).floor() as i64,
            AuditEvent::SurvivorBit { vertex } => (labels.get(vertex) > 0.0) as i64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub mechanism: AuditMechanism,
    pub event: AuditEvent,
    pub trials: usize,
    pub seed: u64,
    /// Normal quantile for the Wilson intervals.
    pub z: f64,
    /// Outcomes seen fewer times than this (summed over both graphs) are
    /// pooled into one tail event.
    pub min_pooled_count: u64,
}

impl AuditConfig {
    pub fn new(mechanism: AuditMechanism, event: AuditEvent, trials: usize, seed: u64) -> Self {
        AuditConfig {
            mechanism,
            event,
            trials,
            seed,
            // two-sided 99.9%
            z: 3.290_526_731_491_926,
            min_pooled_count: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeEstimate {
    /// Outcome value, or `None` for the pooled tail.
    pub outcome: Option<i64>,
    pub count_a: u64,
    pub count_b: u64,
    pub interval_a: (f64, f64),
    pub interval_b: (f64, f64),
    /// `|ln(p_a / p_b)|` at the point estimates.
    pub log_ratio: f64,
    pub log_ratio_lower: f64,
    pub log_ratio_upper: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "kebab-case")]
pub enum AuditVerdict {
    Consistent,
    /// The lower confidence bound of some log-ratio exceeds ε.
    Violation,
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub event: String,
    pub epsilon: f64,
    pub trials: usize,
    pub outcomes: Vec<OutcomeEstimate>,
    pub max_log_ratio: f64,
    pub max_log_ratio_lower: f64,
    pub max_log_ratio_upper: f64,
    pub verdict: AuditVerdict,
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let nt = trials as f64;
    let p = successes as f64 / nt;
    let z2 = z * z;
    let denom = 1.0 + z2 / nt;
    let center = (p + z2 / (2.0 * nt)) / denom;
    let half = z * (p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn safe_ln_ratio(a: f64, b: f64) -> f64 {
    match (a > 0.0, b > 0.0) {
        (true, true) => (a / b).ln(),
        (true, false) => f64::INFINITY,
        (false, true) => f64::NEG_INFINITY,
        (false, false) => 0.0,
    }
}

/// Estimates `Pr[event]` under both graphs and compares the log-ratio with
/// ε. A violation is reported only when a lower confidence bound exceeds ε.
pub fn privacy_audit(graph_a: &Graph, graph_b: &Graph, config: &AuditConfig) -> Result<AuditReport> {
    if !graph_a.is_edge_neighbor_of(graph_b) {
        return Err(Error::Validation(vec![
            "audit graphs must differ in exactly one edge".into(),
        ]));
    }
    if config.trials == 0 {
        return Err(Error::Validation(vec!["audit needs at least one trial".into()]));
    }
    let vertex = match config.event {
        AuditEvent::LabelBucket { vertex, width } => {
            if width.is_nan() || width <= 0.0 {
                return Err(Error::Validation(vec![format!("bucket width must be positive, got {width}")]));
            }
            vertex
        }
        AuditEvent::SurvivorBit { vertex } => vertex,
    };
    if vertex >= graph_a.n() {
        return Err(Error::Validation(vec![format!("audit vertex {vertex} out of range")]));
    }

    let trials = config.trials as u64;
    let tally = |g: &Graph, seed_base: u64| -> Result<HashMap<i64, u64>> {
        (0..trials)
            .into_par_iter()
            .fold(
                || Ok(HashMap::new()),
                |acc: Result<HashMap<i64, u64>>, i| {
                    let mut acc = acc?;
                    let mut oracle = NoiseOracle::seeded(seed_base.wrapping_add(i));
                    let labels = config.mechanism.labels(g, &mut oracle)?;
                    *acc.entry(config.event.outcome(&labels)).or_default() += 1;
                    Ok(acc)
                },
            )
            .reduce(
                || Ok(HashMap::new()),
                |a, b| {
                    let mut a = a?;
                    for (k, v) in b? {
                        *a.entry(k).or_default() += v;
                    }
                    Ok(a)
                },
            )
    };
    let counts_a = tally(graph_a, config.seed)?;
    let counts_b = tally(graph_b, config.seed.wrapping_add(trials))?;

    let mut joint: BTreeMap<i64, (u64, u64)> = BTreeMap::new();
    for (&k, &c) in &counts_a {
        joint.entry(k).or_default().0 += c;
    }
    for (&k, &c) in &counts_b {
        joint.entry(k).or_default().1 += c;
    }
    let mut rows: Vec<(Option<i64>, u64, u64)> = Vec::new();
    let mut tail = (0u64, 0u64);
    for (k, (a, b)) in joint {
        if a + b >= config.min_pooled_count {
            rows.push((Some(k), a, b));
        } else {
            tail.0 += a;
            tail.1 += b;
        }
    }
    if tail.0 + tail.1 > 0 {
        rows.push((None, tail.0, tail.1));
    }

    let mut outcomes = Vec::with_capacity(rows.len());
    for (outcome, a, b) in rows {
        let ia = wilson_interval(a, trials, config.z);
        let ib = wilson_interval(b, trials, config.z);
        let point = safe_ln_ratio(a as f64, b as f64).abs();
        let upper = safe_ln_ratio(ia.1, ib.0).max(safe_ln_ratio(ib.1, ia.0));
        let lower = safe_ln_ratio(ia.0, ib.1).max(safe_ln_ratio(ib.0, ia.1)).max(0.0);
        outcomes.push(OutcomeEstimate {
            outcome,
            count_a: a,
            count_b: b,
            interval_a: ia,
            interval_b: ib,
            log_ratio: point,
            log_ratio_lower: lower,
            log_ratio_upper: upper,
        });
    }
    let fold = |f: fn(&OutcomeEstimate) -> f64| outcomes.iter().map(f).fold(0.0, f64::max);
    let max_log_ratio = fold(|o| o.log_ratio);
    let max_log_ratio_lower = fold(|o| o.log_ratio_lower);
    let max_log_ratio_upper = fold(|o| o.log_ratio_upper);
    let epsilon = config.mechanism.epsilon();
    let verdict = if config.trials < AUDIT_MIN_TRIALS {
        AuditVerdict::Inconclusive(format!(
            "sample too small: {} trials, need at least {AUDIT_MIN_TRIALS}",
            config.trials
        ))
    } else if max_log_ratio_lower > epsilon {
        AuditVerdict::Violation
    } else {
        AuditVerdict::Consistent
    };
    Ok(AuditReport {
        event: config.event.name(),
        epsilon,
        trials: config.trials,
        outcomes,
        max_log_ratio,
        max_log_ratio_lower,
        max_log_ratio_upper,
        verdict,
    })
}

// ---------------------------------------------------------------------------
// Engine equivalence

/// Largest graph [`equivalence_test`] accepts; survivor sets are hashed to
/// 64-bit masks.
pub const EQUIVALENCE_MAX_N: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceConfig {
    pub epsilon: f64,
    /// Fixed peeling threshold `k`.
    pub threshold: f64,
    /// Fixed offsets `ℓ̃(v)` shared by both engines.
    pub offsets: Vec<f64>,
    pub zero_noise: bool,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub trials: usize,
    /// Total-variation distance between the empirical survivor-set
    /// distributions of the two engines.
    pub tv_distance: f64,
    /// Same statistic between two independent naive samples: the level of TV
    /// expected from sampling error alone.
    pub baseline_tv: f64,
    pub distinct_sets_naive: usize,
    pub distinct_sets_fast: usize,
    pub mean_survivors_naive: f64,
    pub mean_survivors_fast: f64,
    /// Largest per-vertex difference in empirical survival probability.
    pub max_marginal_gap: f64,
}

fn tv_distance(a: &HashMap<u64, u64>, b: &HashMap<u64, u64>, trials: f64) -> f64 {
    let mut sum = 0.0;
    for (k, &ca) in a {
        let cb = b.get(k).copied().unwrap_or(0);
        sum += (ca as f64 - cb as f64).abs();
    }
    for (k, &cb) in b {
        if !a.contains_key(k) {
            sum += cb as f64;
        }
    }
    0.5 * sum / trials
}

/// Runs both engines at one fixed threshold from the full vertex set,
/// `trials` times each with independent seeds, and compares the resulting
/// survivor-set distributions.
pub fn equivalence_test(g: &Graph, config: &EquivalenceConfig) -> Result<EquivalenceReport> {
    let n = g.n();
    if n > EQUIVALENCE_MAX_N {
        return Err(Error::Capacity(format!(
            "equivalence test supports n <= {EQUIVALENCE_MAX_N}, got {n}"
        )));
    }
    if config.trials == 0 {
        return Err(Error::Validation(vec!["equivalence test needs trials >= 1".into()]));
    }
    // validates epsilon and offsets once up front
    PeelState::with_offsets(g, config.epsilon, &config.offsets, VertexSubset::full(n))?;

    let sample = |engine: Engine, seed_base: u64| -> Vec<u64> {
        (0..config.trials as u64)
            .into_par_iter()
            .map(|i| {
                let seed = seed_base.wrapping_add(i);
                let mut oracle = if config.zero_noise {
                    NoiseOracle::zero(seed)
                } else {
                    NoiseOracle::seeded(seed)
                };
                let mut state =
                    PeelState::with_offsets(g, config.epsilon, &config.offsets, VertexSubset::full(n))
                        .expect("validated above");
                state.peel(engine, config.threshold, &mut oracle);
                state.active().iter().fold(0u64, |m, v| m | (1 << v))
            })
            .collect()
    };
    let t = config.trials as u64;
    let naive = sample(Engine::Naive, config.seed);
    let fast = sample(Engine::Fast, config.seed.wrapping_add(t));
    let naive_again = sample(Engine::Naive, config.seed.wrapping_add(2 * t));

    let histogram = |xs: &[u64]| {
        let mut h: HashMap<u64, u64> = HashMap::new();
        for &x in xs {
            *h.entry(x).or_default() += 1;
        }
        h
    };
    let (hn, hf, hn2) = (histogram(&naive), histogram(&fast), histogram(&naive_again));
    let trials = config.trials as f64;
    let mean_size = |xs: &[u64]| xs.iter().map(|x| x.count_ones() as f64).sum::<f64>() / trials;
    let marginal = |xs: &[u64], v: usize| xs.iter().filter(|&&x| x & (1 << v) != 0).count() as f64 / trials;
    let max_marginal_gap = (0..n)
        .map(|v| (marginal(&naive, v) - marginal(&fast, v)).abs())
        .fold(0.0, f64::max);

    Ok(EquivalenceReport {
        trials: config.trials,
        tv_distance: tv_distance(&hn, &hf, trials),
        baseline_tv: tv_distance(&hn, &hn2, trials),
        distinct_sets_naive: hn.len(),
        distinct_sets_fast: hf.len(),
        mean_survivors_naive: mean_size(&naive),
        mean_survivors_fast: mean_size(&fast),
        max_marginal_gap,
    })
}
