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

//! ε-edge-DP k-core decomposition by noisy threshold peeling.
//!
//! For each threshold `k` of a public schedule, vertices are peeled in
//! rounds: a live vertex `v` leaves when `d(v) + Lap(8/ε) <= k + ℓ̃(v)`, with
//! `d(v)` its induced degree at the start of the round and `ℓ̃(v) ~ Lap(4/ε)`
//! drawn once per run. A threshold ends at the first round that removes
//! nobody, and the survivors are labelled `k`.
//!
//! The whole run is one [`Mat`] instance over the `n` vertices: query `t`
//! asks `k - d(v)` against threshold 0 with sensitivity 2, and a vertex halts
//! when it is removed. The naive engine drives the mechanism round by round.
//! The fast engine samples the same process lazily: a vertex whose degree has
//! not changed is removed in each round with the same probability `q`, so its
//! removal round is `t + Geom(q)` and only needs resampling when a neighbor
//! leaves.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::mat::{Mat, MatAnswer, MatConfig};
use crate::noise::{NoiseOracle, Scale, SuccessProb};

/// Sensitivity of one peeling query vector: an edge moves the induced degree
/// of its two endpoints by one each.
pub const PEEL_SENSITIVITY: f64 = 2.0;

/// Default schedule constant: thresholds advance by `60 log(n) / ε`.
pub const DEFAULT_STEP_CONSTANT: f64 = 60.0;

/// Public sequence of peeling thresholds. Iteration stops once a threshold
/// exceeds `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Schedule {
    Additive { start: f64, step: f64 },
    Geometric { start: f64, ratio: f64 },
}

impl Schedule {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Schedule::Additive { start, step } => start > 0.0 && step > 0.0 && step.is_finite(),
            Schedule::Geometric { start, ratio } => start > 0.0 && ratio > 1.0 && ratio.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Usage(format!("invalid schedule {self:?}")))
        }
    }

    pub fn start(&self) -> f64 {
        match *self {
            Schedule::Additive { start, .. } | Schedule::Geometric { start, .. } => start,
        }
    }

    /// The `i`-th threshold.
    pub fn threshold(&self, i: usize) -> f64 {
        match *self {
            Schedule::Additive { start, step } => start + i as f64 * step,
            Schedule::Geometric { start, ratio } => start * ratio.powi(i as i32),
        }
    }

    /// Thresholds `k <= n`, in order.
    pub fn thresholds(&self, n: usize) -> impl Iterator<Item = f64> + '_ {
        (0..)
            .map(|i| self.threshold(i))
            .take_while(move |&k| k <= n as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleKind {
    Additive,
    /// Thresholds grow by a factor `1 + eta`.
    Geometric { eta: f64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
        }
    }
}

/// Schedule starting at `60 ln(n) / ε`, stepping by the same amount
/// (additive) or by a factor `1 + η` (geometric).
pub fn default_schedule(n: usize, epsilon: f64, kind: ScheduleKind) -> Result<Schedule> {
    scaled_schedule(n, epsilon, kind, DEFAULT_STEP_CONSTANT, LogBase::Natural)
}

/// Like [`default_schedule`] with an explicit constant and log base.
pub fn scaled_schedule(
    n: usize,
    epsilon: f64,
    kind: ScheduleKind,
    constant: f64,
    base: LogBase,
) -> Result<Schedule> {
    if n < 2 {
        return Err(Error::Usage(format!("default schedule needs n >= 2, got {n}")));
    }
    if epsilon.is_nan() || epsilon <= 0.0 || constant.is_nan() || constant <= 0.0 {
        return Err(Error::Usage("epsilon and schedule constant must be positive".into()));
    }
    let unit = constant * base.log(n as f64) / epsilon;
    let schedule = match kind {
        ScheduleKind::Additive => Schedule::Additive {
            start: unit,
            step: unit,
        },
        ScheduleKind::Geometric { eta } => Schedule::Geometric {
            start: unit,
            ratio: 1.0 + eta,
        },
    };
    schedule.validate()?;
    Ok(schedule)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Round-by-round: every live vertex draws fresh noise every round.
    Naive,
    /// Lazy geometric resampling, near-linear time.
    #[default]
    Fast,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelConfig {
    pub epsilon: f64,
    pub schedule: Schedule,
    pub engine: Engine,
}

impl PeelConfig {
    pub fn new(epsilon: f64, schedule: Schedule, engine: Engine) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::Usage(format!("epsilon must be positive, got {epsilon}")));
        }
        schedule.validate()?;
        Ok(PeelConfig {
            epsilon,
            schedule,
            engine,
        })
    }
}

/// Private core-number estimates `k̂(v)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoreEstimates(pub Vec<f64>);

impl CoreEstimates {
    pub fn get(&self, v: usize) -> f64 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }
}

/// A vertex leaving the active set at a given round of the global clock.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Removal {
    pub tick: u64,
    pub vertex: usize,
}

/// Sentinel removal time for vertices whose removal probability is zero.
const NEVER: u64 = u64::MAX;

/// Mutable peeling state shared by both engines: the active set, induced
/// degrees, the global round clock and the noisy per-vertex thresholds.
#[derive(Clone, Debug)]
pub struct PeelState<'g> {
    graph: &'g Graph,
    query_scale: Scale,
    mat: Mat,
    active: VertexSubset,
    slots: Vec<Slot>,
    clock: u64,
    removals: Vec<Removal>,
}

/// Per-vertex fields touched together when a neighbor is removed, packed so
/// that one update costs one cache line.
#[derive(Clone, Copy, Debug)]
struct Slot {
    /// Scheduled removal tick in the fast engine.
    remove_time: u64,
    offset: f64,
    /// Induced degree in the active set.
    degree: u32,
    /// Queued for resampling in the fast engine.
    pending: bool,
}

impl<'g> PeelState<'g> {
    /// Fresh state over all vertices, drawing `ℓ̃(v) ~ Lap(4/ε)`.
    pub fn new(graph: &'g Graph, epsilon: f64, oracle: &mut NoiseOracle) -> Result<Self> {
        let config = MatConfig::new(epsilon, PEEL_SENSITIVITY, vec![0.0; graph.n()])?;
        let mat = Mat::init(config, oracle);
        Self::from_mat(graph, mat, VertexSubset::full(graph.n()))
    }

    /// State over `active` with caller-supplied offsets `ℓ̃(v)`.
    pub fn with_offsets(
        graph: &'g Graph,
        epsilon: f64,
        offsets: &[f64],
        active: VertexSubset,
    ) -> Result<Self> {
        if offsets.len() != graph.n() {
            return Err(Error::Usage(format!(
                "{} offsets for {} vertices",
                offsets.len(),
                graph.n()
            )));
        }
        let config = MatConfig::new(epsilon, PEEL_SENSITIVITY, vec![0.0; graph.n()])?;
        // the removal test d + ν <= k + ℓ̃ is the query k - d + ν' >= -ℓ̃
        let mat = Mat::with_noisy_thresholds(config, offsets.iter().map(|l| -l).collect())?;
        Self::from_mat(graph, mat, active)
    }

    fn from_mat(graph: &'g Graph, mut mat: Mat, active: VertexSubset) -> Result<Self> {
        let n = graph.n();
        if active.n() != n {
            return Err(Error::Usage(format!(
                "active set indexes {} vertices, graph has {n}",
                active.n()
            )));
        }
        for v in 0..n {
            if !active.contains(v) {
                mat.mark_halted(v);
            }
        }
        let thresholds = mat.state().noisy_thresholds();
        let slots = (0..n)
            .map(|v| Slot {
                remove_time: NEVER,
                offset: -thresholds[v],
                degree: graph.neighbors(v).filter(|&u| active.contains(u)).count() as u32,
                pending: false,
            })
            .collect();
        let query_scale = mat.config().query_scale();
        Ok(PeelState {
            graph,
            query_scale,
            mat,
            active,
            slots,
            clock: 0,
            removals: Vec::new(),
        })
    }

    pub fn active(&self) -> &VertexSubset {
        &self.active
    }

    /// Rounds executed so far, across all thresholds.
    pub fn clock(&self) -> u64 {
        self.clock
    }

    /// `ℓ̃(v)` for every vertex.
    pub fn offsets(&self) -> Vec<f64> {
        self.mat.state().noisy_thresholds().iter().map(|t| -t).collect()
    }

    pub fn removals(&self) -> &[Removal] {
        &self.removals
    }

    fn remove(&mut self, v: usize) {
        self.active.remove(v);
        self.removals.push(Removal {
            tick: self.clock,
            vertex: v,
        });
    }

    /// Decrements the degrees of the live neighbors of each removed vertex,
    /// passing each such neighbor to `touched`.
    fn settle(&mut self, removed: &[usize], mut touched: impl FnMut(usize, &mut Self)) {
        let graph = self.graph;
        for &v in removed {
            for u in graph.neighbors(v) {
                if self.active.contains(u) {
                    self.slots[u].degree -= 1;
                    touched(u, self);
                }
            }
        }
    }

    /// Peels at threshold `k` round by round until a round removes nobody.
    pub fn peel_naive(&mut self, k: f64, oracle: &mut NoiseOracle) {
        let n = self.graph.n();
        let mut query = vec![0.0; n];
        let mut answers = Vec::with_capacity(n);
        let mut removed = Vec::new();
        loop {
            self.clock += 1;
            for v in self.active.iter() {
                query[v] = k - self.slots[v].degree as f64;
            }
            self.mat
                .query_into(&query, oracle, &mut answers)
                .expect("query has one coordinate per vertex");
            removed.clear();
            removed.extend(
                answers
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| **a == MatAnswer::Above)
                    .map(|(v, _)| v),
            );
            if removed.is_empty() {
                return;
            }
            for &v in &removed {
                self.remove(v);
            }
            self.settle(&removed, |_, _| {});
        }
    }

    /// Peels at threshold `k` with lazily resampled geometric removal times.
    /// Produces the same distribution over survivor sets as
    /// [`PeelState::peel_naive`].
    pub fn peel_fast(&mut self, k: f64, oracle: &mut NoiseOracle) {
        let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut updated: Vec<usize> = self.active.iter().collect();
        for &v in &updated {
            self.slots[v].pending = true;
        }
        let mut due = Vec::new();
        loop {
            for v in updated.drain(..) {
                let slot = &mut self.slots[v];
                slot.pending = false;
                let q = oracle.noise_cdf(k + slot.offset - slot.degree as f64, self.query_scale);
                let at = match SuccessProb::new(q) {
                    Ok(q) => self.clock.saturating_add(oracle.geometric(q)),
                    Err(_) => NEVER,
                };
                slot.remove_time = at;
                if at != NEVER {
                    buckets.entry(at).or_default().push(v);
                }
            }

            self.clock += 1;
            due.clear();
            if let Some(bucket) = buckets.remove(&self.clock) {
                let clock = self.clock;
                due.extend(
                    bucket
                        .into_iter()
                        .filter(|&v| self.active.contains(v) && self.slots[v].remove_time == clock),
                );
            }
            if due.is_empty() {
                break;
            }
            // a resample can land on the same tick as a stale entry
            due.sort_unstable();
            due.dedup();
            for &v in &due {
                self.remove(v);
                self.mat.mark_halted(v);
                self.slots[v].remove_time = NEVER;
            }
            self.settle(&due, |u, state| {
                if !state.slots[u].pending {
                    state.slots[u].pending = true;
                    updated.push(u);
                }
            });
        }
        for v in updated {
            self.slots[v].pending = false;
        }
    }

    pub fn peel(&mut self, engine: Engine, k: f64, oracle: &mut NoiseOracle) {
        match engine {
            Engine::Naive => self.peel_naive(k, oracle),
            Engine::Fast => self.peel_fast(k, oracle),
        }
    }
}

/// One threshold of naive peeling from `active`, with fixed offsets.
pub fn peel_round_naive(
    g: &Graph,
    active: VertexSubset,
    epsilon: f64,
    offsets: &[f64],
    oracle: &mut NoiseOracle,
    k: f64,
) -> Result<VertexSubset> {
    let mut state = PeelState::with_offsets(g, epsilon, offsets, active)?;
    state.peel_naive(k, oracle);
    Ok(state.active)
}

/// One threshold of fast peeling from `active`, with fixed offsets.
pub fn peel_round_fast(
    g: &Graph,
    active: VertexSubset,
    epsilon: f64,
    offsets: &[f64],
    oracle: &mut NoiseOracle,
    k: f64,
) -> Result<VertexSubset> {
    let mut state = PeelState::with_offsets(g, epsilon, offsets, active)?;
    state.peel_fast(k, oracle);
    Ok(state.active)
}

/// Full record of a private peeling run.
#[derive(Clone, Debug)]
pub struct PeelOutcome {
    pub labels: CoreEstimates,
    /// Removals in order; within a tick, ascending vertex id.
    pub removals: Vec<Removal>,
    /// Vertices still active after the last threshold, ascending.
    pub survivors: Vec<usize>,
    pub offsets: Vec<f64>,
    pub rounds: u64,
}

/// Runs the whole schedule and keeps the removal history.
pub fn private_peel(
    g: &Graph,
    config: &PeelConfig,
    oracle: &mut NoiseOracle,
) -> Result<PeelOutcome> {
    config.schedule.validate()?;
    let n = g.n();
    let mut state = PeelState::new(g, config.epsilon, oracle)?;
    let offsets = state.offsets();
    let mut labels = vec![0.0; n];
    // label carried by vertices removed during the current threshold
    let mut survived = 0.0;
    let mut logged = 0;
    for k in config.schedule.thresholds(n) {
        if state.active().is_empty() {
            break;
        }
        state.peel(config.engine, k, oracle);
        for r in &state.removals()[logged..] {
            labels[r.vertex] = survived;
        }
        logged = state.removals().len();
        survived = k;
    }
    let survivors = state.active().to_vec();
    for &v in &survivors {
        labels[v] = survived;
    }
    Ok(PeelOutcome {
        labels: CoreEstimates(labels),
        removals: state.removals().to_vec(),
        survivors,
        offsets,
        rounds: state.clock(),
    })
}

/// Private core-number estimates.
pub fn dp_core_numbers(
    g: &Graph,
    config: &PeelConfig,
    oracle: &mut NoiseOracle,
) -> Result<CoreEstimates> {
    private_peel(g, config, oracle).map(|o| o.labels)
}
