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

//! Local edge-DP core numbers by level progression.
//!
//! Every node starts at level 0. In round `r` each node still on the
//! frontier (level exactly `r`) counts its neighbors on the frontier, adds
//! Laplace noise and compares against `(1+ψ)^⌊r/(2⌈log₂ n⌉)⌋` plus its own
//! noisy offset. Nodes above the bar release `1` and climb one level; the
//! rest release `0` and stay put for good. After `4⌈log₂ n⌉²` rounds the
//! level a node reached is turned into a core-number estimate.
//!
//! Each node runs its own one-dimensional AboveThreshold instance on its own
//! adjacency list with its own randomness. The only shared state is the
//! public transcript of released bits.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mat::{Mat, MatAnswer, MatConfig};
use crate::noise::NoiseOracle;
use crate::private::{CoreEstimates, PEEL_SENSITIVITY};

/// Identifier recorded in the transcript for the per-node randomizer.
pub const RANDOMIZER_ID: &str = "frontier-above-threshold";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedpConfig {
    pub epsilon: f64,
    pub eta: f64,
    pub psi: f64,
    pub lambda: f64,
}

impl LedpConfig {
    /// Derives `ψ = 0.1η` and `λ = 2(30-η)η / (η+10)²`.
    pub fn new(epsilon: f64, eta: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::Usage(format!("epsilon must be positive, got {epsilon}")));
        }
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::Usage(format!("eta must be positive, got {eta}")));
        }
        Ok(LedpConfig {
            epsilon,
            eta,
            psi: 0.1 * eta,
            lambda: 2.0 * (30.0 - eta) * eta / (eta + 10.0).powi(2),
        })
    }
}

/// `⌈log₂ n⌉`.
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// `4⌈log₂ n⌉²`.
pub fn round_count(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::Usage(format!("protocol needs n >= 2, got {n}")));
    }
    let l = ceil_log2(n) as usize;
    Ok(4 * l * l)
}

/// Deterministic part of the round-`r` bar, `(1+ψ)^⌊r/(2⌈log₂ n⌉)⌋`.
pub fn level_threshold(r: usize, n: usize, psi: f64) -> f64 {
    let group = 2 * ceil_log2(n).max(1) as usize;
    (1.0 + psi).powi((r / group) as i32)
}

/// `(2+λ)(1+ψ)^max(⌊(ℓ'+1)/(4⌈log_{1+ψ} n⌉)⌋ - 1, 0)` for top level `ℓ'`.
pub fn estimate_from_level(level: usize, n: usize, config: &LedpConfig) -> f64 {
    let per_group = 4.0 * ((n as f64).ln() / config.psi.ln_1p()).ceil();
    let exponent = (((level + 1) as f64 / per_group).floor() - 1.0).max(0.0);
    (2.0 + config.lambda) * (1.0 + config.psi).powi(exponent as i32)
}

/// What one round put on the public record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    /// Nodes asked to run their randomizer this round, ascending.
    pub queried: Vec<usize>,
    pub randomizer: String,
    /// Privacy parameter handed to every queried randomizer.
    pub epsilon: f64,
    /// `bits[i]` is the bit released by `queried[i]`.
    pub bits: Vec<u8>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub rounds: Vec<RoundRecord>,
}

impl Transcript {
    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// One JSON object per line, one line per round.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.rounds {
            writeln!(out, "{}", serde_json::to_string(r).expect("plain data")).unwrap();
        }
        out
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let rounds = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|e| Error::Parse {
                    line: i + 1,
                    message: e.to_string(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Transcript { rounds })
    }
}

/// Node-local party: its adjacency list, its randomizer and its own noise.
#[derive(Clone, Debug)]
struct LocalNode {
    neighbors: Vec<usize>,
    randomizer: Mat,
    oracle: NoiseOracle,
}

impl LocalNode {
    fn new(g: &Graph, id: usize, config: &LedpConfig, parent: &NoiseOracle) -> Self {
        let mut oracle = parent.fork(id as u64);
        let mat_config = MatConfig::new(config.epsilon, PEEL_SENSITIVITY, vec![0.0])
            .expect("epsilon validated");
        let randomizer = Mat::init(mat_config, &mut oracle);
        LocalNode {
            neighbors: g.neighbors(id).collect(),
            randomizer,
            oracle,
        }
    }

    /// Bit released in round `r` given the public levels `L_r`.
    fn respond(&mut self, r: usize, levels: &[usize], bar: f64) -> u8 {
        let up = self.neighbors.iter().filter(|&&j| levels[j] == r).count();
        // stop when U + X <= bar + ℓ̃, i.e. (bar - U) + ν >= T̂
        let answer = self
            .randomizer
            .query(&[bar - up as f64], &mut self.oracle)
            .expect("one coordinate")[0];
        match answer {
            MatAnswer::Above => 0,
            MatAnswer::Below => 1,
            MatAnswer::Halted => unreachable!("stopped nodes leave the frontier"),
        }
    }
}

/// Per-node levels after round `round`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelState {
    pub levels: Vec<usize>,
    pub round: usize,
}

#[derive(Clone, Debug)]
pub struct LedpOutcome {
    pub estimates: CoreEstimates,
    /// Final level of each node. A node climbs one level per round until it
    /// stops, so this is also the highest `ℓ'` with `L_ℓ'[i] = ℓ'`.
    pub levels: Vec<usize>,
    pub transcript: Transcript,
}

/// Runs the protocol. Node `i` draws from `oracle.fork(i)` only.
pub fn ledp_core_numbers(g: &Graph, config: &LedpConfig, oracle: &NoiseOracle) -> Result<LedpOutcome> {
    let n = g.n();
    let rounds = round_count(n)?;
    let mut nodes: Vec<LocalNode> = (0..n).map(|i| LocalNode::new(g, i, config, oracle)).collect();
    let mut state = LevelState {
        levels: vec![0; n],
        round: 0,
    };
    let mut transcript = Transcript::default();
    for r in 0..rounds {
        let bar = level_threshold(r, n, config.psi);
        let levels = &state.levels;
        let released: Vec<(usize, u8)> = nodes
            .par_iter_mut()
            .enumerate()
            .filter(|(i, _)| levels[*i] == r)
            .map(|(i, node)| (i, node.respond(r, levels, bar)))
            .collect();
        for &(i, bit) in &released {
            if bit == 1 {
                state.levels[i] += 1;
            }
        }
        state.round = r + 1;
        let (queried, bits) = released.into_iter().unzip();
        transcript.rounds.push(RoundRecord {
            round: r,
            queried,
            randomizer: RANDOMIZER_ID.to_string(),
            epsilon: config.epsilon,
            bits,
        });
    }
    let estimates = state
        .levels
        .iter()
        .map(|&l| estimate_from_level(l, n, config))
        .collect();
    Ok(LedpOutcome {
        estimates: CoreEstimates(estimates),
        levels: state.levels,
        transcript,
    })
}

/// Replays a transcript and checks that every released bit is what the
/// releasing node computes from its own adjacency list, its own noise stream
/// and the public bits of earlier rounds. Also checks that each round queried
/// exactly the frontier.
pub fn verify_transcript(
    g: &Graph,
    config: &LedpConfig,
    oracle: &NoiseOracle,
    transcript: &Transcript,
) -> Result<()> {
    let n = g.n();
    let rounds = round_count(n)?;
    if transcript.len() != rounds {
        return Err(Error::InvalidInput(format!(
            "transcript has {} rounds, expected {rounds}",
            transcript.len()
        )));
    }
    let mut nodes: Vec<LocalNode> = (0..n).map(|i| LocalNode::new(g, i, config, oracle)).collect();
    let mut levels = vec![0usize; n];
    for (r, record) in transcript.rounds.iter().enumerate() {
        let frontier: Vec<usize> = (0..n).filter(|&i| levels[i] == r).collect();
        if record.round != r || record.queried != frontier || record.bits.len() != frontier.len() {
            return Err(Error::InvalidInput(format!("round {r} does not query the frontier")));
        }
        let bar = level_threshold(r, n, config.psi);
        for (&i, &bit) in record.queried.iter().zip(&record.bits) {
            let local = nodes[i].respond(r, &levels, bar);
            if local != bit {
                return Err(Error::InvalidInput(format!(
                    "node {i} released {bit} in round {r} but computes {local}"
                )));
            }
        }
        for (&i, &bit) in record.queried.iter().zip(&record.bits) {
            levels[i] += bit as usize;
        }
    }
    Ok(())
}

/// Tallies of the per-level degree bounds, one observation per node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InvariantTally {
    pub upper_checked: usize,
    pub upper_held: usize,
    pub lower_checked: usize,
    pub lower_held: usize,
}

impl InvariantTally {
    pub fn merge(&mut self, other: InvariantTally) {
        self.upper_checked += other.upper_checked;
        self.upper_held += other.upper_held;
        self.lower_checked += other.lower_checked;
        self.lower_held += other.lower_held;
    }

    pub fn upper_rate(&self) -> f64 {
        rate(self.upper_held, self.upper_checked)
    }

    pub fn lower_rate(&self) -> f64 {
        rate(self.lower_held, self.lower_checked)
    }
}

fn rate(held: usize, checked: usize) -> f64 {
    if checked == 0 {
        1.0
    } else {
        held as f64 / checked as f64
    }
}

/// Checks, for every node at final level `r`:
/// - if `r` is below the top level, at most `bar(r) + c·ln(n)/ε` neighbors
///   sit at levels `>= r`;
/// - if `r > 0`, at least `bar(r-1) - c·ln(n)/ε` neighbors sit at levels
///   `>= r-1`.
pub fn level_invariants(g: &Graph, levels: &[usize], config: &LedpConfig, c: f64) -> Result<InvariantTally> {
    let n = g.n();
    let top = round_count(n)?;
    let slack = c * (n as f64).ln() / config.epsilon;
    let mut tally = InvariantTally::default();
    for i in 0..n {
        let r = levels[i];
        let at_least = |lvl: usize| g.neighbors(i).filter(|&j| levels[j] >= lvl).count() as f64;
        if r + 1 < top {
            tally.upper_checked += 1;
            tally.upper_held += (at_least(r) <= level_threshold(r, n, config.psi) + slack) as usize;
        }
        if r > 0 {
            tally.lower_checked += 1;
            tally.lower_held +=
                (at_least(r - 1) >= level_threshold(r - 1, n, config.psi) - slack) as usize;
        }
    }
    Ok(tally)
}
