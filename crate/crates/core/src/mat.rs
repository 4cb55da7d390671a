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

//! Multidimensional AboveThreshold.
//!
//! One noisy threshold and one halting flag per coordinate, with a single
//! privacy budget shared by all coordinates. Each query is a vector `f` of
//! `d` reals; every live coordinate is compared against its noisy threshold
//! and halts the first time it comes out on top.
//!
//! The mechanism is ε-DP provided every query vector has ℓ1-sensitivity at
//! most `Δ` between edge-neighboring inputs. The engine cannot check this;
//! it is the caller's contract.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{NoiseOracle, Scale};

#[derive(Clone, Debug, PartialEq)]
pub struct MatConfig {
    epsilon: f64,
    sensitivity: f64,
    thresholds: Vec<f64>,
}

impl MatConfig {
    pub fn new(epsilon: f64, sensitivity: f64, thresholds: Vec<f64>) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::Usage(format!("epsilon must be positive, got {epsilon}")));
        }
        if !(sensitivity > 0.0 && sensitivity.is_finite()) {
            return Err(Error::Usage(format!(
                "sensitivity must be positive, got {sensitivity}"
            )));
        }
        Ok(MatConfig {
            epsilon,
            sensitivity,
            thresholds,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn sensitivity(&self) -> f64 {
        self.sensitivity
    }

    pub fn dimension(&self) -> usize {
        self.thresholds.len()
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    /// Scale of the one-off threshold perturbation, `2Δ/ε`.
    pub fn threshold_scale(&self) -> Scale {
        Scale::new(2.0 * self.sensitivity / self.epsilon).expect("validated config")
    }

    /// Scale of the fresh per-query noise, `4Δ/ε`.
    pub fn query_scale(&self) -> Scale {
        Scale::new(4.0 * self.sensitivity / self.epsilon).expect("validated config")
    }
}

/// Per-coordinate answer to one query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatAnswer {
    /// Noisy query reached the noisy threshold; the coordinate now halts.
    Above,
    Below,
    /// The coordinate halted on an earlier query and was not evaluated.
    Halted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatState {
    noisy_thresholds: Vec<f64>,
    halted: Vec<bool>,
    queries_answered: usize,
}

impl MatState {
    pub fn noisy_thresholds(&self) -> &[f64] {
        &self.noisy_thresholds
    }

    pub fn is_halted(&self, j: usize) -> bool {
        self.halted[j]
    }

    pub fn live_count(&self) -> usize {
        self.halted.iter().filter(|&&h| !h).count()
    }

    pub fn queries_answered(&self) -> usize {
        self.queries_answered
    }
}

/// A running mechanism instance.
#[derive(Clone, Debug)]
pub struct Mat {
    config: MatConfig,
    state: MatState,
}

impl Mat {
    /// Draws the `d` noisy thresholds `T_j + Lap(2Δ/ε)`.
    pub fn init(config: MatConfig, oracle: &mut NoiseOracle) -> Self {
        let scale = config.threshold_scale();
        let noisy = config
            .thresholds
            .iter()
            .map(|t| t + oracle.laplace(scale))
            .collect();
        Self::with_noisy_thresholds(config, noisy).expect("dimension matches by construction")
    }

    /// Starts from thresholds that were already perturbed elsewhere, e.g. when
    /// replaying a run or sharing thresholds between two implementations.
    pub fn with_noisy_thresholds(config: MatConfig, noisy_thresholds: Vec<f64>) -> Result<Self> {
        if noisy_thresholds.len() != config.dimension() {
            return Err(Error::Usage(format!(
                "expected {} noisy thresholds, got {}",
                config.dimension(),
                noisy_thresholds.len()
            )));
        }
        let d = noisy_thresholds.len();
        Ok(Mat {
            config,
            state: MatState {
                noisy_thresholds,
                halted: vec![false; d],
                queries_answered: 0,
            },
        })
    }

    pub fn config(&self) -> &MatConfig {
        &self.config
    }

    pub fn state(&self) -> &MatState {
        &self.state
    }

    /// Records that coordinate `j` halted in an equivalent sampler that did
    /// not go through [`Mat::query`].
    pub(crate) fn mark_halted(&mut self, j: usize) {
        self.state.halted[j] = true;
    }

    /// Answers one query vector. Halted coordinates are skipped without
    /// drawing noise, so their entries of `f` are ignored.
    pub fn query(&mut self, f: &[f64], oracle: &mut NoiseOracle) -> Result<Vec<MatAnswer>> {
        let mut answers = Vec::with_capacity(f.len());
        self.query_into(f, oracle, &mut answers)?;
        Ok(answers)
    }

    /// Like [`Mat::query`], reusing the caller's answer buffer.
    pub fn query_into(
        &mut self,
        f: &[f64],
        oracle: &mut NoiseOracle,
        answers: &mut Vec<MatAnswer>,
    ) -> Result<()> {
        if f.len() != self.config.dimension() {
            return Err(Error::Usage(format!(
                "query has {} coordinates, mechanism has {}",
                f.len(),
                self.config.dimension()
            )));
        }
        let scale = self.config.query_scale();
        answers.clear();
        for (j, &value) in f.iter().enumerate() {
            if self.state.halted[j] {
                answers.push(MatAnswer::Halted);
                continue;
            }
            if value + oracle.laplace(scale) >= self.state.noisy_thresholds[j] {
                self.state.halted[j] = true;
                answers.push(MatAnswer::Above);
            } else {
                answers.push(MatAnswer::Below);
            }
        }
        self.state.queries_answered += 1;
        Ok(())
    }
}
