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

//! Seeded Laplace and geometric sampling.
//!
//! Every draw is an inverse-CDF transform of one uniform from a ChaCha8
//! stream, so a given seed reproduces the same samples on any platform.

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A validated, strictly positive Laplace scale `b`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Scale(f64);

impl Scale {
    pub fn new(b: f64) -> Result<Self> {
        if b > 0.0 && b.is_finite() {
            Ok(Scale(b))
        } else {
            Err(Error::Usage(format!("Laplace scale must be positive, got {b}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Success probability of a geometric distribution, in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct SuccessProb(f64);

impl SuccessProb {
    pub fn new(q: f64) -> Result<Self> {
        if q > 0.0 && q <= 1.0 {
            Ok(SuccessProb(q))
        } else {
            Err(Error::Usage(format!(
                "geometric parameter must lie in (0, 1], got {q}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// `Pr[Lap(b) <= t]`.
pub fn laplace_cdf(t: f64, scale: Scale) -> f64 {
    let b = scale.get();
    if t >= 0.0 {
        1.0 - 0.5 * (-t / b).exp()
    } else {
        0.5 * (t / b).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseMode {
    Laplace,
    /// Every Laplace draw is exactly zero. Geometric draws are unaffected.
    Zero,
}

/// Source of all randomness used by the private algorithms.
#[derive(Clone, Debug)]
pub struct NoiseOracle {
    seed: u64,
    mode: NoiseMode,
    rng: ChaCha8Rng,
    draws: u64,
}

impl NoiseOracle {
    pub fn seeded(seed: u64) -> Self {
        Self::with_mode(seed, NoiseMode::Laplace)
    }

    /// Test oracle whose Laplace draws are all zero.
    pub fn zero(seed: u64) -> Self {
        Self::with_mode(seed, NoiseMode::Zero)
    }

    pub fn with_mode(seed: u64, mode: NoiseMode) -> Self {
        NoiseOracle {
            seed,
            mode,
            rng: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
        }
    }

    /// An independent oracle for sub-stream `stream`, same seed and mode.
    /// Used to give each party of a local protocol its own randomness.
    pub fn fork(&self, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream.wrapping_add(1));
        NoiseOracle {
            seed: self.seed,
            mode: self.mode,
            rng,
            draws: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn mode(&self) -> NoiseMode {
        self.mode
    }

    /// Number of samples drawn so far.
    pub fn position(&self) -> u64 {
        self.draws
    }

    fn uniform_open(&mut self) -> f64 {
        self.draws += 1;
        self.rng.sample(Open01)
    }

    pub fn laplace(&mut self, scale: Scale) -> f64 {
        let u = self.uniform_open() - 0.5;
        match self.mode {
            NoiseMode::Zero => 0.0,
            NoiseMode::Laplace => -scale.get() * u.signum() * (-2.0 * u.abs()).ln_1p(),
        }
    }

    /// Draw from Geom(q) on `{1, 2, ...}`. Saturates at `u64::MAX` for
    /// vanishing `q`.
    pub fn geometric(&mut self, q: SuccessProb) -> u64 {
        let u = self.uniform_open();
        let q = q.get();
        if q >= 1.0 {
            return 1;
        }
        let k = (u.ln() / (-q).ln_1p()).ceil();
        if k >= u64::MAX as f64 {
            u64::MAX
        } else {
            (k as u64).max(1)
        }
    }

    /// CDF of this oracle's Laplace noise at `t`. In zero mode the noise is
    /// a point mass at 0, so this is the step function `t >= 0`.
    pub fn noise_cdf(&self, t: f64, scale: Scale) -> f64 {
        match self.mode {
            NoiseMode::Laplace => laplace_cdf(t, scale),
            NoiseMode::Zero => {
                if t >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}
