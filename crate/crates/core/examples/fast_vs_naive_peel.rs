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

//! Runs one peeling threshold with both engines from the same offsets and
//! compares survivor-set statistics and wall time.
//!
//!     cargo run --release --example fast_vs_naive_peel

use std::time::Instant;

use kcore_dp::graph::{generate, Model};
use kcore_dp::harness::{equivalence_test, EquivalenceConfig};
use kcore_dp::private::{peel_round_fast, peel_round_naive};
use kcore_dp::{NoiseOracle, VertexSubset};

fn main() -> kcore_dp::Result<()> {
    let g = generate(Model::Gnp { p: 0.3 }, 30, 1)?;
    let report = equivalence_test(
        &g,
        &EquivalenceConfig {
            epsilon: 1.0,
            threshold: 8.7,
            offsets: vec![0.0; 30],
            zero_noise: false,
            trials: 10_000,
            seed: 0,
        },
    )?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    // on a long path with zero noise the naive engine needs n/2 rounds of
    // O(n) work each, while the fast engine only touches removed vertices
    for n in [2_000, 4_000, 8_000] {
        let path = generate(Model::Path, n, 0)?;
        let offsets = vec![0.0; n];
        let t = Instant::now();
        let a = peel_round_naive(&path, VertexSubset::full(n), 1.0, &offsets, &mut NoiseOracle::zero(0), 1.0)?;
        let naive = t.elapsed();
        let t = Instant::now();
        let b = peel_round_fast(&path, VertexSubset::full(n), 1.0, &offsets, &mut NoiseOracle::zero(0), 1.0)?;
        let fast = t.elapsed();
        assert_eq!(a, b);
        println!("path n={n}: naive {naive:?}, fast {fast:?}, survivors {}", a.len());
    }
    Ok(())
}
