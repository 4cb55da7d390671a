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

//! Private densest subgraph on a small graph, checked against exhaustive
//! search.
//!
//!     cargo run --release --example densest_subgraph

use kcore_dp::derived::{densest_from_labels, dp_densest_subgraph};
use kcore_dp::exact::{brute_force_densest, density, exact_core_numbers};
use kcore_dp::graph::{generate, Model};
use kcore_dp::private::{scaled_schedule, Engine, PeelConfig, ScheduleKind};
use kcore_dp::NoiseOracle;

fn main() -> kcore_dp::Result<()> {
    let n = 18;
    let g = generate(Model::Gnp { p: 0.35 }, n, 5)?;
    let best = brute_force_densest(&g)?;
    let kmax = exact_core_numbers(&g).degeneracy();
    println!(
        "D* = {} on {:?}, k_max = {kmax}",
        best.density,
        best.subset.to_vec()
    );

    // a generous budget and a small constant make the output informative on
    // a graph this small
    let epsilon = 20.0;
    let c_prime = 1.0;
    let schedule = scaled_schedule(n, epsilon, ScheduleKind::Additive, 0.5, Default::default())?;
    let cfg = PeelConfig::new(epsilon, schedule, Engine::Fast)?;
    for seed in 0..5 {
        let (subset, labels) = dp_densest_subgraph(&g, &cfg, c_prime, &mut NoiseOracle::seeded(seed))?;
        // post-processing: recomputing from the labels gives the same set
        assert_eq!(densest_from_labels(&labels, c_prime, epsilon), subset);
        println!(
            "seed {seed}: |S| = {:2}, density {}",
            subset.len(),
            density(&g, &subset)?
        );
    }
    Ok(())
}
