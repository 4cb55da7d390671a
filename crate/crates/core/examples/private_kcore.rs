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

//! Private core numbers on a G(n, p) graph, compared with the exact values.
//!
//!     cargo run --release --example private_kcore -- [n] [epsilon] [seed]

use kcore_dp::exact::exact_core_numbers;
use kcore_dp::graph::{generate, Model};
use kcore_dp::private::{default_schedule, private_peel, Engine, PeelConfig, ScheduleKind};
use kcore_dp::NoiseOracle;

fn main() -> kcore_dp::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(2000, |s| s.parse().expect("n"));
    let epsilon: f64 = args.get(1).map_or(1.0, |s| s.parse().expect("epsilon"));
    let seed: u64 = args.get(2).map_or(7, |s| s.parse().expect("seed"));

    let g = generate(Model::Gnp { p: 40.0 / n as f64 }, n, seed)?;
    let exact = exact_core_numbers(&g);
    println!("n={} m={} degeneracy={}", g.n(), g.m(), exact.degeneracy());

    for kind in [ScheduleKind::Additive, ScheduleKind::Geometric { eta: 0.5 }] {
        let schedule = default_schedule(n, epsilon, kind)?;
        let cfg = PeelConfig::new(epsilon, schedule, Engine::Fast)?;
        let out = private_peel(&g, &cfg, &mut NoiseOracle::seeded(seed))?;
        let worst = (0..n)
            .map(|v| (out.labels.get(v) - exact.get(v) as f64).abs())
            .fold(0.0, f64::max);
        println!(
            "{kind:?}: start {:.1}, {} rounds, max label {:.1}, worst |error| {worst:.1}",
            schedule.start(),
            out.rounds,
            out.labels.max()
        );
    }

    // the schedule unit has to dominate the noise for the guarantee to
    // bite; a larger budget shrinks both and the labels start to resolve
    // the core structure
    for eps in [10.0, 50.0] {
        let schedule = default_schedule(n, eps, ScheduleKind::Additive)?;
        let cfg = PeelConfig::new(eps, schedule, Engine::Fast)?;
        let labels = private_peel(&g, &cfg, &mut NoiseOracle::seeded(seed))?.labels;
        let worst = (0..n)
            .map(|v| (labels.get(v) - exact.get(v) as f64).abs())
            .fold(0.0, f64::max);
        let bound = 120.0 * (n as f64).ln() / eps;
        println!("epsilon {eps}: step {:.1}, worst |error| {worst:.1} (bound {bound:.1})", schedule.start());
        for v in 0..4.min(n) {
            println!("  vertex {v}: exact {}, private {:.1}", exact.get(v), labels.get(v));
        }
    }
    Ok(())
}
