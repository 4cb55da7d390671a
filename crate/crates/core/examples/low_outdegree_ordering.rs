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

//! Private low out-degree ordering versus the exact degeneracy ordering.
//!
//!     cargo run --release --example low_outdegree_ordering

use kcore_dp::derived::dp_low_outdegree_ordering;
use kcore_dp::exact::{degeneracy_ordering, exact_core_numbers, orient_and_max_outdegree};
use kcore_dp::graph::{generate, Model};
use kcore_dp::private::{scaled_schedule, Engine, PeelConfig, ScheduleKind};
use kcore_dp::NoiseOracle;

fn main() -> kcore_dp::Result<()> {
    let n = 500;
    let g = generate(Model::Gnp { p: 0.05 }, n, 314)?;
    let d = exact_core_numbers(&g).degeneracy();
    let exact = orient_and_max_outdegree(&g, &degeneracy_ordering(&g))?;
    println!("degeneracy {d}, exact ordering out-degree {exact}");

    let epsilon = 2.0;
    for constant in [60.0, 4.0, 1.0] {
        let schedule = scaled_schedule(n, epsilon, ScheduleKind::Additive, constant, Default::default())?;
        let cfg = PeelConfig::new(epsilon, schedule, Engine::Fast)?;
        let r = dp_low_outdegree_ordering(&g, &cfg, &mut NoiseOracle::seeded(1))?;
        println!(
            "step constant {constant:>4}: private ordering out-degree {} (first vertices {:?})",
            r.realized_max_outdegree,
            &r.order[..6]
        );
    }
    Ok(())
}
