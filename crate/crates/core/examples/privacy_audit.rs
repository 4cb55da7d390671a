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

//! Empirical privacy audit on a pair of edge-neighboring graphs.
//!
//!     cargo run --release --example privacy_audit -- [trials]

use kcore_dp::graph::{generate, Model};
use kcore_dp::harness::{privacy_audit, AuditConfig, AuditEvent, AuditMechanism};
use kcore_dp::ledp::LedpConfig;
use kcore_dp::private::{Engine, PeelConfig, Schedule};

fn main() -> kcore_dp::Result<()> {
    let trials: usize = std::env::args().nth(1).map_or(200_000, |s| s.parse().expect("trials"));
    let k4 = generate(Model::Complete, 4, 0)?;
    let minus = k4.toggle_edge(0, 1)?;

    let peel = AuditMechanism::Peel(PeelConfig::new(
        1.0,
        Schedule::Additive { start: 1.0, step: 1.0 },
        Engine::Fast,
    )?);
    let ledp = AuditMechanism::Ledp(LedpConfig::new(1.0, 1.0)?);
    let audits = [
        (peel.clone(), AuditEvent::LabelBucket { vertex: 0, width: 1.0 }),
        (peel, AuditEvent::SurvivorBit { vertex: 0 }),
        (ledp, AuditEvent::LabelBucket { vertex: 0, width: 1.0 }),
    ];
    for (mechanism, event) in audits {
        let name = match mechanism {
            AuditMechanism::Peel(_) => "peel",
            AuditMechanism::Ledp(_) => "local",
        };
        let report = privacy_audit(&k4, &minus, &AuditConfig::new(mechanism, event, trials, 1))?;
        println!(
            "{name:>5} | {}: max ln-ratio {:.3} [{:.3}, {:.3}] -> {:?}",
            report.event,
            report.max_log_ratio,
            report.max_log_ratio_lower,
            report.max_log_ratio_upper,
            report.verdict
        );
    }
    Ok(())
}
