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

//! Simulates the local protocol, writes its public transcript as JSON lines
//! and replays it from node-local data.
//!
//!     cargo run --release --example ledp_protocol -- [transcript.jsonl]

use kcore_dp::exact::exact_core_numbers;
use kcore_dp::graph::{generate, Model};
use kcore_dp::ledp::{ledp_core_numbers, level_invariants, verify_transcript, LedpConfig};
use kcore_dp::NoiseOracle;

fn main() -> kcore_dp::Result<()> {
    let n = 256;
    let g = generate(Model::Gnp { p: 0.1 }, n, 3)?;
    let cfg = LedpConfig::new(2.0, 1.0)?;
    let oracle = NoiseOracle::seeded(11);
    let out = ledp_core_numbers(&g, &cfg, &oracle)?;
    let exact = exact_core_numbers(&g);

    println!("psi={} lambda={:.4} rounds={}", cfg.psi, cfg.lambda, out.transcript.len());
    let max_level = out.levels.iter().max().copied().unwrap_or(0);
    println!("highest level reached: {max_level}");
    for v in 0..5 {
        println!(
            "  node {v}: degree {}, core {}, level {}, estimate {:.1}",
            g.degree(v),
            exact.get(v),
            out.levels[v],
            out.estimates.get(v)
        );
    }
    let tally = level_invariants(&g, &out.levels, &cfg, 120.0)?;
    println!("level invariants: {tally:?}");

    verify_transcript(&g, &cfg, &oracle, &out.transcript)?;
    println!("transcript replays from local data");
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, out.transcript.to_json_lines()).map_err(|source| kcore_dp::Error::Io {
            path: path.clone(),
            source,
        })?;
        println!("wrote {path}");
    }
    Ok(())
}
