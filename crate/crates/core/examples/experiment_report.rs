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

//! Builds an experiment from code and writes the JSON and CSV reports.
//!
//!     cargo run --release --example experiment_report -- [out-dir]

use kcore_dp::graph::Model;
use kcore_dp::harness::{run, verify_metrics, Algorithm, ExperimentSpec, GraphSource};

fn main() -> kcore_dp::Result<()> {
    let out_dir = std::env::args().nth(1);
    for algorithm in [
        Algorithm::Oracle,
        Algorithm::DpKcoreAdditive,
        Algorithm::DpKcoreGeometric,
        Algorithm::LedpKcore,
        Algorithm::Densest,
        Algorithm::Ordering,
    ] {
        let mut spec = ExperimentSpec::new(
            algorithm,
            GraphSource::Generated {
                model: Model::Gnp { p: 0.05 },
                n: 400,
                seed: 9,
            },
        );
        spec.epsilon = 2.0;
        spec.trials = 10;
        spec.seed = 100;
        let report = run(&spec)?;
        let graph = spec.graph.load()?.graph;
        assert!(verify_metrics(&report, &graph)?);
        let a = &report.aggregate;
        println!(
            "{algorithm:?}: {}/{} within bounds, mean max error {:?}, worst out-degree gap {:?}",
            a.within_bounds, a.trials, a.mean_max_additive_error, a.worst_outdegree_gap
        );
        if let Some(dir) = &out_dir {
            let stem = format!("{dir}/{}", serde_json::to_value(algorithm).unwrap().as_str().unwrap());
            for (ext, body) in [("json", report.to_json()?), ("csv", report.to_csv()?)] {
                let path = format!("{stem}.{ext}");
                std::fs::write(&path, body).map_err(|source| kcore_dp::Error::Io { path, source })?;
            }
        }
    }
    Ok(())
}
