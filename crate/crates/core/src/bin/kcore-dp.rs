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

//! Command-line front end for running experiments.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use kcore_dp::graph::Model;
use kcore_dp::harness::{self, Algorithm, ExperimentSpec, GraphSource};
use kcore_dp::private::Engine;
use kcore_dp::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgorithmArg {
    Oracle,
    DpKcoreAdditive,
    DpKcoreGeometric,
    LedpKcore,
    Densest,
    Ordering,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Oracle => Algorithm::Oracle,
            AlgorithmArg::DpKcoreAdditive => Algorithm::DpKcoreAdditive,
            AlgorithmArg::DpKcoreGeometric => Algorithm::DpKcoreGeometric,
            AlgorithmArg::LedpKcore => Algorithm::LedpKcore,
            AlgorithmArg::Densest => Algorithm::Densest,
            AlgorithmArg::Ordering => Algorithm::Ordering,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Naive,
    Fast,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "kcore-dp", version, about = "Private k-core decomposition experiments")]
#[command(group(ArgGroup::new("input").required(true).args(["graph", "gen"])))]
struct Cli {
    #[arg(long, value_enum)]
    algorithm: AlgorithmArg,
    /// Edge-list file, one `u v` pair per line.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Compact arbitrary vertex ids in the edge list to 0..n-1.
    #[arg(long, requires = "graph")]
    remap: bool,
    /// Synthetic model: path, cycle, complete, star, barbell or gnp:<p>.
    #[arg(long, requires = "nodes")]
    r#gen: Option<Model>,
    /// Vertex count for `--gen`.
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    epsilon: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    eta: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = kcore_dp::private::DEFAULT_STEP_CONSTANT)]
    step_const: f64,
    /// Absolute schedule unit; overrides `--step-const`.
    #[arg(long, allow_negative_numbers = true)]
    step: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = kcore_dp::derived::DEFAULT_C_PRIME)]
    cprime: f64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = EngineArg::Fast)]
    engine: EngineArg,
    /// Replace every noise draw by 0.
    #[arg(long)]
    zero_noise: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Record per-trial wall time (makes reports non-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Exit with status 3 unless every trial meets its guarantee.
    #[arg(long)]
    assert_bounds: bool,
}

fn spec_from(cli: &Cli) -> ExperimentSpec {
    let graph = match (&cli.graph, cli.r#gen) {
        (Some(path), _) => GraphSource::File {
            path: path.clone(),
            remap: cli.remap,
        },
        (None, Some(model)) => GraphSource::Generated {
            model,
            n: cli.nodes.unwrap_or(0),
            seed: cli.seed,
        },
        (None, None) => unreachable!("clap enforces one input"),
    };
    let mut spec = ExperimentSpec::new(cli.algorithm.into(), graph);
    spec.epsilon = cli.epsilon;
    spec.eta = cli.eta;
    spec.step_constant = cli.step_const;
    spec.step = cli.step;
    spec.c_prime = cli.cprime;
    spec.trials = cli.trials;
    spec.seed = cli.seed;
    spec.engine = match cli.engine {
        EngineArg::Naive => Engine::Naive,
        EngineArg::Fast => Engine::Fast,
    };
    spec.zero_noise = cli.zero_noise;
    spec.workers = cli.workers;
    spec.record_timing = cli.timing;
    spec
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let spec = spec_from(&cli);
    let report = match harness::run(&spec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let rendered = match rendered {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if cli.assert_bounds && !report.all_within_bounds() {
        eprintln!(
            "bounds violated in {} of {} trials",
            report.aggregate.trials - report.aggregate.within_bounds,
            report.aggregate.trials
        );
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
