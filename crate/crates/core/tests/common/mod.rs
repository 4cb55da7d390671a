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

//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use kcore_dp::graph::{generate, Model};
use kcore_dp::{Graph, VertexSubset};

/// Named test graph.
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
}

fn fixture(model: Model, n: usize, seed: u64) -> Fixture {
    let label = match model {
        Model::Gnp { p } => format!("gnp({p})"),
        other => format!("{other:?}").to_lowercase(),
    };
    Fixture {
        name: format!("{label} n={n} seed={seed}"),
        graph: generate(model, n, seed).expect("corpus model is valid"),
    }
}

/// Fifty graphs: paths, cycles, stars and cliques of assorted sizes plus
/// G(n, p) samples with `n <= 200` and `p` in {0.05, 0.2, 0.5}.
pub fn corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in [2, 5, 12, 50, 200] {
        out.push(fixture(Model::Path, n, 0));
    }
    for n in [3, 4, 11, 60, 200] {
        out.push(fixture(Model::Cycle, n, 0));
    }
    for n in [2, 4, 13, 40, 200] {
        out.push(fixture(Model::Star, n, 0));
    }
    for n in [1, 3, 6, 15, 40] {
        out.push(fixture(Model::Complete, n, 0));
    }
    let sizes = [8, 12, 15, 30, 60, 100, 140, 170, 200, 10];
    for (i, &n) in sizes.iter().enumerate() {
        for p in [0.05, 0.2, 0.5] {
            out.push(fixture(Model::Gnp { p }, n, 1000 + i as u64));
        }
    }
    assert_eq!(out.len(), 50);
    out
}

/// Classical threshold peeling, transcribed loop for loop: for each `k`,
/// repeatedly drop every vertex whose induced degree is below `k`, then
/// label the remaining vertices `k`. Quadratic; for testing only.
pub fn reference_core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut current = VertexSubset::full(n);
    let mut labels = vec![0; n];
    for k in 1..=n {
        loop {
            let previous = current.clone();
            let mut next = previous.clone();
            for v in previous.iter() {
                if g.induced_degree(v, &previous).unwrap() < k {
                    next.remove(v);
                }
            }
            let removed_any = next.len() != previous.len();
            current = next;
            if !removed_any {
                break;
            }
        }
        for v in current.iter() {
            labels[v] = k;
        }
    }
    labels
}
