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

//! Exact ground truth: core numbers, degeneracy ordering and the densest
//! subgraph of an edge-list file (ids remapped) or a built-in example.
//!
//!     cargo run --example exact_oracle -- [graph.txt]

use kcore_dp::exact::{
    brute_force_densest, degeneracy_ordering, exact_core_numbers, orient_and_max_outdegree,
    BRUTE_FORCE_MAX_N,
};
use kcore_dp::graph::{generate, read_edge_list, LoadedGraph, Model};

fn main() -> kcore_dp::Result<()> {
    let loaded = match std::env::args().nth(1) {
        Some(path) => read_edge_list(path.as_ref(), true)?,
        None => LoadedGraph {
            graph: generate(Model::Barbell, 10, 0)?,
            original_ids: None,
        },
    };
    let g = &loaded.graph;
    let cores = exact_core_numbers(g);
    let order = degeneracy_ordering(g);
    println!("n={} m={} degeneracy={}", g.n(), g.m(), cores.degeneracy());
    for v in 0..g.n().min(12) {
        let id = loaded.original_ids.as_ref().map_or(v as u64, |ids| ids[v]);
        println!("  vertex {id}: degree {}, core {}", g.degree(v), cores.get(v));
    }
    println!(
        "degeneracy ordering out-degree: {}",
        orient_and_max_outdegree(g, &order)?
    );
    if g.n() <= BRUTE_FORCE_MAX_N {
        let best = brute_force_densest(g)?;
        println!("densest: {:?} at density {}", best.subset.to_vec(), best.density);
    }
    Ok(())
}
