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

mod common;

use std::collections::HashSet;

use kcore_dp::graph::parse_edge_list;
use kcore_dp::{Graph, VertexSubset};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..40).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..120).prop_map(move |pairs| {
            let pairs = pairs.into_iter().filter(|(u, v)| u != v);
            Graph::from_edge_list(pairs, n).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let text = g.to_edge_list_string();
        let parsed = parse_edge_list(&text, false).unwrap();
        prop_assert_eq!(&parsed.graph, &g);
        prop_assert!(parsed.original_ids.is_none());
        let rebuilt = Graph::from_edge_list(parsed.graph.edges(), parsed.graph.n()).unwrap();
        prop_assert_eq!(rebuilt, g);
    }

    #[test]
    fn duplicate_and_reversed_edges_collapse(g in arb_graph()) {
        let doubled = g.edges().chain(g.edges().map(|(u, v)| (v, u)));
        prop_assert_eq!(Graph::from_edge_list(doubled, g.n()).unwrap(), g);
    }

    #[test]
    fn edge_neighbors_differ_in_one_pair(g in arb_graph()) {
        let n = g.n();
        let own: HashSet<(usize, usize)> = g.edges().collect();
        let mut count = 0;
        for h in g.edge_neighbors() {
            count += 1;
            let theirs: HashSet<(usize, usize)> = h.edges().collect();
            prop_assert_eq!(own.symmetric_difference(&theirs).count(), 1);
            prop_assert!(g.is_edge_neighbor_of(&h));
            prop_assert!(h.is_edge_neighbor_of(&g));
        }
        prop_assert_eq!(count, n * (n - 1) / 2);
        prop_assert!(!g.is_edge_neighbor_of(&g));
    }

    #[test]
    fn induced_degree_on_full_set_is_degree(g in arb_graph()) {
        let all = VertexSubset::full(g.n());
        for v in 0..g.n() {
            prop_assert_eq!(g.induced_degree(v, &all).unwrap(), g.degree(v));
            prop_assert_eq!(g.neighbors(v).len(), g.degree(v));
        }
        prop_assert_eq!(g.induced_edge_count(&all), g.m());
    }
}

#[test]
fn corpus_round_trips_through_files() {
    let dir = std::env::temp_dir().join(format!("kcore-dp-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for f in common::corpus() {
        let path = dir.join("g.txt");
        f.graph.write_edge_list(&path).unwrap();
        let back = kcore_dp::graph::read_edge_list(&path, false).unwrap();
        assert_eq!(back.graph, f.graph, "{}", f.name);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn remap_keeps_original_ids() {
    let text = "# a sparse id space\n100 7\n7 3000000000\n";
    let loaded = parse_edge_list(text, true).unwrap();
    assert_eq!(loaded.graph.n(), 3);
    assert_eq!(loaded.original_ids, Some(vec![7, 100, 3_000_000_000]));
    assert!(loaded.graph.has_edge(0, 1) && loaded.graph.has_edge(0, 2));
}
