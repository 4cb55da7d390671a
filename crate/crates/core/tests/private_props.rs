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

use kcore_dp::derived::{densest_from_labels, dp_densest_subgraph, dp_low_outdegree_ordering};
use kcore_dp::exact::{exact_core_numbers, orient_and_max_outdegree};
use kcore_dp::graph::{generate, Model};
use kcore_dp::private::{
    private_peel, Engine, PeelConfig, PeelState, Schedule, DEFAULT_STEP_CONSTANT,
};
use kcore_dp::{Graph, NoiseOracle, VertexSubset};

fn step_one(engine: Engine) -> PeelConfig {
    PeelConfig::new(1.0, Schedule::Additive { start: 1.0, step: 1.0 }, engine).unwrap()
}

#[test]
fn zero_noise_labels_are_core_minus_one() {
    for engine in [Engine::Naive, Engine::Fast] {
        for f in common::corpus() {
            let cores = exact_core_numbers(&f.graph);
            let mut oracle = NoiseOracle::zero(0);
            let labels = private_peel(&f.graph, &step_one(engine), &mut oracle).unwrap().labels;
            for v in 0..f.graph.n() {
                let expected = cores.get(v).saturating_sub(1) as f64;
                assert_eq!(labels.get(v), expected, "{} vertex {v} {engine:?}", f.name);
            }
        }
    }
}

#[test]
fn zero_noise_engines_agree_on_every_threshold() {
    for f in common::corpus() {
        let g = &f.graph;
        let mut o1 = NoiseOracle::zero(1);
        let mut o2 = NoiseOracle::zero(2);
        let mut naive = PeelState::new(g, 1.0, &mut o1).unwrap();
        let mut fast = PeelState::new(g, 1.0, &mut o2).unwrap();
        for k in 1..=g.n() {
            naive.peel_naive(k as f64, &mut o1);
            fast.peel_fast(k as f64, &mut o2);
            assert_eq!(naive.active(), fast.active(), "{} k={k}", f.name);
            assert_eq!(naive.removals(), fast.removals(), "{} k={k}", f.name);
        }
    }
}

#[test]
fn labels_never_decrease_and_survivors_carry_threshold() {
    let g = generate(Model::Gnp { p: 0.2 }, 80, 4).unwrap();
    for engine in [Engine::Naive, Engine::Fast] {
        for seed in 0..5 {
            let mut oracle = NoiseOracle::seeded(seed);
            let mut state = PeelState::new(&g, 1.0, &mut oracle).unwrap();
            let mut labels = vec![0.0; g.n()];
            for k in (1..=30).map(|k| k as f64 * 0.5) {
                state.peel(engine, k, &mut oracle);
                for v in state.active().iter() {
                    assert!(k >= labels[v]);
                    labels[v] = k;
                }
            }
            let mut seen = vec![false; g.n()];
            for r in state.removals() {
                assert!(!seen[r.vertex], "vertex removed twice");
                seen[r.vertex] = true;
            }
        }
    }
}

fn removal_ticks_sorted(g: &Graph, engine: Engine, seed: u64) {
    let cfg = PeelConfig::new(1.0, Schedule::Additive { start: 2.0, step: 2.0 }, engine).unwrap();
    let out = private_peel(g, &cfg, &mut NoiseOracle::seeded(seed)).unwrap();
    for w in out.removals.windows(2) {
        assert!(
            (w[0].tick, w[0].vertex) < (w[1].tick, w[1].vertex),
            "removal order not by (tick, id)"
        );
    }
    assert_eq!(out.removals.len() + out.survivors.len(), g.n());
}

#[test]
fn removal_order_is_by_tick_then_id() {
    let g = generate(Model::Gnp { p: 0.1 }, 150, 9).unwrap();
    for seed in 0..5 {
        removal_ticks_sorted(&g, Engine::Naive, seed);
        removal_ticks_sorted(&g, Engine::Fast, seed);
    }
}

#[test]
fn ordering_out_degree_at_most_live_degree_at_removal() {
    let g = generate(Model::Gnp { p: 0.1 }, 120, 5).unwrap();
    let cfg = PeelConfig::new(1.0, Schedule::Additive { start: 2.0, step: 2.0 }, Engine::Fast).unwrap();
    let mut oracle = NoiseOracle::seeded(8);
    let outcome = private_peel(&g, &cfg, &mut oracle.clone()).unwrap();
    let ordering = dp_low_outdegree_ordering(&g, &cfg, &mut oracle).unwrap();
    assert_eq!(
        ordering.realized_max_outdegree,
        orient_and_max_outdegree(&g, &ordering.order).unwrap()
    );

    let mut position = vec![0; g.n()];
    for (i, &v) in ordering.order.iter().enumerate() {
        position[v] = i;
    }
    let mut active = VertexSubset::full(g.n());
    let mut i = 0;
    while i < outcome.removals.len() {
        let tick = outcome.removals[i].tick;
        let batch: Vec<usize> = outcome.removals[i..]
            .iter()
            .take_while(|r| r.tick == tick)
            .map(|r| r.vertex)
            .collect();
        for &v in &batch {
            let out = g.neighbors(v).filter(|&u| position[u] > position[v]).count();
            assert!(out <= g.induced_degree(v, &active).unwrap());
        }
        for &v in &batch {
            active.remove(v);
        }
        i += batch.len();
    }
}

#[test]
fn densest_is_reproducible_from_labels() {
    let g = generate(Model::Gnp { p: 0.3 }, 40, 2).unwrap();
    let cfg = PeelConfig::new(
        1.0,
        kcore_dp::private::scaled_schedule(
            40,
            1.0,
            kcore_dp::private::ScheduleKind::Additive,
            0.5,
            Default::default(),
        )
        .unwrap(),
        Engine::Fast,
    )
    .unwrap();
    for seed in 0..10 {
        let (subset, labels) = dp_densest_subgraph(&g, &cfg, 2.0, &mut NoiseOracle::seeded(seed)).unwrap();
        assert_eq!(densest_from_labels(&labels, 2.0, 1.0), subset);
        assert!(!subset.is_empty());
    }
}

#[test]
fn default_schedule_step_matches_constant() {
    let n = 1000;
    let s = kcore_dp::private::default_schedule(n, 2.0, kcore_dp::private::ScheduleKind::Additive).unwrap();
    let unit = DEFAULT_STEP_CONSTANT * (n as f64).ln() / 2.0;
    assert!((s.start() - unit).abs() < 1e-9);
    assert!((s.threshold(1) - 2.0 * unit).abs() < 1e-9);
}
