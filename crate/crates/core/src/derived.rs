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

//! Applications that post-process or instrument the private peel: an
//! approximate densest subgraph and a low out-degree vertex ordering.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::orient_and_max_outdegree;
use crate::graph::{Graph, VertexSubset};
use crate::noise::NoiseOracle;
use crate::private::{private_peel, CoreEstimates, PeelConfig};

/// Default `c'` for the densest-subgraph cutoff `k̂_max - c'·ln(n)/ε`.
pub const DEFAULT_C_PRIME: f64 = 120.0;

/// Vertices whose estimate is within `c'·ln(n)/ε` of the largest estimate.
/// Touches nothing but the released labels.
pub fn densest_from_labels(labels: &CoreEstimates, c_prime: f64, epsilon: f64) -> VertexSubset {
    let n = labels.0.len();
    let cutoff = labels.max() - c_prime * (n as f64).ln() / epsilon;
    let mut s = VertexSubset::empty(n);
    for (v, &l) in labels.0.iter().enumerate() {
        if l >= cutoff {
            s.insert(v);
        }
    }
    s
}

/// Private approximate densest subgraph.
pub fn dp_densest_subgraph(
    g: &Graph,
    config: &PeelConfig,
    c_prime: f64,
    oracle: &mut NoiseOracle,
) -> Result<(VertexSubset, CoreEstimates)> {
    let labels = private_peel(g, config, oracle)?.labels;
    Ok((densest_from_labels(&labels, c_prime, config.epsilon), labels))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingResult {
    pub order: Vec<usize>,
    /// Evaluation only; computed from the true graph and never released.
    pub realized_max_outdegree: usize,
}

/// Private vertex ordering: vertices in the order the peel removes them,
/// ties within a round by ascending id, then any survivors by ascending id.
pub fn dp_low_outdegree_ordering(
    g: &Graph,
    config: &PeelConfig,
    oracle: &mut NoiseOracle,
) -> Result<OrderingResult> {
    let outcome = private_peel(g, config, oracle)?;
    let order: Vec<usize> = outcome
        .removals
        .iter()
        .map(|r| r.vertex)
        .chain(outcome.survivors.iter().copied())
        .collect();
    let realized_max_outdegree = orient_and_max_outdegree(g, &order)?;
    Ok(OrderingResult {
        order,
        realized_max_outdegree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_core_numbers;
    use crate::graph::{generate, Model};
    use crate::private::{Engine, Schedule};

    fn zero_step_one(engine: Engine) -> PeelConfig {
        PeelConfig::new(
            1.0,
            Schedule::Additive {
                start: 1.0,
                step: 1.0,
            },
            engine,
        )
        .unwrap()
    }

    #[test]
    fn densest_picks_the_clique() {
        let k4 = generate(Model::Complete, 4, 0).unwrap();
        let g = Graph::from_edge_list(k4.edges(), 5).unwrap();
        let (s, labels) =
            dp_densest_subgraph(&g, &zero_step_one(Engine::Fast), 0.1, &mut NoiseOracle::zero(0)).unwrap();
        assert_eq!(labels.0, vec![2.0, 2.0, 2.0, 2.0, 0.0]);
        assert_eq!(s.to_vec(), vec![0, 1, 2, 3]);

        for c in [0.01, 1.0, 500.0] {
            let (s, _) =
                dp_densest_subgraph(&k4, &zero_step_one(Engine::Naive), c, &mut NoiseOracle::zero(0)).unwrap();
            assert_eq!(s.len(), 4);
        }
    }

    #[test]
    fn densest_is_post_processing() {
        let g = generate(Model::Gnp { p: 0.2 }, 60, 3).unwrap();
        let cfg = PeelConfig::new(
            1.0,
            Schedule::Additive {
                start: 2.0,
                step: 2.0,
            },
            Engine::Fast,
        )
        .unwrap();
        let (s, labels) = dp_densest_subgraph(&g, &cfg, 1.0, &mut NoiseOracle::seeded(8)).unwrap();
        assert_eq!(densest_from_labels(&labels, 1.0, 1.0), s);
    }

    #[test]
    fn star_ordering_puts_leaves_first() {
        let star = generate(Model::Star, 6, 0).unwrap();
        for engine in [Engine::Naive, Engine::Fast] {
            let r = dp_low_outdegree_ordering(&star, &zero_step_one(engine), &mut NoiseOracle::zero(0)).unwrap();
            assert_eq!(r.order, vec![1, 2, 3, 4, 5, 0]);
            assert_eq!(r.realized_max_outdegree, 1);
        }
    }

    #[test]
    fn clique_ordering_is_by_id() {
        let k4 = generate(Model::Complete, 4, 0).unwrap();
        let r = dp_low_outdegree_ordering(&k4, &zero_step_one(Engine::Fast), &mut NoiseOracle::zero(0)).unwrap();
        assert_eq!(r.order, vec![0, 1, 2, 3]);
        assert_eq!(r.realized_max_outdegree, 3);
    }

    #[test]
    fn survivors_are_appended() {
        // a threshold schedule that stops at k = 1 < degree leaves K5 intact
        let k5 = generate(Model::Complete, 5, 0).unwrap();
        let cfg = PeelConfig::new(
            1.0,
            Schedule::Additive {
                start: 1.0,
                step: 10.0,
            },
            Engine::Fast,
        )
        .unwrap();
        let r = dp_low_outdegree_ordering(&k5, &cfg, &mut NoiseOracle::zero(0)).unwrap();
        assert_eq!(r.order, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn zero_noise_outdegree_within_degeneracy_plus_one() {
        for seed in 0..10 {
            let g = generate(Model::Gnp { p: 0.1 }, 80, seed).unwrap();
            let d = exact_core_numbers(&g).degeneracy();
            let r = dp_low_outdegree_ordering(&g, &zero_step_one(Engine::Fast), &mut NoiseOracle::zero(0)).unwrap();
            assert!(r.realized_max_outdegree <= d + 1);
            let mut sorted = r.order.clone();
            sorted.sort();
            assert_eq!(sorted, (0..80).collect::<Vec<_>>());
        }
    }
}
