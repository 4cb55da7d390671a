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

use std::collections::HashMap;

use kcore_dp::mat::{Mat, MatAnswer, MatConfig};
use kcore_dp::NoiseOracle;
use rayon::prelude::*;

const TRIALS: u64 = 1_000_000;

fn transcript_counts(queries: [f64; 2], seed_base: u64) -> HashMap<Vec<MatAnswer>, u64> {
    (0..TRIALS)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, i| {
            let mut oracle = NoiseOracle::seeded(seed_base + i);
            let cfg = MatConfig::new(1.0, 1.0, vec![0.0]).unwrap();
            let mut mat = Mat::init(cfg, &mut oracle);
            let mut transcript = Vec::with_capacity(2);
            for q in queries {
                transcript.push(mat.query(&[q], &mut oracle).unwrap()[0]);
            }
            *acc.entry(transcript).or_insert(0u64) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

#[test]
fn answers_follow_below_then_above_then_halted() {
    let mut oracle = NoiseOracle::seeded(17);
    let cfg = MatConfig::new(0.5, 1.0, vec![3.0, -2.0, 8.0, 0.0]).unwrap();
    let mut mat = Mat::init(cfg, &mut oracle);
    let mut history: Vec<Vec<MatAnswer>> = vec![Vec::new(); 4];
    for t in 0..200 {
        let f: Vec<f64> = (0..4).map(|j| ((t * (j + 1)) % 13) as f64 - 4.0).collect();
        for (j, a) in mat.query(&f, &mut oracle).unwrap().into_iter().enumerate() {
            history[j].push(a);
        }
    }
    for h in history {
        let below = h.iter().take_while(|&&a| a == MatAnswer::Below).count();
        let rest = &h[below..];
        if let Some((first, tail)) = rest.split_first() {
            assert_eq!(*first, MatAnswer::Above);
            assert!(tail.iter().all(|&a| a == MatAnswer::Halted));
        }
    }
}

#[test]
fn two_query_transcripts_respect_epsilon() {
    let p = transcript_counts([0.0, 1.0], 0);
    let q = transcript_counts([1.0, 0.0], TRIALS);
    let mut keys: Vec<_> = p.keys().chain(q.keys()).cloned().collect();
    keys.sort_by_key(|k| format!("{k:?}"));
    keys.dedup();
    assert_eq!(keys.len(), 3, "{keys:?}");
    for k in keys {
        let a = p.get(&k).copied().unwrap_or(0) as f64 / TRIALS as f64;
        let b = q.get(&k).copied().unwrap_or(0) as f64 / TRIALS as f64;
        let ratio = (a / b).ln().abs();
        assert!(ratio <= 1.0 + 0.2, "{k:?}: {a} vs {b}, ln ratio {ratio}");
    }
}
