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

//! Multidimensional AboveThreshold as a standalone mechanism: several
//! running counters watched against private thresholds with one budget.
//!
//!     cargo run --example above_threshold

use kcore_dp::mat::{Mat, MatAnswer, MatConfig};
use kcore_dp::NoiseOracle;

fn main() -> kcore_dp::Result<()> {
    let thresholds = vec![10.0, 25.0, 40.0];
    let config = MatConfig::new(1.0, 1.0, thresholds.clone())?;
    println!(
        "threshold noise scale {}, query noise scale {}",
        config.threshold_scale().get(),
        config.query_scale().get()
    );
    let mut oracle = NoiseOracle::seeded(2);
    let mut mat = Mat::init(config, &mut oracle);

    // each coordinate is a counter growing at its own rate
    let rates = [1.0, 2.0, 1.5];
    for step in 1..=60 {
        let f: Vec<f64> = rates.iter().map(|r| r * step as f64).collect();
        let answers = mat.query(&f, &mut oracle)?;
        for (j, a) in answers.iter().enumerate() {
            if *a == MatAnswer::Above {
                println!(
                    "step {step:>2}: counter {j} crossed (value {:.1}, threshold {})",
                    f[j], thresholds[j]
                );
            }
        }
        if mat.state().live_count() == 0 {
            break;
        }
    }
    println!("randomness drawn: {} values", oracle.position());
    Ok(())
}
