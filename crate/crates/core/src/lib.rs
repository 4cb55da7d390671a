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

//! Edge-differentially-private k-core decomposition.
//!
//! The crate provides
//!
//! - [`graph`]: simple undirected graphs, edge-list I/O and generators;
//! - [`noise`] and [`mat`]: seeded Laplace/geometric sampling and the
//!   multidimensional AboveThreshold mechanism;
//! - [`exact`]: exact core numbers, degeneracy orderings and density oracles;
//! - [`private`]: ε-edge-DP core numbers with a naive and a near-linear peel;
//! - [`ledp`]: a local-model protocol with a replayable transcript;
//! - [`derived`]: private densest subgraph and low out-degree ordering;
//! - [`harness`]: experiment runner, privacy audit and engine-equivalence test.
//!
//! Runnable examples for each capability live in `examples/`.

pub mod derived;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod ledp;
pub mod mat;
pub mod noise;
pub mod private;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSubset};
pub use noise::NoiseOracle;
