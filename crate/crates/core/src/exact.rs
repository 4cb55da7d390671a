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

//! Exact, non-private ground truth: core numbers, degeneracy orderings,
//! subgraph density and an exhaustive densest-subgraph search for tiny
//! graphs.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};

/// Exact core number of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreNumbers(pub Vec<usize>);

impl CoreNumbers {
    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Largest core number, i.e. the degeneracy. Zero for an empty graph.
    pub fn degeneracy(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// Largest `k` such that each vertex lies in the `k`-core, by bucket-queue
/// peeling in O(n + m).
pub fn exact_core_numbers(g: &Graph) -> CoreNumbers {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    // vertices sorted by degree; bin_start[d] is the first slot of degree d
    let mut bin_start = vec![0usize; max_deg + 2];
    for &d in &degree {
        bin_start[d + 1] += 1;
    }
    for d in 1..bin_start.len() {
        bin_start[d] += bin_start[d - 1];
    }
    let mut order = vec![0usize; n];
    let mut pos = vec![0usize; n];
    let mut fill = bin_start.clone();
    for v in 0..n {
        pos[v] = fill[degree[v]];
        order[pos[v]] = v;
        fill[degree[v]] += 1;
    }

    for i in 0..n {
        let v = order[i];
        for u in g.neighbors(v) {
            if degree[u] > degree[v] {
                let du = degree[u];
                let (pu, pw) = (pos[u], bin_start[du]);
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin_start[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    CoreNumbers(degree)
}

/// Repeatedly removes a vertex of minimum induced degree, smallest id first
/// among ties. Orienting every edge from the earlier to the later endpoint
/// gives maximum out-degree equal to the degeneracy.
pub fn degeneracy_ordering(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).map(|v| Reverse((degree[v], v))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((d, v))) = heap.pop() {
        if removed[v] || d != degree[v] {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                degree[u] -= 1;
                heap.push(Reverse((degree[u], u)));
            }
        }
    }
    order
}

/// Maximum over vertices of the number of neighbors placed after it in
/// `order`.
pub fn orient_and_max_outdegree(g: &Graph, order: &[usize]) -> Result<usize> {
    let n = g.n();
    let mut position = vec![usize::MAX; n];
    if order.len() != n {
        return Err(Error::Usage(format!(
            "ordering has {} entries for {n} vertices",
            order.len()
        )));
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(Error::Usage("ordering is not a permutation".into()));
        }
        position[v] = i;
    }
    Ok((0..n)
        .map(|v| g.neighbors(v).filter(|&u| position[u] > position[v]).count())
        .max()
        .unwrap_or(0))
}

/// `|E_S| / |S|` as an exact fraction.
pub fn density(g: &Graph, s: &VertexSubset) -> Result<Ratio<u64>> {
    if s.is_empty() {
        return Err(Error::Usage("density of an empty subset".into()));
    }
    Ok(Ratio::new(g.induced_edge_count(s) as u64, s.len() as u64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityResult {
    pub subset: VertexSubset,
    pub density: Ratio<u64>,
}

/// Largest vertex count accepted by [`brute_force_densest`].
pub const BRUTE_FORCE_MAX_N: usize = 20;

/// Densest subgraph by enumerating all `2^n - 1` nonempty subsets. Ties go
/// to the smaller subset, then to the lexicographically smaller member list.
pub fn brute_force_densest(g: &Graph) -> Result<DensityResult> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Capacity(format!(
            "exhaustive densest subgraph supports n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )));
    }
    if n == 0 {
        return Err(Error::Usage("graph has no vertices".into()));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |acc, u| acc | (1 << u)))
        .collect();
    let members = |mask: u32| (0..n).filter(move |&v| mask & (1 << v) != 0);

    let mut best_mask = 0u32;
    let mut best = (0u64, 1u64);
    for mask in 1u32..(1u32 << n) {
        let twice_edges: u32 = members(mask).map(|v| (adj[v] & mask).count_ones()).sum();
        let cand = ((twice_edges / 2) as u64, mask.count_ones() as u64);
        let ord = (cand.0 * best.1).cmp(&(best.0 * cand.1));
        let better = match ord {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal if best_mask == 0 => true,
            Ordering::Equal => match cand.1.cmp(&best.1) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => members(mask).lt(members(best_mask)),
            },
        };
        if better {
            best_mask = mask;
            best = cand;
        }
    }
    Ok(DensityResult {
        subset: VertexSubset::from_members(n, members(best_mask))?,
        density: Ratio::new(best.0, best.1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Model};

    fn with_pendant_k4() -> Graph {
        let mut e: Vec<(usize, usize)> = Vec::new();
        for u in 0..4 {
            e.extend((u + 1..4).map(|v| (u, v)));
        }
        e.push((3, 4));
        Graph::from_edge_list(e, 5).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edge_list(e, 10).unwrap()
    }

    /// Core number via exhaustive search: the largest min-degree over
    /// induced subgraphs containing `v`.
    fn brute_core(g: &Graph, v: usize) -> usize {
        let n = g.n();
        let mut best = 0;
        for mask in 1u32..(1 << n) {
            if mask & (1 << v) == 0 {
                continue;
            }
            let s = VertexSubset::from_members(n, (0..n).filter(|&u| mask & (1 << u) != 0)).unwrap();
            let min_deg = s.iter().map(|u| g.induced_degree(u, &s).unwrap()).min().unwrap();
            best = best.max(min_deg);
        }
        best
    }

    #[test]
    fn simple_core_numbers() {
        let k4 = generate(Model::Complete, 4, 0).unwrap();
        assert_eq!(exact_core_numbers(&k4).0, vec![3; 4]);
        let p5 = generate(Model::Path, 5, 0).unwrap();
        assert_eq!(exact_core_numbers(&p5).0, vec![1; 5]);
        let g = with_pendant_k4();
        assert_eq!(exact_core_numbers(&g).0, vec![3, 3, 3, 3, 1]);
        let brute: Vec<_> = (0..5).map(|v| brute_core(&g, v)).collect();
        assert_eq!(brute, vec![3, 3, 3, 3, 1]);
        assert_eq!(exact_core_numbers(&Graph::empty(3)).0, vec![0; 3]);
    }

    #[test]
    fn core_numbers_match_exhaustive_search() {
        for seed in 0..20 {
            let g = generate(Model::Gnp { p: 0.35 }, 10, seed).unwrap();
            let fast = exact_core_numbers(&g);
            for v in 0..10 {
                assert_eq!(fast.get(v), brute_core(&g, v), "seed {seed} vertex {v}");
            }
        }
    }

    #[test]
    fn degeneracy_orderings() {
        let star = generate(Model::Star, 6, 0).unwrap();
        let order = degeneracy_ordering(&star);
        assert_eq!(orient_and_max_outdegree(&star, &order).unwrap(), 1);
        let k4 = generate(Model::Complete, 4, 0).unwrap();
        assert_eq!(degeneracy_ordering(&k4), vec![0, 1, 2, 3]);
        assert_eq!(orient_and_max_outdegree(&k4, &[0, 1, 2, 3]).unwrap(), 3);
        let c6 = generate(Model::Cycle, 6, 0).unwrap();
        assert_eq!(orient_and_max_outdegree(&c6, &degeneracy_ordering(&c6)).unwrap(), 2);
    }

    #[test]
    fn star_leaves_come_first() {
        let star = generate(Model::Star, 6, 0).unwrap();
        let order = degeneracy_ordering(&star);
        // leaves 1..=4 go before the center; the last leaf and the center
        // both have degree 1 at the end and the center wins on id
        assert_eq!(order, vec![1, 2, 3, 4, 0, 5]);
    }

    #[test]
    fn outdegree_errors_and_small_cases() {
        let k3 = generate(Model::Complete, 3, 0).unwrap();
        assert_eq!(orient_and_max_outdegree(&k3, &[0, 1, 2]).unwrap(), 2);
        assert!(orient_and_max_outdegree(&k3, &[0, 1]).is_err());
        assert!(orient_and_max_outdegree(&k3, &[0, 1, 1]).is_err());
        assert!(orient_and_max_outdegree(&k3, &[0, 1, 7]).is_err());
    }

    #[test]
    fn densities() {
        let all = |n| VertexSubset::full(n);
        let k3 = generate(Model::Complete, 3, 0).unwrap();
        assert_eq!(density(&k3, &all(3)).unwrap(), Ratio::new(1, 1));
        let k4 = generate(Model::Complete, 4, 0).unwrap();
        assert_eq!(density(&k4, &all(4)).unwrap(), Ratio::new(3, 2));
        let p3 = generate(Model::Path, 3, 0).unwrap();
        assert_eq!(density(&p3, &all(3)).unwrap(), Ratio::new(2, 3));
        assert!(density(&p3, &VertexSubset::empty(3)).is_err());
    }

    #[test]
    fn densest_by_enumeration() {
        let k4 = generate(Model::Complete, 4, 0).unwrap();
        let r = brute_force_densest(&k4).unwrap();
        assert_eq!(r.density, Ratio::new(3, 2));
        assert_eq!(r.subset.to_vec(), vec![0, 1, 2, 3]);

        let k4_iso = Graph::from_edge_list(k4.edges(), 5).unwrap();
        let r = brute_force_densest(&k4_iso).unwrap();
        assert_eq!(r.subset.to_vec(), vec![0, 1, 2, 3]);

        let r = brute_force_densest(&petersen()).unwrap();
        assert_eq!(r.density, Ratio::new(3, 2));
        assert_eq!(r.subset.len(), 10);

        // all singletons tie at density 0; the smallest id wins
        let r = brute_force_densest(&Graph::empty(4)).unwrap();
        assert_eq!(r.subset.to_vec(), vec![0]);

        assert!(matches!(
            brute_force_densest(&Graph::empty(21)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn densest_tie_breaks_lexicographically() {
        // two disjoint triangles: both have density 1; {0,1,2} wins
        let g = Graph::from_edge_list([(3, 4), (4, 5), (3, 5), (0, 1), (1, 2), (0, 2)], 6).unwrap();
        assert_eq!(brute_force_densest(&g).unwrap().subset.to_vec(), vec![0, 1, 2]);
    }
}
