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

//! Immutable undirected simple graphs, vertex subsets, edge-list I/O and
//! synthetic generators.
//!
//! Vertices are dense ids `0..n`. Adjacency is stored in CSR form with every
//! neighbor list sorted, so two graphs with the same edge set compare equal.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds a graph from `(u, v)` pairs. Duplicates and reversed copies of
    /// an edge collapse into one; self-loops are rejected.
    pub fn from_edge_list<I>(pairs: I, n: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::Capacity(format!("{n} vertices exceeds u32 ids")));
        }
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            edges.push((u.min(v) as u32, u.max(v) as u32));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_unique(n, &edges))
    }

    fn from_sorted_unique(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { offsets, targets }
    }

    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.targets[self.offsets[v]..self.offsets[v + 1]]
            .iter()
            .map(|&u| u as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n()
            && v < self.n()
            && self.targets[self.offsets[u]..self.offsets[u + 1]]
                .binary_search(&(v as u32))
                .is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of neighbors of `v` inside `active`.
    pub fn induced_degree(&self, v: usize, active: &VertexSubset) -> Result<usize> {
        if active.n() != self.n() {
            return Err(Error::Usage(format!(
                "subset indexes {} vertices, graph has {}",
                active.n(),
                self.n()
            )));
        }
        if !active.contains(v) {
            return Err(Error::Usage(format!("vertex {v} is not in the active set")));
        }
        Ok(self.neighbors(v).filter(|&u| active.contains(u)).count())
    }

    /// Number of edges with both endpoints in `subset`.
    pub fn induced_edge_count(&self, subset: &VertexSubset) -> usize {
        subset
            .iter()
            .map(|v| self.neighbors(v).filter(|&u| u > v && subset.contains(u)).count())
            .sum()
    }

    /// Returns a copy with the unordered pair `{u, v}` flipped: added if
    /// absent, removed if present.
    pub fn toggle_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let n = self.n();
        if u >= n || v >= n || u == v {
            return Err(Error::InvalidInput(format!(
                "cannot toggle pair ({u}, {v}) on {n} vertices"
            )));
        }
        let key = (u.min(v) as u32, u.max(v) as u32);
        let mut edges: Vec<(u32, u32)> = self.edges().map(|(a, b)| (a as u32, b as u32)).collect();
        match edges.binary_search(&key) {
            Ok(i) => {
                edges.remove(i);
            }
            Err(i) => edges.insert(i, key),
        }
        Ok(Self::from_sorted_unique(n, &edges))
    }

    /// Every edge-neighboring graph: one per unordered vertex pair, in
    /// lexicographic pair order. Yields exactly `n(n-1)/2` graphs.
    pub fn edge_neighbors(&self) -> impl Iterator<Item = Graph> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| {
            (u + 1..n).map(move |v| self.toggle_edge(u, v).expect("pair is in range"))
        })
    }

    /// Whether `other` differs from `self` in exactly one unordered pair.
    pub fn is_edge_neighbor_of(&self, other: &Graph) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let mut diff = 0usize;
        for v in 0..self.n() {
            let (mut a, mut b) = (self.neighbors(v).peekable(), other.neighbors(v).peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (Some(x), Some(y)) if x == y => {
                        a.next();
                        b.next();
                    }
                    (Some(x), Some(y)) => {
                        if x < y {
                            a.next();
                        } else {
                            b.next();
                        }
                        diff += 1;
                    }
                    (Some(_), None) => {
                        a.next();
                        diff += 1;
                    }
                    (None, Some(_)) => {
                        b.next();
                        diff += 1;
                    }
                    (None, None) => break,
                }
            }
            if diff > 2 {
                return false;
            }
        }
        // each differing pair is seen from both endpoints
        diff == 2
    }

    /// Writes the edge-list text form, headed by `# n=<count>`.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = format!("# n={}\n", self.n());
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn write_edge_list(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_edge_list_string()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

/// A set of vertices of a particular graph, stored as a membership mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    mask: Vec<bool>,
    len: usize,
}

impl VertexSubset {
    pub fn empty(n: usize) -> Self {
        VertexSubset {
            mask: vec![false; n],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        VertexSubset {
            mask: vec![true; n],
            len: n,
        }
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in members {
            if v >= n {
                return Err(Error::InvalidInput(format!("vertex {v} outside 0..{n}")));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Size of the parent vertex set.
    pub fn n(&self) -> usize {
        self.mask.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let fresh = !self.mask[v];
        if fresh {
            self.mask[v] = true;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let present = self.mask[v];
        if present {
            self.mask[v] = false;
            self.len -= 1;
        }
        present
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// A graph loaded from text together with the original ids of its vertices
/// when the loader compacted them.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `original_ids[v]` is the id vertex `v` carried in the input file.
    pub original_ids: Option<Vec<u64>>,
}

/// Parses the edge-list text format.
///
/// One edge per line as two whitespace-separated non-negative integers.
/// Lines starting with `#` are comments, except a `# n=<count>` header which
/// fixes the vertex count. Without a header `n` is the largest id plus one.
/// With `remap` set, the distinct ids are instead compacted to `0..n` in
/// ascending order and the mapping is returned.
pub fn parse_edge_list(text: &str, remap: bool) -> Result<LoadedGraph> {
    let mut declared_n: Option<usize> = None;
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("n=") {
                let n = value.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("bad vertex count header {line:?}"),
                })?;
                declared_n = Some(n);
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next_id = || -> Result<u64> {
            let field = fields.next().ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: "expected two vertex ids".into(),
            })?;
            field.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("invalid vertex id {field:?}"),
            })
        };
        let u = next_id()?;
        let v = next_id()?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno + 1,
                message: "trailing fields after edge".into(),
            });
        }
        raw.push((u, v));
    }

    if remap {
        let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
        ids.sort_unstable();
        ids.dedup();
        let index = |x: u64| ids.binary_search(&x).unwrap();
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(u, v)| (index(u), index(v))).collect();
        let mut n = ids.len();
        if let Some(d) = declared_n {
            if d < n {
                return Err(Error::InvalidInput(format!(
                    "header declares {d} vertices but {n} distinct ids appear"
                )));
            }
            // padding vertices keep fresh ids after the largest seen id
            let mut next = ids.last().map_or(0, |&x| x + 1);
            while ids.len() < d {
                ids.push(next);
                next += 1;
            }
            n = d;
        }
        let graph = Graph::from_edge_list(pairs, n)?;
        return Ok(LoadedGraph {
            graph,
            original_ids: Some(ids),
        });
    }

    let to_usize = |x: u64| {
        usize::try_from(x).map_err(|_| Error::InvalidInput(format!("vertex id {x} too large")))
    };
    let n = match declared_n {
        Some(n) => n,
        None => raw
            .iter()
            .map(|&(u, v)| u.max(v))
            .max()
            .map_or(Ok(0), |m| to_usize(m).map(|m| m + 1))?,
    };
    let pairs = raw
        .iter()
        .map(|&(u, v)| Ok((to_usize(u)?, to_usize(v)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LoadedGraph {
        graph: Graph::from_edge_list(pairs, n)?,
        original_ids: None,
    })
}

pub fn read_edge_list(path: &Path, remap: bool) -> Result<LoadedGraph> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text, remap)
}

/// Synthetic graph families.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum Model {
    Path,
    Cycle,
    Complete,
    /// Vertex 0 is the center, all others are leaves.
    Star,
    Gnp { p: f64 },
    /// Two cliques on `⌊n/2⌋` and `⌈n/2⌉` vertices joined by one edge.
    Barbell,
}

impl FromStr for Model {
    type Err = Error;

    /// Accepts `path`, `cycle`, `complete`, `star`, `barbell` and `gnp(<p>)`
    /// (also `gnp:<p>`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let gnp_arg = s
            .strip_prefix("gnp(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("gnp:"));
        if let Some(arg) = gnp_arg {
            let p = arg
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad gnp probability {arg:?}")))?;
            return Ok(Model::Gnp { p });
        }
        match s {
            "path" => Ok(Model::Path),
            "cycle" => Ok(Model::Cycle),
            "complete" => Ok(Model::Complete),
            "star" => Ok(Model::Star),
            "barbell" => Ok(Model::Barbell),
            other => Err(Error::InvalidInput(format!("unknown graph model {other:?}"))),
        }
    }
}

/// Generates a graph from `model` on `n` vertices. Deterministic in
/// `(model, n, seed)`; only `Gnp` consumes randomness.
pub fn generate(model: Model, n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidInput("generator needs n >= 1".into()));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match model {
        Model::Path => edges.extend((1..n).map(|v| (v - 1, v))),
        Model::Cycle => {
            edges.extend((1..n).map(|v| (v - 1, v)));
            if n >= 3 {
                edges.push((0, n - 1));
            }
        }
        Model::Complete => {
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
        }
        Model::Star => edges.extend((1..n).map(|v| (0, v))),
        Model::Barbell => {
            let half = n / 2;
            for (lo, hi) in [(0, half), (half, n)] {
                for u in lo..hi {
                    edges.extend((u + 1..hi).map(|v| (u, v)));
                }
            }
            if half >= 1 {
                edges.push((half - 1, half));
            }
        }
        Model::Gnp { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidInput(format!("gnp probability {p} outside [0, 1]")));
            }
            edges = gnp_edges(n, p, seed);
        }
    }
    Graph::from_edge_list(edges, n)
}

/// G(n, p) by geometric skipping over the lower-triangular pair sequence,
/// O(n + m) expected time.
fn gnp_edges(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    if p <= 0.0 || n < 2 {
        return edges;
    }
    if p >= 1.0 {
        for v in 1..n {
            edges.extend((0..v).map(|w| (w, v)));
        }
        return edges;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (-p).ln_1p();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = 1.0 - rng.gen::<f64>();
        w += 1 + (r.ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    edges
}
