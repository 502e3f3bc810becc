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

//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::error::Error;

const WORD: usize = 64;

/// An immutable simple undirected graph.
///
/// Vertices are the integers `0..n`. Adjacency is kept twice: as sorted
/// neighbor lists for iteration and as bit rows for constant-time membership
/// tests. For `n <= 64` each bit row is a single word, which the
/// exponential solvers use directly as a subset mask.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    rows: Vec<Vec<u64>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Build a graph from an edge list. Self-loops, out-of-range endpoints and
    /// repeated edges are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let words = n.div_ceil(WORD).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        let mut neighbors = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if rows[u][v / WORD] >> (v % WORD) & 1 == 1 {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            rows[u][v / WORD] |= 1 << (v % WORD);
            rows[v][u / WORD] |= 1 << (u % WORD);
            neighbors[u].push(v);
            neighbors[v].push(u);
            list.push((u.min(v), u.max(v)));
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        list.sort_unstable();
        Ok(Graph {
            n,
            edges: list,
            neighbors,
            rows,
        })
    }

    /// Graph from a list of edges known to be valid. Panics otherwise.
    pub(crate) fn from_valid_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::new(n, edges).expect("edge list must describe a simple graph")
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_valid_edges(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_valid_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::from_valid_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least three vertices");
        Graph::from_valid_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Disjoint union of cliques with the given sizes, laid out consecutively.
    pub fn disjoint_cliques(sizes: &[usize]) -> Self {
        let mut edges = Vec::new();
        let mut start = 0;
        for &s in sizes {
            for u in start..start + s {
                for v in u + 1..start + s {
                    edges.push((u, v));
                }
            }
            start += s;
        }
        Graph::from_valid_edges(start, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Neighborhood of `v` as a bit row of `ceil(n / 64)` words.
    pub fn adjacency_row(&self, v: usize) -> &[u64] {
        &self.rows[v]
    }

    /// Neighborhood of `v` as a single-word mask. Requires `n <= 64`.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        assert!(self.n <= WORD, "neighbor masks need n <= 64");
        self.rows[v][0]
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// The subgraph induced by `s`, relabeled to `0..|s|` in the order the
    /// vertices appear in `s`. The second component maps new ids back to the
    /// original ones.
    pub fn induced_subgraph(&self, s: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in s.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in s.iter().enumerate() {
            for &w in &self.neighbors[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        (Graph::from_valid_edges(s.len(), edges), s.to_vec())
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_valid_edges(self.n, edges)
    }

    /// `G - s`: the subgraph induced by the vertices outside `s`, together with
    /// the map from new ids to original ids.
    pub fn remove_vertices(&self, s: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n];
        for &v in s {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.neighbors[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_independent(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }
}
