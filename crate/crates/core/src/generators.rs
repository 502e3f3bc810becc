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

//! Instance generators: hardness gadgets, problem conversions, seeded random
//! instances per graph class and small-graph enumeration.
//!
//! Vertex layouts of the gadgets are fixed and documented on each function.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{ecp_to_bcp, BcpInstance};
use crate::recognize::{ClassTag, DeletionKind, DeletionSet};

/// Complete multipartite graph with `c = |X| / 3` parts of `3n + w` vertices
/// each (`n = sum X`), and one color of budget `n + x_i` per entry of `X`.
///
/// Layout: part `j` holds vertices `j(3n+w) .. (j+1)(3n+w)`.
pub fn gen_3partition_cocluster(x: &[usize], w: usize) -> Result<BcpInstance> {
    if x.is_empty() || !x.len().is_multiple_of(3) {
        return Err(Error::Invalid(format!(
            "need 3c positive integers, got {}",
            x.len()
        )));
    }
    if x.contains(&0) {
        return Err(Error::Invalid("entries must be positive".into()));
    }
    let c = x.len() / 3;
    let n: usize = x.iter().sum();
    if w * c != n {
        return Err(Error::Invalid(format!("target {w} times {c} parts is not {n}")));
    }
    let size = 3 * n + w;
    let mut edges = Vec::new();
    for u in 0..c * size {
        for v in u + 1..c * size {
            if u / size != v / size {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_valid_edges(c * size, edges);
    BcpInstance::new(g, x.iter().map(|&xi| n + xi).collect())
}

/// Which vertices of the source graph `u_i` may dominate in the split gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Neighborhood {
    /// `u_i ~ v_j` iff `w_i w_j` is not an edge, including `i = j`.
    #[default]
    Literal,
    /// As `Literal` but without the `u_i v_i` edges.
    Closed,
}

impl Neighborhood {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "literal" => Some(Neighborhood::Literal),
            "closed" => Some(Neighborhood::Closed),
            _ => None,
        }
    }
}

/// Split graph from a dominating-set instance `(g, k)`: a clique
/// `u_0 .. u_{n-1}` (vertices `0..n`) and an independent set
/// `v_0 .. v_{n-1}` (vertices `n..2n`). `n` colors: `k` of budget `n + 1`,
/// the rest of budget 1.
pub fn gen_domset_split(g: &Graph, k: usize, mode: Neighborhood) -> Result<BcpInstance> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::Invalid(format!("need 1 <= k <= {n}, got {k}")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
        for j in 0..n {
            let joined = if i == j {
                mode == Neighborhood::Literal
            } else {
                !g.has_edge(i, j)
            };
            if joined {
                edges.push((i, n + j));
            }
        }
    }
    let budgets = (0..n).map(|i| if i < k { n + 1 } else { 1 }).collect();
    BcpInstance::new(Graph::from_valid_edges(2 * n, edges), budgets)
}

/// The equitable-coloring gadget for balanced biclique, in both forms.
#[derive(Debug, Clone)]
pub struct BicliqueGadget {
    pub graph: Graph,
    pub colors: usize,
    pub bcp: BcpInstance,
}

/// Bipartite gadget from a bipartite `g` whose sides are `0..n` and
/// `n..2n`. Layout of the result: `V_1` (`0..n`), `V_2` (`n..2n`), then
/// `n - 3k + 1` padding vertices `W`, then `a`, then `b`. `V_1` and `V_2`
/// are joined by the bipartite complement of `g`, `a` is joined to
/// `V_2 ∪ W ∪ {b}` and `b` to `V_1 ∪ {a}`.
pub fn gen_biclique_bipartite_ecp(g: &Graph, k: usize) -> Result<BicliqueGadget> {
    if !g.n().is_multiple_of(2) {
        return Err(Error::Invalid("sides must have equal size".into()));
    }
    let n = g.n() / 2;
    if g.edges().iter().any(|&(u, v)| (u < n) == (v < n)) {
        return Err(Error::NotInClass("bipartite with sides 0..n and n..2n"));
    }
    if k == 0 || n + 1 < 3 * k {
        return Err(Error::Invalid(format!("need k >= 1 and n >= 3k - 1, got n = {n}, k = {k}")));
    }
    let pad = n + 1 - 3 * k;
    let (a, b) = (2 * n + pad, 2 * n + pad + 1);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in n..2 * n {
            if !g.has_edge(i, j) {
                edges.push((i, j));
            }
        }
    }
    edges.extend((n..2 * n + pad).map(|v| (v, a)));
    edges.push((a, b));
    edges.extend((0..n).map(|v| (v, b)));
    let graph = Graph::from_valid_edges(b + 1, edges);
    let bcp = ecp_to_bcp(&graph, 3)?;
    Ok(BicliqueGadget {
        graph,
        colors: 3,
        bcp,
    })
}

/// Clique instance `(g, l)` with vertex cover `X` to a coloring instance on
/// the complement whose clique modulator is `X`: `n - l` colors of budget 1
/// and one color of budget `l`.
pub fn gen_clique_vc(g: &Graph, x: &[usize], l: usize) -> Result<(BcpInstance, DeletionSet)> {
    let n = g.n();
    if l == 0 || l > n {
        return Err(Error::Invalid(format!("need 1 <= l <= {n}, got {l}")));
    }
    let cover = DeletionSet::new(DeletionKind::VertexCover, x.to_vec());
    if x.iter().any(|&v| v >= n) || !cover.is_valid(g) {
        return Err(Error::Invalid("not a vertex cover".into()));
    }
    let mut budgets = vec![1; n - l];
    budgets.push(l);
    let inst = BcpInstance::new(g.complement(), budgets)?;
    Ok((inst, DeletionSet::new(DeletionKind::CliqueModulator, cover.vertices)))
}

/// `g` plus `n(c - 1)` isolated vertices, numbered after the originals.
pub fn gen_coloring_to_ecp(g: &Graph, c: usize) -> Result<(Graph, usize)> {
    if c == 0 {
        return Err(Error::NoColors);
    }
    let total = g.n() * c;
    Ok((Graph::from_valid_edges(total, g.edges().to_vec()), c))
}

fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = g.vertices().collect();
    perm.shuffle(rng);
    Graph::from_valid_edges(g.n(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v])))
}

/// Sizes of a uniformly random composition of `n`.
fn composition(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut run = 0;
    for i in 0..n {
        run += 1;
        if i + 1 == n || rng.gen_bool(0.5) {
            sizes.push(run);
            run = 0;
        }
    }
    sizes
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng, keep: impl Fn(usize, usize) -> bool) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if keep(u, v) && rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_valid_edges(n, edges)
}

/// A seeded random instance whose graph belongs to `class`, with budgets
/// drawn uniformly from `budgets`.
pub fn gen_random(
    class: ClassTag,
    n: usize,
    c: usize,
    budgets: RangeInclusive<usize>,
    seed: u64,
) -> Result<BcpInstance> {
    if c == 0 {
        return Err(Error::NoColors);
    }
    if budgets.is_empty() {
        return Err(Error::Invalid("empty budget range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match class {
        ClassTag::Clique => Graph::complete(n),
        ClassTag::Cluster => shuffled(&Graph::disjoint_cliques(&composition(n, &mut rng)), &mut rng),
        ClassTag::CoCluster => {
            shuffled(&Graph::disjoint_cliques(&composition(n, &mut rng)), &mut rng).complement()
        }
        ClassTag::Split => {
            let k = rng.gen_range(0..=n);
            let base = random_graph(n, &mut rng, |u, v| u < k && v >= k);
            let mut edges = base.edges().to_vec();
            edges.extend((0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))));
            shuffled(&Graph::new(n, edges)?, &mut rng)
        }
        ClassTag::Bipartite => {
            let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            random_graph(n, &mut rng, |u, v| side[u] != side[v])
        }
        ClassTag::Path => shuffled(&Graph::path(n), &mut rng),
        ClassTag::Broom => {
            if n < 4 {
                return Err(Error::Invalid("a broom that is not a path needs 4 vertices".into()));
            }
            // q = 1 forces p = n - 1 >= 3, a star
            let p = rng.gen_range(2..n);
            let q = n - p;
            let mut edges: Vec<(usize, usize)> = (1..q).map(|i| (i - 1, i)).collect();
            edges.extend((q..q + p).map(|u| (0, u)));
            shuffled(&Graph::new(n, edges)?, &mut rng)
        }
        ClassTag::General => random_graph(n, &mut rng, |_, _| true),
    };
    let b = (0..c).map(|_| rng.gen_range(budgets.clone())).collect();
    BcpInstance::new(g, b)
}

/// Every labeled simple graph on `n` vertices, by edge bitmask.
pub fn all_labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if pairs.len() > 28 {
        return Err(Error::TooLarge {
            what: "labeled graph enumeration vertex count",
            limit: 8,
            actual: n,
        });
    }
    Ok((0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_valid_edges(n, edges)
    }))
}

const NONISO_MAX_VERTICES: usize = 7;

fn pair_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    v * (v - 1) / 2 + u
}

fn code_under(g: &Graph, pos: &[usize]) -> u64 {
    g.edges()
        .iter()
        .fold(0u64, |acc, &(u, v)| acc | 1 << pair_index(pos[u], pos[v]))
}

/// A canonical edge code: the largest code over relabelings that list
/// vertices by non-increasing degree.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical codes are for small graphs");
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    // runs of equal degree are permuted among themselves
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || g.degree(order[i]) != g.degree(order[start]) {
            runs.push(start..i);
            start = i;
        }
    }
    let mut best = 0;
    let mut pos = vec![0; n];
    fn permute(
        g: &Graph,
        order: &mut [usize],
        runs: &[std::ops::Range<usize>],
        r: usize,
        at: usize,
        pos: &mut [usize],
        best: &mut u64,
    ) {
        if r == runs.len() {
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            *best = (*best).max(code_under(g, pos));
            return;
        }
        let run = runs[r].clone();
        if at == run.end {
            permute(g, order, runs, r + 1, at, pos, best);
            return;
        }
        for i in at..run.end {
            order.swap(at, i);
            permute(g, order, runs, r, at + 1, pos, best);
            order.swap(at, i);
        }
    }
    permute(g, &mut order, &runs, 0, 0, &mut pos, &mut best);
    best
}

fn from_code(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if code >> pair_index(u, v) & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_valid_edges(n, edges)
}

/// One representative per isomorphism class on `n` vertices, built by adding
/// a vertex in every possible way to the classes on `n - 1` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > NONISO_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "isomorphism class enumeration vertex count",
            limit: NONISO_MAX_VERTICES,
            actual: n,
        });
    }
    let mut classes = vec![Graph::empty(0)];
    for m in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &classes {
            for nbrs in 0u32..1 << (m - 1) {
                let mut edges = g.edges().to_vec();
                edges.extend((0..m - 1).filter(|&u| nbrs >> u & 1 == 1).map(|u| (u, m - 1)));
                let h = Graph::from_valid_edges(m, edges);
                let code = canonical_code(&h);
                if seen.insert(code) {
                    next.push(code);
                }
            }
        }
        next.sort_unstable();
        classes = next.into_iter().map(|code| from_code(m, code)).collect();
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{verify_ecp, SolveResult};
    use crate::oracle::{oracle_bcp, oracle_ecp};
    use crate::recognize::classify;

    #[test]
    fn three_partition_examples() {
        let i = gen_3partition_cocluster(&[1, 1, 1], 3).unwrap();
        assert_eq!(i.n(), 12);
        assert_eq!(i.budgets(), &[4, 4, 4]);
        assert_eq!(i.graph().edge_count(), 0);
        assert!(oracle_bcp(&i).unwrap().is_yes());

        let two = gen_3partition_cocluster(&[1, 1, 1, 1, 1, 1], 3).unwrap();
        assert_eq!(two.n(), 42);
        assert_eq!(two.graph().edge_count(), 21 * 21);

        assert!(gen_3partition_cocluster(&[1, 1], 2).is_err());
        assert!(gen_3partition_cocluster(&[1, 1, 1], 2).is_err());
    }

    #[test]
    fn domset_layout() {
        let i = gen_domset_split(&Graph::complete(2), 1, Neighborhood::Literal).unwrap();
        assert_eq!(i.n(), 4);
        assert_eq!(i.budgets(), &[3, 1]);
        // clique edge plus u_0 v_0 and u_1 v_1
        assert_eq!(i.graph().edges(), &[(0, 1), (0, 2), (1, 3)]);
        let closed = gen_domset_split(&Graph::complete(2), 1, Neighborhood::Closed).unwrap();
        assert_eq!(closed.graph().edges(), &[(0, 1)]);
        assert!(gen_domset_split(&Graph::complete(2), 3, Neighborhood::Literal).is_err());
    }

    #[test]
    fn biclique_layout() {
        let k22 = Graph::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let gadget = gen_biclique_bipartite_ecp(&k22, 1).unwrap();
        assert_eq!(gadget.graph.n(), 6);
        assert_eq!(gadget.bcp.budgets(), &[2, 2, 2]);
        assert!(oracle_ecp(&gadget.graph, 3).unwrap().is_yes());

        let matching = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        assert!(gen_biclique_bipartite_ecp(&matching, 2).is_err());
        assert!(gen_biclique_bipartite_ecp(&Graph::complete(2), 1).is_err());
        assert!(gen_biclique_bipartite_ecp(&Graph::complete(4), 1).is_err());
    }

    #[test]
    fn clique_vc_examples() {
        let (i, x) = gen_clique_vc(&Graph::complete(3), &[0, 1], 3).unwrap();
        assert_eq!(i.budgets(), &[3]);
        assert_eq!(x.kind, DeletionKind::CliqueModulator);
        assert!(oracle_bcp(&i).unwrap().is_yes());

        let (i, _) = gen_clique_vc(&Graph::cycle(4), &[0, 2], 3).unwrap();
        assert_eq!(oracle_bcp(&i).unwrap(), SolveResult::No);

        let (i, _) = gen_clique_vc(&Graph::path(3), &[1], 2).unwrap();
        assert!(oracle_bcp(&i).unwrap().is_yes());
        assert_eq!(i.budget_total(), 3);

        assert!(gen_clique_vc(&Graph::path(3), &[0], 2).is_err());
    }

    #[test]
    fn coloring_to_ecp_examples() {
        let (g, c) = gen_coloring_to_ecp(&Graph::complete(3), 3).unwrap();
        assert_eq!(g.n(), 9);
        let res = oracle_ecp(&g, c).unwrap();
        assert_eq!(verify_ecp(&g, c, res.coloring().unwrap()), Ok(()));
        let (g, c) = gen_coloring_to_ecp(&Graph::complete(3), 2).unwrap();
        assert_eq!(oracle_ecp(&g, c).unwrap(), SolveResult::No);
        let (g, c) = gen_coloring_to_ecp(&Graph::cycle(5), 3).unwrap();
        assert!(oracle_ecp(&g, c).unwrap().is_yes());
    }

    #[test]
    fn random_examples() {
        let i = gen_random(ClassTag::Cluster, 8, 3, 1..=4, 1).unwrap();
        assert!(ClassTag::Cluster.contains(i.graph()));
        assert!(classify(i.graph()).tag <= ClassTag::Cluster);
        let p = gen_random(ClassTag::Path, 5, 2, 1..=3, 7).unwrap();
        assert_eq!(classify(p.graph()).tag, ClassTag::Path);
        assert_eq!(p.budgets().len(), 2);
        assert!(p.budgets().iter().all(|b| (1..=3).contains(b)));
        let again = gen_random(ClassTag::Path, 5, 2, 1..=3, 7).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn random_classes_hold() {
        for class in ClassTag::ALL {
            for seed in 0..40 {
                let n = 4 + (seed as usize % 6);
                let i = gen_random(class, n, 3, 0..=3, seed).unwrap();
                assert!(class.contains(i.graph()), "{class} seed {seed}");
                let label = classify(i.graph());
                assert!(label.tag <= class && label.validate(i.graph()));
            }
        }
        assert!(gen_random(ClassTag::Broom, 3, 2, 1..=2, 0).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_labeled_graphs(4).unwrap().count(), 64);
        let counts: Vec<usize> = (0..=6).map(|n| nonisomorphic_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        assert!(nonisomorphic_graphs(8).is_err());
    }

    #[test]
    fn canonical_code_is_invariant() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let h = Graph::new(5, [(4, 3), (3, 2), (2, 1), (3, 0)]).unwrap();
        assert_eq!(canonical_code(&g), canonical_code(&h));
        assert_ne!(canonical_code(&g), canonical_code(&Graph::path(5)));
    }
}
