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

//! Graph class recognition with certificates, and search for the structural
//! parameters (vertex cover, cluster vertex deletion, clique modulator).

use std::collections::VecDeque;
use std::fmt;

use crate::graph::Graph;

/// Graph classes in dispatch priority order (earlier wins).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassTag {
    Clique,
    Cluster,
    CoCluster,
    Split,
    Path,
    Broom,
    Bipartite,
    General,
}

impl ClassTag {
    pub const ALL: [ClassTag; 8] = [
        ClassTag::Clique,
        ClassTag::Cluster,
        ClassTag::CoCluster,
        ClassTag::Split,
        ClassTag::Path,
        ClassTag::Broom,
        ClassTag::Bipartite,
        ClassTag::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Clique => "clique",
            ClassTag::Cluster => "cluster",
            ClassTag::CoCluster => "co-cluster",
            ClassTag::Split => "split",
            ClassTag::Path => "path",
            ClassTag::Broom => "broom",
            ClassTag::Bipartite => "bipartite",
            ClassTag::General => "general",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        ClassTag::ALL.into_iter().find(|t| t.name() == name)
    }

    /// Whether `g` belongs to this class, regardless of priority.
    pub fn contains(self, g: &Graph) -> bool {
        match self {
            ClassTag::Clique => g.is_complete(),
            ClassTag::Cluster => cluster_parts(g).is_some(),
            ClassTag::CoCluster => cocluster_parts(g).is_some(),
            ClassTag::Split => split_partition(g).is_some(),
            ClassTag::Path => path_order(g).is_some(),
            ClassTag::Broom => broom_shape(g).is_some(),
            ClassTag::Bipartite => bipartition(g).is_some(),
            ClassTag::General => true,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A broom: the handle path `w_1 .. w_q` and the pendant leaves attached to
/// `w_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BroomShape {
    pub handle: Vec<usize>,
    pub leaves: Vec<usize>,
}

impl BroomShape {
    /// The graph is exactly this broom: the handle is an induced path, each
    /// leaf is adjacent to `w_1` only, and nothing else is present.
    pub fn certifies(&self, g: &Graph) -> bool {
        let q = self.handle.len();
        let p = self.leaves.len();
        if q == 0 || p + q != g.n() || g.edge_count() != p + q - 1 {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for &v in self.handle.iter().chain(&self.leaves) {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.handle.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && self.leaves.iter().all(|&u| g.has_edge(u, self.handle[0]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    None,
    /// Cliques of a cluster graph, or independent parts of a co-cluster graph.
    Parts(Vec<Vec<usize>>),
    Split {
        clique: Vec<usize>,
        independent: Vec<usize>,
    },
    Path(Vec<usize>),
    Broom(BroomShape),
    Bipartition(Vec<usize>, Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLabel {
    pub tag: ClassTag,
    pub witness: Witness,
}

impl ClassLabel {
    /// Independently re-check that the witness certifies the tag.
    pub fn validate(&self, g: &Graph) -> bool {
        let covers = |parts: &[&[usize]]| {
            let mut seen = vec![false; g.n()];
            for &v in parts.iter().flat_map(|p| p.iter()) {
                if v >= g.n() || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
            seen.iter().all(|&s| s)
        };
        match (&self.tag, &self.witness) {
            (ClassTag::Clique, Witness::None) => g.is_complete(),
            (ClassTag::General, Witness::None) => true,
            (ClassTag::Cluster, Witness::Parts(parts)) => {
                let refs: Vec<&[usize]> = parts.iter().map(Vec::as_slice).collect();
                covers(&refs)
                    && parts.iter().all(|p| g.is_clique(p))
                    && parts.iter().map(|p| p.len() * (p.len() - 1) / 2).sum::<usize>()
                        == g.edge_count()
            }
            (ClassTag::CoCluster, Witness::Parts(parts)) => {
                let refs: Vec<&[usize]> = parts.iter().map(Vec::as_slice).collect();
                let inside: usize = parts.iter().map(|p| p.len() * (p.len() - 1) / 2).sum();
                let total = g.n() * g.n().saturating_sub(1) / 2;
                covers(&refs)
                    && parts.iter().all(|p| g.is_independent(p))
                    && g.edge_count() == total - inside
            }
            (
                ClassTag::Split,
                Witness::Split {
                    clique,
                    independent,
                },
            ) => covers(&[clique, independent]) && g.is_clique(clique) && g.is_independent(independent),
            (ClassTag::Path, Witness::Path(order)) => {
                covers(&[order])
                    && g.edge_count() == order.len().saturating_sub(1)
                    && order.windows(2).all(|w| g.has_edge(w[0], w[1]))
            }
            (ClassTag::Broom, Witness::Broom(shape)) => shape.certifies(g),
            (ClassTag::Bipartite, Witness::Bipartition(a, b)) => {
                covers(&[a, b]) && g.is_independent(a) && g.is_independent(b)
            }
            _ => false,
        }
    }
}

/// Return the first matching class in priority order
/// Clique > Cluster > CoCluster > Split > Path > Broom > Bipartite > General.
pub fn classify(g: &Graph) -> ClassLabel {
    let label = |tag, witness| ClassLabel { tag, witness };
    if g.is_complete() {
        return label(ClassTag::Clique, Witness::None);
    }
    if let Some(parts) = cluster_parts(g) {
        return label(ClassTag::Cluster, Witness::Parts(parts));
    }
    if let Some(parts) = cocluster_parts(g) {
        return label(ClassTag::CoCluster, Witness::Parts(parts));
    }
    if let Some((clique, independent)) = split_partition(g) {
        return label(
            ClassTag::Split,
            Witness::Split {
                clique,
                independent,
            },
        );
    }
    if let Some(order) = path_order(g) {
        return label(ClassTag::Path, Witness::Path(order));
    }
    if let Some(shape) = broom_shape(g) {
        return label(ClassTag::Broom, Witness::Broom(shape));
    }
    if let Some((a, b)) = bipartition(g) {
        return label(ClassTag::Bipartite, Witness::Bipartition(a, b));
    }
    label(ClassTag::General, Witness::None)
}

/// The cliques of a cluster graph, or `None` if some component is not complete.
pub fn cluster_parts(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let comps = g.connected_components();
    comps.iter().all(|c| g.is_clique(c)).then_some(comps)
}

/// The independent parts of a complete multipartite graph.
pub fn cocluster_parts(g: &Graph) -> Option<Vec<Vec<usize>>> {
    cluster_parts(&g.complement())
}

/// Split partition `(clique, independent)` via the degree-sequence test.
pub fn split_partition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let deg: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    // m = max { i : d_i >= i - 1 } with 1-based i
    let m = (1..=deg.len()).filter(|&i| deg[i - 1] + 1 >= i).max().unwrap_or(0);
    let head: usize = deg[..m].iter().sum();
    let tail: usize = deg[m..].iter().sum();
    if head != m * m.saturating_sub(1) + tail {
        return None;
    }
    let mut clique = order[..m].to_vec();
    let mut independent = order[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    debug_assert!(g.is_clique(&clique) && g.is_independent(&independent));
    Some((clique, independent))
}

/// Vertex order along the path, starting from the lowest-id endpoint.
pub fn path_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if g.edge_count() != n - 1 || g.vertices().any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = g.vertices().find(|&v| g.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == n).then_some(order)
}

fn is_tree(g: &Graph) -> bool {
    g.n() >= 1 && g.edge_count() == g.n() - 1 && g.connected_components().len() == 1
}

/// Recognize a broom that is not a path: a tree with exactly one vertex `w_1`
/// of degree at least three, all of whose neighbors except at most one are
/// leaves. A star comes back with a one-vertex handle.
pub fn broom_shape(g: &Graph) -> Option<BroomShape> {
    if !is_tree(g) {
        return None;
    }
    let mut hubs = g.vertices().filter(|&v| g.degree(v) >= 3);
    let hub = hubs.next()?;
    if hubs.next().is_some() {
        return None;
    }
    let inner: Vec<usize> = g
        .neighbors(hub)
        .iter()
        .copied()
        .filter(|&w| g.degree(w) >= 2)
        .collect();
    if inner.len() > 1 {
        return None;
    }
    let leaves: Vec<usize> = g
        .neighbors(hub)
        .iter()
        .copied()
        .filter(|&w| g.degree(w) == 1)
        .collect();
    let mut handle = vec![hub];
    if let Some(&first) = inner.first() {
        let mut prev = hub;
        let mut cur = first;
        loop {
            handle.push(cur);
            match g.neighbors(cur).iter().find(|&&w| w != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
    }
    let shape = BroomShape { handle, leaves };
    shape.certifies(g).then_some(shape)
}

/// Two-coloring by BFS; each component's lowest vertex goes to the first side.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let side = two_coloring(g)?;
    let a = g.vertices().filter(|&v| !side[v]).collect();
    let b = g.vertices().filter(|&v| side[v]).collect();
    Some((a, b))
}

/// `side[v]` for a proper two-coloring, or `None` if `g` has an odd cycle.
pub fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for root in g.vertices() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let s = side[v].unwrap();
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!s);
                        queue.push_back(w);
                    }
                    Some(t) if t == s => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(Option::unwrap).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeletionKind {
    VertexCover,
    ClusterVertexDeletion,
    CliqueModulator,
}

/// A vertex set whose removal leaves an independent set, a cluster graph, or a
/// clique, depending on `kind`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionSet {
    pub kind: DeletionKind,
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
}

impl DeletionSet {
    pub fn new(kind: DeletionKind, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        DeletionSet { kind, vertices }
    }

    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        if self.vertices.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let (rest, _) = g.remove_vertices(&self.vertices);
        match self.kind {
            DeletionKind::VertexCover => rest.edge_count() == 0,
            DeletionKind::ClusterVertexDeletion => cluster_parts(&rest).is_some(),
            DeletionKind::CliqueModulator => rest.is_complete(),
        }
    }
}

struct Brancher<'a> {
    g: &'a Graph,
    removed: Vec<bool>,
    chosen: Vec<usize>,
}

impl Brancher<'_> {
    fn first_uncovered_edge(&self) -> Option<[usize; 2]> {
        self.g
            .edges()
            .iter()
            .find(|&&(u, v)| !self.removed[u] && !self.removed[v])
            .map(|&(u, v)| [u, v])
    }

    /// Lowest induced `P_3` among remaining vertices, as sorted ids.
    fn first_induced_p3(&self) -> Option<[usize; 3]> {
        let g = self.g;
        for v in g.vertices().filter(|&v| !self.removed[v]) {
            let nb: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| !self.removed[w])
                .collect();
            for (i, &a) in nb.iter().enumerate() {
                if let Some(&b) = nb[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                    let mut p3 = [a, v, b];
                    p3.sort_unstable();
                    return Some(p3);
                }
            }
        }
        None
    }

    fn branch<F, const K: usize>(&mut self, budget: usize, obstruction: &F) -> bool
    where
        F: Fn(&Self) -> Option<[usize; K]>,
    {
        let Some(obs) = obstruction(self) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for v in obs {
            self.removed[v] = true;
            self.chosen.push(v);
            if self.branch(budget - 1, obstruction) {
                return true;
            }
            self.chosen.pop();
            self.removed[v] = false;
        }
        false
    }
}

fn search<F, const K: usize>(g: &Graph, k: usize, kind: DeletionKind, obstruction: F) -> Option<DeletionSet>
where
    F: Fn(&Brancher<'_>) -> Option<[usize; K]>,
{
    let mut b = Brancher {
        g,
        removed: vec![false; g.n()],
        chosen: Vec::new(),
    };
    b.branch(k, &obstruction)
        .then(|| DeletionSet::new(kind, b.chosen))
}

/// A vertex cover of size at most `k`, by branching on the lowest uncovered
/// edge.
pub fn find_vertex_cover(g: &Graph, k: usize) -> Option<DeletionSet> {
    search(g, k, DeletionKind::VertexCover, |b: &Brancher<'_>| b.first_uncovered_edge())
}

/// A cluster vertex deletion set of size at most `k`, by branching on the
/// lowest induced `P_3`.
pub fn find_cvd(g: &Graph, k: usize) -> Option<DeletionSet> {
    search(g, k, DeletionKind::ClusterVertexDeletion, |b: &Brancher<'_>| b.first_induced_p3())
}

/// A set of at most `k` vertices whose removal leaves a clique: a vertex
/// cover of the complement.
pub fn find_clique_modulator(g: &Graph, k: usize) -> Option<DeletionSet> {
    find_vertex_cover(&g.complement(), k)
        .map(|s| DeletionSet::new(DeletionKind::CliqueModulator, s.vertices))
}

/// Smallest deletion set of the given kind with at most `cap` vertices.
pub fn minimum_deletion_set(g: &Graph, kind: DeletionKind, cap: usize) -> Option<DeletionSet> {
    let finder = match kind {
        DeletionKind::VertexCover => find_vertex_cover,
        DeletionKind::ClusterVertexDeletion => find_cvd,
        DeletionKind::CliqueModulator => find_clique_modulator,
    };
    (0..=cap).find_map(|k| finder(g, k))
}
