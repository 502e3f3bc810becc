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

use crate::error::{Error, Result};
use crate::flow::maxflow::{max_flow, Network};
use crate::graph::Graph;
use crate::instance::{Coloring, SolveResult};

/// A graph split into a deletion set `S` and the clusters of `G - S`.
#[derive(Debug, Clone)]
pub struct Decomposition<'a> {
    graph: &'a Graph,
    deletion: Vec<usize>,
    clusters: Vec<Vec<usize>>,
    in_deletion: Vec<bool>,
}

impl<'a> Decomposition<'a> {
    /// Fails unless `G - deletion` is a disjoint union of cliques.
    pub fn new(graph: &'a Graph, deletion: &[usize]) -> Result<Self> {
        let mut in_deletion = vec![false; graph.n()];
        for &v in deletion {
            if v >= graph.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: graph.n(),
                });
            }
            if in_deletion[v] {
                return Err(Error::Invalid(format!("vertex {v} repeated in deletion set")));
            }
            in_deletion[v] = true;
        }
        let (rest, map) = graph.remove_vertices(deletion);
        let mut clusters = Vec::new();
        for comp in rest.connected_components() {
            if !rest.is_clique(&comp) {
                return Err(Error::NotInClass("a cluster graph after deletion"));
            }
            clusters.push(comp.into_iter().map(|v| map[v]).collect());
        }
        let mut deletion = deletion.to_vec();
        deletion.sort_unstable();
        Ok(Decomposition {
            graph,
            deletion,
            clusters,
            in_deletion,
        })
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    /// The deletion set, sorted.
    pub fn deletion(&self) -> &[usize] {
        &self.deletion
    }

    /// Clusters of `G - S` in original vertex ids, ordered by smallest vertex.
    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_deletion[v]
    }
}

/// An EBCP instance: budgets plus a pre-coloring of `S` given as a partition
/// of `S` into independent parts and an injective part-to-color map.
#[derive(Debug, Clone)]
pub struct EbcpInstance<'a> {
    decomposition: &'a Decomposition<'a>,
    budgets: Vec<usize>,
    parts: Vec<Vec<usize>>,
    part_colors: Vec<usize>,
}

impl<'a> EbcpInstance<'a> {
    /// Validates that `parts` partitions `S` into independent sets and that
    /// `part_colors` is injective. Budgets too small for their part are
    /// allowed here; they make the instance infeasible.
    pub fn new(
        decomposition: &'a Decomposition<'a>,
        budgets: Vec<usize>,
        parts: Vec<Vec<usize>>,
        part_colors: Vec<usize>,
    ) -> Result<Self> {
        let c = budgets.len();
        if c == 0 {
            return Err(Error::NoColors);
        }
        if parts.len() != part_colors.len() {
            return Err(Error::Invalid("one color per part required".into()));
        }
        let g = decomposition.graph();
        let mut seen = vec![false; g.n()];
        for part in &parts {
            if part.is_empty() {
                return Err(Error::Invalid("empty part".into()));
            }
            for &v in part {
                if v >= g.n() || !decomposition.contains(v) || seen[v] {
                    return Err(Error::Invalid(format!(
                        "vertex {v} is not a fresh member of the deletion set"
                    )));
                }
                seen[v] = true;
            }
            if !g.is_independent(part) {
                return Err(Error::Invalid("part is not independent".into()));
            }
        }
        if decomposition.deletion().iter().any(|&v| !seen[v]) {
            return Err(Error::Invalid("parts do not cover the deletion set".into()));
        }
        let mut used = vec![false; c];
        for &a in &part_colors {
            if a >= c || used[a] {
                return Err(Error::Invalid(format!("part color {a} invalid or repeated")));
            }
            used[a] = true;
        }
        Ok(EbcpInstance {
            decomposition,
            budgets,
            parts,
            part_colors,
        })
    }

    pub(crate) fn new_unchecked(
        decomposition: &'a Decomposition<'a>,
        budgets: Vec<usize>,
        parts: Vec<Vec<usize>>,
        part_colors: Vec<usize>,
    ) -> Self {
        debug_assert!(
            EbcpInstance::new(decomposition, budgets.clone(), parts.clone(), part_colors.clone())
                .is_ok()
        );
        EbcpInstance {
            decomposition,
            budgets,
            parts,
            part_colors,
        }
    }

    pub fn decomposition(&self) -> &'a Decomposition<'a> {
        self.decomposition
    }

    pub fn graph(&self) -> &'a Graph {
        self.decomposition.graph()
    }

    pub fn budgets(&self) -> &[usize] {
        &self.budgets
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_colors(&self) -> &[usize] {
        &self.part_colors
    }

    /// The pre-coloring of `S` as `(vertex, color)` pairs.
    pub fn precoloring(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .zip(&self.part_colors)
            .flat_map(|(p, &a)| p.iter().map(move |&v| (v, a)))
    }
}

/// The flow gadget for one EBCP instance.
///
/// Node layout: source, sink, one node per color, one node per
/// `(color, cluster)` pair, one node per vertex of `G - S`.
#[derive(Debug, Clone)]
pub struct EbcpNetwork {
    pub network: Network,
    pub source: usize,
    pub sink: usize,
    colors: usize,
    clusters: usize,
    /// `(arc index, color, vertex)` for every pair-node to vertex arc.
    assignment_arcs: Vec<(usize, usize, usize)>,
    /// Flow value that certifies a YES answer: `n - |S|`.
    pub target: u64,
}

impl EbcpNetwork {
    pub fn color_node(&self, color: usize) -> usize {
        2 + color
    }

    pub fn pair_node(&self, color: usize, cluster: usize) -> usize {
        2 + self.colors + color * self.clusters + cluster
    }

    /// Source arc capacities, indexed by color.
    pub fn source_capacities(&self) -> Vec<u64> {
        let mut caps = vec![0; self.colors];
        for arc in self.network.arcs() {
            if arc.from == self.source {
                caps[arc.to - 2] = arc.capacity;
            }
        }
        caps
    }

    pub fn assignment_arc_count(&self) -> usize {
        self.assignment_arcs.len()
    }
}

/// Build the flow network. Fails when some part does not fit in its color's
/// budget, which makes the instance infeasible.
pub fn build_network(e: &EbcpInstance<'_>) -> Result<EbcpNetwork> {
    let g = e.graph();
    let c = e.budgets.len();
    let clusters = e.decomposition.clusters();
    let m = clusters.len();

    // For each color: the part it pre-colors, if any.
    let mut owner: Vec<Option<usize>> = vec![None; c];
    let mut residual: Vec<usize> = e.budgets.clone();
    for (i, (part, &a)) in e.parts.iter().zip(&e.part_colors).enumerate() {
        if e.budgets[a] < part.len() {
            return Err(Error::Invalid(format!(
                "color {a} has budget {} but its part has {} vertices",
                e.budgets[a],
                part.len()
            )));
        }
        owner[a] = Some(i);
        residual[a] -= part.len();
    }

    let free_vertices: usize = clusters.iter().map(Vec::len).sum();
    let mut net = Network::new(2 + c + c * m + free_vertices);
    let (source, sink) = (0, 1);
    let mut out = EbcpNetwork {
        network: Network::new(0),
        source,
        sink,
        colors: c,
        clusters: m,
        assignment_arcs: Vec::new(),
        target: free_vertices as u64,
    };

    let mut vertex_node = vec![usize::MAX; g.n()];
    let mut next = 2 + c + c * m;
    for cluster in clusters {
        for &w in cluster {
            vertex_node[w] = next;
            net.add_arc(next, sink, 1);
            next += 1;
        }
    }

    for a in 0..c {
        net.add_arc(source, out.color_node(a), residual[a] as u64);
        for (j, cluster) in clusters.iter().enumerate() {
            let pair = out.pair_node(a, j);
            net.add_arc(out.color_node(a), pair, 1);
            for &w in cluster {
                let allowed = match owner[a] {
                    Some(i) => e.parts[i].iter().all(|&v| !g.has_edge(v, w)),
                    None => true,
                };
                if allowed {
                    let idx = net.add_arc(pair, vertex_node[w], 1);
                    out.assignment_arcs.push((idx, a, w));
                }
            }
        }
    }
    out.network = net;
    Ok(out)
}

/// Decide an EBCP instance by max-flow: feasible iff the maximum flow
/// saturates every vertex of `G - S`. On YES the coloring follows the flow.
pub fn solve_ebcp(e: &EbcpInstance<'_>) -> SolveResult {
    let net = match build_network(e) {
        Ok(net) => net,
        Err(_) => return SolveResult::No,
    };
    let flow = max_flow(&net.network, net.source, net.sink);
    debug_assert!(flow.is_feasible(&net.network, net.source, net.sink));
    if flow.value != net.target {
        return SolveResult::No;
    }
    let mut colors = vec![usize::MAX; e.graph().n()];
    for (v, a) in e.precoloring() {
        colors[v] = a;
    }
    for &(idx, a, w) in &net.assignment_arcs {
        if flow.arc_flow[idx] == 1 {
            colors[w] = a;
        }
    }
    debug_assert!(colors.iter().all(|&a| a != usize::MAX));
    SolveResult::Yes(Coloring::new(colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{verify_bcp, BcpInstance};
    use crate::oracle::oracle_ebcp;

    #[test]
    fn k2_without_deletion() {
        let g = Graph::complete(2);
        let d = Decomposition::new(&g, &[]).unwrap();
        let e = EbcpInstance::new(&d, vec![1, 1], vec![], vec![]).unwrap();
        let net = build_network(&e).unwrap();
        // source + sink + 2 colors + 2 pair nodes + 2 vertices
        assert_eq!(net.network.nodes(), 8);
        let flow = max_flow(&net.network, net.source, net.sink);
        assert_eq!(flow.value, 2);
        assert!(solve_ebcp(&e).is_yes());
    }

    /// x = 2 adjacent (or not) to both isolated vertices 0 and 1.
    fn pendant_case(adjacent: bool) -> Graph {
        let edges: Vec<(usize, usize)> = if adjacent {
            vec![(0, 2), (1, 2)]
        } else {
            vec![]
        };
        Graph::new(3, edges).unwrap()
    }

    #[test]
    fn deletion_vertex_blocks_its_color() {
        let g = pendant_case(true);
        let d = Decomposition::new(&g, &[2]).unwrap();
        let e = EbcpInstance::new(&d, vec![3, 1], vec![vec![2]], vec![0]).unwrap();
        let net = build_network(&e).unwrap();
        assert_eq!(net.source_capacities(), vec![2, 1]);
        // Only the free color reaches the two cluster vertices.
        assert_eq!(net.assignment_arc_count(), 2);
        let flow = max_flow(&net.network, net.source, net.sink);
        assert_eq!(flow.value, 1);
        assert_eq!(solve_ebcp(&e), SolveResult::No);
        assert_eq!(oracle_ebcp(&e).unwrap(), SolveResult::No);
    }

    #[test]
    fn deletion_vertex_nonadjacent() {
        let g = pendant_case(false);
        let d = Decomposition::new(&g, &[2]).unwrap();
        let e = EbcpInstance::new(&d, vec![3, 1], vec![vec![2]], vec![0]).unwrap();
        let res = solve_ebcp(&e);
        let inst = BcpInstance::new(g.clone(), vec![3, 1]).unwrap();
        assert_eq!(verify_bcp(&inst, res.coloring().unwrap()), Ok(()));
        assert_eq!(res.coloring().unwrap().color(2), 0);
        assert!(oracle_ebcp(&e).unwrap().is_yes());
    }

    #[test]
    fn k3_bijective() {
        let g = Graph::complete(3);
        let d = Decomposition::new(&g, &[]).unwrap();
        let e = EbcpInstance::new(&d, vec![1, 1, 1], vec![], vec![]).unwrap();
        let col = solve_ebcp(&e).coloring().unwrap().clone();
        let mut seen = col.clone().into_vec();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2]);
    }

    #[test]
    fn part_over_budget_is_rejected() {
        let g = Graph::empty(3);
        let d = Decomposition::new(&g, &[0, 1]).unwrap();
        let e = EbcpInstance::new(&d, vec![1, 5], vec![vec![0, 1]], vec![0]).unwrap();
        assert!(build_network(&e).is_err());
        assert_eq!(solve_ebcp(&e), SolveResult::No);
    }

    #[test]
    fn invalid_instances() {
        let g = Graph::path(3);
        assert!(Decomposition::new(&g, &[]).is_err());
        let d = Decomposition::new(&g, &[1]).unwrap();
        assert_eq!(d.clusters(), &[vec![0], vec![2]]);
        // part not covering S
        assert!(EbcpInstance::new(&d, vec![1, 1], vec![], vec![]).is_err());
        // repeated color
        let d2 = Decomposition::new(&g, &[0, 1]).unwrap();
        assert!(EbcpInstance::new(&d2, vec![2, 2], vec![vec![0], vec![1]], vec![1, 1]).is_err());
        // dependent part
        assert!(EbcpInstance::new(&d2, vec![2, 2], vec![vec![0, 1]], vec![0]).is_err());
    }
}
