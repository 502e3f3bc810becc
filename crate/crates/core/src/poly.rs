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

//! Polynomial-time solvers for cliques, cluster graphs, bipartite graphs with
//! two colors, paths and brooms.
//!
//! Each solver re-checks the structural certificate it is handed and returns
//! [`Error::NotInClass`] when the certificate does not describe the graph.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{colors_by_budget_asc, colors_by_budget_desc, BcpInstance, Coloring, SolveResult};
use crate::recognize::{cluster_parts, BroomShape};

const UNSET: usize = usize::MAX;

/// The cliques of a cluster graph, largest first (ties by smallest vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterView {
    clusters: Vec<Vec<usize>>,
}

impl ClusterView {
    pub fn new(g: &Graph) -> Option<Self> {
        cluster_parts(g).map(Self::sorted)
    }

    /// Use externally supplied cliques; checked against the graph by the solver.
    pub fn from_parts(parts: Vec<Vec<usize>>) -> Self {
        Self::sorted(parts)
    }

    fn sorted(mut clusters: Vec<Vec<usize>>) -> Self {
        for c in &mut clusters {
            c.sort_unstable();
        }
        clusters.sort_by_key(|c| (std::cmp::Reverse(c.len()), c.first().copied()));
        ClusterView { clusters }
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.clusters.iter().map(Vec::len).collect()
    }

    fn matches(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &v in self.clusters.iter().flatten() {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        let inside: usize = self.clusters.iter().map(|c| c.len() * (c.len() - 1) / 2).sum();
        seen.iter().all(|&s| s)
            && inside == g.edge_count()
            && self.clusters.iter().all(|c| g.is_clique(c))
    }
}

/// Greedy cluster coloring: cliques largest first, each clique takes the
/// colors with the largest remaining budgets.
pub fn solve_cluster(inst: &BcpInstance, view: &ClusterView) -> Result<SolveResult> {
    if !view.matches(inst.graph()) {
        return Err(Error::NotInClass("a cluster graph matching the view"));
    }
    if inst.budget_short() {
        return Ok(SolveResult::No);
    }
    let mut left = inst.budgets().to_vec();
    let mut colors = vec![UNSET; inst.n()];
    for clique in view.clusters() {
        let order = colors_by_budget_desc(&left);
        if clique.len() > order.len() {
            return Ok(SolveResult::No);
        }
        for (&v, &a) in clique.iter().zip(&order) {
            if left[a] == 0 {
                return Ok(SolveResult::No);
            }
            colors[v] = a;
            left[a] -= 1;
        }
    }
    Ok(SolveResult::Yes(Coloring::new(colors)))
}

/// Two colors on a bipartite graph. `side[v]` must be a proper two-coloring.
///
/// Every component forces its smaller side onto both colors; the surplus
/// `y_i` of each component goes wholly to one color, which is a subset-sum
/// question over the surpluses.
pub fn solve_bipartite_c2(inst: &BcpInstance, side: &[bool]) -> Result<SolveResult> {
    let g = inst.graph();
    if inst.colors() != 2 {
        return Err(Error::Invalid(format!(
            "bipartite-c2 needs exactly 2 colors, instance has {}",
            inst.colors()
        )));
    }
    if side.len() != g.n() || g.edges().iter().any(|&(u, v)| side[u] == side[v]) {
        return Err(Error::NotInClass("bipartite under the given sides"));
    }
    if inst.budget_short() {
        return Ok(SolveResult::No);
    }

    // (large side, small side) per component
    let comps: Vec<(Vec<usize>, Vec<usize>)> = g
        .connected_components()
        .into_iter()
        .map(|comp| {
            let (a, b): (Vec<usize>, Vec<usize>) = comp.into_iter().partition(|&v| !side[v]);
            if a.len() >= b.len() {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    let x: usize = comps.iter().map(|(_, s)| s.len()).sum();
    let (b1, b2) = (inst.budgets()[0], inst.budgets()[1]);
    if b1.min(b2) < x {
        return Ok(SolveResult::No);
    }
    let (r1, r2) = (b1 - x, b2 - x);
    let surplus: Vec<usize> = comps.iter().map(|(l, s)| l.len() - s.len()).collect();
    let total: usize = surplus.iter().sum();

    // reached_by[s]: the item that first reached sum s
    let mut reached = vec![false; total + 1];
    let mut reached_by = vec![UNSET; total + 1];
    reached[0] = true;
    for (i, &y) in surplus.iter().enumerate() {
        if y == 0 {
            continue;
        }
        for s in (y..=total).rev() {
            if !reached[s] && reached[s - y] {
                reached[s] = true;
                reached_by[s] = i;
            }
        }
    }
    let lo = total.saturating_sub(r2);
    let hi = total.min(r1);
    let Some(target) = (lo..=hi).find(|&s| s <= total && reached[s]) else {
        return Ok(SolveResult::No);
    };

    let mut in_first = vec![false; comps.len()];
    let mut s = target;
    while s > 0 {
        let i = reached_by[s];
        in_first[i] = true;
        s -= surplus[i];
    }

    let mut colors = vec![UNSET; g.n()];
    for ((large, small), &first) in comps.iter().zip(&in_first) {
        let (cl, cs) = if first { (0, 1) } else { (1, 0) };
        for &v in large {
            colors[v] = cl;
        }
        for &v in small {
            colors[v] = cs;
        }
    }
    Ok(SolveResult::Yes(Coloring::new(colors)))
}

/// Color a path given in `order` with the colors `palette` whose (already
/// truncated) budgets are `caps`. Colors are laid out in blocks, largest cap
/// first, over the positions 0, 2, 4, .., 1, 3, 5, ..
fn layout_path(order: &[usize], palette: &[usize], caps: &[usize], colors: &mut [usize]) -> bool {
    let len = order.len();
    let sequence = (0..len).step_by(2).chain((1..len).step_by(2));
    let mut ranked: Vec<usize> = (0..palette.len()).collect();
    ranked.sort_by_key(|&i| (std::cmp::Reverse(caps[i]), palette[i]));
    let mut blocks = ranked
        .into_iter()
        .flat_map(|i| std::iter::repeat_n(palette[i], caps[i]));
    for pos in sequence {
        match blocks.next() {
            Some(a) => colors[order[pos]] = a,
            None => return false,
        }
    }
    true
}

fn path_feasible(len: usize, caps: &[usize]) -> bool {
    match len {
        0 => true,
        1 => caps.iter().any(|&b| b >= 1),
        _ => {
            let half = len.div_ceil(2);
            caps.iter().map(|&b| b.min(half)).sum::<usize>() >= len
        }
    }
}

fn is_path_order(g: &Graph, order: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    for &v in order {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    order.len() == g.n()
        && g.edge_count() == g.n().saturating_sub(1)
        && order.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Paths: truncate every budget to `ceil(n/2)`; feasible iff the truncated
/// budgets cover `n` (with the one-vertex case needing a single usable color).
pub fn solve_path(inst: &BcpInstance, order: &[usize]) -> Result<SolveResult> {
    let g = inst.graph();
    if !is_path_order(g, order) {
        return Err(Error::NotInClass("a path in the given order"));
    }
    if inst.budget_short() {
        return Ok(SolveResult::No);
    }
    let n = g.n();
    let half = n.div_ceil(2);
    let caps: Vec<usize> = inst.budgets().iter().map(|&b| b.min(half)).collect();
    if !path_feasible(n, &caps) {
        return Ok(SolveResult::No);
    }
    let palette: Vec<usize> = (0..inst.colors()).collect();
    let mut colors = vec![UNSET; n];
    let placed = layout_path(order, &palette, &caps, &mut colors);
    debug_assert!(placed);
    Ok(SolveResult::Yes(Coloring::new(colors)))
}

/// Brooms. The handle's first vertex takes the least-budget usable color `m`,
/// which then goes to as many further odd handle positions as its budget
/// allows. What is left is a shorter path (the rest of the handle) and
/// vertices adjacent only to `m`-colored ones, to be covered by the other
/// colors.
pub fn solve_broom(inst: &BcpInstance, shape: &BroomShape) -> Result<SolveResult> {
    let g = inst.graph();
    if !shape.certifies(g) {
        return Err(Error::NotInClass("a broom with the given shape"));
    }
    if shape.leaves.is_empty() {
        return solve_path(inst, &shape.handle);
    }
    if inst.budget_short() {
        return Ok(SolveResult::No);
    }
    let budgets = inst.budgets();
    let handle = &shape.handle;
    let q = handle.len();
    let Some(&m) = colors_by_budget_asc(budgets).iter().find(|&&a| budgets[a] >= 1) else {
        return Ok(SolveResult::No);
    };

    let mut colors = vec![UNSET; g.n()];
    let t = budgets[m].min(q.div_ceil(2));
    for i in 0..t {
        colors[handle[2 * i]] = m;
    }
    let tail = &handle[(2 * t - 1).min(q)..];
    let mut loose: Vec<usize> = (0..t - 1).map(|i| handle[2 * i + 1]).collect();
    loose.extend(&shape.leaves);

    let palette: Vec<usize> = (0..inst.colors()).filter(|&a| a != m).collect();
    let mut left: Vec<usize> = palette.iter().map(|&a| budgets[a]).collect();
    let half = tail.len().div_ceil(2);
    let caps: Vec<usize> = left.iter().map(|&b| b.min(half)).collect();
    if !path_feasible(tail.len(), &caps)
        || left.iter().sum::<usize>() < tail.len() + loose.len()
    {
        return Ok(SolveResult::No);
    }
    if !tail.is_empty() {
        let placed = layout_path(tail, &palette, &caps, &mut colors);
        debug_assert!(placed);
        for &v in tail {
            let i = palette.iter().position(|&a| a == colors[v]).unwrap();
            left[i] -= 1;
        }
    }
    let mut slot = 0;
    for &v in &loose {
        while left[slot] == 0 {
            slot += 1;
        }
        colors[v] = palette[slot];
        left[slot] -= 1;
    }
    Ok(SolveResult::Yes(Coloring::new(colors)))
}

/// Complete graphs: one distinct usable color per vertex.
pub fn solve_clique(inst: &BcpInstance) -> Result<SolveResult> {
    let g = inst.graph();
    if !g.is_complete() {
        return Err(Error::NotInClass("complete"));
    }
    let usable: Vec<usize> = (0..inst.colors()).filter(|&a| inst.budgets()[a] >= 1).collect();
    if usable.len() < g.n() {
        return Ok(SolveResult::No);
    }
    Ok(SolveResult::Yes(Coloring::new(usable[..g.n()].to_vec())))
}
