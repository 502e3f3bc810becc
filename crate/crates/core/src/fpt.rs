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

//! Parameterized solvers over a deletion set `S`.
//!
//! Each solver guesses how `S` is colored and hands every guess to the
//! flow-based extension solver. Guesses are produced in a fixed order and
//! evaluated in batches on the rayon pool; the first feasible guess in
//! enumeration order wins, so results do not depend on the thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flow::{solve_ebcp, Decomposition, EbcpInstance};
use crate::graph::Graph;
use crate::instance::{colors_by_budget_asc, BcpInstance, Coloring, SolveResult};

/// Depth-first enumeration of fixed-length sequences over `0..width`,
/// pruned by a prefix predicate. Yields sequences in lexicographic order.
struct Backtrack<F> {
    len: usize,
    width: usize,
    prefix: Vec<usize>,
    accept: F,
    started: bool,
    exhausted: bool,
}

impl<F: FnMut(&[usize], usize) -> bool> Backtrack<F> {
    fn new(len: usize, width: usize, accept: F) -> Self {
        Backtrack {
            len,
            width,
            prefix: Vec::with_capacity(len),
            accept,
            started: false,
            exhausted: false,
        }
    }
}

impl<F: FnMut(&[usize], usize) -> bool> Iterator for Backtrack<F> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.exhausted {
            return None;
        }
        let mut start = if self.started {
            match self.prefix.pop() {
                Some(v) => v + 1,
                None => {
                    self.exhausted = true;
                    return None;
                }
            }
        } else {
            self.started = true;
            0
        };
        if self.len == 0 {
            return Some(Vec::new());
        }
        loop {
            let found = (start..self.width).find(|&v| (self.accept)(&self.prefix, v));
            match found {
                Some(v) => {
                    self.prefix.push(v);
                    if self.prefix.len() == self.len {
                        return Some(self.prefix.clone());
                    }
                    start = 0;
                }
                None => match self.prefix.pop() {
                    Some(v) => start = v + 1,
                    None => {
                        self.exhausted = true;
                        return None;
                    }
                },
            }
        }
    }
}

/// A partition of the deletion set into independent parts, ordered by
/// non-increasing size with ties by smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPartition {
    parts: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(mut parts: Vec<Vec<usize>>) -> Self {
        parts.retain(|p| !p.is_empty());
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort_by_key(|p| (std::cmp::Reverse(p.len()), p[0]));
        SetPartition { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn into_parts(self) -> Vec<Vec<usize>> {
        self.parts
    }
}

/// Every partition of `s` into independent sets of `g`, once each, in
/// restricted-growth order over `s` sorted ascending.
pub fn enumerate_independent_partitions<'a>(
    g: &'a Graph,
    s: &[usize],
) -> impl Iterator<Item = SetPartition> + 'a {
    let mut members = s.to_vec();
    members.sort_unstable();
    let len = members.len();
    let verts = members.clone();
    Backtrack::new(len, len, move |prefix: &[usize], part: usize| {
        let fresh = prefix.iter().max().map_or(0, |&m| m + 1);
        let v = verts[prefix.len()];
        part <= fresh
            && !prefix
                .iter()
                .zip(&verts)
                .any(|(&p, &w)| p == part && g.has_edge(v, w))
    })
    .map(move |rgs| {
        let count = rgs.iter().max().map_or(0, |&m| m + 1);
        let mut parts = vec![Vec::new(); count];
        for (&p, &v) in rgs.iter().zip(&members) {
            parts[p].push(v);
        }
        SetPartition::new(parts)
    })
}

/// How many vertices of `G - S` each part's color takes, one entry per part,
/// each in `0..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandVector {
    pub d_values: Vec<usize>,
}

impl DemandVector {
    /// All vectors in `{0..=d}^len`, lexicographically.
    pub fn all(len: usize, d: usize) -> impl Iterator<Item = DemandVector> {
        Backtrack::new(len, d + 1, |_: &[usize], _| true).map(|d_values| DemandVector { d_values })
    }
}

/// Colors for the parts of `S` together with the budgets capped to what each
/// part's color is planned to cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPlan {
    pub gamma: Vec<usize>,
    pub modified_budgets: Vec<usize>,
}

impl ColorPlan {
    /// Part `i` takes the least-budget unused color with budget at least
    /// `|P_i| + d_i` (ties by lower index). `None` when some part has none.
    pub fn build(budgets: &[usize], partition: &SetPartition, demand: &DemandVector) -> Option<Self> {
        let by_budget = colors_by_budget_asc(budgets);
        let mut taken = vec![false; budgets.len()];
        let mut modified = budgets.to_vec();
        let mut gamma = Vec::with_capacity(partition.len());
        for (part, &d) in partition.parts().iter().zip(&demand.d_values) {
            let need = part.len() + d;
            let a = *by_budget.iter().find(|&&a| !taken[a] && budgets[a] >= need)?;
            debug_assert!(!taken[a]);
            taken[a] = true;
            modified[a] = need;
            gamma.push(a);
        }
        Some(ColorPlan {
            gamma,
            modified_budgets: modified,
        })
    }
}

/// Candidate colors per part: `F_i` are the colors whose budget fits the
/// part, `L_i` the (up to) `l` least-budget ones among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleColorLists {
    pub feasible: Vec<Vec<usize>>,
    pub lists: Vec<Vec<usize>>,
}

impl FeasibleColorLists {
    pub fn new(budgets: &[usize], partition: &SetPartition) -> Self {
        let by_budget = colors_by_budget_asc(budgets);
        let l = partition.len();
        let feasible: Vec<Vec<usize>> = partition
            .parts()
            .iter()
            .map(|p| by_budget.iter().copied().filter(|&a| budgets[a] >= p.len()).collect())
            .collect();
        let lists = feasible.iter().map(|f| f[..f.len().min(l)].to_vec()).collect();
        FeasibleColorLists { feasible, lists }
    }

    pub fn any_empty(&self) -> bool {
        self.feasible.iter().any(Vec::is_empty)
    }
}

/// Knobs for the parameterized solvers.
#[derive(Debug, Clone, Copy)]
pub struct FptOptions {
    /// Skip colorings of `S` that differ only by swapping equal-budget colors.
    pub symmetry_breaking: bool,
    /// Number of extension instances evaluated per parallel batch.
    pub batch_size: usize,
}

impl Default for FptOptions {
    fn default() -> Self {
        FptOptions {
            symmetry_breaking: true,
            batch_size: 256,
        }
    }
}

/// Run `eval` over `items` in batches; the first success in item order wins.
fn first_success<T, I, F>(items: I, batch_size: usize, eval: F) -> Option<Coloring>
where
    T: Send,
    I: Iterator<Item = T>,
    F: Fn(T) -> Option<Coloring> + Sync,
{
    let mut items = items.peekable();
    let batch_size = batch_size.max(1);
    while items.peek().is_some() {
        let batch: Vec<T> = items.by_ref().take(batch_size).collect();
        if let Some(col) = batch.into_par_iter().find_map_first(&eval) {
            return Some(col);
        }
    }
    None
}

fn extend(d: &Decomposition<'_>, budgets: Vec<usize>, parts: Vec<Vec<usize>>, colors: Vec<usize>) -> Option<Coloring> {
    match solve_ebcp(&EbcpInstance::new_unchecked(d, budgets, parts, colors)) {
        SolveResult::Yes(col) => Some(col),
        SolveResult::No => None,
    }
}

fn finish(found: Option<Coloring>) -> Result<SolveResult> {
    Ok(found.map_or(SolveResult::No, SolveResult::Yes))
}

/// Enumerates the colorings of `S`, then extends each by flow.
pub fn solve_cvd_colors(inst: &BcpInstance, s: &[usize]) -> Result<SolveResult> {
    solve_cvd_colors_with(inst, s, FptOptions::default())
}

pub fn solve_cvd_colors_with(inst: &BcpInstance, s: &[usize], opts: FptOptions) -> Result<SolveResult> {
    let g = inst.graph();
    let dec = Decomposition::new(g, s)?;
    if inst.budget_short() {
        return Ok(SolveResult::No);
    }
    let budgets = inst.budgets();
    let c = budgets.len();
    let members = dec.deletion().to_vec();
    let colorings = Backtrack::new(members.len(), c, {
        let members = members.clone();
        move |prefix: &[usize], a: usize| {
            let v = members[prefix.len()];
            let used = prefix.iter().filter(|&&x| x == a).count();
            if used >= budgets[a]
                || prefix.iter().zip(&members).any(|(&x, &w)| x == a && g.has_edge(v, w))
            {
                return false;
            }
            // among equal-budget colors, only the lowest unused one opens a class
            !opts.symmetry_breaking
                || used > 0
                || !(0..a).any(|e| budgets[e] == budgets[a] && !prefix.contains(&e))
        }
    });
    let found = first_success(colorings, opts.batch_size, |alpha| {
        let mut colors: Vec<usize> = alpha.clone();
        colors.sort_unstable();
        colors.dedup();
        let parts = colors
            .iter()
            .map(|&a| {
                members
                    .iter()
                    .zip(&alpha)
                    .filter(|&(_, &x)| x == a)
                    .map(|(&v, _)| v)
                    .collect()
            })
            .collect();
        extend(&dec, budgets.to_vec(), parts, colors)
    });
    finish(found)
}

/// Enumerates independent partitions of `S` and demand vectors; each pair
/// fixes the colors of `S` greedily and is extended by flow.
pub fn solve_cvd_clusters(inst: &BcpInstance, s: &[usize]) -> Result<SolveResult> {
    solve_cvd_clusters_with(inst, s, FptOptions::default())
}

pub fn solve_cvd_clusters_with(inst: &BcpInstance, s: &[usize], opts: FptOptions) -> Result<SolveResult> {
    let g = inst.graph();
    let dec = Decomposition::new(g, s)?;
    cvd_clusters(inst, &dec, opts)
}

fn cvd_clusters(inst: &BcpInstance, dec: &Decomposition<'_>, opts: FptOptions) -> Result<SolveResult> {
    if inst.budget_short() {
        return Ok(SolveResult::No);
    }
    let budgets = inst.budgets();
    let d = dec.clusters().len();
    let plans = enumerate_independent_partitions(inst.graph(), dec.deletion()).flat_map(|p| {
        DemandVector::all(p.len(), d).filter_map(move |dv| {
            ColorPlan::build(budgets, &p, &dv).map(|plan| (p.parts().to_vec(), plan))
        })
    });
    let found = first_success(plans, opts.batch_size, |(parts, plan)| {
        extend(dec, plan.modified_budgets, parts, plan.gamma)
    });
    finish(found)
}

/// `G - A` must be a clique; the cluster solver with a single cluster.
pub fn solve_distance_to_clique(inst: &BcpInstance, a: &[usize]) -> Result<SolveResult> {
    let dec = Decomposition::new(inst.graph(), a)?;
    if dec.clusters().len() > 1 {
        return Err(Error::NotInClass("a clique after deleting the modulator"));
    }
    cvd_clusters(inst, &dec, FptOptions::default())
}

/// `S` must be a vertex cover. Parts only try the least-budget colors that
/// fit them.
pub fn solve_vertex_cover(inst: &BcpInstance, s: &[usize]) -> Result<SolveResult> {
    solve_vertex_cover_with(inst, s, FptOptions::default())
}

pub fn solve_vertex_cover_with(inst: &BcpInstance, s: &[usize], opts: FptOptions) -> Result<SolveResult> {
    let g = inst.graph();
    let dec = Decomposition::new(g, s)?;
    if dec.clusters().iter().any(|c| c.len() > 1) {
        return Err(Error::NotInClass("an independent set after deleting the cover"));
    }
    if inst.budget_short() {
        return Ok(SolveResult::No);
    }
    let budgets = inst.budgets();
    let plans = enumerate_independent_partitions(g, dec.deletion()).flat_map(|p| {
        let lists = FeasibleColorLists::new(budgets, &p).lists;
        let width = if lists.iter().any(Vec::is_empty) {
            0
        } else {
            lists.iter().map(Vec::len).max().unwrap_or(0)
        };
        let parts = p.into_parts();
        let picks = lists.clone();
        Backtrack::new(parts.len(), width, move |prefix: &[usize], j: usize| {
            let list = &picks[prefix.len()];
            j < list.len() && !prefix.iter().enumerate().any(|(i, &x)| picks[i][x] == list[j])
        })
        .map(move |pick| {
            let colors: Vec<usize> = pick.iter().enumerate().map(|(i, &j)| lists[i][j]).collect();
            (parts.clone(), colors)
        })
    });
    let found = first_success(plans, opts.batch_size, |(parts, colors)| {
        extend(&dec, budgets.to_vec(), parts, colors)
    });
    finish(found)
}
