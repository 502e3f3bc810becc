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

//! Brute-force ground truth. Nothing here shares code with the solvers it is
//! used to check.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::flow::EbcpInstance;
use crate::graph::Graph;
use crate::instance::{verify_ecp, BcpInstance, Coloring, SolveResult};

/// Search-size guards for the backtracking oracle.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub max_vertices: usize,
    /// Abort after this many search nodes.
    pub max_nodes: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 64,
            max_nodes: 100_000_000,
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    colors: Vec<usize>,
    left: Vec<usize>,
    nodes: u64,
    limit: u64,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    /// Depth-first over `order[depth..]`; colors tried in index order.
    fn run(&mut self, depth: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::TooLarge {
                what: "oracle search nodes",
                limit: self.limit as usize,
                actual: self.nodes as usize,
            });
        }
        if depth == self.order.len() {
            return Ok(true);
        }
        let remaining = self.order.len() - depth;
        if self.left.iter().sum::<usize>() < remaining {
            return Ok(false);
        }
        let v = self.order[depth];
        for a in 0..self.left.len() {
            if self.left[a] == 0 || self.g.neighbors(v).iter().any(|&w| self.colors[w] == a) {
                continue;
            }
            self.colors[v] = a;
            self.left[a] -= 1;
            if self.run(depth + 1)? {
                return Ok(true);
            }
            self.left[a] += 1;
            self.colors[v] = UNSET;
        }
        Ok(false)
    }
}

/// Backtracking over extensions of `fixed`. Vertices are visited by
/// decreasing degree (ties by id), colors by index.
fn extend(
    g: &Graph,
    budgets: &[usize],
    fixed: &[Option<usize>],
    limits: OracleLimits,
) -> Result<SolveResult> {
    if g.n() > limits.max_vertices {
        return Err(Error::TooLarge {
            what: "oracle vertex count",
            limit: limits.max_vertices,
            actual: g.n(),
        });
    }
    let mut colors = vec![UNSET; g.n()];
    let mut left = budgets.to_vec();
    for (v, a) in fixed.iter().enumerate() {
        if let Some(a) = *a {
            if a >= budgets.len() || left[a] == 0 {
                return Ok(SolveResult::No);
            }
            if g.neighbors(v).iter().any(|&w| colors[w] == a) {
                return Ok(SolveResult::No);
            }
            colors[v] = a;
            left[a] -= 1;
        }
    }
    let mut order: Vec<usize> = g.vertices().filter(|&v| fixed[v].is_none()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut search = Search {
        g,
        order,
        colors,
        left,
        nodes: 0,
        limit: limits.max_nodes,
    };
    if search.run(0)? {
        Ok(SolveResult::Yes(Coloring::new(search.colors)))
    } else {
        Ok(SolveResult::No)
    }
}

/// Exhaustive BCP decision. The witness is the first one found in the
/// search order (decreasing degree, colors by index), i.e. the
/// lexicographically least in that order.
pub fn oracle_bcp(inst: &BcpInstance) -> Result<SolveResult> {
    oracle_bcp_with(inst, OracleLimits::default())
}

pub fn oracle_bcp_with(inst: &BcpInstance, limits: OracleLimits) -> Result<SolveResult> {
    extend(inst.graph(), inst.budgets(), &vec![None; inst.n()], limits)
}

/// Exhaustive EBCP decision: does the pre-coloring of `S` extend to a proper
/// budgeted coloring of the whole graph?
pub fn oracle_ebcp(e: &EbcpInstance<'_>) -> Result<SolveResult> {
    let mut fixed = vec![None; e.graph().n()];
    for (v, a) in e.precoloring() {
        fixed[v] = Some(a);
    }
    extend(e.graph(), e.budgets(), &fixed, OracleLimits::default())
}

/// Exhaustive equitable-coloring decision.
pub fn oracle_ecp(g: &Graph, c: usize) -> Result<SolveResult> {
    if c == 0 {
        return Err(Error::NoColors);
    }
    let n = g.n();
    let hi = n.div_ceil(c);
    let mut colors = vec![UNSET; n];
    let mut sizes = vec![0; c];
    let mut nodes = 0u64;
    fn go(
        g: &Graph,
        v: usize,
        hi: usize,
        colors: &mut Vec<usize>,
        sizes: &mut Vec<usize>,
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        if v == g.n() {
            return verify_ecp(g, sizes.len(), &Coloring::new(colors.clone())).is_ok();
        }
        for a in 0..sizes.len() {
            if sizes[a] == hi || g.neighbors(v).iter().any(|&w| w < v && colors[w] == a) {
                continue;
            }
            colors[v] = a;
            sizes[a] += 1;
            if go(g, v + 1, hi, colors, sizes, nodes) {
                return true;
            }
            sizes[a] -= 1;
            colors[v] = UNSET;
        }
        false
    }
    if go(g, 0, hi, &mut colors, &mut sizes, &mut nodes) {
        Ok(SolveResult::Yes(Coloring::new(colors)))
    } else {
        Ok(SolveResult::No)
    }
}

pub const ORACLE_COUNT_MAX_VERTICES: usize = 16;

/// Number of ordered tuples `(F_1, .., F_c)` of independent sets with
/// `|F_i| <= b_i` whose union is the whole vertex set.
///
/// Enumerates the independent sets explicitly and counts tuples color by
/// color over their running union.
pub fn oracle_cover_count(inst: &BcpInstance) -> Result<BigUint> {
    let g = inst.graph();
    let n = g.n();
    if n > ORACLE_COUNT_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "cover-count oracle vertex count",
            limit: ORACLE_COUNT_MAX_VERTICES,
            actual: n,
        });
    }
    let independent: Vec<u32> = (0u32..1 << n)
        .filter(|&s| {
            let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            g.is_independent(&members)
        })
        .collect();

    let full = (1usize << n) - 1;
    let mut ways = vec![BigUint::from(0u32); 1 << n];
    ways[0] = BigUint::from(1u32);
    for &b in inst.budgets() {
        let mut next = vec![BigUint::from(0u32); 1 << n];
        for (covered, count) in ways.iter().enumerate() {
            if count == &BigUint::from(0u32) {
                continue;
            }
            for &s in independent.iter().filter(|s| s.count_ones() as usize <= b) {
                next[covered | s as usize] += count;
            }
        }
        ways = next;
    }
    Ok(ways.swap_remove(full))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::Decomposition;
    use crate::instance::verify_bcp;

    fn inst(g: Graph, b: &[usize]) -> BcpInstance {
        BcpInstance::new(g, b.to_vec()).unwrap()
    }

    #[test]
    fn bcp_examples() {
        assert_eq!(
            oracle_bcp(&inst(Graph::complete(2), &[1, 1])).unwrap(),
            SolveResult::Yes(Coloring::new(vec![0, 1]))
        );
        for b in [[1, 1], [3, 3], [0, 9]] {
            assert_eq!(
                oracle_bcp(&inst(Graph::complete(3), &b)).unwrap(),
                SolveResult::No
            );
        }
        let p4 = inst(Graph::path(4), &[2, 2]);
        let res = oracle_bcp(&p4).unwrap();
        assert_eq!(verify_bcp(&p4, res.coloring().unwrap()), Ok(()));
    }

    #[test]
    fn node_limit_is_enforced() {
        let tiny = OracleLimits {
            max_vertices: 64,
            max_nodes: 10,
        };
        // Any witness needs at least n + 1 search nodes.
        let wide = inst(Graph::cycle(15), &[4, 4, 4, 4]);
        assert!(matches!(oracle_bcp_with(&wide, tiny), Err(Error::TooLarge { .. })));
        let narrow = OracleLimits {
            max_vertices: 8,
            max_nodes: u64::MAX,
        };
        assert!(matches!(oracle_bcp_with(&wide, narrow), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn ebcp_full_deletion_set() {
        // S = V: YES iff the pre-coloring itself is valid.
        let g = Graph::path(3);
        let d = Decomposition::new(&g, &[0, 1, 2]).unwrap();
        let ok = EbcpInstance::new(&d, vec![2, 1], vec![vec![0, 2], vec![1]], vec![0, 1]).unwrap();
        assert!(oracle_ebcp(&ok).unwrap().is_yes());
        let over = EbcpInstance::new(&d, vec![1, 1], vec![vec![0, 2], vec![1]], vec![0, 1]).unwrap();
        assert_eq!(oracle_ebcp(&over).unwrap(), SolveResult::No);
    }

    #[test]
    fn ecp_examples() {
        assert!(oracle_ecp(&Graph::path(3), 2).unwrap().is_yes());
        assert!(oracle_ecp(&Graph::complete(3), 3).unwrap().is_yes());
        // K_{1,3}: the center's class is a singleton, the leaves need 1 or 2 per class.
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(oracle_ecp(&star, 2).unwrap(), SolveResult::No);
    }

    #[test]
    fn cover_count_examples() {
        assert_eq!(oracle_cover_count(&inst(Graph::empty(1), &[1])).unwrap(), 1u32.into());
        assert_eq!(
            oracle_cover_count(&inst(Graph::complete(2), &[1, 1])).unwrap(),
            2u32.into()
        );
        assert_eq!(
            oracle_cover_count(&inst(Graph::complete(2), &[2])).unwrap(),
            0u32.into()
        );
        assert_eq!(
            oracle_cover_count(&inst(Graph::path(3), &[0, 0])).unwrap(),
            0u32.into()
        );
        // Edgeless pair, one color of budget 2: only {0, 1}.
        assert_eq!(oracle_cover_count(&inst(Graph::empty(2), &[2])).unwrap(), 1u32.into());
        // Edgeless pair, two colors of budget 2: tuples (A, B) with A ∪ B = {0,1}: 3^2.
        assert_eq!(
            oracle_cover_count(&inst(Graph::empty(2), &[2, 2])).unwrap(),
            9u32.into()
        );
    }
}
