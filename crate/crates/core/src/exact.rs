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

//! Exact exponential solvers.
//!
//! [`count_budgeted_covers`] counts ordered tuples `(F_1, .., F_c)` of
//! independent sets with `|F_i| <= b_i` covering `V` by inclusion-exclusion:
//!
//! ```text
//! sum over W ⊆ V of (-1)^|W| * prod_i f(W, b_i)
//! ```
//!
//! where `f(W, b)` is the number of independent sets of size at most `b`
//! that avoid `W`. The instance is a YES instance iff the count is positive.
//! [`solve_table_dp`] is the slower subset-by-color-set table.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{BcpInstance, Coloring, SolveResult};

pub const EXACT_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, Copy)]
pub struct ExactConfig {
    pub max_vertices: usize,
    /// Spread table layers and the signed sum over the rayon pool.
    pub parallel: bool,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            max_vertices: EXACT_MAX_VERTICES,
            parallel: true,
        }
    }
}

fn check_size(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n > cap.min(EXACT_MAX_VERTICES) {
        return Err(Error::TooLarge {
            what,
            limit: cap.min(EXACT_MAX_VERTICES),
            actual: n,
        });
    }
    Ok(())
}

/// `independent[s]` for every vertex subset `s`.
fn independent_masks(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbor_mask(v) as u32).collect();
    let mut ind = vec![false; 1 << n];
    ind[0] = true;
    for s in 1usize..1 << n {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        ind[s] = ind[rest] && nbr[v] & rest as u32 == 0;
    }
    ind
}

/// The tables `f_b` for a set of budget values, indexed by subset bitmask.
#[derive(Debug, Clone)]
pub struct CoverCountTables {
    n: usize,
    independent: Vec<bool>,
    tables: BTreeMap<usize, Vec<u32>>,
    parallel: bool,
}

impl CoverCountTables {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Budgets above `n` behave like `n`.
    fn key(&self, b: usize) -> usize {
        b.min(self.n)
    }

    /// `f_b`, or `None` if `b` was not built.
    pub fn table(&self, b: usize) -> Option<&[u32]> {
        self.tables.get(&self.key(b)).map(Vec::as_slice)
    }

    /// Budget values with a built table (clamped to `n`).
    pub fn budgets(&self) -> impl Iterator<Item = usize> + '_ {
        self.tables.keys().copied()
    }

    fn ensure(&mut self, b: usize) {
        let b = self.key(b);
        if !self.tables.contains_key(&b) {
            let t = superset_sums(self.n, &self.independent, b, self.parallel);
            self.tables.insert(b, t);
        }
    }

    /// The three structural facts every `f_b` satisfies: `f_b[V] = 1`,
    /// `f_b[∅]` counts the independent sets of size at most `b`, and `f_b`
    /// shrinks as `W` grows.
    pub fn check_invariants(&self) -> bool {
        let full = (1usize << self.n) - 1;
        self.tables.iter().all(|(&b, t)| {
            let small = (0..=full)
                .filter(|&s| self.independent[s] && (s.count_ones() as usize) <= b)
                .count();
            t[full] == 1
                && t[0] as usize == small
                && (0..=full).all(|w| (0..self.n).all(|j| w >> j & 1 == 1 || t[w] >= t[w | 1 << j]))
        })
    }
}

/// Base layer `g(W, b, 0) = [V \ W independent and |V \ W| <= b]`, then one
/// pass per vertex `j`: `g(W, b, j) = g(W, b, j-1) + g(W + j, b, j-1)` for
/// `j` not in `W`.
fn superset_sums(n: usize, independent: &[bool], b: usize, parallel: bool) -> Vec<u32> {
    let full = (1usize << n) - 1;
    let mut t: Vec<u32> = (0..=full)
        .map(|w| {
            let rest = full & !w;
            u32::from(independent[rest] && rest.count_ones() as usize <= b)
        })
        .collect();
    for j in 0..n {
        let half = 1usize << j;
        let layer = |block: &mut [u32]| {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a += *b;
            }
        };
        if parallel && n > 12 {
            t.par_chunks_mut(half * 2).for_each(layer);
        } else {
            t.chunks_mut(half * 2).for_each(layer);
        }
    }
    t
}

/// Builds `f_b` for every distinct value in `budgets`.
pub fn build_tables(g: &Graph, budgets: &[usize]) -> Result<CoverCountTables> {
    build_tables_with(g, budgets, ExactConfig::default())
}

pub fn build_tables_with(g: &Graph, budgets: &[usize], cfg: ExactConfig) -> Result<CoverCountTables> {
    check_size(g.n(), cfg.max_vertices, "exact solver vertex count")?;
    let mut tables = CoverCountTables {
        n: g.n(),
        independent: independent_masks(g),
        tables: BTreeMap::new(),
        parallel: cfg.parallel,
    };
    for &b in budgets {
        tables.ensure(b);
    }
    debug_assert!(g.n() > 12 || tables.check_invariants());
    Ok(tables)
}

/// Exact signed sum, kept as separate positive and negative parts.
#[derive(Default)]
struct Signed {
    pos: u128,
    neg: u128,
    big_pos: BigUint,
    big_neg: BigUint,
}

impl Signed {
    fn add(&mut self, negative: bool, value: u128) {
        let (acc, big) = if negative {
            (&mut self.neg, &mut self.big_neg)
        } else {
            (&mut self.pos, &mut self.big_pos)
        };
        match acc.checked_add(value) {
            Some(s) => *acc = s,
            None => {
                *big += *acc;
                *acc = value;
            }
        }
    }

    fn add_big(&mut self, negative: bool, value: BigUint) {
        if negative {
            self.big_neg += value;
        } else {
            self.big_pos += value;
        }
    }

    fn merge(mut self, other: Signed) -> Signed {
        self.big_pos += other.big_pos;
        self.big_neg += other.big_neg;
        self.add(false, other.pos);
        self.add(true, other.neg);
        self
    }

    fn total(self) -> BigUint {
        let pos = self.big_pos + self.pos;
        let neg = self.big_neg + self.neg;
        assert!(pos >= neg, "inclusion-exclusion sum went negative");
        pos - neg
    }
}

/// One factor of the product: table `f_b` looked up at `W | extra`.
struct Factor<'t> {
    table: &'t [u32],
    extra: usize,
}

fn accumulate(acc: &mut Signed, w: usize, factors: &[Factor<'_>]) {
    let mut prod: u128 = 1;
    for (i, f) in factors.iter().enumerate() {
        let x = f.table[w | f.extra];
        if x == 0 {
            return;
        }
        match prod.checked_mul(x as u128) {
            Some(p) => prod = p,
            None => {
                let mut big = BigUint::from(prod);
                for f in &factors[i..] {
                    big *= f.table[w | f.extra];
                }
                acc.add_big(w.count_ones() % 2 == 1, big);
                return;
            }
        }
    }
    acc.add(w.count_ones() % 2 == 1, prod);
}

/// Sum over `W ⊆ free` of `(-1)^|W| prod_i table_i[W | extra_i]`.
fn signed_sum(free: usize, factors: &[Factor<'_>], parallel: bool) -> BigUint {
    let bits = free.count_ones();
    // `t`-th submask of `free` in increasing order
    let deposit = |mut t: usize| {
        let mut w = 0;
        let mut rest = free;
        while t != 0 {
            let low = rest & rest.wrapping_neg();
            if t & 1 == 1 {
                w |= low;
            }
            rest &= rest - 1;
            t >>= 1;
        }
        w
    };
    let run = |start: usize, len: usize| {
        let mut acc = Signed::default();
        let mut w = deposit(start);
        for _ in 0..len {
            accumulate(&mut acc, w, factors);
            w = ((w | !free).wrapping_add(1)) & free;
        }
        acc
    };
    let total = 1usize << bits;
    const CHUNK: usize = 1 << 14;
    if parallel && total > CHUNK {
        (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|k| run(k * CHUNK, CHUNK.min(total - k * CHUNK)))
            .reduce(Signed::default, Signed::merge)
            .total()
    } else {
        run(0, total).total()
    }
}

/// The number of budgeted covers: ordered tuples of independent sets, the
/// `i`-th of size at most `b_i`, whose union is `V`.
pub fn count_budgeted_covers(inst: &BcpInstance) -> Result<BigUint> {
    count_budgeted_covers_with(inst, ExactConfig::default())
}

pub fn count_budgeted_covers_with(inst: &BcpInstance, cfg: ExactConfig) -> Result<BigUint> {
    let tables = build_tables_with(inst.graph(), inst.budgets(), cfg)?;
    let full = (1usize << inst.n()) - 1;
    let factors: Vec<Factor<'_>> = inst
        .budgets()
        .iter()
        .map(|&b| Factor {
            table: tables.table(b).unwrap(),
            extra: 0,
        })
        .collect();
    Ok(signed_sum(full, &factors, cfg.parallel))
}

/// Decides by the sign of the cover count; a witness is then fixed one vertex
/// at a time, keeping the count of completions positive.
pub fn solve_exact(inst: &BcpInstance) -> Result<SolveResult> {
    solve_exact_with(inst, ExactConfig::default())
}

pub fn solve_exact_with(inst: &BcpInstance, cfg: ExactConfig) -> Result<SolveResult> {
    let g = inst.graph();
    let n = g.n();
    let mut tables = build_tables_with(g, inst.budgets(), cfg)?;
    if inst.budget_short() {
        return Ok(SolveResult::No);
    }
    let c = inst.colors();
    let full = (1usize << n) - 1;
    let mut left = inst.budgets().to_vec();
    // forbidden[i]: uncolored vertices adjacent to an i-colored vertex
    let mut forbidden = vec![0usize; c];
    let mut remaining = full;
    let mut colors = Vec::with_capacity(n);

    let completions = |tables: &mut CoverCountTables, left: &[usize], forbidden: &[usize], remaining: usize| {
        for &b in left {
            tables.ensure(b);
        }
        let outside = full & !remaining;
        let factors: Vec<Factor<'_>> = left
            .iter()
            .zip(forbidden)
            .map(|(&b, &x)| Factor {
                table: tables.table(b).unwrap(),
                extra: outside | x,
            })
            .collect();
        signed_sum(remaining, &factors, cfg.parallel) > BigUint::ZERO
    };

    if !completions(&mut tables, &left, &forbidden, remaining) {
        return Ok(SolveResult::No);
    }
    for v in 0..n {
        let bit = 1usize << v;
        remaining &= !bit;
        let viable: Vec<usize> = (0..c).filter(|&a| left[a] > 0 && forbidden[a] & bit == 0).collect();
        let mut chosen = None;
        for (k, &a) in viable.iter().enumerate() {
            left[a] -= 1;
            let saved = forbidden[a];
            forbidden[a] |= g.neighbor_mask(v) as usize & remaining;
            if k + 1 == viable.len() || completions(&mut tables, &left, &forbidden, remaining) {
                chosen = Some(a);
                break;
            }
            forbidden[a] = saved;
            left[a] += 1;
        }
        let a = chosen.expect("a positive count always leaves a viable color");
        colors.push(a);
        for f in forbidden.iter_mut() {
            *f &= !bit;
        }
    }
    Ok(SolveResult::Yes(Coloring::new(colors)))
}

#[derive(Debug, Clone, Copy)]
pub struct TableDpConfig {
    pub max_vertices: usize,
    pub max_colors: usize,
}

impl Default for TableDpConfig {
    fn default() -> Self {
        TableDpConfig {
            max_vertices: 14,
            max_colors: 12,
        }
    }
}

/// `T[S, C]`: the vertices `S` can be colored with the colors `C`.
/// `T[∅, C]` holds for every `C`; otherwise some `c ∈ C` takes an independent
/// `I ⊆ S` with `|I| <= b_c` and `T[S \ I, C \ {c}]` holds.
pub fn solve_table_dp(inst: &BcpInstance) -> Result<SolveResult> {
    solve_table_dp_with(inst, TableDpConfig::default())
}

pub fn solve_table_dp_with(inst: &BcpInstance, cfg: TableDpConfig) -> Result<SolveResult> {
    let g = inst.graph();
    let (n, c) = (g.n(), inst.colors());
    if n > cfg.max_vertices {
        return Err(Error::TooLarge {
            what: "table DP vertex count",
            limit: cfg.max_vertices,
            actual: n,
        });
    }
    if c > cfg.max_colors {
        return Err(Error::TooLarge {
            what: "table DP color count",
            limit: cfg.max_colors,
            actual: c,
        });
    }
    let budgets = inst.budgets();
    let independent = independent_masks(g);
    let rows = 1usize << n;
    let at = |s: usize, cs: usize| cs * rows + s;
    let mut table = vec![false; rows << c];

    // (color, I) making T[s, cs] true, if any
    let step = |table: &[bool], s: usize, cs: usize| -> Option<(usize, usize)> {
        for a in (0..c).filter(|&a| cs >> a & 1 == 1) {
            let rest = cs & !(1 << a);
            let mut i = s;
            loop {
                if independent[i] && i.count_ones() as usize <= budgets[a] && table[at(s & !i, rest)] {
                    return Some((a, i));
                }
                if i == 0 {
                    break;
                }
                i = (i - 1) & s;
            }
        }
        None
    };

    for cs in 0..1usize << c {
        table[at(0, cs)] = true;
        for s in 1..rows {
            table[at(s, cs)] = step(&table, s, cs).is_some();
        }
    }

    let (mut s, mut cs) = (rows - 1, (1usize << c) - 1);
    if !table[at(s, cs)] {
        return Ok(SolveResult::No);
    }
    let mut colors = vec![usize::MAX; n];
    while s != 0 {
        let (a, i) = step(&table, s, cs).expect("true entries have a predecessor");
        for (v, col) in colors.iter_mut().enumerate() {
            if i >> v & 1 == 1 {
                *col = a;
            }
        }
        s &= !i;
        cs &= !(1 << a);
    }
    Ok(SolveResult::Yes(Coloring::new(colors)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::verify_bcp;
    use crate::oracle::{oracle_bcp, oracle_cover_count};

    fn inst(g: Graph, b: &[usize]) -> BcpInstance {
        BcpInstance::new(g, b.to_vec()).unwrap()
    }

    #[test]
    fn table_examples() {
        let t = build_tables(&Graph::empty(2), &[2]).unwrap();
        assert_eq!(t.table(2).unwrap()[0], 4);
        let t = build_tables(&Graph::complete(2), &[2]).unwrap();
        assert_eq!(t.table(2).unwrap()[0], 3);
        let t = build_tables(&Graph::cycle(5), &[0]).unwrap();
        assert!(t.table(0).unwrap().iter().all(|&x| x == 1));
        let t = build_tables(&Graph::path(4), &[0, 1, 2, 9]).unwrap();
        assert_eq!(t.budgets().collect::<Vec<_>>(), vec![0, 1, 2, 4]);
        assert!(t.check_invariants());
    }

    #[test]
    fn count_examples() {
        let one = |g, b: &[usize]| count_budgeted_covers(&inst(g, b)).unwrap();
        assert_eq!(one(Graph::empty(1), &[1]), 1u32.into());
        assert_eq!(one(Graph::complete(2), &[1, 1]), 2u32.into());
        assert_eq!(one(Graph::complete(2), &[2]), 0u32.into());
        assert_eq!(one(Graph::empty(2), &[2, 2]), 9u32.into());
    }

    #[test]
    fn count_matches_oracle_small() {
        for g in [Graph::path(4), Graph::cycle(5), Graph::complete(3), Graph::empty(4)] {
            for b in [vec![1, 2], vec![2, 2, 1], vec![3, 0, 3], vec![1, 1, 1]] {
                let i = inst(g.clone(), &b);
                let want = oracle_cover_count(&i).unwrap();
                assert_eq!(count_budgeted_covers(&i).unwrap(), want);
                let seq = ExactConfig {
                    parallel: false,
                    ..ExactConfig::default()
                };
                assert_eq!(count_budgeted_covers_with(&i, seq).unwrap(), want);
            }
        }
    }

    #[test]
    fn large_products_stay_exact() {
        // 12 isolated vertices, 8 colors of budget 12: (2^8 - 1)^12
        let i = inst(Graph::empty(12), &[12; 8]);
        let want = BigUint::from(255u32).pow(12);
        assert_eq!(count_budgeted_covers(&i).unwrap(), want);
    }

    #[test]
    fn exact_examples() {
        let i = inst(Graph::cycle(5), &[2, 2, 1]);
        let res = solve_exact(&i).unwrap();
        assert_eq!(verify_bcp(&i, res.coloring().unwrap()), Ok(()));
        assert_eq!(solve_exact(&inst(Graph::cycle(5), &[3, 2])).unwrap(), SolveResult::No);
        assert!(solve_exact(&inst(Graph::empty(0), &[0])).unwrap().is_yes());
    }

    #[test]
    fn size_cap() {
        let cfg = ExactConfig {
            max_vertices: 5,
            parallel: false,
        };
        assert!(matches!(
            solve_exact_with(&inst(Graph::empty(6), &[6]), cfg),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn table_dp_examples() {
        assert!(solve_table_dp(&inst(Graph::complete(1), &[1])).unwrap().is_yes());
        for b in [[1, 1], [3, 3], [2, 9]] {
            assert_eq!(solve_table_dp(&inst(Graph::complete(3), &b)).unwrap(), SolveResult::No);
        }
        let i = inst(Graph::cycle(6), &[2, 2, 2]);
        let res = solve_table_dp(&i).unwrap();
        assert_eq!(verify_bcp(&i, res.coloring().unwrap()), Ok(()));
    }

    #[test]
    fn solvers_agree_with_oracle() {
        for g in [Graph::path(5), Graph::cycle(5), Graph::cycle(6), Graph::disjoint_cliques(&[3, 2])] {
            for b in [vec![2, 2], vec![3, 2], vec![2, 2, 1], vec![1, 1, 1], vec![4, 0, 1]] {
                let i = inst(g.clone(), &b);
                let want = oracle_bcp(&i).unwrap().is_yes();
                for res in [solve_exact(&i).unwrap(), solve_table_dp(&i).unwrap()] {
                    assert_eq!(res.is_yes(), want);
                    if let SolveResult::Yes(col) = res {
                        assert_eq!(verify_bcp(&i, &col), Ok(()));
                    }
                }
            }
        }
    }
}
