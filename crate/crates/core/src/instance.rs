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

//! Problem instances, colorings and their verifiers.
//!
//! Colors are `0..c` internally. Budget `budgets[i]` caps how many vertices
//! may receive color `i`; a zero budget makes the color unusable. Budgets do
//! not need to be sorted.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A Budgeted Coloring instance: a graph, `c` colors and one budget per color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcpInstance {
    graph: Graph,
    budgets: Vec<usize>,
}

impl BcpInstance {
    pub fn new(graph: Graph, budgets: Vec<usize>) -> Result<Self> {
        if budgets.is_empty() {
            return Err(Error::NoColors);
        }
        Ok(BcpInstance { graph, budgets })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn budgets(&self) -> &[usize] {
        &self.budgets
    }

    pub fn colors(&self) -> usize {
        self.budgets.len()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn budget_total(&self) -> usize {
        self.budgets.iter().sum()
    }

    /// The necessary condition `sum(budgets) >= n` fails.
    pub fn budget_short(&self) -> bool {
        self.budget_total() < self.n()
    }

    pub fn with_budgets(&self, budgets: Vec<usize>) -> Result<Self> {
        BcpInstance::new(self.graph.clone(), budgets)
    }
}

/// A total assignment of colors to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// `|V_i|` for every color `i < c`. Colors `>= c` are not counted.
    pub fn class_sizes(&self, c: usize) -> Vec<usize> {
        let mut sizes = vec![0; c];
        for &col in &self.colors {
            if col < c {
                sizes[col] += 1;
            }
        }
        sizes
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.colors
    }
}

/// YES carries a coloring that passes [`verify_bcp`]; NO carries nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Yes(Coloring),
    No,
}

impl SolveResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, SolveResult::Yes(_))
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            SolveResult::Yes(c) => Some(c),
            SolveResult::No => None,
        }
    }
}

/// The first reason a coloring fails verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Length { expected: usize, got: usize },
    ColorOutOfRange { vertex: usize, color: usize },
    Conflict { u: usize, v: usize, color: usize },
    OverBudget { color: usize, used: usize, budget: usize },
    NotEquitable { color: usize, size: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Length { expected, got } => {
                write!(f, "coloring covers {got} vertices, graph has {expected}")
            }
            Violation::ColorOutOfRange { vertex, color } => {
                write!(f, "vertex {vertex} has out-of-range color {color}")
            }
            Violation::Conflict { u, v, color } => {
                write!(f, "edge {{{u}, {v}}} has both endpoints colored {color}")
            }
            Violation::OverBudget {
                color,
                used,
                budget,
            } => write!(f, "color {color} used {used} times, budget {budget}"),
            Violation::NotEquitable { color, size } => {
                write!(f, "color class {color} has unbalanced size {size}")
            }
        }
    }
}

fn check_proper(g: &Graph, c: usize, col: &Coloring) -> Result<(), Violation> {
    if col.len() != g.n() {
        return Err(Violation::Length {
            expected: g.n(),
            got: col.len(),
        });
    }
    if let Some(v) = g.vertices().find(|&v| col.color(v) >= c) {
        return Err(Violation::ColorOutOfRange {
            vertex: v,
            color: col.color(v),
        });
    }
    match g
        .edges()
        .iter()
        .find(|&&(u, v)| col.color(u) == col.color(v))
    {
        Some(&(u, v)) => Err(Violation::Conflict {
            u,
            v,
            color: col.color(u),
        }),
        None => Ok(()),
    }
}

/// Check that `col` is a proper coloring within every budget.
pub fn verify_bcp(inst: &BcpInstance, col: &Coloring) -> Result<(), Violation> {
    check_proper(inst.graph(), inst.colors(), col)?;
    let sizes = col.class_sizes(inst.colors());
    for (color, (&used, &budget)) in sizes.iter().zip(inst.budgets()).enumerate() {
        if used > budget {
            return Err(Violation::OverBudget {
                color,
                used,
                budget,
            });
        }
    }
    Ok(())
}

/// Check that `col` is a proper `c`-coloring whose classes all have size
/// `floor(n/c)` or `ceil(n/c)`.
pub fn verify_ecp(g: &Graph, c: usize, col: &Coloring) -> Result<(), Violation> {
    assert!(c >= 1, "equitable coloring needs at least one color");
    check_proper(g, c, col)?;
    let lo = g.n() / c;
    let hi = g.n().div_ceil(c);
    for (color, size) in col.class_sizes(c).into_iter().enumerate() {
        if size != lo && size != hi {
            return Err(Violation::NotEquitable { color, size });
        }
    }
    Ok(())
}

/// Equitable `c`-coloring as a budgeted instance: the first `n mod c` colors
/// get `ceil(n/c)`, the rest `floor(n/c)`. The budgets sum to `n`, so every
/// feasible coloring meets each budget exactly.
pub fn ecp_to_bcp(g: &Graph, c: usize) -> Result<BcpInstance> {
    if c == 0 {
        return Err(Error::NoColors);
    }
    let n = g.n();
    let budgets = (0..c)
        .map(|i| if i < n % c { n.div_ceil(c) } else { n / c })
        .collect();
    BcpInstance::new(g.clone(), budgets)
}

/// Bounded coloring (every class at most `d`) as a budgeted instance.
pub fn bocp_to_bcp(g: &Graph, c: usize, d: usize) -> Result<BcpInstance> {
    if c == 0 {
        return Err(Error::NoColors);
    }
    BcpInstance::new(g.clone(), vec![d; c])
}

/// Colors sorted by non-increasing budget, ties by lower color index.
pub(crate) fn colors_by_budget_desc(budgets: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..budgets.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(budgets[i]), i));
    order
}

/// Colors sorted by non-decreasing budget, ties by lower color index.
pub(crate) fn colors_by_budget_asc(budgets: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..budgets.len()).collect();
    order.sort_by_key(|&i| (budgets[i], i));
    order
}
