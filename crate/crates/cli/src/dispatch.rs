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

//! Algorithm selection.
//!
//! `auto` tries, in order: the budget-sum check, the polynomial solvers for
//! recognized classes, the cheapest parameterized solver over deletion sets
//! within the parameter budget, and the exact solver. Anything left is
//! reported as undecidable rather than handed to the brute-force oracle.

use bcolor_core::exact::{self, EXACT_MAX_VERTICES};
use bcolor_core::flow::Decomposition;
use bcolor_core::recognize::{broom_shape, minimum_deletion_set, path_order, two_coloring, BroomShape};
use bcolor_core::{fpt, oracle, poly};
use bcolor_core::{classify, BcpInstance, ClassTag, DeletionKind, SolveResult};
use clap::ValueEnum;

use crate::error::CliError;

pub const DEFAULT_PARAM_BUDGET: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Auto,
    Oracle,
    Exact,
    TableDp,
    Cluster,
    BipartiteC2,
    Path,
    Broom,
    Clique,
    CvdColors,
    CvdClusters,
    DistClique,
    VertexCover,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Oracle => "oracle",
            Algorithm::Exact => "exact",
            Algorithm::TableDp => "table-dp",
            Algorithm::Cluster => "cluster",
            Algorithm::BipartiteC2 => "bipartite-c2",
            Algorithm::Path => "path",
            Algorithm::Broom => "broom",
            Algorithm::Clique => "clique",
            Algorithm::CvdColors => "cvd-colors",
            Algorithm::CvdClusters => "cvd-clusters",
            Algorithm::DistClique => "dist-clique",
            Algorithm::VertexCover => "vertex-cover",
        }
    }
}

/// The answer and the name of what produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub algorithm: &'static str,
    pub result: SolveResult,
}

fn usage(msg: &str) -> CliError {
    CliError::Usage(msg.to_string())
}

fn deletion_set(inst: &BcpInstance, kind: DeletionKind, budget: usize) -> Result<Vec<usize>, CliError> {
    minimum_deletion_set(inst.graph(), kind, budget)
        .map(|s| s.vertices)
        .ok_or_else(|| CliError::Undecidable(format!("no {kind:?} deletion set of size at most {budget}")))
}

/// Run one algorithm; inapplicable choices are usage errors.
pub fn run_forced(inst: &BcpInstance, algo: Algorithm, param_budget: usize) -> Result<SolveResult, CliError> {
    let g = inst.graph();
    let res = match algo {
        Algorithm::Auto => return solve(inst, Algorithm::Auto, param_budget).map(|o| o.result),
        Algorithm::Oracle => oracle::oracle_bcp(inst)?,
        Algorithm::Exact => exact::solve_exact(inst)?,
        Algorithm::TableDp => exact::solve_table_dp(inst)?,
        Algorithm::Cluster => {
            let view = poly::ClusterView::new(g).ok_or_else(|| usage("graph is not a cluster graph"))?;
            poly::solve_cluster(inst, &view)?
        }
        Algorithm::BipartiteC2 => {
            if inst.colors() != 2 {
                return Err(usage("bipartite-c2 needs exactly 2 colors"));
            }
            let side = two_coloring(g).ok_or_else(|| usage("graph is not bipartite"))?;
            poly::solve_bipartite_c2(inst, &side)?
        }
        Algorithm::Path => {
            let order = path_order(g).ok_or_else(|| usage("graph is not a path"))?;
            poly::solve_path(inst, &order)?
        }
        Algorithm::Broom => {
            let shape = broom_shape(g)
                .or_else(|| {
                    path_order(g).filter(|o| !o.is_empty()).map(|handle| BroomShape {
                        handle,
                        leaves: Vec::new(),
                    })
                })
                .ok_or_else(|| usage("graph is not a broom"))?;
            poly::solve_broom(inst, &shape)?
        }
        Algorithm::Clique => poly::solve_clique(inst)?,
        Algorithm::CvdColors => {
            let s = deletion_set(inst, DeletionKind::ClusterVertexDeletion, param_budget)?;
            fpt::solve_cvd_colors(inst, &s)?
        }
        Algorithm::CvdClusters => {
            let s = deletion_set(inst, DeletionKind::ClusterVertexDeletion, param_budget)?;
            fpt::solve_cvd_clusters(inst, &s)?
        }
        Algorithm::DistClique => {
            let s = deletion_set(inst, DeletionKind::CliqueModulator, param_budget)?;
            fpt::solve_distance_to_clique(inst, &s)?
        }
        Algorithm::VertexCover => {
            let s = deletion_set(inst, DeletionKind::VertexCover, param_budget)?;
            fpt::solve_vertex_cover(inst, &s)?
        }
    };
    Ok(res)
}

fn lg(x: usize) -> f64 {
    (x.max(1) as f64).log2()
}

/// Parameterized candidates with log2 work estimates, in tie-break order.
fn fpt_candidates(inst: &BcpInstance, budget: usize) -> Vec<(f64, Algorithm, Vec<usize>)> {
    let g = inst.graph();
    let mut out = Vec::new();
    if let Some(s) = minimum_deletion_set(g, DeletionKind::VertexCover, budget) {
        let k = s.k();
        out.push((2.0 * k as f64 * lg(k), Algorithm::VertexCover, s.vertices));
    }
    if let Some(s) = minimum_deletion_set(g, DeletionKind::ClusterVertexDeletion, budget) {
        let k = s.k();
        let d = Decomposition::new(g, &s.vertices).map_or(1, |dec| dec.clusters().len());
        out.push((k as f64 * lg(inst.colors()), Algorithm::CvdColors, s.vertices.clone()));
        out.push((k as f64 * (lg(d + 1) + lg(k)), Algorithm::CvdClusters, s.vertices));
    }
    if let Some(s) = minimum_deletion_set(g, DeletionKind::CliqueModulator, budget) {
        let k = s.k();
        out.push((k as f64 * (1.0 + lg(k)), Algorithm::DistClique, s.vertices));
    }
    out
}

/// Solve with `algo`, choosing automatically for [`Algorithm::Auto`].
pub fn solve(inst: &BcpInstance, algo: Algorithm, param_budget: usize) -> Result<Outcome, CliError> {
    if algo != Algorithm::Auto {
        let result = run_forced(inst, algo, param_budget)?;
        return Ok(Outcome {
            algorithm: algo.name(),
            result,
        });
    }
    let g = inst.graph();
    let done = |algorithm: Algorithm, result: SolveResult| {
        Ok(Outcome {
            algorithm: algorithm.name(),
            result,
        })
    };
    if inst.budget_short() {
        return Ok(Outcome {
            algorithm: "budget-sum",
            result: SolveResult::No,
        });
    }
    let c2 = inst.colors() == 2;
    let poly_pick = match classify(g).tag {
        ClassTag::Clique => Some(Algorithm::Clique),
        ClassTag::Cluster => Some(Algorithm::Cluster),
        ClassTag::Path => Some(Algorithm::Path),
        ClassTag::Broom => Some(Algorithm::Broom),
        ClassTag::Bipartite if c2 => Some(Algorithm::BipartiteC2),
        _ if path_order(g).is_some() => Some(Algorithm::Path),
        _ if broom_shape(g).is_some() => Some(Algorithm::Broom),
        _ if c2 && two_coloring(g).is_some() => Some(Algorithm::BipartiteC2),
        _ => None,
    };
    if let Some(a) = poly_pick {
        return done(a, run_forced(inst, a, param_budget)?);
    }
    let mut candidates = fpt_candidates(inst, param_budget);
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
    if let Some((_, a, s)) = candidates.into_iter().next() {
        let res = match a {
            Algorithm::VertexCover => fpt::solve_vertex_cover(inst, &s)?,
            Algorithm::CvdColors => fpt::solve_cvd_colors(inst, &s)?,
            Algorithm::CvdClusters => fpt::solve_cvd_clusters(inst, &s)?,
            _ => fpt::solve_distance_to_clique(inst, &s)?,
        };
        return done(a, res);
    }
    if g.n() <= EXACT_MAX_VERTICES {
        return done(Algorithm::Exact, exact::solve_exact(inst)?);
    }
    Err(CliError::Undecidable(format!(
        "no polynomial class, no deletion set within {param_budget}, and {} vertices exceed the exact solver's {EXACT_MAX_VERTICES}",
        g.n()
    )))
}
