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

use proptest::prelude::*;

use bcolor_core::exact::{count_budgeted_covers, solve_exact, solve_table_dp};
use bcolor_core::fpt::{solve_cvd_clusters, solve_cvd_colors, solve_vertex_cover};
use bcolor_core::oracle::{oracle_bcp, oracle_cover_count};
use bcolor_core::poly::{solve_cluster, ClusterView};
use bcolor_core::recognize::minimum_deletion_set;
use bcolor_core::{classify, verify_bcp, BcpInstance, ClassTag, DeletionKind, Graph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn instance(max_n: usize, max_c: usize, max_b: usize) -> impl Strategy<Value = BcpInstance> {
    (graph(max_n), proptest::collection::vec(0..=max_b, 1..=max_c))
        .prop_map(|(g, b)| BcpInstance::new(g, b).unwrap())
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::new(g.n(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_solvers_match_oracle(i in instance(8, 4, 4)) {
        let want = oracle_bcp(&i).unwrap().is_yes();
        for res in [solve_exact(&i).unwrap(), solve_table_dp(&i).unwrap()] {
            prop_assert_eq!(res.is_yes(), want);
            if let Some(col) = res.coloring() {
                prop_assert!(verify_bcp(&i, col).is_ok());
            }
        }
    }

    #[test]
    fn count_matches_oracle(i in instance(6, 3, 3)) {
        prop_assert_eq!(count_budgeted_covers(&i).unwrap(), oracle_cover_count(&i).unwrap());
    }

    #[test]
    fn count_is_invariant_under_relabeling(i in instance(7, 3, 4), seed in any::<u64>()) {
        let n = i.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for k in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (s >> 33) as usize % (k + 1));
        }
        let moved = BcpInstance::new(relabel(i.graph(), &perm), i.budgets().to_vec()).unwrap();
        prop_assert_eq!(count_budgeted_covers(&i).unwrap(), count_budgeted_covers(&moved).unwrap());
    }

    #[test]
    fn count_grows_with_budget(i in instance(7, 3, 3), which in 0usize..3) {
        let a = which % i.colors();
        let mut b = i.budgets().to_vec();
        b[a] += 1;
        let raised = i.with_budgets(b).unwrap();
        prop_assert!(count_budgeted_covers(&raised).unwrap() >= count_budgeted_covers(&i).unwrap());
    }

    #[test]
    fn cluster_solver_matches_exact(sizes in proptest::collection::vec(1usize..=4, 0..=4),
                                    b in proptest::collection::vec(0usize..=5, 1..=5)) {
        let i = BcpInstance::new(Graph::disjoint_cliques(&sizes), b).unwrap();
        let view = ClusterView::new(i.graph()).unwrap();
        prop_assert_eq!(solve_cluster(&i, &view).unwrap().is_yes(), solve_exact(&i).unwrap().is_yes());
    }

    #[test]
    fn parameterized_solvers_match_exact(i in instance(8, 3, 4)) {
        let want = solve_exact(&i).unwrap().is_yes();
        if let Some(s) = minimum_deletion_set(i.graph(), DeletionKind::VertexCover, 4) {
            prop_assert_eq!(solve_vertex_cover(&i, &s.vertices).unwrap().is_yes(), want);
        }
        if let Some(s) = minimum_deletion_set(i.graph(), DeletionKind::ClusterVertexDeletion, 4) {
            prop_assert_eq!(solve_cvd_colors(&i, &s.vertices).unwrap().is_yes(), want);
            prop_assert_eq!(solve_cvd_clusters(&i, &s.vertices).unwrap().is_yes(), want);
        }
    }

    #[test]
    fn deletion_sets_do_their_job(g in graph(9)) {
        if let Some(s) = minimum_deletion_set(&g, DeletionKind::VertexCover, 9) {
            prop_assert!(g.edges().iter().all(|&(u, v)| s.vertices.contains(&u) || s.vertices.contains(&v)));
        }
        if let Some(s) = minimum_deletion_set(&g, DeletionKind::CliqueModulator, 9) {
            let rest: Vec<usize> = g.vertices().filter(|v| !s.vertices.contains(v)).collect();
            prop_assert!(g.is_clique(&rest));
        }
        if let Some(s) = minimum_deletion_set(&g, DeletionKind::ClusterVertexDeletion, 9) {
            let (h, _) = g.remove_vertices(&s.vertices);
            prop_assert!(ClusterView::new(&h).is_some());
        }
    }

    #[test]
    fn complement_is_an_involution(g in graph(10)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn classification_is_consistent(g in graph(8)) {
        let label = classify(&g);
        prop_assert!(label.tag.contains(&g) && label.validate(&g));
        if ClusterView::new(&g).is_some() {
            prop_assert!(label.tag <= ClassTag::Cluster);
        }
    }
}
