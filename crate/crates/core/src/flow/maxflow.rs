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

//! Integral maximum flow (Dinic's shortest augmenting paths).

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// A directed network with integral arc capacities.
#[derive(Debug, Clone, Default)]
pub struct Network {
    nodes: usize,
    arcs: Vec<Arc>,
}

impl Network {
    pub fn new(nodes: usize) -> Self {
        Network {
            nodes,
            arcs: Vec::new(),
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64) -> usize {
        assert!(from < self.nodes && to < self.nodes, "arc endpoint out of range");
        self.arcs.push(Arc { from, to, capacity });
        self.arcs.len() - 1
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }
}

/// A maximum flow: total value and the flow on each arc, indexed like
/// [`Network::arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub value: u64,
    pub arc_flow: Vec<u64>,
}

impl Flow {
    /// Capacity and conservation hold at every arc and internal node.
    pub fn is_feasible(&self, net: &Network, source: usize, sink: usize) -> bool {
        if self.arc_flow.len() != net.arcs.len() {
            return false;
        }
        let mut balance = vec![0i128; net.nodes];
        for (arc, &f) in net.arcs.iter().zip(&self.arc_flow) {
            if f > arc.capacity {
                return false;
            }
            balance[arc.from] -= f as i128;
            balance[arc.to] += f as i128;
        }
        balance.iter().enumerate().all(|(v, &b)| {
            if v == source {
                b == -(self.value as i128)
            } else if v == sink {
                b == self.value as i128
            } else {
                b == 0
            }
        })
    }
}

struct Residual {
    to: usize,
    cap: u64,
    rev: usize,
}

/// Maximum `source -> sink` flow. Integral because all capacities are.
pub fn max_flow(net: &Network, source: usize, sink: usize) -> Flow {
    let n = net.nodes;
    let mut adj: Vec<Vec<Residual>> = (0..n).map(|_| Vec::new()).collect();
    let mut handle = Vec::with_capacity(net.arcs.len());
    for arc in &net.arcs {
        let (u, v) = (arc.from, arc.to);
        let fwd = adj[u].len();
        let bwd = adj[v].len() + usize::from(u == v);
        adj[u].push(Residual {
            to: v,
            cap: arc.capacity,
            rev: bwd,
        });
        adj[v].push(Residual {
            to: u,
            cap: 0,
            rev: fwd,
        });
        handle.push((u, fwd));
    }

    let mut value = 0u64;
    if source != sink {
        let mut level = vec![usize::MAX; n];
        let mut next = vec![0usize; n];
        loop {
            level.fill(usize::MAX);
            level[source] = 0;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for e in &adj[u] {
                    if e.cap > 0 && level[e.to] == usize::MAX {
                        level[e.to] = level[u] + 1;
                        queue.push_back(e.to);
                    }
                }
            }
            if level[sink] == usize::MAX {
                break;
            }
            next.fill(0);
            loop {
                let pushed = augment(&mut adj, &level, &mut next, source, sink, u64::MAX);
                if pushed == 0 {
                    break;
                }
                value += pushed;
            }
        }
    }

    let arc_flow = net
        .arcs
        .iter()
        .zip(&handle)
        .map(|(arc, &(u, i))| arc.capacity - adj[u][i].cap)
        .collect();
    Flow { value, arc_flow }
}

fn augment(
    adj: &mut [Vec<Residual>],
    level: &[usize],
    next: &mut [usize],
    u: usize,
    sink: usize,
    limit: u64,
) -> u64 {
    if u == sink {
        return limit;
    }
    while next[u] < adj[u].len() {
        let i = next[u];
        let (to, cap) = (adj[u][i].to, adj[u][i].cap);
        if cap > 0 && level[to] == level[u] + 1 {
            let pushed = augment(adj, level, next, to, sink, limit.min(cap));
            if pushed > 0 {
                adj[u][i].cap -= pushed;
                let rev = adj[u][i].rev;
                adj[to][rev].cap += pushed;
                return pushed;
            }
        }
        next[u] += 1;
    }
    0
}
