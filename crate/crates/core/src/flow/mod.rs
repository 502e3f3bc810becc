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

//! Extended budgeted coloring: a deletion set `S` whose vertices are already
//! colored, and a cluster graph `G - S` to be colored by max-flow.

mod ebcp;
pub mod maxflow;

pub use ebcp::{build_network, solve_ebcp, Decomposition, EbcpInstance, EbcpNetwork};
pub use maxflow::{max_flow, Arc, Flow, Network};
