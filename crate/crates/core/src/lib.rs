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

//! Budgeted graph coloring: every color `i` may be used on at most `b_i`
//! vertices, and adjacent vertices get different colors.
//!
//! The crate provides structural recognizers, polynomial solvers for
//! special classes, parameterized solvers over deletion sets, an exact
//! inclusion-exclusion solver, brute-force oracles and instance generators.

pub mod error;
pub mod exact;
pub mod flow;
pub mod fpt;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod poly;
pub mod recognize;

pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{
    bocp_to_bcp, ecp_to_bcp, verify_bcp, verify_ecp, BcpInstance, Coloring, SolveResult, Violation,
};
pub use recognize::{classify, ClassLabel, ClassTag, DeletionKind, DeletionSet};
