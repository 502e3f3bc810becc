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

//! Library half of the `bcolor` command-line tool: file formats, algorithm
//! dispatch and the subcommands.

pub mod commands;
pub mod dispatch;
pub mod error;
pub mod format;

pub use commands::{run, Cli};
pub use error::CliError;

/// Size the global rayon pool from `BCOLOR_THREADS` when it is set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("BCOLOR_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("BCOLOR_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}
