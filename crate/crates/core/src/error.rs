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

use std::fmt;

use crate::balancer::ReductionKind;
use crate::graph::Vertex;

/// Errors produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input text. `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// An argument violates a documented precondition.
    #[error("{0}")]
    Domain(String),
    /// An exhaustive search was refused because the instance is too large.
    #[error("instance too large: {0}")]
    Oversize(String),
    /// The balancer found no applicable reduction on a graph that is not a
    /// base case.
    #[error("no reduction applies: {0}")]
    CompletenessViolation(Box<StuckReport>),
    /// A reconstruction step could not produce a balanced decomposition.
    #[error("reconstruction failed: {0}")]
    ReconstructionViolation(Box<ReconstructionFailure>),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

/// State dump attached to [`Error::CompletenessViolation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StuckReport {
    pub alive_vertices: usize,
    pub m_edges: usize,
    /// Vertices whose final charge (times six) is below `6 * 4`.
    pub deficient: Vec<(Vertex, i64)>,
}

impl fmt::Display for StuckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices alive, {} M-edges, deficient charges:",
            self.alive_vertices, self.m_edges
        )?;
        for (v, g6) in &self.deficient {
            write!(f, " v{v}={g6}/6")?;
        }
        Ok(())
    }
}

/// Details attached to [`Error::ReconstructionViolation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionFailure {
    pub kind: ReductionKind,
    pub pivot: Vertex,
    pub reason: String,
}

impl fmt::Display for ReconstructionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at v{}: {}", self.kind, self.pivot, self.reason)
    }
}
