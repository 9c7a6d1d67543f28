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

//! Balanced decompositions of graphs that contain two edge-disjoint
//! spanning trees.

pub mod balancer;
pub mod decomposition;
pub mod dsu;
pub mod error;
pub mod families;
pub mod generate;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod oracle;
pub mod packing;

pub use balancer::{balance, balance_double_tree, BalanceOptions, ReductionKind, TraceRecord};
pub use decomposition::{Colour, Colouring, DoubleTreeDecomposition, ImbalanceReport, SplitDecomposition};
pub use error::{Error, Result};
pub use graph::{Digraph, EdgeId, MultiGraph, Partition, Vertex};
pub use packing::{pack_double_tree, PackOutcome};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/decompositions.md")]
    mod decompositions {}
    #[doc = include_str!("../../../book/src/packing.md")]
    mod packing {}
    #[doc = include_str!("../../../book/src/balancing.md")]
    mod balancing {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/hardness.md")]
    mod hardness {}
    #[doc = include_str!("../../../book/src/digraphs.md")]
    mod digraphs {}
}
