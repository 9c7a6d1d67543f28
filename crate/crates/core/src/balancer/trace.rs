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

use super::rules::ReductionKind;
use super::state::{Measure, Slot};
use crate::decomposition::Colour;
use crate::graph::{EdgeId, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovedEdge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
    /// Colour at removal time.
    pub colour: Colour,
    pub in_a: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CreatedEdge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
    pub in_a: bool,
}

/// Edge roles of a configuration, by slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Roles {
    /// 2-vertex; `bal` ends at `y`.
    TwoVertex { keep: Slot, bal: Slot, y: Vertex, coincident: bool },
    Shared { ua: Slot, uv: Slot, wb: Slot, wv: Slot, xa: Slot, xb: Slot },
    /// 3-vertex removed and its doubleton ends joined by `joined`. `crit`
    /// is the critical vertex to rebalance first, if any.
    Three { single: Slot, dbl: [Slot; 2], joined: Slot, crit: Option<Vertex> },
    TwoPoor {
        u: [Slot; 3],
        w: [Slot; 3],
        vu2: Slot,
        vw2: Slot,
        xu1: Slot,
        xw1: Slot,
    },
    TwoAndPoor {
        uv: Slot,
        uv1: Slot,
        wv: Slot,
        wv2: Slot,
        wv3: Slot,
        vv3: Slot,
        xv1: Slot,
        xv2: Slot,
    },
    MParity { e: Slot, far: Vertex },
    MPair { e1: Slot, e2: Slot, xu: Slot, xw: Slot },
    MTwo { v: Vertex, e: Slot, vw: Slot, wv2: Slot, f: Option<Slot> },
    MPoor { v: Vertex, e: Slot, vw: Slot, wv2: Slot, ws: Slot, vs: Slot, f: Option<Slot> },
}

/// What a record needs to undo itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Plan {
    pub removed: Vec<Slot>,
    pub created: Vec<Slot>,
    pub roles: Roles,
}

/// One applied reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub kind: ReductionKind,
    pub pivot: Vertex,
    /// Vertices of the configuration by role, e.g. `("u1", 5)`.
    pub named: Vec<(&'static str, Vertex)>,
    pub removed_vertices: Vec<Vertex>,
    pub removed_edges: Vec<RemovedEdge>,
    pub created_vertices: Vec<Vertex>,
    pub created_edges: Vec<CreatedEdge>,
    /// Normalising swaps done before the reduction, as (edge, partner).
    pub pre_swaps: Vec<(EdgeId, EdgeId)>,
    pub measure_before: Measure,
    pub measure_after: Measure,
    /// Which reconstruction case ran; set once the record is undone.
    pub case_tag: Option<String>,
    /// Set when this record replaced a reduction of another kind whose
    /// normalisation or reconstruction exposed a simpler configuration.
    pub redirected_from: Option<ReductionKind>,
    pub(crate) plan: Plan,
}

impl TraceRecord {
    pub fn named_vertex(&self, role: &str) -> Option<Vertex> {
        self.named.iter().find(|(r, _)| *r == role).map(|&(_, v)| v)
    }

    pub fn is_named(&self, v: Vertex) -> bool {
        self.named.iter().any(|&(_, x)| x == v)
    }
}

fn ids(f: &mut fmt::Formatter<'_>, ids: impl Iterator<Item = EdgeId>) -> fmt::Result {
    let mut first = true;
    for id in ids {
        if !first {
            f.write_str(",")?;
        }
        write!(f, "{id}")?;
        first = false;
    }
    if first {
        f.write_str("-")?;
    }
    Ok(())
}

/// `reduce <kind> pivot=<v> removed=<ids> created=<ids> case=<tag>`
impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "reduce {} pivot={} removed=", self.kind, self.pivot)?;
        ids(f, self.removed_edges.iter().map(|e| e.id))?;
        f.write_str(" created=")?;
        ids(f, self.created_edges.iter().map(|e| e.id))?;
        write!(f, " case={}", self.case_tag.as_deref().unwrap_or("-"))
    }
}
