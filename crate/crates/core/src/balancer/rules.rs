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

//! Reducible configurations and their detection.

use std::fmt;

use super::state::{BalancerState, Slot};
use crate::decomposition::ThreeVertexType;
use crate::graph::{EdgeId, Vertex};

/// The reducible configurations. `R*` kinds only look at the double tree
/// part, `M*` kinds remove or move an extra edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReductionKind {
    /// 2-vertex joined to one neighbour by a double edge.
    TwoVertexCoincident,
    /// 2-vertex with two distinct neighbours, one of them small.
    TwoVertexSmallNbr,
    /// 2-vertex with a neighbour whose degree has the parity of `c`.
    TwoVertexParity,
    /// Vertex with two 2-vertex neighbours.
    TwoTwoVerticesShared,
    /// 3-vertex whose singleton edge ends at a small vertex, possibly after
    /// one swap.
    ThreeVertexSmallSingleton,
    /// Big vertex with `l` bad neighbours and degree at most `2l + c`.
    BadNeighbourLowDegree,
    /// Critical vertex with only small neighbours in `A` and a bad one.
    CriticalAllSmallBad,
    /// Critical vertex with two poor neighbours.
    CriticalTwoPoor,
    /// Critical vertex with a 2-vertex neighbour and a poor neighbour.
    CriticalTwoVertexAndPoor,
    /// Extra edge at a small vertex or at a vertex whose degree has the
    /// parity of `c`.
    MEdgeParityOrSmall,
    /// Two extra edges sharing a vertex.
    MAdjacentPair,
    /// Extra edge at a vertex with a 2-vertex neighbour.
    MEdgeWithTwoVertex,
    /// Extra edge at a critical vertex with a poor neighbour.
    MEdgeCriticalPoor,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 13] = [
        ReductionKind::TwoVertexCoincident,
        ReductionKind::TwoVertexSmallNbr,
        ReductionKind::TwoVertexParity,
        ReductionKind::TwoTwoVerticesShared,
        ReductionKind::ThreeVertexSmallSingleton,
        ReductionKind::BadNeighbourLowDegree,
        ReductionKind::CriticalAllSmallBad,
        ReductionKind::CriticalTwoPoor,
        ReductionKind::CriticalTwoVertexAndPoor,
        ReductionKind::MEdgeParityOrSmall,
        ReductionKind::MAdjacentPair,
        ReductionKind::MEdgeWithTwoVertex,
        ReductionKind::MEdgeCriticalPoor,
    ];

    /// Canonical search order.
    pub const PRIORITY: [ReductionKind; 13] = [
        ReductionKind::MEdgeParityOrSmall,
        ReductionKind::MAdjacentPair,
        ReductionKind::MEdgeWithTwoVertex,
        ReductionKind::MEdgeCriticalPoor,
        ReductionKind::TwoVertexCoincident,
        ReductionKind::TwoVertexSmallNbr,
        ReductionKind::TwoVertexParity,
        ReductionKind::TwoTwoVerticesShared,
        ReductionKind::ThreeVertexSmallSingleton,
        ReductionKind::BadNeighbourLowDegree,
        ReductionKind::CriticalTwoVertexAndPoor,
        ReductionKind::CriticalTwoPoor,
        ReductionKind::CriticalAllSmallBad,
    ];

    /// Short tag such as `R5` or `M2`.
    pub fn code(self) -> &'static str {
        use ReductionKind::*;
        match self {
            TwoVertexCoincident => "R1",
            TwoVertexSmallNbr => "R2",
            TwoVertexParity => "R3",
            TwoTwoVerticesShared => "R4",
            ThreeVertexSmallSingleton => "R5",
            BadNeighbourLowDegree => "R6",
            CriticalAllSmallBad => "R7",
            CriticalTwoPoor => "R8",
            CriticalTwoVertexAndPoor => "R9",
            MEdgeParityOrSmall => "M1",
            MAdjacentPair => "M2",
            MEdgeWithTwoVertex => "M3",
            MEdgeCriticalPoor => "M4",
        }
    }

    pub fn name(self) -> &'static str {
        use ReductionKind::*;
        match self {
            TwoVertexCoincident => "TwoVertexCoincident",
            TwoVertexSmallNbr => "TwoVertexSmallNbr",
            TwoVertexParity => "TwoVertexParity",
            TwoTwoVerticesShared => "TwoTwoVerticesShared",
            ThreeVertexSmallSingleton => "ThreeVertexSmallSingleton",
            BadNeighbourLowDegree => "BadNeighbourLowDegree",
            CriticalAllSmallBad => "CriticalAllSmallBad",
            CriticalTwoPoor => "CriticalTwoPoor",
            CriticalTwoVertexAndPoor => "CriticalTwoVertexAndPoor",
            MEdgeParityOrSmall => "MEdgeParityOrSmall",
            MAdjacentPair => "MAdjacentPair",
            MEdgeWithTwoVertex => "MEdgeWithTwoVertex",
            MEdgeCriticalPoor => "MEdgeCriticalPoor",
        }
    }

    /// Parses either the code or the name.
    pub fn parse(s: &str) -> Option<ReductionKind> {
        Self::ALL.into_iter().find(|k| k.code() == s || k.name() == s)
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Slots and vertices a reduction needs, fixed at detection time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Detail {
    /// R1-R3. For R1 `keep` and `bal` are the two parallel edges; otherwise
    /// `keep` ends at the small or parity neighbour.
    TwoVertex { v: Vertex, keep: Slot, bal: Slot },
    /// R4: `u` and `w` are 2-vertices next to `v`.
    Shared { v: Vertex, u: Vertex, w: Vertex },
    /// R5. `preswap` when the singleton first has to be moved off a big
    /// vertex.
    Three { w: Vertex, preswap: bool },
    /// R6 and R7: big `v` with bad neighbour `u`.
    Bad { v: Vertex, u: Vertex },
    /// R8: critical `v` with poor neighbours `u`, `w`.
    TwoPoor { v: Vertex, u: Vertex, w: Vertex },
    /// R9: critical `v` with 2-vertex `u` and poor `w`.
    TwoAndPoor { v: Vertex, u: Vertex, w: Vertex },
    /// M1: extra edge `e` at the qualifying endpoint `q`.
    MParity { q: Vertex, e: Slot },
    /// M2: extra edges `e1`, `e2` at `v`.
    MPair { v: Vertex, e1: Slot, e2: Slot },
    /// M3: extra edge `e` at `v`, 2-vertex neighbour `w`.
    MTwo { v: Vertex, e: Slot, w: Vertex },
    /// M4: extra edge `e` at critical `v`, poor neighbour `w`.
    MPoor { v: Vertex, e: Slot, w: Vertex },
}

/// An applicable reduction. Candidates are ordered by kind priority, then
/// pivot, then `edge`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCandidate {
    pub kind: ReductionKind,
    pub pivot: Vertex,
    /// Smallest edge that identifies the configuration at the pivot.
    pub edge: EdgeId,
    pub(crate) detail: Detail,
}

/// A poor 3-vertex split into its edge to the small neighbour and its two
/// edges to distinct big neighbours.
#[derive(Copy, Clone, Debug)]
pub(crate) struct Poor {
    pub small: Slot,
    pub big: [Slot; 2],
}

impl BalancerState {
    fn sorted_incident(&self, v: Vertex) -> Vec<Slot> {
        let mut s = self.incident(v).to_vec();
        s.sort_unstable();
        s
    }

    fn sorted_a_incident(&self, v: Vertex) -> Vec<Slot> {
        let mut s: Vec<Slot> = self.incident(v).iter().copied().filter(|&s| self.slot(s).in_a).collect();
        s.sort_unstable();
        s
    }

    fn id(&self, s: Slot) -> EdgeId {
        self.slot(s).id
    }

    /// The two slots of a 2-vertex, in id order.
    pub(crate) fn two_slots(&self, v: Vertex) -> Option<[Slot; 2]> {
        if self.degree(v) != 2 {
            return None;
        }
        let s = self.sorted_incident(v);
        Some([s[0], s[1]])
    }

    /// Other neighbour of the 2-vertex `w` besides `v`, if `w` is a 2-vertex
    /// with distinct neighbours one of which is `v`.
    fn two_vertex_far_end(&self, w: Vertex, v: Vertex) -> Option<Vertex> {
        let [a, b] = self.two_slots(w)?;
        let (x, y) = (self.other(a, w), self.other(b, w));
        if x == y {
            None
        } else if x == v {
            Some(y)
        } else if y == v {
            Some(x)
        } else {
            None
        }
    }

    pub(crate) fn poor(&self, p: Vertex) -> Option<Poor> {
        if self.three_type(p)? != ThreeVertexType::Poor {
            return None;
        }
        let s = self.sorted_incident(p);
        let k = s.iter().position(|&x| self.is_small(self.other(x, p)))?;
        let big: Vec<Slot> = s.iter().copied().filter(|&x| x != s[k]).collect();
        Some(Poor {
            small: s[k],
            big: [big[0], big[1]],
        })
    }

    /// For a poor `p` next to `v`: (edge p-v, edge to the other big
    /// neighbour, edge to the small neighbour).
    pub(crate) fn poor_at(&self, p: Vertex, v: Vertex) -> Option<(Slot, Slot, Slot)> {
        let info = self.poor(p)?;
        let [a, b] = info.big;
        if self.other(a, p) == v {
            Some((a, b, info.small))
        } else if self.other(b, p) == v {
            Some((b, a, info.small))
        } else {
            None
        }
    }

    /// Big vertex carrying the double edge of a bad 3-vertex.
    fn bad_centre(&self, u: Vertex) -> Option<Vertex> {
        if self.three_type(u)? != ThreeVertexType::Bad {
            return None;
        }
        self.incident(u)
            .iter()
            .map(|&s| self.other(s, u))
            .find(|&x| self.is_big(x))
    }

    /// Distinct bad neighbours of `v` whose double edge ends at `v`, in
    /// order of their smallest edge to `v`.
    fn bad_neighbours(&self, v: Vertex) -> Vec<(Vertex, Slot)> {
        let mut out: Vec<(Vertex, Slot)> = Vec::new();
        for s in self.sorted_incident(v) {
            let u = self.other(s, v);
            if out.iter().any(|&(x, _)| x == u) {
                continue;
            }
            if self.bad_centre(u) == Some(v) {
                out.push((u, s));
            }
        }
        out
    }

    /// Distinct poor neighbours of `v` that have `v` as a big neighbour.
    fn poor_neighbours(&self, v: Vertex) -> Vec<(Vertex, Slot)> {
        let mut out: Vec<(Vertex, Slot)> = Vec::new();
        for s in self.sorted_a_incident(v) {
            let u = self.other(s, v);
            if out.iter().any(|&(x, _)| x == u) {
                continue;
            }
            if self.poor_at(u, v).is_some() {
                out.push((u, s));
            }
        }
        out
    }

    /// The candidate of `kind` at pivot `v` with the smallest edge, if any.
    pub fn detect(&self, kind: ReductionKind, v: Vertex) -> Option<ReductionCandidate> {
        use ReductionKind::*;
        if !self.is_alive(v) {
            return None;
        }
        let c = self.c();
        let cand = |edge: Slot, detail: Detail| ReductionCandidate {
            kind,
            pivot: v,
            edge: self.id(edge),
            detail,
        };
        match kind {
            MEdgeParityOrSmall => {
                let m = self.m_edges_at(v);
                let qualifies = self.is_small(v) || self.degree(v) % 2 == c % 2;
                (qualifies && !m.is_empty()).then(|| cand(m[0], Detail::MParity { q: v, e: m[0] }))
            }
            MAdjacentPair => {
                let m = self.m_edges_at(v);
                (m.len() >= 2).then(|| cand(m[0], Detail::MPair { v, e1: m[0], e2: m[1] }))
            }
            MEdgeWithTwoVertex => {
                if !self.is_big(v) {
                    return None;
                }
                for e in self.m_edges_at(v) {
                    if !self.is_big(self.other(e, v)) {
                        continue;
                    }
                    for s in self.sorted_a_incident(v) {
                        let w = self.other(s, v);
                        if self.two_vertex_far_end(w, v).is_some() {
                            return Some(cand(e, Detail::MTwo { v, e, w }));
                        }
                    }
                }
                None
            }
            MEdgeCriticalPoor => {
                if !self.is_critical(v) {
                    return None;
                }
                for e in self.m_edges_at(v) {
                    if !self.is_big(self.other(e, v)) {
                        continue;
                    }
                    if let Some(&(w, _)) = self.poor_neighbours(v).first() {
                        return Some(cand(e, Detail::MPoor { v, e, w }));
                    }
                }
                None
            }
            TwoVertexCoincident => {
                let [a, b] = self.two_slots(v)?;
                (self.other(a, v) == self.other(b, v)).then(|| cand(a, Detail::TwoVertex { v, keep: a, bal: b }))
            }
            TwoVertexSmallNbr | TwoVertexParity => {
                let [a, b] = self.two_slots(v)?;
                if self.other(a, v) == self.other(b, v) {
                    return None;
                }
                let good = |s: Slot| {
                    let x = self.other(s, v);
                    if kind == TwoVertexSmallNbr {
                        self.is_small(x)
                    } else {
                        self.degree(x) % 2 == c % 2
                    }
                };
                let (keep, bal) = if good(a) {
                    (a, b)
                } else if good(b) {
                    (b, a)
                } else {
                    return None;
                };
                Some(cand(a, Detail::TwoVertex { v, keep, bal }))
            }
            TwoTwoVerticesShared => {
                let slots = self.sorted_a_incident(v);
                for (i, &s1) in slots.iter().enumerate() {
                    let u = self.other(s1, v);
                    let Some(a) = self.two_vertex_far_end(u, v) else { continue };
                    for &s2 in &slots[i + 1..] {
                        let w = self.other(s2, v);
                        if w == u {
                            continue;
                        }
                        let Some(b) = self.two_vertex_far_end(w, v) else { continue };
                        if a != w && b != u {
                            return Some(cand(s1, Detail::Shared { v, u, w }));
                        }
                    }
                }
                None
            }
            ThreeVertexSmallSingleton => {
                let t = self.three_type(v)?;
                let (single, _) = self.singleton(v);
                if self.is_small(self.other(single, v)) {
                    Some(cand(single, Detail::Three { w: v, preswap: false }))
                } else if t == ThreeVertexType::Irregular {
                    Some(cand(single, Detail::Three { w: v, preswap: true }))
                } else {
                    None
                }
            }
            BadNeighbourLowDegree => {
                if !self.is_big(v) {
                    return None;
                }
                let bad = self.bad_neighbours(v);
                let l = bad.len();
                (l >= 1 && self.degree(v) <= 2 * l + c).then(|| cand(bad[0].1, Detail::Bad { v, u: bad[0].0 }))
            }
            CriticalAllSmallBad => {
                if !self.is_critical(v) {
                    return None;
                }
                let all_small = self.incident(v).iter().all(|&s| !self.slot(s).in_a || self.is_small(self.other(s, v)));
                if !all_small {
                    return None;
                }
                let bad = self.bad_neighbours(v);
                bad.first().map(|&(u, s)| cand(s, Detail::Bad { v, u }))
            }
            CriticalTwoPoor => {
                if !self.is_critical(v) {
                    return None;
                }
                let poor = self.poor_neighbours(v);
                (poor.len() >= 2).then(|| cand(poor[0].1, Detail::TwoPoor { v, u: poor[0].0, w: poor[1].0 }))
            }
            CriticalTwoVertexAndPoor => {
                if !self.is_critical(v) {
                    return None;
                }
                let poor = self.poor_neighbours(v);
                if poor.is_empty() {
                    return None;
                }
                for s in self.sorted_a_incident(v) {
                    let u = self.other(s, v);
                    let Some(v1) = self.two_vertex_far_end(u, v) else { continue };
                    if !self.is_big(v1) {
                        continue;
                    }
                    if let Some(&(w, _)) = poor.iter().find(|&&(w, _)| w != v1) {
                        return Some(cand(s, Detail::TwoAndPoor { v, u, w }));
                    }
                }
                None
            }
        }
    }

    /// Every candidate of `kind`, one per pivot, in pivot order.
    pub fn candidates(&self, kind: ReductionKind) -> Vec<ReductionCandidate> {
        self.alive_vertices().filter_map(|v| self.detect(kind, v)).collect()
    }

    fn first_of(&self, kind: ReductionKind) -> Option<ReductionCandidate> {
        self.alive_vertices().find_map(|v| self.detect(kind, v))
    }

    /// Highest-priority candidate, or `None` in the base case and when no
    /// configuration is present.
    pub fn find_reduction(&self) -> Option<ReductionCandidate> {
        self.find_reduction_in(&ReductionKind::PRIORITY)
    }

    /// As [`find_reduction`](Self::find_reduction) with a custom order.
    pub fn find_reduction_in(&self, order: &[ReductionKind]) -> Option<ReductionCandidate> {
        if self.is_base_case() {
            return None;
        }
        order.iter().find_map(|&k| self.first_of(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip() {
        for k in ReductionKind::ALL {
            assert_eq!(ReductionKind::parse(k.code()), Some(k));
            assert_eq!(ReductionKind::parse(k.name()), Some(k));
        }
        let mut p = ReductionKind::PRIORITY.to_vec();
        p.sort();
        assert_eq!(p, ReductionKind::ALL.to_vec());
    }
}
