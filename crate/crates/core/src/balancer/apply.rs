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

//! Forward direction: shrinking the graph.

use super::rules::{Detail, ReductionCandidate, ReductionKind};
use super::state::{BalancerState, Measure, Slot};
use super::trace::{CreatedEdge, Plan, RemovedEdge, Roles, TraceRecord};
use crate::decomposition::Colour;
use crate::error::{Error, ReconstructionFailure, Result};
use crate::graph::{EdgeId, Vertex};

/// Record under construction.
pub(crate) struct Draft {
    kind: ReductionKind,
    pivot: Vertex,
    named: Vec<(&'static str, Vertex)>,
    removed_vertices: Vec<Vertex>,
    removed_edges: Vec<RemovedEdge>,
    created_vertices: Vec<Vertex>,
    created_edges: Vec<CreatedEdge>,
    pre_swaps: Vec<(EdgeId, EdgeId)>,
    measure_before: Measure,
    redirected_from: Option<ReductionKind>,
    removed: Vec<Slot>,
    created: Vec<Slot>,
}

impl Draft {
    pub(crate) fn new(kind: ReductionKind, pivot: Vertex, measure: Measure) -> Self {
        Draft {
            kind,
            pivot,
            named: Vec::new(),
            removed_vertices: Vec::new(),
            removed_edges: Vec::new(),
            created_vertices: Vec::new(),
            created_edges: Vec::new(),
            pre_swaps: Vec::new(),
            measure_before: measure,
            redirected_from: None,
            removed: Vec::new(),
            created: Vec::new(),
        }
    }

    pub(crate) fn redirected(mut self, kind: ReductionKind, pivot: Vertex, from: ReductionKind) -> Self {
        self.kind = kind;
        self.pivot = pivot;
        self.named.clear();
        self.redirected_from = Some(from);
        self
    }

    fn name(&mut self, role: &'static str, v: Vertex) {
        self.named.push((role, v));
    }

    fn finish(self, st: &BalancerState, roles: Roles) -> TraceRecord {
        TraceRecord {
            kind: self.kind,
            pivot: self.pivot,
            named: self.named,
            removed_vertices: self.removed_vertices,
            removed_edges: self.removed_edges,
            created_vertices: self.created_vertices,
            created_edges: self.created_edges,
            pre_swaps: self.pre_swaps,
            measure_before: self.measure_before,
            measure_after: st.measure(),
            case_tag: None,
            redirected_from: self.redirected_from,
            plan: Plan {
                removed: self.removed,
                created: self.created,
                roles,
            },
        }
    }
}

pub(crate) fn violation(kind: ReductionKind, pivot: Vertex, reason: impl Into<String>) -> Error {
    Error::ReconstructionViolation(Box::new(ReconstructionFailure {
        kind,
        pivot,
        reason: reason.into(),
    }))
}

/// Result of normalising a poor vertex.
enum Norm {
    /// The singleton edge goes to the other big neighbour.
    Done,
    /// The singleton edge goes to the small neighbour.
    Exposed,
}

impl BalancerState {
    fn remove_edge(&mut self, d: &mut Draft, s: Slot) {
        let data = self.slot(s).clone();
        d.removed_edges.push(RemovedEdge {
            id: data.id,
            u: data.u,
            v: data.v,
            colour: data.colour,
            in_a: data.in_a,
        });
        d.removed.push(s);
        self.kill_edge(s);
    }

    /// Removes a vertex together with all its edges.
    fn remove_vertex(&mut self, d: &mut Draft, v: Vertex) {
        let mut slots = self.incident(v).to_vec();
        slots.sort_unstable();
        for s in slots {
            self.remove_edge(d, s);
        }
        self.kill_vertex(v);
        d.removed_vertices.push(v);
    }

    fn create_edge(&mut self, d: &mut Draft, u: Vertex, v: Vertex, in_a: bool, c: Colour) -> Slot {
        let s = self.new_edge(u, v, in_a, c);
        d.created_edges.push(CreatedEdge {
            id: self.slot(s).id,
            u,
            v,
            in_a,
        });
        d.created.push(s);
        s
    }

    fn create_vertex(&mut self, d: &mut Draft) -> Vertex {
        let x = self.new_vertex();
        d.created_vertices.push(x);
        x
    }

    pub(crate) fn logged_swap(&mut self, d: &mut Draft, s: Slot) -> Result<Slot> {
        let f = self.swap(s)?;
        d.pre_swaps.push((self.slot(s).id, self.slot(f).id));
        Ok(f)
    }

    /// Removes the 3-vertex `w` and joins the ends of its doubleton in the
    /// doubleton colour.
    fn three_reduction(&mut self, d: &mut Draft, w: Vertex, crit: Option<Vertex>) -> Roles {
        let (single, dbl) = self.singleton(w);
        let x = self.other(dbl[0], w);
        let y = self.other(dbl[1], w);
        let gamma = self.colour(dbl[0]);
        d.name("s", self.other(single, w));
        d.name("x", x);
        d.name("y", y);
        self.remove_vertex(d, w);
        let joined = self.create_edge(d, x, y, true, gamma);
        Roles::Three {
            single,
            dbl,
            joined,
            crit,
        }
    }

    /// Swaps the singleton of the poor `p` (a neighbour of `v`) until it
    /// goes to the other big neighbour or to the small one.
    fn normalise_poor(&mut self, d: &mut Draft, p: Vertex, v: Vertex) -> Result<Norm> {
        for _ in 0..3 {
            let (pv, far, small) = self
                .poor_at(p, v)
                .ok_or_else(|| violation(d.kind, d.pivot, format!("v{p} is no longer poor")))?;
            let (single, _) = self.singleton(p);
            if single == far {
                return Ok(Norm::Done);
            }
            if single == small {
                return Ok(Norm::Exposed);
            }
            debug_assert_eq!(single, pv);
            self.logged_swap(d, pv)?;
        }
        Err(violation(d.kind, d.pivot, format!("singleton of v{p} keeps returning to v{v}")))
    }

    /// Standard 3-reduction at `p`, recorded as a redirect from `from`.
    pub(crate) fn redirect_three(&mut self, d: Draft, p: Vertex, from: ReductionKind) -> TraceRecord {
        let mut d = d.redirected(ReductionKind::ThreeVertexSmallSingleton, p, from);
        d.name("w", p);
        let roles = self.three_reduction(&mut d, p, None);
        d.finish(self, roles)
    }

    /// Applies `cand`, which must come from this state. Normalising swaps
    /// may expose a 3-vertex with its singleton at a small vertex, in which
    /// case that simpler reduction is applied instead and the record says
    /// so in `redirected_from`.
    pub fn apply_reduction(&mut self, cand: &ReductionCandidate) -> Result<TraceRecord> {
        let mut d = Draft::new(cand.kind, cand.pivot, self.measure());
        let roles = match cand.detail.clone() {
            Detail::TwoVertex { v, keep, bal } => {
                let x = self.other(keep, v);
                let y = self.other(bal, v);
                d.name("v", v);
                d.name("x", x);
                if x != y {
                    d.name("y", y);
                }
                self.remove_vertex(&mut d, v);
                Roles::TwoVertex {
                    keep,
                    bal,
                    y,
                    coincident: x == y,
                }
            }
            Detail::Shared { v, u, w } => {
                let [p, q] = self.two_slots(u).expect("2-vertex");
                let (uv, ua) = if self.other(p, u) == v { (p, q) } else { (q, p) };
                let [p, q] = self.two_slots(w).expect("2-vertex");
                let (wv, wb) = if self.other(p, w) == v { (p, q) } else { (q, p) };
                let a = self.other(ua, u);
                let b = self.other(wb, w);
                for (r, x) in [("v", v), ("u", u), ("w", w), ("a", a), ("b", b)] {
                    d.name(r, x);
                }
                self.remove_vertex(&mut d, u);
                self.remove_vertex(&mut d, w);
                let x = self.create_vertex(&mut d);
                d.name("x", x);
                let xa = self.create_edge(&mut d, x, a, true, Colour::Blue);
                let xb = self.create_edge(&mut d, x, b, true, Colour::Red);
                Roles::Shared {
                    ua,
                    uv,
                    wb,
                    wv,
                    xa,
                    xb,
                }
            }
            Detail::Three { w, preswap } => {
                d.name("w", w);
                if preswap {
                    let (single, _) = self.singleton(w);
                    self.logged_swap(&mut d, single)?;
                    let (single, _) = self.singleton(w);
                    if !self.is_small(self.other(single, w)) {
                        return Err(violation(d.kind, w, "singleton swap did not reach a small vertex"));
                    }
                }
                self.three_reduction(&mut d, w, None)
            }
            Detail::Bad { v, u } => {
                d.name("v", v);
                d.name("u", u);
                let crit = (cand.kind == ReductionKind::CriticalAllSmallBad).then_some(v);
                self.three_reduction(&mut d, u, crit)
            }
            Detail::TwoPoor { v, u, w } => {
                let mut converged = false;
                for _ in 0..4 {
                    for p in [u, w] {
                        if let Norm::Exposed = self.normalise_poor(&mut d, p, v)? {
                            return Ok(self.redirect_three(d, p, cand.kind));
                        }
                    }
                    let done = |st: &Self, p: Vertex| {
                        st.poor_at(p, v).is_some_and(|(_, far, _)| st.singleton(p).0 == far)
                    };
                    if done(self, u) && done(self, w) {
                        converged = true;
                        break;
                    }
                }
                if !converged {
                    return Err(violation(d.kind, v, "poor neighbours could not be normalised together"));
                }
                let (uv, uu1, uu2) = self.poor_at(u, v).expect("normalised");
                let (wv, ww1, ww2) = self.poor_at(w, v).expect("normalised");
                let (u1, u2) = (self.other(uu1, u), self.other(uu2, u));
                let (w1, w2) = (self.other(ww1, w), self.other(ww2, w));
                if u2 == w || w2 == u {
                    return Err(violation(d.kind, v, "poor neighbours are adjacent"));
                }
                let alpha = self.colour(uv);
                let beta = self.colour(wv);
                for (r, x) in [("v", v), ("u", u), ("w", w), ("u1", u1), ("u2", u2), ("w1", w1), ("w2", w2)] {
                    d.name(r, x);
                }
                self.remove_vertex(&mut d, u);
                self.remove_vertex(&mut d, w);
                let vu2 = self.create_edge(&mut d, v, u2, true, alpha);
                let vw2 = self.create_edge(&mut d, v, w2, true, beta);
                let x = self.create_vertex(&mut d);
                d.name("x", x);
                let xu1 = self.create_edge(&mut d, x, u1, true, Colour::Blue);
                let xw1 = self.create_edge(&mut d, x, w1, true, Colour::Red);
                Roles::TwoPoor {
                    u: [uv, uu1, uu2],
                    w: [wv, ww1, ww2],
                    vu2,
                    vw2,
                    xu1,
                    xw1,
                }
            }
            Detail::TwoAndPoor { v, u, w } => {
                if let Norm::Exposed = self.normalise_poor(&mut d, w, v)? {
                    return Ok(self.redirect_three(d, w, cand.kind));
                }
                let [p, q] = self.two_slots(u).expect("2-vertex");
                let (uv, uv1) = if self.other(p, u) == v { (p, q) } else { (q, p) };
                let v1 = self.other(uv1, u);
                let (wv, wv2, wv3) = self.poor_at(w, v).expect("normalised");
                let (v2, v3) = (self.other(wv2, w), self.other(wv3, w));
                let gamma = self.colour(wv);
                for (r, x) in [("v", v), ("u", u), ("w", w), ("v1", v1), ("v2", v2), ("v3", v3)] {
                    d.name(r, x);
                }
                self.remove_vertex(&mut d, u);
                self.remove_vertex(&mut d, w);
                let vv3 = self.create_edge(&mut d, v, v3, true, gamma);
                let x = self.create_vertex(&mut d);
                d.name("x", x);
                let xv1 = self.create_edge(&mut d, x, v1, true, Colour::Blue);
                let xv2 = self.create_edge(&mut d, x, v2, true, Colour::Red);
                Roles::TwoAndPoor {
                    uv,
                    uv1,
                    wv,
                    wv2,
                    wv3,
                    vv3,
                    xv1,
                    xv2,
                }
            }
            Detail::MParity { q, e } => {
                let far = self.other(e, q);
                d.name("v", q);
                d.name("u", far);
                self.remove_edge(&mut d, e);
                Roles::MParity { e, far }
            }
            Detail::MPair { v, e1, e2 } => {
                let (u, w) = (self.other(e1, v), self.other(e2, v));
                d.name("v", v);
                d.name("u", u);
                d.name("w", w);
                self.remove_edge(&mut d, e1);
                self.remove_edge(&mut d, e2);
                let x = self.create_vertex(&mut d);
                d.name("x", x);
                let xu = self.create_edge(&mut d, x, u, true, Colour::Blue);
                let xw = self.create_edge(&mut d, x, w, true, Colour::Red);
                Roles::MPair { e1, e2, xu, xw }
            }
            Detail::MTwo { v, e, w } => {
                let u = self.other(e, v);
                let [p, q] = self.two_slots(w).expect("2-vertex");
                let (vw, wv2) = if self.other(p, w) == v { (p, q) } else { (q, p) };
                let v2 = self.other(wv2, w);
                for (r, x) in [("v", v), ("u", u), ("w", w), ("v'", v2)] {
                    d.name(r, x);
                }
                self.remove_edge(&mut d, e);
                self.remove_vertex(&mut d, w);
                let f = (u != v2).then(|| self.create_edge(&mut d, u, v2, false, Colour::Blue));
                Roles::MTwo { v, e, vw, wv2, f }
            }
            Detail::MPoor { v, e, w } => {
                if let Norm::Exposed = self.normalise_poor(&mut d, w, v)? {
                    return Ok(self.redirect_three(d, w, cand.kind));
                }
                let u = self.other(e, v);
                let (vw, wv2, ws) = self.poor_at(w, v).expect("normalised");
                let (v2, s) = (self.other(wv2, w), self.other(ws, w));
                for (r, x) in [("v", v), ("u", u), ("w", w), ("v'", v2), ("s", s)] {
                    d.name(r, x);
                }
                let gamma = self.colour(vw);
                self.remove_edge(&mut d, e);
                self.remove_vertex(&mut d, w);
                let vs = self.create_edge(&mut d, v, s, true, gamma);
                let f = (u != v2).then(|| self.create_edge(&mut d, u, v2, false, Colour::Blue));
                Roles::MPoor {
                    v,
                    e,
                    vw,
                    wv2,
                    ws,
                    vs,
                    f,
                }
            }
        };
        Ok(d.finish(self, roles))
    }
}
