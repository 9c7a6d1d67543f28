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

//! Backward direction: growing the decomposition back.

use std::collections::BTreeMap;

use super::apply::{violation, Draft};
use super::rules::ReductionKind;
use super::state::{BalancerState, Slot};
use super::trace::{Roles, TraceRecord};
use crate::decomposition::Colour;
use crate::error::Result;
use crate::graph::Vertex;

/// Outcome of [`BalancerState::reconstruct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstructed {
    /// The record's graph is restored and balanced.
    Done,
    /// The restored decomposition was not balanced, but swaps exposed a
    /// 3-vertex whose singleton ends at a small vertex. That reduction has
    /// been applied and must be solved before continuing.
    Redirected(Box<TraceRecord>),
}

impl BalancerState {
    fn minority(&self, v: Vertex) -> Colour {
        if self.colour_degree(v, Colour::Blue) <= self.colour_degree(v, Colour::Red) {
            Colour::Blue
        } else {
            Colour::Red
        }
    }

    /// Kills the record's created edges and vertices, revives the removed
    /// ones and colours each removed edge as given.
    fn restore(&mut self, rec: &TraceRecord, colours: &[(Slot, Colour)]) {
        debug_assert_eq!(colours.len(), rec.plan.removed.len());
        for &s in &rec.plan.created {
            self.kill_edge(s);
        }
        for &x in &rec.created_vertices {
            self.kill_vertex(x);
        }
        for &v in &rec.removed_vertices {
            self.revive_vertex(v);
        }
        for &(s, c) in colours {
            self.revive_edge(s, c);
        }
    }

    /// Swap during reconstruction; the partner's ends join the named set.
    fn named_swap(&mut self, rec: &mut TraceRecord, s: Slot) -> Result<Slot> {
        let f = self.swap(s)?;
        let d = self.slot(f).clone();
        for x in [d.u, d.v] {
            if !rec.is_named(x) {
                rec.named.push(("z", x));
            }
        }
        Ok(f)
    }

    fn undo(&mut self, rec: &mut TraceRecord) -> Result<()> {
        let roles = rec.plan.roles.clone();
        match roles {
            Roles::TwoVertex {
                keep,
                bal,
                y,
                coincident,
            } => {
                let m = if coincident { Colour::Blue } else { self.minority(y) };
                self.restore(rec, &[(keep, m.other()), (bal, m)]);
            }
            Roles::Shared {
                ua,
                uv,
                wb,
                wv,
                xa,
                xb,
            } => {
                let (alpha, beta) = (self.colour(xa), self.colour(xb));
                self.restore(rec, &[(ua, alpha), (uv, beta), (wb, beta), (wv, alpha)]);
            }
            Roles::Three {
                single,
                dbl,
                joined,
                crit,
            } => {
                if let Some(v) = crit {
                    let gamma = self.colour(joined);
                    if self.colour_degree(v, gamma) < 2 {
                        self.named_swap(rec, joined)?;
                        rec.case_tag = Some("2".into());
                    } else {
                        rec.case_tag = Some("1".into());
                    }
                }
                let gamma = self.colour(joined);
                let mut colours: Vec<(Slot, Colour)> = rec
                    .plan
                    .removed
                    .iter()
                    .map(|&s| (s, if dbl.contains(&s) { gamma } else { gamma.other() }))
                    .collect();
                colours.sort_unstable();
                debug_assert!(colours.iter().any(|&(s, _)| s == single));
                self.restore(rec, &colours);
            }
            Roles::TwoPoor {
                u,
                w,
                vu2,
                vw2,
                xu1,
                xw1,
            } => {
                let a = self.colour(vw2);
                let b = a.other();
                if self.colour(vu2) == a {
                    // Both small-side edges in `a`: name the poor vertex
                    // whose auxiliary edge is in `a` as W.
                    let (big_u, big_w) = if self.colour(xw1) == a { (u, w) } else { (w, u) };
                    let [uv, uu1, uu2] = big_u;
                    let [wv, ww1, ww2] = big_w;
                    let mut colours = vec![(uv, a), (uu2, a), (wv, a), (ww2, a), (uu1, b), (ww1, b)];
                    colours.sort_unstable();
                    self.restore(rec, &colours);
                    self.named_swap(rec, ww1)?;
                    rec.case_tag = Some("1".into());
                } else {
                    let [uv, uu1, uu2] = u;
                    let [wv, ww1, ww2] = w;
                    let mut colours = vec![(uu1, a), (wv, a), (ww2, a), (ww1, b), (uv, b), (uu2, b)];
                    colours.sort_unstable();
                    self.restore(rec, &colours);
                    if self.colour(xu1) == a {
                        rec.case_tag = Some("2.i".into());
                    } else {
                        self.named_swap(rec, uu1)?;
                        self.named_swap(rec, ww1)?;
                        rec.case_tag = Some("2.ii".into());
                    }
                }
            }
            Roles::TwoAndPoor {
                uv,
                uv1,
                wv,
                wv2,
                wv3,
                vv3,
                xv1: _,
                xv2,
            } => {
                let a = self.colour(vv3);
                let b = a.other();
                if self.colour(xv2) == b {
                    let mut colours = vec![(wv, a), (wv3, a), (uv1, a), (wv2, b), (uv, b)];
                    colours.sort_unstable();
                    self.restore(rec, &colours);
                    rec.case_tag = Some("1".into());
                } else {
                    let mut colours = vec![(uv, a), (wv3, a), (wv, a), (uv1, b), (wv2, b)];
                    colours.sort_unstable();
                    self.restore(rec, &colours);
                    self.named_swap(rec, wv2)?;
                    rec.case_tag = Some("2".into());
                }
            }
            Roles::MParity { e, far } => {
                let m = self.minority(far);
                self.restore(rec, &[(e, m)]);
            }
            Roles::MPair { e1, e2, xu, xw } => {
                let (cu, cw) = (self.colour(xu), self.colour(xw));
                self.restore(rec, &[(e1, cu), (e2, cw)]);
            }
            Roles::MTwo { v, e, vw, wv2, f } => match f {
                None => {
                    let a = self.minority(v);
                    self.restore(rec, &[(e, a), (vw, a), (wv2, a.other())]);
                    rec.case_tag = Some("u=v'".into());
                }
                Some(f) => {
                    let a = self.colour(f);
                    self.restore(rec, &[(e, a), (vw, a.other()), (wv2, a)]);
                    rec.case_tag = Some("u!=v'".into());
                }
            },
            Roles::MPoor {
                v,
                e,
                vw,
                wv2,
                ws,
                vs,
                f,
            } => match f {
                None => {
                    let a = self.colour(vs);
                    let b = a.other();
                    let mut colours = vec![(e, a), (vw, a), (ws, a), (wv2, b)];
                    colours.sort_unstable();
                    self.restore(rec, &colours);
                    if self.colour_degree(v, b) < 2 {
                        self.named_swap(rec, wv2)?;
                        self.set_colour(e, b);
                        rec.case_tag = Some("u=v',swap".into());
                    } else {
                        rec.case_tag = Some("u=v'".into());
                    }
                }
                Some(f) => {
                    let a = self.colour(f);
                    let b = a.other();
                    if self.colour(vs) == b {
                        let mut colours = vec![(e, a), (wv2, a), (vw, b), (ws, b)];
                        colours.sort_unstable();
                        self.restore(rec, &colours);
                        rec.case_tag = Some("1".into());
                    } else {
                        let mut colours = vec![(e, a), (vw, a), (ws, a), (wv2, b)];
                        colours.sort_unstable();
                        self.restore(rec, &colours);
                        self.named_swap(rec, wv2)?;
                        rec.case_tag = Some("2".into());
                    }
                }
            },
        }
        Ok(())
    }

    /// Poor vertices whose configuration can explain a failed
    /// reconstruction of `rec`.
    fn fallback_vertices(rec: &TraceRecord) -> Vec<Vertex> {
        let roles: &[&str] = match rec.kind {
            ReductionKind::CriticalTwoPoor => &["u", "w"],
            ReductionKind::CriticalTwoVertexAndPoor | ReductionKind::MEdgeCriticalPoor => &["w"],
            _ => &[],
        };
        roles.iter().filter_map(|r| rec.named_vertex(r)).collect()
    }

    /// Swaps the singleton of the 3-vertex `p` until it ends at a small
    /// vertex, then applies the standard 3-reduction there.
    fn expose_and_reduce(&mut self, p: Vertex, from: ReductionKind) -> Result<Option<TraceRecord>> {
        if self.three_type(p).is_none() {
            return Ok(None);
        }
        let mut d = Draft::new(ReductionKind::ThreeVertexSmallSingleton, p, self.measure());
        for _ in 0..3 {
            let (single, _) = self.singleton(p);
            if self.is_small(self.other(single, p)) {
                return Ok(Some(self.redirect_three(d, p, from)));
            }
            self.logged_swap(&mut d, single)?;
        }
        Ok(None)
    }

    /// Undoes `rec`, which must be the most recent record still applied,
    /// and checks that every vertex it touched is balanced (or no worse
    /// than before, for vertices that were already unbalanced).
    pub fn reconstruct(&mut self, rec: &mut TraceRecord) -> Result<Reconstructed> {
        self.touched = Some(BTreeMap::new());
        let undone = self.undo(rec);
        let touched = self.touched.take().unwrap_or_default();
        undone?;
        let c = self.c();
        let unbalanced: Vec<Vertex> = touched
            .iter()
            .filter(|&(&v, &before)| self.is_alive(v) && self.imbalance_at(v) > c.max(before.unwrap_or(0)))
            .map(|(&v, _)| v)
            .collect();
        if unbalanced.is_empty() {
            for (&v, &before) in &touched {
                let unchanged = before == Some(self.imbalance_at(v));
                if self.is_alive(v) && !rec.is_named(v) && !self.is_small(v) && !unchanged {
                    return Err(violation(rec.kind, rec.pivot, format!("unnamed vertex v{v} changed")));
                }
            }
            return Ok(Reconstructed::Done);
        }
        let saved: Vec<Colour> = self.slots.iter().map(|d| d.colour).collect();
        for p in Self::fallback_vertices(rec) {
            if let Some(r) = self.expose_and_reduce(p, rec.kind)? {
                return Ok(Reconstructed::Redirected(Box::new(r)));
            }
        }
        if c == 4 {
            return Err(violation(
                rec.kind,
                rec.pivot,
                format!("v{} left with imbalance {}", unbalanced[0], self.imbalance_at(unbalanced[0])),
            ));
        }
        for (s, colour) in saved.into_iter().enumerate() {
            if self.slots[s].alive {
                self.set_colour(s, colour);
            }
        }
        Ok(Reconstructed::Done)
    }
}
