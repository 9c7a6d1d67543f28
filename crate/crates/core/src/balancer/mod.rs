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

//! Rebalancing a split decomposition by reduction and reconstruction.
//!
//! The driver repeatedly finds a reducible configuration, shrinks the graph
//! and pushes a [`TraceRecord`]. Once only small vertices remain and no
//! extra edges are left, any decomposition is balanced, and the records are
//! undone in reverse order, each producing a balanced decomposition of the
//! larger graph from the smaller one.
//!
//! A few reconstructions rely on poor 3-vertices sitting in a particular
//! way in the trees. When they do not, swapping the poor vertex's singleton
//! edge moves it onto its small neighbour; the driver then applies the
//! plain 3-vertex reduction there and solves that smaller graph instead.
//!
//! Infinite graphs are out of scope.

mod apply;
mod charge;
mod rebuild;
mod rules;
mod state;
mod trace;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use charge::{charge_audit, completeness_probe, ChargeReport, ProbeOutcome, CHARGE_SCALE};
pub use rebuild::Reconstructed;
pub use rules::{ReductionCandidate, ReductionKind};
pub use state::{BalancerState, Measure};
pub use trace::{CreatedEdge, RemovedEdge, TraceRecord};

use crate::decomposition::{DoubleTreeDecomposition, SplitDecomposition};
use crate::error::{Error, Result, StuckReport};

/// The only value of `c` with a proven guarantee.
pub const DEFAULT_C: usize = 4;

/// Order in which reduction kinds are tried.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Priority {
    /// [`ReductionKind::PRIORITY`].
    #[default]
    Canonical,
    /// A fresh random order at every step, from the given seed.
    Shuffled(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceOptions {
    pub c: usize,
    pub priority: Priority,
    /// Check the measure, the recorded graph deltas and the trees after
    /// every step.
    pub audit: bool,
}

impl Default for BalanceOptions {
    fn default() -> Self {
        BalanceOptions {
            c: DEFAULT_C,
            priority: Priority::Canonical,
            audit: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BalanceStats {
    /// Applied reductions per kind, redirects included under their final
    /// kind.
    pub applied: BTreeMap<ReductionKind, usize>,
    /// Reductions replaced during normalisation.
    pub redirects: usize,
    /// Reconstructions that failed and were replaced.
    pub fallbacks: usize,
    /// True when no reduction applied to a non-base graph and the run
    /// continued without a guarantee (only for `c != 4`).
    pub stuck: bool,
}

#[derive(Clone, Debug)]
pub struct BalanceRun<'g> {
    pub decomposition: SplitDecomposition<'g>,
    /// Every applied reduction in order, with case tags filled in.
    pub trace: Vec<TraceRecord>,
    pub stats: BalanceStats,
}

/// Rebalances `split` so that every vertex has imbalance at most `c`,
/// keeping the `A`-classes spanning trees. Only `c = 4` is guaranteed;
/// other values run best effort.
pub fn balance<'g>(split: &SplitDecomposition<'g>, c: usize) -> Result<SplitDecomposition<'g>> {
    let opts = BalanceOptions {
        c,
        ..BalanceOptions::default()
    };
    Ok(balance_with(split, &opts)?.decomposition)
}

/// [`balance`] for a double tree with no extra edges.
pub fn balance_double_tree<'g>(d: &DoubleTreeDecomposition<'g>) -> Result<DoubleTreeDecomposition<'g>> {
    let split = SplitDecomposition::from_double_tree(d);
    let out = balance(&split, DEFAULT_C)?;
    Ok(DoubleTreeDecomposition::new(split.graph(), out.into_colouring()))
}

fn audit_apply(state: &BalancerState, before: &[(crate::graph::EdgeId, usize, usize, bool)], rec: &TraceRecord) -> Result<()> {
    let fail = |reason: String| apply::violation(rec.kind, rec.pivot, reason);
    if rec.measure_after >= rec.measure_before {
        return Err(fail(format!("measure {:?} -> {:?}", rec.measure_before, rec.measure_after)));
    }
    let mut expected: Vec<_> = before
        .iter()
        .copied()
        .filter(|t| !rec.removed_edges.iter().any(|r| r.id == t.0))
        .collect();
    expected.extend(rec.created_edges.iter().map(|e| (e.id, e.u, e.v, e.in_a)));
    expected.sort_unstable();
    if expected != state.edge_set() {
        return Err(fail("recorded delta does not match the graph".into()));
    }
    if !state.check_trees() {
        return Err(fail("tree classes broken after reduction".into()));
    }
    Ok(())
}

/// Full run with options, trace and statistics.
pub fn balance_with<'g>(split: &SplitDecomposition<'g>, opts: &BalanceOptions) -> Result<BalanceRun<'g>> {
    let mut state = BalancerState::new(split, opts.c)?;
    let original = state.edge_set();
    let strict = opts.c == DEFAULT_C;
    let mut rng = match opts.priority {
        Priority::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Priority::Canonical => None,
    };
    let mut order = ReductionKind::PRIORITY;
    let mut trace: Vec<TraceRecord> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut stats = BalanceStats::default();
    let g = split.graph();
    let budget = 64 * (g.vertex_count() + g.edge_count()) + 1024;
    let mut steps = 0usize;

    let push = |rec: TraceRecord, trace: &mut Vec<TraceRecord>, stack: &mut Vec<usize>, stats: &mut BalanceStats| {
        *stats.applied.entry(rec.kind).or_default() += 1;
        if rec.redirected_from.is_some() {
            stats.redirects += 1;
        }
        stack.push(trace.len());
        trace.push(rec);
    };

    'outer: loop {
        loop {
            if let Some(rng) = rng.as_mut() {
                order.shuffle(rng);
            }
            let Some(cand) = state.find_reduction_in(&order) else { break };
            steps += 1;
            if steps > budget {
                return Err(Error::domain("reduction step budget exceeded"));
            }
            let before = opts.audit.then(|| state.edge_set());
            let rec = state.apply_reduction(&cand)?;
            if let Some(before) = before {
                audit_apply(&state, &before, &rec)?;
            }
            push(rec, &mut trace, &mut stack, &mut stats);
        }
        if !state.is_base_case() {
            if strict {
                return Err(Error::CompletenessViolation(Box::new(stuck_report(&state)?)));
            }
            stats.stuck = true;
        }
        while let Some(i) = stack.pop() {
            match state.reconstruct(&mut trace[i])? {
                Reconstructed::Done => {
                    if opts.audit && !state.check_trees() {
                        let r = &trace[i];
                        return Err(apply::violation(r.kind, r.pivot, "tree classes broken after reconstruction"));
                    }
                }
                Reconstructed::Redirected(rec) => {
                    stats.fallbacks += 1;
                    push(*rec, &mut trace, &mut stack, &mut stats);
                    continue 'outer;
                }
            }
        }
        break;
    }

    if state.edge_set() != original {
        return Err(Error::domain("balancer did not restore the input graph"));
    }
    let decomposition = split.with_colouring(state.colouring());
    debug_assert!(decomposition.is_valid());
    Ok(BalanceRun {
        decomposition,
        trace,
        stats,
    })
}

/// Charge deficits of the alive part of the overlay.
fn stuck_report(state: &BalancerState) -> Result<StuckReport> {
    let (g, a, colouring, back) = state.dense_snapshot();
    let split = SplitDecomposition::new(&g, a, colouring);
    let charges = charge_audit(&split, state.c())?;
    Ok(StuckReport {
        alive_vertices: state.measure().vertices,
        m_edges: state.measure().m_edges,
        deficient: charges.deficient().into_iter().map(|(v, q)| (back[v], q)).collect(),
    })
}
