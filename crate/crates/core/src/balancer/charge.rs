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

//! Charge redistribution behind the completeness of the rule set.
//!
//! Every vertex starts with its degree in `A`. Along each `A`-edge a big
//! vertex sends 1 to a 2-vertex, 1/2 to a poor or bad 3-vertex and 1/3 to a
//! rich 3-vertex. Charges are kept as integer multiples of 1/6.

use super::state::BalancerState;
use crate::decomposition::{three_vertex_type, SplitDecomposition, ThreeVertexType, VertexClass};
use crate::error::{Error, Result, StuckReport};
use crate::graph::{MultiGraph, Vertex};

/// Charges are stored multiplied by this.
pub const CHARGE_SCALE: i64 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeReport {
    /// Initial charge of each vertex, index 0 unused.
    pub initial: Vec<i64>,
    /// Charge after discharging, index 0 unused.
    pub final_charge: Vec<i64>,
}

impl ChargeReport {
    pub fn total(&self) -> i64 {
        self.final_charge.iter().sum()
    }

    /// `6 (4n - 4)`, the scaled value of `2 e(A)`.
    pub fn expected_total(&self) -> i64 {
        let n = self.final_charge.len() as i64 - 1;
        CHARGE_SCALE * (4 * n - 4)
    }

    pub fn sum_matches(&self) -> bool {
        self.total() == self.expected_total() && self.initial.iter().sum::<i64>() == self.total()
    }

    /// Vertices whose final charge is below 4, with their scaled charge.
    pub fn deficient(&self) -> Vec<(Vertex, i64)> {
        (1..self.final_charge.len())
            .filter(|&v| self.final_charge[v] < 4 * CHARGE_SCALE)
            .map(|v| (v, self.final_charge[v]))
            .collect()
    }
}

/// Scaled amount a big vertex sends along one edge to `u`.
fn share(g: &MultiGraph, u: Vertex, c: usize) -> i64 {
    let d = g.degree(u).unwrap_or(0);
    match d {
        2 => CHARGE_SCALE,
        3 => {
            let nb = g.neighbours(u);
            let mut nbrs = [(0, 0); 3];
            for (slot, &x) in nbrs.iter_mut().zip(&nb) {
                *slot = (x, g.degree(x).unwrap_or(0));
            }
            match three_vertex_type(nbrs, c) {
                ThreeVertexType::Poor | ThreeVertexType::Bad => CHARGE_SCALE / 2,
                ThreeVertexType::Rich => CHARGE_SCALE / 3,
                ThreeVertexType::Irregular => 0,
            }
        }
        _ => 0,
    }
}

/// Runs the discharging rules on `split` with vertex classes taken from
/// the whole graph and charge moving along `A`-edges only.
pub fn charge_audit(split: &SplitDecomposition<'_>, c: usize) -> Result<ChargeReport> {
    let g = split.graph();
    let report = split.validate();
    if !report.is_valid() {
        return Err(Error::domain(format!("invalid split decomposition: {}", report.violations[0])));
    }
    let n = g.vertex_count();
    let mut initial = vec![0i64; n + 1];
    for e in g.edges().iter().filter(|e| split.is_tree_edge(e.id)) {
        initial[e.u] += CHARGE_SCALE;
        initial[e.v] += CHARGE_SCALE;
    }
    let mut final_charge = initial.clone();
    let big = |x: Vertex| VertexClass::of_degree(g.degree(x).unwrap_or(0), c).is_big();
    for e in g.edges().iter().filter(|e| split.is_tree_edge(e.id)) {
        for (from, to) in [(e.u, e.v), (e.v, e.u)] {
            if big(from) {
                let amount = share(g, to, c);
                final_charge[from] -= amount;
                final_charge[to] += amount;
            }
        }
    }
    Ok(ChargeReport { initial, final_charge })
}

/// Result of [`completeness_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    Ok,
    /// Some vertex is short of charge yet no reduction applies.
    Counterexample(StuckReport),
}

/// Checks that a reduction applies whenever some vertex ends below charge
/// 4, which is always the case outside the base case since the total is
/// `4n - 4`.
pub fn completeness_probe(split: &SplitDecomposition<'_>, c: usize) -> Result<ProbeOutcome> {
    let charges = charge_audit(split, c)?;
    let state = BalancerState::new(split, c)?;
    let deficient = charges.deficient();
    if deficient.is_empty() || state.is_base_case() || state.find_reduction().is_some() {
        return Ok(ProbeOutcome::Ok);
    }
    Ok(ProbeOutcome::Counterexample(StuckReport {
        alive_vertices: state.measure().vertices,
        m_edges: state.measure().m_edges,
        deficient,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{Colour, Colouring, DoubleTreeDecomposition};
    use crate::generate::doubled_star;

    fn star_split(g: &MultiGraph) -> SplitDecomposition<'_> {
        let colouring: Colouring = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id, Colour::BOTH[i % 2]))
            .collect();
        SplitDecomposition::from_double_tree(&DoubleTreeDecomposition::new(g, colouring))
    }

    #[test]
    fn doubled_star_by_hand() {
        let g = doubled_star(4);
        let r = charge_audit(&star_split(&g), 4).unwrap();
        assert_eq!(r.initial[1], 8 * CHARGE_SCALE);
        assert_eq!(r.final_charge[1], 0);
        for leaf in 2..=5 {
            assert_eq!(r.final_charge[leaf], 4 * CHARGE_SCALE);
        }
        assert!(r.sum_matches());
    }

    #[test]
    fn small_graph_keeps_degrees() {
        let g = doubled_star(2);
        let r = charge_audit(&star_split(&g), 4).unwrap();
        assert_eq!(r.initial, r.final_charge);
    }
}
