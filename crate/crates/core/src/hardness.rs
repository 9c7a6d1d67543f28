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

//! Reduction from "two edge-disjoint Hamiltonian cycles in a 4-regular
//! graph" to "perfectly balanced double tree decomposition".
//!
//! Splitting a vertex `v` of a 4-regular graph into two vertices `x`, `y`
//! of degree 2 leaves `2(n - 1)` edges on `n + 1` vertices. A perfectly
//! balanced decomposition of the result gives each vertex half its degree
//! in each tree, so both trees are Hamiltonian `x`-`y` paths, and merging
//! `x` with `y` closes them into two edge-disjoint Hamiltonian cycles.
//! Conversely a cycle pair yields such paths for a suitable splitting, and
//! there are only three ways to pair up the four edges at `v`.

use std::thread;

use crate::decomposition::{imbalance, Colour, Colouring, DoubleTreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Partition, Vertex};
use crate::oracle::{self, is_hamiltonian_cycle};
use crate::packing::{pack_double_tree, PackOutcome};

/// The three ways to split four edge slots into two pairs. The first pair
/// stays at `v`, the second moves to the new vertex.
pub const PAIRINGS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

fn require_four_regular(g: &MultiGraph) -> Result<()> {
    if g.vertex_count() < 2 {
        return Err(Error::domain("a 4-regular graph needs at least two vertices"));
    }
    match g.vertices().find(|&v| g.degree(v).unwrap_or(0) != 4) {
        Some(v) => Err(Error::domain(format!(
            "graph is not 4-regular: vertex {v} has degree {}",
            g.degree(v).unwrap_or(0)
        ))),
        None => Ok(()),
    }
}

/// The vertex every gadget splits: the smallest index.
pub fn pivot(_g: &MultiGraph) -> Vertex {
    1
}

/// Splits `v` into `x = v` and `y = n + 1`. The four edges at `v`, taken
/// in id order, are shared out by `PAIRINGS[pairing]`. Edge ids are kept.
pub fn split_vertex(g: &MultiGraph, v: Vertex, pairing: usize) -> Result<MultiGraph> {
    if g.degree(v)? != 4 {
        return Err(Error::domain(format!("vertex {v} has degree {}, not 4", g.degree(v)?)));
    }
    let Some(&[_, moved]) = PAIRINGS.get(pairing) else {
        return Err(Error::domain(format!("pairing {pairing} is not one of 0, 1, 2")));
    };
    let slots: Vec<EdgeId> = g.incident(v).map(|e| e.id).collect();
    let moved = [slots[moved[0]], slots[moved[1]]];
    let y = g.vertex_count() + 1;
    let mut out = MultiGraph::new(y);
    for e in g.edges() {
        let (mut a, mut b) = (e.u, e.v);
        if moved.contains(&e.id) {
            if a == v {
                a = y;
            } else {
                b = y;
            }
        }
        out.add_edge_with_id(e.id, a, b)?;
    }
    Ok(out)
}

/// `G_1, G_2, G_3`: the pivot split by each pairing in order.
pub fn gadget_family(g: &MultiGraph) -> Result<[MultiGraph; 3]> {
    require_four_regular(g)?;
    let v = pivot(g);
    Ok([split_vertex(g, v, 0)?, split_vertex(g, v, 1)?, split_vertex(g, v, 2)?])
}

/// What happened to one gadget graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetOutcome {
    /// The packer refuted the double tree property.
    NotDoubleTree(Partition),
    /// A double tree without a perfectly balanced decomposition.
    NoPerfect,
    Perfect(Colouring),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionDecision {
    pub graphs: [MultiGraph; 3],
    pub outcomes: [GadgetOutcome; 3],
}

impl ReductionDecision {
    pub fn answer(&self) -> bool {
        self.witness().is_some()
    }

    /// First gadget index with a perfectly balanced decomposition.
    pub fn witness(&self) -> Option<(usize, &Colouring)> {
        self.outcomes.iter().enumerate().find_map(|(i, o)| match o {
            GadgetOutcome::Perfect(c) => Some((i, c)),
            _ => None,
        })
    }
}

fn decide_gadget(h: &MultiGraph, jobs: usize) -> Result<GadgetOutcome> {
    Ok(match pack_double_tree(h) {
        PackOutcome::Infeasible(p) => GadgetOutcome::NotDoubleTree(p),
        PackOutcome::Feasible(_) => match oracle::pbdt_with_jobs(h, jobs)? {
            Some(c) => GadgetOutcome::Perfect(c),
            None => GadgetOutcome::NoPerfect,
        },
    })
}

/// Decides all three gadgets, one thread each.
pub fn decide_via_reduction_detailed(g: &MultiGraph) -> Result<ReductionDecision> {
    let graphs = gadget_family(g)?;
    let results: Vec<Result<GadgetOutcome>> = thread::scope(|s| {
        let handles: Vec<_> = graphs.iter().map(|h| s.spawn(move || decide_gadget(h, 1))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("gadget worker panicked"))
            .collect()
    });
    let mut outcomes = Vec::with_capacity(3);
    for r in results {
        outcomes.push(r?);
    }
    let outcomes: [GadgetOutcome; 3] = outcomes.try_into().expect("three gadgets");
    Ok(ReductionDecision { graphs, outcomes })
}

/// Whether `g` has two edge-disjoint Hamiltonian cycles, decided through
/// the gadgets.
pub fn decide_via_reduction(g: &MultiGraph) -> Result<bool> {
    Ok(decide_via_reduction_detailed(g)?.answer())
}

fn check_pair(g: &MultiGraph, c1: &[EdgeId], c2: &[EdgeId]) -> bool {
    is_hamiltonian_cycle(g, c1) && is_hamiltonian_cycle(g, c2) && !c1.iter().any(|e| c2.contains(e))
}

/// Turns a perfectly balanced decomposition of `G_{pairing}` into two
/// edge-disjoint Hamiltonian cycles of `g`, checked before returning.
pub fn map_witness(g: &MultiGraph, pairing: usize, witness: &Colouring) -> Result<(Vec<EdgeId>, Vec<EdgeId>)> {
    require_four_regular(g)?;
    let h = split_vertex(g, pivot(g), pairing)?;
    let d = DoubleTreeDecomposition::new(&h, witness.clone());
    if !d.is_valid() {
        return Err(Error::domain("witness is not a double tree decomposition of the gadget"));
    }
    if imbalance(&d)?.max_imbalance() != 0 {
        return Err(Error::domain("witness is not perfectly balanced"));
    }
    // Ids are shared with `g`, so merging x and y is just reading the
    // classes against `g`.
    let c1 = witness.class(Colour::Blue);
    let c2 = witness.class(Colour::Red);
    if !check_pair(g, &c1, &c2) {
        return Err(Error::domain("merged paths are not two edge-disjoint Hamiltonian cycles"));
    }
    Ok((c1, c2))
}

/// Reverse direction: the pairings whose gadget receives a perfectly
/// balanced decomposition from the cycle pair, with that decomposition.
/// These are the pairings that give `x` one edge of each cycle; there are
/// always two of them.
pub fn embed_cycle_pair(g: &MultiGraph, c1: &[EdgeId], c2: &[EdgeId]) -> Result<Vec<(usize, Colouring)>> {
    require_four_regular(g)?;
    if !check_pair(g, c1, c2) {
        return Err(Error::domain("not two edge-disjoint Hamiltonian cycles"));
    }
    let colouring: Colouring = c1
        .iter()
        .map(|&e| (e, Colour::Blue))
        .chain(c2.iter().map(|&e| (e, Colour::Red)))
        .collect();
    let mut out = Vec::new();
    for pairing in 0..PAIRINGS.len() {
        let h = split_vertex(g, pivot(g), pairing)?;
        let d = DoubleTreeDecomposition::new(&h, colouring.clone());
        if d.is_valid() && imbalance(&d)?.max_imbalance() == 0 {
            out.push((pairing, colouring.clone()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{circulant, complete_graph, two_cut_gadget};

    #[test]
    fn k5_split_shape() {
        let g = complete_graph(5);
        let h = split_vertex(&g, 1, 0).unwrap();
        assert_eq!(h.vertex_count(), 6);
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(h.degree(1).unwrap(), 2);
        assert_eq!(h.degree(6).unwrap(), 2);
        for v in 2..=5 {
            assert_eq!(h.degree(v).unwrap(), 4);
        }
    }

    #[test]
    fn pairings_differ() {
        let [a, b, c] = gadget_family(&complete_graph(5)).unwrap();
        assert!(a != b && b != c && a != c);
    }

    #[test]
    fn parallel_slots_can_separate() {
        // Vertex 1 has a double edge to 2 and single edges to 3 and 4.
        let g = MultiGraph::from_edges(
            4,
            [(1, 2), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (3, 4)],
        )
        .unwrap();
        let h = split_vertex(&g, 1, 1).unwrap();
        assert_eq!(h.multiplicity(1, 2), 1);
        assert_eq!(h.multiplicity(5, 2), 1);
    }

    #[test]
    fn rejects_non_four_regular() {
        assert!(gadget_family(&complete_graph(4)).is_err());
        assert!(split_vertex(&complete_graph(4), 1, 0).is_err());
        assert!(split_vertex(&complete_graph(5), 1, 3).is_err());
    }

    #[test]
    fn k5_decides_yes_and_maps_back() {
        let g = complete_graph(5);
        let d = decide_via_reduction_detailed(&g).unwrap();
        let (i, w) = d.witness().expect("K5 has a cycle pair");
        let (c1, c2) = map_witness(&g, i, w).unwrap();
        assert!(is_hamiltonian_cycle(&g, &c1) && is_hamiltonian_cycle(&g, &c2));
    }

    #[test]
    fn c7_decides_yes() {
        assert!(decide_via_reduction(&circulant(7, &[1, 2])).unwrap());
    }

    #[test]
    fn two_cut_gadget_decides_no() {
        let g = two_cut_gadget();
        assert!(!decide_via_reduction(&g).unwrap());
        assert!(oracle::ham_cycle_pair(&g).unwrap().is_none());
    }

    #[test]
    fn cycle_pair_embeds_in_two_gadgets() {
        let g = complete_graph(5);
        let (c1, c2) = oracle::ham_cycle_pair(&g).unwrap().unwrap();
        let emb = embed_cycle_pair(&g, &c1, &c2).unwrap();
        assert_eq!(emb.len(), 2);
        for (i, w) in &emb {
            assert!(map_witness(&g, *i, w).is_ok());
        }
    }

    #[test]
    fn unbalanced_witness_is_rejected() {
        let g = complete_graph(5);
        let h = split_vertex(&g, 1, 0).unwrap();
        let any = oracle::enumerate_double_tree_decompositions(&h, &h.edges().iter().map(|e| e.id).collect::<Vec<_>>())
            .unwrap()
            .into_iter()
            .find(|c| imbalance(&DoubleTreeDecomposition::new(&h, c.clone())).unwrap().max_imbalance() > 0)
            .unwrap();
        assert!(map_witness(&g, 0, &any).is_err());
    }
}
