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

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treebalance::balancer::{balance_with, BalanceOptions, BalancerState, Priority, ReductionKind};
use treebalance::decomposition::{imbalance, Colour, Colouring, DoubleTreeDecomposition, SplitDecomposition};
use treebalance::generate::{doubled_path, pendant_triangle, random_double_tree, random_hub_double_tree};
use treebalance::graph::{EdgeId, MultiGraph, Vertex};
use treebalance::{balance, balance_double_tree, pack_double_tree};

use common::{check_run, instance};

fn colouring(pairs: &[(usize, u8)]) -> Colouring {
    pairs
        .iter()
        .map(|&(e, c)| (EdgeId(e), Colour::from_number(c).unwrap()))
        .collect()
}

fn state_of(g: &MultiGraph, col: Colouring) -> BalancerState {
    let d = DoubleTreeDecomposition::new(g, col);
    assert!(d.is_valid());
    BalancerState::new(&SplitDecomposition::from_double_tree(&d), 4).unwrap()
}

#[test]
fn double_edge_is_untouched() {
    let g = MultiGraph::from_edges(2, [(1, 2), (1, 2)]).unwrap();
    let d = DoubleTreeDecomposition::new(&g, colouring(&[(1, 1), (2, 2)]));
    let out = balance_double_tree(&d).unwrap();
    assert_eq!(out, d);
    assert_eq!(imbalance(&out).unwrap().max_imbalance(), 0);
}

#[test]
fn doubled_paths_are_base_cases() {
    for n in 2..=4 {
        let g = doubled_path(n);
        let col: Colouring = g.edges().iter().enumerate().map(|(i, e)| (e.id, Colour::BOTH[i % 2])).collect();
        let d = DoubleTreeDecomposition::new(&g, col);
        let out = balance_double_tree(&d).unwrap();
        assert_eq!(out, d);
        assert!(imbalance(&out).unwrap().max_imbalance() <= 2);
    }
}

#[test]
fn k4_ends_with_imbalance_one() {
    let g = MultiGraph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
    // Paths 1-2-3-4 and 3-1-4-2.
    let d = DoubleTreeDecomposition::new(&g, colouring(&[(1, 1), (4, 1), (6, 1), (2, 2), (3, 2), (5, 2)]));
    let out = balance_double_tree(&d).unwrap();
    assert!(out.is_valid());
    assert_eq!(imbalance(&out).unwrap().max_imbalance(), 1);
}

#[test]
fn pendant_triangle_stays_between_two_and_four() {
    let g = pendant_triangle();
    let split = pack_double_tree(&g).feasible().unwrap();
    let out = balance(&split, 4).unwrap();
    let x = imbalance(&out).unwrap().max_imbalance();
    assert!((2..=4).contains(&x), "{x}");
}

#[test]
fn star_plus_path() {
    let n = 50;
    let edges: Vec<(Vertex, Vertex)> = (2..=n).map(|v| (1, v)).chain((1..n).map(|v| (v, v + 1))).collect();
    let g = MultiGraph::from_edges(n, edges).unwrap();
    let col: Colouring = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id, if i < n - 1 { Colour::Blue } else { Colour::Red }))
        .collect();
    let split = SplitDecomposition::from_double_tree(&DoubleTreeDecomposition::new(&g, col));
    let run = balance_with(&split, &BalanceOptions { audit: true, ..Default::default() }).unwrap();
    check_run(&g, &split, &run).unwrap();
}

#[test]
fn doubly_joined_two_vertex_is_r1() {
    // Centre 1 with seven doubled spokes.
    let g = MultiGraph::from_edges(8, (2..=8).flat_map(|v| [(1, v), (1, v)])).unwrap();
    let col: Colouring = g.edges().iter().enumerate().map(|(i, e)| (e.id, Colour::BOTH[i % 2])).collect();
    let cand = state_of(&g, col).find_reduction().unwrap();
    assert_eq!((cand.kind, cand.pivot), (ReductionKind::TwoVertexCoincident, 2));
}

#[test]
fn two_vertex_at_even_big_vertices_is_r3() {
    // Hubs 1 and 2 joined twice; leaves 3..=8 adjacent to both hubs, so
    // both hubs have degree 8.
    let mut edges = vec![(1, 2), (1, 2)];
    edges.extend((3..=8).flat_map(|v| [(1, v), (2, v)]));
    let g = MultiGraph::from_edges(8, edges).unwrap();
    let col: Colouring = g
        .edges()
        .iter()
        .map(|e| (e.id, if e.id.0 == 1 || (e.id.0 > 2 && e.touches(1)) { Colour::Blue } else { Colour::Red }))
        .collect();
    let cand = state_of(&g, col).find_reduction().unwrap();
    assert_eq!((cand.kind, cand.pivot), (ReductionKind::TwoVertexParity, 3));
}

#[test]
fn critical_vertex_with_two_poor_neighbours_is_r8() {
    // Vertex 4 has degree 7; its neighbours 6 and 7 have degree 3 with
    // one small neighbour each. The last edge is an extra edge.
    let edges = [
        (2, 1, 1),
        (1, 5, 1),
        (3, 5, 1),
        (5, 4, 1),
        (6, 4, 1),
        (4, 7, 1),
        (1, 4, 2),
        (2, 4, 2),
        (3, 5, 2),
        (4, 5, 2),
        (5, 7, 2),
        (6, 7, 2),
        (5, 4, 1),
    ];
    let g = MultiGraph::from_edges(7, edges.iter().map(|&(u, v, _)| (u, v))).unwrap();
    let col: Colouring = g
        .edges()
        .iter()
        .zip(edges)
        .map(|(e, (_, _, c))| (e.id, Colour::from_number(c).unwrap()))
        .collect();
    let a: BTreeSet<EdgeId> = (1..=12).map(EdgeId).collect();
    let split = SplitDecomposition::new(&g, a, col);
    assert!(split.is_valid());
    assert_eq!(g.degree(4).unwrap(), 7);
    let state = BalancerState::new(&split, 4).unwrap();
    let cand = state.detect(ReductionKind::CriticalTwoPoor, 4).unwrap();
    assert_eq!(cand.pivot, 4);
    assert_eq!(state.find_reduction_in(&[ReductionKind::CriticalTwoPoor]).unwrap().pivot, 4);
}

#[test]
fn small_c_runs_best_effort() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [5, 20, 40] {
        let (g, col) = random_double_tree(n, &mut rng);
        let split = SplitDecomposition::from_double_tree(&DoubleTreeDecomposition::new(&g, col));
        for c in [2, 3, 6] {
            let out = balance(&split, c).unwrap();
            assert!(out.is_valid());
        }
    }
}

#[test]
fn trace_lines_follow_the_format() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (g, col) = random_hub_double_tree(30, 2, 0.8, &mut rng);
    let split = SplitDecomposition::from_double_tree(&DoubleTreeDecomposition::new(&g, col));
    let run = balance_with(&split, &BalanceOptions::default()).unwrap();
    assert!(!run.trace.is_empty());
    for r in &run.trace {
        let line = r.to_string();
        let toks: Vec<&str> = line.split(' ').collect();
        assert_eq!(toks.len(), 6, "{line}");
        assert_eq!(toks[0], "reduce");
        assert!(ReductionKind::parse(toks[1]).is_some(), "{line}");
        assert!(toks[2].starts_with("pivot=") && toks[3].starts_with("removed="));
        assert!(toks[4].starts_with("created=") && toks[5].starts_with("case="));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn every_run_is_valid_balanced_and_replays(
        seed in any::<u64>(),
        n in 2usize..60,
        hubs in 0usize..4,
        extra_quarter in 0usize..=4,
        shuffled in any::<bool>(),
    ) {
        let g = instance(seed, n, hubs, extra_quarter * n / 16);
        let split = pack_double_tree(&g).feasible().unwrap();
        let priority = if shuffled { Priority::Shuffled(seed) } else { Priority::Canonical };
        let run = balance_with(&split, &BalanceOptions { priority, audit: true, ..Default::default() }).unwrap();
        check_run(&g, &split, &run).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn input_edge_order_does_not_matter(seed in any::<u64>(), n in 3usize..40) {
        let g = instance(seed, n, 2, n / 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut pairs: Vec<(Vertex, Vertex)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        use rand::seq::SliceRandom;
        pairs.shuffle(&mut rng);
        let h = MultiGraph::from_edges(n, pairs).unwrap();
        for graph in [&g, &h] {
            let split = pack_double_tree(graph).feasible().unwrap();
            let out = balance(&split, 4).unwrap();
            prop_assert!(imbalance(&out).unwrap().max_imbalance() <= 4);
        }
    }
}
