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

use proptest::prelude::*;
use std::collections::BTreeSet;
use treebalance::families::*;
use treebalance::graph::{Digraph, Vertex};

/// Reachability by repeated relaxation, independent of the library's BFS.
fn closure(n: usize, arcs: &[(Vertex, Vertex)], from: Vertex) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([from]);
    loop {
        let before = seen.len();
        for &(t, h) in arcs {
            if seen.contains(&t) {
                seen.insert(h);
            }
        }
        if seen.len() == before {
            return seen;
        }
        debug_assert!(seen.len() <= n);
    }
}

fn class_arcs(d: &Digraph, labels: &[usize], class: usize) -> Vec<(Vertex, Vertex)> {
    d.arcs()
        .iter()
        .zip(labels)
        .filter(|&(_, &c)| c == class)
        .map(|(a, _)| (a.tail, a.head))
        .collect()
}

fn brute_arb_ok(d: &Digraph, labels: &[usize], root: Vertex) -> bool {
    let n = d.vertex_count();
    (1..=2).all(|c| {
        let arcs = class_arcs(d, labels, c);
        arcs.len() == n - 1 && closure(n, &arcs, root).len() == n
    })
}

fn brute_strong_ok(d: &Digraph, labels: &[usize]) -> bool {
    let n = d.vertex_count();
    (1..=2).all(|c| {
        let arcs = class_arcs(d, labels, c);
        (1..=n).all(|v| closure(n, &arcs, v).len() == n)
    })
}

/// Counts 2-partitions by trying every labelling with arc 1 pinned.
fn brute_count(d: &Digraph, ok: impl Fn(&[usize]) -> bool) -> usize {
    let m = d.arc_count();
    (0u32..1 << (m - 1))
        .filter(|mask| {
            let labels: Vec<usize> = (0..m)
                .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { 2 } else { 1 })
                .collect();
            ok(&labels)
        })
        .count()
}

#[test]
fn arborescence_family_is_unique_and_unbalanced() {
    for n in 2..=7 {
        let d = arborescence_family(n, 2).unwrap();
        let parts = enumerate_arborescence_partitions(&d, 1, 2).unwrap();
        assert_eq!(parts.len(), 1, "n={n}");
        let imb = out_imbalance(&parts[0]).unwrap();
        assert_eq!((imb.value, imb.vertex), (n - 2, n), "n={n}");
    }
}

#[test]
fn strong_family_is_unique_and_unbalanced() {
    for n in 1..=5 {
        let d = strong_family(n, 2).unwrap();
        let parts = enumerate_strong_partitions(&d, 2).unwrap();
        assert_eq!(parts.len(), 1, "n={n}");
        let imb = out_imbalance(&parts[0]).unwrap();
        assert_eq!((imb.value, imb.vertex), (n - 1, strong_family_t(n)), "n={n}");
    }
}

#[test]
fn unique_partition_is_the_drawn_one() {
    let (d, classes) = arborescence_family_classes(6, 2).unwrap();
    let parts = enumerate_arborescence_partitions(&d, 1, 2).unwrap();
    assert_eq!(parts[0].classes(), classes);
    let (d, classes) = strong_family_classes(4, 2).unwrap();
    let parts = enumerate_strong_partitions(&d, 2).unwrap();
    assert_eq!(parts[0].classes(), classes);
}

#[test]
fn three_classes() {
    let d = arborescence_family(5, 3).unwrap();
    assert_eq!(d.arc_count(), 12);
    let parts = enumerate_arborescence_partitions(&d, 1, 3).unwrap();
    // The two path copies are interchangeable arc by arc.
    assert_eq!(distinct_shapes(&parts), 1);
    assert!(parts.iter().all(|p| out_imbalance(p).unwrap().value == 3));
}

#[test]
fn dag_without_two_arborescences() {
    // Vertex 4 has in-degree 1, so it cannot be entered in both classes.
    let d = Digraph::from_arcs(4, [(1, 2), (1, 2), (1, 3), (1, 3), (2, 3), (3, 4)]).unwrap();
    assert!(enumerate_arborescence_partitions(&d, 1, 2).unwrap().is_empty());
    assert_eq!(brute_count(&d, |l| brute_arb_ok(&d, l, 1)), 0);
}

fn small_digraph() -> impl Strategy<Value = Digraph> {
    (2usize..=5).prop_flat_map(|n| {
        prop::collection::vec((1..=n, 1..=n), 2..=12).prop_map(move |pairs| {
            Digraph::from_arcs(n, pairs.into_iter().filter(|(t, h)| t != h)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn arborescence_enumeration_matches_brute_force(d in small_digraph()) {
        prop_assume!(d.arc_count() >= 1);
        let parts = enumerate_arborescence_partitions(&d, 1, 2).unwrap();
        for p in &parts {
            prop_assert!(brute_arb_ok(&d, &p.classes(), 1));
        }
        prop_assert_eq!(parts.len(), brute_count(&d, |l| brute_arb_ok(&d, l, 1)));
    }

    #[test]
    fn strong_enumeration_matches_brute_force(d in small_digraph()) {
        prop_assume!(d.arc_count() >= 1);
        let parts = enumerate_strong_partitions(&d, 2).unwrap();
        for p in &parts {
            prop_assert!(brute_strong_ok(&d, &p.classes()));
        }
        prop_assert_eq!(parts.len(), brute_count(&d, |l| brute_strong_ok(&d, l)));
    }
}
