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

//! Named graphs and seeded random instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::decomposition::{Colour, Colouring};
use crate::graph::{MultiGraph, Vertex};

fn build(n: usize, pairs: Vec<(Vertex, Vertex)>) -> MultiGraph {
    MultiGraph::from_edges(n, pairs).expect("generator produced a valid edge list")
}

pub fn complete_graph(n: usize) -> MultiGraph {
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            pairs.push((u, v));
        }
    }
    build(n, pairs)
}

pub fn petersen() -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i + 1, (i + 1) % 5 + 1));
        pairs.push((i + 1, i + 6));
        pairs.push((i + 6, (i + 2) % 5 + 6));
    }
    build(10, pairs)
}

/// Circulant graph on `n` vertices: `i` is joined to `i ± s` for every
/// offset `s`.
pub fn circulant(n: usize, offsets: &[usize]) -> MultiGraph {
    let mut pairs = Vec::new();
    for &s in offsets {
        for i in 0..n {
            pairs.push((i + 1, (i + s) % n + 1));
        }
    }
    build(n, pairs)
}

/// Triangle 1-2-3 where 2 and 3 each carry a double edge to a pendant pair
/// {4, 5} that is itself joined by one edge. Every decomposition leaves
/// imbalance 2 somewhere on the triangle.
pub fn pendant_triangle() -> MultiGraph {
    build(
        5,
        vec![(1, 3), (1, 2), (5, 3), (5, 3), (2, 3), (2, 4), (2, 4), (4, 5)],
    )
}

/// Star with `k` leaves, every spoke doubled. The centre is vertex 1.
pub fn doubled_star(k: usize) -> MultiGraph {
    let mut pairs = Vec::new();
    for leaf in 2..=k + 1 {
        pairs.push((1, leaf));
        pairs.push((1, leaf));
    }
    build(k + 1, pairs)
}

/// Path on `n` vertices with every edge doubled.
pub fn doubled_path(n: usize) -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 1..n {
        pairs.push((i, i + 1));
        pairs.push((i, i + 1));
    }
    build(n, pairs)
}

/// Two copies of K5 minus an edge, joined by two edges between the
/// degree-3 vertices. 4-regular on ten vertices; the two joining edges form
/// a 2-edge cut, so no two edge-disjoint Hamiltonian cycles exist.
pub fn two_cut_gadget() -> MultiGraph {
    let mut pairs = Vec::new();
    for base in [0, 5] {
        for u in 1..=5 {
            for v in u + 1..=5 {
                if (u, v) != (1, 2) {
                    pairs.push((base + u, base + v));
                }
            }
        }
    }
    pairs.push((1, 6));
    pairs.push((2, 7));
    build(10, pairs)
}

/// Edges of the labelled tree encoded by a sequence of length `n - 2`.
pub fn tree_from_sequence(n: usize, seq: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n + 1];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<Vertex> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = leaves.pop_first().expect("a tree always has a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let a = leaves.pop_first().expect("two leaves remain");
    let b = leaves.pop_first().expect("two leaves remain");
    edges.push((a, b));
    edges
}

/// Uniformly random labelled tree on `n >= 1` vertices.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<(Vertex, Vertex)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    tree_from_sequence(n, &seq)
}

/// Union of two independent uniform random trees on `n` vertices. Edges of
/// the first tree come first and are coloured 1 in the returned colouring.
pub fn random_double_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (MultiGraph, Colouring) {
    let t1 = random_tree(n, rng);
    let t2 = random_tree(n, rng);
    from_tree_pair(n, &t1, &t2)
}

/// The double tree `t1 ∪ t2` with `t1` coloured 1 and `t2` coloured 2.
pub fn from_tree_pair(
    n: usize,
    t1: &[(Vertex, Vertex)],
    t2: &[(Vertex, Vertex)],
) -> (MultiGraph, Colouring) {
    let g = build(n, t1.iter().chain(t2).copied().collect());
    let colouring = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id, if i < t1.len() { Colour::Blue } else { Colour::Red }))
        .collect();
    (g, colouring)
}

/// Random double tree plus `extra` random edges appended after it.
pub fn random_double_tree_with_extras<R: Rng + ?Sized>(
    n: usize,
    extra: usize,
    rng: &mut R,
) -> MultiGraph {
    let (mut g, _) = random_double_tree(n, rng);
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(1..=n);
            let mut v = rng.gen_range(1..n);
            if v >= u {
                v += 1;
            }
            g.add_edge(u, v).expect("distinct endpoints in range");
        }
    }
    g
}

/// Random tree whose sequence draws from a small set of hubs with
/// probability `hub_bias`. Hubs become high-degree vertices while most
/// other vertices stay leaves, which produces many 2- and 3-vertices next
/// to big vertices.
pub fn random_hub_tree<R: Rng + ?Sized>(
    n: usize,
    hubs: &[Vertex],
    hub_bias: f64,
    rng: &mut R,
) -> Vec<(Vertex, Vertex)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<Vertex> = (0..n - 2)
        .map(|_| {
            if !hubs.is_empty() && rng.gen_bool(hub_bias) {
                *hubs.choose(rng).expect("non-empty")
            } else {
                rng.gen_range(1..=n)
            }
        })
        .collect();
    tree_from_sequence(n, &seq)
}

/// Double tree built from two hub-biased trees sharing the same hubs.
pub fn random_hub_double_tree<R: Rng + ?Sized>(
    n: usize,
    hub_count: usize,
    hub_bias: f64,
    rng: &mut R,
) -> (MultiGraph, Colouring) {
    let mut all: Vec<Vertex> = (1..=n).collect();
    all.shuffle(rng);
    let hubs: Vec<Vertex> = all.into_iter().take(hub_count.min(n)).collect();
    let t1 = random_hub_tree(n, &hubs, hub_bias, rng);
    let t2 = random_hub_tree(n, &hubs, hub_bias, rng);
    from_tree_pair(n, &t1, &t2)
}

/// Random simple 4-regular graph on `n >= 5` vertices from the pairing
/// model, retrying until the pairing has no loops or parallel edges.
pub fn random_four_regular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MultiGraph {
    assert!(n >= 5, "no simple 4-regular graph on fewer than 5 vertices");
    let mut stubs: Vec<Vertex> = (1..=n).flat_map(|v| [v; 4]).collect();
    loop {
        stubs.shuffle(rng);
        let mut seen = BTreeSet::new();
        let ok = stubs.chunks(2).all(|p| {
            let (u, v) = (p[0].min(p[1]), p[0].max(p[1]));
            u != v && seen.insert((u, v))
        });
        if ok {
            return build(n, stubs.chunks(2).map(|p| (p[0], p[1])).collect());
        }
    }
}

/// Union of two random Hamiltonian cycles on `n >= 2` vertices; a 4-regular
/// multigraph that has two edge-disjoint Hamiltonian cycles by construction.
pub fn random_hamiltonian_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MultiGraph {
    let mut pairs = Vec::new();
    for _ in 0..2 {
        let mut order: Vec<Vertex> = (1..=n).collect();
        order.shuffle(rng);
        for i in 0..n {
            pairs.push((order[i], order[(i + 1) % n]));
        }
    }
    build(n, pairs)
}
