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

//! Independent checkers and fixtures shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treebalance::balancer::BalanceRun;
use treebalance::decomposition::{imbalance, Colour, Colouring, SplitDecomposition};
use treebalance::generate::{from_tree_pair, random_double_tree, random_hub_double_tree, tree_from_sequence};
use treebalance::graph::{EdgeId, MultiGraph, Vertex};

/// Whether the edge list connects all of `1..=n`.
pub fn connects(n: usize, edges: &[(Vertex, Vertex)]) -> bool {
    let mut label: Vec<usize> = (0..=n).collect();
    for &(u, v) in edges {
        let (a, b) = (label[u], label[v]);
        for l in label.iter_mut() {
            if *l == b {
                *l = a;
            }
        }
    }
    (1..=n).all(|v| label[v] == label[1])
}

pub fn is_tree(g: &MultiGraph, ids: &[EdgeId]) -> bool {
    let n = g.vertex_count();
    let pairs: Vec<_> = ids.iter().map(|&id| g.edge(id).map(|e| (e.u, e.v))).collect();
    match pairs.into_iter().collect::<Option<Vec<_>>>() {
        Some(pairs) => pairs.len() + 1 == n && connects(n, &pairs),
        None => false,
    }
}

pub fn class(c: &Colouring, colour: Colour) -> Vec<EdgeId> {
    c.iter().filter(|&(_, k)| k == colour).map(|(e, _)| e).collect()
}

/// Two edge-disjoint spanning trees exist iff some edge subset of size
/// `n - 1` is a spanning tree whose complement still connects the graph.
pub fn brute_feasible(g: &MultiGraph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let m = edges.len();
    (0u32..1 << m).any(|mask| {
        if mask.count_ones() as usize != n - 1 {
            return false;
        }
        let (t, rest): (Vec<_>, Vec<_>) = (0..m).partition(|&i| mask >> i & 1 == 1);
        let t: Vec<_> = t.into_iter().map(|i| edges[i]).collect();
        let rest: Vec<_> = rest.into_iter().map(|i| edges[i]).collect();
        connects(n, &t) && connects(n, &rest)
    })
}

/// Random multigraph with `2..=7` vertices and at most 14 edges.
pub fn random_small_graph(rng: &mut ChaCha8Rng) -> MultiGraph {
    let n = rng.gen_range(2..=7);
    let m = rng.gen_range(n - 1..=14.min(3 * n));
    let mut g = MultiGraph::new(n);
    for _ in 0..m {
        add_random_edge(&mut g, rng);
    }
    g
}

pub fn add_random_edge(g: &mut MultiGraph, rng: &mut impl Rng) {
    let n = g.vertex_count();
    let u = rng.gen_range(1..=n);
    let mut v = rng.gen_range(1..n);
    if v >= u {
        v += 1;
    }
    g.add_edge(u, v).unwrap();
}

/// Random double tree (uniform or hub-biased) plus `extra` random edges.
pub fn instance(seed: u64, n: usize, hubs: usize, extra: usize) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut g, _) = if hubs == 0 {
        random_double_tree(n, &mut rng)
    } else {
        random_hub_double_tree(n, hubs, 0.7, &mut rng)
    };
    for _ in 0..extra {
        add_random_edge(&mut g, &mut rng);
    }
    g
}

/// Both colour classes restricted to `A` are spanning trees.
pub fn a_classes_are_trees(split: &SplitDecomposition<'_>) -> bool {
    let g = split.graph();
    Colour::BOTH.iter().all(|&c| {
        let ids: Vec<EdgeId> = g
            .edges()
            .iter()
            .filter(|e| split.is_tree_edge(e.id) && split.colour(e.id) == Some(c))
            .map(|e| e.id)
            .collect();
        is_tree(g, &ids)
    })
}

/// Replays the recorded deltas forward from the input graph and checks
/// each record against the replayed vertex and edge sets.
pub fn replay(g: &MultiGraph, a: &BTreeSet<EdgeId>, run: &BalanceRun<'_>) -> Result<(), String> {
    let mut edges: BTreeMap<EdgeId, (Vertex, Vertex, bool)> =
        g.edges().iter().map(|e| (e.id, (e.u, e.v, a.contains(&e.id)))).collect();
    let mut vertices: BTreeSet<Vertex> = g.vertices().collect();
    for (i, r) in run.trace.iter().enumerate() {
        if r.measure_after >= r.measure_before {
            return Err(format!("record {i}: measure did not drop"));
        }
        let m = edges.values().filter(|e| !e.2).count();
        if (m, vertices.len()) != (r.measure_before.m_edges, r.measure_before.vertices) {
            return Err(format!("record {i}: measure before does not match replay"));
        }
        for e in &r.removed_edges {
            match edges.remove(&e.id) {
                Some((u, v, in_a)) if (u, v, in_a) == (e.u, e.v, e.in_a) => {}
                other => return Err(format!("record {i}: removed edge {} was {other:?}", e.id)),
            }
        }
        for &v in &r.removed_vertices {
            if !vertices.remove(&v) {
                return Err(format!("record {i}: vertex {v} removed twice"));
            }
        }
        vertices.extend(r.created_vertices.iter().copied());
        for e in &r.created_edges {
            if edges.insert(e.id, (e.u, e.v, e.in_a)).is_some() {
                return Err(format!("record {i}: created edge {} reused an id", e.id));
            }
        }
        if edges.values().any(|&(u, v, _)| !vertices.contains(&u) || !vertices.contains(&v)) {
            return Err(format!("record {i}: dangling edge"));
        }
        let m = edges.values().filter(|e| !e.2).count();
        if (m, vertices.len()) != (r.measure_after.m_edges, r.measure_after.vertices) {
            return Err(format!("record {i}: measure after does not match replay"));
        }
    }
    Ok(())
}

/// Every post-condition of a balancer run that can be checked from the
/// outside. Trace replay is skipped for runs that needed a fallback,
/// whose records interleave with reconstructions.
pub fn check_run(g: &MultiGraph, split: &SplitDecomposition<'_>, run: &BalanceRun<'_>) -> Result<usize, String> {
    let out = &run.decomposition;
    if !out.is_valid() || !a_classes_are_trees(out) {
        return Err("output is not a valid split".into());
    }
    if out.tree_edges() != split.tree_edges() {
        return Err("tree edge set changed".into());
    }
    let colour_ids: Vec<EdgeId> = out.clone().into_colouring().iter().map(|(e, _)| e).collect();
    let edge_ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    if colour_ids != edge_ids {
        return Err("output colours a different edge set".into());
    }
    let imb = imbalance(out).map_err(|e| e.to_string())?;
    if imb.max_imbalance() > 4 {
        return Err(format!("imbalance {}", imb.max_imbalance()));
    }
    parity_holds(g, &imb)?;
    if run.stats.fallbacks == 0 {
        replay(g, split.tree_edges(), run)?;
    }
    Ok(imb.max_imbalance())
}

pub fn parity_holds(g: &MultiGraph, imb: &treebalance::ImbalanceReport) -> Result<(), String> {
    for (v, x) in imb.iter() {
        if x % 2 != g.degree(v).unwrap() % 2 {
            return Err(format!("parity broken at {v}"));
        }
    }
    Ok(())
}

fn all_sequences(n: usize) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n.saturating_sub(2) {
        out = out
            .into_iter()
            .flat_map(|s| {
                (1..=n).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Sorted edge list minimised over all relabellings that order vertices
/// by an isomorphism invariant (degree, then neighbour degrees), so only
/// vertices with equal invariants are permuted among themselves.
fn canonical(n: usize, edges: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    let mut deg = vec![0usize; n + 1];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let invariant = |x: Vertex| {
        let mut nb: Vec<usize> = edges
            .iter()
            .filter_map(|&(u, v)| match (u == x, v == x) {
                (true, _) => Some(deg[v]),
                (_, true) => Some(deg[u]),
                _ => None,
            })
            .collect();
        nb.sort_unstable();
        (deg[x], nb)
    };
    let mut order: Vec<(_, Vertex)> = (1..=n).map(|x| (invariant(x), x)).collect();
    order.sort();
    let mut groups: Vec<Vec<Vertex>> = Vec::new();
    for (i, (inv, x)) in order.iter().enumerate() {
        if i > 0 && order[i - 1].0 == *inv {
            groups.last_mut().unwrap().push(*x);
        } else {
            groups.push(vec![*x]);
        }
    }
    let mut best: Option<Vec<(Vertex, Vertex)>> = None;
    let mut label = vec![0; n + 1];
    fn each_perm(items: &mut Vec<Vertex>, k: usize, visit: &mut dyn FnMut(&[Vertex])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            each_perm(items, k + 1, visit);
            items.swap(k, i);
        }
    }
    fn walk(
        groups: &[Vec<Vertex>],
        next: usize,
        label: &mut Vec<usize>,
        edges: &[(Vertex, Vertex)],
        best: &mut Option<Vec<(Vertex, Vertex)>>,
    ) {
        let Some((first, rest)) = groups.split_first() else {
            let mut e: Vec<_> = edges
                .iter()
                .map(|&(u, v)| (label[u].min(label[v]), label[u].max(label[v])))
                .collect();
            e.sort_unstable();
            if best.as_ref().is_none_or(|b| e < *b) {
                *best = Some(e);
            }
            return;
        };
        let mut items = first.clone();
        each_perm(&mut items, 0, &mut |p| {
            for (i, &x) in p.iter().enumerate() {
                label[x] = next + i;
            }
            walk(rest, next + p.len(), label, edges, best);
        });
    }
    walk(&groups, 1, &mut label, edges, &mut best);
    best.unwrap()
}

/// Double trees for the oracle cross-checks: every union of two labelled
/// trees on 2 to 7 vertices (at most 12 edges, parallel edges included) up
/// to isomorphism, then seeded random unions (uniform and hub-biased) on 8
/// vertices.
pub fn double_tree_corpus() -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for n in 2..=7 {
        let trees: Vec<_> = all_sequences(n).iter().map(|s| tree_from_sequence(n, s)).collect();
        let mut shapes = BTreeSet::new();
        let firsts: Vec<_> = trees.iter().filter(|t| shapes.insert(canonical(n, t))).collect();
        let mut seen = BTreeSet::new();
        for t1 in firsts {
            for t2 in &trees {
                let all: Vec<_> = t1.iter().chain(t2).copied().collect();
                if seen.insert(canonical(n, &all)) {
                    out.push(from_tree_pair(n, t1, t2).0);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..60 {
        let g = if i % 2 == 0 {
            random_double_tree(8, &mut rng).0
        } else {
            random_hub_double_tree(8, 1, 0.6, &mut rng).0
        };
        out.push(g);
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Partners allowed by definition: exchanging them with `e` leaves two
/// spanning trees.
pub fn eligible_partners(g: &MultiGraph, c: &Colouring, e: EdgeId) -> Vec<EdgeId> {
    let from = c.get(e).unwrap();
    let own: Vec<EdgeId> = class(c, from).into_iter().filter(|&x| x != e).collect();
    class(c, from.other())
        .into_iter()
        .filter(|&f| {
            let mut t1 = own.clone();
            t1.push(f);
            let mut t2: Vec<EdgeId> = class(c, from.other()).into_iter().filter(|&x| x != f).collect();
            t2.push(e);
            is_tree(g, &t1) && is_tree(g, &t2)
        })
        .collect()
}

/// Performs `count` random swaps on random double trees, checking the
/// partner choice, tree validity, the changed edge set and leaf
/// preservation. Returns the number of leaf checks made.
pub fn random_swaps(count: usize, seed: u64) -> Result<usize, String> {
    use treebalance::decomposition::{colour_degrees, leaf_preserving_swap_check, swap_edge, DoubleTreeDecomposition};

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut swaps, mut leaf_checks) = (0, 0);
    while swaps < count {
        let n = rng.gen_range(2..=12);
        let (g, mut col) = if rng.gen_bool(0.5) {
            random_double_tree(n, &mut rng)
        } else {
            random_hub_double_tree(n, 2, 0.6, &mut rng)
        };
        for _ in 0..10.min(count - swaps) {
            let d = DoubleTreeDecomposition::new(&g, col.clone());
            let e = g.edges()[rng.gen_range(0..g.edge_count())].id;
            let (after, f) = swap_edge(&d, e).map_err(|x| x.to_string())?;
            let expected = eligible_partners(&g, &col, e);
            ensure(Some(&f) == expected.first(), || format!("swap {e}: partner {f}, expected {expected:?}"))?;
            let next = after.into_colouring();
            ensure(
                is_tree(&g, &class(&next, Colour::Blue)) && is_tree(&g, &class(&next, Colour::Red)),
                || format!("swap {e}: classes are not trees"),
            )?;
            let changed: Vec<EdgeId> = g
                .edges()
                .iter()
                .map(|x| x.id)
                .filter(|&x| next.get(x) != col.get(x))
                .collect();
            let mut both = vec![e, f];
            both.sort_unstable();
            ensure(changed == both, || format!("swap {e}: changed {changed:?}"))?;

            let colour = col.get(e).unwrap();
            let k = colour.number() as usize - 1;
            let deg = colour_degrees(&d).map_err(|x| x.to_string())?;
            let edge = g.edge(e).unwrap();
            for leaf in [edge.u, edge.v] {
                if deg[leaf][k] == 1 {
                    let claimed = leaf_preserving_swap_check(&d, e, leaf).map_err(|x| x.to_string())?;
                    let deg_after =
                        colour_degrees(&DoubleTreeDecomposition::new(&g, next.clone())).map_err(|x| x.to_string())?;
                    ensure(claimed && deg_after[leaf][k] == 1, || format!("swap {e}: leaf {leaf} lost"))?;
                    leaf_checks += 1;
                }
            }
            col = next;
            swaps += 1;
        }
    }
    Ok(leaf_checks)
}

/// Runs the packer on `count` random small graphs and checks every answer
/// against brute force and its certificate. Returns (feasible, infeasible).
pub fn packer_suite(count: usize, seed: u64) -> Result<(usize, usize), String> {
    use treebalance::packing::verify_infeasibility_witness;
    use treebalance::{pack_double_tree, PackOutcome};

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut yes, mut no) = (0, 0);
    for i in 0..count {
        let g = random_small_graph(&mut rng);
        let n = g.vertex_count();
        let truth = brute_feasible(&g);
        match pack_double_tree(&g) {
            PackOutcome::Feasible(split) => {
                yes += 1;
                ensure(truth, || format!("graph {i}: packed an infeasible graph"))?;
                ensure(split.is_valid() && split.tree_edges().len() == 2 * (n - 1), || {
                    format!("graph {i}: invalid split")
                })?;
                ensure(a_classes_are_trees(&split), || format!("graph {i}: classes are not trees"))?;
                ensure(split.extra_edges().iter().all(|&e| split.colour(e) == Some(Colour::Blue)), || {
                    format!("graph {i}: extra edge not coloured 1")
                })?;
            }
            PackOutcome::Infeasible(p) => {
                no += 1;
                ensure(!truth, || format!("graph {i}: refuted a feasible graph"))?;
                let part_of = |v: usize| p.parts.iter().position(|part| part.contains(&v));
                let crossing = g.edges().iter().filter(|e| part_of(e.u) != part_of(e.v)).count();
                let mut all: Vec<usize> = p.parts.concat();
                all.sort_unstable();
                let ok = verify_infeasibility_witness(&g, &p).map_err(|x| x.to_string())?
                    && crossing < 2 * (p.parts.len() - 1)
                    && all == (1..=n).collect::<Vec<_>>();
                ensure(ok, || format!("graph {i}: bad witness {p:?}"))?;
            }
        }
    }
    Ok((yes, no))
}
