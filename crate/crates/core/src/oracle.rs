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

//! Exhaustive searches for small instances: all double tree decompositions,
//! the minimum achievable imbalance, perfectly balanced decompositions and
//! pairs of edge-disjoint Hamiltonian cycles.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::decomposition::{Colour, Colouring};
use crate::dsu::RollbackUnionFind;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Vertex};
use crate::packing::pack_double_tree;

/// Largest edge count the decomposition searches accept.
pub const MAX_SEARCH_EDGES: usize = 48;
/// Largest vertex count accepted by [`ham_cycle_pair`].
pub const MAX_HAMILTONIAN_VERTICES: usize = 14;

struct TreeSearch<'a> {
    n: usize,
    ends: Vec<(Vertex, Vertex)>,
    ids: Vec<EdgeId>,
    uf: [RollbackUnionFind; 2],
    size: [usize; 2],
    deg: Vec<[usize; 2]>,
    rest: Vec<usize>,
    colour: Vec<Colour>,
    limit: Option<usize>,
    stop: Option<&'a AtomicBool>,
}

impl<'a> TreeSearch<'a> {
    fn new(g: &MultiGraph, a: &[EdgeId], limit: Option<usize>) -> Result<Self> {
        let n = g.vertex_count();
        let mut ids = a.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != a.len() {
            return Err(Error::domain("edge listed twice"));
        }
        if ids.len() > MAX_SEARCH_EDGES {
            return Err(Error::Oversize(format!(
                "{} edges exceed the search limit of {MAX_SEARCH_EDGES}",
                ids.len()
            )));
        }
        let mut ends = Vec::with_capacity(ids.len());
        let mut rest = vec![0; n + 1];
        for &id in &ids {
            let e = g
                .edge(id)
                .ok_or_else(|| Error::domain(format!("unknown edge {id}")))?;
            rest[e.u] += 1;
            rest[e.v] += 1;
            ends.push((e.u, e.v));
        }
        Ok(TreeSearch {
            n,
            ends,
            ids,
            uf: [RollbackUnionFind::new(n + 1), RollbackUnionFind::new(n + 1)],
            size: [0, 0],
            deg: vec![[0, 0]; n + 1],
            rest,
            colour: Vec::new(),
            limit,
            stop: None,
        })
    }

    fn fits(&self, x: Vertex) -> bool {
        match self.limit {
            None => true,
            Some(l) => {
                let [b, r] = self.deg[x];
                b.abs_diff(r) <= l + self.rest[x]
            }
        }
    }

    fn push(&mut self, i: usize, c: Colour) -> bool {
        let (u, v) = self.ends[i];
        let k = c.idx();
        if self.size[k] + 1 > self.n - 1 || self.uf[k].same(u, v) {
            return false;
        }
        self.uf[k].union(u, v);
        self.size[k] += 1;
        for x in [u, v] {
            self.deg[x][k] += 1;
            self.rest[x] -= 1;
        }
        self.colour.push(c);
        if self.fits(u) && self.fits(v) {
            true
        } else {
            self.pop();
            false
        }
    }

    fn pop(&mut self) {
        let c = self.colour.pop().expect("pop without push");
        let i = self.colour.len();
        let (u, v) = self.ends[i];
        let k = c.idx();
        self.uf[k].rollback();
        self.size[k] -= 1;
        for x in [u, v] {
            self.deg[x][k] -= 1;
            self.rest[x] += 1;
        }
    }

    fn colouring(&self) -> Colouring {
        self.ids.iter().copied().zip(self.colour.iter().copied()).collect()
    }

    /// Depth-first search over the remaining edges. The first edge is
    /// pinned to colour 1 so each unordered pair of trees appears once.
    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Colouring) -> ControlFlow<()>,
    {
        if self.stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
            return ControlFlow::Break(());
        }
        let i = self.colour.len();
        if i == self.ends.len() {
            return visit(&self.colouring());
        }
        let choices: &[Colour] = if i == 0 {
            &[Colour::Blue]
        } else {
            &Colour::BOTH
        };
        for &c in choices {
            if self.push(i, c) {
                let flow = self.run(visit);
                self.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    fn sized_for_double_tree(&self) -> bool {
        self.n >= 1 && self.ends.len() == 2 * (self.n - 1)
    }
}

/// Calls `visit` on every decomposition of the edges `a` into two spanning
/// trees, each unordered pair once (the smallest edge is always colour 1).
pub fn for_each_double_tree_decomposition<F>(g: &MultiGraph, a: &[EdgeId], mut visit: F) -> Result<()>
where
    F: FnMut(&Colouring) -> ControlFlow<()>,
{
    let mut s = TreeSearch::new(g, a, None)?;
    if s.sized_for_double_tree() && s.n >= 2 {
        let _ = s.run(&mut visit);
    } else if s.n <= 1 && s.ends.is_empty() {
        let _ = visit(&Colouring::new());
    }
    Ok(())
}

/// All decompositions of `a` into two spanning trees, up to swapping the
/// colours.
pub fn enumerate_double_tree_decompositions(g: &MultiGraph, a: &[EdgeId]) -> Result<Vec<Colouring>> {
    let mut out = Vec::new();
    for_each_double_tree_decomposition(g, a, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

fn all_edges(g: &MultiGraph) -> Vec<EdgeId> {
    g.edges().iter().map(|e| e.id).collect()
}

fn require_double_tree(g: &MultiGraph) -> Result<()> {
    let sized = g.edge_count() == g.double_tree_size();
    let packs = pack_double_tree(g)
        .feasible()
        .is_some_and(|d| d.extra_edges().is_empty());
    if sized && packs {
        Ok(())
    } else {
        Err(Error::domain("graph is not a double tree"))
    }
}

/// Largest `deg(v) mod 2`; no decomposition can do better.
fn parity_bound(g: &MultiGraph) -> usize {
    g.vertices()
        .map(|v| g.degree(v).unwrap_or(0) % 2)
        .max()
        .unwrap_or(0)
}

/// First decomposition (in search order) whose imbalance is at most `limit`.
fn first_within(g: &MultiGraph, limit: usize) -> Result<Option<Colouring>> {
    let mut s = TreeSearch::new(g, &all_edges(g), Some(limit))?;
    let mut found = None;
    if g.vertex_count() <= 1 {
        return Ok(Some(Colouring::new()));
    }
    let _ = s.run(&mut |c: &Colouring| {
        found = Some(c.clone());
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Whether some decomposition has imbalance at most `limit`, splitting the
/// search over `jobs` threads by the colours of the first few edges.
fn exists_within(g: &MultiGraph, limit: usize, jobs: usize) -> Result<bool> {
    if jobs <= 1 || g.edge_count() < 8 {
        return Ok(first_within(g, limit)?.is_some());
    }
    let depth = (usize::BITS - (jobs - 1).leading_zeros()) as usize + 2;
    let prefixes: Vec<Vec<Colour>> = (0..1usize << depth)
        .map(|bits| {
            std::iter::once(Colour::Blue)
                .chain((0..depth).map(|k| Colour::BOTH[(bits >> k) & 1]))
                .collect()
        })
        .collect();
    let found = AtomicBool::new(false);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let edges = all_edges(g);
    let outcome: Result<()> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| -> Result<()> {
                    loop {
                        let k = next.fetch_add(1, Ordering::Relaxed);
                        if k >= prefixes.len() || found.load(Ordering::Relaxed) {
                            return Ok(());
                        }
                        let mut s = TreeSearch::new(g, &edges, Some(limit))?;
                        s.stop = Some(&found);
                        if prefixes[k].iter().enumerate().all(|(i, &c)| s.push(i, c)) {
                            let flow = s.run(&mut |_: &Colouring| ControlFlow::Break(()));
                            if flow.is_break() {
                                found.store(true, Ordering::Relaxed);
                            }
                        }
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().expect("oracle worker panicked")?;
        }
        Ok(())
    });
    outcome?;
    Ok(found.load(Ordering::Relaxed))
}

/// Minimum over all decompositions of the maximum imbalance, with a
/// witness decomposition attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinImbalance {
    pub value: usize,
    pub witness: Colouring,
}

/// Exact minimum imbalance of a double tree.
pub fn min_imbalance(g: &MultiGraph) -> Result<MinImbalance> {
    min_imbalance_with_jobs(g, 1)
}

/// [`min_imbalance`] with the search split over `jobs` threads. The result
/// does not depend on `jobs`.
pub fn min_imbalance_with_jobs(g: &MultiGraph, jobs: usize) -> Result<MinImbalance> {
    require_double_tree(g)?;
    let max_degree = g.vertices().map(|v| g.degree(v).unwrap_or(0)).max().unwrap_or(0);
    for limit in parity_bound(g)..=max_degree {
        if exists_within(g, limit, jobs)? {
            let witness = first_within(g, limit)?.expect("search found a witness before");
            return Ok(MinImbalance {
                value: limit,
                witness,
            });
        }
    }
    unreachable!("every decomposition has imbalance at most the maximum degree")
}

/// Perfectly balanced double tree decomposition, if one exists. Graphs that
/// are not double trees have none.
pub fn pbdt(g: &MultiGraph) -> Result<Option<Colouring>> {
    pbdt_with_jobs(g, 1)
}

pub fn pbdt_with_jobs(g: &MultiGraph, jobs: usize) -> Result<Option<Colouring>> {
    if require_double_tree(g).is_err() || parity_bound(g) > 0 {
        return Ok(None);
    }
    if exists_within(g, 0, jobs)? {
        first_within(g, 0)
    } else {
        Ok(None)
    }
}

struct HamSearch<'g> {
    g: &'g MultiGraph,
    used_vertex: Vec<bool>,
    banned: Vec<bool>,
    path: Vec<usize>,
}

impl HamSearch<'_> {
    fn run<F>(&mut self, at: Vertex, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = self.g.vertex_count();
        let edges = self.g.edges();
        if depth == n {
            // Close the cycle back to vertex 1; orient so each cycle is
            // reported once.
            for p in self.g.incident(at).map(|e| self.g.position(e.id).expect("own edge")) {
                if self.banned[p] || edges[p].other(at) != 1 || self.path.contains(&p) {
                    continue;
                }
                if p < self.path[0] {
                    continue;
                }
                self.path.push(p);
                let flow = visit(&self.path);
                self.path.pop();
                flow?;
            }
            return ControlFlow::Continue(());
        }
        let incident: Vec<usize> = self
            .g
            .incident(at)
            .map(|e| self.g.position(e.id).expect("own edge"))
            .collect();
        for p in incident {
            let y = edges[p].other(at);
            if self.banned[p] || self.used_vertex[y] {
                continue;
            }
            self.used_vertex[y] = true;
            self.path.push(p);
            let flow = self.run(y, depth + 1, visit);
            self.path.pop();
            self.used_vertex[y] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn for_each_ham_cycle<F>(g: &MultiGraph, banned: &[bool], mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    if n == 2 {
        // A pair of parallel edges is a Hamiltonian cycle on two vertices.
        let free: Vec<usize> = (0..g.edge_count()).filter(|&p| !banned[p]).collect();
        for (i, &a) in free.iter().enumerate() {
            for &b in &free[i + 1..] {
                if visit(&[a, b]).is_break() {
                    return;
                }
            }
        }
        return;
    }
    let mut used_vertex = vec![false; n + 1];
    used_vertex[1] = true;
    let mut s = HamSearch {
        g,
        used_vertex,
        banned: banned.to_vec(),
        path: Vec::new(),
    };
    let _ = s.run(1, 1, &mut visit);
}

/// Two edge-disjoint Hamiltonian cycles, as edge id lists, if they exist.
pub fn ham_cycle_pair(g: &MultiGraph) -> Result<Option<(Vec<EdgeId>, Vec<EdgeId>)>> {
    let n = g.vertex_count();
    if n > MAX_HAMILTONIAN_VERTICES {
        return Err(Error::Oversize(format!(
            "{n} vertices exceed the Hamiltonian search limit of {MAX_HAMILTONIAN_VERTICES}"
        )));
    }
    if n < 2 {
        return Ok(None);
    }
    let m = g.edge_count();
    let ids = |ps: &[usize]| -> Vec<EdgeId> {
        let mut v: Vec<EdgeId> = ps.iter().map(|&p| g.edges()[p].id).collect();
        v.sort_unstable();
        v
    };
    let mut answer = None;
    for_each_ham_cycle(g, &vec![false; m], |first| {
        let mut banned = vec![false; m];
        for &p in first {
            banned[p] = true;
        }
        let mut second = None;
        for_each_ham_cycle(g, &banned, |c| {
            second = Some(c.to_vec());
            ControlFlow::Break(())
        });
        match second {
            Some(c) => {
                answer = Some((ids(first), ids(&c)));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    Ok(answer)
}

/// Whether `cycle` is a Hamiltonian cycle of `g`.
pub fn is_hamiltonian_cycle(g: &MultiGraph, cycle: &[EdgeId]) -> bool {
    let n = g.vertex_count();
    if n < 2 || cycle.len() != n {
        return false;
    }
    let mut deg = vec![0usize; n + 1];
    let mut uf = crate::dsu::UnionFind::new(n + 1);
    let mut seen = std::collections::BTreeSet::new();
    for &id in cycle {
        let Some(e) = g.edge(id) else { return false };
        if !seen.insert(id) {
            return false;
        }
        deg[e.u] += 1;
        deg[e.v] += 1;
        uf.union(e.u, e.v);
    }
    let root = uf.find(1);
    g.vertices().all(|v| deg[v] == 2 && uf.find(v) == root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::*;

    #[test]
    fn double_edge_has_one_decomposition() {
        let g = doubled_path(2);
        let all = enumerate_double_tree_decompositions(&g, &all_edges(&g)).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn doubled_star_count_and_minimum() {
        let g = doubled_star(4);
        let all = enumerate_double_tree_decompositions(&g, &all_edges(&g)).unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(min_imbalance(&g).unwrap().value, 0);
        assert!(pbdt(&g).unwrap().is_some());
    }

    #[test]
    fn k4_and_pendant_triangle_minimum() {
        assert_eq!(min_imbalance(&complete_graph(4)).unwrap().value, 1);
        assert_eq!(min_imbalance(&pendant_triangle()).unwrap().value, 2);
        assert!(pbdt(&complete_graph(4)).unwrap().is_none());
    }

    #[test]
    fn non_double_trees_are_rejected() {
        assert!(min_imbalance(&complete_graph(5)).is_err());
        assert!(pbdt(&petersen()).unwrap().is_none());
    }

    #[test]
    fn jobs_do_not_change_answers() {
        let g = pendant_triangle();
        assert_eq!(min_imbalance_with_jobs(&g, 4).unwrap(), min_imbalance(&g).unwrap());
        let g = doubled_star(6);
        assert_eq!(pbdt_with_jobs(&g, 3).unwrap(), pbdt(&g).unwrap());
    }

    #[test]
    fn hamiltonian_pairs() {
        let (a, b) = ham_cycle_pair(&complete_graph(5)).unwrap().unwrap();
        assert!(is_hamiltonian_cycle(&complete_graph(5), &a));
        assert!(is_hamiltonian_cycle(&complete_graph(5), &b));
        assert!(ham_cycle_pair(&complete_graph(4)).unwrap().is_none());
        assert!(ham_cycle_pair(&circulant(7, &[1, 2])).unwrap().is_some());
        assert!(ham_cycle_pair(&two_cut_gadget()).unwrap().is_none());
    }
}
