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

//! Mutable overlay graph with a colouring, used by the reduction engine.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::decomposition::{three_vertex_type, Colour, Colouring, SplitDecomposition, ThreeVertexType};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Vertex};

/// Handle of an edge inside the overlay.
pub(crate) type Slot = usize;

#[derive(Clone, Debug)]
pub(crate) struct SlotData {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
    pub in_a: bool,
    pub alive: bool,
    pub colour: Colour,
}

impl SlotData {
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Lexicographic progress measure: M-edges first, then alive vertices.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measure {
    pub m_edges: usize,
    pub vertices: usize,
}

/// Working graph `A + M` with a colouring whose classes restricted to `A`
/// are spanning trees of the alive vertices. Deleted vertices and edges stay
/// in the tables so their ids remain stable.
#[derive(Clone, Debug)]
pub struct BalancerState {
    pub(crate) c: usize,
    pub(crate) alive: Vec<bool>,
    pub(crate) adj: Vec<Vec<Slot>>,
    pub(crate) slots: Vec<SlotData>,
    pub(crate) cdeg: Vec<[usize; 2]>,
    pub(crate) alive_count: usize,
    pub(crate) m_count: usize,
    // Imbalance of each vertex before its first change, while recording.
    pub(crate) touched: Option<BTreeMap<Vertex, Option<usize>>>,
}

impl BalancerState {
    /// Loads a valid split decomposition.
    pub fn new(split: &SplitDecomposition<'_>, c: usize) -> Result<Self> {
        let report = split.validate();
        if !report.is_valid() {
            return Err(Error::domain(format!("invalid split decomposition: {}", report.violations[0])));
        }
        let g = split.graph();
        let n = g.vertex_count();
        let mut st = BalancerState {
            c,
            alive: vec![false; n + 1],
            adj: vec![Vec::new(); n + 1],
            slots: Vec::with_capacity(g.edge_count()),
            cdeg: vec![[0, 0]; n + 1],
            alive_count: n,
            m_count: 0,
            touched: None,
        };
        for v in 1..=n {
            st.alive[v] = true;
        }
        for e in g.edges() {
            let colour = split.colour(e.id).expect("validated");
            let in_a = split.is_tree_edge(e.id);
            let s = st.slots.len();
            st.slots.push(SlotData {
                id: e.id,
                u: e.u,
                v: e.v,
                in_a,
                alive: true,
                colour,
            });
            st.attach(s);
        }
        Ok(st)
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn measure(&self) -> Measure {
        Measure {
            m_edges: self.m_count,
            vertices: self.alive_count,
        }
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..self.alive.len()).filter(|&v| self.alive[v])
    }

    /// Degree in the overlay; zero for deleted vertices.
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(v).map_or(0, Vec::len)
    }

    pub fn colour_degree(&self, v: Vertex, c: Colour) -> usize {
        self.cdeg[v][c.idx()]
    }

    pub fn imbalance_at(&self, v: Vertex) -> usize {
        let [b, r] = self.cdeg[v];
        b.abs_diff(r)
    }

    pub fn max_imbalance(&self) -> usize {
        self.alive_vertices().map(|v| self.imbalance_at(v)).max().unwrap_or(0)
    }

    pub fn is_small(&self, v: Vertex) -> bool {
        self.degree(v) <= self.c + 2
    }

    pub fn is_big(&self, v: Vertex) -> bool {
        !self.is_small(v)
    }

    pub fn is_critical(&self, v: Vertex) -> bool {
        self.degree(v) == self.c + 3
    }

    /// Every alive vertex small and no M-edges.
    pub fn is_base_case(&self) -> bool {
        self.m_count == 0 && self.alive_vertices().all(|v| self.is_small(v))
    }

    pub(crate) fn slot(&self, s: Slot) -> &SlotData {
        &self.slots[s]
    }

    pub(crate) fn incident(&self, v: Vertex) -> &[Slot] {
        &self.adj[v]
    }

    pub(crate) fn other(&self, s: Slot, x: Vertex) -> Vertex {
        self.slots[s].other(x)
    }

    pub(crate) fn colour(&self, s: Slot) -> Colour {
        self.slots[s].colour
    }

    /// All incident edges lie in `A`.
    pub(crate) fn a_pure(&self, v: Vertex) -> bool {
        self.adj[v].iter().all(|&s| self.slots[s].in_a)
    }

    pub(crate) fn m_edges_at(&self, v: Vertex) -> Vec<Slot> {
        let mut out: Vec<Slot> = self.adj[v].iter().copied().filter(|&s| !self.slots[s].in_a).collect();
        out.sort_unstable();
        out
    }

    /// Type of an A-pure 3-vertex.
    pub(crate) fn three_type(&self, v: Vertex) -> Option<ThreeVertexType> {
        if self.degree(v) != 3 || !self.a_pure(v) {
            return None;
        }
        let mut nbrs = [(0, 0); 3];
        for (k, &s) in self.adj[v].iter().enumerate() {
            let x = self.other(s, v);
            nbrs[k] = (x, self.degree(x));
        }
        Some(three_vertex_type(nbrs, self.c))
    }

    /// For an A-pure 3-vertex: (singleton slot, the two doubleton slots).
    pub(crate) fn singleton(&self, v: Vertex) -> (Slot, [Slot; 2]) {
        let e = &self.adj[v];
        debug_assert_eq!(e.len(), 3);
        let col = |s: Slot| self.slots[s].colour;
        if col(e[0]) == col(e[1]) {
            (e[2], [e[0], e[1]])
        } else if col(e[0]) == col(e[2]) {
            (e[1], [e[0], e[2]])
        } else {
            (e[0], [e[1], e[2]])
        }
    }

    fn note(&mut self, v: Vertex) {
        if let Some(t) = self.touched.as_mut() {
            if let std::collections::btree_map::Entry::Vacant(slot) = t.entry(v) {
                let before = if self.alive[v] {
                    Some(self.cdeg[v][0].abs_diff(self.cdeg[v][1]))
                } else {
                    None
                };
                slot.insert(before);
            }
        }
    }

    fn attach(&mut self, s: Slot) {
        let SlotData { u, v, in_a, colour, .. } = self.slots[s].clone();
        self.note(u);
        self.note(v);
        self.adj[u].push(s);
        self.adj[v].push(s);
        self.cdeg[u][colour.idx()] += 1;
        self.cdeg[v][colour.idx()] += 1;
        if !in_a {
            self.m_count += 1;
        }
    }

    fn detach(&mut self, s: Slot) {
        let SlotData { u, v, in_a, colour, .. } = self.slots[s].clone();
        self.note(u);
        self.note(v);
        self.adj[u].retain(|&x| x != s);
        self.adj[v].retain(|&x| x != s);
        self.cdeg[u][colour.idx()] -= 1;
        self.cdeg[v][colour.idx()] -= 1;
        if !in_a {
            self.m_count -= 1;
        }
    }

    pub(crate) fn set_colour(&mut self, s: Slot, c: Colour) {
        let old = self.slots[s].colour;
        if old == c {
            return;
        }
        if self.slots[s].alive {
            let (u, v) = (self.slots[s].u, self.slots[s].v);
            self.note(u);
            self.note(v);
            for x in [u, v] {
                self.cdeg[x][old.idx()] -= 1;
                self.cdeg[x][c.idx()] += 1;
            }
        }
        self.slots[s].colour = c;
    }

    pub(crate) fn kill_edge(&mut self, s: Slot) {
        debug_assert!(self.slots[s].alive);
        self.detach(s);
        self.slots[s].alive = false;
    }

    pub(crate) fn revive_edge(&mut self, s: Slot, c: Colour) {
        debug_assert!(!self.slots[s].alive);
        self.slots[s].colour = c;
        self.slots[s].alive = true;
        self.attach(s);
    }

    pub(crate) fn new_edge(&mut self, u: Vertex, v: Vertex, in_a: bool, c: Colour) -> Slot {
        let id = EdgeId(self.slots.last().map_or(1, |x| x.id.0 + 1));
        let s = self.slots.len();
        self.slots.push(SlotData {
            id,
            u,
            v,
            in_a,
            alive: true,
            colour: c,
        });
        self.attach(s);
        s
    }

    pub(crate) fn new_vertex(&mut self) -> Vertex {
        self.alive.push(true);
        self.adj.push(Vec::new());
        self.cdeg.push([0, 0]);
        self.alive_count += 1;
        self.alive.len() - 1
    }

    pub(crate) fn kill_vertex(&mut self, v: Vertex) {
        debug_assert!(self.alive[v] && self.adj[v].is_empty());
        self.alive[v] = false;
        self.alive_count -= 1;
    }

    pub(crate) fn revive_vertex(&mut self, v: Vertex) {
        debug_assert!(!self.alive[v]);
        self.alive[v] = true;
        self.alive_count += 1;
    }

    /// Vertices reachable from `start` in the A-class `c` without `skip`.
    fn a_side(&self, c: Colour, start: Vertex, skip: Slot) -> Vec<bool> {
        let mut side = vec![false; self.alive.len()];
        side[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &s in &self.adj[x] {
                let d = &self.slots[s];
                if s == skip || !d.in_a || d.colour != c {
                    continue;
                }
                let y = d.other(x);
                if !side[y] {
                    side[y] = true;
                    queue.push_back(y);
                }
            }
        }
        side
    }

    /// Path between `a` and `b` in the A-class `c`, as (vertex, slot)
    /// steps from `b` back towards `a`.
    pub(crate) fn a_path(&self, c: Colour, a: Vertex, b: Vertex) -> Option<Vec<(Vertex, Slot)>> {
        let mut parent: Vec<Option<(Vertex, Slot)>> = vec![None; self.alive.len()];
        let mut seen = vec![false; self.alive.len()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &s in &self.adj[x] {
                let d = &self.slots[s];
                if !d.in_a || d.colour != c {
                    continue;
                }
                let y = d.other(x);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, s));
                    queue.push_back(y);
                }
            }
        }
        if !seen[b] {
            return None;
        }
        let mut out = Vec::new();
        let mut y = b;
        while let Some((x, s)) = parent[y] {
            out.push((x, s));
            y = x;
        }
        Some(out)
    }

    /// Moves the A-edge `s` to the other class and returns the partner that
    /// moved the other way: the smallest-id edge on the cycle `s` closes
    /// that reconnects the halves of its old tree.
    pub(crate) fn swap(&mut self, s: Slot) -> Result<Slot> {
        let d = self.slots[s].clone();
        if !d.alive || !d.in_a {
            return Err(Error::domain(format!("edge {} is not an alive tree edge", d.id)));
        }
        let side = self.a_side(d.colour, d.u, s);
        let path = self
            .a_path(d.colour.other(), d.u, d.v)
            .ok_or_else(|| Error::domain("tree class is not spanning"))?;
        let mut best: Option<Slot> = None;
        let mut y = d.v;
        for &(x, t) in &path {
            if side[x] != side[y] && best.is_none_or(|b| self.slots[t].id < self.slots[b].id) {
                best = Some(t);
            }
            y = x;
        }
        let f = best.ok_or_else(|| Error::domain("no eligible swap partner"))?;
        self.set_colour(s, d.colour.other());
        self.set_colour(f, d.colour);
        Ok(f)
    }

    /// Current colouring of the alive edges.
    pub fn colouring(&self) -> Colouring {
        self.slots
            .iter()
            .filter(|d| d.alive)
            .map(|d| (d.id, d.colour))
            .collect()
    }

    /// Snapshot of the overlay as a graph on `1..=max vertex`, with its
    /// alive edges and ids, the set of A-edges and the colouring.
    pub fn snapshot(&self) -> (MultiGraph, BTreeSet<EdgeId>, Colouring) {
        let mut g = MultiGraph::new(self.alive.len() - 1);
        let mut a = BTreeSet::new();
        for d in self.slots.iter().filter(|d| d.alive) {
            g.add_edge_with_id(d.id, d.u, d.v).expect("overlay edges are valid");
            if d.in_a {
                a.insert(d.id);
            }
        }
        (g, a, self.colouring())
    }

    /// The alive part renumbered to `1..=k`, with the map back to overlay
    /// vertices (index 0 unused).
    pub fn dense_snapshot(&self) -> (MultiGraph, BTreeSet<EdgeId>, Colouring, Vec<Vertex>) {
        let mut back = vec![0];
        let mut index = vec![0; self.alive.len()];
        for v in self.alive_vertices() {
            index[v] = back.len();
            back.push(v);
        }
        let mut g = MultiGraph::new(back.len() - 1);
        let mut a = BTreeSet::new();
        for d in self.slots.iter().filter(|d| d.alive) {
            g.add_edge_with_id(d.id, index[d.u], index[d.v]).expect("overlay edges are valid");
            if d.in_a {
                a.insert(d.id);
            }
        }
        (g, a, self.colouring(), back)
    }

    /// Alive edges as sorted (id, u, v, in_a) tuples.
    pub(crate) fn edge_set(&self) -> Vec<(EdgeId, Vertex, Vertex, bool)> {
        self.slots
            .iter()
            .filter(|d| d.alive)
            .map(|d| (d.id, d.u, d.v, d.in_a))
            .collect()
    }

    /// Checks that the A-classes are spanning trees of the alive vertices.
    pub(crate) fn check_trees(&self) -> bool {
        let mut uf = crate::dsu::UnionFind::new(self.alive.len());
        let mut uf2 = crate::dsu::UnionFind::new(self.alive.len());
        let mut count = [0usize; 2];
        for d in self.slots.iter().filter(|d| d.alive && d.in_a) {
            if !self.alive[d.u] || !self.alive[d.v] {
                return false;
            }
            count[d.colour.idx()] += 1;
            let ok = match d.colour {
                Colour::Blue => uf.union(d.u, d.v),
                Colour::Red => uf2.union(d.u, d.v),
            };
            if !ok {
                return false;
            }
        }
        let need = self.alive_count.saturating_sub(1);
        count == [need, need]
    }
}
