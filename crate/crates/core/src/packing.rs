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

//! Packing two edge-disjoint spanning trees.
//!
//! Edges are offered one at a time to two forests. An edge that fits
//! neither forest may still get in by a chain of exchanges: it displaces an
//! edge on the cycle it closes, which moves to the other forest, and so on.
//! Chains are found by breadth-first search, which keeps both forests
//! acyclic. When the search fails for every leftover edge, the edges it
//! reached span a vertex partition with too few crossing edges.

use std::collections::{BTreeSet, VecDeque};

use crate::decomposition::{Colour, Colouring, SplitDecomposition};
use crate::dsu::UnionFind;
use crate::error::Result;
use crate::graph::{MultiGraph, Partition, Vertex};

/// Outcome of [`pack_double_tree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackOutcome<'g> {
    /// Two edge-disjoint spanning trees form `A`; the rest is `M`, coloured 1.
    Feasible(SplitDecomposition<'g>),
    /// A partition crossed by fewer than `2(|P| - 1)` edges.
    Infeasible(Partition),
}

impl<'g> PackOutcome<'g> {
    pub fn feasible(self) -> Option<SplitDecomposition<'g>> {
        match self {
            PackOutcome::Feasible(d) => Some(d),
            PackOutcome::Infeasible(_) => None,
        }
    }
}

struct Forests<'a> {
    g: &'a MultiGraph,
    member: Vec<Option<usize>>,
    adj: [Vec<Vec<(Vertex, usize)>>; 2],
    size: [usize; 2],
}

impl<'a> Forests<'a> {
    fn new(g: &'a MultiGraph) -> Self {
        let n = g.vertex_count();
        Forests {
            g,
            member: vec![None; g.edge_count()],
            adj: [vec![Vec::new(); n + 1], vec![Vec::new(); n + 1]],
            size: [0, 0],
        }
    }

    fn insert(&mut self, pos: usize, i: usize) {
        let e = self.g.edges()[pos];
        self.adj[i][e.u].push((e.v, pos));
        self.adj[i][e.v].push((e.u, pos));
        self.member[pos] = Some(i);
        self.size[i] += 1;
    }

    fn remove(&mut self, pos: usize) {
        if let Some(i) = self.member[pos].take() {
            let e = self.g.edges()[pos];
            self.adj[i][e.u].retain(|&(_, p)| p != pos);
            self.adj[i][e.v].retain(|&(_, p)| p != pos);
            self.size[i] -= 1;
        }
    }

    /// Edge positions on the forest path from `a` to `b`, if connected.
    fn path(&self, i: usize, a: Vertex, b: Vertex) -> Option<Vec<usize>> {
        let n = self.g.vertex_count();
        let mut parent: Vec<Option<(Vertex, usize)>> = vec![None; n + 1];
        let mut seen = vec![false; n + 1];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                let mut out = Vec::new();
                let mut y = b;
                while let Some((p, pos)) = parent[y] {
                    out.push(pos);
                    y = p;
                }
                return Some(out);
            }
            for &(y, pos) in &self.adj[i][x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, pos));
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Breadth-first search for an exchange chain from `sources`. Returns
    /// true after augmenting, or false with `visited` marking every edge
    /// the search reached.
    fn augment(&mut self, sources: &[usize], visited: &mut [bool]) -> bool {
        let m = self.g.edge_count();
        let mut label: Vec<Option<(usize, usize)>> = vec![None; m];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in sources {
            visited[s] = true;
            queue.push_back(s);
        }
        while let Some(f) = queue.pop_front() {
            let e = self.g.edges()[f];
            for i in 0..2 {
                if self.member[f] == Some(i) {
                    continue;
                }
                match self.path(i, e.u, e.v) {
                    None => {
                        self.apply_chain(f, i, &label);
                        return true;
                    }
                    Some(cycle) => {
                        for g in cycle {
                            if !visited[g] {
                                visited[g] = true;
                                label[g] = Some((f, i));
                                queue.push_back(g);
                            }
                        }
                    }
                }
            }
        }
        false
    }

    fn apply_chain(&mut self, sink: usize, target: usize, label: &[Option<(usize, usize)>]) {
        let (mut f, mut target) = (sink, target);
        loop {
            self.remove(f);
            self.insert(f, target);
            match label[f] {
                Some((prev, j)) => {
                    f = prev;
                    target = j;
                }
                None => break,
            }
        }
    }
}

/// Finds two edge-disjoint spanning trees or a partition certifying that
/// none exist.
pub fn pack_double_tree(g: &MultiGraph) -> PackOutcome<'_> {
    let n = g.vertex_count();
    let all_blue = || -> Colouring { g.edges().iter().map(|e| (e.id, Colour::Blue)).collect() };
    if n <= 1 {
        return PackOutcome::Feasible(SplitDecomposition::new(g, BTreeSet::new(), all_blue()));
    }
    let comps = g.components();
    if comps.len() > 1 {
        return PackOutcome::Infeasible(Partition::new(comps));
    }
    let target = g.double_tree_size();
    let mut forests = Forests::new(g);
    let mut leftover = Vec::new();
    let mut scratch = vec![false; g.edge_count()];
    for pos in 0..g.edge_count() {
        if forests.size[0] + forests.size[1] == target {
            break;
        }
        scratch.iter_mut().for_each(|x| *x = false);
        if !forests.augment(&[pos], &mut scratch) {
            leftover.push(pos);
        }
    }
    if forests.size[0] + forests.size[1] == target {
        let mut tree_edges = BTreeSet::new();
        let mut colouring = Colouring::new();
        for (pos, e) in g.edges().iter().enumerate() {
            match forests.member[pos] {
                Some(i) => {
                    tree_edges.insert(e.id);
                    colouring.set(e.id, Colour::BOTH[i]);
                }
                None => colouring.set(e.id, Colour::Blue),
            }
        }
        return PackOutcome::Feasible(SplitDecomposition::new(g, tree_edges, colouring));
    }
    // Edges that failed once never fit later, so a joint search from all of
    // them fails too; its reach determines the witness.
    let mut reached = vec![false; g.edge_count()];
    let augmented = forests.augment(&leftover, &mut reached);
    debug_assert!(!augmented);
    let mut uf = UnionFind::new(n + 1);
    for (pos, e) in g.edges().iter().enumerate() {
        if reached[pos] {
            uf.union(e.u, e.v);
        }
    }
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    let mut index = vec![usize::MAX; n + 1];
    for v in 1..=n {
        let r = uf.find(v);
        if index[r] == usize::MAX {
            index[r] = parts.len();
            parts.push(Vec::new());
        }
        parts[index[r]].push(v);
    }
    let witness = Partition::new(parts);
    debug_assert!(verify_infeasibility_witness(g, &witness).unwrap_or(false));
    PackOutcome::Infeasible(witness)
}

/// Whether fewer than `2(|P| - 1)` edges cross the partition.
pub fn verify_infeasibility_witness(g: &MultiGraph, partition: &Partition) -> Result<bool> {
    let crossing = g.partition_crossing_count(partition)?;
    Ok(crossing < 2 * partition.len().saturating_sub(1))
}
