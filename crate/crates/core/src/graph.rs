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

//! Finite multigraphs and digraphs with stable edge identifiers.

use std::collections::BTreeSet;
use std::fmt;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};

/// Vertices are numbered `1..=n`.
pub type Vertex = usize;

/// Stable identifier of an edge (or arc). Identifiers are positive and
/// strictly increasing in insertion order; they are never reused.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    /// The endpoint opposite `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

/// Undirected multigraph without self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    // adj[v] holds positions into `edges`; adj[0] is unused.
    adj: Vec<Vec<usize>>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n + 1],
        }
    }

    /// Builds a graph whose edges get ids `1, 2, ...` in iteration order.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = MultiGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n
    }

    /// Edges in increasing id order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.position(id).map(|p| &self.edges[p])
    }

    pub(crate) fn position(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.last().map_or(1, |e| e.id.0 + 1))
    }

    /// Appends an edge with a fresh id.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId> {
        let id = self.next_edge_id();
        self.add_edge_with_id(id, u, v)?;
        Ok(id)
    }

    /// Appends an edge with an explicit id, which must exceed every existing id.
    pub fn add_edge_with_id(&mut self, id: EdgeId, u: Vertex, v: Vertex) -> Result<()> {
        if !self.contains_vertex(u) || !self.contains_vertex(v) {
            return Err(Error::domain(format!(
                "edge {u}-{v} has an endpoint outside 1..={}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::domain(format!("self-loop at vertex {u}")));
        }
        if id.0 == 0 || id < self.next_edge_id() {
            return Err(Error::domain(format!("edge id {id} is not fresh")));
        }
        let pos = self.edges.len();
        self.edges.push(Edge { id, u, v });
        self.adj[u].push(pos);
        self.adj[v].push(pos);
        Ok(())
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.adj.push(Vec::new());
        self.n
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::domain(format!("vertex {v} not in 1..={}", self.n)))
        }
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    /// Incident edges of `v` in increasing id order.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        self.adj
            .get(v)
            .into_iter()
            .flatten()
            .map(move |&p| &self.edges[p])
    }

    /// Neighbours of `v`, repeated once per parallel edge.
    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        self.incident(v).map(|e| e.other(v)).collect()
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        self.incident(u).filter(|e| e.other(u) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut uf = UnionFind::new(self.n + 1);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        let mut by_root: Vec<Option<usize>> = vec![None; self.n + 1];
        let mut comps: Vec<Vec<Vertex>> = Vec::new();
        for v in self.vertices() {
            let r = uf.find(v);
            match by_root[r] {
                Some(i) => comps[i].push(v),
                None => {
                    by_root[r] = Some(comps.len());
                    comps.push(vec![v]);
                }
            }
        }
        comps
    }

    /// Whether the given edges form a spanning tree of the vertex set.
    pub fn is_spanning_tree(&self, edge_ids: &[EdgeId]) -> Result<bool> {
        let mut seen = BTreeSet::new();
        for &id in edge_ids {
            if self.edge(id).is_none() {
                return Err(Error::domain(format!("unknown edge id {id}")));
            }
            if !seen.insert(id) {
                return Err(Error::domain(format!("edge id {id} listed twice")));
            }
        }
        if self.n == 0 {
            return Ok(edge_ids.is_empty());
        }
        if edge_ids.len() != self.n - 1 {
            return Ok(false);
        }
        let mut uf = UnionFind::new(self.n + 1);
        for &id in edge_ids {
            let e = self.edge(id).expect("checked above");
            if !uf.union(e.u, e.v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Edges with exactly one endpoint on side `a` of the cut.
    pub fn crossing_edges(&self, cut: &Cut) -> Result<Vec<EdgeId>> {
        for &v in &cut.side {
            self.check_vertex(v)?;
        }
        if cut.side.is_empty() || cut.side.len() >= self.n {
            return Err(Error::domain("both sides of a cut must be non-empty"));
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| cut.side.contains(&e.u) != cut.side.contains(&e.v))
            .map(|e| e.id)
            .collect())
    }

    /// Number of edges whose endpoints lie in different parts.
    pub fn partition_crossing_count(&self, partition: &Partition) -> Result<usize> {
        let label = partition.labels(self.n)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| label[e.u] != label[e.v])
            .count())
    }

    /// `2(n-1)`, the edge count of a double tree on this vertex set.
    pub fn double_tree_size(&self) -> usize {
        2 * self.n.saturating_sub(1)
    }
}

/// One side of a two-sided cut; the other side is the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side: BTreeSet<Vertex>,
}

impl Cut {
    pub fn new<I: IntoIterator<Item = Vertex>>(side: I) -> Self {
        Cut {
            side: side.into_iter().collect(),
        }
    }
}

/// A partition of the vertex set into non-empty parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<Vec<Vertex>>,
}

impl Partition {
    pub fn new(mut parts: Vec<Vec<Vertex>>) -> Self {
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort();
        Partition { parts }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            parts: (1..=n).map(|v| vec![v]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part index of every vertex; fails unless the parts cover `1..=n`
    /// exactly once with no empty part.
    pub fn labels(&self, n: usize) -> Result<Vec<usize>> {
        let mut label = vec![usize::MAX; n + 1];
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::domain("partition has an empty part"));
            }
            for &v in part {
                if v == 0 || v > n {
                    return Err(Error::domain(format!("partition names unknown vertex {v}")));
                }
                if label[v] != usize::MAX {
                    return Err(Error::domain(format!("vertex {v} appears in two parts")));
                }
                label[v] = i;
            }
        }
        if let Some(v) = (1..=n).find(|&v| label[v] == usize::MAX) {
            return Err(Error::domain(format!("vertex {v} is in no part")));
        }
        Ok(label)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub id: EdgeId,
    pub tail: Vertex,
    pub head: Vertex,
}

/// Directed multigraph without self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            arcs: Vec::new(),
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut d = Digraph::new(n);
        for (t, h) in arcs {
            d.add_arc(t, h)?;
        }
        Ok(d)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: EdgeId) -> Option<&Arc> {
        self.arcs
            .binary_search_by_key(&id, |a| a.id)
            .ok()
            .map(|p| &self.arcs[p])
    }

    pub fn add_arc(&mut self, tail: Vertex, head: Vertex) -> Result<EdgeId> {
        let id = EdgeId(self.arcs.last().map_or(1, |a| a.id.0 + 1));
        self.add_arc_with_id(id, tail, head)?;
        Ok(id)
    }

    pub fn add_arc_with_id(&mut self, id: EdgeId, tail: Vertex, head: Vertex) -> Result<()> {
        for x in [tail, head] {
            if x == 0 || x > self.n {
                return Err(Error::domain(format!(
                    "arc {tail}->{head} has an endpoint outside 1..={}",
                    self.n
                )));
            }
        }
        if tail == head {
            return Err(Error::domain(format!("self-loop at vertex {tail}")));
        }
        if id.0 == 0 || self.arcs.last().is_some_and(|a| a.id >= id) {
            return Err(Error::domain(format!("arc id {id} is not fresh")));
        }
        self.arcs.push(Arc { id, tail, head });
        Ok(())
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.arcs.iter().filter(|a| a.tail == v).count()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.arcs.iter().filter(|a| a.head == v).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn degrees_count_parallel_edges() {
        let g = MultiGraph::from_edges(3, [(1, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.degree(2).unwrap(), 3);
        assert_eq!(g.multiplicity(1, 2), 2);
        assert!(g.degree(4).is_err());
    }

    #[test]
    fn self_loops_are_rejected() {
        assert!(MultiGraph::from_edges(2, [(1, 1)]).is_err());
    }

    #[test]
    fn spanning_tree_check() {
        let g = k4();
        assert!(g.is_spanning_tree(&[EdgeId(1), EdgeId(2), EdgeId(3)]).unwrap());
        assert!(!g.is_spanning_tree(&[EdgeId(1), EdgeId(2), EdgeId(4)]).unwrap());
        assert!(!g.is_spanning_tree(&[EdgeId(1), EdgeId(2)]).unwrap());
        assert!(g.is_spanning_tree(&[EdgeId(9)]).is_err());
    }

    #[test]
    fn crossing_edges_of_k4_cut() {
        let g = k4();
        let cut = Cut::new([1]);
        assert_eq!(
            g.crossing_edges(&cut).unwrap(),
            vec![EdgeId(1), EdgeId(2), EdgeId(3)]
        );
        assert!(g.crossing_edges(&Cut::new([])).is_err());
    }

    #[test]
    fn components_sorted() {
        let g = MultiGraph::from_edges(5, [(4, 5), (1, 3)]).unwrap();
        assert_eq!(g.components(), vec![vec![1, 3], vec![2], vec![4, 5]]);
    }

    #[test]
    fn partition_labels_validate() {
        assert!(Partition::new(vec![vec![1, 2], vec![3]]).labels(3).is_ok());
        assert!(Partition::new(vec![vec![1, 2]]).labels(3).is_err());
        assert!(Partition::new(vec![vec![1, 2], vec![2, 3]]).labels(3).is_err());
    }
}
