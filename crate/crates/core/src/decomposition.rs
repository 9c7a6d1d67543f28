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

//! Two-colourings of multigraphs whose colour classes are spanning trees,
//! their validation, imbalance metrics, vertex classes and edge swaps.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Vertex};

/// Colour class of an edge. Files write `Blue` as `1` and `Red` as `2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Blue,
    Red,
}

impl Colour {
    pub const BOTH: [Colour; 2] = [Colour::Blue, Colour::Red];

    pub fn other(self) -> Colour {
        match self {
            Colour::Blue => Colour::Red,
            Colour::Red => Colour::Blue,
        }
    }

    /// `1` or `2`.
    pub fn number(self) -> u8 {
        match self {
            Colour::Blue => 1,
            Colour::Red => 2,
        }
    }

    pub fn from_number(k: u8) -> Option<Colour> {
        match k {
            1 => Some(Colour::Blue),
            2 => Some(Colour::Red),
            _ => None,
        }
    }

    pub(crate) fn idx(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Map from edge id to colour.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Colouring(BTreeMap<EdgeId, Colour>);

impl Colouring {
    pub fn new() -> Self {
        Colouring(BTreeMap::new())
    }

    pub fn get(&self, e: EdgeId) -> Option<Colour> {
        self.0.get(&e).copied()
    }

    pub fn set(&mut self, e: EdgeId, c: Colour) {
        self.0.insert(e, c);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entries in increasing edge id order.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, Colour)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn class(&self, c: Colour) -> Vec<EdgeId> {
        self.iter().filter(|&(_, k)| k == c).map(|(e, _)| e).collect()
    }

    /// Exchanges the two colours everywhere.
    pub fn flipped(&self) -> Colouring {
        Colouring(self.0.iter().map(|(&e, &c)| (e, c.other())).collect())
    }
}

impl FromIterator<(EdgeId, Colour)> for Colouring {
    fn from_iter<I: IntoIterator<Item = (EdgeId, Colour)>>(iter: I) -> Self {
        Colouring(iter.into_iter().collect())
    }
}

/// Anything that colours the edges of a graph.
pub trait EdgeColouring {
    fn graph(&self) -> &MultiGraph;
    fn colouring(&self) -> &Colouring;
}

/// A colouring of a double tree whose two classes are meant to be spanning
/// trees. Construction does not validate; see [`validate_double_tree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleTreeDecomposition<'g> {
    graph: &'g MultiGraph,
    colouring: Colouring,
}

impl<'g> DoubleTreeDecomposition<'g> {
    pub fn new(graph: &'g MultiGraph, colouring: Colouring) -> Self {
        DoubleTreeDecomposition { graph, colouring }
    }

    pub fn graph(&self) -> &'g MultiGraph {
        self.graph
    }

    pub fn colour(&self, e: EdgeId) -> Option<Colour> {
        self.colouring.get(e)
    }

    pub fn into_colouring(self) -> Colouring {
        self.colouring
    }

    pub fn is_valid(&self) -> bool {
        validate_double_tree(self).is_valid()
    }
}

impl EdgeColouring for DoubleTreeDecomposition<'_> {
    fn graph(&self) -> &MultiGraph {
        self.graph
    }
    fn colouring(&self) -> &Colouring {
        &self.colouring
    }
}

/// A colouring of a graph `G = A + M` where the colour classes restricted
/// to `A` are spanning trees and the leftover edges `M` are unconstrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition<'g> {
    graph: &'g MultiGraph,
    tree_edges: BTreeSet<EdgeId>,
    colouring: Colouring,
}

impl<'g> SplitDecomposition<'g> {
    pub fn new(graph: &'g MultiGraph, tree_edges: BTreeSet<EdgeId>, colouring: Colouring) -> Self {
        SplitDecomposition {
            graph,
            tree_edges,
            colouring,
        }
    }

    pub fn graph(&self) -> &'g MultiGraph {
        self.graph
    }

    /// A double tree decomposition seen as a split with `M` empty.
    pub fn from_double_tree(d: &DoubleTreeDecomposition<'g>) -> Self {
        SplitDecomposition {
            graph: d.graph,
            tree_edges: d.graph.edges().iter().map(|e| e.id).collect(),
            colouring: d.colouring.clone(),
        }
    }

    /// Recovers a split from a colouring alone: `A` takes the first
    /// spanning tree (in edge id order) of each colour class. Fails when a
    /// class does not connect the graph, which is exactly when no valid
    /// split has this colouring.
    pub fn from_colouring(graph: &'g MultiGraph, colouring: Colouring) -> Result<Self> {
        let mut violations = Vec::new();
        check_colouring(graph, &colouring, |_| false, &mut violations);
        if let Some(v) = violations.iter().find(|v| !matches!(v, Violation::ClassSize { .. } | Violation::Disconnected { .. })) {
            return Err(Error::domain(v.to_string()));
        }
        let n = graph.vertex_count();
        let mut tree_edges = BTreeSet::new();
        for colour in Colour::BOTH {
            let mut uf = UnionFind::new(n + 1);
            let mut joined = 1;
            for e in graph.edges().iter().filter(|e| colouring.get(e.id) == Some(colour)) {
                if uf.union(e.u, e.v) {
                    tree_edges.insert(e.id);
                    joined += 1;
                }
            }
            if joined < n {
                return Err(Error::domain(format!("class {colour} does not connect the graph")));
            }
        }
        Ok(SplitDecomposition {
            graph,
            tree_edges,
            colouring,
        })
    }

    /// Edges of `A`.
    pub fn tree_edges(&self) -> &BTreeSet<EdgeId> {
        &self.tree_edges
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.tree_edges.contains(&e)
    }

    /// Edges of `M`, in id order.
    pub fn extra_edges(&self) -> Vec<EdgeId> {
        self.graph
            .edges()
            .iter()
            .map(|e| e.id)
            .filter(|e| !self.tree_edges.contains(e))
            .collect()
    }

    pub fn colour(&self, e: EdgeId) -> Option<Colour> {
        self.colouring.get(e)
    }

    pub fn into_colouring(self) -> Colouring {
        self.colouring
    }

    /// The same split with a different colouring.
    pub fn with_colouring(&self, colouring: Colouring) -> Self {
        SplitDecomposition {
            graph: self.graph,
            tree_edges: self.tree_edges.clone(),
            colouring,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for &e in &self.tree_edges {
            if self.graph.edge(e).is_none() {
                violations.push(Violation::UnknownEdge { edge: e });
            }
        }
        if self.tree_edges.len() != self.graph.double_tree_size() {
            violations.push(Violation::TreeEdgeCount {
                expected: self.graph.double_tree_size(),
                found: self.tree_edges.len(),
            });
        }
        check_colouring(
            self.graph,
            &self.colouring,
            |e| self.tree_edges.contains(&e),
            &mut violations,
        );
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Swaps a tree edge between the two trees of `A`; see [`swap_edge`].
    pub fn swap_edge(&self, e: EdgeId) -> Result<(SplitDecomposition<'g>, EdgeId)> {
        if !self.is_valid() {
            return Err(Error::domain("swap on an invalid decomposition"));
        }
        if !self.tree_edges.contains(&e) {
            return Err(Error::domain(format!("edge {e} is not a tree edge")));
        }
        let mut colouring = self.colouring.clone();
        let f = swap_in(self.graph, |x| self.tree_edges.contains(&x), &mut colouring, e)?;
        Ok((self.with_colouring(colouring), f))
    }
}

impl EdgeColouring for SplitDecomposition<'_> {
    fn graph(&self) -> &MultiGraph {
        self.graph
    }
    fn colouring(&self) -> &Colouring {
        &self.colouring
    }
}

/// One violated invariant of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UncolouredEdge { edge: EdgeId },
    UnknownEdge { edge: EdgeId },
    TreeEdgeCount { expected: usize, found: usize },
    ClassSize { colour: Colour, expected: usize, found: usize },
    /// Adding `edge` to the class closed a cycle.
    Cycle { colour: Colour, edge: EdgeId },
    Disconnected { colour: Colour, components: usize },
}

impl Violation {
    /// Machine-readable `key value` style record.
    pub fn record(&self) -> String {
        match self {
            Violation::UncolouredEdge { edge } => format!("violation uncoloured edge={edge}"),
            Violation::UnknownEdge { edge } => format!("violation unknown_edge edge={edge}"),
            Violation::TreeEdgeCount { expected, found } => {
                format!("violation tree_edge_count expected={expected} found={found}")
            }
            Violation::ClassSize {
                colour,
                expected,
                found,
            } => format!("violation class_size colour={colour} expected={expected} found={found}"),
            Violation::Cycle { colour, edge } => {
                format!("violation cycle colour={colour} edge={edge}")
            }
            Violation::Disconnected { colour, components } => {
                format!("violation disconnected colour={colour} components={components}")
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UncolouredEdge { edge } => write!(f, "edge {edge} has no colour"),
            Violation::UnknownEdge { edge } => write!(f, "edge {edge} is not in the graph"),
            Violation::TreeEdgeCount { expected, found } => {
                write!(f, "double tree part has {found} edges, expected {expected}")
            }
            Violation::ClassSize {
                colour,
                expected,
                found,
            } => write!(f, "class {colour} has {found} edges, expected {expected}"),
            Violation::Cycle { colour, edge } => {
                write!(f, "class {colour} contains a cycle through edge {edge}")
            }
            Violation::Disconnected { colour, components } => {
                write!(f, "class {colour} has {components} components")
            }
        }
    }
}

/// Result of validating a decomposition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid")?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

fn check_colouring(
    g: &MultiGraph,
    colouring: &Colouring,
    in_tree: impl Fn(EdgeId) -> bool,
    out: &mut Vec<Violation>,
) {
    for e in g.edges() {
        if colouring.get(e.id).is_none() {
            out.push(Violation::UncolouredEdge { edge: e.id });
        }
    }
    for (e, _) in colouring.iter() {
        if g.edge(e).is_none() {
            out.push(Violation::UnknownEdge { edge: e });
        }
    }
    let n = g.vertex_count();
    for colour in Colour::BOTH {
        let class: Vec<_> = g
            .edges()
            .iter()
            .filter(|e| in_tree(e.id) && colouring.get(e.id) == Some(colour))
            .collect();
        let expected = n.saturating_sub(1);
        if class.len() != expected {
            out.push(Violation::ClassSize {
                colour,
                expected,
                found: class.len(),
            });
        }
        let mut uf = UnionFind::new(n + 1);
        let mut components = n;
        for e in class {
            if uf.union(e.u, e.v) {
                components -= 1;
            } else {
                out.push(Violation::Cycle {
                    colour,
                    edge: e.id,
                });
            }
        }
        if components > 1 {
            out.push(Violation::Disconnected { colour, components });
        }
    }
}

/// Lists every violated invariant of a double tree decomposition.
pub fn validate_double_tree(d: &DoubleTreeDecomposition<'_>) -> ValidationReport {
    let mut violations = Vec::new();
    check_colouring(d.graph, &d.colouring, |_| true, &mut violations);
    ValidationReport { violations }
}

/// Per-vertex colour degrees `[blue, red]`, indexed by vertex.
pub fn colour_degrees<D: EdgeColouring + ?Sized>(d: &D) -> Result<Vec<[usize; 2]>> {
    let g = d.graph();
    let mut deg = vec![[0usize; 2]; g.vertex_count() + 1];
    for e in g.edges() {
        let c = d
            .colouring()
            .get(e.id)
            .ok_or_else(|| Error::domain(format!("edge {} has no colour", e.id)))?;
        deg[e.u][c.idx()] += 1;
        deg[e.v][c.idx()] += 1;
    }
    Ok(deg)
}

/// Per-vertex absolute colour-degree differences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImbalanceReport {
    per_vertex: Vec<usize>,
    max: usize,
}

impl ImbalanceReport {
    pub(crate) fn from_values(per_vertex: Vec<usize>) -> Self {
        let max = per_vertex.iter().copied().max().unwrap_or(0);
        ImbalanceReport { per_vertex, max }
    }

    /// Imbalance at `v`; zero for vertices outside the graph.
    pub fn of(&self, v: Vertex) -> usize {
        self.per_vertex.get(v).copied().unwrap_or(0)
    }

    pub fn max_imbalance(&self) -> usize {
        self.max
    }

    /// Smallest vertex attaining the maximum.
    pub fn worst_vertex(&self) -> Option<Vertex> {
        (1..self.per_vertex.len()).find(|&v| self.per_vertex[v] == self.max)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.per_vertex.iter().copied().enumerate().skip(1)
    }

    /// Whether every vertex has imbalance at most `c`.
    pub fn is_balanced(&self, c: usize) -> bool {
        self.max <= c
    }
}

pub fn imbalance<D: EdgeColouring + ?Sized>(d: &D) -> Result<ImbalanceReport> {
    let deg = colour_degrees(d)?;
    let mut per_vertex = vec![0; deg.len()];
    for (v, [b, r]) in deg.into_iter().enumerate().skip(1) {
        per_vertex[v] = b.abs_diff(r);
    }
    Ok(ImbalanceReport::from_values(per_vertex))
}

/// Degree class relative to the balance constant `c`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// Degree at most `c + 2`.
    Small,
    /// Degree exactly `c + 3`; also big.
    Critical,
    /// Degree at least `c + 4`.
    Big,
}

impl VertexClass {
    pub fn of_degree(d: usize, c: usize) -> Self {
        if d <= c + 2 {
            VertexClass::Small
        } else if d == c + 3 {
            VertexClass::Critical
        } else {
            VertexClass::Big
        }
    }

    pub fn is_big(self) -> bool {
        self != VertexClass::Small
    }
}

pub fn classify_vertex(g: &MultiGraph, v: Vertex, c: usize) -> Result<VertexClass> {
    Ok(VertexClass::of_degree(g.degree(v)?, c))
}

/// Type of a vertex of degree 3 by the classes of its neighbours.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ThreeVertexType {
    /// Every neighbour is big.
    Rich,
    /// Three distinct neighbours, two big and one small.
    Poor,
    /// A double edge to a big vertex and an edge to a small vertex.
    Bad,
    /// At least two edges go to small vertices.
    Irregular,
}

/// Classifies a 3-vertex given the degrees of its three neighbours, listed
/// once per edge.
pub(crate) fn three_vertex_type(nbrs: [(Vertex, usize); 3], c: usize) -> ThreeVertexType {
    let small = |d: usize| d <= c + 2;
    let small_edges = nbrs.iter().filter(|&&(_, d)| small(d)).count();
    match small_edges {
        0 => ThreeVertexType::Rich,
        1 => {
            let big: Vec<_> = nbrs.iter().filter(|&&(_, d)| !small(d)).collect();
            if big[0].0 == big[1].0 {
                ThreeVertexType::Bad
            } else {
                ThreeVertexType::Poor
            }
        }
        _ => ThreeVertexType::Irregular,
    }
}

pub fn classify_3vertex(g: &MultiGraph, v: Vertex, c: usize) -> Result<ThreeVertexType> {
    let d = g.degree(v)?;
    if d != 3 {
        return Err(Error::domain(format!("vertex {v} has degree {d}, not 3")));
    }
    let nb = g.neighbours(v);
    let mut nbrs = [(0, 0); 3];
    for (slot, &x) in nbrs.iter_mut().zip(&nb) {
        *slot = (x, g.degree(x)?);
    }
    Ok(three_vertex_type(nbrs, c))
}

/// Moves `e` to the other class and returns the partner edge that moved the
/// opposite way. Only edges accepted by `in_tree` take part.
pub(crate) fn swap_in(
    g: &MultiGraph,
    in_tree: impl Fn(EdgeId) -> bool,
    colouring: &mut Colouring,
    e: EdgeId,
) -> Result<EdgeId> {
    let edge = *g
        .edge(e)
        .ok_or_else(|| Error::domain(format!("unknown edge {e}")))?;
    let from = colouring
        .get(e)
        .ok_or_else(|| Error::domain(format!("edge {e} has no colour")))?;
    let n = g.vertex_count();
    let class_adj = |colour: Colour, skip: EdgeId| {
        let mut adj: Vec<Vec<(Vertex, EdgeId)>> = vec![Vec::new(); n + 1];
        for x in g.edges() {
            if x.id != skip && in_tree(x.id) && colouring.get(x.id) == Some(colour) {
                adj[x.u].push((x.v, x.id));
                adj[x.v].push((x.u, x.id));
            }
        }
        adj
    };
    // Side of edge.u once e leaves its class.
    let adj_from = class_adj(from, e);
    let mut side = vec![false; n + 1];
    side[edge.u] = true;
    let mut queue = VecDeque::from([edge.u]);
    while let Some(x) = queue.pop_front() {
        for &(y, _) in &adj_from[x] {
            if !side[y] {
                side[y] = true;
                queue.push_back(y);
            }
        }
    }
    // Path between the endpoints in the other class.
    let adj_to = class_adj(from.other(), e);
    let mut parent: Vec<Option<(Vertex, EdgeId)>> = vec![None; n + 1];
    let mut seen = vec![false; n + 1];
    seen[edge.u] = true;
    let mut queue = VecDeque::from([edge.u]);
    while let Some(x) = queue.pop_front() {
        if x == edge.v {
            break;
        }
        for &(y, id) in &adj_to[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, id));
                queue.push_back(y);
            }
        }
    }
    if !seen[edge.v] {
        return Err(Error::domain("swap on a class that is not spanning"));
    }
    let mut partner: Option<EdgeId> = None;
    let mut x = edge.v;
    while let Some((p, id)) = parent[x] {
        if side[p] != side[x] {
            partner = Some(partner.map_or(id, |best| best.min(id)));
        }
        x = p;
    }
    let f = partner.ok_or_else(|| Error::domain("no eligible swap partner"))?;
    colouring.set(e, from.other());
    colouring.set(f, from);
    Ok(f)
}

/// Swaps `e` into the other tree. The partner is the smallest-id edge on the
/// cycle `e` closes in the other tree that reconnects the two halves of
/// `e`'s old tree.
pub fn swap_edge<'g>(
    d: &DoubleTreeDecomposition<'g>,
    e: EdgeId,
) -> Result<(DoubleTreeDecomposition<'g>, EdgeId)> {
    if !d.is_valid() {
        return Err(Error::domain("swap on an invalid decomposition"));
    }
    let mut colouring = d.colouring.clone();
    let f = swap_in(d.graph, |_| true, &mut colouring, e)?;
    Ok((DoubleTreeDecomposition::new(d.graph, colouring), f))
}

/// Checks that swapping `e`, whose endpoint `leaf` is a leaf of `e`'s
/// class, keeps `leaf` a leaf of that class.
pub fn leaf_preserving_swap_check(
    d: &DoubleTreeDecomposition<'_>,
    e: EdgeId,
    leaf: Vertex,
) -> Result<bool> {
    let edge = d
        .graph
        .edge(e)
        .ok_or_else(|| Error::domain(format!("unknown edge {e}")))?;
    if !edge.touches(leaf) {
        return Err(Error::domain(format!("vertex {leaf} is not an endpoint of {e}")));
    }
    let colour = d
        .colour(e)
        .ok_or_else(|| Error::domain(format!("edge {e} has no colour")))?;
    let deg = colour_degrees(d)?;
    if deg[leaf][colour.idx()] != 1 {
        return Err(Error::domain(format!(
            "vertex {leaf} is not a leaf of class {colour}"
        )));
    }
    let (after, f) = swap_edge(d, e)?;
    let deg_after = colour_degrees(&after)?;
    let partner = d.graph.edge(f).expect("partner is a graph edge");
    Ok(partner.touches(leaf) && deg_after[leaf][colour.idx()] == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn colouring(pairs: &[(usize, u8)]) -> Colouring {
        pairs
            .iter()
            .map(|&(e, c)| (EdgeId(e), Colour::from_number(c).unwrap()))
            .collect()
    }

    // K4 edge ids: 12=1 13=2 14=3 23=4 24=5 34=6
    fn k4_paths() -> Colouring {
        colouring(&[(1, 1), (4, 1), (6, 1), (2, 2), (5, 2), (3, 2)])
    }

    #[test]
    fn double_edge_is_valid() {
        let g = MultiGraph::from_edges(2, [(1, 2), (1, 2)]).unwrap();
        let d = DoubleTreeDecomposition::new(&g, colouring(&[(1, 1), (2, 2)]));
        assert!(validate_double_tree(&d).is_valid());
        assert_eq!(imbalance(&d).unwrap().max_imbalance(), 0);
    }

    #[test]
    fn star_and_triangle_is_invalid() {
        let g = k4();
        let d = DoubleTreeDecomposition::new(&g, colouring(&[(1, 1), (2, 1), (3, 1), (4, 2), (5, 2), (6, 2)]));
        let report = validate_double_tree(&d);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Cycle { colour: Colour::Red, .. })));
        assert!(report.violations.contains(&Violation::Disconnected {
            colour: Colour::Red,
            components: 2
        }));
    }

    #[test]
    fn hamiltonian_paths_of_k4() {
        let g = k4();
        let d = DoubleTreeDecomposition::new(&g, k4_paths());
        assert!(d.is_valid());
        let r = imbalance(&d).unwrap();
        assert_eq!(r.max_imbalance(), 1);
        assert!(r.iter().all(|(_, x)| x == 1));
    }

    #[test]
    fn missing_colour_is_reported() {
        let g = k4();
        let d = DoubleTreeDecomposition::new(&g, colouring(&[(1, 1)]));
        assert!(imbalance(&d).is_err());
        assert!(validate_double_tree(&d)
            .violations
            .contains(&Violation::UncolouredEdge { edge: EdgeId(2) }));
    }

    #[test]
    fn swap_on_double_edge_exchanges_colours() {
        let g = MultiGraph::from_edges(2, [(1, 2), (1, 2)]).unwrap();
        let d = DoubleTreeDecomposition::new(&g, colouring(&[(1, 1), (2, 2)]));
        let (after, f) = swap_edge(&d, EdgeId(1)).unwrap();
        assert_eq!(f, EdgeId(2));
        assert_eq!(after.colour(EdgeId(1)), Some(Colour::Red));
        assert_eq!(after.colour(EdgeId(2)), Some(Colour::Blue));
    }

    #[test]
    fn swap_in_k4_picks_smallest_partner() {
        let g = k4();
        let d = DoubleTreeDecomposition::new(&g, k4_paths());
        // Removing 12 from path 1-2-3-4 leaves {1} | {2,3,4}. In the red
        // path 3-1-4-2, vertices 1 and 2 are joined by 14, 42; only 14
        // crosses the cut.
        let (after, f) = swap_edge(&d, EdgeId(1)).unwrap();
        assert_eq!(f, EdgeId(3));
        assert!(after.is_valid());
    }

    #[test]
    fn poor_vertex_singleton_swap() {
        // v=1 with vs (s=2) and vx (x=3) blue, vy (y=4) red; rest makes
        // a double tree on 4 vertices.
        let g = MultiGraph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = DoubleTreeDecomposition::new(&g, colouring(&[(1, 1), (2, 1), (3, 2), (4, 2), (5, 1), (6, 2)]));
        assert!(d.is_valid());
        assert!(leaf_preserving_swap_check(&d, EdgeId(3), 1).unwrap());
    }

    #[test]
    fn classes() {
        assert_eq!(VertexClass::of_degree(6, 4), VertexClass::Small);
        assert_eq!(VertexClass::of_degree(7, 4), VertexClass::Critical);
        assert_eq!(VertexClass::of_degree(9, 4), VertexClass::Big);
        assert!(VertexClass::Critical.is_big());
    }

    #[test]
    fn three_vertex_types() {
        assert_eq!(three_vertex_type([(2, 7), (3, 8), (4, 9)], 4), ThreeVertexType::Rich);
        assert_eq!(three_vertex_type([(2, 7), (3, 8), (4, 2)], 4), ThreeVertexType::Poor);
        assert_eq!(three_vertex_type([(2, 7), (2, 7), (4, 2)], 4), ThreeVertexType::Bad);
        assert_eq!(three_vertex_type([(2, 7), (3, 3), (4, 2)], 4), ThreeVertexType::Irregular);
        let g = k4();
        assert!(classify_3vertex(&MultiGraph::from_edges(2, [(1, 2)]).unwrap(), 1, 4).is_err());
        assert_eq!(classify_3vertex(&g, 1, 4).unwrap(), ThreeVertexType::Irregular);
    }
}
