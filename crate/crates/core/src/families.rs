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

//! Digraphs whose arc-disjoint arborescence (or strongly connected)
//! decompositions are unique and badly out-balanced, with exhaustive
//! enumerators to certify both facts on small instances.

use std::collections::{BTreeMap, VecDeque};

use crate::dsu::RollbackUnionFind;
use crate::error::{Error, Result};
use crate::graph::{Digraph, EdgeId, Vertex};

/// Largest arc count the enumerators accept.
pub const MAX_ENUMERATION_ARCS: usize = 24;

/// Class of each arc (1-based), in the digraph's arc order.
pub type ArcClasses = Vec<usize>;

/// Family for arborescences rooted at vertex 1, with class labels.
///
/// Class 1 is `v1 -> vn` together with `vn -> vi` for `1 < i < n`; every
/// other class is the path `v1 -> v2 -> ... -> vn`.
pub fn arborescence_family_classes(n: usize, k: usize) -> Result<(Digraph, ArcClasses)> {
    if n < 2 {
        return Err(Error::domain(format!("arborescence family needs n >= 2, got {n}")));
    }
    if k < 2 {
        return Err(Error::domain(format!("need at least 2 classes, got {k}")));
    }
    let mut arcs = vec![(1, n)];
    arcs.extend((2..n).map(|i| (n, i)));
    let mut classes = vec![1; arcs.len()];
    for class in 2..=k {
        arcs.extend((1..n).map(|i| (i, i + 1)));
        classes.resize(arcs.len(), class);
    }
    Ok((Digraph::from_arcs(n, arcs)?, classes))
}

pub fn arborescence_family(n: usize, k: usize) -> Result<Digraph> {
    Ok(arborescence_family_classes(n, k)?.0)
}

/// Vertices of the strong family: `s = 1`, `vi = i + 1`, `t = n + 2`.
pub fn strong_family_t(n: usize) -> Vertex {
    n + 2
}

/// Family of `n + 2` vertices whose decomposition into spanning strongly
/// connected classes is unique.
///
/// Class 1 (and every class past 2) is `s -> t`, `t -> vi`, `vi -> s` for
/// all `i`; class 2 is the cycle `s -> v1 -> ... -> vn -> t -> s`.
pub fn strong_family_classes(n: usize, k: usize) -> Result<(Digraph, ArcClasses)> {
    if n < 1 {
        return Err(Error::domain("strong family needs n >= 1"));
    }
    if k < 2 {
        return Err(Error::domain(format!("need at least 2 classes, got {k}")));
    }
    let (s, t) = (1, strong_family_t(n));
    let fan = || {
        let mut a = vec![(s, t)];
        a.extend((2..=n + 1).map(|v| (t, v)));
        a.extend((2..=n + 1).map(|v| (v, s)));
        a
    };
    let mut arcs = fan();
    let mut classes = vec![1; arcs.len()];
    arcs.push((s, 2));
    arcs.extend((2..=n).map(|v| (v, v + 1)));
    arcs.extend([(n + 1, t), (t, s)]);
    classes.resize(arcs.len(), 2);
    for class in 3..=k {
        arcs.extend(fan());
        classes.resize(arcs.len(), class);
    }
    Ok((Digraph::from_arcs(n + 2, arcs)?, classes))
}

pub fn strong_family(n: usize, k: usize) -> Result<Digraph> {
    Ok(strong_family_classes(n, k)?.0)
}

fn check_classes(d: &Digraph, classes: &[usize], k: usize) -> Result<()> {
    if classes.len() != d.arc_count() {
        return Err(Error::domain(format!(
            "{} class labels for {} arcs",
            classes.len(),
            d.arc_count()
        )));
    }
    if let Some(&c) = classes.iter().find(|&&c| c == 0 || c > k) {
        return Err(Error::domain(format!("class {c} outside 1..={k}")));
    }
    Ok(())
}

fn reachable_from(d: &Digraph, classes: &[usize], class: usize, root: Vertex, reverse: bool) -> Vec<bool> {
    let n = d.vertex_count();
    let mut adj = vec![Vec::new(); n + 1];
    for (a, _) in d.arcs().iter().zip(classes).filter(|&(_, &c)| c == class) {
        if reverse {
            adj[a.head].push(a.tail);
        } else {
            adj[a.tail].push(a.head);
        }
    }
    let mut seen = vec![false; n + 1];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Whether every class is a spanning arborescence rooted at `root`.
pub fn is_arborescence_partition(d: &Digraph, classes: &[usize], k: usize, root: Vertex) -> bool {
    let n = d.vertex_count();
    if check_classes(d, classes, k).is_err() || root == 0 || root > n {
        return false;
    }
    (1..=k).all(|class| {
        let mut indeg = vec![0usize; n + 1];
        for (a, _) in d.arcs().iter().zip(classes).filter(|&(_, &c)| c == class) {
            indeg[a.head] += 1;
        }
        let seen = reachable_from(d, classes, class, root, false);
        (1..=n).all(|v| indeg[v] == usize::from(v != root) && seen[v])
    })
}

/// Whether every class is spanning and strongly connected.
pub fn is_strong_partition(d: &Digraph, classes: &[usize], k: usize) -> bool {
    let n = d.vertex_count();
    if check_classes(d, classes, k).is_err() || n == 0 {
        return false;
    }
    (1..=k).all(|class| {
        let fwd = reachable_from(d, classes, class, 1, false);
        let back = reachable_from(d, classes, class, 1, true);
        (1..=n).all(|v| fwd[v] && back[v])
    })
}

/// Partition of the arcs into `k` spanning arborescences rooted at `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArborescencePartition<'d> {
    digraph: &'d Digraph,
    colour: BTreeMap<EdgeId, usize>,
    k: usize,
    root: Vertex,
}

/// Partition of the arcs into `k` spanning strongly connected digraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongPartition<'d> {
    digraph: &'d Digraph,
    colour: BTreeMap<EdgeId, usize>,
    k: usize,
}

fn colour_map(d: &Digraph, classes: &[usize]) -> BTreeMap<EdgeId, usize> {
    d.arcs().iter().zip(classes).map(|(a, &c)| (a.id, c)).collect()
}

/// Common view of the two partition kinds.
pub trait ArcPartition {
    fn digraph(&self) -> &Digraph;
    /// Class of every arc, 1-based.
    fn colour(&self) -> &BTreeMap<EdgeId, usize>;
    fn class_count(&self) -> usize;
    fn is_valid(&self) -> bool;

    /// Class labels in arc order.
    fn classes(&self) -> ArcClasses {
        self.digraph().arcs().iter().map(|a| self.colour()[&a.id]).collect()
    }
}

impl<'d> ArborescencePartition<'d> {
    pub fn new(digraph: &'d Digraph, root: Vertex, classes: &[usize], k: usize) -> Result<Self> {
        if !is_arborescence_partition(digraph, classes, k, root) {
            return Err(Error::domain(format!("not a partition into {k} arborescences rooted at {root}")));
        }
        Ok(ArborescencePartition {
            digraph,
            colour: colour_map(digraph, classes),
            k,
            root,
        })
    }

    pub fn root(&self) -> Vertex {
        self.root
    }
}

impl ArcPartition for ArborescencePartition<'_> {
    fn digraph(&self) -> &Digraph {
        self.digraph
    }

    fn colour(&self) -> &BTreeMap<EdgeId, usize> {
        &self.colour
    }

    fn class_count(&self) -> usize {
        self.k
    }

    fn is_valid(&self) -> bool {
        is_arborescence_partition(self.digraph, &self.classes(), self.k, self.root)
    }
}

impl<'d> StrongPartition<'d> {
    pub fn new(digraph: &'d Digraph, classes: &[usize], k: usize) -> Result<Self> {
        if !is_strong_partition(digraph, classes, k) {
            return Err(Error::domain(format!(
                "not a partition into {k} spanning strongly connected digraphs"
            )));
        }
        Ok(StrongPartition {
            digraph,
            colour: colour_map(digraph, classes),
            k,
        })
    }
}

impl ArcPartition for StrongPartition<'_> {
    fn digraph(&self) -> &Digraph {
        self.digraph
    }

    fn colour(&self) -> &BTreeMap<EdgeId, usize> {
        &self.colour
    }

    fn class_count(&self) -> usize {
        self.k
    }

    fn is_valid(&self) -> bool {
        is_strong_partition(self.digraph, &self.classes(), self.k)
    }
}

/// Largest out-degree difference between two classes at one vertex.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct OutImbalance {
    pub value: usize,
    /// Vertex attaining `value`; the largest such index.
    pub vertex: Vertex,
}

pub fn out_imbalance<P: ArcPartition + ?Sized>(p: &P) -> Result<OutImbalance> {
    if !p.is_valid() {
        return Err(Error::domain("invalid arc partition"));
    }
    let d = p.digraph();
    let k = p.class_count();
    let mut out = vec![vec![0usize; k + 1]; d.vertex_count() + 1];
    for a in d.arcs() {
        out[a.tail][p.colour()[&a.id]] += 1;
    }
    let mut best = OutImbalance { value: 0, vertex: 1 };
    for (v, row) in out.iter().enumerate().skip(1) {
        let degs = &row[1..];
        let value = degs.iter().max().unwrap_or(&0) - degs.iter().min().unwrap_or(&0);
        if value >= best.value {
            best = OutImbalance { value, vertex: v };
        }
    }
    Ok(best)
}

fn refuse_oversize(d: &Digraph, k: usize) -> Result<()> {
    if d.arc_count() > MAX_ENUMERATION_ARCS {
        return Err(Error::Oversize(format!(
            "{} arcs exceed the enumeration limit of {MAX_ENUMERATION_ARCS}",
            d.arc_count()
        )));
    }
    if k < 1 {
        return Err(Error::domain("need at least one class"));
    }
    Ok(())
}

/// Backtracking over arc colourings in restricted-growth order: arc `i`
/// may open class `max + 1` only, so every partition is produced once up
/// to relabelling.
struct Search<'a, P> {
    d: &'a Digraph,
    k: usize,
    classes: Vec<usize>,
    used: usize,
    prune: P,
    out: Vec<ArcClasses>,
}

trait Pruner {
    /// Tries to put arc `i` into `class`; false rejects.
    fn push(&mut self, d: &Digraph, i: usize, class: usize) -> bool;
    fn pop(&mut self, d: &Digraph, i: usize, class: usize);
    /// Whether the remaining arcs `i..` can still complete every class.
    fn feasible(&self, d: &Digraph, i: usize, used: usize) -> bool;
    fn accept(&self, d: &Digraph, classes: &[usize]) -> bool;
}

impl<P: Pruner> Search<'_, P> {
    fn run(&mut self, i: usize) {
        if !self.prune.feasible(self.d, i, self.used) {
            return;
        }
        if i == self.d.arc_count() {
            if self.used == self.k && self.prune.accept(self.d, &self.classes) {
                self.out.push(self.classes.clone());
            }
            return;
        }
        let top = (self.used + 1).min(self.k);
        for class in 1..=top {
            if !self.prune.push(self.d, i, class) {
                continue;
            }
            let opened = class > self.used;
            if opened {
                self.used += 1;
            }
            self.classes.push(class);
            self.run(i + 1);
            self.classes.pop();
            if opened {
                self.used -= 1;
            }
            self.prune.pop(self.d, i, class);
        }
    }
}

struct ArbPruner {
    root: Vertex,
    k: usize,
    /// `indeg[class][v]`.
    indeg: Vec<Vec<usize>>,
    size: Vec<usize>,
    forests: Vec<RollbackUnionFind>,
    /// Arcs among `i..` entering each vertex.
    remaining_in: Vec<Vec<usize>>,
}

impl Pruner for ArbPruner {
    fn push(&mut self, d: &Digraph, i: usize, class: usize) -> bool {
        let a = d.arcs()[i];
        let n = d.vertex_count();
        if a.head == self.root || self.indeg[class][a.head] > 0 || self.size[class] == n - 1 {
            return false;
        }
        if self.forests[class].same(a.tail, a.head) {
            return false;
        }
        self.forests[class].union(a.tail, a.head);
        self.indeg[class][a.head] += 1;
        self.size[class] += 1;
        true
    }

    fn pop(&mut self, d: &Digraph, i: usize, class: usize) {
        let a = d.arcs()[i];
        self.forests[class].rollback();
        self.indeg[class][a.head] -= 1;
        self.size[class] -= 1;
    }

    fn feasible(&self, d: &Digraph, i: usize, used: usize) -> bool {
        let n = d.vertex_count();
        let rem = &self.remaining_in[i];
        (1..=n).filter(|&v| v != self.root).all(|v| {
            let missing = (1..=self.k).filter(|&c| c > used || self.indeg[c][v] == 0).count();
            missing <= rem[v]
        })
    }

    fn accept(&self, d: &Digraph, classes: &[usize]) -> bool {
        is_arborescence_partition(d, classes, self.k, self.root)
    }
}

fn remaining_counts(d: &Digraph, key: impl Fn(&crate::graph::Arc) -> Vertex) -> Vec<Vec<usize>> {
    let n = d.vertex_count();
    let m = d.arc_count();
    let mut rem = vec![vec![0usize; n + 1]; m + 1];
    for i in (0..m).rev() {
        rem[i] = rem[i + 1].clone();
        rem[i][key(&d.arcs()[i])] += 1;
    }
    rem
}

/// Every partition of `d` into `k` arc-disjoint spanning arborescences
/// rooted at `root`, up to relabelling the classes.
pub fn enumerate_arborescence_partitions(
    d: &Digraph,
    root: Vertex,
    k: usize,
) -> Result<Vec<ArborescencePartition<'_>>> {
    refuse_oversize(d, k)?;
    let n = d.vertex_count();
    if root == 0 || root > n {
        return Err(Error::domain(format!("root {root} outside 1..={n}")));
    }
    if n == 1 {
        return Ok(if d.arc_count() == 0 && k == 1 {
            vec![ArborescencePartition::new(d, root, &[], k)?]
        } else {
            Vec::new()
        });
    }
    if d.arc_count() != k * (n - 1) {
        return Ok(Vec::new());
    }
    let mut search = Search {
        d,
        k,
        classes: Vec::new(),
        used: 0,
        prune: ArbPruner {
            root,
            k,
            indeg: vec![vec![0; n + 1]; k + 1],
            size: vec![0; k + 1],
            forests: (0..=k).map(|_| RollbackUnionFind::new(n + 1)).collect(),
            remaining_in: remaining_counts(d, |a| a.head),
        },
        out: Vec::new(),
    };
    search.run(0);
    search
        .out
        .iter()
        .map(|c| ArborescencePartition::new(d, root, c, k))
        .collect()
}

struct StrongPruner {
    k: usize,
    /// `outdeg[class][v]` and `indeg[class][v]`.
    outdeg: Vec<Vec<usize>>,
    indeg: Vec<Vec<usize>>,
    remaining_out: Vec<Vec<usize>>,
    remaining_in: Vec<Vec<usize>>,
}

impl Pruner for StrongPruner {
    fn push(&mut self, d: &Digraph, i: usize, class: usize) -> bool {
        let a = d.arcs()[i];
        self.outdeg[class][a.tail] += 1;
        self.indeg[class][a.head] += 1;
        true
    }

    fn pop(&mut self, d: &Digraph, i: usize, class: usize) {
        let a = d.arcs()[i];
        self.outdeg[class][a.tail] -= 1;
        self.indeg[class][a.head] -= 1;
    }

    fn feasible(&self, d: &Digraph, i: usize, used: usize) -> bool {
        let n = d.vertex_count();
        let missing = |deg: &Vec<Vec<usize>>, v: Vertex| (1..=self.k).filter(|&c| c > used || deg[c][v] == 0).count();
        (1..=n).all(|v| {
            missing(&self.outdeg, v) <= self.remaining_out[i][v] && missing(&self.indeg, v) <= self.remaining_in[i][v]
        })
    }

    fn accept(&self, d: &Digraph, classes: &[usize]) -> bool {
        is_strong_partition(d, classes, self.k)
    }
}

/// Every partition of `d` into `k` arc-disjoint spanning strongly
/// connected digraphs, up to relabelling the classes.
pub fn enumerate_strong_partitions(d: &Digraph, k: usize) -> Result<Vec<StrongPartition<'_>>> {
    refuse_oversize(d, k)?;
    let n = d.vertex_count();
    if n == 0 {
        return Err(Error::domain("empty digraph"));
    }
    if n == 1 {
        // Only one class can be formed from no arcs.
        return Ok(if k == 1 {
            vec![StrongPartition::new(d, &[], k)?]
        } else {
            Vec::new()
        });
    }
    let mut search = Search {
        d,
        k,
        classes: Vec::new(),
        used: 0,
        prune: StrongPruner {
            k,
            outdeg: vec![vec![0; n + 1]; k + 1],
            indeg: vec![vec![0; n + 1]; k + 1],
            remaining_out: remaining_counts(d, |a| a.tail),
            remaining_in: remaining_counts(d, |a| a.head),
        },
        out: Vec::new(),
    };
    search.run(0);
    search.out.iter().map(|c| StrongPartition::new(d, c, k)).collect()
}

/// Number of distinct partitions once parallel arcs are treated as
/// interchangeable: each class becomes its multiset of `(tail, head)`
/// pairs and the classes are compared as a multiset.
pub fn distinct_shapes<P: ArcPartition>(parts: &[P]) -> usize {
    let mut shapes: Vec<Vec<Vec<(Vertex, Vertex)>>> = parts
        .iter()
        .map(|p| {
            let mut by_class = vec![Vec::new(); p.class_count()];
            for a in p.digraph().arcs() {
                by_class[p.colour()[&a.id] - 1].push((a.tail, a.head));
            }
            for c in &mut by_class {
                c.sort_unstable();
            }
            by_class.sort();
            by_class
        })
        .collect();
    shapes.sort();
    shapes.dedup();
    shapes.len()
}
