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

//! Line-oriented text formats.
//!
//! ```text
//! p <n> <m>          header of graph and digraph files
//! e <u> <v>          undirected edge, ids 1..m in file order
//! a <tail> <head>    arc
//! c <edge_id> <1|2>  colour assignment
//! part <v> <v> ...   one part of a vertex partition
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::decomposition::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::graph::{Digraph, EdgeId, MultiGraph, Partition, Vertex};

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t.split_whitespace().collect()))
        }
    })
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found `{tok}`")))
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
) -> Result<(usize, usize, usize)> {
    let (line, toks) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `p <n> <m>` header"))?;
    if toks.len() != 3 || toks[0] != "p" {
        return Err(Error::parse(line, "expected header `p <n> <m>`"));
    }
    Ok((line, number(line, toks[1])?, number(line, toks[2])?))
}

/// Vertex count and `(line, u, v)` records.
type Pairs = (usize, Vec<(usize, Vertex, Vertex)>);

fn pairs(text: &str, tag: &str) -> Result<Pairs> {
    let mut lines = content_lines(text);
    let (hline, n, m) = header(&mut lines)?;
    let mut out = Vec::with_capacity(m);
    for (line, toks) in lines {
        if toks.len() != 3 || toks[0] != tag {
            return Err(Error::parse(line, format!("expected `{tag} <u> <v>`")));
        }
        if out.len() == m {
            return Err(Error::parse(line, format!("more than the {m} lines declared")));
        }
        let (u, v) = (number(line, toks[1])?, number(line, toks[2])?);
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(Error::parse(line, format!("vertex {x} outside 1..={n}")));
            }
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop at vertex {u}")));
        }
        out.push((line, u, v));
    }
    if out.len() != m {
        return Err(Error::parse(
            hline,
            format!("header declares {m} lines but {} follow", out.len()),
        ));
    }
    Ok((n, out))
}

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let (n, edges) = pairs(text, "e")?;
    MultiGraph::from_edges(n, edges.into_iter().map(|(_, u, v)| (u, v)))
}

/// Writes the graph with edges in id order. Ids are not stored, so a graph
/// whose ids are not `1..=m` does not round-trip its ids.
pub fn write_graph(g: &MultiGraph) -> String {
    let mut s = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(s, "e {} {}", e.u, e.v);
    }
    s
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let (n, arcs) = pairs(text, "a")?;
    Digraph::from_arcs(n, arcs.into_iter().map(|(_, t, h)| (t, h)))
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut s = format!("p {} {}\n", d.vertex_count(), d.arc_count());
    for a in d.arcs() {
        let _ = writeln!(s, "a {} {}", a.tail, a.head);
    }
    s
}

/// Parses `c <edge_id> <1|2>` lines. Colouring an edge twice is an error.
pub fn parse_colouring(text: &str) -> Result<Colouring> {
    let mut colouring = Colouring::new();
    for (line, toks) in content_lines(text) {
        if toks.len() != 3 || toks[0] != "c" {
            return Err(Error::parse(line, "expected `c <edge_id> <1|2>`"));
        }
        let id = number(line, toks[1])?;
        if id == 0 {
            return Err(Error::parse(line, "edge ids start at 1"));
        }
        let colour = number(line, toks[2])
            .ok()
            .and_then(|k| u8::try_from(k).ok())
            .and_then(Colour::from_number)
            .ok_or_else(|| Error::parse(line, format!("colour must be 1 or 2, found `{}`", toks[2])))?;
        if colouring.get(EdgeId(id)).is_some() {
            return Err(Error::parse(line, format!("edge {id} coloured twice")));
        }
        colouring.set(EdgeId(id), colour);
    }
    Ok(colouring)
}

pub fn write_colouring(c: &Colouring) -> String {
    let mut s = String::new();
    for (e, k) in c.iter() {
        let _ = writeln!(s, "c {e} {k}");
    }
    s
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut parts = Vec::new();
    for (line, toks) in content_lines(text) {
        if toks.len() < 2 || toks[0] != "part" {
            return Err(Error::parse(line, "expected `part <v> ...`"));
        }
        let part = toks[1..]
            .iter()
            .map(|t| number(line, t))
            .collect::<Result<Vec<_>>>()?;
        parts.push(part);
    }
    Ok(Partition::new(parts))
}

pub fn write_partition(p: &Partition) -> String {
    let mut s = String::new();
    for part in &p.parts {
        s.push_str("part");
        for v in part {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}
