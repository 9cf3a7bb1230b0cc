//! Tree decompositions, their validator and the PACE `.td` format.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::io::parse_usize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    /// Tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
}

/// First failure found by [`validate_td`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    NoBags,
    NotATree,
    BagVertexOutOfRange { bag: usize, vertex: Vertex },
    UncoveredVertex(Vertex),
    UncoveredEdge(Vertex, Vertex),
    /// The bags containing this vertex do not induce a subtree.
    DisconnectedOccurrence(Vertex),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NoBags => write!(f, "decomposition has no bags"),
            Violation::NotATree => write!(f, "decomposition graph is not a tree"),
            Violation::BagVertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} holds vertex {vertex}, which is not in the graph")
            }
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {u}-{v} is in no bag"),
            Violation::DisconnectedOccurrence(v) => {
                write!(f, "bags containing vertex {v} are not connected")
            }
        }
    }
}

impl TreeDecomposition {
    pub fn single_bag(s: VertexSet) -> TreeDecomposition {
        TreeDecomposition { bags: vec![s], edges: Vec::new() }
    }

    /// Largest bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Replace every bag entry `v` by `map[v]`.
    pub fn relabel(&self, map: &[Vertex]) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.bags.iter().map(|b| b.iter().map(|v| map[v]).collect()).collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn to_pace(&self, n: usize) -> String {
        let mut out = String::new();
        let max = self.bags.iter().map(VertexSet::len).max().unwrap_or(0);
        writeln!(out, "s td {} {} {}", self.bags.len(), max, n).unwrap();
        for (i, b) in self.bags.iter().enumerate() {
            write!(out, "b {}", i + 1).unwrap();
            for v in b.iter() {
                write!(out, " {}", v + 1).unwrap();
            }
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            writeln!(out, "{} {}", a + 1, b + 1).unwrap();
        }
        out
    }

    /// Parse `.td` text; returns the decomposition and the declared `n`.
    pub fn from_pace(text: &str) -> Result<(TreeDecomposition, usize)> {
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let mut header: Option<(usize, usize)> = None;
        let mut bags: Vec<Option<VertexSet>> = Vec::new();
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('c') {
                continue;
            }
            let mut toks = body.split_whitespace();
            match body.chars().next() {
                Some('s') => {
                    toks.next();
                    if toks.next() != Some("td") {
                        return Err(err(line, "expected \"s td bags maxbag n\"".into()));
                    }
                    let k = parse_usize(toks.next(), line, "bag count")?;
                    let _max = parse_usize(toks.next(), line, "max bag size")?;
                    let n = parse_usize(toks.next(), line, "vertex count")?;
                    header = Some((k, n));
                    bags = vec![None; k];
                }
                Some('b') => {
                    let (k, n) = header.ok_or_else(|| err(line, "bag before header".into()))?;
                    toks.next();
                    let i = parse_usize(toks.next(), line, "bag index")?;
                    if i == 0 || i > k {
                        return Err(err(line, format!("bag index {i} outside 1..={k}")));
                    }
                    let mut bag = Vec::new();
                    for t in toks {
                        let v = parse_usize(Some(t), line, "bag vertex")?;
                        if v == 0 || v > n {
                            return Err(err(line, format!("vertex {v} outside 1..={n}")));
                        }
                        bag.push(v - 1);
                    }
                    bags[i - 1] = Some(bag.into_iter().collect());
                }
                _ => {
                    let (k, _) = header.ok_or_else(|| err(line, "edge before header".into()))?;
                    let a = parse_usize(toks.next(), line, "tree edge end")?;
                    let b = parse_usize(toks.next(), line, "tree edge end")?;
                    if a == 0 || b == 0 || a > k || b > k {
                        return Err(err(line, format!("tree edge {a} {b} outside 1..={k}")));
                    }
                    edges.push((a - 1, b - 1));
                }
            }
        }
        let (_, n) = header.ok_or_else(|| err(0, "missing \"s td\" header".into()))?;
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| err(0, format!("bag {} never listed", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok((TreeDecomposition { bags, edges }, n))
    }
}

/// Check the three decomposition properties; returns the width.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> std::result::Result<usize, Violation> {
    let k = td.bags.len();
    if k == 0 {
        return if g.n() == 0 { Ok(0) } else { Err(Violation::NoBags) };
    }
    if td.edges.len() != k - 1 || td.edges.iter().any(|&(a, b)| a >= k || b >= k || a == b) {
        return Err(Violation::NotATree);
    }
    let adj = td.tree_adjacency();
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Violation::NotATree);
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for v in bag.iter() {
            if v >= g.n() {
                return Err(Violation::BagVertexOutOfRange { bag: i, vertex: v });
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = holders.iter().position(Vec::is_empty) {
        return Err(Violation::UncoveredVertex(v));
    }
    for (u, v) in g.edges() {
        if !holders[u].iter().any(|&i| td.bags[i].contains(v)) {
            return Err(Violation::UncoveredEdge(u, v));
        }
    }
    let mut mark = vec![usize::MAX; k];
    for (v, hs) in holders.iter().enumerate() {
        for &i in hs {
            mark[i] = v;
        }
        let mut reached = 1;
        let mut stack = vec![hs[0]];
        let mut visited = vec![hs[0]];
        mark[hs[0]] = usize::MAX - 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if mark[y] == v {
                    mark[y] = usize::MAX - 1;
                    reached += 1;
                    stack.push(y);
                    visited.push(y);
                }
            }
        }
        if reached != hs.len() {
            return Err(Violation::DisconnectedOccurrence(v));
        }
        for &i in hs {
            mark[i] = usize::MAX;
        }
    }
    Ok(td.width())
}

/// Join a forest of bags into one tree by linking each later component's
/// first node to node 0.
pub(crate) fn connect_forest(td: &mut TreeDecomposition) {
    let k = td.bags.len();
    if k == 0 {
        return;
    }
    let adj = td.tree_adjacency();
    let mut comp = vec![usize::MAX; k];
    let mut roots = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        roots.push(s);
        comp[s] = s;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = s;
                    stack.push(y);
                }
            }
        }
    }
    for &r in roots.iter().skip(1) {
        td.edges.push((roots[0], r));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5_path_decomposition() -> TreeDecomposition {
        TreeDecomposition {
            bags: (0..4).map(|i| VertexSet::from([i, i + 1])).collect(),
            edges: (1..4).map(|i| (i - 1, i)).collect(),
        }
    }

    #[test]
    fn validator_cases() {
        let p5 = Graph::path(5);
        assert_eq!(validate_td(&p5, &TreeDecomposition::single_bag(p5.vertices())), Ok(4));
        assert_eq!(validate_td(&p5, &p5_path_decomposition()), Ok(1));
        let mut dropped = p5_path_decomposition();
        dropped.bags[2] = VertexSet::from([2]);
        assert_eq!(validate_td(&p5, &dropped), Err(Violation::UncoveredEdge(2, 3)));
        let mut split = p5_path_decomposition();
        split.bags[3] = VertexSet::from([0, 3, 4]);
        assert_eq!(validate_td(&p5, &split), Err(Violation::DisconnectedOccurrence(0)));
        let mut cyc = p5_path_decomposition();
        cyc.edges.push((0, 3));
        assert_eq!(validate_td(&p5, &cyc), Err(Violation::NotATree));
        let mut missing = p5_path_decomposition();
        missing.bags[3] = VertexSet::from([3]);
        assert_eq!(validate_td(&p5, &missing), Err(Violation::UncoveredVertex(4)));
    }

    #[test]
    fn pace_round_trip() {
        let td = p5_path_decomposition();
        let text = td.to_pace(5);
        assert!(text.starts_with("s td 4 2 5\nb 1 1 2\n"));
        let (back, n) = TreeDecomposition::from_pace(&text).unwrap();
        assert_eq!(n, 5);
        assert_eq!(back, td);
        assert!(matches!(
            TreeDecomposition::from_pace("s td 1 1 2\nb 1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
