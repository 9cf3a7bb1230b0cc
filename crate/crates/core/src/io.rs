//! Graph file formats: JSON `{"n", "edges"}` and PACE `.gr`.

use std::fmt::Write as _;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The JSON graph document, also embedded in certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        GraphDoc { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl GraphDoc {
    pub fn graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)))
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphDoc::from(g)).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    doc.graph()
}

pub fn graph_to_gr(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p tw {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub(crate) fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("{what} {tok:?} is not a non-negative integer")))
}

pub fn graph_from_gr(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') {
            continue;
        }
        let mut toks = body.split_whitespace();
        if body.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line, "second header line"));
            }
            toks.next();
            if toks.next() != Some("tw") {
                return Err(parse_err(line, "expected \"p tw n m\""));
            }
            let n = parse_usize(toks.next(), line, "vertex count")?;
            let m = parse_usize(toks.next(), line, "edge count")?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| parse_err(line, "edge before header"))?;
        let u = parse_usize(toks.next(), line, "edge end")?;
        let v = parse_usize(toks.next(), line, "edge end")?;
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(parse_err(line, format!("vertex {x} outside 1..={n}")));
            }
        }
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        edges.push((u - 1, v - 1));
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing \"p tw\" header"))?;
    if edges.len() != m {
        return Err(parse_err(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

/// Read a graph, choosing the format from the file extension (`.gr` or JSON).
pub fn read_graph(path: &FsPath) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "gr") {
        graph_from_gr(&text)
    } else {
        graph_from_json(&text)
    }
}

pub fn write_graph(path: &FsPath, g: &Graph) -> Result<()> {
    let text = if path.extension().is_some_and(|e| e == "gr") {
        graph_to_gr(g)
    } else {
        graph_to_json(g) + "\n"
    };
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(5);
        let text = graph_to_json(&g);
        assert_eq!(text, r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#);
        assert_eq!(graph_from_json(&text).unwrap(), g);
        assert!(matches!(
            graph_from_json(r#"{"n":2,"edges":[[0,0]]}"#),
            Err(Error::Loop(0))
        ));
    }

    #[test]
    fn gr_round_trip_and_errors() {
        let g = Graph::complete_bipartite(2, 3);
        let text = graph_to_gr(&g);
        assert!(text.starts_with("p tw 5 6\n"));
        assert_eq!(graph_from_gr(&text).unwrap(), g);
        let with_comment = "c hello\np tw 3 2\n1 2\nc mid\n2 3\n";
        assert_eq!(graph_from_gr(with_comment).unwrap(), Graph::path(3));
        match graph_from_gr("p tw 3 1\n1 4\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match graph_from_gr("p tw 3 1\n1 x\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(graph_from_gr("1 2\n").is_err());
        assert!(graph_from_gr("p tw 3 2\n1 2\n").is_err());
    }
}
