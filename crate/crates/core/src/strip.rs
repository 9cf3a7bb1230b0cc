//! Strip structures: a pattern multigraph `H` whose edges index a
//! partition of the host graph into strips glued along clique end sets.

use serde::{Deserialize, Serialize};

use crate::circular::{circular_interval_graph, CircularIntervalModel};
use crate::error::{invalid, Result};
use crate::graph::{line_graph, Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripStructure {
    /// Vertex count of the pattern `H`.
    pub pattern_n: usize,
    /// Pattern edges as end pairs; loops and repeats are allowed.
    pub pattern_edges: Vec<(Vertex, Vertex)>,
    /// `eta[e]`: the strip of edge `e`.
    pub eta: Vec<VertexSet>,
    /// `eta_end[e] = [eta(e, u), eta(e, v)]` for `pattern_edges[e] = (u, v)`.
    /// For a loop only the first entry is read.
    pub eta_end: Vec<[VertexSet; 2]>,
    pub host_n: usize,
    pub host_edges: Vec<(Vertex, Vertex)>,
}

/// Findings of the checker; empty `violations` means the structure is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripReport {
    pub violations: Vec<String>,
    pub max_end_set: usize,
    pub max_nonempty_incident: usize,
    pub delta: usize,
}

impl StripReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl StripStructure {
    pub fn host(&self) -> Result<Graph> {
        Graph::new(self.host_n, self.host_edges.iter().copied())
    }

    /// Incident `(edge, end slot)` pairs at pattern vertex `v`; a loop
    /// contributes one pair.
    pub fn incident(&self, v: Vertex) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (e, &(a, b)) in self.pattern_edges.iter().enumerate() {
            if a == v {
                out.push((e, 0));
            } else if b == v {
                out.push((e, 1));
            }
        }
        out
    }

    /// `eta(e, v)` for an end `v` of `e`.
    pub fn end_set(&self, e: usize, v: Vertex) -> &VertexSet {
        let (a, _) = self.pattern_edges[e];
        if a == v {
            &self.eta_end[e][0]
        } else {
            &self.eta_end[e][1]
        }
    }

    /// Simple graph underlying the pattern, loops dropped.
    pub fn pattern_simple(&self) -> Result<Graph> {
        Graph::new(
            self.pattern_n,
            self.pattern_edges.iter().copied().filter(|&(a, b)| a != b),
        )
    }

    /// Check the three axioms and the two degree-derived bounds.
    pub fn check(&self) -> Result<StripReport> {
        let g = self.host()?;
        let mut rep = StripReport { delta: g.max_degree(), ..StripReport::default() };
        let k = self.pattern_edges.len();
        if self.eta.len() != k || self.eta_end.len() != k {
            return invalid("eta maps do not match the pattern edge count");
        }
        for &(a, b) in &self.pattern_edges {
            if a >= self.pattern_n || b >= self.pattern_n {
                return invalid(format!("pattern edge ({a}, {b}) leaves the pattern"));
            }
        }
        for v in 0..self.pattern_n {
            if self.incident(v).is_empty() {
                rep.violations.push(format!("pattern vertex {v} is isolated"));
            }
        }
        let mut owner = vec![usize::MAX; g.n()];
        for (e, strip) in self.eta.iter().enumerate() {
            g.check_set(strip)?;
            if strip.is_empty() {
                rep.violations.push(format!("strip {e} is empty"));
            }
            for x in strip.iter() {
                if owner[x] != usize::MAX {
                    rep.violations.push(format!("host vertex {x} lies in strips {} and {e}", owner[x]));
                }
                owner[x] = e;
            }
            let (a, b) = self.pattern_edges[e];
            let slots = if a == b { 1 } else { 2 };
            for s in 0..slots {
                if !self.eta_end[e][s].is_subset(strip) {
                    rep.violations.push(format!("end set {s} of strip {e} leaves the strip"));
                }
            }
        }
        if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
            rep.violations.push(format!("host vertex {x} lies in no strip"));
        }
        for v in 0..self.pattern_n {
            let inc = self.incident(v);
            let mut union = VertexSet::new();
            let mut nonempty = 0;
            for &(e, s) in &inc {
                let set = &self.eta_end[e][s];
                rep.max_end_set = rep.max_end_set.max(set.len());
                if set.len() > rep.delta + 1 {
                    rep.violations.push(format!("end set ({e}, {v}) has more than Δ+1 vertices"));
                }
                if !set.is_empty() {
                    nonempty += 1;
                }
                union = union.union(set);
            }
            rep.max_nonempty_incident = rep.max_nonempty_incident.max(nonempty);
            if nonempty > rep.delta + 1 {
                rep.violations.push(format!(
                    "pattern vertex {v} has {nonempty} non-empty end sets, more than Δ+1"
                ));
            }
            if !g.is_clique(&union) {
                rep.violations.push(format!("end sets at pattern vertex {v} do not form a clique"));
            }
        }
        for (x1, x2) in g.edges() {
            let (e1, e2) = (owner[x1], owner[x2]);
            if e1 == e2 || e1 == usize::MAX || e2 == usize::MAX {
                continue;
            }
            let (a1, b1) = self.pattern_edges[e1];
            let (a2, b2) = self.pattern_edges[e2];
            let glued = [a1, b1].iter().any(|&v| {
                (v == a2 || v == b2)
                    && self.end_set(e1, v).contains(x1)
                    && self.end_set(e2, v).contains(x2)
            });
            if !glued {
                rep.violations.push(format!(
                    "edge {x1}-{x2} joins strips {e1} and {e2} outside a shared end"
                ));
            }
        }
        Ok(rep)
    }
}

/// Which generator-provided instance to build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StripKind {
    /// One pattern edge whose strip is the whole host.
    TrivialSingleEdge,
    /// Host is the line graph of the given simple graph.
    LineGraphOf,
    /// Each pattern edge carries a copy of a long circular interval strip.
    SyntheticLci,
}

/// Strip structure with one edge; end sets are the minimum and maximum vertex.
pub fn trivial_single_edge(g: &Graph) -> Result<StripStructure> {
    if g.n() == 0 {
        return invalid("host graph is empty");
    }
    Ok(StripStructure {
        pattern_n: 2,
        pattern_edges: vec![(0, 1)],
        eta: vec![g.vertices()],
        eta_end: vec![[VertexSet::singleton(0), VertexSet::singleton(g.n() - 1)]],
        host_n: g.n(),
        host_edges: g.edges(),
    })
}

/// The line graph of `h` with its natural strip structure: each edge of
/// `h` is a one-vertex strip and both end sets are that vertex.
pub fn line_graph_of(h: &Graph) -> Result<StripStructure> {
    if (0..h.n()).any(|v| h.degree(v) == 0) {
        return invalid("pattern graph has an isolated vertex");
    }
    let l = line_graph(h);
    let edges = h.edges();
    Ok(StripStructure {
        pattern_n: h.n(),
        pattern_edges: edges.clone(),
        eta: (0..edges.len()).map(VertexSet::singleton).collect(),
        eta_end: (0..edges.len())
            .map(|i| [VertexSet::singleton(i), VertexSet::singleton(i)])
            .collect(),
        host_n: l.n(),
        host_edges: l.edges(),
    })
}

/// Glue one copy of `strip` per pattern edge. The copy's `first` vertex is
/// the end set at the edge's first end, `last` the end set at its second
/// end. End sets at a common pattern vertex are made complete to each other.
pub fn glue_strips(
    pattern_n: usize,
    pattern_edges: &[(Vertex, Vertex)],
    strip: &Graph,
    first: &VertexSet,
    last: &VertexSet,
) -> Result<StripStructure> {
    if pattern_edges.iter().any(|&(a, b)| a == b) {
        return invalid("the strip builder does not emit loops");
    }
    if !strip.is_clique(first) || !strip.is_clique(last) {
        return invalid("strip end sets must be cliques");
    }
    let s = strip.n();
    let mut edges = Vec::new();
    let mut eta = Vec::new();
    let mut eta_end = Vec::new();
    for e in 0..pattern_edges.len() {
        let off = e * s;
        edges.extend(strip.edges().into_iter().map(|(u, v)| (u + off, v + off)));
        eta.push((off..off + s).collect::<VertexSet>());
        eta_end.push([
            first.iter().map(|v| v + off).collect(),
            last.iter().map(|v| v + off).collect(),
        ]);
    }
    let mut ss = StripStructure {
        pattern_n,
        pattern_edges: pattern_edges.to_vec(),
        eta,
        eta_end,
        host_n: s * pattern_edges.len(),
        host_edges: Vec::new(),
    };
    for v in 0..pattern_n {
        let mut union = VertexSet::new();
        for (e, slot) in ss.incident(v) {
            union = union.union(&ss.eta_end[e][slot]);
        }
        let u = union.as_slice();
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                edges.push((u[i], u[j]));
            }
        }
    }
    let host = Graph::new(ss.host_n, edges)?;
    ss.host_edges = host.edges();
    Ok(ss)
}

/// Synthetic instances whose strips are long circular interval graphs.
pub fn synthetic_lci_instances() -> Result<Vec<(String, StripStructure)>> {
    let mut out = Vec::new();
    // A strip on five points with arcs of three consecutive points.
    let model = CircularIntervalModel::regular(5, &[(0, 3), (1, 3), (2, 3)])?;
    let g = circular_interval_graph(&model)?;
    let ends = (VertexSet::from([0, 1]), VertexSet::from([3, 4]));
    for (name, n, pe) in [
        ("lci-path3", 3, vec![(0, 1), (1, 2)]),
        ("lci-triangle", 3, vec![(0, 1), (1, 2), (0, 2)]),
        ("lci-claw", 4, vec![(0, 1), (0, 2), (0, 3)]),
        ("lci-parallel", 2, vec![(0, 1), (0, 1)]),
    ] {
        out.push((name.to_string(), glue_strips(n, &pe, &g, &ends.0, &ends.1)?));
    }
    // A five-cycle strip with single-vertex ends.
    let c5 = Graph::cycle(5);
    out.push((
        "c5-path2".to_string(),
        glue_strips(3, &[(0, 1), (1, 2)], &c5, &VertexSet::from([0]), &VertexSet::from([2]))?,
    ));
    Ok(out)
}

/// Build the named kind. `LineGraphOf` needs `base`.
pub fn strip_structure_instance(kind: &StripKind, base: Option<&Graph>) -> Result<Vec<(String, StripStructure)>> {
    match kind {
        StripKind::TrivialSingleEdge => {
            let g = base.cloned().unwrap_or_else(|| Graph::cycle(5));
            Ok(vec![("trivial".to_string(), trivial_single_edge(&g)?)])
        }
        StripKind::LineGraphOf => {
            let h = base.ok_or_else(|| crate::error::Error::Invalid("line_graph_of needs a pattern".into()))?;
            Ok(vec![("line-graph".to_string(), line_graph_of(h)?)])
        }
        StripKind::SyntheticLci => synthetic_lci_instances(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_graph_instances() {
        let tri = line_graph_of(&Graph::cycle(3)).unwrap();
        assert_eq!(tri.host().unwrap(), Graph::complete(3));
        assert!(tri.eta.iter().all(|s| s.len() == 1));
        assert!(tri.check().unwrap().is_valid());
        let claw = line_graph_of(&Graph::complete_bipartite(1, 3)).unwrap();
        assert_eq!(claw.host().unwrap(), Graph::complete(3));
        assert!(claw.check().unwrap().is_valid());
        for h in [Graph::cycle(5), Graph::path(4)] {
            assert!(line_graph_of(&h).unwrap().check().unwrap().is_valid());
        }
    }

    #[test]
    fn trivial_and_synthetic() {
        let t = trivial_single_edge(&Graph::cycle(6)).unwrap();
        assert_eq!(t.pattern_edges.len(), 1);
        assert_eq!(t.eta[0].len(), 6);
        assert!(t.check().unwrap().is_valid());
        for (name, ss) in synthetic_lci_instances().unwrap() {
            let rep = ss.check().unwrap();
            assert!(rep.is_valid(), "{name}: {:?}", rep.violations);
        }
    }

    #[test]
    fn checker_catches_violations() {
        let mut ss = line_graph_of(&Graph::path(3)).unwrap();
        // Remove the end set at the shared vertex: the host edge is no
        // longer glued at a common end.
        ss.eta_end[0][1] = VertexSet::new();
        let rep = ss.check().unwrap();
        assert!(rep.violations.iter().any(|v| v.contains("outside a shared end")));
        let mut ss = line_graph_of(&Graph::path(3)).unwrap();
        ss.eta[1] = VertexSet::from([0]);
        let rep = ss.check().unwrap();
        assert!(!rep.is_valid());
    }
}
