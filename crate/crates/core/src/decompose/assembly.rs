//! Tree decomposition of a host graph from one of its strip pattern and
//! one for each strip.

use serde::{Deserialize, Serialize};

use crate::decompose::td::{validate_td, TreeDecomposition};
use crate::error::{invalid, Result};
use crate::graph::VertexSet;
use crate::limits::Limits;
use crate::strip::StripStructure;
use crate::treewidth::exact_treewidth;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblyReport {
    pub delta: usize,
    pub width: usize,
    /// Chosen `(s_e, t_e)` per pattern edge, in output node ids.
    pub links: Vec<(usize, usize)>,
    /// Number of output nodes copied from the pattern decomposition.
    pub pattern_nodes: usize,
    /// `|β(t)| <= |β_0(t)|·(Δ+1)²` at every pattern node.
    pub pattern_bound_ok: bool,
    /// `|β(t)| <= |β_e(t)| + 2(Δ+1)` at every strip node.
    pub strip_bound_ok: bool,
    /// `width <= max(max|β_0|·(Δ+1)², max|β_e| + 2(Δ+1)) − 1`.
    pub width_bound: usize,
}

/// `td0` decomposes the pattern (loops ignored); `strip_tds[e]` decomposes
/// the strip `eta[e]`, with bags in host vertex ids.
pub fn strip_assembly(
    ss: &StripStructure,
    td0: &TreeDecomposition,
    strip_tds: &[TreeDecomposition],
) -> Result<(TreeDecomposition, AssemblyReport)> {
    let rep = ss.check()?;
    if !rep.is_valid() {
        return invalid(format!("strip structure is invalid: {}", rep.violations.join("; ")));
    }
    let h = ss.pattern_simple()?;
    validate_td(&h, td0).map_err(|v| crate::error::Error::InvalidDecomposition(v.to_string()))?;
    if strip_tds.len() != ss.pattern_edges.len() {
        return invalid("one strip decomposition is needed per pattern edge");
    }
    let host = ss.host()?;
    for (e, td) in strip_tds.iter().enumerate() {
        let (sub, map) = host.induced(&ss.eta[e]);
        let mut inv = vec![usize::MAX; host.n()];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        if td.bags.iter().flat_map(|b| b.iter()).any(|v| v >= host.n() || inv[v] == usize::MAX) {
            return invalid(format!("strip decomposition {e} leaves its strip"));
        }
        let local = td.relabel(&inv);
        validate_td(&sub, &local)
            .map_err(|v| crate::error::Error::InvalidDecomposition(format!("strip {e}: {v}")))?;
    }

    let delta = rep.delta;
    let d1 = delta + 1;
    let mut out = TreeDecomposition::default();
    for b0 in &td0.bags {
        let mut bag = VertexSet::new();
        for u in b0.iter() {
            for (e, slot) in ss.incident(u) {
                bag = bag.union(&ss.eta_end[e][slot]);
            }
        }
        out.bags.push(bag);
    }
    out.edges.extend(td0.edges.iter().copied());
    let pattern_nodes = out.bags.len();
    let pattern_bound_ok = td0
        .bags
        .iter()
        .zip(&out.bags)
        .all(|(b0, b)| b.len() <= b0.len() * d1 * d1);

    let mut links = Vec::new();
    let mut strip_bound_ok = true;
    let mut max_strip = 0;
    for (e, &(u, v)) in ss.pattern_edges.iter().enumerate() {
        let s_e = td0
            .bags
            .iter()
            .position(|b| b.contains(u) && b.contains(v))
            .ok_or_else(|| {
                crate::error::Error::InvalidDecomposition(format!("no pattern bag holds edge {u}-{v}"))
            })?;
        let ends = ss.end_set(e, u).union(ss.end_set(e, v));
        let off = out.bags.len();
        let td = &strip_tds[e];
        for b in &td.bags {
            let bag = b.union(&ends);
            strip_bound_ok &= bag.len() <= b.len() + 2 * d1;
            max_strip = max_strip.max(b.len());
            out.bags.push(bag);
        }
        out.edges.extend(td.edges.iter().map(|&(a, b)| (a + off, b + off)));
        out.edges.push((s_e, off));
        links.push((s_e, off));
    }
    let max0 = td0.bags.iter().map(VertexSet::len).max().unwrap_or(0);
    let width_bound = (max0 * d1 * d1).max(max_strip + 2 * d1).saturating_sub(1);
    let width = validate_td(&host, &out)
        .map_err(|v| crate::error::Error::InvalidDecomposition(v.to_string()))?;
    Ok((
        out,
        AssemblyReport { delta, width, links, pattern_nodes, pattern_bound_ok, strip_bound_ok, width_bound },
    ))
}

/// Assembly with exact decompositions of the pattern and of every strip.
pub fn default_strip_assembly(ss: &StripStructure, limits: &Limits) -> Result<(TreeDecomposition, AssemblyReport)> {
    let h = ss.pattern_simple()?;
    let td0 = exact_treewidth(&h, limits)?.decomposition;
    let host = ss.host()?;
    let mut tds = Vec::new();
    for strip in &ss.eta {
        let (sub, map) = host.induced(strip);
        tds.push(exact_treewidth(&sub, limits)?.decomposition.relabel(&map));
    }
    strip_assembly(ss, &td0, &tds)
}
