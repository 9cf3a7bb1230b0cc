//! Minimal connected attachments to three vertices and their shape.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components_without, Graph, Path, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConnectorVariant {
    /// A path (or hole) through two of the vertices.
    I,
    /// Three paths from a common vertex of `H`.
    II,
    /// Three paths from the corners of a triangle in `H`.
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorOutcome {
    pub variant: ConnectorVariant,
    /// The minimal connector `H`.
    pub h: VertexSet,
    /// Variant I: the pair `(i, j)` joined by `path` and the index `k`.
    pub pair: Option<(usize, usize, usize)>,
    /// Variant I: the path from `x_i` to `x_j` through `H`.
    pub path: Option<Path>,
    /// Variant I: neighbours of `x_k` in `H`.
    pub xk_neighbors: Option<VertexSet>,
    /// Variant II: the branch vertex.
    pub apex: Option<Vertex>,
    /// Variant III: the triangle, `triangle[i]` on the path to `x_i`.
    pub triangle: Option<[Vertex; 3]>,
    /// Variants II and III: `paths[i]` ends at `x_i`.
    pub paths: Vec<Path>,
    /// Every variant whose description fits, in order.
    pub matching: Vec<ConnectorVariant>,
}

fn attaches(g: &Graph, h: &VertexSet, x: &[Vertex; 3]) -> bool {
    x.iter().all(|&xi| g.neighbors(xi).iter().any(|&u| h.contains(u)))
}

/// Start from the first component of `g − {x1,x2,x3}` that sees all three
/// vertices and delete vertices in ascending order while the rest stays
/// connected and still sees all three.
pub fn minimal_connector(g: &Graph, x: [Vertex; 3]) -> Result<VertexSet> {
    for &v in &x {
        g.check_vertex(v)?;
    }
    if x[0] == x[1] || x[1] == x[2] || x[0] == x[2] {
        return Err(Error::Invalid("the three vertices must be distinct".into()));
    }
    let xs: VertexSet = x.iter().copied().collect();
    let mut h = components_without(g, &xs)
        .into_iter()
        .find(|d| attaches(g, d, &x))
        .ok_or(Error::NoConnector)?;
    loop {
        let mut changed = false;
        for v in h.clone().iter() {
            let mut smaller = h.clone();
            smaller.remove(v);
            if !smaller.is_empty() && g.is_connected_set(&smaller) && attaches(g, &smaller, &x) {
                h = smaller;
                changed = true;
            }
        }
        if !changed {
            return Ok(h);
        }
    }
}

/// Adjacency inside `h ∪ x` with the edges among the `x_i` removed.
struct Local<'a> {
    g: &'a Graph,
    x: [Vertex; 3],
    verts: VertexSet,
}

impl Local<'_> {
    fn adj(&self, u: Vertex, v: Vertex) -> bool {
        self.g.has_edge(u, v) && !(self.x.contains(&u) && self.x.contains(&v))
    }

    fn nbrs(&self, u: Vertex, within: &VertexSet) -> Vec<Vertex> {
        within.iter().filter(|&v| v != u && self.adj(u, v)).collect()
    }

    /// The vertices of `within` as a path from `a` to `b`, if they form one.
    fn as_path(&self, within: &VertexSet, a: Vertex, b: Vertex) -> Option<Path> {
        let mut order = vec![a];
        let mut prev = usize::MAX;
        let mut cur = a;
        while cur != b {
            let next: Vec<_> = self.nbrs(cur, within).into_iter().filter(|&v| v != prev).collect();
            if next.len() != 1 || order.contains(&next[0]) {
                return None;
            }
            prev = cur;
            cur = next[0];
            order.push(cur);
        }
        if order.len() != within.len() || self.nbrs(b, within).len() != 1 && within.len() > 1 {
            return None;
        }
        let p = Path::new(order);
        // Induced in the local graph: no chords.
        let vs = p.vertices();
        for i in 0..vs.len() {
            for j in i + 2..vs.len() {
                if self.adj(vs[i], vs[j]) {
                    return None;
                }
            }
        }
        Some(p)
    }
}

fn variant_one(g: &Graph, x: [Vertex; 3], h: &VertexSet) -> Option<(usize, usize, usize, Path, VertexSet)> {
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let mut within = h.clone();
        within.insert(x[i]);
        within.insert(x[j]);
        let local = Local { g, x, verts: within.clone() };
        if let Some(p) = local.as_path(&within, x[i], x[j]) {
            let nk: VertexSet = g.neighbors(x[k]).iter().copied().filter(|&u| h.contains(u)).collect();
            let two_apart = nk.iter().any(|a| nk.iter().any(|b| a < b && !g.has_edge(a, b)));
            let adjacent_pair = nk.len() == 2 && g.has_edge(nk.as_slice()[0], nk.as_slice()[1]);
            if two_apart || adjacent_pair {
                return Some((i, j, k, p, nk));
            }
        }
    }
    None
}

/// Split `h ∪ x` at `centres` into three paths ending at `x_1, x_2, x_3`.
/// With one centre the paths share it; with three, path `i` starts at
/// `centres[i]`.
fn legs(local: &Local<'_>, centres: &[Vertex]) -> Option<Vec<Path>> {
    let mut rest = local.verts.clone();
    for &c in centres {
        rest.remove(c);
    }
    let comps = components_without_local(local, &rest);
    if comps.len() != 3 {
        return None;
    }
    let mut out = vec![None, None, None];
    for comp in comps {
        let idx = (0..3).find(|&i| comp.contains(local.x[i]))?;
        if out[idx].is_some() {
            return None;
        }
        let c = if centres.len() == 1 { centres[0] } else { centres[idx] };
        let mut with_c = comp.clone();
        with_c.insert(c);
        // The centre must attach to the component only at its first vertex.
        if centres.iter().any(|&o| o != c && comp.iter().any(|v| local.adj(o, v))) {
            return None;
        }
        out[idx] = Some(local.as_path(&with_c, c, local.x[idx])?);
    }
    out.into_iter().collect()
}

fn components_without_local(local: &Local<'_>, within: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::new();
    let mut out = Vec::new();
    for s in within.iter() {
        if seen.contains(s) {
            continue;
        }
        let mut comp = VertexSet::singleton(s);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in local.nbrs(u, within) {
                if !comp.contains(v) {
                    comp.insert(v);
                    stack.push(v);
                }
            }
        }
        seen = seen.union(&comp);
        out.push(comp);
    }
    out
}

fn variant_two(g: &Graph, x: [Vertex; 3], h: &VertexSet) -> Option<(Vertex, Vec<Path>)> {
    let verts = h.union(&x.iter().copied().collect());
    let local = Local { g, x, verts };
    for a in h.iter() {
        if let Some(ps) = legs(&local, &[a]) {
            return Some((a, ps));
        }
    }
    None
}

fn variant_three(g: &Graph, x: [Vertex; 3], h: &VertexSet) -> Option<([Vertex; 3], Vec<Path>)> {
    let verts = h.union(&x.iter().copied().collect());
    let local = Local { g, x, verts };
    let hv = h.as_slice();
    for &a in hv {
        for &b in hv {
            for &c in hv {
                if a == b || b == c || a == c || !g.has_edge(a, b) || !g.has_edge(b, c) || !g.has_edge(a, c) {
                    continue;
                }
                if let Some(ps) = legs(&local, &[a, b, c]) {
                    return Some(([a, b, c], ps));
                }
            }
        }
    }
    None
}

/// Compute the minimal connector `H` for `x` and describe its shape.
pub fn classify_connector(g: &Graph, x: [Vertex; 3]) -> Result<ConnectorOutcome> {
    let h = minimal_connector(g, x)?;
    let one = variant_one(g, x, &h);
    let two = variant_two(g, x, &h);
    let three = variant_three(g, x, &h);
    let mut matching = Vec::new();
    if one.is_some() {
        matching.push(ConnectorVariant::I);
    }
    if two.is_some() {
        matching.push(ConnectorVariant::II);
    }
    if three.is_some() {
        matching.push(ConnectorVariant::III);
    }
    let mut out = ConnectorOutcome {
        variant: ConnectorVariant::I,
        h,
        pair: None,
        path: None,
        xk_neighbors: None,
        apex: None,
        triangle: None,
        paths: Vec::new(),
        matching,
    };
    if let Some((i, j, k, p, nk)) = one {
        out.pair = Some((i, j, k));
        out.path = Some(p);
        out.xk_neighbors = Some(nk);
    } else if let Some((a, ps)) = two {
        out.variant = ConnectorVariant::II;
        out.apex = Some(a);
        out.paths = ps;
    } else if let Some((tri, ps)) = three {
        out.variant = ConnectorVariant::III;
        out.triangle = Some(tri);
        out.paths = ps;
    } else {
        return Err(Error::Invalid(format!("minimal connector {} fits no outcome", out.h)));
    }
    Ok(out)
}

impl ConnectorOutcome {
    /// Re-derive the chosen outcome's conditions from `g` alone.
    pub fn is_valid_in(&self, g: &Graph, x: [Vertex; 3]) -> bool {
        let Ok(h) = minimal_connector(g, x) else { return false };
        if h != self.h {
            return false;
        }
        match self.variant {
            ConnectorVariant::I => variant_one(g, x, &h)
                .is_some_and(|(i, j, k, p, nk)| Some((i, j, k)) == self.pair && Some(p) == self.path && Some(nk) == self.xk_neighbors),
            ConnectorVariant::II => variant_two(g, x, &h).is_some_and(|(a, ps)| Some(a) == self.apex && ps == self.paths),
            ConnectorVariant::III => {
                variant_three(g, x, &h).is_some_and(|(t, ps)| Some(t) == self.triangle && ps == self.paths)
            }
        }
    }
}
