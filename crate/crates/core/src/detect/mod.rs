//! Induced-subgraph detection for the pattern families, plus the break and
//! forcer predicates and the three-vertex connector classifier.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{bit, components_without, mask_iter, Graph, Mask, Vertex, VertexSet};
use crate::limits::{Budget, Limits};

pub mod claw;
pub mod connector;
pub mod creature;
mod paths;
pub mod theta;
pub mod wall_line;

pub use claw::find_subdivided_claw;
pub use connector::{classify_connector, minimal_connector, ConnectorOutcome, ConnectorVariant};
pub use creature::{find_creature, CreatureMatch};
pub use theta::{find_t_pyramid, find_t_theta};
pub use wall_line::find_line_of_subdivided_wall;

/// A located copy of a named pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternMatch {
    pub pattern: String,
    pub params: Vec<usize>,
    pub image: VertexSet,
    /// Named vertices or vertex sequences (apex, ends, paths, legs, ...).
    pub roles: BTreeMap<String, Vec<Vertex>>,
}

impl PatternMatch {
    pub(crate) fn new(pattern: &str, params: Vec<usize>) -> PatternMatch {
        PatternMatch { pattern: pattern.to_string(), params, image: VertexSet::new(), roles: BTreeMap::new() }
    }

    pub(crate) fn role(mut self, name: impl Into<String>, vs: Vec<Vertex>) -> PatternMatch {
        self.image = self.image.union(&vs.iter().copied().collect());
        self.roles.insert(name.into(), vs);
        self
    }
}

/// Host adjacency masks with the cap checks shared by all searches.
pub(crate) fn host_masks(g: &Graph, limits: &Limits) -> Result<Vec<Mask>> {
    limits.check("host graph", g.n(), limits.max_host_n.min(128))?;
    g.masks()
}

/// Calls `f` on every injective map `pattern -> g` that preserves both
/// adjacency and non-adjacency, visiting pattern vertices in `order`.
/// Host candidates are tried in increasing id. `f` returns `false` to stop.
fn for_each_embedding(
    g: &[Mask],
    p: &Graph,
    order: &[Vertex],
    budget: &Budget,
    f: &mut dyn FnMut(&[Vertex]) -> bool,
) -> Result<bool> {
    let k = p.n();
    let hn = g.len();
    let all: Mask = if hn == 0 { 0 } else { Mask::MAX >> (128 - hn) };
    let pdeg: Vec<u32> = (0..k).map(|v| p.degree(v) as u32).collect();
    let hdeg: Vec<u32> = g.iter().map(|m| m.count_ones()).collect();
    let mut map = vec![usize::MAX; k];
    fn rec(
        depth: usize,
        used: Mask,
        ctx: (&[Mask], &Graph, &[Vertex], &[u32], &[u32], Mask),
        map: &mut Vec<usize>,
        budget: &Budget,
        f: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> Result<bool> {
        let (g, p, order, pdeg, hdeg, all) = ctx;
        if depth == order.len() {
            return Ok(f(map));
        }
        budget.tick()?;
        let pv = order[depth];
        let mut cand = all & !used;
        for &pu in &order[..depth] {
            let hu = map[pu];
            if p.has_edge(pv, pu) {
                cand &= g[hu];
            } else {
                cand &= !g[hu];
            }
        }
        for h in mask_iter(cand) {
            if hdeg[h] < pdeg[pv] {
                continue;
            }
            map[pv] = h;
            if !rec(depth + 1, used | bit(h), ctx, map, budget, f)? {
                return Ok(false);
            }
        }
        map[pv] = usize::MAX;
        Ok(true)
    }
    rec(0, 0, (g, p, order, &pdeg, &hdeg, all), &mut map, budget, f)
}

/// Pattern vertices in an order where each vertex after the first of its
/// component has an earlier neighbour.
fn connected_order(p: &Graph) -> Vec<Vertex> {
    let mut order = Vec::with_capacity(p.n());
    let mut seen = vec![false; p.n()];
    for s in 0..p.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in p.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    order
}

fn check_pattern(g: &Graph, pattern: &Graph, limits: &Limits) -> Result<Vec<Mask>> {
    limits.check("pattern", pattern.n(), limits.max_pattern_n)?;
    host_masks(g, limits)
}

/// Lexicographically first induced embedding `pattern -> g`, as the image
/// of pattern vertices `0, 1, ...`.
pub fn find_induced(g: &Graph, pattern: &Graph, limits: &Limits) -> Result<Option<Vec<Vertex>>> {
    let masks = check_pattern(g, pattern, limits)?;
    if pattern.n() > g.n() {
        return Ok(None);
    }
    let order: Vec<Vertex> = (0..pattern.n()).collect();
    let mut found = None;
    let budget = limits.budget();
    for_each_embedding(&masks, pattern, &order, &budget, &mut |m| {
        found = Some(m.to_vec());
        false
    })?;
    Ok(found)
}

pub fn find_induced_match(g: &Graph, pattern: &Graph, limits: &Limits) -> Result<Option<PatternMatch>> {
    Ok(find_induced(g, pattern, limits)?
        .map(|m| PatternMatch::new("induced", vec![pattern.n()]).role("map", m)))
}

/// Every vertex set `Y` with `g[Y]` isomorphic to `pattern`, in
/// lexicographic order.
pub fn enumerate_induced_copies(g: &Graph, pattern: &Graph, limits: &Limits) -> Result<Vec<VertexSet>> {
    let masks = check_pattern(g, pattern, limits)?;
    if pattern.n() > g.n() {
        return Ok(Vec::new());
    }
    let order = connected_order(pattern);
    let mut images = BTreeSet::new();
    let budget = limits.budget();
    for_each_embedding(&masks, pattern, &order, &budget, &mut |m| {
        images.insert(m.iter().fold(0 as Mask, |acc, &v| acc | bit(v)));
        true
    })?;
    let mut out: Vec<VertexSet> = images.into_iter().map(VertexSet::from_mask).collect();
    out.sort();
    Ok(out)
}

/// `g[s]` is isomorphic to `pattern`.
pub fn is_copy(g: &Graph, s: &VertexSet, pattern: &Graph, limits: &Limits) -> Result<bool> {
    if s.len() != pattern.n() {
        return Ok(false);
    }
    let (sub, _) = g.induced(s);
    Ok(find_induced(&sub, pattern, limits)?.is_some())
}

/// `x` breaks `y`: no component `D` of `g − N[x]` has `y ⊆ N[D]`.
pub fn breaks(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<bool> {
    g.check_set(x)?;
    g.check_set(y)?;
    if !x.is_disjoint(y) {
        return invalid("the sets must be disjoint");
    }
    let nx = g.closed_neighborhood(x);
    Ok(components_without(g, &nx)
        .iter()
        .all(|d| !y.is_subset(&g.closed_neighborhood(d))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcerVerdict {
    pub holds: bool,
    /// Copies of the forcer examined.
    pub copies: usize,
    /// For each copy `Y`, the breaking sub-copy `X'` that was found.
    pub witnesses: Vec<(VertexSet, VertexSet)>,
    /// First copy with no breaking sub-copy.
    pub counterexample: Option<VertexSet>,
}

/// Every copy `Y` of `forcer` contains a copy `X'` of `x_pattern` that
/// breaks `Y − X'`.
pub fn verify_forcer(g: &Graph, forcer: &Graph, x_pattern: &Graph, limits: &Limits) -> Result<ForcerVerdict> {
    let copies = enumerate_induced_copies(g, forcer, limits)?;
    let mut verdict = ForcerVerdict { holds: true, copies: copies.len(), witnesses: Vec::new(), counterexample: None };
    for y in copies {
        let (sub, map) = g.induced(&y);
        let mut found = None;
        for xs in enumerate_induced_copies(&sub, x_pattern, limits)? {
            let x: VertexSet = xs.iter().map(|v| map[v]).collect();
            if x.len() < y.len() && breaks(g, &x, &y.difference(&x))? {
                found = Some(x);
                break;
            }
        }
        match found {
            Some(x) => verdict.witnesses.push((y, x)),
            None => {
                verdict.holds = false;
                verdict.counterexample = Some(y);
                break;
            }
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::subdivided_claw;

    #[test]
    fn generic_engine() {
        let lim = Limits::default();
        let claw = Graph::complete_bipartite(1, 3);
        assert_eq!(find_induced(&claw, &claw, &lim).unwrap(), Some(vec![0, 1, 2, 3]));
        assert_eq!(find_induced(&Graph::cycle(4), &Graph::complete(3), &lim).unwrap(), None);
        assert_eq!(find_induced(&Graph::complete(4), &Graph::cycle(4), &lim).unwrap(), None);
        let copies = enumerate_induced_copies(&Graph::cycle(5), &Graph::path(3), &lim).unwrap();
        assert_eq!(copies.len(), 5);
    }

    #[test]
    fn breaks_examples() {
        let claw = Graph::complete_bipartite(1, 3);
        assert!(breaks(&claw, &VertexSet::from([0]), &VertexSet::from([1, 2])).unwrap());
        let p5 = Graph::path(5);
        assert!(breaks(&p5, &VertexSet::from([2]), &VertexSet::from([0, 4])).unwrap());
        assert!(!breaks(&p5, &VertexSet::from([0]), &VertexSet::from([2])).unwrap());
        assert!(breaks(&p5, &VertexSet::from([0]), &VertexSet::from([0])).is_err());
    }

    #[test]
    fn forcer_vacuous_and_simple() {
        let lim = Limits::default();
        let (s111, _) = subdivided_claw(1, 1, 1).unwrap();
        let v = verify_forcer(&Graph::cycle(6), &s111, &Graph::path(3), &lim).unwrap();
        assert!(v.holds && v.copies == 0);
    }
}
