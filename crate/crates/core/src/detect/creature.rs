//! `(k, t)`-creatures: a connected body and `k` pairwise anticomplete
//! induced paths of length `t`, each touching the body only at one end.

use serde::{Deserialize, Serialize};

use crate::detect::host_masks;
use crate::detect::paths::induced_paths_from;
use crate::error::{invalid, Result};
use crate::graph::{bit, mask_iter, Graph, Mask, Path, VertexSet};
use crate::limits::{Budget, Limits};
use crate::separators::mask_components;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreatureMatch {
    pub body: VertexSet,
    /// Each path starts at its joint.
    pub paths: Vec<Path>,
}

impl CreatureMatch {
    /// Direct check of every defining condition.
    pub fn is_valid_in(&self, g: &Graph, t: usize) -> bool {
        if self.body.is_empty() || !g.is_connected_set(&self.body) {
            return false;
        }
        let sets: Vec<VertexSet> = self.paths.iter().map(Path::vertex_set).collect();
        for (i, p) in self.paths.iter().enumerate() {
            if p.length() != t || !p.is_induced_in(g) || !sets[i].is_disjoint(&self.body) {
                return false;
            }
            let joint = p.vertices()[0];
            if !g.neighbors(joint).iter().any(|&u| self.body.contains(u)) {
                return false;
            }
            let rest: VertexSet = p.vertices()[1..].iter().copied().collect();
            if !g.anticomplete(&rest, &self.body) {
                return false;
            }
            for s in &sets[i + 1..] {
                if !sets[i].is_disjoint(s) || !g.anticomplete(&sets[i], s) {
                    return false;
                }
            }
        }
        true
    }
}

struct Search<'a> {
    nbr: &'a [Mask],
    all: Mask,
    paths: Vec<(Vec<usize>, Mask, Mask)>,
    k: usize,
    budget: &'a Budget,
}

impl Search<'_> {
    /// Body candidates: outside every chosen path and the neighbourhood of
    /// its non-joint part. Returns the first component touching all joints.
    fn body(&self, chosen: &[usize]) -> Option<Mask> {
        let mut allowed = self.all;
        for &i in chosen {
            let (ref p, m, _) = self.paths[i];
            allowed &= !m;
            for &v in &p[1..] {
                allowed &= !self.nbr[v];
            }
        }
        mask_components(self.nbr, allowed)
            .into_iter()
            .find(|&d| chosen.iter().all(|&i| self.nbr[self.paths[i].0[0]] & d != 0))
    }

    fn rec(&self, start: usize, chosen: &mut Vec<usize>, reach: Mask) -> Result<Option<Mask>> {
        self.budget.tick()?;
        if chosen.len() == self.k {
            return Ok(self.body(chosen));
        }
        for i in start..self.paths.len() {
            let (_, m, r) = self.paths[i];
            if m & reach != 0 {
                continue;
            }
            chosen.push(i);
            if let Some(b) = self.rec(i + 1, chosen, reach | r)? {
                return Ok(Some(b));
            }
            chosen.pop();
        }
        Ok(None)
    }
}

/// First `(k, t)`-creature found, choosing the paths first and the body as
/// a whole component of what they leave available.
pub fn find_creature(g: &Graph, k: usize, t: usize, limits: &Limits) -> Result<Option<CreatureMatch>> {
    if k == 0 {
        return invalid("a creature needs k >= 1");
    }
    let nbr = host_masks(g, limits)?;
    let budget = limits.budget();
    let mut raw = Vec::new();
    for a in 0..g.n() {
        induced_paths_from(&nbr, a, t, 0, &budget, &mut raw)?;
    }
    let paths = raw
        .into_iter()
        .map(|p| {
            let m = p.iter().fold(0, |acc, &v| acc | bit(v));
            let r = mask_iter(m).fold(m, |acc, v| acc | nbr[v]);
            (p, m, r)
        })
        .collect();
    let all = if g.n() == 0 { 0 } else { Mask::MAX >> (128 - g.n()) };
    let search = Search { nbr: &nbr, all, paths, k, budget: &budget };
    let mut chosen = Vec::new();
    Ok(search.rec(0, &mut chosen, 0)?.map(|body| CreatureMatch {
        body: VertexSet::from_mask(body),
        paths: chosen.iter().map(|&i| Path::new(search.paths[i].0.clone())).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{creature, subdivided_claw};

    #[test]
    fn creature_examples() {
        let lim = Limits::default();
        for t in 0..=2 {
            let (s, _) = subdivided_claw(t + 1, t + 1, t + 1).unwrap();
            let m = find_creature(&s, 3, t, &lim).unwrap().unwrap();
            assert!(m.is_valid_in(&s, t));
        }
        assert!(find_creature(&Graph::complete(3), 3, 0, &lim).unwrap().is_none());
        let (c, _) = creature(4, 2, 2).unwrap();
        let m = find_creature(&c, 4, 2, &lim).unwrap().unwrap();
        assert!(m.is_valid_in(&c, 2));
    }
}
