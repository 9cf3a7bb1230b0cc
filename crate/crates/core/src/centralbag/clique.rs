use serde::{Deserialize, Serialize};

use crate::centralbag::bag::{central_bag, CentralBagResult};
use crate::centralbag::separation::{heaviest_component, primordial_indices, relation, Separation};
use crate::centralbag::sequence::SeparationSequence;
use crate::error::{Error, Result};
use crate::graph::{bit, components, components_without, mask_iter, Graph, Mask, VertexSet};
use crate::limits::Limits;
use crate::weights::WeightFunction;

fn all_cliques(g: &Graph, limits: &Limits) -> Result<Vec<VertexSet>> {
    limits.check("host graph", g.n(), limits.max_host_n.min(128))?;
    let nbr = g.masks()?;
    let budget = limits.budget();
    let mut out = Vec::new();
    fn grow(nbr: &[Mask], cur: Mask, cand: Mask, out: &mut Vec<VertexSet>, budget: &crate::limits::Budget) -> Result<()> {
        for v in mask_iter(cand) {
            budget.tick()?;
            let next = cur | bit(v);
            out.push(VertexSet::from_mask(next));
            let higher = cand & !(bit(v) | (bit(v) - 1));
            grow(nbr, next, higher & nbr[v], out, budget)?;
        }
        Ok(())
    }
    let everything = if g.n() == 128 { Mask::MAX } else { bit(g.n()) - 1 };
    grow(&nbr, 0, everything, &mut out, &budget)?;
    out.sort();
    Ok(out)
}

/// Every clique `K` with `g − K` disconnected, in lexicographic order.
pub fn clique_cutsets(g: &Graph, limits: &Limits) -> Result<Vec<VertexSet>> {
    Ok(all_cliques(g, limits)?
        .into_iter()
        .filter(|k| components_without(g, k).len() >= 2)
        .collect())
}

pub fn has_clique_cutset(g: &Graph, limits: &Limits) -> Result<bool> {
    Ok(!clique_cutsets(g, limits)?.is_empty())
}

/// `B` = heaviest component of `g − K` (lexicographic tie-break), `C = K`.
pub fn clique_separation(g: &Graph, w: &WeightFunction, k: &VertexSet) -> Result<Separation> {
    let b = heaviest_component(components_without(g, k), w).ok_or(Error::DegenerateSeparation)?;
    let a = g.vertices().difference(&b.union(k));
    Ok(Separation { a, c: k.clone(), b, center: None, anchor: k.first() })
}

/// Primordial reduction of all clique separations; every clique
/// separation keeps a shield in the result.
pub fn clique_covering(g: &Graph, w: &WeightFunction, limits: &Limits) -> Result<SeparationSequence> {
    w.require_fits(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let all: Vec<Separation> = clique_cutsets(g, limits)?
        .iter()
        .map(|k| clique_separation(g, w, k))
        .collect::<Result<_>>()?;
    let idx: Vec<usize> = (0..all.len()).collect();
    let kept = primordial_indices(&all, &idx).into_iter().map(|i| all[i].clone()).collect();
    SeparationSequence::from_separations(g, kept)
}

/// Central bag of the clique covering, built as a single class.
pub fn clique_central_bag(g: &Graph, w: &WeightFunction, limits: &Limits) -> Result<(SeparationSequence, CentralBagResult)> {
    let seq = clique_covering(g, w, limits)?;
    let partition = vec![(0..seq.len()).collect::<Vec<_>>()];
    let result = central_bag(g, w, &seq, &partition)?;
    Ok((seq, result))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueBagReport {
    pub a_loosely_laminar: bool,
    /// `N(D)` is a clique for each component `D` of `g − β`.
    pub attachments_are_cliques: bool,
    pub bag_has_clique_cutset: bool,
}

pub fn clique_bag_report(g: &Graph, seq: &SeparationSequence, result: &CentralBagResult, limits: &Limits) -> Result<CliqueBagReport> {
    let seps = &seq.separations;
    let a_loosely_laminar = seps
        .iter()
        .all(|s1| seps.iter().all(|s2| relation(s1, s2).a_loosely_non_crossing));
    let rest = g.vertices().difference(&result.bag);
    let attachments_are_cliques = components(g, &rest)
        .iter()
        .all(|d| g.is_clique(&g.open_neighborhood(d)));
    let (h, _, _) = result.bag_graph(g);
    Ok(CliqueBagReport { a_loosely_laminar, attachments_are_cliques, bag_has_clique_cutset: has_clique_cutset(&h, limits)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::q;

    #[test]
    fn cycle_has_no_clique_cutset() {
        let g = Graph::cycle(4);
        let w = WeightFunction::uniform(4).unwrap();
        let limits = Limits::default();
        let (seq, r) = clique_central_bag(&g, &w, &limits).unwrap();
        assert!(seq.is_empty());
        assert_eq!(r.bag, g.vertices());
    }

    #[test]
    fn path_on_three() {
        let g = Graph::path(3);
        let w = WeightFunction::uniform(3).unwrap();
        let limits = Limits::default();
        assert_eq!(clique_cutsets(&g, &limits).unwrap(), vec![[1usize].into_iter().collect::<VertexSet>()]);
        let (seq, r) = clique_central_bag(&g, &w, &limits).unwrap();
        assert_eq!(r.bag, [0usize, 1].into_iter().collect());
        assert_eq!(*r.weights.get(1), q(2, 3));
        let rep = clique_bag_report(&g, &seq, &r, &limits).unwrap();
        assert!(rep.a_loosely_laminar && rep.attachments_are_cliques && !rep.bag_has_clique_cutset);
    }

    #[test]
    fn clique_enumeration_matches_brute_force() {
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let limits = Limits::default();
        let fast = all_cliques(&g, &limits).unwrap();
        let mut slow: Vec<VertexSet> = (1u128..64).map(VertexSet::from_mask).filter(|s| g.is_clique(s)).collect();
        slow.sort();
        assert_eq!(fast, slow);
        let cut = clique_cutsets(&g, &limits).unwrap();
        let oracle: Vec<VertexSet> = slow.into_iter().filter(|k| components_without(&g, k).len() > 1).collect();
        assert_eq!(cut, oracle);
        assert_eq!(cut.len(), 7);
    }
}
