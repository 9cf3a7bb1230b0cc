use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::centralbag::separation::{canonical_separation, Separation};
use crate::detect::enumerate_induced_copies;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::limits::Limits;
use crate::weights::WeightFunction;

/// Tightest `(a, t)` such that the sequence is `(a, t)`-good.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Goodness {
    /// Most separations sharing one anchor.
    pub a: usize,
    /// Largest diameter (in `G`) of any cutset `C(S)`.
    pub t: usize,
}

/// A copy of the pattern left out because `g − N[copy]` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCopy {
    pub copy: VertexSet,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationSequence {
    pub separations: Vec<Separation>,
    pub skipped: Vec<SkippedCopy>,
    pub goodness: Option<Goodness>,
    pub partition: Option<Vec<Vec<usize>>>,
}

impl SeparationSequence {
    pub fn from_separations(g: &Graph, separations: Vec<Separation>) -> Result<SeparationSequence> {
        let mut seq = SeparationSequence { separations, ..Default::default() };
        seq.goodness = measure_goodness(g, &seq.separations)?;
        Ok(seq)
    }

    pub fn len(&self) -> usize {
        self.separations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.separations.is_empty()
    }

    /// The anchor map; fails if a member has no anchor.
    pub fn anchors(&self) -> Result<Vec<Vertex>> {
        self.separations
            .iter()
            .enumerate()
            .map(|(i, s)| s.anchor.ok_or_else(|| Error::Invalid(format!("separation {i} has no anchor"))))
            .collect()
    }
}

/// `None` when some cutset is spread over several components of `g`.
pub fn measure_goodness(g: &Graph, seps: &[Separation]) -> Result<Option<Goodness>> {
    let mut per_vertex = vec![0usize; g.n()];
    let mut t = 0;
    for (i, s) in seps.iter().enumerate() {
        if !s.anchor_ok() {
            return invalid(format!("separation {i} has no anchor inside its cutset"));
        }
        per_vertex[s.anchor.unwrap()] += 1;
        match g.set_diameter(&s.c) {
            Some(d) => t = t.max(d),
            None => return Ok(None),
        }
    }
    Ok(Some(Goodness { a: per_vertex.into_iter().max().unwrap_or(0), t }))
}

/// Canonical separations for every induced copy of `pattern`, in
/// lexicographic order of the copies.
pub fn covering_sequence(g: &Graph, w: &WeightFunction, pattern: &Graph, limits: &Limits) -> Result<SeparationSequence> {
    w.require_fits(g)?;
    if !pattern.is_connected() || pattern.n() == 0 {
        return invalid("covering pattern must be a non-empty connected graph");
    }
    let mut seq = SeparationSequence::default();
    for copy in enumerate_induced_copies(g, pattern, limits)? {
        match canonical_separation(g, w, &copy) {
            Ok(s) => seq.separations.push(s),
            Err(Error::DegenerateSeparation) => seq.skipped.push(SkippedCopy {
                copy,
                reason: "closed neighbourhood covers the graph".into(),
            }),
            Err(e) => return Err(e),
        }
    }
    seq.goodness = measure_goodness(g, &seq.separations)?;
    Ok(seq)
}

/// `1 + Δ + ... + Δ^x`.
pub fn gamma(delta: usize, x: usize) -> BigUint {
    let base = BigUint::from(delta);
    let mut term = BigUint::one();
    let mut sum = BigUint::zero();
    for _ in 0..=x {
        sum += &term;
        term *= &base;
    }
    sum
}

/// Greedy colouring of the cutset-intersection graph in sequence order;
/// one class per colour, members in sequence order.
pub fn dimension_partition(seq: &SeparationSequence) -> Vec<Vec<usize>> {
    let seps = &seq.separations;
    let mut colour = vec![0usize; seps.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..seps.len() {
        let used: Vec<usize> = (0..i)
            .filter(|&j| !seps[i].c.is_disjoint(&seps[j].c))
            .map(|j| colour[j])
            .collect();
        let k = (0..).find(|k| !used.contains(k)).unwrap();
        colour[i] = k;
        if k == classes.len() {
            classes.push(Vec::new());
        }
        classes[k].push(i);
    }
    classes
}

/// `a·γ(2t) + 1` for the graph's maximum degree.
pub fn dimension_bound(delta: usize, goodness: Goodness) -> BigUint {
    BigUint::from(goodness.a) * gamma(delta, 2 * goodness.t) + BigUint::one()
}

/// Cutsets pairwise disjoint.
pub fn is_strongly_laminar(seps: &[Separation], class: &[usize]) -> bool {
    class
        .iter()
        .enumerate()
        .all(|(p, &i)| class[p + 1..].iter().all(|&j| seps[i].c.is_disjoint(&seps[j].c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::wall;

    #[test]
    fn p7_vertex_covering() {
        let g = Graph::path(7);
        let w = WeightFunction::uniform(7).unwrap();
        let seq = covering_sequence(&g, &w, &Graph::complete(1), &Limits::default()).unwrap();
        assert_eq!(seq.len(), 7);
        assert!(seq.skipped.is_empty());
        let good = seq.goodness.unwrap();
        assert_eq!(good.a, 1);
        let parts = dimension_partition(&seq);
        assert!(parts.iter().all(|p| is_strongly_laminar(&seq.separations, p)));
        assert!(BigUint::from(parts.len()) <= dimension_bound(g.max_degree(), good));
    }

    #[test]
    fn wall_vertex_covering() {
        let g = wall(3, 3).unwrap();
        let w = WeightFunction::uniform(g.n()).unwrap();
        let seq = covering_sequence(&g, &w, &Graph::complete(1), &Limits::default()).unwrap();
        assert_eq!(seq.len(), 12);
        let good = seq.goodness.unwrap();
        assert_eq!(good.a, 1);
        // oracle: max over v of the diameter of the recomputed cutset
        let t = seq.separations.iter().map(|s| g.set_diameter(&s.c).unwrap()).max().unwrap();
        assert_eq!(good.t, t);
        assert!(t >= 1);
    }

    #[test]
    fn empty_and_degenerate() {
        let g = Graph::path(4);
        let w = WeightFunction::uniform(4).unwrap();
        let seq = covering_sequence(&g, &w, &Graph::cycle(3), &Limits::default()).unwrap();
        assert!(seq.is_empty() && seq.skipped.is_empty());
        let k3 = Graph::complete(3);
        let seq = covering_sequence(&k3, &WeightFunction::uniform(3).unwrap(), &Graph::complete(1), &Limits::default()).unwrap();
        assert!(seq.is_empty());
        assert_eq!(seq.skipped.len(), 3);
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(3, 2), BigUint::from(13u32));
        assert_eq!(gamma(0, 4), BigUint::from(1u32));
        assert_eq!(gamma(2, 0), BigUint::from(1u32));
    }

    #[test]
    fn partition_cases() {
        let g = Graph::path(5);
        let a = Separation::new(&g, VertexSet::new(), [0usize].into_iter().collect(), (1..5).collect()).unwrap().with_anchor(0);
        let b = Separation::new(&g, VertexSet::new(), [4usize].into_iter().collect(), (0..4).collect()).unwrap().with_anchor(4);
        let c = Separation::new(&g, VertexSet::new(), [3usize, 4].into_iter().collect(), (0..3).collect()).unwrap().with_anchor(4);
        let seq = SeparationSequence::from_separations(&g, vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(dimension_partition(&seq), vec![vec![0, 1]]);
        let seq = SeparationSequence::from_separations(&g, vec![a, b, c]).unwrap();
        assert_eq!(dimension_partition(&seq), vec![vec![0, 1], vec![2]]);
        assert_eq!(seq.goodness, Some(Goodness { a: 2, t: 1 }));
    }
}
