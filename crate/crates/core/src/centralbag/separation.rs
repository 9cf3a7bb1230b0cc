use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{components_without, Graph, Vertex, VertexSet};
use crate::weights::WeightFunction;

/// A triple `(A, C, B)` of disjoint sets covering `V(G)` with `A`
/// anticomplete to `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Separation {
    pub a: VertexSet,
    pub c: VertexSet,
    pub b: VertexSet,
    pub center: Option<VertexSet>,
    pub anchor: Option<Vertex>,
}

impl Separation {
    pub fn new(g: &Graph, a: VertexSet, c: VertexSet, b: VertexSet) -> Result<Separation> {
        let s = Separation { a, c, b, center: None, anchor: None };
        if !s.axioms_hold(g) {
            return invalid("not a separation: sets overlap, miss a vertex, or A touches B");
        }
        Ok(s)
    }

    pub fn with_anchor(mut self, anchor: Vertex) -> Separation {
        self.anchor = Some(anchor);
        self
    }

    pub fn axioms_hold(&self, g: &Graph) -> bool {
        let all = self.a.union(&self.c).union(&self.b);
        self.a.is_disjoint(&self.c)
            && self.a.is_disjoint(&self.b)
            && self.c.is_disjoint(&self.b)
            && all == g.vertices()
            && g.anticomplete(&self.a, &self.b)
    }

    /// Anchor sits in `C`, and in the center when there is one.
    pub fn anchor_ok(&self) -> bool {
        match (self.anchor, &self.center) {
            (Some(v), Some(x)) => self.c.contains(v) && x.contains(v),
            (Some(v), None) => self.c.contains(v),
            (None, _) => false,
        }
    }

    /// `B ∪ C`.
    pub fn bc(&self) -> VertexSet {
        self.b.union(&self.c)
    }

    /// The center if set, otherwise `C`.
    pub fn center_or_cut(&self) -> &VertexSet {
        self.center.as_ref().unwrap_or(&self.c)
    }

    fn swapped(&self) -> (&VertexSet, &VertexSet) {
        (&self.b, &self.c)
    }
}

/// Lexicographically smallest among the heaviest components.
pub(crate) fn heaviest_component(comps: Vec<VertexSet>, w: &WeightFunction) -> Option<VertexSet> {
    let mut best: Option<(crate::weights::Q, VertexSet)> = None;
    for d in comps {
        let wd = w.of(&d);
        let better = match &best {
            None => true,
            Some((bw, bd)) => wd > *bw || (wd == *bw && d < *bd),
        };
        if better {
            best = Some((wd, d));
        }
    }
    best.map(|(_, d)| d)
}

/// The canonical separation with center `x`: `B` is the heaviest
/// component of `g − N[x]` (ties to the lexicographically smallest),
/// `C = x ∪ (N[x] ∩ N(B))`, anchor is `min x`.
pub fn canonical_separation(g: &Graph, w: &WeightFunction, x: &VertexSet) -> Result<Separation> {
    g.check_set(x)?;
    w.require_fits(g)?;
    if !g.is_connected_set(x) {
        return invalid("center must be non-empty and connected");
    }
    let nx = g.closed_neighborhood(x);
    let b = heaviest_component(components_without(g, &nx), w).ok_or(Error::DegenerateSeparation)?;
    let c = x.union(&nx.intersection(&g.open_neighborhood(&b)));
    let a = g.vertices().difference(&b.union(&c));
    Ok(Separation { a, c, b, center: Some(x.clone()), anchor: x.first() })
}

/// Pairwise emptiness patterns between two separations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub non_crossing: bool,
    pub loosely_non_crossing: bool,
    pub a_non_crossing: bool,
    pub a_loosely_non_crossing: bool,
    /// Not non-crossing under any role assignment.
    pub crossing: bool,
}

fn patterns(a1: &VertexSet, c1: &VertexSet, a2: &VertexSet, c2: &VertexSet) -> (bool, bool) {
    let loose = a1.is_disjoint(c2) && a2.is_disjoint(c1);
    (loose && a1.is_disjoint(a2), loose)
}

pub fn relation(s1: &Separation, s2: &Separation) -> Relation {
    let (a_strict, a_loose) = patterns(&s1.a, &s1.c, &s2.a, &s2.c);
    let sides1 = [(&s1.a, &s1.c), s1.swapped()];
    let sides2 = [(&s2.a, &s2.c), s2.swapped()];
    let (mut strict, mut loose) = (false, false);
    for (a1, c1) in sides1 {
        for (a2, c2) in sides2 {
            let (st, lo) = patterns(a1, c1, a2, c2);
            strict |= st;
            loose |= lo;
        }
    }
    Relation {
        non_crossing: strict,
        loosely_non_crossing: loose,
        a_non_crossing: a_strict,
        a_loosely_non_crossing: a_loose,
        crossing: !strict,
    }
}

/// `s1` is a shield for `s2`: `B1 ∪ C1 ⊆ B2 ∪ C2`.
pub fn is_shield(s1: &Separation, s2: &Separation) -> bool {
    s1.bc().is_subset(&s2.bc())
}

/// Indices (into `seps`, restricted to `among`) of the members kept by the
/// primordial reduction: one per inclusion-minimal `B ∪ C`, the earliest.
pub(crate) fn primordial_indices(seps: &[Separation], among: &[usize]) -> Vec<usize> {
    let bcs: Vec<VertexSet> = among.iter().map(|&i| seps[i].bc()).collect();
    let mut kept = Vec::new();
    for (p, &i) in among.iter().enumerate() {
        let dominated = bcs.iter().enumerate().any(|(q, y)| {
            (y.is_subset(&bcs[p]) && y != &bcs[p]) || (q < p && y == &bcs[p])
        });
        if !dominated {
            kept.push(i);
        }
    }
    kept
}

pub fn make_primordial(seps: &[Separation]) -> Vec<Separation> {
    let all: Vec<usize> = (0..seps.len()).collect();
    primordial_indices(seps, &all).into_iter().map(|i| seps[i].clone()).collect()
}

pub fn is_primordial(seps: &[Separation]) -> bool {
    (0..seps.len()).all(|i| (0..seps.len()).all(|j| i == j || !is_shield(&seps[i], &seps[j])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn canonical_examples() {
        let p7 = Graph::path(7);
        let w = WeightFunction::uniform(7).unwrap();
        let s = canonical_separation(&p7, &w, &vs(&[3])).unwrap();
        assert_eq!((s.b.clone(), s.c.clone(), s.a.clone()), (vs(&[0, 1]), vs(&[2, 3]), vs(&[4, 5, 6])));
        assert!(s.axioms_hold(&p7) && s.anchor_ok());

        let p3 = Graph::path(3);
        let s = canonical_separation(&p3, &WeightFunction::uniform(3).unwrap(), &vs(&[0])).unwrap();
        assert_eq!((s.b, s.c, s.a), (vs(&[2]), vs(&[0, 1]), vs(&[])));

        let k2 = Graph::complete(2);
        let err = canonical_separation(&k2, &WeightFunction::uniform(2).unwrap(), &vs(&[0]));
        assert!(matches!(err, Err(Error::DegenerateSeparation)));
    }

    #[test]
    fn relations() {
        let p7 = Graph::path(7);
        let w = WeightFunction::uniform(7).unwrap();
        let s2 = canonical_separation(&p7, &w, &vs(&[1])).unwrap();
        let s6 = canonical_separation(&p7, &w, &vs(&[5])).unwrap();
        let r = relation(&s2, &s6);
        assert!(r.a_loosely_non_crossing && r.a_non_crossing && !r.crossing);

        let p3 = Graph::path(3);
        let s = canonical_separation(&p3, &WeightFunction::uniform(3).unwrap(), &vs(&[0])).unwrap();
        let r = relation(&s, &s);
        assert!(r.non_crossing && r.loosely_non_crossing && r.a_non_crossing && r.a_loosely_non_crossing);

        // A1 = {0} meets C2 = {0, 1}.
        let s1 = Separation::new(&p3, vs(&[0]), vs(&[1]), vs(&[2])).unwrap();
        let s2 = Separation::new(&p3, vs(&[]), vs(&[0, 1]), vs(&[2])).unwrap();
        let r = relation(&s1, &s2);
        assert!(!r.a_loosely_non_crossing && !r.a_non_crossing);
    }

    #[test]
    fn shields_and_primordial() {
        let p5 = Graph::path(5);
        let small = Separation::new(&p5, vs(&[0, 1]), vs(&[2]), vs(&[3, 4])).unwrap();
        let big = Separation::new(&p5, vs(&[0]), vs(&[1]), vs(&[2, 3, 4])).unwrap();
        assert!(is_shield(&small, &small));
        assert!(is_shield(&small, &big));
        assert_eq!(make_primordial(&[big.clone(), small.clone()]), vec![small.clone()]);
        assert_eq!(make_primordial(&[small.clone(), small.clone()]), vec![small.clone()]);

        let left = Separation::new(&p5, vs(&[3, 4]), vs(&[2]), vs(&[0, 1])).unwrap();
        let seq = vec![small.clone(), left.clone()];
        assert_eq!(make_primordial(&seq), seq);
        assert!(is_primordial(&seq));
        assert!(Separation::new(&p5, vs(&[0]), vs(&[]), vs(&[1, 2, 3, 4])).is_err());
    }
}
