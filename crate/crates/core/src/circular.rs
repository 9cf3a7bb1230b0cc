//! Long circular interval graphs and thickenings.
//!
//! The circle is `[0, 1)`. An arc `(start, end)` is the closed set running
//! counter-clockwise from `start` to `end`, wrapping past 0 when
//! `end < start`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::weights::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    #[serde(with = "crate::weights::q_serde")]
    pub start: Q,
    #[serde(with = "crate::weights::q_serde")]
    pub end: Q,
}

impl Arc {
    pub fn new(start: Q, end: Q) -> Arc {
        Arc { start, end }
    }

    pub fn contains(&self, p: &Q) -> bool {
        if self.start <= self.end {
            &self.start <= p && p <= &self.end
        } else {
            p >= &self.start || p <= &self.end
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircularIntervalModel {
    /// Vertex `i` sits at `points[i]`.
    #[serde(with = "q_vec")]
    pub points: Vec<Q>,
    pub intervals: Vec<Arc>,
}

mod q_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::weights::{format_q, parse_q, Q};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

fn in_circle(x: &Q) -> bool {
    x >= &q(0, 1) && x < &q(1, 1)
}

impl CircularIntervalModel {
    /// `n` equally spaced points; arc `(first, len)` covers points
    /// `first .. first + len - 1` (indices mod `n`). An arc endpoint sits on
    /// its extreme point unless another arc already ends there, in which case
    /// it is nudged outward; the covered point set is the same either way.
    pub fn regular(n: usize, arcs: &[(usize, usize)]) -> Result<CircularIntervalModel> {
        if n == 0 {
            return invalid("model needs at least one point");
        }
        let den = (4 * n * (arcs.len() + 1)) as i64;
        let points: Vec<Q> = (0..n).map(|i| q(i as i64, n as i64)).collect();
        let wrap = |x: Q| {
            if x < q(0, 1) {
                x + q(1, 1)
            } else if x >= q(1, 1) {
                x - q(1, 1)
            } else {
                x
            }
        };
        let mut used: Vec<Q> = Vec::new();
        let mut intervals = Vec::new();
        for (k, &(first, len)) in arcs.iter().enumerate() {
            if len < 2 || len > n || first >= n {
                return invalid(format!("arc {k} is out of range"));
            }
            let eps = q(k as i64 + 1, den * n as i64);
            let last = (first + len - 1) % n;
            let mut start = points[first].clone();
            if used.contains(&start) {
                start = wrap(&start - &eps);
            }
            used.push(start.clone());
            let mut end = points[last].clone();
            if used.contains(&end) {
                end = wrap(&end + &eps);
            }
            used.push(end.clone());
            intervals.push(Arc::new(start, end));
        }
        let model = CircularIntervalModel { points, intervals };
        model.validate()?;
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, p) in self.points.iter().enumerate() {
            if !in_circle(p) {
                return invalid(format!("point {i} lies outside [0, 1)"));
            }
        }
        let mut sorted = self.points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return invalid("two points share a position");
        }
        let mut ends = Vec::new();
        for (i, a) in self.intervals.iter().enumerate() {
            if !in_circle(&a.start) || !in_circle(&a.end) {
                return invalid(format!("interval {i} has an endpoint outside [0, 1)"));
            }
            if a.start == a.end {
                return invalid(format!("interval {i} is a single point"));
            }
            ends.push(a.start.clone());
            ends.push(a.end.clone());
        }
        ends.sort();
        if ends.windows(2).any(|w| w[0] == w[1]) {
            return invalid("two intervals share an endpoint");
        }
        let k = self.intervals.len();
        for a in 0..k {
            for b in a..k {
                for c in b..k {
                    if self.covers_circle(&[a, b, c]) {
                        return invalid(format!("intervals {a}, {b}, {c} cover the whole circle"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the union of the listed arcs is the whole circle.
    fn covers_circle(&self, which: &[usize]) -> bool {
        let arcs: Vec<&Arc> = which.iter().map(|&i| &self.intervals[i]).collect();
        let mut cuts: Vec<Q> = arcs.iter().flat_map(|a| [a.start.clone(), a.end.clone()]).collect();
        cuts.sort();
        cuts.dedup();
        // Endpoints are covered by their own arcs; test one point strictly
        // inside every gap between consecutive endpoints.
        (0..cuts.len()).all(|i| {
            let mid = if i + 1 < cuts.len() {
                (&cuts[i] + &cuts[i + 1]) / q(2, 1)
            } else {
                let m = (&cuts[i] + &cuts[0] + q(1, 1)) / q(2, 1);
                if m >= q(1, 1) {
                    m - q(1, 1)
                } else {
                    m
                }
            };
            arcs.iter().any(|a| a.contains(&mid))
        })
    }

    /// Points covered by interval `i`.
    pub fn members(&self, i: usize) -> VertexSet {
        let a = &self.intervals[i];
        (0..self.n()).filter(|&v| a.contains(&self.points[v])).collect()
    }

    /// The pairs that may be fuzzed: distinct points sitting at both ends
    /// of one interval and not together in any other interval.
    pub fn fuzzable_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let at = |x: &Q| self.points.iter().position(|p| p == x);
        let mut out = Vec::new();
        for (i, a) in self.intervals.iter().enumerate() {
            let (Some(u), Some(v)) = (at(&a.start), at(&a.end)) else {
                continue;
            };
            if u == v {
                continue;
            }
            let other = self.intervals.iter().enumerate().any(|(j, b)| {
                j != i && b.contains(&self.points[u]) && b.contains(&self.points[v])
            });
            if !other {
                out.push((u.min(v), u.max(v)));
            }
        }
        out.sort();
        out
    }
}

/// Adjacent exactly when some interval holds both points.
pub fn circular_interval_graph(m: &CircularIntervalModel) -> Result<Graph> {
    m.validate()?;
    let mut edges = Vec::new();
    for i in 0..m.intervals.len() {
        let s = m.members(i);
        let v = s.as_slice();
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                edges.push((v[a], v[b]));
            }
        }
    }
    Graph::new(m.n(), edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzPair {
    pub u: Vertex,
    pub v: Vertex,
    /// Edges `(i, j)` between the `i`-th vertex of `X_u` and the `j`-th of `X_v`.
    pub pattern: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickeningSpec {
    pub base: BaseGraph,
    pub fuzz: Vec<FuzzPair>,
    /// `|X_v|` for every base vertex.
    pub sizes: Vec<usize>,
}

/// Base graph in the JSON graph shape, so specs serialize on their own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseGraph {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl From<&Graph> for BaseGraph {
    fn from(g: &Graph) -> Self {
        BaseGraph { n: g.n(), edges: g.edges() }
    }
}

impl BaseGraph {
    pub fn graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied())
    }
}

impl ThickeningSpec {
    pub fn plain(base: &Graph, sizes: Vec<usize>) -> ThickeningSpec {
        ThickeningSpec { base: base.into(), fuzz: Vec::new(), sizes }
    }

    /// First vertex id of each block `X_v`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.sizes.len() + 1);
        let mut acc = 0;
        for &s in &self.sizes {
            off.push(acc);
            acc += s;
        }
        off.push(acc);
        off
    }

    pub fn block(&self, v: Vertex) -> VertexSet {
        let off = self.offsets();
        (off[v]..off[v + 1]).collect()
    }

    pub fn validate(&self) -> Result<Graph> {
        let h = self.base.graph()?;
        if self.sizes.len() != h.n() {
            return invalid(format!("{} block sizes for {} base vertices", self.sizes.len(), h.n()));
        }
        if let Some(v) = self.sizes.iter().position(|&s| s == 0) {
            return invalid(format!("block of base vertex {v} is empty"));
        }
        let mut used = vec![false; h.n()];
        for f in &self.fuzz {
            h.check_vertex(f.u)?;
            h.check_vertex(f.v)?;
            if f.u == f.v {
                return invalid(format!("fuzz pair ({}, {}) is not a pair", f.u, f.v));
            }
            for x in [f.u, f.v] {
                if used[x] {
                    return invalid(format!("base vertex {x} is in two fuzz pairs"));
                }
                used[x] = true;
            }
            let (su, sv) = (self.sizes[f.u], self.sizes[f.v]);
            let mut pat = f.pattern.clone();
            pat.sort();
            pat.dedup();
            if pat.iter().any(|&(i, j)| i >= su || j >= sv) {
                return invalid(format!("fuzz pattern for ({}, {}) leaves its blocks", f.u, f.v));
            }
            if pat.is_empty() || pat.len() == su * sv {
                return invalid(format!(
                    "fuzz pattern for ({}, {}) is complete or anticomplete",
                    f.u, f.v
                ));
            }
        }
        Ok(h)
    }
}

/// Blow up each base vertex to a clique and join blocks per the base
/// adjacency, using the explicit pattern on fuzz pairs.
pub fn thickening(spec: &ThickeningSpec) -> Result<Graph> {
    let h = spec.validate()?;
    let off = spec.offsets();
    let fuzzed = |a: Vertex, b: Vertex| {
        spec.fuzz
            .iter()
            .find(|f| (f.u == a && f.v == b) || (f.u == b && f.v == a))
    };
    let mut edges = Vec::new();
    for v in 0..h.n() {
        for a in off[v]..off[v + 1] {
            for b in a + 1..off[v + 1] {
                edges.push((a, b));
            }
        }
    }
    for u in 0..h.n() {
        for v in u + 1..h.n() {
            if let Some(f) = fuzzed(u, v) {
                for &(i, j) in &f.pattern {
                    edges.push((off[f.u] + i, off[f.v] + j));
                }
            } else if h.has_edge(u, v) {
                for a in off[u]..off[u + 1] {
                    for b in off[v]..off[v + 1] {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    Graph::new(off[h.n()], edges)
}

/// A thickening of a long circular interval graph, fuzzed only on
/// permitted endpoint pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzyLciSpec {
    pub model: CircularIntervalModel,
    pub fuzz: Vec<FuzzPair>,
    pub sizes: Vec<usize>,
}

impl FuzzyLciSpec {
    pub fn thickening_spec(&self) -> Result<ThickeningSpec> {
        let h = circular_interval_graph(&self.model)?;
        let allowed = self.model.fuzzable_pairs();
        for f in &self.fuzz {
            if !allowed.contains(&(f.u.min(f.v), f.u.max(f.v))) {
                return invalid(format!("pair ({}, {}) may not be fuzzed in this model", f.u, f.v));
            }
        }
        Ok(ThickeningSpec { base: (&h).into(), fuzz: self.fuzz.clone(), sizes: self.sizes.clone() })
    }

    pub fn graph(&self) -> Result<Graph> {
        thickening(&self.thickening_spec()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_cycle_model() {
        let m = CircularIntervalModel::regular(5, &[(0, 2), (1, 2), (2, 2), (3, 2), (4, 2)]).unwrap();
        assert_eq!(circular_interval_graph(&m).unwrap(), Graph::cycle(5));
        assert_eq!(m.fuzzable_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn model_invariants() {
        let p = |a, b| q(a, b);
        let shared = CircularIntervalModel {
            points: vec![p(0, 1), p(1, 2)],
            intervals: vec![Arc::new(p(0, 1), p(1, 2)), Arc::new(p(1, 2), p(3, 4))],
        };
        assert!(shared.validate().is_err());
        let covering = CircularIntervalModel {
            points: vec![p(0, 1), p(1, 2)],
            intervals: vec![Arc::new(p(0, 1), p(6, 10)), Arc::new(p(5, 10), p(1, 10))],
        };
        assert!(covering.validate().is_err());
        let wrap = Arc::new(p(9, 10), p(1, 10));
        assert!(wrap.contains(&p(0, 1)) && wrap.contains(&p(19, 20)) && !wrap.contains(&p(1, 2)));
        let three = CircularIntervalModel::regular(6, &[(0, 3), (2, 3), (4, 3)]);
        assert!(three.is_err());
    }

    #[test]
    fn thickenings() {
        let k2 = Graph::path(2);
        let g = thickening(&ThickeningSpec::plain(&k2, vec![2, 2])).unwrap();
        assert_eq!(g, Graph::complete(4));
        let fuzzy = ThickeningSpec {
            base: (&k2).into(),
            fuzz: vec![FuzzPair { u: 0, v: 1, pattern: vec![(0, 0), (0, 1), (1, 0)] }],
            sizes: vec![2, 2],
        };
        let g = thickening(&fuzzy).unwrap();
        assert_eq!(g.m(), 5);
        assert!(!g.has_edge(1, 3));
        let complete = ThickeningSpec {
            base: (&k2).into(),
            fuzz: vec![FuzzPair { u: 0, v: 1, pattern: vec![(0, 0), (0, 1), (1, 0), (1, 1)] }],
            sizes: vec![2, 2],
        };
        assert!(thickening(&complete).is_err());
        let p3 = Graph::path(3);
        let twice = ThickeningSpec {
            base: (&p3).into(),
            fuzz: vec![
                FuzzPair { u: 0, v: 1, pattern: vec![(0, 0)] },
                FuzzPair { u: 1, v: 2, pattern: vec![(0, 0)] },
            ],
            sizes: vec![2, 2, 2],
        };
        assert!(thickening(&twice).is_err());
        assert!(thickening(&ThickeningSpec::plain(&k2, vec![1, 0])).is_err());
    }

    #[test]
    fn fuzzy_lci_rejects_non_endpoint_pairs() {
        let m = CircularIntervalModel::regular(5, &[(0, 3), (3, 3)]).unwrap();
        // Arc 0 spans points 0, 1, 2 so (0, 1) is not an endpoint pair.
        let spec = FuzzyLciSpec {
            model: m.clone(),
            fuzz: vec![FuzzPair { u: 0, v: 1, pattern: vec![(0, 0)] }],
            sizes: vec![2, 2, 1, 1, 1],
        };
        assert!(spec.graph().is_err());
        let ok = FuzzyLciSpec {
            model: m,
            fuzz: vec![FuzzPair { u: 0, v: 2, pattern: vec![(0, 0)] }],
            sizes: vec![2, 1, 1, 1, 1],
        };
        assert!(ok.graph().is_ok());
    }
}
