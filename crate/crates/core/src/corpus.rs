//! Seeded and exhaustive graph corpora used by the suites and tests.
//!
//! Everything here is a pure function of its arguments; the random
//! generators use ChaCha8 seeded from a `u64`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circular::{CircularIntervalModel, FuzzPair, FuzzyLciSpec};
use crate::detect::{find_induced, find_subdivided_claw, find_t_pyramid, find_t_theta};
use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;
use crate::weights::WeightFunction;

/// Largest order for the exhaustive catalog.
pub const MAX_CATALOG_N: usize = 7;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sorted (degree, sorted neighbor degrees) rows plus the triangle count.
fn invariant(g: &Graph) -> (Vec<(usize, Vec<usize>)>, usize) {
    let mut rows: Vec<(usize, Vec<usize>)> = (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
            nd.sort();
            (g.degree(v), nd)
        })
        .collect();
    rows.sort();
    (rows, g.triangle_count())
}

fn isomorphic(a: &Graph, b: &Graph, limits: &Limits) -> Result<bool> {
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    Ok(find_induced(a, b, limits)?.is_some())
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, grown by adding a vertex to each class on `n - 1`.
/// Order is deterministic: classes appear in discovery order.
pub fn graphs_on(n: usize, limits: &Limits) -> Result<Vec<Graph>> {
    if n > MAX_CATALOG_N {
        return invalid(format!("the exhaustive catalog stops at {MAX_CATALOG_N} vertices"));
    }
    let mut level = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut next: Vec<Graph> = Vec::new();
        let mut buckets: HashMap<_, Vec<usize>> = HashMap::new();
        for g in &level {
            for nb in 0u32..(1 << (k - 1)) {
                let mut edges = g.edges();
                edges.extend((0..k - 1).filter(|&u| nb >> u & 1 == 1).map(|u| (u, k - 1)));
                let h = Graph::new(k, edges)?;
                let bucket = buckets.entry(invariant(&h)).or_default();
                let mut seen = false;
                for &i in bucket.iter() {
                    if isomorphic(&next[i], &h, limits)? {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    bucket.push(next.len());
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// All graphs on `1..=max_n` vertices up to isomorphism, by order.
pub fn catalog(max_n: usize, limits: &Limits) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(graphs_on(n, limits)?);
    }
    Ok(out)
}

pub fn connected_catalog(max_n: usize, limits: &Limits) -> Result<Vec<Graph>> {
    Ok(catalog(max_n, limits)?.into_iter().filter(Graph::is_connected).collect())
}

/// `G(n, p)` with `p = num / den`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, num: u32, den: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_ratio(num, den) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("edges are in range")
}

/// `count` seeded `G(n, 1/2)` graphs.
pub fn seeded_sample(seed: u64, n: usize, count: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count).map(|_| random_graph(&mut r, n, 1, 2)).collect()
}

/// Connected graph with maximum degree at most `max_deg` (at least 2):
/// a random tree grown under the cap, then `extra` attempted chords.
pub fn bounded_degree_graph<R: Rng>(rng: &mut R, n: usize, max_deg: usize, extra: usize) -> Graph {
    let mut deg = vec![0usize; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| deg[u] < max_deg).collect();
        let u = *open.choose(rng).expect("a path stays under any cap of at least 2");
        edges.push((u, v));
        deg[u] += 1;
        deg[v] += 1;
    }
    for _ in 0..extra {
        if n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let (u, v) = (u.min(v), u.max(v));
        if u == v || deg[u] >= max_deg || deg[v] >= max_deg || edges.contains(&(u, v)) {
            continue;
        }
        edges.push((u, v));
        deg[u] += 1;
        deg[v] += 1;
    }
    Graph::new(n, edges).expect("edges are in range")
}

/// Chordal graph grown one simplicial vertex at a time: each new vertex
/// is joined to a random clique of the current graph.
pub fn random_chordal<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut edges = Vec::new();
    for v in 0..n {
        let mut clique: Vec<usize> = Vec::new();
        if v > 0 && rng.gen_ratio(9, 10) {
            let start = rng.gen_range(0..v);
            clique.push(start);
            let mut cand: Vec<usize> = adj[start].clone();
            cand.shuffle(rng);
            for u in cand {
                if clique.iter().all(|&c| adj[c].contains(&u)) && rng.gen_ratio(2, 3) {
                    clique.push(u);
                }
            }
        }
        adj.push(clique.clone());
        for &u in &clique {
            adj[u].push(v);
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).expect("edges are in range")
}

/// `count` seeded chordal graphs with `1..=max_n` vertices.
pub fn chordal_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_n.max(1));
            random_chordal(&mut r, n)
        })
        .collect()
}

/// `count` seeded normal weight functions on `n` vertices. Integer
/// weights in `0..=9` with roughly a third of the vertices zeroed,
/// normalised; never all zero.
pub fn weight_battery(seed: u64, n: usize, count: usize) -> Result<Vec<WeightFunction>> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let raw: Vec<u64> = (0..n)
            .map(|_| if r.gen_ratio(1, 3) { 0 } else { r.gen_range(1..=9) })
            .collect();
        if raw.iter().all(|&x| x == 0) {
            if n == 0 {
                return invalid("no normal weight function on the empty graph");
            }
            continue;
        }
        out.push(WeightFunction::from_integers(&raw)?);
    }
    Ok(out)
}

/// `G(n, p)` graphs (`p` drawn from 1/5..4/5) with no induced
/// `S_{t1,t2,t3}`, filtered by the claw detector. Returns `(graphs, tried)`.
pub fn claw_free_corpus(
    seed: u64,
    count: usize,
    legs: (usize, usize, usize),
    sizes: std::ops::RangeInclusive<usize>,
    limits: &Limits,
) -> Result<(Vec<Graph>, usize)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut tried = 0;
    while out.len() < count {
        tried += 1;
        if tried > 200 * count.max(1) {
            return invalid("claw-free filter rejected too many samples");
        }
        let n = r.gen_range(sizes.clone());
        let num = r.gen_range(1..=4);
        let g = random_graph(&mut r, n, num, 5);
        if find_subdivided_claw(&g, legs.0, legs.1, legs.2, limits)?.is_none() {
            out.push(g);
        }
    }
    Ok((out, tried))
}

/// Bounded-degree connected graphs with no `t`-theta and no `t`-pyramid.
pub fn theta_pyramid_free_corpus(
    seed: u64,
    count: usize,
    t: usize,
    sizes: std::ops::RangeInclusive<usize>,
    max_deg: usize,
    limits: &Limits,
) -> Result<(Vec<Graph>, usize)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut tried = 0;
    while out.len() < count {
        tried += 1;
        if tried > 200 * count.max(1) {
            return invalid("theta/pyramid filter rejected too many samples");
        }
        let n = r.gen_range(sizes.clone());
        let extra = r.gen_range(0..=n);
        let g = bounded_degree_graph(&mut r, n, max_deg, extra);
        if find_t_theta(&g, t, limits)?.is_none() && find_t_pyramid(&g, t.max(1), limits)?.is_none() {
            out.push(g);
        }
    }
    Ok((out, tried))
}

fn random_pattern<R: Rng>(r: &mut R, a: usize, b: usize) -> Option<Vec<(usize, usize)>> {
    let all: Vec<(usize, usize)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
    if all.len() < 2 {
        return None;
    }
    let k = r.gen_range(1..all.len());
    let mut pat: Vec<(usize, usize)> = all.choose_multiple(r, k).copied().collect();
    pat.sort();
    Some(pat)
}

/// Seeded fuzzy long circular interval specs: `3..=max_points` points,
/// block sizes `1..=max_size`, and a random subset of the fuzzable pairs
/// fuzzed with a random proper pattern.
pub fn lci_corpus(seed: u64, count: usize, max_points: usize, max_size: usize) -> Result<Vec<FuzzyLciSpec>> {
    if max_points < 3 || max_size == 0 {
        return invalid("need at least three points and blocks of size one");
    }
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut tried = 0;
    while out.len() < count {
        tried += 1;
        if tried > 1000 * count.max(1) {
            return invalid("could not draw enough valid circular models");
        }
        let n = r.gen_range(3..=max_points);
        let k = r.gen_range(1..=n);
        let arcs: Vec<(usize, usize)> = (0..k)
            .map(|_| (r.gen_range(0..n), r.gen_range(2..=(n / 2).max(2))))
            .collect();
        let Ok(model) = CircularIntervalModel::regular(n, &arcs) else {
            continue;
        };
        let sizes: Vec<usize> = (0..n).map(|_| r.gen_range(1..=max_size)).collect();
        let mut used = VertexSet::new();
        let mut fuzz = Vec::new();
        for (u, v) in model.fuzzable_pairs() {
            if used.contains(u) || used.contains(v) || !r.gen_ratio(1, 2) {
                continue;
            }
            if let Some(pattern) = random_pattern(&mut r, sizes[u], sizes[v]) {
                used.insert(u);
                used.insert(v);
                fuzz.push(FuzzPair { u, v, pattern });
            }
        }
        out.push(FuzzyLciSpec { model, fuzz, sizes });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::chordal::is_chordal;

    #[test]
    fn catalog_counts_match_known_sequences() {
        let limits = Limits::default();
        let all = [1, 2, 4, 11, 34, 156, 1044];
        let conn = [1, 1, 2, 6, 21, 112, 853];
        for n in 1..=7 {
            let gs = graphs_on(n, &limits).unwrap();
            assert_eq!(gs.len(), all[n - 1], "n = {n}");
            assert_eq!(gs.iter().filter(|g| g.is_connected()).count(), conn[n - 1], "n = {n}");
        }
    }

    #[test]
    fn catalog_is_deterministic() {
        let limits = Limits::default();
        assert_eq!(graphs_on(5, &limits).unwrap(), graphs_on(5, &limits).unwrap());
        assert!(graphs_on(8, &limits).is_err());
    }

    #[test]
    fn chordal_growth_is_chordal() {
        for g in chordal_corpus(3, 60, 30) {
            assert!(is_chordal(&g));
        }
    }

    #[test]
    fn bounded_degree_respects_cap() {
        let mut r = rng(9);
        for _ in 0..50 {
            let n = r.gen_range(1..20);
            let g = bounded_degree_graph(&mut r, n, 3, 2 * n);
            assert!(g.max_degree() <= 3);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn weights_are_normal_and_seeded() {
        let a = weight_battery(4, 6, 20).unwrap();
        assert_eq!(a.len(), 20);
        assert!(a.iter().all(|w| w.is_normal()));
        assert_eq!(a, weight_battery(4, 6, 20).unwrap());
        assert_ne!(a, weight_battery(5, 6, 20).unwrap());
    }

    #[test]
    fn filtered_corpora_avoid_their_patterns() {
        let limits = Limits::default();
        let (gs, tried) = claw_free_corpus(1, 10, (2, 1, 1), 5..=10, &limits).unwrap();
        assert_eq!(gs.len(), 10);
        assert!(tried >= 10);
        let (s, _) = crate::generators::subdivided_claw(2, 1, 1).unwrap();
        for g in &gs {
            assert!(find_induced(g, &s, &limits).unwrap().is_none());
        }
        let (ts, _) = theta_pyramid_free_corpus(2, 5, 2, 5..=10, 3, &limits).unwrap();
        assert_eq!(ts.len(), 5);
    }

    #[test]
    fn lci_specs_build() {
        for spec in lci_corpus(11, 30, 12, 3).unwrap() {
            spec.graph().unwrap();
        }
    }
}
