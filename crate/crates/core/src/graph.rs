//! Simple undirected graphs with dense integer vertex ids.
//!
//! Vertex ids are `0..n` and every ordering the crate relies on (set
//! comparison, tie-breaks, enumeration order) derives from ascending ids.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::limits::Limits;

pub type Vertex = usize;

/// Bitmask over at most 128 vertices, used by the exhaustive searches.
pub type Mask = u128;

pub(crate) const MASK_BITS: usize = 128;

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1u128 << v
}

/// Iterate the set bits of a mask in ascending order.
pub(crate) fn mask_iter(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Sorted, duplicate-free set of vertex ids.
///
/// The derived `Ord` compares the sorted id sequences, which is the
/// lexicographic order on subsets used for every tie-break.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(vec![v])
    }

    pub fn range(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    /// Build from an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn from_mask(m: Mask) -> Self {
        VertexSet(mask_iter(m).collect())
    }

    /// Mask form; every id must be below 128.
    pub fn to_mask(&self) -> Mask {
        self.0.iter().fold(0, |m, &v| m | bit(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        VertexSet(out)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn insert(&mut self, v: Vertex) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(v: [Vertex; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A path given by its vertex sequence `p_0 .. p_k`; its length is `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Path(vertices)
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    pub fn ends(&self) -> Option<(Vertex, Vertex)> {
        Some((*self.0.first()?, *self.0.last()?))
    }

    /// The path minus both ends.
    pub fn interior(&self) -> VertexSet {
        if self.0.len() <= 2 {
            VertexSet::new()
        } else {
            self.0[1..self.0.len() - 1].iter().copied().collect()
        }
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    /// Consecutive vertices adjacent and no vertex repeated.
    pub fn is_path_in(&self, g: &Graph) -> bool {
        if self.0.is_empty() || self.0.iter().any(|&v| v >= g.n()) {
            return false;
        }
        if self.vertex_set().len() != self.0.len() {
            return false;
        }
        self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    /// A path with no chords.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        if !self.is_path_in(g) {
            return false;
        }
        for i in 0..self.0.len() {
            for j in i + 2..self.0.len() {
                if g.has_edge(self.0[i], self.0[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    /// Build a graph, rejecting loops and out-of-range ids. Repeated
    /// edges collapse to one.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    pub(crate) fn from_edges_unchecked<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Graph::new(n, edges).expect("constructor produced an invalid edge")
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges_unchecked(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges_unchecked(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Graph {
        Graph::from_edges_unchecked(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges_unchecked(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges_unchecked(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(self.n())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.as_slice().last() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// Neighborhood masks; fails above 128 vertices.
    pub fn masks(&self) -> Result<Vec<Mask>> {
        if self.n() > MASK_BITS {
            return Err(Error::CapExceeded {
                what: "bitmask search",
                size: self.n(),
                cap: MASK_BITS,
            });
        }
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0, |m, &v| m | bit(v)))
            .collect())
    }

    /// Induced subgraph on `s`; returns the subgraph and the map from its
    /// local ids to ids of `self` (ascending, so order is preserved).
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<Vertex>) {
        let map: Vec<Vertex> = s.iter().collect();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in map.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = local[u];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        (Graph::from_edges_unchecked(map.len(), edges), map)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let edges = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|(u, v)| (u + off, v + off)));
        Graph::from_edges_unchecked(off + other.n(), edges)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let edges: Vec<_> = edges.filter(|&(u, v)| !self.has_edge(u, v)).collect();
        Graph::from_edges_unchecked(n, edges)
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph> {
        if perm.len() != self.n() || perm.iter().copied().collect::<VertexSet>().len() != self.n() {
            return invalid("relabeling is not a permutation");
        }
        Graph::new(self.n(), self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let v = s.as_slice();
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| self.has_edge(v[i], v[j])))
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        let v = s.as_slice();
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| !self.has_edge(v[i], v[j])))
    }

    /// No edge between `a` and `b`.
    pub fn anticomplete(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|u| self.adj[u].iter().all(|&v| !b.contains(v)))
    }

    /// Open neighborhood N(X): vertices outside X with a neighbor in X.
    pub fn open_neighborhood(&self, x: &VertexSet) -> VertexSet {
        x.iter()
            .flat_map(|v| self.adj[v].iter().copied())
            .filter(|&u| !x.contains(u))
            .collect()
    }

    /// Closed neighborhood N[X].
    pub fn closed_neighborhood(&self, x: &VertexSet) -> VertexSet {
        x.union(&self.open_neighborhood(x))
    }

    /// BFS distances from `src` within the whole graph.
    pub fn distances_from(&self, src: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Maximum distance in the whole graph between two vertices of `s`;
    /// `None` if some pair is disconnected.
    pub fn set_diameter(&self, s: &VertexSet) -> Option<usize> {
        let mut best = 0;
        for u in s.iter() {
            let dist = self.distances_from(u);
            for v in s.iter() {
                best = best.max(dist[v]?);
            }
        }
        Some(best)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || components(self, &self.vertices()).len() == 1
    }

    /// Non-empty and inducing a connected subgraph.
    pub fn is_connected_set(&self, s: &VertexSet) -> bool {
        !s.is_empty() && components(self, s).len() == 1
    }

    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for (u, v) in self.edges() {
            count += self.adj[v].iter().filter(|&&w| w > v && self.has_edge(u, w)).count();
        }
        count
    }
}

/// N^d[X]: vertices at distance at most `d` from `x`.
pub fn neighborhood(g: &Graph, x: &VertexSet, d: usize) -> Result<VertexSet> {
    g.check_set(x)?;
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for v in x.iter() {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        if dist[u] == d {
            continue;
        }
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    Ok((0..g.n()).filter(|&v| dist[v] != usize::MAX).collect())
}

/// Connected components of the subgraph induced on `s`, in lexicographic
/// order.
pub fn components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    let mut seen = vec![false; g.n()];
    let mut inside = vec![false; g.n()];
    for v in s.iter() {
        inside[v] = true;
    }
    let mut out = Vec::new();
    for start in s.iter() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if inside[v] && !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(VertexSet::from_sorted(comp));
    }
    // Components are discovered by ascending minimum element, which is
    // already lexicographic order for disjoint sets.
    out
}

/// Components of G - X.
pub fn components_without(g: &Graph, x: &VertexSet) -> Vec<VertexSet> {
    components(g, &g.vertices().difference(x))
}

/// Line graph; vertex `i` stands for the `i`-th edge in lexicographic order.
pub fn line_graph(g: &Graph) -> Graph {
    let edges = g.edges();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        at[u].push(i);
        at[v].push(i);
    }
    let mut out = Vec::new();
    for list in &at {
        for a in 0..list.len() {
            for b in a + 1..list.len() {
                out.push((list[a], list[b]));
            }
        }
    }
    Graph::from_edges_unchecked(edges.len(), out)
}

/// Replace each listed edge by a path of the given length. New vertices
/// are appended after the originals, edge by edge in lexicographic order.
pub fn subdivide(g: &Graph, lengths: &BTreeMap<(Vertex, Vertex), usize>) -> Result<Graph> {
    let mut norm = BTreeMap::new();
    for (&(u, v), &len) in lengths {
        let key = (u.min(v), u.max(v));
        if !g.has_edge(key.0, key.1) {
            return invalid(format!("({u},{v}) is not an edge"));
        }
        if len == 0 {
            return invalid(format!("edge ({u},{v}) given length 0"));
        }
        norm.insert(key, len);
    }
    let mut next = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let len = norm.get(&(u, v)).copied().unwrap_or(1);
        let mut prev = u;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::new(next, edges)
}

/// Subdivide every edge into a path of length `len`.
pub fn subdivide_all(g: &Graph, len: usize) -> Result<Graph> {
    let lengths = g.edges().into_iter().map(|e| (e, len)).collect();
    subdivide(g, &lengths)
}

fn max_clique_mask(nbr: &[Mask], cand: Mask, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    let mut cand = cand;
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !bit(v);
        max_clique_mask(nbr, cand & nbr[v], size + 1, best);
    }
}

/// ω(G) by branch and bound.
pub fn clique_number(g: &Graph, limits: &Limits) -> Result<usize> {
    limits.check("clique number", g.n(), limits.max_clique_n.min(MASK_BITS))?;
    let nbr = g.masks()?;
    let all = if g.n() == 0 { 0 } else { Mask::MAX >> (MASK_BITS - g.n()) };
    let mut best = 0;
    max_clique_mask(&nbr, all, 0, &mut best);
    Ok(best)
}

/// α(G), as the clique number of the complement.
pub fn independence_number(g: &Graph, limits: &Limits) -> Result<usize> {
    clique_number(&g.complement(), limits)
}

/// An induced path on at least `ell` vertices, found as a shortest path to
/// a vertex of maximum eccentricity. Shortest paths have no chords.
pub fn long_induced_path(g: &Graph, ell: usize) -> Result<Option<Path>> {
    if ell < 2 {
        return invalid("ell must be at least 2");
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut best: Option<Vec<Vertex>> = None;
    for src in 0..g.n() {
        let mut parent = vec![usize::MAX; g.n()];
        let mut dist = vec![usize::MAX; g.n()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        let mut far = src;
        while let Some(u) = queue.pop_front() {
            if dist[u] > dist[far] {
                far = u;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if best.as_ref().is_none_or(|b| dist[far] + 1 > b.len()) {
            let mut p = vec![far];
            while *p.last().unwrap() != src {
                p.push(parent[*p.last().unwrap()]);
            }
            p.reverse();
            best = Some(p);
        }
        if best.as_ref().is_some_and(|b| b.len() >= ell) {
            break;
        }
    }
    Ok(best.filter(|b| b.len() >= ell).map(Path::new))
}

/// Given an induced path `p` of length at least `t(1+Δ)-1` and a vertex
/// `z` off the path with between 1 and Δ neighbors on it, return a subpath
/// `p'_0 .. p'_t` whose only neighbor of `z` is `p'_0`.
pub fn attach_free_subpath(g: &Graph, p: &Path, z: Vertex, t: usize) -> Result<Path> {
    g.check_vertex(z)?;
    if t == 0 {
        return invalid("t must be positive");
    }
    if !p.is_induced_in(g) {
        return invalid("p is not an induced path");
    }
    let verts = p.vertices();
    if verts.contains(&z) {
        return invalid(format!("vertex {z} lies on the path"));
    }
    let delta = g.max_degree();
    let hits: Vec<bool> = verts.iter().map(|&v| g.has_edge(z, v)).collect();
    let count = hits.iter().filter(|&&h| h).count();
    if count == 0 {
        return Err(Error::NoNeighborOnPath(z));
    }
    if count > delta {
        return invalid(format!("{z} has {count} neighbors on the path, more than Δ = {delta}"));
    }
    let need = (t * (1 + delta)).saturating_sub(1);
    if p.length() < need {
        return Err(Error::PathTooShort { len: p.length(), need });
    }
    for i in 0..=p.length() - t {
        let window = &hits[i..=i + t];
        if window[0] && window[1..].iter().all(|&h| !h) {
            return Ok(Path::new(verts[i..=i + t].to_vec()));
        }
        if window[t] && window[..t].iter().all(|&h| !h) {
            return Ok(Path::new(verts[i..=i + t].iter().rev().copied().collect()));
        }
    }
    // Unreachable when the preconditions hold.
    invalid("no subpath with a single attachment exists")
}
