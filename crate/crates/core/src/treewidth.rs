//! Exact treewidth by depth-first search over eliminated vertex sets.
//!
//! Eliminating `v` after the set `S` creates a bag `{v} ∪ Q(S, v)`, where
//! `Q(S, v)` is the set of vertices outside `S ∪ {v}` reachable from `v`
//! through `S`. `tw(G) <= k` iff some order keeps every `|Q| <= k`; the
//! search memoizes the sets `S` already shown to be dead ends.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::decompose::td::{connect_forest, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{bit, components, mask_iter, Graph, Mask, Vertex, MASK_BITS};
use crate::limits::{Budget, Limits};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreewidthResult {
    /// Width of `decomposition`; the exact treewidth when `exact`.
    pub width: usize,
    /// Proven lower bound.
    pub lower: usize,
    pub exact: bool,
    pub decomposition: TreeDecomposition,
    /// Elimination order that produced the decomposition.
    pub order: Vec<Vertex>,
}

fn full(n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        Mask::MAX >> (MASK_BITS - n)
    }
}

/// `Q(S, v)`: vertices outside `S ∪ {v}` reachable from `v` via `S`.
#[inline]
fn q_set(nbr: &[Mask], s: Mask, v: usize) -> Mask {
    let mut seen = bit(v);
    let mut frontier = bit(v);
    let mut out = 0;
    while frontier != 0 {
        let mut next = 0;
        for u in mask_iter(frontier) {
            next |= nbr[u];
        }
        next &= !seen;
        seen |= next;
        out |= next & !s;
        frontier = next & s;
    }
    out
}

/// Bags from an elimination order (any order is valid).
pub fn decomposition_from_order(g: &Graph, order: &[Vertex]) -> Result<TreeDecomposition> {
    let nbr = g.masks()?;
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    if order.len() != n || pos.contains(&usize::MAX) {
        return Err(Error::Invalid("elimination order is not a permutation".into()));
    }
    let mut td = TreeDecomposition::default();
    let mut s: Mask = 0;
    let mut qs = Vec::with_capacity(n);
    for &v in order {
        let q = q_set(&nbr, s, v);
        td.bags.push(crate::graph::VertexSet::from_mask(q | bit(v)));
        qs.push(q);
        s |= bit(v);
    }
    for (i, &q) in qs.iter().enumerate() {
        if let Some(p) = mask_iter(q).map(|u| pos[u]).min() {
            td.edges.push((i, p));
        }
    }
    connect_forest(&mut td);
    Ok(td)
}

fn order_width(nbr: &[Mask], order: &[Vertex]) -> usize {
    let mut s = 0;
    let mut w = 0;
    for &v in order {
        w = w.max(q_set(nbr, s, v).count_ones() as usize);
        s |= bit(v);
    }
    w
}

/// Greedy min-fill order over the filled graph.
fn min_fill_order(nbr: &[Mask], n: usize) -> Vec<Vertex> {
    let mut adj = nbr.to_vec();
    let mut alive = full(n);
    let mut order = Vec::with_capacity(n);
    while alive != 0 {
        let mut best = (usize::MAX, usize::MAX, 0);
        for v in mask_iter(alive) {
            let nb = adj[v] & alive;
            let mut fill = 0;
            for u in mask_iter(nb) {
                fill += (nb & !adj[u] & !bit(u)).count_ones() as usize;
            }
            let key = (fill / 2, nb.count_ones() as usize, v);
            if (key.0, key.1) < (best.0, best.1) {
                best = key;
            }
        }
        let v = best.2;
        let nb = adj[v] & alive;
        for u in mask_iter(nb) {
            adj[u] |= nb & !bit(u);
        }
        alive &= !bit(v);
        order.push(v);
    }
    order
}

/// Contraction degeneracy: repeatedly contract a minimum-degree vertex into
/// its least-degree neighbor. The largest minimum degree seen is a lower
/// bound because treewidth does not increase under minors.
fn minor_min_width(nbr: &[Mask], n: usize) -> usize {
    let mut adj = nbr.to_vec();
    let mut alive = full(n);
    let mut lb = 0;
    while alive.count_ones() >= 2 {
        let v = mask_iter(alive)
            .min_by_key(|&v| ((adj[v] & alive).count_ones(), v))
            .unwrap();
        let nb = adj[v] & alive;
        lb = lb.max(nb.count_ones() as usize);
        alive &= !bit(v);
        if nb == 0 {
            continue;
        }
        let u = mask_iter(nb)
            .min_by_key(|&u| ((adj[u] & alive).count_ones(), u))
            .unwrap();
        let merged = (adj[u] | nb) & !bit(u) & !bit(v);
        adj[u] = merged;
        for x in mask_iter(merged) {
            adj[x] |= bit(u);
        }
    }
    lb
}

struct Search<'a> {
    nbr: &'a [Mask],
    n: usize,
    k: usize,
    dead: HashSet<Mask>,
    budget: &'a Budget,
    order: Vec<Vertex>,
}

impl Search<'_> {
    /// Can the vertices outside `s` be eliminated with every `|Q| <= k`?
    fn run(&mut self, s: Mask) -> Result<bool> {
        let rest = full(self.n) & !s;
        if (rest.count_ones() as usize) <= self.k + 1 {
            self.order.extend(mask_iter(rest));
            return Ok(true);
        }
        if self.dead.contains(&s) {
            return Ok(false);
        }
        self.budget.tick()?;
        let mut cands: Vec<(u32, Vertex, Mask)> = Vec::new();
        for v in mask_iter(rest) {
            let q = q_set(self.nbr, s, v);
            if q.count_ones() as usize > self.k {
                continue;
            }
            // A simplicial vertex of low degree can always go first.
            let simplicial = mask_iter(q).all(|u| {
                let qu = q_set(self.nbr, s, u);
                (q & !bit(u) & !qu) == 0
            });
            if simplicial {
                cands.clear();
                cands.push((0, v, q));
                break;
            }
            cands.push((q.count_ones(), v, q));
        }
        cands.sort_unstable_by_key(|&(d, v, _)| (d, v));
        for (_, v, _) in cands {
            self.order.push(v);
            if self.run(s | bit(v))? {
                return Ok(true);
            }
            self.order.pop();
        }
        self.dead.insert(s);
        Ok(false)
    }
}

/// Decide `tw(g) <= k` for a graph of at most 128 vertices; on success
/// returns a witnessing elimination order.
pub fn treewidth_at_most(g: &Graph, k: usize, budget: &Budget) -> Result<Option<Vec<Vertex>>> {
    let nbr = g.masks()?;
    let mut search = Search { nbr: &nbr, n: g.n(), k, dead: HashSet::new(), budget, order: Vec::new() };
    Ok(if search.run(0)? { Some(search.order) } else { None })
}

fn solve_connected(g: &Graph, exact: bool, budget: &Budget) -> Result<TreewidthResult> {
    let nbr = g.masks()?;
    let n = g.n();
    let lower = minor_min_width(&nbr, n);
    let mut order = min_fill_order(&nbr, n);
    let mut width = order_width(&nbr, &order);
    let mut proven = lower;
    let mut is_exact = width == lower;
    if exact && !is_exact {
        let mut k = lower;
        loop {
            if k >= width {
                is_exact = true;
                break;
            }
            match treewidth_at_most(g, k, budget) {
                Ok(Some(o)) => {
                    order = o;
                    width = order_width(&nbr, &order);
                    is_exact = true;
                    break;
                }
                Ok(None) => {
                    k += 1;
                    proven = k;
                }
                Err(Error::BudgetExhausted(_)) => break,
                Err(e) => return Err(e),
            }
        }
        if is_exact {
            proven = width;
        }
    }
    let decomposition = decomposition_from_order(g, &order)?;
    Ok(TreewidthResult {
        width,
        lower: proven.min(width),
        exact: is_exact,
        decomposition,
        order,
    })
}

/// Exact treewidth with a witness decomposition. Above the configured cap,
/// or when the step budget runs out, returns heuristic bounds with
/// `exact = false`.
pub fn exact_treewidth(g: &Graph, limits: &Limits) -> Result<TreewidthResult> {
    limits.check("treewidth", g.n(), limits.max_host_n.min(MASK_BITS))?;
    let exact = g.n() <= limits.max_treewidth_n;
    let budget = limits.budget();
    if g.n() == 0 {
        return Ok(TreewidthResult {
            width: 0,
            lower: 0,
            exact: true,
            decomposition: TreeDecomposition::default(),
            order: Vec::new(),
        });
    }
    let mut td = TreeDecomposition::default();
    let mut order = Vec::new();
    let (mut width, mut lower, mut all_exact) = (0, 0, true);
    for comp in components(g, &g.vertices()) {
        let (sub, map) = g.induced(&comp);
        let r = solve_connected(&sub, exact, &budget)?;
        width = width.max(r.width);
        lower = lower.max(r.lower);
        all_exact &= r.exact;
        let off = td.bags.len();
        td.bags.extend(r.decomposition.bags.iter().map(|b| b.iter().map(|v| map[v]).collect()));
        td.edges.extend(r.decomposition.edges.iter().map(|&(a, b)| (a + off, b + off)));
        order.extend(r.order.iter().map(|&v| map[v]));
    }
    connect_forest(&mut td);
    Ok(TreewidthResult { width, lower, exact: all_exact, decomposition: td, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::td::validate_td;
    use crate::generators::wall;
    use crate::graph::subdivide_all;

    /// Elimination width by explicit fill-in, without the reachability trick.
    fn fill_width(g: &Graph, order: &[usize]) -> usize {
        let n = g.n();
        let mut adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
        let mut gone = vec![false; n];
        let mut w = 0;
        for &v in order {
            let nb: Vec<usize> = (0..n).filter(|&u| !gone[u] && adj[v][u]).collect();
            w = w.max(nb.len());
            for &a in &nb {
                for &b in &nb {
                    if a != b {
                        adj[a][b] = true;
                    }
                }
            }
            gone[v] = true;
        }
        w
    }

    fn brute_tw(g: &Graph) -> usize {
        fn rec(g: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>, best: &mut usize) {
            if perm.len() == g.n() {
                *best = (*best).min(fill_width(g, perm));
                return;
            }
            for v in 0..g.n() {
                if !used[v] {
                    used[v] = true;
                    perm.push(v);
                    rec(g, perm, used, best);
                    perm.pop();
                    used[v] = false;
                }
            }
        }
        let mut best = usize::MAX;
        rec(g, &mut Vec::new(), &mut vec![false; g.n()], &mut best);
        if g.n() == 0 {
            0
        } else {
            best
        }
    }

    #[test]
    fn anchors() {
        let lim = Limits::default();
        assert_eq!(exact_treewidth(&Graph::complete(4), &lim).unwrap().width, 3);
        assert_eq!(exact_treewidth(&Graph::complete_bipartite(3, 3), &lim).unwrap().width, 3);
        assert_eq!(exact_treewidth(&Graph::path(6), &lim).unwrap().width, 1);
        assert_eq!(exact_treewidth(&Graph::cycle(7), &lim).unwrap().width, 2);
        assert_eq!(exact_treewidth(&Graph::empty(3), &lim).unwrap().width, 0);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let lim = Limits::default();
        let graphs = vec![
            Graph::cycle(5),
            Graph::complete_bipartite(2, 4),
            Graph::complete(5).complement().disjoint_union(&Graph::cycle(3)),
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (0, 4)]).unwrap(),
            Graph::new(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 5), (5, 6), (4, 6)]).unwrap(),
        ];
        for g in graphs {
            let r = exact_treewidth(&g, &lim).unwrap();
            assert!(r.exact);
            assert_eq!(r.width, brute_tw(&g), "{g:?}");
            assert_eq!(validate_td(&g, &r.decomposition), Ok(r.width));
        }
    }

    #[test]
    fn wall_and_subdivision() {
        let lim = Limits::default();
        let w = wall(3, 3).unwrap();
        let r = exact_treewidth(&w, &lim).unwrap();
        assert!(r.exact);
        assert_eq!(r.width, 3);
        let s = exact_treewidth(&subdivide_all(&w, 2).unwrap(), &lim).unwrap();
        assert!(s.exact);
        assert_eq!(s.width, 3);
    }

    #[test]
    fn bounds_mode_above_cap() {
        let lim = Limits { max_treewidth_n: 4, ..Limits::default() };
        let r = exact_treewidth(&Graph::cycle(8), &lim).unwrap();
        assert!(r.lower <= 2 && 2 <= r.width);
        assert_eq!(validate_td(&Graph::cycle(8), &r.decomposition), Ok(r.width));
    }
}
