//! Chordality via maximum cardinality search and the induced clique tree.

use std::collections::VecDeque;

use crate::decompose::td::{connect_forest, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Visit order of maximum cardinality search; ties go to the smallest id.
fn mcs_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        done[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// Shortest path from `a` to `b` avoiding `blocked`, by BFS.
fn bfs_path(g: &Graph, a: Vertex, b: Vertex, blocked: &[bool]) -> Option<Vec<Vertex>> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if prev[y] == usize::MAX && !blocked[y] {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// A chordless cycle of length at least four, or `None` when `g` is chordal.
/// The cycle starts at its centre vertex `v` and closes back to it.
pub fn chordless_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let mut blocked = vec![false; g.n()];
                blocked[v] = true;
                for &u in nb {
                    blocked[u] = u != a && u != b;
                }
                if let Some(p) = bfs_path(g, a, b, &blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(p);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

pub fn is_chordal(g: &Graph) -> bool {
    chordal_td(g).is_ok()
}

/// Clique tree of a chordal graph: every bag is a maximal clique, so the
/// width is `ω(g) − 1`.
pub fn chordal_td(g: &Graph) -> Result<TreeDecomposition> {
    let n = g.n();
    let order = mcs_order(g);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut td = TreeDecomposition::default();
    let mut node_of = vec![usize::MAX; n];
    for &v in &order {
        let earlier: VertexSet = g.neighbors(v).iter().copied().filter(|&u| pos[u] < pos[v]).collect();
        if !g.is_clique(&earlier) {
            let cycle = chordless_cycle(g).expect("search order found a non-clique");
            return Err(Error::NotChordal { cycle });
        }
        match earlier.iter().max_by_key(|&u| pos[u]) {
            Some(p) if td.bags[node_of[p]] == earlier => {
                let t = node_of[p];
                td.bags[t].insert(v);
                node_of[v] = t;
            }
            parent => {
                let mut bag = earlier.clone();
                bag.insert(v);
                td.bags.push(bag);
                let t = td.bags.len() - 1;
                node_of[v] = t;
                if let Some(p) = parent {
                    td.edges.push((node_of[p], t));
                }
            }
        }
    }
    connect_forest(&mut td);
    Ok(td)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::td::validate_td;
    use crate::graph::clique_number;
    use crate::limits::Limits;

    #[test]
    fn cliques_trees_cycles() {
        let k4 = chordal_td(&Graph::complete(4)).unwrap();
        assert_eq!(k4.bags.len(), 1);
        assert_eq!(validate_td(&Graph::complete(4), &k4), Ok(3));
        let tree = Graph::new(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        assert_eq!(validate_td(&tree, &chordal_td(&tree).unwrap()), Ok(1));
        match chordal_td(&Graph::cycle(4)) {
            Err(Error::NotChordal { cycle }) => {
                assert_eq!(cycle.len(), 4);
                let mut s = cycle.clone();
                s.sort();
                assert_eq!(s, vec![0, 1, 2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn witness_cycle_is_chordless() {
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 1), (0, 3)]).unwrap();
        let c = chordless_cycle(&g).unwrap();
        assert!(c.len() >= 4);
        let k = c.len();
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                assert_eq!(g.has_edge(c[i], c[j]), consecutive);
            }
        }
        let chordal = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 1), (3, 4)]).unwrap();
        let td = chordal_td(&chordal).unwrap();
        let w = clique_number(&chordal, &Limits::default()).unwrap();
        assert_eq!(validate_td(&chordal, &td), Ok(w - 1));
        assert!(td.bags.iter().all(|b| chordal.is_clique(b)));
    }
}
