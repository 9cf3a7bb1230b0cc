//! Theta and pyramid search over end choices and induced connecting paths.

use crate::detect::paths::induced_paths;
use crate::detect::{host_masks, PatternMatch};
use crate::error::{invalid, Result};
use crate::graph::{bit, Graph, Mask, Vertex};
use crate::limits::Limits;

fn mask_of(vs: &[Vertex]) -> Mask {
    vs.iter().fold(0, |m, &v| m | bit(v))
}

fn closed(nbr: &[Mask], m: Mask) -> Mask {
    crate::graph::mask_iter(m).fold(m, |acc, v| acc | nbr[v])
}

/// Two non-adjacent ends joined by three induced paths of length at least
/// `t` whose interiors are disjoint and anticomplete.
pub fn find_t_theta(g: &Graph, t: usize, limits: &Limits) -> Result<Option<PatternMatch>> {
    if t < 2 {
        return invalid("a t-theta needs t >= 2");
    }
    let nbr = host_masks(g, limits)?;
    let budget = limits.budget();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if g.has_edge(a, b) || g.degree(a) < 3 || g.degree(b) < 3 {
                continue;
            }
            let paths = induced_paths(&nbr, a, b, t, 0, &budget)?;
            if paths.len() < 3 {
                continue;
            }
            let inner: Vec<Mask> = paths.iter().map(|p| mask_of(&p[1..p.len() - 1])).collect();
            let reach: Vec<Mask> = inner.iter().map(|&m| closed(&nbr, m)).collect();
            let ok = |i: usize, j: usize| inner[i] & reach[j] == 0;
            for i in 0..paths.len() {
                for j in i + 1..paths.len() {
                    if !ok(i, j) {
                        continue;
                    }
                    for k in j + 1..paths.len() {
                        budget.tick()?;
                        if ok(i, k) && ok(j, k) {
                            return Ok(Some(
                                PatternMatch::new("theta", vec![t])
                                    .role("ends", vec![a, b])
                                    .role("path1", paths[i].clone())
                                    .role("path2", paths[j].clone())
                                    .role("path3", paths[k].clone()),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// An apex joined to the three vertices of a triangle by induced paths of
/// length at least `t`, two of them of length at least 2, with no edges
/// between the paths other than the triangle and those at the apex.
pub fn find_t_pyramid(g: &Graph, t: usize, limits: &Limits) -> Result<Option<PatternMatch>> {
    if t < 1 {
        return invalid("a t-pyramid needs t >= 1");
    }
    let nbr = host_masks(g, limits)?;
    let budget = limits.budget();
    let n = g.n();
    let mut triangles = Vec::new();
    for x in 0..n {
        for &y in g.neighbors(x).iter().filter(|&&y| y > x) {
            for &z in g.neighbors(y).iter().filter(|&&z| z > y) {
                if g.has_edge(x, z) {
                    triangles.push([x, y, z]);
                }
            }
        }
    }
    for apex in 0..n {
        if g.degree(apex) < 3 {
            continue;
        }
        for tri in &triangles {
            if tri.contains(&apex) {
                continue;
            }
            let touching = tri.iter().filter(|&&b| g.has_edge(apex, b)).count();
            if touching >= 2 {
                continue;
            }
            let tri_mask = mask_of(tri);
            let mut lists: Vec<Vec<Vec<Vertex>>> = Vec::with_capacity(3);
            for &b in tri.iter() {
                let others = tri_mask & !bit(b);
                // Path vertices other than b and the apex must miss the other
                // triangle vertices entirely.
                let forbid = closed(&nbr, others) & !bit(b) & !bit(apex) | others;
                let need = if g.has_edge(apex, b) { 1 } else { t.max(1) };
                let mut ps = induced_paths(&nbr, apex, b, need, forbid, &budget)?;
                ps.retain(|p| p.len() - 1 >= t);
                if g.has_edge(apex, b) {
                    ps.retain(|p| p.len() == 2);
                }
                lists.push(ps);
            }
            if lists.iter().any(Vec::is_empty) {
                continue;
            }
            // Interior of each path: everything but the apex and its end.
            let inner: Vec<Vec<Mask>> = lists
                .iter()
                .map(|ps| ps.iter().map(|p| mask_of(&p[1..p.len() - 1])).collect())
                .collect();
            let reach: Vec<Vec<Mask>> = inner
                .iter()
                .map(|ms| ms.iter().map(|&m| closed(&nbr, m)).collect())
                .collect();
            for (i0, p0) in lists[0].iter().enumerate() {
                for (i1, p1) in lists[1].iter().enumerate() {
                    if inner[0][i0] & reach[1][i1] != 0 {
                        continue;
                    }
                    for (i2, p2) in lists[2].iter().enumerate() {
                        budget.tick()?;
                        if inner[0][i0] & reach[2][i2] != 0 || inner[1][i1] & reach[2][i2] != 0 {
                            continue;
                        }
                        let long = [p0, p1, p2].iter().filter(|p| p.len() - 1 >= 2).count();
                        if long < 2 {
                            continue;
                        }
                        return Ok(Some(
                            PatternMatch::new("pyramid", vec![t])
                                .role("apex", vec![apex])
                                .role("triangle", tri.to_vec())
                                .role("path1", p0.clone())
                                .role("path2", p1.clone())
                                .role("path3", p2.clone()),
                        ));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{pyramid, theta};

    #[test]
    fn theta_examples() {
        let lim = Limits::default();
        let k23 = Graph::complete_bipartite(2, 3);
        let m = find_t_theta(&k23, 2, &lim).unwrap().unwrap();
        assert_eq!(m.image.len(), 5);
        let (t333, _) = theta(3, 3, 3).unwrap();
        assert!(find_t_theta(&t333, 3, &lim).unwrap().is_some());
        assert!(find_t_theta(&t333, 4, &lim).unwrap().is_none());
        assert!(find_t_theta(&Graph::complete(4), 2, &lim).unwrap().is_none());
    }

    #[test]
    fn pyramid_examples() {
        let lim = Limits::default();
        assert!(find_t_pyramid(&Graph::complete(4), 1, &lim).unwrap().is_none());
        let (p122, w) = pyramid(1, 2, 2).unwrap();
        let m = find_t_pyramid(&p122, 1, &lim).unwrap().unwrap();
        assert_eq!(m.roles["apex"], vec![w.apex]);
        assert!(find_t_pyramid(&p122, 2, &lim).unwrap().is_none());
        let (p222, _) = pyramid(2, 2, 2).unwrap();
        assert!(find_t_pyramid(&p222, 2, &lim).unwrap().is_some());
        assert!(find_t_theta(&p222, 2, &lim).unwrap().is_none());
    }
}
