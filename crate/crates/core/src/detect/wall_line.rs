//! Line graphs of subdivided walls, by enumerating subdivisions.

use std::collections::BTreeMap;

use crate::detect::{find_induced, PatternMatch};
use crate::error::{invalid, Result};
use crate::generators::wall;
use crate::graph::{line_graph, subdivide, Graph};
use crate::limits::Limits;

/// Calls `f` on each vector of `m` positive parts summing to `total`, in
/// lexicographic order; stops when `f` returns `false`.
fn compositions(m: usize, total: usize, f: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    fn rec(m: usize, left: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
        if cur.len() + 1 == m {
            cur.push(left);
            let go = f(cur)?;
            cur.pop();
            return Ok(go);
        }
        let slots = m - cur.len() - 1;
        for x in 1..=left - slots {
            cur.push(x);
            let go = rec(m, left - x, cur, f)?;
            cur.pop();
            if !go {
                return Ok(false);
            }
        }
        Ok(true)
    }
    if m == 0 || total < m {
        return Ok(true);
    }
    rec(m, total, &mut Vec::new(), f)
}

/// Search for the line graph of some subdivision of the `k × k` wall
/// (`k` in 2..=3). Members have as many vertices as the subdivided wall
/// has edges, so totals up to `|V(g)|` cover the whole family.
pub fn find_line_of_subdivided_wall(g: &Graph, k: usize, limits: &Limits) -> Result<Option<PatternMatch>> {
    if !(2..=3).contains(&k) {
        return invalid("wall line search supports k = 2 or k = 3");
    }
    limits.check("pattern", g.n(), limits.max_pattern_n)?;
    let w = wall(k, k)?;
    let edges = w.edges();
    let budget = limits.budget();
    let mut found = None;
    for total in edges.len()..=g.n() {
        let mut visit = |lens: &[usize]| -> Result<bool> {
            budget.tick()?;
            let map: BTreeMap<(usize, usize), usize> = edges.iter().copied().zip(lens.iter().copied()).collect();
            let sub = subdivide(&w, &map)?;
            let pattern = line_graph(&sub);
            if let Some(img) = find_induced(g, &pattern, limits)? {
                let mut m = PatternMatch::new("wall-line", vec![k]).role("map", img);
                m.roles.insert("lengths".to_string(), lens.to_vec());
                found = Some(m);
                return Ok(false);
            }
            Ok(true)
        };
        if k == 2 {
            // The 2x2 wall is a 4-cycle: every subdivision with this total
            // is the same cycle, and so is its line graph.
            let mut first = vec![1; edges.len()];
            first[edges.len() - 1] = total - edges.len() + 1;
            visit(&first)?;
        } else {
            compositions(edges.len(), total, &mut visit)?;
        }
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wall_line_examples() {
        let lim = Limits::default();
        let lw = line_graph(&wall(3, 3).unwrap());
        let m = find_line_of_subdivided_wall(&lw, 3, &lim).unwrap().unwrap();
        assert_eq!(m.roles["lengths"], vec![1; 15]);
        assert!(find_line_of_subdivided_wall(&Graph::complete(3), 3, &lim).unwrap().is_none());
        assert!(find_line_of_subdivided_wall(&wall(3, 3).unwrap(), 3, &lim).unwrap().is_none());
        assert!(find_line_of_subdivided_wall(&Graph::cycle(6), 2, &lim).unwrap().is_some());
        assert!(find_line_of_subdivided_wall(&Graph::complete(5), 2, &lim).unwrap().is_none());
    }

    #[test]
    fn compositions_in_order() {
        let mut seen = Vec::new();
        compositions(3, 5, &mut |c| {
            seen.push(c.to_vec());
            Ok(true)
        })
        .unwrap();
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 1, 3]);
        assert_eq!(seen[5], vec![3, 1, 1]);
    }

    #[test]
    fn one_subdivided_member_is_found() {
        let w = wall(3, 3).unwrap();
        let mut map = BTreeMap::new();
        map.insert(w.edges()[4], 2);
        let host = line_graph(&subdivide(&w, &map).unwrap());
        let m = find_line_of_subdivided_wall(&host, 3, &Limits::default()).unwrap().unwrap();
        assert_eq!(m.roles["lengths"].iter().sum::<usize>(), 16);
    }
}
