//! Pattern families shared by the suites, with two ways to look for each:
//! the specialised detector and a brute-force search that enumerates the
//! family's members and runs the generic induced-subgraph engine on each.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::detect::{
    find_creature, find_induced, find_line_of_subdivided_wall, find_subdivided_claw, find_t_pyramid, find_t_theta,
};
use crate::error::Result;
use crate::generators::{pyramid, subdivided_claw, theta, wall};
use crate::graph::{bit, line_graph, mask_iter, subdivide, Graph, Mask, VertexSet};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Claw { t1: usize, t2: usize, t3: usize },
    Theta { t: usize },
    Pyramid { t: usize },
    Creature { k: usize, t: usize },
    WallLine { k: usize },
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Claw { t1, t2, t3 } => format!("S_{{{t1},{t2},{t3}}}"),
            Family::Theta { t } => format!("{t}-theta"),
            Family::Pyramid { t } => format!("{t}-pyramid"),
            Family::Creature { k, t } => format!("({k},{t})-creature"),
            Family::WallLine { k } => format!("line graph of a subdivided {k}x{k} wall"),
        }
    }
}

/// Specialised detector; the vertex set of the first match.
pub fn detect(g: &Graph, fam: &Family, limits: &Limits) -> Result<Option<VertexSet>> {
    Ok(match *fam {
        Family::Claw { t1, t2, t3 } => find_subdivided_claw(g, t1, t2, t3, limits)?.map(|m| m.image),
        Family::Theta { t } => find_t_theta(g, t, limits)?.map(|m| m.image),
        Family::Pyramid { t } => find_t_pyramid(g, t, limits)?.map(|m| m.image),
        Family::WallLine { k } => find_line_of_subdivided_wall(g, k, limits)?.map(|m| m.image),
        Family::Creature { k, t } => find_creature(g, k, t, limits)?
            .map(|m| m.paths.iter().fold(m.body.clone(), |acc, p| acc.union(&p.vertex_set()))),
    })
}

fn any_induced(g: &Graph, members: impl IntoIterator<Item = Graph>, limits: &Limits) -> Result<bool> {
    for p in members {
        if p.n() <= g.n() && find_induced(g, &p, limits)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Sorted length triples `lo <= l1 <= l2 <= l3` whose member fits in `n`
/// vertices, given that a member has `fixed + l1 + l2 + l3 - 3` vertices.
fn triples(lo: usize, fixed: usize, n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    let fits = |s: usize| fixed + s <= n + 3;
    let mut l1 = lo;
    while fits(3 * l1) {
        let mut l2 = l1;
        while fits(l1 + 2 * l2) {
            let mut l3 = l2;
            while fits(l1 + l2 + l3) {
                out.push([l1, l2, l3]);
                l3 += 1;
            }
            l2 += 1;
        }
        l1 += 1;
    }
    out
}

/// Every way to give `m` edges positive lengths summing to at most `cap`.
fn length_vectors(m: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let rest = m - cur.len() - 1;
        for l in 1..=left.saturating_sub(rest) {
            cur.push(l);
            rec(m, left - l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= cap {
        rec(m, cap, &mut Vec::new(), &mut out);
    }
    out
}

/// Brute-force presence test.
pub fn detect_brute(g: &Graph, fam: &Family, limits: &Limits) -> Result<bool> {
    let n = g.n();
    match *fam {
        Family::Claw { t1, t2, t3 } => Ok(find_induced(g, &subdivided_claw(t1, t2, t3)?.0, limits)?.is_some()),
        Family::Theta { t } => {
            let members = triples(t.max(2), 2, n).into_iter().map(|[a, b, c]| theta(a, b, c).map(|x| x.0));
            any_induced(g, members.collect::<Result<Vec<_>>>()?, limits)
        }
        Family::Pyramid { t } => {
            let members = triples(t.max(1), 4, n)
                .into_iter()
                .filter(|ls| ls.iter().filter(|&&l| l >= 2).count() >= 2)
                .map(|[a, b, c]| pyramid(a, b, c).map(|x| x.0));
            any_induced(g, members.collect::<Result<Vec<_>>>()?, limits)
        }
        Family::WallLine { k } => {
            let w = wall(k, k)?;
            let edges = w.edges();
            let mut members = Vec::new();
            for lens in length_vectors(edges.len(), n) {
                let map: BTreeMap<(usize, usize), usize> = edges.iter().copied().zip(lens).collect();
                members.push(line_graph(&subdivide(&w, &map)?));
            }
            any_induced(g, members, limits)
        }
        Family::Creature { k, t } => Ok(creature_brute(g, k, t, limits)?),
    }
}

/// Direct search over every connected body and every choice of `k`
/// paths hanging from it, joints in increasing order.
fn creature_brute(g: &Graph, k: usize, t: usize, limits: &Limits) -> Result<bool> {
    limits.check("brute-force creature search", g.n(), 16)?;
    let nbr = g.masks()?;
    let n = g.n();
    let closed = |m: Mask| mask_iter(m).fold(m, |acc, v| acc | nbr[v]);
    let connected = |m: Mask| -> bool {
        let Some(s) = mask_iter(m).next() else { return false };
        let mut seen = bit(s);
        loop {
            let next = closed(seen) & m;
            if next == seen {
                return seen == m;
            }
            seen = next;
        }
    };

    // Extend `path` (ending at `last`) by `left` more vertices inside `room`,
    // keeping it induced; `f` gets the finished path mask.
    fn grow(nbr: &[Mask], path: Mask, last: usize, left: usize, room: Mask, f: &mut dyn FnMut(Mask) -> bool) -> bool {
        if left == 0 {
            return f(path);
        }
        let earlier = path & !bit(last);
        for v in mask_iter(nbr[last] & room & !path) {
            if nbr[v] & earlier == 0 && grow(nbr, path | bit(v), v, left - 1, room, f) {
                return true;
            }
        }
        false
    }

    fn place(
        nbr: &[Mask],
        joints: Mask,
        outer: Mask,
        from: usize,
        k: usize,
        t: usize,
        blocked: Mask,
    ) -> bool {
        if k == 0 {
            return true;
        }
        for j in mask_iter(joints & !blocked).filter(|&j| j >= from) {
            let room = outer & !blocked;
            let mut done = false;
            grow(nbr, bit(j), j, t, room, &mut |p| {
                let reach = mask_iter(p).fold(p, |acc, v| acc | nbr[v]);
                done = place(nbr, joints, outer, j + 1, k - 1, t, blocked | reach);
                done
            });
            if done {
                return true;
            }
        }
        false
    }

    let all: Mask = if n == 0 { 0 } else { Mask::MAX >> (128 - n) };
    for body in 1..=all {
        if body & !all != 0 || !connected(body) {
            continue;
        }
        let nb = closed(body);
        let joints = nb & !body;
        let outer = all & !nb;
        if place(&nbr, joints, outer, 0, k, t, 0) {
            return Ok(true);
        }
    }
    Ok(false)
}
