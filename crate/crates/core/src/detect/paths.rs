//! Induced path enumeration on bitmask graphs.

use crate::error::Result;
use crate::graph::{bit, mask_iter, Mask, Vertex};
use crate::limits::Budget;

/// Every induced path from `a` to `b` with at least `min_len` edges whose
/// vertices avoid `forbid`, as vertex sequences starting at `a`.
pub(crate) fn induced_paths(
    nbr: &[Mask],
    a: Vertex,
    b: Vertex,
    min_len: usize,
    forbid: Mask,
    budget: &Budget,
) -> Result<Vec<Vec<Vertex>>> {
    let mut out = Vec::new();
    if a == b || forbid & (bit(a) | bit(b)) != 0 {
        return Ok(out);
    }
    let mut path = vec![a];
    // `blocked`: closed neighbourhood of the path minus its last vertex.
    fn rec(
        nbr: &[Mask],
        b: Vertex,
        min_len: usize,
        forbid: Mask,
        path: &mut Vec<Vertex>,
        blocked: Mask,
        budget: &Budget,
        out: &mut Vec<Vec<Vertex>>,
    ) -> Result<()> {
        budget.tick()?;
        let x = *path.last().unwrap();
        let on_path = path.iter().fold(0, |m, &v| m | bit(v));
        let cand = nbr[x] & !blocked & !on_path & !forbid;
        if nbr[x] & bit(b) != 0 {
            if cand & bit(b) != 0 && path.len() >= min_len {
                let mut p = path.clone();
                p.push(b);
                out.push(p);
            }
            return Ok(());
        }
        let next_blocked = blocked | nbr[x] | bit(x);
        for y in mask_iter(cand) {
            path.push(y);
            rec(nbr, b, min_len, forbid, path, next_blocked, budget, out)?;
            path.pop();
        }
        Ok(())
    }
    rec(nbr, b, min_len, forbid, &mut path, 0, budget, &mut out)?;
    Ok(out)
}

/// Every induced path with exactly `len` edges starting at `a`, avoiding
/// `forbid`.
pub(crate) fn induced_paths_from(
    nbr: &[Mask],
    a: Vertex,
    len: usize,
    forbid: Mask,
    budget: &Budget,
    out: &mut Vec<Vec<Vertex>>,
) -> Result<()> {
    if forbid & bit(a) != 0 {
        return Ok(());
    }
    fn rec(
        nbr: &[Mask],
        len: usize,
        forbid: Mask,
        path: &mut Vec<Vertex>,
        blocked: Mask,
        budget: &Budget,
        out: &mut Vec<Vec<Vertex>>,
    ) -> Result<()> {
        budget.tick()?;
        if path.len() == len + 1 {
            out.push(path.clone());
            return Ok(());
        }
        let x = *path.last().unwrap();
        let on_path = path.iter().fold(0, |m, &v| m | bit(v));
        let cand = nbr[x] & !blocked & !on_path & !forbid;
        let next_blocked = blocked | nbr[x] | bit(x);
        for y in mask_iter(cand) {
            path.push(y);
            rec(nbr, len, forbid, path, next_blocked, budget, out)?;
            path.pop();
        }
        Ok(())
    }
    rec(nbr, len, forbid, &mut vec![a], 0, budget, out)
}
