//! Subdivided claw search, root first, legs grown one vertex at a time.

use crate::detect::{host_masks, PatternMatch};
use crate::error::Result;
use crate::graph::{bit, mask_iter, Graph, Mask, Vertex};
use crate::limits::{Budget, Limits};

struct Ctx<'a> {
    nbr: &'a [Mask],
    lens: &'a [usize],
    budget: &'a Budget,
}

impl Ctx<'_> {
    /// Grow leg `leg` (of which `cur` holds the vertices after the root).
    fn grow(&self, root: Vertex, legs: &mut Vec<Vec<Vertex>>, used: Mask) -> Result<bool> {
        self.budget.tick()?;
        let leg = legs.len() - 1;
        if legs[leg].len() == self.lens[leg] {
            if leg + 1 == self.lens.len() {
                return Ok(true);
            }
            legs.push(Vec::new());
            if self.grow(root, legs, used)? {
                return Ok(true);
            }
            legs.pop();
            return Ok(false);
        }
        let prev = *legs[leg].last().unwrap_or(&root);
        let mut blocked = 0;
        for v in mask_iter(used & !bit(prev)) {
            blocked |= self.nbr[v] | bit(v);
        }
        let cand = self.nbr[prev] & !blocked & !used;
        for y in mask_iter(cand) {
            legs[leg].push(y);
            if self.grow(root, legs, used | bit(y))? {
                return Ok(true);
            }
            legs[leg].pop();
        }
        Ok(false)
    }
}

/// An induced `S_{t1,t2,t3}`: a root with three induced legs of the given
/// lengths, pairwise anticomplete apart from the root. Zero-length legs are
/// allowed.
pub fn find_subdivided_claw(g: &Graph, t1: usize, t2: usize, t3: usize, limits: &Limits) -> Result<Option<PatternMatch>> {
    let nbr = host_masks(g, limits)?;
    let budget = limits.budget();
    let lens = [t1, t2, t3];
    let ctx = Ctx { nbr: &nbr, lens: &lens, budget: &budget };
    let need_deg = lens.iter().filter(|&&l| l > 0).count();
    for root in 0..g.n() {
        if g.degree(root) < need_deg {
            continue;
        }
        let mut legs = vec![Vec::new()];
        if ctx.grow(root, &mut legs, bit(root))? {
            let mut m = PatternMatch::new("claw", lens.to_vec()).role("root", vec![root]);
            for (i, leg) in legs.into_iter().enumerate() {
                let mut full = vec![root];
                full.extend(leg);
                m = m.role(format!("leg{}", i + 1), full);
            }
            return Ok(Some(m));
        }
    }
    Ok(None)
}
