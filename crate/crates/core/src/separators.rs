//! Weighted balanced separators and the separation number.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{bit, mask_iter, Graph, Mask, VertexSet};
use crate::limits::Limits;
use crate::treewidth::exact_treewidth;
use crate::weights::{format_q, q_serde, Balance, WeightFunction, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentWeight {
    pub component: VertexSet,
    #[serde(with = "q_serde")]
    pub weight: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorCertificate {
    pub separator: VertexSet,
    /// Components of `g − separator` in lexicographic order.
    pub components: Vec<ComponentWeight>,
    pub c: Balance,
    /// Size bound the certificate is claimed for.
    pub bound: usize,
}

impl SeparatorCertificate {
    /// Recompute the components and weights from scratch.
    pub fn recheck(&self, g: &Graph, w: &WeightFunction) -> Result<bool> {
        let fresh = certificate(g, w, &self.c, &self.separator, self.bound)?;
        Ok(fresh == *self && self.separator.len() <= self.bound && is_balanced_separator(g, w, &self.c, &self.separator)?)
    }
}

fn certificate(g: &Graph, w: &WeightFunction, c: &Balance, x: &VertexSet, bound: usize) -> Result<SeparatorCertificate> {
    let components = crate::graph::components_without(g, x)
        .into_iter()
        .map(|d| ComponentWeight { weight: w.of(&d), component: d })
        .collect();
    Ok(SeparatorCertificate { separator: x.clone(), components, c: c.clone(), bound })
}

/// Components of `g[alive]` as bitmasks, in order of their minimum vertex.
pub(crate) fn mask_components(nbr: &[Mask], alive: Mask) -> Vec<Mask> {
    let mut out = Vec::new();
    let mut left = alive;
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for u in mask_iter(frontier) {
                next |= nbr[u];
            }
            next &= alive & !comp;
            comp |= next;
            frontier = next;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

/// Integer form of a normal weight function: component `D` is light iff
/// `Σ num[v] <= cap` over `v ∈ D`.
struct Scaled {
    num: Vec<u128>,
    cap: u128,
}

impl Scaled {
    fn new(w: &WeightFunction, c: &Balance) -> Option<Scaled> {
        let mut den = BigInt::one();
        for x in w.values() {
            den = den.lcm(x.denom());
        }
        if den.bits() > 120 {
            return None;
        }
        let num = w
            .values()
            .iter()
            .map(|x| (x.numer() * (&den / x.denom())).to_u128())
            .collect::<Option<Vec<_>>>()?;
        let cv = c.value();
        let cap = (&den * cv.numer()).div_floor(cv.denom()).to_u128()?;
        Some(Scaled { num, cap })
    }

    fn light(&self, comp: Mask) -> bool {
        let mut s = 0u128;
        for v in mask_iter(comp) {
            s += self.num[v];
        }
        s <= self.cap
    }
}

fn balanced_mask(nbr: &[Mask], n: usize, w: &WeightFunction, scaled: &Option<Scaled>, c: &Q, x: Mask) -> bool {
    let all = full(n);
    mask_components(nbr, all & !x).into_iter().all(|d| match scaled {
        Some(s) => s.light(d),
        None => &w.of(&VertexSet::from_mask(d)) <= c,
    })
}

fn full(n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        Mask::MAX >> (128 - n)
    }
}

/// Does every component of `g − x` weigh at most `c`?
pub fn is_balanced_separator(g: &Graph, w: &WeightFunction, c: &Balance, x: &VertexSet) -> Result<bool> {
    w.require_fits(g)?;
    w.require_normal()?;
    g.check_set(x)?;
    Ok(crate::graph::components_without(g, x)
        .iter()
        .all(|d| &w.of(d) <= c.value()))
}

/// Lexicographic successor of a sorted `k`-subset of `0..n`.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Smallest `(w, c)`-balanced separator; the lexicographically first among
/// those of minimum size.
pub fn min_balanced_separator(g: &Graph, w: &WeightFunction, c: &Balance, limits: &Limits) -> Result<SeparatorCertificate> {
    w.require_fits(g)?;
    w.require_normal()?;
    let n = g.n();
    limits.check("balanced separator search", n, limits.max_separator_n)?;
    let nbr = g.masks()?;
    let scaled = Scaled::new(w, c);
    let budget = limits.budget();
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            budget.tick()?;
            let x = idx.iter().fold(0, |m, &v| m | bit(v));
            if balanced_mask(&nbr, n, w, &scaled, c.value(), x) {
                return certificate(g, w, c, &VertexSet::from_mask(x), k);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set is always balanced")
}

/// `(p, q)` with `c = p / q`, for exact integer comparisons.
fn ratio(c: &Balance) -> Result<(u64, u64)> {
    let v = c.value();
    match (v.numer().to_u64(), v.denom().to_u64()) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => invalid(format!("ratio {} is too large for the separation number", format_q(v))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationNumber {
    pub value: usize,
    /// A set `S` that needs `value` vertices.
    pub hardest: VertexSet,
    /// Smallest separator found for `hardest`.
    pub separator: VertexSet,
}

/// `sep*_c(g)`, by checking every `S` against every candidate `X`.
pub fn separation_number(g: &Graph, c: &Balance, limits: &Limits) -> Result<SeparationNumber> {
    let n = g.n();
    limits.check("separation number", n, limits.max_separation_number_n)?;
    let (p, q) = ratio(c)?;
    let nbr = g.masks()?;
    let all = full(n);
    let mut xs: Vec<Mask> = (0..=all).collect();
    xs.sort_by_key(|&x| (x.count_ones(), x));
    let comps: Vec<Vec<Mask>> = xs.iter().map(|&x| mask_components(&nbr, all & !x)).collect();
    let need = |s: Mask| -> (usize, Mask) {
        let size = s.count_ones() as u64;
        for (i, &x) in xs.iter().enumerate() {
            if comps[i].iter().all(|&d| (d & s).count_ones() as u64 * q <= p * size) {
                return (x.count_ones() as usize, x);
            }
        }
        unreachable!("X = V always works")
    };
    let best = (0..=all as u64)
        .into_par_iter()
        .map(|s| {
            let s = s as Mask;
            let (k, x) = need(s);
            (k, std::cmp::Reverse(s), x)
        })
        .max()
        .unwrap_or((0, std::cmp::Reverse(0), 0));
    Ok(SeparationNumber {
        value: best.0,
        hardest: VertexSet::from_mask((best.1).0),
        separator: VertexSet::from_mask(best.2),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCheck {
    /// A balanced separator of size at most `tw + 1`, when one was found.
    pub separator: Option<VertexSet>,
    /// Decomposition bag it was taken from.
    pub bag: Option<usize>,
    /// Minimum balanced separator size, by exhaustive search.
    pub minimum: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarveyWoodReport {
    pub n: usize,
    pub tw: usize,
    pub sep: SeparationNumber,
    pub c: Balance,
    /// Minimum balanced separator for the uniform weight on `V(g)`.
    pub uniform_separator: Option<VertexSet>,
    /// `tw + 1 <= sep / (1 − c)`.
    pub upper_bound_holds: bool,
    pub weights: Vec<WeightCheck>,
}

impl HarveyWoodReport {
    pub fn all_hold(&self) -> bool {
        self.upper_bound_holds && self.weights.iter().all(|w| w.ok)
    }
}

/// Check `tw + 1 <= sep*_c / (1 − c)`, and that each weight function in
/// `battery` has a balanced separator of size at most `tw + 1` among the
/// bags of an optimal decomposition.
pub fn harvey_wood_check(g: &Graph, c: &Balance, battery: &[WeightFunction], limits: &Limits) -> Result<HarveyWoodReport> {
    let tw_res = exact_treewidth(g, limits)?;
    if !tw_res.exact {
        return invalid("treewidth could not be computed exactly");
    }
    let tw = tw_res.width;
    let sep = separation_number(g, c, limits)?;
    let lhs = Q::from_integer(BigInt::from(tw + 1)) * (Q::one() - c.value());
    let upper_bound_holds = lhs <= Q::from_integer(BigInt::from(sep.value));
    let uniform_separator = if g.n() == 0 {
        None
    } else {
        Some(min_balanced_separator(g, &WeightFunction::uniform(g.n())?, c, limits)?.separator)
    };
    let mut weights = Vec::new();
    for w in battery {
        let minimum = min_balanced_separator(g, w, c, limits)?.separator.len();
        let mut found = None;
        for (i, b) in tw_res.decomposition.bags.iter().enumerate() {
            if is_balanced_separator(g, w, c, b)? {
                found = Some((i, b.clone()));
                break;
            }
        }
        let ok = minimum <= tw + 1 && found.as_ref().is_some_and(|(_, b)| b.len() <= tw + 1);
        weights.push(WeightCheck {
            bag: found.as_ref().map(|(i, _)| *i),
            separator: found.map(|(_, b)| b),
            minimum,
            ok,
        });
    }
    Ok(HarveyWoodReport { n: g.n(), tw, sep, c: c.clone(), uniform_separator, upper_bound_holds, weights })
}
