//! Post-hoc checks of the conditional statements about central bags.
//!
//! Each check first confirms its hypotheses on the instance (exhaustive
//! separator search included) and only then asserts the conclusion.
//! Size hypotheses are taken in their instance form: a center `X` counts
//! only when `|N[X]| ≤ d`, which is what the degree bound is used for.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::centralbag::bag::{generator_a_loosely_laminar, CentralBagResult};
use crate::centralbag::clique::{clique_bag_report, CliqueBagReport};
use crate::centralbag::separation::relation;
use crate::centralbag::sequence::{gamma, is_strongly_laminar, SeparationSequence};
use crate::detect::{breaks, enumerate_induced_copies, find_induced, verify_forcer};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;
use crate::separators::min_balanced_separator;
use crate::weights::{Balance, WeightFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisUnmet,
    /// A search hit its step budget or a size cap.
    Budget,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisUnmet => "hypothesis-unmet",
            Verdict::Budget => "budget",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Assertion {
    pub fn new(name: &str, verdict: Verdict, detail: impl Into<String>) -> Assertion {
        Assertion { name: name.to_string(), verdict, detail: detail.into() }
    }
}

/// Exhaustive answer to "does `g` have a `(w, c)`-balanced separator of
/// size at most `d`?"
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorHypothesis {
    pub d: usize,
    pub smallest: VertexSet,
    pub holds: bool,
}

pub fn no_small_separator(g: &Graph, w: &WeightFunction, c: &Balance, d: usize, limits: &Limits) -> Result<SeparatorHypothesis> {
    let cert = min_balanced_separator(g, w, c, limits)?;
    let holds = g.is_connected() && w.is_normal() && cert.separator.len() > d;
    Ok(SeparatorHypothesis { d, holds, smallest: cert.separator })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferReport {
    pub hypothesis: SeparatorHypothesis,
    /// `floor(d / γ(t)^k)`.
    pub bag_bound: usize,
    pub assertions: Vec<Assertion>,
}

impl TransferReport {
    pub fn failures(&self) -> usize {
        self.assertions.iter().filter(|a| a.verdict == Verdict::Fail).count()
    }
}

/// Size of the smallest balanced separator of the bag under its own
/// weights; `None` when those weights are not normal.
fn bag_min_separator(g: &Graph, result: &CentralBagResult, c: &Balance, limits: &Limits) -> Result<Option<usize>> {
    let (h, _, wb) = result.bag_graph(g);
    if !wb.is_normal() {
        return Ok(None);
    }
    Ok(Some(min_balanced_separator(&h, &wb, c, limits)?.separator.len()))
}

fn small_center(g: &Graph, seq: &SeparationSequence, i: usize, d: usize) -> bool {
    seq.separations[i]
        .center
        .as_ref()
        .is_some_and(|x| g.closed_neighborhood(x).len() <= d && g.is_connected_set(&seq.separations[i].c))
}

/// Runs the four bag-transfer checks against one central bag.
#[allow(clippy::too_many_arguments)]
pub fn check_bag_separator_transfer(
    g: &Graph,
    w: &WeightFunction,
    c: &Balance,
    d: usize,
    seq: &SeparationSequence,
    result: &CentralBagResult,
    t: usize,
    limits: &Limits,
) -> Result<TransferReport> {
    let hyp = no_small_separator(g, w, c, d, limits)?;
    let seps = &seq.separations;
    let k = result.stages.len();
    let bound = BigUint::from(d) / gamma(g.max_degree(), t).pow(k as u32);
    let bag_bound = bound.to_usize().unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let unmet = |name: &str, why: &str| Assertion::new(name, Verdict::HypothesisUnmet, why);
    if !hyp.holds {
        let why = format!("balanced separator {:?} of size {} ≤ d={d}", hyp.smallest.as_slice(), hyp.smallest.len());
        for name in ["heavy-side", "strongly-laminar-is-laminar", "primordial-is-a-laminar", "bag-separator"] {
            out.push(unmet(name, &why));
        }
        return Ok(TransferReport { hypothesis: hyp, bag_bound, assertions: out });
    }

    // heavy B side for every small canonical separation
    let small: Vec<usize> = (0..seps.len()).filter(|&i| small_center(g, seq, i, d)).collect();
    if small.is_empty() {
        out.push(unmet("heavy-side", "no center with |N[X]| ≤ d"));
    } else {
        let bad: Vec<usize> = small.iter().copied().filter(|&i| w.of(&seps[i].b) <= *c.value()).collect();
        out.push(Assertion::new(
            "heavy-side",
            Verdict::from_bool(bad.is_empty()),
            format!("{} separations checked, light B at {:?}", small.len(), bad),
        ));
    }

    // pairs inside one colour class
    let mut pairs = 0;
    let mut bad = Vec::new();
    let mut strongly = true;
    for stage in &result.stages {
        strongly &= is_strongly_laminar(seps, &stage.class);
        let members: Vec<usize> = stage.class.iter().copied().filter(|&i| small_center(g, seq, i, d)).collect();
        for (p, &i) in members.iter().enumerate() {
            for &j in &members[p + 1..] {
                pairs += 1;
                if !relation(&seps[i], &seps[j]).non_crossing {
                    bad.push((i, j));
                }
            }
        }
    }
    out.push(if !strongly {
        Assertion::new("strongly-laminar-is-laminar", Verdict::Fail, "a class has overlapping cutsets")
    } else if pairs == 0 {
        unmet("strongly-laminar-is-laminar", "no pair of small centers in one class")
    } else {
        Assertion::new("strongly-laminar-is-laminar", Verdict::from_bool(bad.is_empty()), format!("{pairs} pairs, crossing {bad:?}"))
    });

    // non-crossing pairs among kept members are A-non-crossing
    let mut pairs = 0;
    let mut bad = Vec::new();
    for stage in &result.stages {
        let members: Vec<usize> = stage.kept.iter().copied().filter(|&i| small_center(g, seq, i, d)).collect();
        for (p, &i) in members.iter().enumerate() {
            for &j in &members[p + 1..] {
                let r = relation(&seps[i], &seps[j]);
                if r.non_crossing {
                    pairs += 1;
                    if !r.a_non_crossing {
                        bad.push((i, j));
                    }
                }
            }
        }
    }
    out.push(if pairs == 0 {
        unmet("primordial-is-a-laminar", "no non-crossing pair of small kept centers")
    } else {
        Assertion::new("primordial-is-a-laminar", Verdict::from_bool(bad.is_empty()), format!("{pairs} pairs, not A-non-crossing {bad:?}"))
    });

    // the bag inherits the separator lower bound
    // skewed members stand in for the degree bound used to get them
    let one_minus_c = crate::weights::q(1, 1) - c.value();
    let kept_small = result
        .generator_members()
        .all(|i| w.of(&seps[i].a) < one_minus_c && g.is_connected_set(&seps[i].c) && g.set_diameter(&seps[i].c).is_some_and(|x| x <= t));
    let stage_laminar = generator_a_loosely_laminar(seps, result);
    out.push(if !kept_small {
        unmet("bag-separator", "a generator member is not skewed or has a wide cutset")
    } else if !stage_laminar {
        unmet("bag-separator", "the generator is not A-loosely laminar")
    } else {
        match bag_min_separator(g, result, c, limits)? {
            None => Assertion::new("bag-separator", Verdict::Fail, "bag weights do not sum to 1"),
            Some(size) => Assertion::new(
                "bag-separator",
                Verdict::from_bool(size > bag_bound),
                format!("smallest balanced separator of the bag has size {size}, bound {bag_bound}"),
            ),
        }
    });
    Ok(TransferReport { hypothesis: hyp, bag_bound, assertions: out })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcerReport {
    pub verdict: Verdict,
    /// Copies of the forcer in `g`.
    pub copies: usize,
    /// A copy left inside the bag.
    pub offending: Option<VertexSet>,
    /// Sub-copy of the pattern in the offending copy with an `A` side
    /// meeting it.
    pub witness: Option<VertexSet>,
    pub detail: String,
}

/// Every forcer copy must contain a breaking sub-copy whose canonical
/// separation exists, otherwise the covering never sees it.
fn forcer_premise(g: &Graph, forcer: &Graph, pattern: &Graph, limits: &Limits) -> Result<std::result::Result<usize, String>> {
    let verdict = verify_forcer(g, forcer, pattern, limits)?;
    if !verdict.holds {
        return Ok(Err(format!("copy {:?} has no breaking sub-copy", verdict.counterexample.unwrap_or_default().as_slice())));
    }
    for y in enumerate_induced_copies(g, forcer, limits)? {
        let (sub, map) = g.induced(&y);
        let mut ok = false;
        for xs in enumerate_induced_copies(&sub, pattern, limits)? {
            let x: VertexSet = xs.iter().map(|v| map[v]).collect();
            if x.len() < y.len() && g.closed_neighborhood(&x).len() < g.n() && breaks(g, &x, &y.difference(&x))? {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(Err(format!("copy {:?} is broken only by sub-copies dominating the graph", y.as_slice())));
        }
    }
    Ok(Ok(verdict.copies))
}

pub fn forcer_elimination_check(
    g: &Graph,
    w: &WeightFunction,
    pattern: &Graph,
    forcer: &Graph,
    result: &CentralBagResult,
    limits: &Limits,
) -> Result<ForcerReport> {
    let copies = match forcer_premise(g, forcer, pattern, limits)? {
        Ok(n) => n,
        Err(why) => {
            return Ok(ForcerReport { verdict: Verdict::HypothesisUnmet, copies: 0, offending: None, witness: None, detail: why })
        }
    };
    let (h, map, _) = result.bag_graph(g);
    let Some(found) = find_induced(&h, forcer, limits)? else {
        return Ok(ForcerReport {
            verdict: Verdict::Pass,
            copies,
            offending: None,
            witness: None,
            detail: format!("bag of {} vertices is free of the forcer", result.bag.len()),
        });
    };
    let y: VertexSet = found.iter().map(|&v| map[v]).collect();
    let mut witness = None;
    let (sub, smap) = g.induced(&y);
    for xs in enumerate_induced_copies(&sub, pattern, limits)? {
        let x: VertexSet = xs.iter().map(|v| smap[v]).collect();
        if let Ok(s) = crate::centralbag::separation::canonical_separation(g, w, &x) {
            if !s.a.is_disjoint(&y) {
                witness = Some(x);
                break;
            }
        }
    }
    Ok(ForcerReport {
        verdict: Verdict::Fail,
        copies,
        offending: Some(y),
        witness,
        detail: "forcer copy survives in the bag".into(),
    })
}

/// The clique-bag statements. Laminarity of the covering is asserted when
/// `d > Δ` and no small separator exists; the bag's separator bound
/// `floor(d / (1 + Δ))` and the absence of clique cutsets are asserted
/// whenever the covering is itself `A`-loosely laminar (plus skewed
/// members and no small separator for the bound).
pub fn check_clique_bag(
    g: &Graph,
    w: &WeightFunction,
    c: &Balance,
    d: usize,
    seq: &SeparationSequence,
    result: &CentralBagResult,
    limits: &Limits,
) -> Result<(CliqueBagReport, Vec<Assertion>)> {
    let report = clique_bag_report(g, seq, result, limits)?;
    let hyp = no_small_separator(g, w, c, d, limits)?;
    let delta = g.max_degree();
    let mut out = Vec::new();
    let sep_why = format!("balanced separator of size {} ≤ d={d}", hyp.smallest.len());

    out.push(if !hyp.holds {
        Assertion::new("clique-covering-a-loosely-laminar", Verdict::HypothesisUnmet, sep_why.clone())
    } else if d <= delta {
        Assertion::new("clique-covering-a-loosely-laminar", Verdict::HypothesisUnmet, format!("d={d} ≤ Δ={delta}"))
    } else {
        Assertion::new("clique-covering-a-loosely-laminar", Verdict::from_bool(report.a_loosely_laminar), format!("{} separations", seq.len()))
    });

    let one_minus_c = crate::weights::q(1, 1) - c.value();
    let skewed = seq.separations.iter().all(|s| w.of(&s.a) < one_minus_c);
    out.push(if !hyp.holds {
        Assertion::new("clique-bag-separator", Verdict::HypothesisUnmet, sep_why)
    } else if !report.a_loosely_laminar || !skewed {
        Assertion::new("clique-bag-separator", Verdict::HypothesisUnmet, "covering not A-loosely laminar or not skewed")
    } else {
        let bound = d / (1 + delta);
        let smallest = bag_min_separator(g, result, c, limits)?;
        Assertion::new(
            "clique-bag-separator",
            Verdict::from_bool(smallest.is_some_and(|s| s > bound)),
            format!("smallest balanced separator {smallest:?} vs bound {bound}"),
        )
    });

    out.push(if !report.a_loosely_laminar {
        Assertion::new("clique-bag-no-cutset", Verdict::HypothesisUnmet, "covering not A-loosely laminar")
    } else {
        Assertion::new(
            "clique-bag-no-cutset",
            Verdict::from_bool(!report.bag_has_clique_cutset && report.attachments_are_cliques),
            format!("bag of {} vertices", result.bag.len()),
        )
    });
    Ok((report, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralbag::bag::central_bag;
    use crate::centralbag::clique::clique_central_bag;
    use crate::centralbag::sequence::{covering_sequence, dimension_partition};

    fn run(g: &Graph, w: &WeightFunction, d: usize) -> TransferReport {
        let limits = Limits::default();
        let seq = covering_sequence(g, w, &Graph::complete(1), &limits).unwrap();
        let r = central_bag(g, w, &seq, &dimension_partition(&seq)).unwrap();
        let t = seq.goodness.unwrap().t;
        check_bag_separator_transfer(g, w, &Balance::half(), d, &seq, &r, t, &limits).unwrap()
    }

    fn verdict(rep: &TransferReport, name: &str) -> Verdict {
        rep.assertions.iter().find(|a| a.name == name).unwrap().verdict
    }

    /// `K5` on 4..8 with two leaves on 4 and two on 5; weight on the clique.
    fn leafy_clique() -> (Graph, WeightFunction) {
        let mut edges = vec![(0, 4), (1, 4), (2, 5), (3, 5)];
        for i in 4..9 {
            for j in i + 1..9 {
                edges.push((i, j));
            }
        }
        let w = WeightFunction::from_integers(&[0, 0, 0, 0, 1, 1, 1, 1, 1]).unwrap();
        (Graph::new(9, edges).unwrap(), w)
    }

    #[test]
    fn unmet_when_a_small_separator_exists() {
        let g = Graph::path(5);
        let rep = run(&g, &WeightFunction::uniform(5).unwrap(), 1);
        assert!(!rep.hypothesis.holds);
        assert!(rep.assertions.iter().all(|a| a.verdict == Verdict::HypothesisUnmet));
    }

    #[test]
    fn k33_has_no_small_centers() {
        let g = Graph::complete_bipartite(3, 3);
        let rep = run(&g, &WeightFunction::uniform(6).unwrap(), 2);
        // removing one side is the smallest balanced separator
        assert!(rep.hypothesis.holds);
        assert_eq!(rep.hypothesis.smallest.len(), 3);
        // every closed neighbourhood has 4 > d vertices
        assert_eq!(verdict(&rep, "heavy-side"), Verdict::HypothesisUnmet);
        assert_eq!(rep.failures(), 0);
    }

    #[test]
    fn leafy_clique_meets_the_pair_hypotheses() {
        let (g, w) = leafy_clique();
        let rep = run(&g, &w, 2);
        assert!(rep.hypothesis.holds);
        assert_eq!(verdict(&rep, "heavy-side"), Verdict::Pass);
        assert_eq!(verdict(&rep, "strongly-laminar-is-laminar"), Verdict::Pass);
        assert_eq!(verdict(&rep, "primordial-is-a-laminar"), Verdict::Pass);
        assert_eq!(rep.failures(), 0);
    }

    #[test]
    fn petersen_bag_keeps_the_bound() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = Graph::new(10, edges).unwrap();
        let rep = run(&g, &WeightFunction::uniform(10).unwrap(), 3);
        assert!(rep.hypothesis.holds);
        assert_eq!(verdict(&rep, "bag-separator"), Verdict::Pass);
        assert_eq!(rep.failures(), 0);
    }

    #[test]
    fn clique_checks() {
        let limits = Limits::default();
        let g = Graph::path(3);
        let w = WeightFunction::uniform(3).unwrap();
        let (seq, r) = clique_central_bag(&g, &w, &limits).unwrap();
        let (rep, out) = check_clique_bag(&g, &w, &Balance::half(), 1, &seq, &r, &limits).unwrap();
        assert!(!rep.bag_has_clique_cutset);
        assert_eq!(out[0].verdict, Verdict::HypothesisUnmet);
        assert_eq!(out[2].verdict, Verdict::Pass);
    }

    #[test]
    fn forcer_without_copies_is_vacuous() {
        let limits = Limits::default();
        let g = Graph::cycle(8);
        let w = WeightFunction::uniform(8).unwrap();
        let pattern = Graph::complete(1);
        let seq = covering_sequence(&g, &w, &pattern, &limits).unwrap();
        let r = central_bag(&g, &w, &seq, &dimension_partition(&seq)).unwrap();
        let rep = forcer_elimination_check(&g, &w, &pattern, &Graph::complete(3), &r, &limits).unwrap();
        assert_eq!((rep.verdict, rep.copies), (Verdict::Pass, 0));
    }
}
