use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::centralbag::bag::{bag_invariants, generator_a_loosely_laminar, central_bag, BagInvariants, CentralBagResult};
use crate::centralbag::checks::{check_bag_separator_transfer, forcer_elimination_check, Assertion, ForcerReport, TransferReport, Verdict};
use crate::centralbag::sequence::{covering_sequence, dimension_bound, dimension_partition, gamma, SeparationSequence};
use crate::error::Result;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::treewidth::exact_treewidth;
use crate::weights::{Balance, WeightFunction};

/// Exponents above this are kept symbolic; the bound then dwarfs any
/// host graph and the comparison is decided without expanding it.
const MAX_EXPANDED_EXPONENT: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreewidthBound {
    /// Smallest integer exceeding the pattern size.
    pub t: usize,
    pub delta: usize,
    /// `tw(β) + 1`, or the upper bound plus one when not exact.
    pub n_param: usize,
    pub exponent: String,
    /// Decimal value, or `2*N*g^e` when the exponent is too large.
    pub bound: String,
    pub tw: usize,
    pub tw_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub n: usize,
    pub delta: usize,
    pub pattern_n: usize,
    pub c: Balance,
    pub d: usize,
    pub sequence: SeparationSequence,
    pub result: CentralBagResult,
    pub invariants: BagInvariants,
    pub transfer: TransferReport,
    pub forcers: Vec<ForcerReport>,
    pub bound: TreewidthBound,
    pub assertions: Vec<Assertion>,
}

impl PipelineReport {
    pub fn verdicts(&self) -> impl Iterator<Item = Verdict> + '_ {
        self.assertions.iter().map(|a| a.verdict)
    }

    pub fn any_fail(&self) -> bool {
        self.verdicts().any(|v| v == Verdict::Fail)
    }
}

fn treewidth_bound(g: &Graph, beta: &Graph, pattern_n: usize, limits: &Limits) -> Result<(TreewidthBound, bool)> {
    let delta = g.max_degree();
    let t = pattern_n + 1;
    let tw_g = exact_treewidth(g, limits)?;
    let tw_b = exact_treewidth(beta, limits)?;
    let n_param = tw_b.width + 1;
    let exponent = BigUint::from(delta).pow((t * t) as u32) * gamma(delta, 2 * t) + BigUint::one();
    let base = gamma(delta, t + 1);
    let (bound, holds) = match exponent.to_u64().filter(|&e| e <= MAX_EXPANDED_EXPONENT || base == BigUint::one()) {
        Some(e) => {
            let value = BigUint::from(2 * n_param) * base.pow(e as u32);
            let holds = BigUint::from(tw_g.width) <= value;
            (value.to_string(), holds)
        }
        // base >= 2 and e > 64, so the bound exceeds 2^64 > n >= tw
        None => (format!("2*{n_param}*{base}^{exponent}"), true),
    };
    let tb = TreewidthBound {
        t,
        delta,
        n_param,
        exponent: exponent.to_string(),
        bound,
        tw: tw_g.width,
        tw_exact: tw_g.exact && tw_b.exact,
    };
    Ok((tb, holds))
}

/// Covering sequence, dimension partition, central bag, every check on
/// the bag, and the symbolic treewidth bound, as one chained report.
#[allow(clippy::too_many_arguments)]
pub fn run_master_pipeline(
    g: &Graph,
    w: &WeightFunction,
    pattern: &Graph,
    forcers: &[Graph],
    c: &Balance,
    d: usize,
    limits: &Limits,
) -> Result<PipelineReport> {
    let delta = g.max_degree();
    let mut seq = covering_sequence(g, w, pattern, limits)?;
    let partition = dimension_partition(&seq);
    seq.partition = Some(partition.clone());
    let result = central_bag(g, w, &seq, &partition)?;
    let invariants = bag_invariants(g, &seq, &result);
    let mut out = Vec::new();

    let detail = if seq.is_empty() {
        format!("covering empty; {} degenerate copies skipped", seq.skipped.len())
    } else {
        format!("{} separations, {} degenerate copies skipped", seq.len(), seq.skipped.len())
    };
    out.push(Assertion::new("covering", Verdict::Pass, detail));

    let t = pattern.n() + 1;
    let good = seq.goodness;
    let a_cap = BigUint::from(delta).pow((t * t) as u32);
    let good_ok = good.is_some_and(|gd| gd.t <= t && BigUint::from(gd.a) <= a_cap);
    out.push(Assertion::new("goodness", Verdict::from_bool(good_ok), format!("measured {good:?}, t={t}")));
    if let Some(gd) = good {
        let bound = dimension_bound(delta, gd);
        out.push(Assertion::new(
            "dimension",
            Verdict::from_bool(BigUint::from(partition.len()) <= bound),
            format!("{} classes, bound {bound}", partition.len()),
        ));
    }
    let coarse = &a_cap * gamma(delta, 2 * t) + BigUint::one();
    out.push(Assertion::new(
        "dimension-coarse",
        Verdict::from_bool(BigUint::from(partition.len()) <= coarse),
        format!("{} classes, bound {coarse}", partition.len()),
    ));

    let seps = &seq.separations;
    let laminar_stages = generator_a_loosely_laminar(seps, &result);
    let algebra = invariants.cutsets_inside && invariants.connected && invariants.normal;
    out.push(if laminar_stages {
        Assertion::new("bag-algebra", Verdict::from_bool(algebra), format!("{invariants:?}"))
    } else {
        Assertion::new("bag-algebra", Verdict::HypothesisUnmet, format!("the generator is not A-loosely laminar; {invariants:?}"))
    });
    out.push(Assertion::new("bag-recompute", Verdict::from_bool(invariants.recomputed), format!("bag {:?}", result.bag.as_slice())));
    out.push(Assertion::new("audit", Verdict::from_bool(invariants.audit_valid), format!("{} entries", result.audit.len())));

    let t_meas = good.map(|gd| gd.t).unwrap_or(t);
    let transfer = check_bag_separator_transfer(g, w, c, d, &seq, &result, t_meas, limits)?;
    out.extend(transfer.assertions.iter().cloned());

    let mut forcer_reports = Vec::new();
    for (i, f) in forcers.iter().enumerate() {
        let rep = forcer_elimination_check(g, w, pattern, f, &result, limits)?;
        out.push(Assertion::new(&format!("forcer-{i}"), rep.verdict, rep.detail.clone()));
        forcer_reports.push(rep);
    }

    let (beta, _, _) = result.bag_graph(g);
    let (bound, holds) = treewidth_bound(g, &beta, pattern.n(), limits)?;
    out.push(Assertion::new(
        "treewidth-bound",
        if bound.tw_exact { Verdict::from_bool(holds) } else { Verdict::HypothesisUnmet },
        format!("tw {} vs {}", bound.tw, bound.bound),
    ));

    Ok(PipelineReport {
        n: g.n(),
        delta,
        pattern_n: pattern.n(),
        c: c.clone(),
        d,
        sequence: seq,
        result,
        invariants,
        transfer,
        forcers: forcer_reports,
        bound,
        assertions: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{subdivided_claw, wall};

    #[test]
    fn empty_covering_keeps_the_graph() {
        let g = Graph::path(6);
        let w = WeightFunction::uniform(6).unwrap();
        let rep = run_master_pipeline(&g, &w, &Graph::cycle(3), &[], &Balance::half(), 1, &Limits::default()).unwrap();
        assert_eq!(rep.result.bag, g.vertices());
        assert!(rep.assertions[0].detail.starts_with("covering empty"));
        assert!(!rep.any_fail());
    }

    #[test]
    fn wall_with_short_path_pattern() {
        let g = wall(3, 3).unwrap();
        let w = WeightFunction::uniform(g.n()).unwrap();
        let (p3, _) = subdivided_claw(0, 1, 1).unwrap();
        let (claw, _) = subdivided_claw(1, 1, 1).unwrap();
        let forcer = claw.disjoint_union(&Graph::complete(1));
        let rep = run_master_pipeline(&g, &w, &p3, &[forcer], &Balance::half(), 2, &Limits::default()).unwrap();
        assert!(!rep.any_fail(), "{:#?}", rep.assertions);
        assert!(rep.invariants.recomputed && rep.invariants.audit_valid);
        let dim = rep.assertions.iter().find(|a| a.name == "dimension-coarse").unwrap();
        assert_eq!(dim.verdict, Verdict::Pass);
        assert_eq!(rep.bound.tw, 3);
    }
}
