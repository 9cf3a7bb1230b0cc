//! Certificates: every assertion a run made, with the data needed to
//! re-derive its status without the run that produced it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::centralbag::{
    bag_invariants, central_bag, covering_sequence, generator_a_loosely_laminar, validate_audit, CentralBagResult,
    SeparationSequence, Verdict,
};
use crate::circular::FuzzyLciSpec;
use crate::decompose::assembly::{default_strip_assembly, AssemblyReport};
use crate::decompose::td::{validate_td, TreeDecomposition};
use crate::detect::{breaks, enumerate_induced_copies, is_copy};
use crate::error::{Error, Result};
use crate::graph::{clique_number, Graph, VertexSet};
use crate::io::GraphDoc;
use crate::limits::{Budget, Limits};
use crate::oracle::{detect, detect_brute, Family};
use crate::separators::{is_balanced_separator, separation_number};
use crate::strip::StripStructure;
use crate::treewidth::{exact_treewidth, treewidth_at_most};
use crate::weights::{Balance, WeightFunction, Q};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputHash {
    pub name: String,
    pub sha256: String,
}

impl InputHash {
    pub fn of(name: impl Into<String>, bytes: &[u8]) -> InputHash {
        InputHash { name: name.into(), sha256: sha256_hex(bytes) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorCase {
    pub weights: WeightFunction,
    pub separator: Option<VertexSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BagCheck {
    /// Cutsets inside the bag, bag connected, bag weights normal.
    Algebra,
    Audit,
}

/// Stored evidence, one shape per kind of claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Nothing to re-check: the entry records a budget stop or an unmet
    /// hypothesis.
    Note { reason: String },
    Facts { graph: GraphDoc, n: usize, max_degree: usize },
    Treewidth { graph: GraphDoc, width: usize, decomposition: TreeDecomposition, expected: usize },
    SameTreewidth {
        graph: GraphDoc,
        subdivided: GraphDoc,
        width: usize,
        decomposition: TreeDecomposition,
        subdivided_decomposition: TreeDecomposition,
    },
    HarveyWood {
        graph: GraphDoc,
        c: Balance,
        tw: usize,
        decomposition: TreeDecomposition,
        sep: usize,
        hardest: VertexSet,
        separator: VertexSet,
    },
    Separators { graph: GraphDoc, c: Balance, tw: usize, decomposition: TreeDecomposition, cases: Vec<SeparatorCase> },
    CentralBag {
        graph: GraphDoc,
        weights: WeightFunction,
        pattern: GraphDoc,
        check: BagCheck,
        sequence: SeparationSequence,
        result: CentralBagResult,
    },
    /// Re-derived by running the named check again on the stored instance.
    Conditional { graph: GraphDoc, weights: WeightFunction, pattern: GraphDoc, c: Balance, d: usize, assertion: String },
    Pipeline {
        graph: GraphDoc,
        weights: WeightFunction,
        pattern: GraphDoc,
        forcers: Vec<GraphDoc>,
        c: Balance,
        d: usize,
        assertion: String,
    },
    Forcer {
        graph: GraphDoc,
        forcer: GraphDoc,
        pattern: GraphDoc,
        /// Families the graph was filtered against.
        free_of: Vec<Family>,
        /// `(Y, X')` for every copy `Y` of the forcer.
        pairs: Vec<(VertexSet, VertexSet)>,
        counterexample: Option<VertexSet>,
    },
    Chordal { graph: GraphDoc, decomposition: TreeDecomposition, omega: usize },
    Lci { spec: FuzzyLciSpec, decomposition: TreeDecomposition, delta: usize, tw: Option<usize> },
    Assembly { structure: StripStructure, decomposition: TreeDecomposition, report: AssemblyReport },
    /// Specialised detectors against the brute-force search on one graph.
    Detector { graph: GraphDoc, checks: Vec<DetectorCheck>, expected: Option<bool> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectorCheck {
    pub family: Family,
    /// Vertex set of the specialised detector's match.
    pub found: Option<VertexSet>,
    pub brute: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub claim: String,
    pub status: Verdict,
    pub witness: Witness,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub hypothesis_unmet: usize,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub command: Vec<String>,
    pub config: BTreeMap<String, String>,
    pub inputs: Vec<InputHash>,
    /// Corpus notes such as how many draws a filter rejected.
    pub notes: Vec<String>,
    pub records: Vec<Record>,
    pub summary: Summary,
    /// Full construction behind a single-instance run; not used by recheck.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<serde_json::Value>,
}

impl Certificate {
    pub fn new(
        command: Vec<String>,
        config: BTreeMap<String, String>,
        inputs: Vec<InputHash>,
        notes: Vec<String>,
        records: Vec<Record>,
    ) -> Certificate {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::HypothesisUnmet => summary.hypothesis_unmet += 1,
                Verdict::Budget => summary.budget += 1,
            }
        }
        Certificate { command, config, inputs, notes, records, summary, construction: None }
    }

    /// 0 when every entry passes, 1 on any failure, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.fail > 0 {
            1
        } else if s.hypothesis_unmet > 0 || s.budget > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Result of an independent pass over a certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecheckReport {
    pub checked: usize,
    /// Entries carrying no decision (budget, hypothesis unmet).
    pub skipped: usize,
    /// `(id, stored, re-derived)` for every disagreement.
    pub mismatches: Vec<(String, Verdict, Verdict)>,
    pub summary_ok: bool,
}

impl RecheckReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.summary_ok
    }
}

/// `td` is a valid decomposition of width exactly `width` and no
/// decomposition of width `width - 1` exists.
fn exact_width(g: &Graph, td: &TreeDecomposition, width: usize, limits: &Limits) -> Result<bool> {
    if validate_td(g, td) != Ok(width) {
        return Ok(false);
    }
    Ok(width == 0 || treewidth_at_most(g, width - 1, &Budget::new(limits.max_steps))?.is_none())
}

fn forcer_ok(
    g: &Graph,
    forcer: &Graph,
    pattern: &Graph,
    pairs: &[(VertexSet, VertexSet)],
    counterexample: &Option<VertexSet>,
    limits: &Limits,
) -> Result<bool> {
    let copies = enumerate_induced_copies(g, forcer, limits)?;
    if let Some(y) = counterexample {
        // The stored failure stands only if `y` is a copy that no sub-copy breaks.
        let (sub, map) = g.induced(y);
        for xs in enumerate_induced_copies(&sub, pattern, limits)? {
            let x: VertexSet = xs.iter().map(|v| map[v]).collect();
            if x.len() < y.len() && breaks(g, &x, &y.difference(&x))? {
                return Ok(true);
            }
        }
        return Ok(!copies.contains(y));
    }
    if copies.len() != pairs.len() || copies.iter().zip(pairs).any(|(c, (y, _))| c != y) {
        return Ok(false);
    }
    for (y, x) in pairs {
        if !x.is_subset(y) || x.len() >= y.len() || !is_copy(g, x, pattern, limits)? || !breaks(g, x, &y.difference(x))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-derive the status of one entry from its witness.
pub fn recheck_record(r: &Record, limits: &Limits) -> Result<Verdict> {
    let v = Verdict::from_bool;
    Ok(match &r.witness {
        Witness::Note { .. } => r.status,
        Witness::Facts { graph, n, max_degree } => {
            let g = graph.graph()?;
            v(g.n() == *n && g.max_degree() == *max_degree)
        }
        Witness::Treewidth { graph, width, decomposition, expected } => {
            v(*width == *expected && exact_width(&graph.graph()?, decomposition, *width, limits)?)
        }
        Witness::SameTreewidth { graph, subdivided, width, decomposition, subdivided_decomposition } => v(exact_width(
            &graph.graph()?,
            decomposition,
            *width,
            limits,
        )? && exact_width(&subdivided.graph()?, subdivided_decomposition, *width, limits)?),
        Witness::HarveyWood { graph, c, tw, decomposition, sep, hardest, separator } => {
            let g = graph.graph()?;
            let on_hardest = WeightFunction::uniform_on(g.n(), hardest)?;
            let data = exact_width(&g, decomposition, *tw, limits)?
                && separator.len() == *sep
                && (hardest.is_empty() || is_balanced_separator(&g, &on_hardest, c, separator)?)
                && separation_number(&g, c, limits)?.value == *sep;
            let lhs = Q::from_integer((*tw as i64 + 1).into()) * (Q::from_integer(1.into()) - c.value());
            v(data && lhs <= Q::from_integer((*sep as i64).into()))
        }
        Witness::Separators { graph, c, tw, decomposition, cases } => {
            let g = graph.graph()?;
            let mut ok = exact_width(&g, decomposition, *tw, limits)?;
            for case in cases {
                ok &= match &case.separator {
                    Some(s) => s.len() <= tw + 1 && is_balanced_separator(&g, &case.weights, c, s)?,
                    None => false,
                };
            }
            v(ok)
        }
        Witness::CentralBag { graph, weights, pattern, check, sequence, result } => {
            let g = graph.graph()?;
            let fresh = covering_sequence(&g, weights, &pattern.graph()?, limits)?;
            let partition = sequence.partition.clone().unwrap_or_default();
            let again = central_bag(&g, weights, sequence, &partition)?;
            let same = fresh.separations == sequence.separations
                && sequence.separations.iter().all(|s| s.axioms_hold(&g))
                && again == *result;
            match check {
                BagCheck::Audit => v(same && validate_audit(&sequence.separations, result)),
                BagCheck::Algebra => {
                    if !generator_a_loosely_laminar(&sequence.separations, result) {
                        Verdict::HypothesisUnmet
                    } else {
                        let inv = bag_invariants(&g, sequence, result);
                        v(same && inv.cutsets_inside && inv.connected && inv.normal)
                    }
                }
            }
        }
        Witness::Conditional { graph, weights, pattern, c, d, assertion } => {
            let all = crate::suites::conditional_assertions(&graph.graph()?, weights, &pattern.graph()?, c, *d, limits)?;
            all.iter().find(|a| &a.name == assertion).map(|a| a.verdict).unwrap_or(Verdict::Fail)
        }
        Witness::Pipeline { graph, weights, pattern, forcers, c, d, assertion } => {
            let fs: Vec<Graph> = forcers.iter().map(GraphDoc::graph).collect::<Result<_>>()?;
            let rep = crate::centralbag::run_master_pipeline(&graph.graph()?, weights, &pattern.graph()?, &fs, c, *d, limits)?;
            rep.assertions.iter().find(|a| &a.name == assertion).map(|a| a.verdict).unwrap_or(Verdict::Fail)
        }
        Witness::Forcer { graph, forcer, pattern, free_of, pairs, counterexample } => {
            let g = graph.graph()?;
            let mut free = true;
            for fam in free_of {
                free &= detect(&g, fam, limits)?.is_none();
            }
            if !free {
                Verdict::HypothesisUnmet
            } else {
                v(forcer_ok(&g, &forcer.graph()?, &pattern.graph()?, pairs, counterexample, limits)?)
            }
        }
        Witness::Chordal { graph, decomposition, omega } => {
            let g = graph.graph()?;
            let cliques = decomposition.bags.iter().all(|b| g.is_clique(b));
            v(cliques && clique_number(&g, limits)? == *omega && validate_td(&g, decomposition) == Ok(omega.saturating_sub(1)))
        }
        Witness::Lci { spec, decomposition, delta, tw } => {
            let g = spec.graph()?;
            let width = validate_td(&g, decomposition);
            let lower_ok = match tw {
                Some(t) => {
                    let r = exact_treewidth(&g, limits)?;
                    r.exact && r.width == *t && width.as_ref().is_ok_and(|w| w >= t)
                }
                None => true,
            };
            v(g.max_degree() == *delta && width.is_ok_and(|w| w <= 4 * delta + 3) && lower_ok)
        }
        Witness::Assembly { structure, decomposition, report } => {
            let host = structure.host()?;
            let (td, rep) = default_strip_assembly(structure, limits)?;
            let valid = validate_td(&host, decomposition) == Ok(report.width);
            v(valid && td == *decomposition && rep == *report && rep.pattern_bound_ok && rep.strip_bound_ok && rep.width <= rep.width_bound)
        }
        Witness::Detector { graph, checks, expected } => {
            let g = graph.graph()?;
            let mut ok = true;
            for ch in checks {
                let again = detect_brute(&g, &ch.family, limits)?;
                let image_ok = match &ch.found {
                    Some(img) => detect_brute(&g.induced(img).0, &ch.family, limits)?,
                    None => true,
                };
                ok &= again == ch.brute && ch.found.is_some() == ch.brute && image_ok;
                ok &= expected.map_or(true, |e| e == ch.brute);
            }
            v(ok)
        }
    })
}

/// Check every pass/fail entry and the summary counts.
pub fn recheck(cert: &Certificate, limits: &Limits) -> RecheckReport {
    let mut rep = RecheckReport::default();
    for r in &cert.records {
        if !matches!(r.status, Verdict::Pass | Verdict::Fail) {
            rep.skipped += 1;
            continue;
        }
        rep.checked += 1;
        let derived = match recheck_record(r, limits) {
            Ok(d) => d,
            Err(Error::BudgetExhausted(_)) | Err(Error::CapExceeded { .. }) => Verdict::Budget,
            Err(_) => Verdict::Fail,
        };
        if derived != r.status {
            rep.mismatches.push((r.id.clone(), r.status, derived));
        }
    }
    let again = Certificate::new(Vec::new(), BTreeMap::new(), Vec::new(), Vec::new(), cert.records.clone());
    rep.summary_ok = again.summary == cert.summary;
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::wall;

    fn tw_record(g: &Graph, expected: usize) -> Record {
        let r = exact_treewidth(g, &Limits::default()).unwrap();
        Record {
            id: "t".into(),
            claim: "treewidth".into(),
            status: Verdict::from_bool(r.width == expected),
            witness: Witness::Treewidth { graph: g.into(), width: r.width, decomposition: r.decomposition, expected },
        }
    }

    #[test]
    fn treewidth_entries_recheck() {
        let limits = Limits::default();
        let rec = tw_record(&wall(3, 3).unwrap(), 3);
        assert_eq!(recheck_record(&rec, &limits).unwrap(), Verdict::Pass);
        // A lower claimed width with a widened decomposition is caught.
        let mut bad = rec.clone();
        if let Witness::Treewidth { width, expected, .. } = &mut bad.witness {
            *width = 2;
            *expected = 2;
        }
        assert_eq!(recheck_record(&bad, &limits).unwrap(), Verdict::Fail);
        let cert = Certificate::new(vec!["x".into()], BTreeMap::new(), vec![], vec![], vec![rec, bad]);
        let report = recheck(&cert, &limits);
        assert_eq!(report.checked, 2);
        assert_eq!(report.mismatches.len(), 1);
        // stored statuses are both pass
        assert_eq!(cert.exit_code(), 0);
    }

    #[test]
    fn exit_codes_and_round_trip() {
        let note = |s: Verdict| Record { id: "n".into(), claim: "c".into(), status: s, witness: Witness::Note { reason: "r".into() } };
        let mk = |v: Vec<Record>| Certificate::new(vec![], BTreeMap::new(), vec![], vec![], v);
        assert_eq!(mk(vec![]).exit_code(), 0);
        assert_eq!(mk(vec![note(Verdict::Budget)]).exit_code(), 2);
        assert_eq!(mk(vec![note(Verdict::Pass), note(Verdict::HypothesisUnmet)]).exit_code(), 2);
        let c = mk(vec![note(Verdict::Fail)]);
        assert_eq!(c.exit_code(), 1);
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
