//! Named verification batteries over seeded corpora.
//!
//! Instances are evaluated on a rayon pool; records come back in instance
//! order, so a certificate depends only on the seed and the settings.

use rand::Rng;
use rayon::prelude::*;

use crate::centralbag::{
    bag_invariants, central_bag, check_bag_separator_transfer, check_clique_bag, covering_sequence,
    dimension_partition, generator_a_loosely_laminar, run_master_pipeline, Assertion, Verdict,
};
use crate::certificate::{BagCheck, Certificate, DetectorCheck, InputHash, Record, SeparatorCase, Witness};
use crate::config::RunConfig;
use crate::corpus::{
    bounded_degree_graph, catalog, chordal_corpus, claw_free_corpus, connected_catalog, lci_corpus, rng,
    seeded_sample, theta_pyramid_free_corpus, weight_battery, MAX_CATALOG_N,
};
use crate::decompose::assembly::default_strip_assembly;
use crate::decompose::chordal::chordal_td;
use crate::decompose::lci::fuzzy_lci_td;
use crate::decompose::td::validate_td;
use crate::detect::verify_forcer;
use crate::error::{invalid, Error, Result};
use crate::generators::{subdivided_claw, wall};
use crate::graph::{clique_number, subdivide_all, Graph};
use crate::io::{graph_to_json, GraphDoc};
use crate::limits::Limits;
use crate::oracle::{detect, detect_brute, Family};
use crate::separators::{is_balanced_separator, min_balanced_separator, separation_number};
use crate::strip::{line_graph_of, synthetic_lci_instances, trivial_single_edge};
use crate::treewidth::exact_treewidth;
use crate::weights::{Balance, WeightFunction, Q};

pub const SUITES: &[&str] = &[
    "wall",
    "anchors",
    "harvey-wood",
    "separators",
    "central-bag",
    "conditional",
    "pipeline",
    "forcer-claw",
    "forcer-theta-pyramid",
    "chordal",
    "lci-width",
    "strip-assembly",
    "detectors",
];

/// Records, input digests and corpus notes of one suite.
#[derive(Default)]
pub struct SuiteOutput {
    pub records: Vec<Record>,
    pub inputs: Vec<InputHash>,
    pub notes: Vec<String>,
}

impl SuiteOutput {
    fn extend(&mut self, other: SuiteOutput) {
        self.records.extend(other.records);
        self.inputs.extend(other.inputs);
        self.notes.extend(other.notes);
    }
}

/// Per-suite seed so suites run alone or inside `all` see the same corpus.
fn suite_seed(seed: u64, suite: &str) -> u64 {
    suite.bytes().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn corpus_hash<'a>(name: &str, graphs: impl IntoIterator<Item = &'a Graph>) -> InputHash {
    let mut text = String::new();
    for g in graphs {
        text.push_str(&graph_to_json(g));
        text.push('\n');
    }
    InputHash::of(format!("{name} corpus"), text.as_bytes())
}

fn stopped(e: &Error) -> bool {
    matches!(e, Error::BudgetExhausted(_) | Error::CapExceeded { .. })
}

/// Budget stops and cap hits become `budget` entries; other errors abort.
fn record(id: String, claim: &str, res: Result<(Verdict, Witness)>) -> Result<Record> {
    match res {
        Ok((status, witness)) => Ok(Record { id, claim: claim.to_string(), status, witness }),
        Err(e) if stopped(&e) => Ok(Record {
            id,
            claim: claim.to_string(),
            status: Verdict::Budget,
            witness: Witness::Note { reason: e.to_string() },
        }),
        Err(e) => Err(e),
    }
}

fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(usize, &T) -> Result<U> + Sync) -> Result<Vec<U>> {
    items.par_iter().enumerate().map(|(i, x)| f(i, x)).collect()
}

fn ratio(c: &Balance) -> String {
    crate::weights::format_q(c.value())
}

fn wall_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let w = wall(3, 3)?;
    let sub = subdivide_all(&w, 2)?;
    let mut out = SuiteOutput { inputs: vec![corpus_hash("wall", [&w, &sub])], ..Default::default() };
    out.records.push(record(
        "wall/facts".into(),
        "wall(3,3) has 12 vertices and maximum degree 3",
        Ok((
            Verdict::from_bool(w.n() == 12 && w.max_degree() == 3),
            Witness::Facts { graph: (&w).into(), n: 12, max_degree: 3 },
        )),
    )?);
    let tw = exact_treewidth(&w, limits);
    out.records.push(record(
        "wall/treewidth".into(),
        "wall(3,3) has treewidth 3",
        tw.map(|r| {
            (
                Verdict::from_bool(r.exact && r.width == 3),
                Witness::Treewidth { graph: (&w).into(), width: r.width, decomposition: r.decomposition, expected: 3 },
            )
        }),
    )?);
    let res = (|| {
        let a = exact_treewidth(&w, limits)?;
        let b = exact_treewidth(&sub, limits)?;
        Ok((
            Verdict::from_bool(a.exact && b.exact && a.width == b.width),
            Witness::SameTreewidth {
                graph: (&w).into(),
                subdivided: (&sub).into(),
                width: a.width,
                decomposition: a.decomposition,
                subdivided_decomposition: b.decomposition,
            },
        ))
    })();
    out.records.push(record("wall/subdivision".into(), "subdividing every edge of wall(3,3) once keeps the treewidth", res)?);
    Ok(out)
}

fn treewidth_record(id: String, claim: &str, g: &Graph, expected: usize, limits: &Limits) -> Result<Record> {
    let res = exact_treewidth(g, limits).map(|r| {
        (
            if r.exact { Verdict::from_bool(r.width == expected) } else { Verdict::Budget },
            Witness::Treewidth { graph: g.into(), width: r.width, decomposition: r.decomposition, expected },
        )
    });
    record(id, claim, res)
}

fn anchors_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let mut trees: Vec<Graph> = connected_catalog(cfg.max_n.min(MAX_CATALOG_N), limits)?
        .into_iter()
        .filter(|g| g.n() >= 2 && g.m() + 1 == g.n())
        .collect();
    let mut r = rng(suite_seed(cfg.seed, "anchors"));
    for _ in 0..cfg.count.unwrap_or(20) {
        let n = r.gen_range(2..=30);
        let deg = r.gen_range(2..=5);
        trees.push(bounded_degree_graph(&mut r, n, deg, 0));
    }
    let k4 = Graph::complete(4);
    let k33 = Graph::complete_bipartite(3, 3);
    let mut out = SuiteOutput {
        inputs: vec![corpus_hash("anchors", [&k4, &k33].into_iter().chain(trees.iter()))],
        ..Default::default()
    };
    out.records.push(treewidth_record("anchors/k4".into(), "K4 has treewidth 3", &k4, 3, limits)?);
    out.records.push(treewidth_record("anchors/k33".into(), "K3,3 has treewidth 3", &k33, 3, limits)?);
    out.records.extend(par_map(&trees, |i, g| {
        treewidth_record(format!("anchors/tree-{i:03}"), "a tree on at least two vertices has treewidth 1", g, 1, limits)
    })?);
    Ok(out)
}

fn harvey_wood_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let graphs = connected_catalog(cfg.max_n.min(MAX_CATALOG_N), limits)?;
    let c = cfg.c.clone();
    let claim = format!("tw(G) + 1 <= sep_c(G) / (1 - c) with c = {}", ratio(&c));
    let records = par_map(&graphs, |i, g| {
        let res = (|| {
            let tw = exact_treewidth(g, limits)?;
            if !tw.exact {
                return Err(Error::BudgetExhausted(limits.max_steps));
            }
            let sep = separation_number(g, &c, limits)?;
            let lhs = Q::from_integer((tw.width as i64 + 1).into()) * (Q::from_integer(1.into()) - c.value());
            let holds = lhs <= Q::from_integer((sep.value as i64).into());
            Ok((
                Verdict::from_bool(holds),
                Witness::HarveyWood {
                    graph: g.into(),
                    c: c.clone(),
                    tw: tw.width,
                    decomposition: tw.decomposition,
                    sep: sep.value,
                    hardest: sep.hardest,
                    separator: sep.separator,
                },
            ))
        })();
        record(format!("harvey-wood/{i:04}"), &claim, res)
    })?;
    Ok(SuiteOutput {
        records,
        inputs: vec![corpus_hash("harvey-wood", &graphs)],
        notes: vec![format!("{} connected graphs up to isomorphism", graphs.len())],
    })
}

fn separators_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let graphs = catalog(cfg.max_n.min(MAX_CATALOG_N), limits)?;
    let c = cfg.c.clone();
    let per = cfg.count.unwrap_or(20);
    let base = suite_seed(cfg.seed, "separators");
    let claim = format!("every normal weighting has a (w, {})-balanced separator of size at most tw(G) + 1", ratio(&c));
    let records = par_map(&graphs, |i, g| {
        let res = (|| {
            let tw = exact_treewidth(g, limits)?;
            if !tw.exact {
                return Err(Error::BudgetExhausted(limits.max_steps));
            }
            let mut cases = Vec::new();
            for w in weight_battery(base.wrapping_add(i as u64), g.n(), per)? {
                let mut found = None;
                for b in &tw.decomposition.bags {
                    if is_balanced_separator(g, &w, &c, b)? {
                        found = Some(b.clone());
                        break;
                    }
                }
                if found.is_none() {
                    let best = min_balanced_separator(g, &w, &c, limits)?.separator;
                    found = (best.len() <= tw.width + 1).then_some(best);
                }
                cases.push(SeparatorCase { weights: w, separator: found });
            }
            Ok((
                Verdict::from_bool(cases.iter().all(|k| k.separator.is_some())),
                Witness::Separators { graph: g.into(), c: c.clone(), tw: tw.width, decomposition: tw.decomposition, cases },
            ))
        })();
        record(format!("separators/{i:04}"), &claim, res)
    })?;
    Ok(SuiteOutput {
        records,
        inputs: vec![corpus_hash("separators", &graphs)],
        notes: vec![format!("{} graphs up to isomorphism, {per} weightings each", graphs.len())],
    })
}

fn small_patterns() -> Result<Vec<Graph>> {
    Ok(vec![
        Graph::complete(1),
        Graph::complete(2),
        Graph::path(3),
        Graph::cycle(3),
        subdivided_claw(1, 1, 1)?.0,
        Graph::path(4),
    ])
}

struct Triple {
    g: Graph,
    w: WeightFunction,
    pattern: Graph,
}

fn draw_triple<R: Rng>(r: &mut R, patterns: &[Graph]) -> Result<Triple> {
    let n = r.gen_range(6..=10);
    let extra = r.gen_range(0..=n);
    let g = bounded_degree_graph(r, n, 4, extra);
    let pattern = patterns[r.gen_range(0..patterns.len())].clone();
    let w = weight_battery(r.gen(), n, 1)?.remove(0);
    Ok(Triple { g, w, pattern })
}

fn central_bag_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let want = cfg.count.unwrap_or(200);
    let patterns = small_patterns()?;
    let mut r = rng(suite_seed(cfg.seed, "central-bag"));
    let mut drawn: Vec<Triple> = Vec::new();
    let mut evaluated: Vec<(Record, Option<Record>)> = Vec::new();
    let mut laminar = 0;
    while laminar < want {
        if drawn.len() > 50 * want.max(1) {
            return invalid("too few triples with an A-loosely laminar generator");
        }
        let start = drawn.len();
        for _ in 0..64 {
            drawn.push(draw_triple(&mut r, &patterns)?);
        }
        let batch = par_map(&drawn[start..], |j, t| {
            let i = start + j;
            let seq = (|| {
                let mut seq = covering_sequence(&t.g, &t.w, &t.pattern, limits)?;
                let part = dimension_partition(&seq);
                seq.partition = Some(part.clone());
                let res = central_bag(&t.g, &t.w, &seq, &part)?;
                Ok((seq, res))
            })();
            let (seq, res) = match seq {
                Ok(x) => x,
                Err(e) if stopped(&e) => {
                    let rec = record(format!("central-bag/{i:04}/audit"), "", Err(e))?;
                    return Ok((rec, None));
                }
                Err(e) => return Err(e),
            };
            let witness = |check| Witness::CentralBag {
                graph: (&t.g).into(),
                weights: t.w.clone(),
                pattern: (&t.pattern).into(),
                check,
                sequence: seq.clone(),
                result: res.clone(),
            };
            let inv = bag_invariants(&t.g, &seq, &res);
            let audit = Record {
                id: format!("central-bag/{i:04}/audit"),
                claim: "every separation left out of the generator is explained by a shield or a center hit".into(),
                status: Verdict::from_bool(inv.audit_valid),
                witness: witness(BagCheck::Audit),
            };
            let algebra = generator_a_loosely_laminar(&seq.separations, &res).then(|| Record {
                id: format!("central-bag/{i:04}/algebra"),
                claim: "cutsets lie in the central bag, the bag is connected and its weights sum to 1".into(),
                status: Verdict::from_bool(inv.cutsets_inside && inv.connected && inv.normal),
                witness: witness(BagCheck::Algebra),
            });
            Ok((audit, algebra))
        })?;
        for item in batch {
            if laminar == want {
                break;
            }
            if item.1.is_some() {
                laminar += 1;
            }
            evaluated.push(item);
        }
    }
    drawn.truncate(evaluated.len());
    let mut out = SuiteOutput {
        inputs: vec![corpus_hash("central-bag", drawn.iter().map(|t| &t.g))],
        notes: vec![format!(
            "{} triples drawn; {laminar} had an A-loosely laminar generator and were checked for the bag algebra",
            drawn.len()
        )],
        ..Default::default()
    };
    for (audit, algebra) in evaluated {
        out.records.push(audit);
        out.records.extend(algebra);
    }
    Ok(out)
}

/// Covering, dimension partition and central bag, then the transfer and
/// clique-bag checks at separator bound `d`.
pub fn conditional_assertions(
    g: &Graph,
    w: &WeightFunction,
    pattern: &Graph,
    c: &Balance,
    d: usize,
    limits: &Limits,
) -> Result<Vec<Assertion>> {
    let mut seq = covering_sequence(g, w, pattern, limits)?;
    let part = dimension_partition(&seq);
    seq.partition = Some(part.clone());
    let res = central_bag(g, w, &seq, &part)?;
    let t = seq.goodness.map(|gd| gd.t).unwrap_or(pattern.n() + 1);
    let mut out = check_bag_separator_transfer(g, w, c, d, &seq, &res, t, limits)?.assertions;
    let (clique_seq, clique_res) = crate::centralbag::clique_central_bag(g, w, limits)?;
    out.extend(check_clique_bag(g, w, c, d, &clique_seq, &clique_res, limits)?.1);
    Ok(out)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::new(10, edges).expect("petersen edges are in range")
}

/// Heawood, Mobius-Kantor, Pappus, Desargues and McGee graphs in LCF notation.
const CUBIC_LCF: &[(usize, &[i64])] = &[
    (14, &[5, -5]),
    (16, &[5, -5]),
    (18, &[5, 7, -7, 7, -7, -5]),
    (20, &[5, -5, 9, -9]),
    (24, &[12, 7, -7]),
];

/// Hamiltonian cubic graph from LCF jumps.
pub fn lcf(n: usize, jumps: &[i64]) -> Result<Graph> {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let j = (i as i64 + jumps[i % jumps.len()]).rem_euclid(n as i64) as usize;
        if i < j {
            edges.push((i, j));
        }
    }
    Graph::new(n, edges)
}

fn conditional_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let c = cfg.c.clone();
    let patterns = [Graph::complete(1), Graph::complete(2), Graph::path(3)];
    let mut leafy = vec![(0, 4), (1, 4), (2, 5), (3, 5)];
    for a in 4..9 {
        for b in a + 1..9 {
            leafy.push((a, b));
        }
    }
    let leafy = Graph::new(9, leafy)?;
    let mut cases: Vec<(Graph, WeightFunction, Graph, Option<usize>)> = vec![
        (petersen(), WeightFunction::uniform(10)?, Graph::complete(1), Some(3)),
        (Graph::complete_bipartite(3, 3), WeightFunction::uniform(6)?, Graph::complete(1), Some(2)),
        (leafy, WeightFunction::from_integers(&[0, 0, 0, 0, 1, 1, 1, 1, 1])?, Graph::complete(1), Some(2)),
        (wall(3, 3)?, WeightFunction::uniform(12)?, Graph::complete(1), None),
    ];
    // Cubic graphs whose balanced separators are larger than a closed
    // neighbourhood, so the d > Δ hypotheses can hold.
    for (n, jumps) in CUBIC_LCF {
        let g = lcf(*n, jumps)?;
        for p in [Graph::complete(1), Graph::complete(2)] {
            cases.push((g.clone(), WeightFunction::uniform(*n)?, p, None));
        }
    }
    let mut r = rng(suite_seed(cfg.seed, "conditional"));
    for _ in 0..cfg.count.unwrap_or(60) {
        let n = r.gen_range(5..=10);
        let deg = r.gen_range(3..=6);
        let extra = r.gen_range(0..=2 * n);
        let g = bounded_degree_graph(&mut r, n, deg, extra);
        let w = weight_battery(r.gen(), n, 1)?.remove(0);
        let p = patterns[r.gen_range(0..patterns.len())].clone();
        cases.push((g, w, p, None));
    }
    let rows = par_map(&cases, |i, (g, w, p, d)| {
        // Without a fixed d, take the largest d for which the
        // no-small-separator hypothesis holds.
        let d = match d {
            Some(d) => *d,
            None => match min_balanced_separator(g, w, &c, limits) {
                Ok(cert) => cert.separator.len().saturating_sub(1),
                Err(e) if stopped(&e) => {
                    return Ok(vec![record(format!("conditional/{i:03}"), "no-small-separator hypothesis", Err(e))?]);
                }
                Err(e) => return Err(e),
            },
        };
        let base = |name: &str| Witness::Conditional {
            graph: g.into(),
            weights: w.clone(),
            pattern: p.into(),
            c: c.clone(),
            d,
            assertion: name.to_string(),
        };
        match conditional_assertions(g, w, p, &c, d, limits) {
            Ok(list) => Ok(list
                .into_iter()
                .map(|a| Record {
                    id: format!("conditional/{i:03}/{}", a.name),
                    claim: format!("{} (d = {d}): {}", a.name, a.detail),
                    status: a.verdict,
                    witness: base(&a.name),
                })
                .collect()),
            Err(e) if stopped(&e) => Ok(vec![record(format!("conditional/{i:03}"), "conditional checks", Err(e))?]),
            Err(e) => Err(e),
        }
    })?;
    Ok(SuiteOutput {
        records: rows.into_iter().flatten().collect(),
        inputs: vec![corpus_hash("conditional", cases.iter().map(|c| &c.0))],
        notes: vec![format!("{} instances", cases.len())],
    })
}

fn pipeline_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let c = cfg.c.clone();
    let p3 = Graph::path(3);
    let claw_k1 = subdivided_claw(1, 1, 1)?.0.disjoint_union(&Graph::complete(1));
    let w33 = wall(3, 3)?;
    let mut cases = vec![(w33.clone(), WeightFunction::uniform(w33.n())?, p3.clone(), vec![claw_k1.clone()], cfg.d)];
    let mut r = rng(suite_seed(cfg.seed, "pipeline"));
    let patterns = [Graph::complete(1), Graph::complete(2), p3];
    for _ in 0..cfg.count.unwrap_or(8) {
        let n = r.gen_range(6..=10);
        let g = bounded_degree_graph(&mut r, n, 3, n);
        let w = weight_battery(r.gen(), n, 1)?.remove(0);
        let p = patterns[r.gen_range(0..patterns.len())].clone();
        cases.push((g, w, p, vec![claw_k1.clone()], cfg.d));
    }
    let rows = par_map(&cases, |i, (g, w, p, forcers, d)| {
        match run_master_pipeline(g, w, p, forcers, &c, *d, limits) {
            Ok(rep) => Ok(rep
                .assertions
                .iter()
                .map(|a| Record {
                    id: format!("pipeline/{i:02}/{}", a.name),
                    claim: format!("{}: {}", a.name, a.detail),
                    status: a.verdict,
                    witness: Witness::Pipeline {
                        graph: g.into(),
                        weights: w.clone(),
                        pattern: p.into(),
                        forcers: forcers.iter().map(GraphDoc::from).collect(),
                        c: c.clone(),
                        d: *d,
                        assertion: a.name.clone(),
                    },
                })
                .collect::<Vec<_>>()),
            Err(e) if stopped(&e) => Ok(vec![record(format!("pipeline/{i:02}"), "pipeline", Err(e))?]),
            Err(e) => Err(e),
        }
    })?;
    Ok(SuiteOutput {
        records: rows.into_iter().flatten().collect(),
        inputs: vec![corpus_hash("pipeline", cases.iter().map(|c| &c.0))],
        notes: vec![format!("{} instances", cases.len())],
    })
}

fn forcer_records(
    suite: &str,
    graphs: &[Graph],
    forcer: &Graph,
    pattern: &Graph,
    free_of: Vec<Family>,
    claim: &str,
    limits: &Limits,
) -> Result<(Vec<Record>, usize)> {
    let rows = par_map(graphs, |i, g| {
        let res = verify_forcer(g, forcer, pattern, limits).map(|v| {
            let n = v.copies;
            let w = Witness::Forcer {
                graph: g.into(),
                forcer: forcer.into(),
                pattern: pattern.into(),
                free_of: free_of.clone(),
                pairs: v.witnesses,
                counterexample: v.counterexample,
            };
            ((Verdict::from_bool(v.holds), w), n)
        });
        let copies = res.as_ref().map(|x| x.1).unwrap_or(0);
        Ok((record(format!("{suite}/{i:03}"), claim, res.map(|x| x.0))?, copies))
    })?;
    let copies = rows.iter().map(|r| r.1).sum();
    Ok((rows.into_iter().map(|r| r.0).collect(), copies))
}

fn forcer_claw_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let legs: Vec<(usize, usize, usize)> = match (cfg.t1, cfg.t2, cfg.t3) {
        (Some(a), Some(b), Some(c)) => vec![(a, b, c)],
        (None, None, None) => vec![(2, 1, 1), (2, 2, 2)],
        _ => return invalid("give all of t1, t2, t3 or none"),
    };
    let count = cfg.count.unwrap_or(50);
    let mut out = SuiteOutput::default();
    for (t1, t2, t3) in legs {
        if t1 < 2 {
            return invalid("the claw forcer needs t1 >= 2");
        }
        let tag = format!("forcer-claw-{t1}{t2}{t3}");
        let seed = suite_seed(cfg.seed, &tag);
        let (graphs, tried) = claw_free_corpus(seed, count, (t1, t2, t3), 6..=12, limits)?;
        let forcer = subdivided_claw(t1 - 1, t2, t3)?.0.disjoint_union(&Graph::complete(1));
        let pattern = subdivided_claw(t1 - 2, t2, t3)?.0;
        let claim = format!(
            "in an S_{{{t1},{t2},{t3}}}-free graph every copy of S_{{{},{t2},{t3}}} + K1 contains a copy of S_{{{},{t2},{t3}}} breaking the rest",
            t1 - 1,
            t1 - 2
        );
        let free = vec![Family::Claw { t1, t2, t3 }];
        let (records, copies) = forcer_records(&tag, &graphs, &forcer, &pattern, free, &claim, limits)?;
        out.records.extend(records);
        out.inputs.push(corpus_hash(&tag, &graphs));
        out.notes.push(format!("{tag}: {} graphs kept of {tried} drawn; {copies} forcer copies checked", graphs.len()));
    }
    Ok(out)
}

fn forcer_theta_pyramid_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let t = cfg.t.unwrap_or(2);
    if t < 2 {
        return invalid("the theta/pyramid forcer needs t >= 2");
    }
    let seed = suite_seed(cfg.seed, "forcer-theta-pyramid");
    let (graphs, tried) = theta_pyramid_free_corpus(seed, cfg.count.unwrap_or(50), t, 8..=14, 3, limits)?;
    let forcer = subdivided_claw(t, t, t)?.0;
    let pattern = subdivided_claw(t - 1, t - 1, t - 1)?.0;
    let claim = format!(
        "in a ({t}-theta, {t}-pyramid)-free graph every copy of S_{{{t},{t},{t}}} contains a copy of S_{{{0},{0},{0}}} breaking the rest",
        t - 1
    );
    let free = vec![Family::Theta { t }, Family::Pyramid { t }];
    let (records, copies) = forcer_records("forcer-theta-pyramid", &graphs, &forcer, &pattern, free, &claim, limits)?;
    Ok(SuiteOutput {
        records,
        inputs: vec![corpus_hash("forcer-theta-pyramid", &graphs)],
        notes: vec![format!(
            "forcer-theta-pyramid: {} graphs of maximum degree at most 3 kept of {tried} drawn; {copies} forcer copies checked",
            graphs.len()
        )],
    })
}

fn chordal_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let graphs = chordal_corpus(suite_seed(cfg.seed, "chordal"), cfg.count.unwrap_or(100), 30);
    let records = par_map(&graphs, |i, g| {
        let res = (|| {
            let td = chordal_td(g)?;
            let omega = clique_number(g, limits)?;
            let ok = validate_td(g, &td) == Ok(omega.saturating_sub(1)) && td.bags.iter().all(|b| g.is_clique(b));
            Ok((Verdict::from_bool(ok), Witness::Chordal { graph: g.into(), decomposition: td, omega }))
        })();
        record(format!("chordal/{i:03}"), "the clique tree of a chordal graph has width omega - 1 and clique bags", res)
    })?;
    Ok(SuiteOutput { records, inputs: vec![corpus_hash("chordal", &graphs)], notes: vec![] })
}

/// Largest host on which the lci suite also runs the exact oracle.
const LCI_ORACLE_N: usize = 18;

fn lci_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let specs = lci_corpus(suite_seed(cfg.seed, "lci-width"), cfg.count.unwrap_or(60), 20, 3)?;
    let claim = "the decomposition of a fuzzy long circular interval graph is valid, has width at most 4*Delta + 3 and no less than the treewidth";
    let records = par_map(&specs, |i, spec| {
        let res = (|| {
            let g = spec.graph()?;
            let (td, rep) = fuzzy_lci_td(spec, limits)?;
            let width = validate_td(&g, &td);
            let tw = if g.n() <= LCI_ORACLE_N {
                let r = exact_treewidth(&g, limits)?;
                r.exact.then_some(r.width)
            } else {
                None
            };
            let ok = width.as_ref().is_ok_and(|&w| w <= 4 * rep.delta + 3 && tw.map_or(true, |t| w >= t));
            Ok((Verdict::from_bool(ok), Witness::Lci { spec: spec.clone(), decomposition: td, delta: rep.delta, tw }))
        })();
        record(format!("lci-width/{i:03}"), claim, res)
    })?;
    let graphs: Vec<Graph> = specs.iter().map(|s| s.graph()).collect::<Result<_>>()?;
    Ok(SuiteOutput { records, inputs: vec![corpus_hash("lci-width", &graphs)], notes: vec![] })
}

fn strip_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let mut structures = Vec::new();
    for (name, h) in [
        ("line-c3", Graph::cycle(3)),
        ("line-k13", Graph::complete_bipartite(1, 3)),
        ("line-c5", Graph::cycle(5)),
        ("line-p4", Graph::path(4)),
        ("line-k4", Graph::complete(4)),
        ("line-wall22", wall(2, 2)?),
    ] {
        structures.push((name.to_string(), line_graph_of(&h)?));
    }
    structures.push(("trivial-c5".to_string(), trivial_single_edge(&Graph::cycle(5))?));
    structures.extend(synthetic_lci_instances()?);
    let claim = "the assembled decomposition is valid and meets both bag-size bounds";
    let records = par_map(&structures, |_, (name, ss)| {
        let res = default_strip_assembly(ss, limits).map(|(td, rep)| {
            let ok = rep.pattern_bound_ok && rep.strip_bound_ok && rep.width <= rep.width_bound;
            (Verdict::from_bool(ok), Witness::Assembly { structure: ss.clone(), decomposition: td, report: rep })
        });
        record(format!("strip-assembly/{name}"), claim, res)
    })?;
    let hosts: Vec<Graph> = structures.iter().map(|(_, s)| s.host()).collect::<Result<_>>()?;
    Ok(SuiteOutput { records, inputs: vec![corpus_hash("strip-assembly", &hosts)], notes: vec![] })
}

pub fn detector_families() -> Vec<Family> {
    let mut f: Vec<Family> = [(1, 1, 1), (2, 1, 1), (2, 2, 1), (2, 2, 2)]
        .into_iter()
        .map(|(t1, t2, t3)| Family::Claw { t1, t2, t3 })
        .collect();
    f.extend([Family::Theta { t: 2 }, Family::Theta { t: 3 }, Family::Pyramid { t: 1 }, Family::Pyramid { t: 2 }]);
    f.extend([(3, 0), (3, 1), (2, 1), (2, 2)].into_iter().map(|(k, t)| Family::Creature { k, t }));
    f.extend([Family::WallLine { k: 2 }, Family::WallLine { k: 3 }]);
    f
}

fn detector_checks(g: &Graph, families: &[Family], limits: &Limits) -> Result<Vec<DetectorCheck>> {
    families
        .iter()
        .map(|f| Ok(DetectorCheck { family: *f, found: detect(g, f, limits)?, brute: detect_brute(g, f, limits)? }))
        .collect()
}

fn detectors_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    let limits = &cfg.limits;
    let mut graphs = catalog(cfg.max_n.min(MAX_CATALOG_N), limits)?;
    let sample = cfg.count.unwrap_or(150);
    graphs.extend(seeded_sample(suite_seed(cfg.seed, "detectors"), 8, sample));
    let families = detector_families();
    let claim = "each specialised detector agrees with the brute-force search";
    let mut records = par_map(&graphs, |i, g| {
        let res = detector_checks(g, &families, limits).map(|checks| {
            let ok = checks.iter().all(|c| c.found.is_some() == c.brute);
            (Verdict::from_bool(ok), Witness::Detector { graph: g.into(), checks, expected: None })
        });
        record(format!("detectors/{i:04}"), claim, res)
    })?;
    let mut examples = vec![(
        "k23-theta".to_string(),
        "K2,3 is a 2-theta".to_string(),
        Graph::complete_bipartite(2, 3),
        Family::Theta { t: 2 },
    )];
    for t in 0..=2 {
        examples.push((
            format!("claw-creature-{t}"),
            format!("S_{{{0},{0},{0}}} is a (3,{t})-creature", t + 1),
            subdivided_claw(t + 1, t + 1, t + 1)?.0,
            Family::Creature { k: 3, t },
        ));
    }
    for (name, claim, g, fam) in &examples {
        let res = detector_checks(g, &[*fam], limits).map(|checks| {
            let ok = checks.iter().all(|c| c.brute && c.found.is_some());
            (Verdict::from_bool(ok), Witness::Detector { graph: g.into(), checks, expected: Some(true) })
        });
        records.push(record(format!("detectors/{name}"), claim, res)?);
    }
    Ok(SuiteOutput {
        records,
        inputs: vec![corpus_hash("detectors", graphs.iter().chain(examples.iter().map(|e| &e.2)))],
        notes: vec![format!(
            "{} catalog and sampled graphs against {} families",
            graphs.len(),
            families.len()
        )],
    })
}

fn suite_output(name: &str, cfg: &RunConfig) -> Result<SuiteOutput> {
    match name {
        "wall" => wall_suite(cfg),
        "anchors" => anchors_suite(cfg),
        "harvey-wood" => harvey_wood_suite(cfg),
        "separators" => separators_suite(cfg),
        "central-bag" => central_bag_suite(cfg),
        "conditional" => conditional_suite(cfg),
        "pipeline" => pipeline_suite(cfg),
        "forcer-claw" => forcer_claw_suite(cfg),
        "forcer-theta-pyramid" => forcer_theta_pyramid_suite(cfg),
        "chordal" => chordal_suite(cfg),
        "lci-width" => lci_suite(cfg),
        "strip-assembly" => strip_suite(cfg),
        "detectors" => detectors_suite(cfg),
        "all" => {
            let mut out = SuiteOutput::default();
            for s in SUITES {
                out.extend(suite_output(s, cfg)?);
            }
            Ok(out)
        }
        other => invalid(format!("unknown suite {other:?}; known: {}, all", SUITES.join(", "))),
    }
}

/// Run a named suite on a pool of `cfg.threads` workers.
pub fn run_suite(name: &str, cfg: &RunConfig, command: Vec<String>) -> Result<Certificate> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let out = pool.install(|| suite_output(name, cfg))?;
    Ok(Certificate::new(command, cfg.echo(), out.inputs, out.notes, out.records))
}
