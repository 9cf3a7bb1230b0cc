use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use centralbag_core::centralbag::{run_master_pipeline, Verdict};
use centralbag_core::certificate::{recheck, Certificate, InputHash, Record, Witness};
use centralbag_core::circular::{thickening, FuzzyLciSpec, ThickeningSpec};
use centralbag_core::config::RunConfig;
use centralbag_core::decompose::assembly::default_strip_assembly;
use centralbag_core::decompose::chordal::chordal_td;
use centralbag_core::decompose::lci::fuzzy_lci_td;
use centralbag_core::decompose::td::{validate_td, TreeDecomposition};
use centralbag_core::detect::{
    find_creature, find_induced_match, find_line_of_subdivided_wall, find_subdivided_claw, find_t_pyramid, find_t_theta,
};
use centralbag_core::generators::{caterpillar, creature, pyramid, subdivided_claw, theta, wall_with_coords, CaterpillarSpec};
use centralbag_core::io::{graph_to_json, read_graph, write_graph, GraphDoc};
use centralbag_core::separators::{min_balanced_separator, separation_number};
use centralbag_core::strip::StripStructure;
use centralbag_core::suites::{run_suite, SUITES};
use centralbag_core::treewidth::exact_treewidth;
use centralbag_core::weights::{parse_q, Balance};
use centralbag_core::{Error, Graph, Result, WeightFunction};

/// Exit code for bad flags or malformed input.
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "centralbag", version, about = "Exact separators, treewidth, pattern detection and central bags on small graphs")]
struct Cli {
    /// key = value config file; defaults to $CENTRALBAG_CONFIG
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Step budget for each exponential search
    #[arg(long, global = true)]
    max_steps: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated graph as JSON (or .gr by extension)
    Gen(GenArgs),
    /// Look for an induced pattern; exit 0 found, 1 absent, 2 budget
    Detect(DetectArgs),
    /// Exact treewidth with a witness decomposition
    Tw(TwArgs),
    /// Smallest balanced separator, or the separation number
    Sep(SepArgs),
    /// Covering, central bag and every conditional check on one instance
    Centralbag(CentralbagArgs),
    /// Constructive tree decompositions
    Decompose(DecomposeArgs),
    /// Run a verification suite and write its certificate
    Verify(VerifyArgs),
    /// Re-derive every pass/fail entry of a certificate from its witnesses
    Recheck(RecheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Wall,
    Claw,
    Theta,
    Pyramid,
    Creature,
    Caterpillar,
    Thickening,
    Lci,
    Path,
    Cycle,
    Complete,
    Bipartite,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    t1: usize,
    #[arg(long, default_value_t = 1)]
    t2: usize,
    #[arg(long, default_value_t = 1)]
    t3: usize,
    #[arg(long, default_value_t = 2)]
    l1: usize,
    #[arg(long, default_value_t = 2)]
    l2: usize,
    #[arg(long, default_value_t = 2)]
    l3: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// Gap between creature joints along the body path
    #[arg(long, default_value_t = 1)]
    spacing: usize,
    /// JSON spec for caterpillar, thickening and lci
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the structural witness as JSON
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternKind {
    Claw,
    Theta,
    Pyramid,
    Creature,
    WallLine,
    /// Any pattern graph given with --graph
    Induced,
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long)]
    pattern: PatternKind,
    #[arg(long, default_value_t = 1)]
    t: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    t1: usize,
    #[arg(long, default_value_t = 1)]
    t2: usize,
    #[arg(long, default_value_t = 1)]
    t3: usize,
    /// Pattern graph for --pattern induced
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TwArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Write the decomposition in PACE .td format
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SepArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// {"vertex": "num/den"}; uniform when omitted
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long)]
    c: Option<String>,
    /// Compute the separation number instead
    #[arg(long)]
    number: bool,
}

#[derive(Args)]
struct CentralbagArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Pattern graph file
    #[arg(long)]
    pattern: PathBuf,
    /// Forcer graph files
    #[arg(long)]
    forcer: Vec<PathBuf>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Chordal,
    Lci,
    Strip,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    method: Method,
    /// Graph for chordal, fuzzy lci spec or strip structure JSON otherwise
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`
    suite: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    t1: Option<usize>,
    #[arg(long)]
    t2: Option<usize>,
    #[arg(long)]
    t3: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RecheckArgs {
    certificate: PathBuf,
}

fn balance(s: &str) -> Result<Balance> {
    Balance::new(parse_q(s)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn read_weights(path: Option<&Path>, g: &Graph) -> Result<WeightFunction> {
    match path {
        Some(p) => WeightFunction::from_json(g.n(), &std::fs::read_to_string(p)?),
        None => WeightFunction::uniform(g.n()),
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn gen(a: &GenArgs) -> Result<u8> {
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Error::Invalid(format!("this family needs --{flag}")));
    let (g, witness): (Graph, Value) = match a.family {
        Family::Wall => {
            let n = need(a.n, "n")?;
            let (g, coords) = wall_with_coords(n, a.m.unwrap_or(n))?;
            (g, json!({ "coords": coords }))
        }
        Family::Claw => {
            let (g, w) = subdivided_claw(a.t1, a.t2, a.t3)?;
            (g, serde_json::to_value(w)?)
        }
        Family::Theta => {
            let (g, w) = theta(a.l1, a.l2, a.l3)?;
            (g, serde_json::to_value(w)?)
        }
        Family::Pyramid => {
            let (g, w) = pyramid(a.l1, a.l2, a.l3)?;
            (g, serde_json::to_value(w)?)
        }
        Family::Creature => {
            let (g, w) = creature(a.k, a.t, a.spacing)?;
            (g, serde_json::to_value(w)?)
        }
        Family::Caterpillar | Family::Thickening | Family::Lci => {
            let spec = a.spec.as_deref().ok_or_else(|| Error::Invalid("this family needs --spec".into()))?;
            match a.family {
                Family::Caterpillar => {
                    let (g, w) = caterpillar(&read_json::<CaterpillarSpec>(spec)?)?;
                    (g, serde_json::to_value(w)?)
                }
                Family::Thickening => (thickening(&read_json::<ThickeningSpec>(spec)?)?, Value::Null),
                _ => (read_json::<FuzzyLciSpec>(spec)?.graph()?, Value::Null),
            }
        }
        Family::Path => (Graph::path(need(a.n, "n")?), Value::Null),
        Family::Cycle => (Graph::cycle(need(a.n, "n")?), Value::Null),
        Family::Complete => (Graph::complete(need(a.n, "n")?), Value::Null),
        Family::Bipartite => (Graph::complete_bipartite(need(a.n, "n")?, need(a.m, "m")?), Value::Null),
    };
    match &a.output {
        Some(p) => write_graph(p, &g)?,
        None => println!("{}", graph_to_json(&g)),
    }
    if let Some(p) = &a.witness {
        std::fs::write(p, pretty(&witness)?)?;
    }
    Ok(0)
}

fn detect(a: &DetectArgs, cfg: &RunConfig) -> Result<u8> {
    let g = read_graph(&a.input)?;
    let l = &cfg.limits;
    let found: Option<Value> = match a.pattern {
        PatternKind::Claw => find_subdivided_claw(&g, a.t1, a.t2, a.t3, l)?.map(|m| serde_json::to_value(m)).transpose()?,
        PatternKind::Theta => find_t_theta(&g, a.t, l)?.map(|m| serde_json::to_value(m)).transpose()?,
        PatternKind::Pyramid => find_t_pyramid(&g, a.t, l)?.map(|m| serde_json::to_value(m)).transpose()?,
        PatternKind::WallLine => find_line_of_subdivided_wall(&g, a.k, l)?.map(|m| serde_json::to_value(m)).transpose()?,
        PatternKind::Creature => find_creature(&g, a.k, a.t, l)?.map(|m| serde_json::to_value(m)).transpose()?,
        PatternKind::Induced => {
            let p = a.graph.as_deref().ok_or_else(|| Error::Invalid("--pattern induced needs --graph".into()))?;
            find_induced_match(&g, &read_graph(p)?, l)?.map(|m| serde_json::to_value(m)).transpose()?
        }
    };
    let code = if found.is_some() { 0 } else { 1 };
    emit(&pretty(&json!({ "found": found.is_some(), "match": found }))?, a.output.as_deref())?;
    Ok(code)
}

fn tw(a: &TwArgs, cfg: &RunConfig) -> Result<u8> {
    let g = read_graph(&a.input)?;
    let r = exact_treewidth(&g, &cfg.limits)?;
    if let Some(p) = &a.output {
        std::fs::write(p, r.decomposition.to_pace(g.n()))?;
    }
    let out = json!({ "n": g.n(), "width": r.width, "lower": r.lower, "exact": r.exact, "order": r.order });
    print!("{}", pretty(&out)?);
    Ok(if r.exact { 0 } else { 2 })
}

fn sep(a: &SepArgs, cfg: &RunConfig) -> Result<u8> {
    let g = read_graph(&a.input)?;
    let c = match &a.c {
        Some(s) => balance(s)?,
        None => cfg.c.clone(),
    };
    let out = if a.number {
        serde_json::to_value(separation_number(&g, &c, &cfg.limits)?)?
    } else {
        let w = read_weights(a.weights.as_deref(), &g)?;
        serde_json::to_value(min_balanced_separator(&g, &w, &c, &cfg.limits)?)?
    };
    print!("{}", pretty(&out)?);
    Ok(0)
}

fn input_hash(path: &Path) -> Result<InputHash> {
    Ok(InputHash::of(path.display().to_string(), &std::fs::read(path)?))
}

fn centralbag(a: &CentralbagArgs, cfg: &RunConfig) -> Result<u8> {
    let g = read_graph(&a.input)?;
    let w = read_weights(a.weights.as_deref(), &g)?;
    let pattern = read_graph(&a.pattern)?;
    let forcers: Vec<Graph> = a.forcer.iter().map(|p| read_graph(p)).collect::<Result<_>>()?;
    let c = match &a.c {
        Some(s) => balance(s)?,
        None => cfg.c.clone(),
    };
    let d = a.d.unwrap_or(cfg.d);
    let rep = run_master_pipeline(&g, &w, &pattern, &forcers, &c, d, &cfg.limits)?;
    let records = rep
        .assertions
        .iter()
        .map(|x| Record {
            id: format!("centralbag/{}", x.name),
            claim: format!("{}: {}", x.name, x.detail),
            status: x.verdict,
            witness: Witness::Pipeline {
                graph: (&g).into(),
                weights: w.clone(),
                pattern: (&pattern).into(),
                forcers: forcers.iter().map(GraphDoc::from).collect(),
                c: c.clone(),
                d,
                assertion: x.name.clone(),
            },
        })
        .collect();
    let mut inputs = vec![input_hash(&a.input)?, input_hash(&a.pattern)?];
    if let Some(p) = &a.weights {
        inputs.push(input_hash(p)?);
    }
    for p in &a.forcer {
        inputs.push(input_hash(p)?);
    }
    let mut config = cfg.echo();
    config.insert("c".into(), centralbag_core::weights::format_q(c.value()));
    config.insert("d".into(), d.to_string());
    let mut cert = Certificate::new(vec!["centralbag".into()], config, inputs, vec![], records);
    cert.construction = Some(serde_json::to_value(&rep)?);
    emit(&cert.to_json(), a.output.as_deref())?;
    summarise(&cert);
    Ok(cert.exit_code() as u8)
}

fn decompose(a: &DecomposeArgs, cfg: &RunConfig) -> Result<u8> {
    let (td, n, report): (TreeDecomposition, usize, Value) = match a.method {
        Method::Chordal => {
            let g = read_graph(&a.input)?;
            let td = chordal_td(&g)?;
            let width = validate_td(&g, &td).map_err(|v| Error::InvalidDecomposition(format!("{v:?}")))?;
            (td, g.n(), json!({ "width": width }))
        }
        Method::Lci => {
            let spec: FuzzyLciSpec = read_json(&a.input)?;
            let n = spec.graph()?.n();
            let (td, rep) = fuzzy_lci_td(&spec, &cfg.limits)?;
            (td, n, serde_json::to_value(rep)?)
        }
        Method::Strip => {
            let ss: StripStructure = read_json(&a.input)?;
            let n = ss.host()?.n();
            let (td, rep) = default_strip_assembly(&ss, &cfg.limits)?;
            (td, n, serde_json::to_value(rep)?)
        }
    };
    match &a.output {
        Some(p) => std::fs::write(p, td.to_pace(n))?,
        None => print!("{}", td.to_pace(n)),
    }
    eprintln!("{}", serde_json::to_string(&report)?);
    Ok(0)
}

fn summarise(cert: &Certificate) {
    let s = &cert.summary;
    eprintln!("pass {} fail {} hypothesis-unmet {} budget {}", s.pass, s.fail, s.hypothesis_unmet, s.budget);
    for r in cert.records.iter().filter(|r| r.status == Verdict::Fail) {
        eprintln!("FAIL {}: {}", r.id, r.claim);
    }
}

fn verify(a: &VerifyArgs, mut cfg: RunConfig) -> Result<u8> {
    if let Some(x) = a.seed {
        cfg.seed = x;
    }
    if let Some(x) = a.max_n {
        cfg.max_n = x;
    }
    if let Some(s) = &a.c {
        cfg.c = balance(s)?;
    }
    if let Some(x) = a.d {
        cfg.d = x;
    }
    cfg.t1 = a.t1.or(cfg.t1);
    cfg.t2 = a.t2.or(cfg.t2);
    cfg.t3 = a.t3.or(cfg.t3);
    cfg.t = a.t.or(cfg.t);
    cfg.count = a.count.or(cfg.count);
    cfg.threads = a.threads.or(cfg.threads);
    if let Some(p) = &a.output {
        cfg.output = Some(p.clone());
    }
    if a.suite != "all" && !SUITES.contains(&a.suite.as_str()) {
        return Err(Error::Invalid(format!("unknown suite {:?}; known: {}, all", a.suite, SUITES.join(", "))));
    }
    let cert = run_suite(&a.suite, &cfg, vec!["verify".into(), a.suite.clone()])?;
    emit(&cert.to_json(), cfg.output.as_deref())?;
    summarise(&cert);
    Ok(cert.exit_code() as u8)
}

fn recheck_cmd(a: &RecheckArgs, cfg: &RunConfig) -> Result<u8> {
    let cert = Certificate::from_json(&std::fs::read_to_string(&a.certificate)?)?;
    let rep = recheck(&cert, &cfg.limits);
    eprintln!("checked {} skipped {} mismatches {}", rep.checked, rep.skipped, rep.mismatches.len());
    for (id, stored, derived) in &rep.mismatches {
        eprintln!("MISMATCH {id}: stored {} rechecked {}", stored.as_str(), derived.as_str());
    }
    if !rep.summary_ok {
        eprintln!("summary counts do not match the records");
    }
    Ok(if rep.ok() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(s) = cli.max_steps {
        cfg.limits.max_steps = s;
    }
    cfg.validate()?;
    match &cli.cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Detect(a) => detect(a, &cfg),
        Cmd::Tw(a) => tw(a, &cfg),
        Cmd::Sep(a) => sep(a, &cfg),
        Cmd::Centralbag(a) => centralbag(a, &cfg),
        Cmd::Decompose(a) => decompose(a, &cfg),
        Cmd::Verify(a) => verify(a, cfg.clone()),
        Cmd::Recheck(a) => recheck_cmd(a, &cfg),
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExhausted(_) | Error::CapExceeded { .. } => 2,
        Error::Parse { .. }
        | Error::Json(_)
        | Error::Io(_)
        | Error::Invalid(_)
        | Error::VertexOutOfRange { .. }
        | Error::Loop(_)
        | Error::NotNormal(_)
        | Error::BadRatio(_) => USAGE,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
