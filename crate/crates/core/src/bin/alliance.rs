use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use alliance_core::alliance::{is_global_offensive_r_alliance, is_offensive_r_alliance, valid_r_range};
use alliance_core::bench::{run_corpus, CorpusSpec, FamilySpec, RPolicy};
use alliance_core::bounds::{bounds_report, line_graph_bounds_report, BoundsOptions};
use alliance_core::graph::io::{self as gio, Format, ParsedGraph};
use alliance_core::reduction::{build_gadget, map_certificate, verify_gadget_equivalence, GadgetKind, ReductionOptions};
use alliance_core::solve::{self, Problem, SolveOptions, SolveResult};
use alliance_core::witness::{independent_complement_witness, thm31_witness, thm32_witness, WitnessCertificate};
use alliance_core::{generate, Error, Family, VertexSet};

#[derive(Parser)]
#[command(name = "alliance", version, about = "Offensive r-alliances: predicates, exact solvers, bounds, constructions, reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Table,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    EdgeList,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Offensive,
    Global,
    Dominating,
    KDominating,
    VertexCover,
    Independent,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Degree,
    Cut,
    Independent,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Downshift,
    GoaLow,
    GoaHigh,
}

impl From<KindArg> for GadgetKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Downshift => GadgetKind::Downshift,
            KindArg::GoaLow => GadgetKind::GoaLow,
            KindArg::GoaHigh => GadgetKind::GoaHigh,
        }
    }
}

#[derive(Clone, Copy)]
enum RArg {
    All,
    One(i64),
}

fn parse_r(s: &str) -> Result<RArg, String> {
    if s == "all" {
        return Ok(RArg::All);
    }
    s.parse().map(RArg::One).map_err(|_| format!("expected an integer or `all`, got `{s}`"))
}

#[derive(Args)]
struct Input {
    /// Graph file (edge list or DIMACS); stdin when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a vertex set is an offensive r-alliance.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'r', allow_negative_numbers = true)]
        r: i64,
        /// Comma-separated vertex labels.
        #[arg(long)]
        set: String,
        #[arg(long)]
        global: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Exact minimum by exhaustive search.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'r', value_parser = parse_r, allow_negative_numbers = true)]
        r: Option<RArg>,
        /// Shorthand for `--problem global`.
        #[arg(long)]
        global: bool,
        #[arg(long, value_enum)]
        problem: Option<ProblemArg>,
        /// k for `--problem k-dominating`.
        #[arg(short = 'k', default_value_t = 1)]
        k: usize,
        /// Seconds before giving up.
        #[arg(long)]
        timeout: Option<f64>,
        /// Lift the order guardrail.
        #[arg(long)]
        allow_large: bool,
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Every bound on the global offensive r-alliance number.
    Bounds {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'r', value_parser = parse_r, allow_negative_numbers = true)]
        r: RArg,
        /// Report on the line graph, adding the regular line-graph bound.
        #[arg(long)]
        line_graph: bool,
        #[arg(long)]
        skip_exact: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: OutFormat,
    },
    /// Polynomial-time construction of a global offensive r-alliance.
    Witness {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'r', allow_negative_numbers = true)]
        r: i64,
        #[arg(long, value_enum, default_value = "degree")]
        construction: ConstructionArg,
        /// r-dominating set for the cut construction; a minimum one is
        /// computed when absent.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Build a gadget graph and its provenance labels.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(short = 'r', allow_negative_numbers = true)]
        r: i64,
        /// Largest gadget order allowed.
        #[arg(long, default_value_t = 64)]
        budget: usize,
        /// Build even when the stated preconditions fail.
        #[arg(long)]
        force: bool,
        /// Write `<out>.txt` (edge list) and `<out>.labels.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also check the size correspondence by exact search.
        #[arg(long)]
        verify: bool,
        /// Map this source solution into the gadget.
        #[arg(long)]
        map: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Print a generated graph, e.g. `cycle:6` or `random_regular:10,3,7`.
    Gen {
        family: String,
        /// Overrides the seed of `random_regular`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "edge-list")]
        graph_format: GraphFormat,
    },
    /// Run a corpus and check every inequality.
    Bench {
        /// Family ranges such as `cycle:3-10`; the standard corpus when absent.
        #[arg(long = "family")]
        families: Vec<String>,
        #[arg(short = 'r', value_parser = parse_r, allow_negative_numbers = true, num_args = 1.., value_delimiter = ',')]
        r: Vec<RArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest order solved exactly.
        #[arg(long, default_value_t = 12)]
        budget: usize,
        /// Seconds per instance.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Violation(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Uncertified(rep) => Failure::Violation(format!(
                "constructed set failed certification at {:?}",
                rep.failing
            )),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<bool, Failure>;

fn read_graph(input: &Input) -> Result<ParsedGraph, Failure> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(gio::parse(&text)?)
}

fn parse_set(pg: &ParsedGraph, text: &str) -> Result<VertexSet, Failure> {
    let mut ids = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let label: usize = tok.parse().map_err(|_| Failure::Input(format!("invalid vertex `{tok}`")))?;
        ids.push(pg.vertex(label).ok_or_else(|| Failure::Input(format!("no vertex labelled {label}")))?);
    }
    Ok(VertexSet::from_indices(pg.graph.n(), ids)?)
}

fn labels_of(pg: &ParsedGraph, s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| pg.label(v)).collect()
}

fn with_labels(pg: &ParsedGraph, mut value: Value, key: &str, s: &VertexSet) -> Value {
    value[key] = json!(labels_of(pg, s));
    value
}

fn emit(text: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn emit_json(v: &Value) -> io::Result<()> {
    emit(&serde_json::to_string_pretty(v).expect("json values serialize"))
}

fn r_list(pg: &ParsedGraph, r: RArg) -> Vec<i64> {
    match r {
        RArg::All => valid_r_range(&pg.graph).iter().collect(),
        RArg::One(r) => vec![r],
    }
}

fn cmd_verify(input: &Input, r: i64, set: &str, global: bool, format: OutFormat) -> CliResult {
    let pg = read_graph(input)?;
    let s = parse_set(&pg, set)?;
    let rep = if global {
        is_global_offensive_r_alliance(&pg.graph, &s, r)?
    } else {
        is_offensive_r_alliance(&pg.graph, &s, r)?
    };
    match format {
        OutFormat::Json => {
            let mut v = serde_json::to_value(&rep).expect("report serializes");
            if let Some(margins) = v["margins"].as_array_mut() {
                for m in margins {
                    let u = m["vertex"].as_u64().unwrap_or(0) as usize;
                    m["vertex"] = json!(pg.label(u));
                }
            }
            v["failing"] = json!(rep.failing.iter().map(|&u| pg.label(u)).collect::<Vec<_>>());
            emit_json(&v)?;
        }
        _ => {
            let verdict = if rep.holds { "holds" } else { "fails" };
            let kind = if global { "global offensive" } else { "offensive" };
            let mut text = format!("{kind} {r}-alliance: {verdict}\n");
            for m in &rep.margins {
                text.push_str(&format!("vertex {}  margin {}\n", pg.label(m.vertex), m.margin));
            }
            emit(&text)?;
        }
    }
    Ok(rep.holds)
}

fn solve_value(pg: &ParsedGraph, problem: &str, res: &SolveResult) -> Value {
    let mut v = serde_json::to_value(res).expect("result serializes");
    v["problem"] = json!(problem);
    with_labels(pg, v, "witness", &res.witness)
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    input: &Input,
    r: Option<RArg>,
    global: bool,
    problem: Option<ProblemArg>,
    k: usize,
    timeout: Option<f64>,
    allow_large: bool,
    parallel: bool,
    format: OutFormat,
) -> CliResult {
    let pg = read_graph(input)?;
    let mut opts = SolveOptions { allow_large, parallel, ..SolveOptions::default() };
    if let Some(t) = timeout {
        opts = opts.with_timeout(Duration::from_secs_f64(t));
    }
    let problem = problem.unwrap_or(if global { ProblemArg::Global } else { ProblemArg::Offensive });
    let need_r = || r.ok_or_else(|| Failure::Input("-r is required for alliance problems".into()));
    let mut results: Vec<(String, SolveResult)> = Vec::new();
    match problem {
        ProblemArg::Offensive | ProblemArg::Global => {
            for r in r_list(&pg, need_r()?) {
                let (name, p) = match problem {
                    ProblemArg::Global => ("global_offensive", Problem::GlobalOffensive { r }),
                    _ => ("offensive", Problem::Offensive { r }),
                };
                results.push((name.into(), solve::minimize(&pg.graph, p, &opts)?));
            }
        }
        ProblemArg::Dominating => results.push(("dominating".into(), solve::min_dominating(&pg.graph, &opts)?)),
        ProblemArg::KDominating => results.push(("k_dominating".into(), solve::min_k_dominating(&pg.graph, k, &opts)?)),
        ProblemArg::VertexCover => results.push(("vertex_cover".into(), solve::min_vertex_cover(&pg.graph, &opts)?)),
        ProblemArg::Independent => results.push(("independent".into(), solve::independence_number(&pg.graph, &opts)?)),
    }
    match format {
        OutFormat::Json => {
            let values: Vec<Value> = results.iter().map(|(name, res)| solve_value(&pg, name, res)).collect();
            if values.len() == 1 {
                emit_json(&values[0])?;
            } else {
                emit_json(&Value::Array(values))?;
            }
        }
        OutFormat::Table | OutFormat::Csv => {
            let sep = if format == OutFormat::Csv { "," } else { "  " };
            let mut text = ["problem", "r", "optimum", "nodes", "witness"].join(sep) + "\n";
            for (name, res) in &results {
                let w: Vec<String> = labels_of(&pg, &res.witness).iter().map(|v| v.to_string()).collect();
                let row = [
                    name.clone(),
                    res.parameter.map_or("-".into(), |r| r.to_string()),
                    res.optimum.to_string(),
                    res.nodes_explored.to_string(),
                    w.join(" "),
                ];
                text += &(row.join(sep) + "\n");
            }
            emit(&text)?;
        }
    }
    Ok(true)
}

fn cmd_bounds(input: &Input, r: RArg, line_graph: bool, skip_exact: bool, format: OutFormat) -> CliResult {
    let pg = read_graph(input)?;
    let opts = BoundsOptions { solve: SolveOptions::default(), skip_exact };
    let rs = if line_graph {
        match r {
            RArg::All => valid_r_range(&pg.graph.line_graph()?.0).iter().collect(),
            RArg::One(r) => vec![r],
        }
    } else {
        r_list(&pg, r)
    };
    let mut reports = Vec::new();
    for r in rs {
        reports.push(if line_graph { line_graph_bounds_report(&pg.graph, r, &opts)? } else { bounds_report(&pg.graph, r, &opts)? });
    }
    let clean = reports.iter().all(|rep| rep.violations().is_empty());
    match format {
        OutFormat::Json => {
            let v = serde_json::to_value(&reports).expect("reports serialize");
            emit_json(if reports.len() == 1 { &v[0] } else { &v })?;
        }
        _ => {
            let mut text = String::new();
            for rep in &reports {
                text += &rep.to_table();
                for v in rep.violations() {
                    text += &format!("violation: {v}\n");
                }
            }
            emit(&text)?;
        }
    }
    Ok(clean)
}

fn cmd_witness(input: &Input, r: i64, construction: ConstructionArg, set: Option<&str>, format: OutFormat) -> CliResult {
    let pg = read_graph(input)?;
    let g = &pg.graph;
    let cert: WitnessCertificate = match construction {
        ConstructionArg::Degree => thm31_witness(g, r)?,
        ConstructionArg::Independent => independent_complement_witness(g, r)?,
        ConstructionArg::Cut => {
            let h = match set {
                Some(s) => parse_set(&pg, s)?,
                None => {
                    if r < 1 {
                        return Err(Failure::Input("the cut construction needs r >= 1".into()));
                    }
                    solve::min_k_dominating(g, r as usize, &SolveOptions::default())?.witness
                }
            };
            thm32_witness(g, r, &h)?
        }
    };
    match format {
        OutFormat::Json => {
            let v = serde_json::to_value(&cert).expect("certificate serializes");
            let mut v = with_labels(&pg, v, "witness", &cert.witness);
            v["size"] = json!(cert.size());
            emit_json(&v)?;
        }
        _ => {
            let w: Vec<String> = labels_of(&pg, &cert.witness).iter().map(|v| v.to_string()).collect();
            emit(&format!("size {} (bound {})\nwitness {}\n", cert.size(), cert.claimed_bound, w.join(" ")))?;
        }
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce(
    input: &Input,
    kind: KindArg,
    r: i64,
    budget: usize,
    force: bool,
    out: Option<&PathBuf>,
    verify: bool,
    map: Option<&str>,
    format: OutFormat,
) -> CliResult {
    let pg = read_graph(input)?;
    let opts = ReductionOptions { budget, enforce_preconditions: !force };
    let art = build_gadget(&pg.graph, kind.into(), r, &opts)?;
    let mut ok = true;
    let mut doc = art.labels_json();
    doc["n"] = json!(art.gprime.n());
    doc["m"] = json!(art.gprime.m());
    if let Some(text) = map {
        let s = parse_set(&pg, text)?;
        match map_certificate(&art, &s) {
            Ok(m) => doc["mapped"] = serde_json::to_value(&m).expect("certificate serializes"),
            Err(Error::Uncertified(rep)) => {
                ok = false;
                doc["mapped"] = json!({ "holds": false, "failing": rep.failing });
            }
            Err(e) => return Err(e.into()),
        }
    }
    if verify {
        let ver = verify_gadget_equivalence(&art, &SolveOptions::default())?;
        ok &= ver.holds;
        doc["verification"] = serde_json::to_value(&ver).expect("verification serializes");
    }
    let edges = art.edge_list();
    if let Some(prefix) = out {
        let labels = serde_json::to_string_pretty(&art.labels_json()).expect("labels serialize") + "\n";
        fs::write(prefix.with_extension("txt"), &edges)?;
        fs::write(prefix.with_extension("labels.json"), labels)?;
    }
    match format {
        OutFormat::Json => {
            if out.is_none() {
                doc["edge_list"] = json!(edges);
            }
            emit_json(&doc)?;
        }
        _ => {
            let mut text = if out.is_none() { edges } else { String::new() };
            text += &format!("# {} vertices, {} edges, size map k -> {}k + {}\n", art.gprime.n(), art.gprime.m(), art.size_map.scale, art.size_map.offset);
            for (v, tag) in art.labels.iter().enumerate() {
                text += &format!("# {v} {tag}\n");
            }
            if let Some(ver) = doc.get("verification") {
                text += &format!("# verification {ver}\n");
            }
            emit(&text)?;
        }
    }
    Ok(ok)
}

fn cmd_gen(family: &str, seed: Option<u64>, graph_format: GraphFormat) -> CliResult {
    let mut fam: Family = family.parse()?;
    if let (Some(s), Family::RandomRegular { seed, .. }) = (seed, &mut fam) {
        *seed = s;
    }
    let g = generate(&fam)?;
    let format = match graph_format {
        GraphFormat::EdgeList => Format::EdgeList,
        GraphFormat::Dimacs => Format::Dimacs,
    };
    emit(&gio::serialize(&g, format))?;
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    families: &[String],
    r: &[RArg],
    seed: u64,
    budget: usize,
    timeout: f64,
    workers: usize,
    format: OutFormat,
    out: Option<&PathBuf>,
) -> CliResult {
    let mut spec = if families.is_empty() {
        CorpusSpec::standard()
    } else {
        let fams = families.iter().map(|f| f.parse::<FamilySpec>()).collect::<Result<Vec<_>, _>>()?;
        CorpusSpec { families: fams, ..CorpusSpec::standard() }
    };
    spec.seed = seed;
    spec.solver_budget = budget;
    spec.timeout = Duration::from_secs_f64(timeout);
    spec.workers = workers;
    if !r.is_empty() && !r.iter().any(|x| matches!(x, RArg::All)) {
        spec.r_policy = RPolicy::List(r.iter().filter_map(|x| if let RArg::One(v) = x { Some(*v) } else { None }).collect());
    }
    let report = run_corpus(&spec)?;
    let text = match format {
        OutFormat::Json => report.to_json(),
        OutFormat::Table => report.to_table(),
        OutFormat::Csv => report.to_csv()?,
    };
    match out {
        Some(p) => fs::write(p, &text)?,
        None => emit(&text)?,
    }
    Ok(!report.has_violations())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Verify { input, r, set, global, format } => cmd_verify(&input, r, &set, global, format),
        Command::Solve { input, r, global, problem, k, timeout, allow_large, parallel, format } => {
            cmd_solve(&input, r, global, problem, k, timeout, allow_large, parallel, format)
        }
        Command::Bounds { input, r, line_graph, skip_exact, format } => cmd_bounds(&input, r, line_graph, skip_exact, format),
        Command::Witness { input, r, construction, set, format } => cmd_witness(&input, r, construction, set.as_deref(), format),
        Command::Reduce { input, kind, r, budget, force, out, verify, map, format } => {
            cmd_reduce(&input, kind, r, budget, force, out.as_ref(), verify, map.as_deref(), format)
        }
        Command::Gen { family, seed, graph_format } => cmd_gen(&family, seed, graph_format),
        Command::Bench { families, r, seed, budget, timeout, workers, format, out } => {
            cmd_bench(&families, &r, seed, budget, timeout, workers, format, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Violation(msg)) => {
            eprintln!("alliance: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("alliance: {msg}");
            ExitCode::from(2)
        }
    }
}
