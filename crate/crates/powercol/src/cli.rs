//! `powercol` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use powercol_core::bounds::{self, WcolClass};
use powercol_core::density::{max_average_degree, min_outdegree_orientation, min_weak_orientation};
use powercol_core::families::{self, FamilyInstance};
use powercol_core::oracles::*;
use powercol_core::ordering::{coloring_number, wcol_exact, Reach};
use powercol_core::power::power_weak_orientation;
use powercol_core::square::verify_square_bound;
use powercol_core::{rational_string, Graph, VertexOrdering};

use crate::error::{CliError, CliResult, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use crate::formats::{json_lines, to_value, weak_orientation_json};
use crate::io::{read_graph, serialize_graph};
use crate::run_report::RunReport;
use crate::suites::{self, Settings, Subject, Suite, LB_TREE_CASES};

#[derive(Parser, Debug)]
#[command(name = "powercol", version, about = "Coloring numbers, graph powers and their bounds")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    /// List passing checks and notes too.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComputeParam {
    Col,
    Wcol,
    Mad,
    Power,
    Orient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorpusName {
    Small,
    Medium,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Tree,
    Path,
    Cycle,
    Complete,
    Grid,
    Star,
    Ktree,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Square,
    Power,
    Wcol,
    Ratio,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassName {
    Treewidth,
    NoMinor,
    Genus,
    Planar,
    NoJoinMinor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleName {
    Mad,
    Arb,
    Td,
    Chi,
    Wcol,
    Outdeg,
}

fn parse_reach(s: &str) -> Result<Reach, String> {
    s.parse().map_err(|e: powercol_core::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one parameter of a graph file.
    Compute {
        #[arg(long, value_enum)]
        param: ComputeParam,
        graph: PathBuf,
        /// Reach for wcol: a positive integer or `inf`.
        #[arg(long, value_parser = parse_reach)]
        k: Option<Reach>,
        #[arg(long)]
        p: Option<usize>,
        /// Write certificates (power) or the weak orientation (orient) here.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Run a verification suite on a graph file or a built-in corpus.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        graph: Option<PathBuf>,
        #[arg(long, value_enum)]
        corpus: Option<CorpusName>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        /// Processing order for thm38, as a JSON array of vertex ids.
        #[arg(long)]
        order: Option<PathBuf>,
        /// Write the thm38 collection trace as JSON lines.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Generate a graph; with -o also writes a `.json` metadata sidecar.
    Generate {
        #[arg(value_enum)]
        family: FamilyName,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Evaluate closed-form bounds.
    Bounds {
        #[arg(value_enum)]
        kind: BoundKind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        /// For `ratio`, the largest p tabulated (default 20).
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        arb: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, value_enum)]
        class: Option<ClassName>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Run a brute-force oracle on a graph file.
    Oracle {
        #[arg(value_enum)]
        name: OracleName,
        graph: PathBuf,
        #[arg(long, value_parser = parse_reach)]
        k: Option<Reach>,
    },
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{what} requires --{flag}")))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn ordering_json(o: &VertexOrdering) -> Value {
    to_value(o)
}

fn compute(
    param: ComputeParam,
    path: &Path,
    k: Option<Reach>,
    p: Option<usize>,
    output: Option<&Path>,
) -> CliResult<RunReport> {
    let g = read_graph(path)?;
    let s = Settings::from_env(true)?;
    let mut rep = RunReport::new("compute", path.display().to_string());
    rep.param("param", format!("{param:?}").to_lowercase());
    match param {
        ComputeParam::Mad => {
            let d = max_average_degree(&g)?;
            rep.result("mad", rational_string(&d.mad));
            rep.result("witness", to_value(&d.witness));
        }
        ComputeParam::Col => {
            let (col, order) = coloring_number(&g);
            rep.result("col", col);
            rep.result("ordering", ordering_json(&order));
        }
        ComputeParam::Wcol => {
            let k = need(k, "k", "wcol")?;
            rep.param("k", k.to_string());
            let (value, order) = wcol_exact(&g, k, s.exact_limit)?;
            rep.result(&format!("wcol_{k}"), value);
            rep.result("ordering", ordering_json(&order));
        }
        ComputeParam::Power => {
            let p = need(p, "p", "power")?;
            rep.param("p", p);
            let reach = Reach::Finite(p.div_ceil(2));
            let (q, sigma) = wcol_exact(&g, reach, s.exact_limit)?;
            let po = power_weak_orientation(&g, p, &sigma)?;
            let (w, at) = po.orientation.max_out_weight();
            rep.result("power_edges", po.power.m());
            rep.result(&format!("wcol_{}", p.div_ceil(2)), q);
            rep.result("sigma", ordering_json(&sigma));
            rep.result("max_out_weight", rational_string(&w));
            rep.result("max_out_weight_vertex", at);
            if let Some(out) = output {
                let lines = json_lines(&po.certificates).map_err(|e| CliError::Usage(e.to_string()))?;
                write_file(out, &lines)?;
                rep.artifacts.push(out.display().to_string());
            }
        }
        ComputeParam::Orient => {
            let w = min_weak_orientation(&g)?;
            let o = min_outdegree_orientation(&g)?;
            rep.result("max_out_weight", rational_string(&w.max_out_weight().0));
            rep.result("max_out_degree", o.max_out_degree());
            rep.result("arcs", to_value(&o.arcs()));
            let wj = weak_orientation_json(&w);
            if let Some(out) = output {
                write_file(out, &serde_json::to_string_pretty(&wj).unwrap_or_default())?;
                rep.artifacts.push(out.display().to_string());
            } else {
                rep.result("weak_orientation", wj);
            }
        }
    }
    Ok(rep)
}

fn read_order(path: &Path, g: &Graph) -> CliResult<VertexOrdering> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let seq: Vec<usize> =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let order = VertexOrdering::from_sequence(seq)?;
    order.check_matches(g)?;
    Ok(order)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: Suite,
    graph: Option<&Path>,
    corpus: Option<CorpusName>,
    p: Option<usize>,
    delta: Option<usize>,
    order: Option<&Path>,
    output: Option<&Path>,
) -> CliResult<RunReport> {
    let ps: Vec<usize> = p.map(|p| vec![p]).unwrap_or_else(|| vec![2, 3, 4]);
    if suite == Suite::LbTree {
        let s = Settings::from_env(true)?;
        let cases: Vec<(usize, usize)> = match (delta, p) {
            (Some(d), Some(p)) => vec![(d, p)],
            (None, None) => LB_TREE_CASES.to_vec(),
            _ => return Err(CliError::Usage("lb-tree takes both --delta and --p, or neither".into())),
        };
        let mut rep = RunReport::new("verify", "lb-tree");
        rep.param("suite", "lb-tree");
        for (d, p) in cases {
            rep.push(suites::lb_tree(d, p, &s)?);
        }
        return Ok(rep);
    }
    match (graph, corpus) {
        (Some(path), None) => {
            let g = read_graph(path)?;
            let s = Settings::from_env(true)?;
            let mut rep = RunReport::new("verify", path.display().to_string());
            rep.param("suite", format!("{suite:?}").to_lowercase());
            let subj = Subject { label: path.display().to_string(), graph: &g, meta: None };
            if suite == Suite::Thm38 && (order.is_some() || output.is_some()) {
                let l = order.map(|o| read_order(o, &g)).transpose()?;
                let v = verify_square_bound(&g, l.as_ref(), &s.limits)?;
                if let (Some(out), Some(run)) = (output, &v.run) {
                    let lines = json_lines(&run.trace).map_err(|e| CliError::Usage(e.to_string()))?;
                    write_file(out, &lines)?;
                    rep.artifacts.push(out.display().to_string());
                }
                for r in suites::thm38(&subj, l.as_ref(), &s)? {
                    rep.push(r);
                }
            } else {
                for r in suites::run_on(suite, &subj, &ps, &s)? {
                    rep.push(r);
                }
            }
            Ok(rep)
        }
        (None, Some(name)) => {
            let s = Settings::from_env(false)?;
            let instances: Vec<FamilyInstance> = match name {
                CorpusName::Small => families::small_corpus(),
                CorpusName::Medium => families::medium_corpus(),
            };
            let label = format!("corpus:{name:?}").to_lowercase();
            let mut rep = RunReport::new("verify", label);
            rep.param("suite", format!("{suite:?}").to_lowercase());
            rep.param("graphs", instances.len());
            for f in &instances {
                for r in suites::run_on(suite, &Subject::from_instance(f), &ps, &s)? {
                    rep.push(r);
                }
            }
            if suite == Suite::All {
                for (d, p) in LB_TREE_CASES {
                    rep.push(suites::lb_tree(d, p, &s)?);
                }
            }
            Ok(rep)
        }
        (Some(_), Some(_)) => Err(CliError::Usage("give a graph file or --corpus, not both".into())),
        (None, None) => Err(CliError::Usage("verify needs a graph file or --corpus".into())),
    }
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: FamilyName,
    delta: Option<usize>,
    height: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    k: Option<usize>,
    rows: Option<usize>,
    cols: Option<usize>,
    seed: u64,
    output: Option<&Path>,
) -> CliResult<(RunReport, String)> {
    let what = format!("{family:?}").to_lowercase();
    let inst = match family {
        FamilyName::Tree => families::complete_ary_tree(need(delta, "delta", &what)?, need(height, "height", &what)?)?,
        FamilyName::Path => families::path(need(n, "n", &what)?)?,
        FamilyName::Cycle => families::cycle(need(n, "n", &what)?)?,
        FamilyName::Complete => families::complete(need(n, "n", &what)?)?,
        FamilyName::Grid => families::grid(need(rows, "rows", &what)?, need(cols, "cols", &what)?)?,
        FamilyName::Star => families::star(need(n, "n", &what)?)?,
        FamilyName::Ktree => families::random_k_tree(need(k, "k", &what)?, need(n, "n", &what)?, seed)?,
        FamilyName::Random => families::random_graph(need(n, "n", &what)?, need(m, "m", &what)?, seed)?,
    };
    let text = serialize_graph(&inst.graph);
    let mut rep = RunReport::new("generate", inst.label());
    rep.result("n", inst.graph.n());
    rep.result("m", inst.graph.m());
    rep.result("meta", to_value(&inst.meta));
    if let Some(out) = output {
        write_file(out, &text)?;
        let mut sidecar = out.as_os_str().to_owned();
        sidecar.push(".json");
        let sidecar = PathBuf::from(sidecar);
        write_file(&sidecar, &serde_json::to_string_pretty(&inst.meta).unwrap_or_default())?;
        rep.artifacts.push(out.display().to_string());
        rep.artifacts.push(sidecar.display().to_string());
    } else {
        rep.result("edge_list", text.clone());
    }
    Ok((rep, text))
}

struct BoundArgs {
    k: Option<usize>,
    delta: Option<usize>,
    p: Option<usize>,
    c: Option<usize>,
    arb: Option<usize>,
    q: Option<usize>,
    class: Option<ClassName>,
    t: Option<usize>,
    g: Option<usize>,
    s: Option<usize>,
}

fn bounds_cmd(kind: BoundKind, a: BoundArgs) -> CliResult<RunReport> {
    let what = format!("bounds {kind:?}").to_lowercase();
    let mut rep = RunReport::new("bounds", what.clone());
    for (name, v) in [("k", a.k), ("delta", a.delta), ("p", a.p), ("c", a.c), ("arb", a.arb), ("q", a.q)] {
        if let Some(v) = v {
            rep.param(name, v);
        }
    }
    let exprs = match kind {
        BoundKind::Square => bounds::square_bounds(need(a.k, "k", &what)?, need(a.delta, "delta", &what)?, a.c)?,
        BoundKind::Power => bounds::power_bounds(need(a.delta, "delta", &what)?, need(a.p, "p", &what)?, a.arb, a.q)?,
        BoundKind::Wcol => {
            let k = need(a.k, "k", &what)?;
            let class = match need(a.class, "class", &what)? {
                ClassName::Treewidth => WcolClass::TreeWidth { t: need(a.t, "t", &what)? },
                ClassName::NoMinor => WcolClass::NoCompleteMinor { t: need(a.t, "t", &what)? },
                ClassName::Genus => WcolClass::Genus { g: need(a.g, "g", &what)? },
                ClassName::Planar => WcolClass::Planar,
                ClassName::NoJoinMinor => {
                    WcolClass::NoJoinMinor { s: need(a.s, "s", &what)?, t: need(a.t, "t", &what)? }
                }
            };
            rep.param("class", format!("{class:?}"));
            rep.result("wcol_bound", to_value(&powercol_core::report::Value::Int(bounds::wcol_bound(class, k)?)));
            return Ok(rep);
        }
        BoundKind::Ratio => {
            let delta = need(a.delta, "delta", &what)?;
            let top = a.p.unwrap_or(20);
            let rows = bounds::ratio_table(delta, 1..=top, |p| {
                a.q.or_else(|| bounds::wcol_bound(WcolClass::Planar, p.div_ceil(2)).ok().map(|v| v as usize))
            })?;
            let q_note = if a.q.is_some() { "fixed --q" } else { "planar wcol bound at ceil(p/2)" };
            rep.param("q", q_note);
            let width = top.to_string().len();
            for r in &rows {
                let cell = |v: &Option<powercol_core::report::Value>| {
                    v.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "n/a".into())
                };
                rep.result(
                    &format!("p={:0width$}", r.p),
                    json!({
                        "L": r.tree_lower.to_string(),
                        "chordal/L": cell(&r.chordal_ratio),
                        "wcol/L": cell(&r.wcol_ratio),
                        "chordal estimate^2": cell(&r.chordal_estimate_sq),
                    }),
                );
            }
            return Ok(rep);
        }
    };
    for e in &exprs {
        rep.result(e.name, to_value(&e.value));
    }
    rep.result("expressions", to_value(&exprs));
    Ok(rep)
}

fn oracle_cmd(name: OracleName, path: &Path, k: Option<Reach>) -> CliResult<RunReport> {
    let g = read_graph(path)?;
    let s = Settings::from_env(true)?;
    let l = &s.limits;
    let mut rep = RunReport::new("oracle", path.display().to_string());
    rep.param("oracle", format!("{name:?}").to_lowercase());
    match name {
        OracleName::Mad => rep.result("mad", rational_string(&mad_oracle(&g, l)?)),
        OracleName::Arb => rep.result("arb", arboricity_oracle(&g, l)?),
        OracleName::Td => rep.result("td", treedepth_oracle(&g, l)?),
        OracleName::Chi => rep.result("chi", chromatic_oracle(&g, l)?),
        OracleName::Wcol => {
            let k = need(k, "k", "oracle wcol")?;
            rep.result(&format!("wcol_{k}"), wcol_exhaustive_oracle(&g, k, l)?);
        }
        OracleName::Outdeg => rep.result("min_max_out_degree", min_outdegree_oracle(&g, l)?.0),
    }
    Ok(rep)
}

fn dispatch(cli: &Cli) -> CliResult<(RunReport, Option<String>)> {
    Ok(match &cli.command {
        Command::Compute { param, graph, k, p, output } => (compute(*param, graph, *k, *p, output.as_deref())?, None),
        Command::Verify { suite, graph, corpus, p, delta, order, output } => {
            (verify(*suite, graph.as_deref(), *corpus, *p, *delta, order.as_deref(), output.as_deref())?, None)
        }
        Command::Generate { family, delta, height, n, m, k, rows, cols, seed, output } => {
            let (rep, text) = generate(*family, *delta, *height, *n, *m, *k, *rows, *cols, *seed, output.as_deref())?;
            let raw = output.is_none().then_some(text);
            (rep, raw)
        }
        Command::Bounds { kind, k, delta, p, c, arb, q, class, t, g, s } => {
            let args =
                BoundArgs { k: *k, delta: *delta, p: *p, c: *c, arb: *arb, q: *q, class: *class, t: *t, g: *g, s: *s };
            (bounds_cmd(*kind, args)?, None)
        }
        Command::Oracle { name, graph, k } => (oracle_cmd(*name, graph, *k)?, None),
    })
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(&cli) {
        Ok((mut rep, raw)) => {
            if cli.timing {
                rep.wall_time_ms = Some(start.elapsed().as_millis());
            }
            if cli.json {
                println!("{}", rep.to_json());
            } else if let Some(raw) = raw {
                print!("{raw}");
            } else {
                print!("{}", rep.to_text(cli.verbose));
            }
            if rep.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                println!("{}", json!({ "error": e.to_string(), "exit_code": code }));
            } else {
                eprintln!("error: {e}");
            }
            code
        }
    }
}
