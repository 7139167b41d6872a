//! Command-line front end. [`run`] is the whole program minus process setup,
//! so tests can drive it with in-memory streams.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::chordal::{CliqueTree, CliqueTreeJson};
use crate::families::{generate, validate_certificate, Certificate, CertificateJson, FamilyError, FamilyId};
use crate::graph::{parse_graph6, parse_graph_text, to_edge_list, to_graph6, Graph};
use crate::oracle::{cpt_exists_bruteforce, CptVerdict, OracleBudget};
use crate::recognizer::{try_recognize, RecognitionResult};
use crate::sweep::{run_instances, sweep_instances, SweepConfig};

pub const EXIT_PATH: i32 = 0;
pub const EXIT_NOT_PATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_OVER_BUDGET: i32 = 3;
/// The recognizer hit an internal inconsistency (a bug).
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "pathgraph", version, about = "Recognize path graphs with a certificate either way")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a graph is a path graph (exit 0) or not (exit 1).
    Recognize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print a member of one of the forbidden families F0..F16.
    Generate {
        /// Family name, e.g. F11.
        #[arg(value_name = "FAMILY", required_unless_present = "family_flag", conflicts_with = "family_flag")]
        family: Option<String>,
        /// Vertex count for the infinite families.
        #[arg(value_name = "PARAM", conflicts_with = "param_flag")]
        param: Option<usize>,
        #[arg(long = "family", id = "family_flag", value_name = "FAMILY")]
        family_flag: Option<String>,
        #[arg(long = "param", id = "param_flag", value_name = "N")]
        param_flag: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a certificate or clique path tree (JSON) against a graph.
    Validate {
        #[command(flatten)]
        input: Input,
        /// JSON file holding a certificate, a tree, or a full recognition result.
        #[arg(long, value_name = "FILE")]
        answer: String,
    },
    /// Exhaustive ground truth: enumerate every candidate clique path tree.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare the recognizer with the oracle on many graphs.
    Sweep {
        /// Random graphs per order.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Orders of the random graphs.
        #[arg(long, value_delimiter = ',', default_values_t = [7, 8, 9])]
        sizes: Vec<usize>,
        /// Every graph up to this order is included.
        #[arg(long, default_value_t = 6)]
        exhaustive_up_to: usize,
        /// Edge probabilities, cycled per instance.
        #[arg(long, value_delimiter = ',', default_values_t = [0.5])]
        densities: Vec<f64>,
        /// Also check every family graph at its two smallest orders.
        #[arg(long)]
        families: bool,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Edge-list or graph6 file; standard input when neither source is given.
    #[arg(long, value_name = "FILE", conflicts_with = "graph6")]
    input: Option<String>,
    #[arg(long, value_name = "STR")]
    graph6: Option<String>,
}

#[derive(Args, Debug)]
struct Budget {
    #[arg(long, default_value_t = 9)]
    budget_cliques: usize,
    #[arg(long, default_value_t = 16)]
    budget_vertices: usize,
}

impl Budget {
    fn get(&self) -> Result<OracleBudget, String> {
        if self.budget_cliques == 0 || self.budget_vertices == 0 {
            return Err("budgets must be positive".into());
        }
        Ok(OracleBudget::new(self.budget_cliques, self.budget_vertices))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
    Graph6,
}

/// Everything a command writes, plus its exit status.
struct Done {
    status: i32,
    stdout: String,
}

type Outcome = Result<Done, String>;

/// Run the program on `args` (including the program name). Returns the exit
/// status; status 2 means the arguments or input could not be used.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_out = !e.use_stderr();
            let text = e.render().to_string();
            let _ = if to_out { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if to_out { 0 } else { EXIT_USAGE };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(done) => {
            let _ = out.write_all(done.stdout.as_bytes());
            done.status
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Outcome {
    match command {
        Command::Recognize { input, format } => cmd_recognize(&read_graph(&input, stdin)?, format),
        Command::Generate { family, param, family_flag, param_flag, format } => {
            let name = family.or(family_flag).ok_or("a family is required")?;
            cmd_generate(&name, param.or(param_flag), format)
        }
        Command::Validate { input, answer } => {
            let g = read_graph(&input, stdin)?;
            let text = std::fs::read_to_string(&answer).map_err(|e| format!("{answer}: {e}"))?;
            cmd_validate(&g, &text)
        }
        Command::Oracle { input, budget, format } => cmd_oracle(&read_graph(&input, stdin)?, budget.get()?, format),
        Command::Sweep { samples, seed, sizes, exhaustive_up_to, densities, families, budget, format } => {
            if densities.is_empty() || densities.iter().any(|p| !(0.0..=1.0).contains(p)) {
                return Err("densities must lie in [0, 1]".into());
            }
            if exhaustive_up_to > 7 {
                return Err("exhaustive enumeration is limited to 7 vertices".into());
            }
            let config = SweepConfig {
                exhaustive_up_to,
                samples,
                random_orders: sizes,
                densities,
                chordal_variants: true,
                seed,
                budget: budget.get()?,
            };
            cmd_sweep(&config, families, format)
        }
    }
}

fn read_graph(input: &Input, stdin: &mut dyn Read) -> Result<Graph, String> {
    if let Some(s) = &input.graph6 {
        return parse_graph6(s).map_err(|e| e.to_string());
    }
    let (source, text) = match &input.input {
        Some(path) => (path.as_str(), std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?),
        None => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|e| format!("standard input: {e}"))?;
            ("standard input", text)
        }
    };
    parse_graph_text(&text).map_err(|e| format!("{source}: {e}"))
}

fn json_text(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn set_text(g: &Graph, s: impl IntoIterator<Item = usize>) -> String {
    let names: Vec<String> = s.into_iter().map(|v| g.name(v)).collect();
    format!("{{{}}}", names.join(", "))
}

fn tree_text(g: &Graph, t: &CliqueTree) -> String {
    let mut out = String::new();
    for (i, c) in t.cliques.iter().enumerate() {
        let _ = writeln!(out, "  clique {i}: {}", set_text(g, c.iter()));
    }
    for (e, &(a, b)) in t.edges.iter().enumerate() {
        let _ = writeln!(out, "  edge {a} -- {b} label {}", set_text(g, t.label(e).iter()));
    }
    out
}

fn certificate_text(g: &Graph, c: &Certificate) -> String {
    let f = generate(c.family);
    let mut out = format!("  induced {}\n", c.family);
    for (i, &h) in c.witness.iter().enumerate() {
        let _ = writeln!(out, "  {} = {}", f.name(i), g.name(h));
    }
    out
}

/// The input graph with the witness vertices and edges drawn bold.
fn certificate_dot(g: &Graph, c: &Certificate) -> String {
    let mut out = format!("graph witness {{\n  label=\"{}\";\n", c.family);
    let w = g.set_of(&c.witness);
    for v in 0..g.order() {
        let style = if w.contains(v) { ", style=bold" } else { "" };
        let _ = writeln!(out, "  v{v} [label=\"{}\"{style}];", g.name(v));
    }
    for (a, b) in g.edges() {
        let style = if w.contains(a) && w.contains(b) { " [style=bold]" } else { "" };
        let _ = writeln!(out, "  v{a} -- v{b}{style};");
    }
    out.push_str("}\n");
    out
}

fn graph_dot(g: &Graph) -> String {
    let mut out = String::from("graph g {\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  v{v} [label=\"{}\"];", g.name(v));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    out.push_str("}\n");
    out
}

fn cmd_recognize(g: &Graph, format: Format) -> Outcome {
    let result = match try_recognize(g) {
        Ok((r, _)) => r,
        Err(e) => return Ok(Done { status: EXIT_INTERNAL, stdout: format!("{e}\n") }),
    };
    let status = if result.is_path_graph() { EXIT_PATH } else { EXIT_NOT_PATH };
    let stdout = match (format, &result) {
        (Format::Json, r) => json_text(&r.to_json()),
        (Format::Dot, RecognitionResult::PathGraph(t)) => t.to_dot(g),
        (Format::Dot, RecognitionResult::NotPathGraph(c)) => certificate_dot(g, c),
        (Format::Text, RecognitionResult::PathGraph(t)) => format!("path graph\n{}", tree_text(g, t)),
        (Format::Text, RecognitionResult::NotPathGraph(c)) => format!("not a path graph\n{}", certificate_text(g, c)),
        (Format::Graph6, _) => return Err("recognize writes json, dot or text".into()),
    };
    Ok(Done { status, stdout })
}

fn cmd_generate(name: &str, param: Option<usize>, format: Format) -> Outcome {
    let family = if name.contains('(') {
        let f: FamilyId = name.parse().map_err(|e: FamilyError| e.to_string())?;
        if param.is_some_and(|p| Some(p) != f.parameter()) {
            return Err(format!("{name} conflicts with parameter {}", param.unwrap_or_default()));
        }
        f
    } else {
        let index = name.trim().strip_prefix(['F', 'f']).and_then(|i| i.parse::<u8>().ok());
        let index = index.ok_or_else(|| FamilyError::Unknown(name.to_string()).to_string())?;
        FamilyId::new(index, param).map_err(|e| e.to_string())?
    };
    let g = generate(family);
    let stdout = match format {
        Format::Text => to_edge_list(&g),
        Format::Graph6 => format!("{}\n", to_graph6(&g)),
        Format::Dot => graph_dot(&g),
        Format::Json => json_text(&json!({
            "family": family.name(),
            "parameter": family.parameter(),
            "order": g.order(),
            "names": (0..g.order()).map(|v| g.name(v)).collect::<Vec<_>>(),
            "edges": g.edges(),
        })),
    };
    Ok(Done { status: 0, stdout })
}

/// Any of the three JSON shapes `validate` accepts.
#[derive(Deserialize)]
#[serde(untagged)]
enum Answer {
    Result { verdict: String, tree: Option<CliqueTreeJson>, certificate: Option<CertificateJson> },
    Tree(CliqueTreeJson),
    Certificate(CertificateJson),
}

fn cmd_validate(g: &Graph, text: &str) -> Outcome {
    let answer: Answer = serde_json::from_str(text).map_err(|e| format!("answer: {e}"))?;
    let (tree, cert) = match answer {
        Answer::Result { verdict, tree, certificate } => match (verdict.as_str(), tree, certificate) {
            ("path-graph", Some(t), None) => (Some(t), None),
            ("not-path-graph", None, Some(c)) => (None, Some(c)),
            _ => return Err("answer: verdict does not match its payload".into()),
        },
        Answer::Tree(t) => (Some(t), None),
        Answer::Certificate(c) => (None, Some(c)),
    };
    let verdict = match (tree, cert) {
        (Some(t), _) => {
            if t.cliques.iter().flatten().any(|&v| v >= g.order())
                || t.edges.iter().flatten().any(|&i| i >= t.cliques.len())
            {
                Err("tree mentions a vertex or node that does not exist".to_string())
            } else {
                CliqueTree::from_json(&t, g.order())
                    .check_path_tree(g, &g.vertex_set())
                    .map(|()| "valid clique path tree".to_string())
                    .map_err(|d| format!("invalid clique path tree: {d}"))
            }
        }
        (None, Some(c)) => {
            let c = Certificate::from_json(&c).map_err(|e| format!("answer: {e}"))?;
            match validate_certificate(g, &c) {
                Ok(true) => Ok(format!("valid certificate: induced {}", c.family)),
                Ok(false) => Err(format!("invalid certificate: the witness does not induce {}", c.family)),
                Err(e) => Err(format!("invalid certificate: {e}")),
            }
        }
        (None, None) => unreachable!("every answer shape carries a payload"),
    };
    Ok(match verdict {
        Ok(msg) => Done { status: 0, stdout: format!("{msg}\n") },
        Err(msg) => Done { status: 1, stdout: format!("{msg}\n") },
    })
}

fn cmd_oracle(g: &Graph, budget: OracleBudget, format: Format) -> Outcome {
    let verdict = cpt_exists_bruteforce(g, budget);
    let status = match &verdict {
        CptVerdict::Tree(_) => EXIT_PATH,
        CptVerdict::NoTree { .. } => EXIT_NOT_PATH,
        CptVerdict::OverBudget { .. } => EXIT_OVER_BUDGET,
    };
    let stdout = match (format, &verdict) {
        (Format::Json, CptVerdict::Tree(t)) => json_text(&json!({"verdict": "path-graph", "tree": t.to_json()})),
        (Format::Json, CptVerdict::NoTree { hole }) => json_text(&json!({"verdict": "not-path-graph", "hole": hole})),
        (Format::Json, CptVerdict::OverBudget { cliques, vertices }) => {
            json_text(&json!({"verdict": "over-budget", "cliques": cliques, "vertices": vertices}))
        }
        (Format::Text, CptVerdict::Tree(t)) => format!("path graph\n{}", tree_text(g, t)),
        (Format::Text, CptVerdict::NoTree { hole: Some(h) }) => {
            format!("not a path graph\n  hole {}\n", set_text(g, h.iter().copied()))
        }
        (Format::Text, CptVerdict::NoTree { hole: None }) => "not a path graph\n".into(),
        (Format::Text, CptVerdict::OverBudget { cliques, vertices }) => {
            format!("over budget: {cliques} maximal cliques, {vertices} vertices\n")
        }
        (Format::Dot, CptVerdict::Tree(t)) => t.to_dot(g),
        _ => return Err("oracle writes json or text, and dot only for a tree".into()),
    };
    Ok(Done { status, stdout })
}

/// Two smallest members of every family.
fn family_instances() -> Vec<FamilyId> {
    (0..=16u8)
        .flat_map(|i| match FamilyId::new(i, None) {
            Ok(f) => vec![f],
            Err(_) => (4..40).filter_map(|n| FamilyId::new(i, Some(n)).ok()).take(2).collect(),
        })
        .collect()
}

fn cmd_sweep(config: &SweepConfig, families: bool, format: Format) -> Outcome {
    let start = Instant::now();
    let report = run_instances(&sweep_instances(config), config.budget, config.seed);
    // Family graphs must come back with a certificate naming their own family.
    let mut family_failures = Vec::new();
    if families {
        for f in family_instances() {
            let g = generate(f);
            match try_recognize(&g) {
                Ok((RecognitionResult::NotPathGraph(c), _)) if validate_certificate(&g, &c) == Ok(true) => {
                    if c.family != f {
                        family_failures.push(format!("{f}: certificate names {}", c.family));
                    }
                }
                Ok((r, _)) => family_failures.push(format!("{f}: path graph = {}", r.is_path_graph())),
                Err(e) => family_failures.push(format!("{f}: {e}")),
            }
        }
    }
    let clean = report.is_clean() && family_failures.is_empty();
    let stdout = match format {
        Format::Json => json_text(&json!({
            "report": report,
            "families_checked": families,
            "family_failures": family_failures,
            "elapsed_ms": start.elapsed().as_millis(),
        })),
        Format::Text => {
            let mut s = format!(
                "sweep seed {} exhaustive <= {} samples {} sizes {:?} densities {:?}\n",
                config.seed, config.exhaustive_up_to, config.samples, config.random_orders, config.densities
            );
            let _ = writeln!(
                s,
                "instances {} path {} non-path {} failures {} fallbacks {}",
                report.instances,
                report.path_graphs,
                report.non_path_graphs,
                report.failures.len(),
                report.fallbacks
            );
            let _ = writeln!(
                s,
                "recognize time p50 {}us p99 {}us max {}us; total {:.1}s",
                report.p50_micros,
                report.p99_micros,
                report.max_micros,
                start.elapsed().as_secs_f64()
            );
            if families {
                let _ = writeln!(s, "family graphs: {} failures", family_failures.len());
            }
            for f in &report.failures {
                let _ = writeln!(s, "instance {} (n={}, m={}): {:?}", f.id, f.order, f.edges, f.outcome);
            }
            for f in &family_failures {
                let _ = writeln!(s, "family {f}");
            }
            s
        }
        _ => return Err("sweep writes json or text".into()),
    };
    Ok(Done { status: if clean { 0 } else { 1 }, stdout })
}
