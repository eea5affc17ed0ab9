//! The `sgpvar` command line: argument parsing plus one function per
//! command. Every command returns an [`Outcome`] holding its exit status and
//! output, so the commands can be driven directly from tests.
//!
//! Exit codes: 0 affirmative, 1 negative (with a certificate), 2 input
//! error, 3 internal failure.

pub mod input;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sgpvar_core::membership::{membership_ac2, Certificate};
use sgpvar_core::rewrite::{default_step_budget, regularity_certificate_with_budget, LemmaError};
use sgpvar_core::structure::{
    greens_relations, is_aperiodic, is_completely_0_simple, is_e_separable, rees_representation, to_rees_string,
};
use sgpvar_core::words::{check_identity, holds_in_ac2, parse_identity, word_graph, Assignment, WordGraph};
use sgpvar_core::{parse_word, to_sgp_string, Semigroup, TableError};

pub use input::{build_expression, load_semigroup, InputError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CliConfig {
    pub format: Format,
    pub verbose: u8,
    /// Overrides the default rewriting budget of `10 |w|^2` steps.
    pub step_budget: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(name = "sgpvar", version, about = "Membership in the variety generated by AC2, and related tools")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long, global = true)]
    pub step_budget: Option<usize>,
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

/// Inputs are `.sgp`/`.rees` files or builder expressions such as `AC2`,
/// `cyclic:4` or `product(A2, C2)`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a Cayley table and report its order and idempotents.
    Validate { input: String },
    /// Decide membership in the variety generated by AC2.
    Member { input: String },
    /// Check an identity `u = v` by substitution.
    Identity { input: String, identity: String },
    /// Decide whether `u = v` holds in AC2 from word graphs and parities.
    #[command(name = "ac2-identity")]
    Ac2Identity { identity: String },
    /// Green's relations, aperiodicity, E-separability, Rees structure.
    Analyze { input: String },
    /// Derive `w = w w' w` for a connected word.
    Certificate { word: String },
    /// Print the graph of a word as a sorted edge list.
    Graph { word: String },
    /// Write a Cayley table for a builder expression.
    Build {
        expression: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Affirmative,
    Negative,
    InputError,
    Internal,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Affirmative => 0,
            Status::Negative => 1,
            Status::InputError => 2,
            Status::Internal => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn code(&self) -> i32 {
        self.status.code()
    }

    fn new(status: Status, cfg: &CliConfig, text: String, json: Value) -> Self {
        let stdout = match cfg.format {
            Format::Text => text,
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable")),
        };
        Outcome { status, stdout, stderr: String::new() }
    }

    fn error(status: Status, cfg: &CliConfig, message: String) -> Self {
        match cfg.format {
            Format::Text => Outcome { status, stdout: String::new(), stderr: format!("error: {message}\n") },
            Format::Json => {
                let stdout = format!("{}\n", serde_json::to_string_pretty(&json!({ "error": message })).expect("json"));
                Outcome { status, stdout, stderr: String::new() }
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { Status::InputError } else { Status::Affirmative };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { status, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let cfg = CliConfig { format: cli.format, verbose: cli.verbose, step_budget: cli.step_budget };
    dispatch(&cfg, cli.command)
}

pub fn dispatch(cfg: &CliConfig, command: Command) -> Outcome {
    match command {
        Command::Validate { input } => cmd_validate(cfg, &input),
        Command::Member { input } => cmd_member(cfg, &input),
        Command::Identity { input, identity } => cmd_identity(cfg, &input, &identity),
        Command::Ac2Identity { identity } => cmd_ac2_identity(cfg, &identity),
        Command::Analyze { input } => cmd_analyze(cfg, &input),
        Command::Certificate { word } => cmd_certificate(cfg, &word),
        Command::Graph { word } => cmd_graph(cfg, &word),
        Command::Build { expression, output } => cmd_build(cfg, &expression, output.as_deref()),
    }
}

fn load(cfg: &CliConfig, input: &str) -> Result<Semigroup, Outcome> {
    load_semigroup(input).map_err(|e| {
        let message = match &e {
            InputError::Sgp { source: sgpvar_core::SgpError::Table(TableError::NonAssociative(x, y, z)), .. } => {
                format!("{e}; witness triple x={x}, y={y}, z={z}")
            }
            _ => e.to_string(),
        };
        Outcome::error(Status::InputError, cfg, message)
    })
}

fn assignment_text(s: &Semigroup, a: &Assignment) -> String {
    a.iter().map(|(v, &e)| format!("{v} -> {}", s.label(e))).collect::<Vec<_>>().join(", ")
}

fn assignment_json(s: &Semigroup, a: &Assignment) -> Value {
    let map: serde_json::Map<String, Value> =
        a.iter().map(|(v, &e)| (v.name(), json!({ "index": e, "label": s.label(e) }))).collect();
    Value::Object(map)
}

pub fn cmd_validate(cfg: &CliConfig, input: &str) -> Outcome {
    let s = match load(cfg, input) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let idempotents = s.idempotents().len();
    let plural = if idempotents == 1 { "" } else { "s" };
    let text = format!("order {}, associative, {idempotents} idempotent{plural}\n", s.order());
    let json = json!({ "order": s.order(), "associative": true, "idempotents": idempotents });
    Outcome::new(Status::Affirmative, cfg, text, json)
}

pub fn cmd_member(cfg: &CliConfig, input: &str) -> Outcome {
    let s = match load(cfg, input) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let report = match membership_ac2(&s) {
        Ok(r) => r,
        Err(e) => return Outcome::error(Status::Internal, cfg, e.to_string()),
    };
    if !report.verify(&s) {
        return Outcome::error(Status::Internal, cfg, "certificate does not re-evaluate".into());
    }
    let mut text = String::new();
    writeln!(text, "verdict: {}", report.verdict.as_str()).unwrap();
    writeln!(text, "certificate: {}", report.certificate.kind()).unwrap();
    if let Some((id, ce)) = report.certificate.identity() {
        writeln!(text, "family: {}", id.family).unwrap();
        writeln!(text, "identity: {id}").unwrap();
        writeln!(text, "assignment: {}", assignment_text(&s, &ce.assignment)).unwrap();
        writeln!(text, "lhs: {}", s.label(ce.lhs_value)).unwrap();
        writeln!(text, "rhs: {}", s.label(ce.rhs_value)).unwrap();
    }
    if let Certificate::NonCombinatorialClosure { element, factorization, .. } = &report.certificate {
        writeln!(text, "element: {}", s.label(*element)).unwrap();
        let factors: Vec<String> = factorization.iter().map(|&e| s.label(e)).collect();
        writeln!(text, "factorization: {}", factors.join(" * ")).unwrap();
    }
    if cfg.verbose > 0 {
        for stage in &report.stages {
            writeln!(text, "stage {}: {} us", stage.name, stage.micros).unwrap();
        }
    }
    let status = if report.is_member() { Status::Affirmative } else { Status::Negative };
    Outcome::new(status, cfg, text, report.to_json(&s))
}

pub fn cmd_identity(cfg: &CliConfig, input: &str, identity: &str) -> Outcome {
    let s = match load(cfg, input) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let id = match parse_identity(identity) {
        Ok(id) => id,
        Err(e) => return Outcome::error(Status::InputError, cfg, e.to_string()),
    };
    match check_identity(&s, &id) {
        None => Outcome::new(
            Status::Affirmative,
            cfg,
            format!("holds: {id}\n"),
            json!({ "identity": id.to_string(), "holds": true, "counterexample": Value::Null }),
        ),
        Some(ce) => {
            let text = format!(
                "fails: {id}\nassignment: {}\nlhs: {}\nrhs: {}\n",
                assignment_text(&s, &ce.assignment),
                s.label(ce.lhs_value),
                s.label(ce.rhs_value)
            );
            let json = json!({
                "identity": id.to_string(),
                "holds": false,
                "counterexample": {
                    "assignment": assignment_json(&s, &ce.assignment),
                    "lhs_value": ce.lhs_value,
                    "rhs_value": ce.rhs_value,
                },
            });
            Outcome::new(Status::Negative, cfg, text, json)
        }
    }
}

fn graph_json(g: &WordGraph) -> Value {
    json!({
        "vertices": g.vertices.iter().map(|v| v.name()).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|(a, b)| [a.name(), b.name()]).collect::<Vec<_>>(),
        "initial": g.initial.name(),
        "final": g.final_vertex.name(),
    })
}

pub fn cmd_ac2_identity(cfg: &CliConfig, identity: &str) -> Outcome {
    let id = match parse_identity(identity) {
        Ok(id) => id,
        Err(e) => return Outcome::error(Status::InputError, cfg, e.to_string()),
    };
    let holds = holds_in_ac2(&id.lhs, &id.rhs);
    let (gu, gv) = (word_graph(&id.lhs), word_graph(&id.rhs));
    let (cu, cv) = (id.lhs.counts(), id.rhs.counts());
    let mut text = format!("{}: {id}\n", if holds { "holds in AC2" } else { "fails in AC2" });
    writeln!(text, "graph of {}:\n{gu}graph of {}:\n{gv}", id.lhs, id.rhs).unwrap();
    let mut counts = Vec::new();
    for x in id.variables() {
        let (a, b) = (cu.get(&x).copied().unwrap_or(0), cv.get(&x).copied().unwrap_or(0));
        let parity = if a % 2 == b % 2 { "same parity" } else { "different parity" };
        writeln!(text, "{x}: {a} vs {b}, {parity}").unwrap();
        counts.push(json!({ "variable": x.name(), "lhs": a, "rhs": b }));
    }
    let json = json!({
        "identity": id.to_string(),
        "holds": holds,
        "graphs_equal": gu == gv,
        "lhs_graph": graph_json(&gu),
        "rhs_graph": graph_json(&gv),
        "counts": counts,
    });
    Outcome::new(if holds { Status::Affirmative } else { Status::Negative }, cfg, text, json)
}

pub fn cmd_analyze(cfg: &CliConfig, input: &str) -> Outcome {
    let s = match load(cfg, input) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let aperiodic = match is_aperiodic(&s) {
        Ok(a) => a,
        Err(e) => return Outcome::error(Status::Internal, cfg, e.to_string()),
    };
    let idempotents: Vec<String> = s.idempotents().iter().map(|e| s.label(e)).collect();
    let g = greens_relations(&s);
    let counts = [g.r_classes().len(), g.l_classes().len(), g.h_classes().len(), g.d_classes().len()];
    let sep = is_e_separable(&s);
    let c0s = is_completely_0_simple(&s);
    let rees = if c0s {
        match rees_representation(&s) {
            Ok(r) => Some(r),
            Err(e) => return Outcome::error(Status::Internal, cfg, e.to_string()),
        }
    } else {
        None
    };
    let yes_no = |b: bool| if b { "yes" } else { "no" };

    let mut text = String::new();
    writeln!(text, "order: {}", s.order()).unwrap();
    writeln!(text, "idempotents: {}", idempotents.join(" ")).unwrap();
    writeln!(text, "classes: R {}, L {}, H {}, D {}", counts[0], counts[1], counts[2], counts[3]).unwrap();
    writeln!(text, "E-separable: {}", yes_no(sep.separable)).unwrap();
    if let Some((p, q, side)) = sep.failure {
        writeln!(text, "  no idempotent separates {} and {} on the {side:?} side", s.label(p), s.label(q)).unwrap();
    }
    writeln!(text, "aperiodic: {}", yes_no(aperiodic)).unwrap();
    writeln!(text, "completely 0-simple: {}", yes_no(c0s)).unwrap();
    let mut rees_json = Value::Null;
    if let Some(r) = &rees {
        let group_ref = format!("H({})", s.label(r.group_elements[r.spec.identity]));
        let spec_text = to_rees_string(&r.spec, &group_ref);
        writeln!(
            text,
            "rees matrix: {} x {} over a group of order {}",
            r.spec.rows(),
            r.spec.cols(),
            r.spec.group.order()
        )
        .unwrap();
        for line in spec_text.lines() {
            writeln!(text, "  {line}").unwrap();
        }
        rees_json = json!({
            "rows": r.spec.rows(),
            "cols": r.spec.cols(),
            "group_order": r.spec.group.order(),
            "group_elements": r.group_elements.iter().map(|&x| s.label(x)).collect::<Vec<_>>(),
            "sandwich": r.spec.sandwich,
        });
    }
    let json = json!({
        "order": s.order(),
        "idempotents": idempotents,
        "classes": { "R": counts[0], "L": counts[1], "H": counts[2], "D": counts[3] },
        "e_separable": sep.separable,
        "separation_failure": sep.failure.map(|(p, q, side)| json!({ "p": p, "q": q, "side": format!("{side:?}").to_lowercase() })),
        "aperiodic": aperiodic,
        "completely_0_simple": c0s,
        "rees": rees_json,
    });
    Outcome::new(Status::Affirmative, cfg, text, json)
}

pub fn cmd_certificate(cfg: &CliConfig, word: &str) -> Outcome {
    let w = match parse_word(word) {
        Ok(w) => w,
        Err(e) => return Outcome::error(Status::InputError, cfg, e.to_string()),
    };
    let budget = cfg.step_budget.unwrap_or_else(|| default_step_budget(&w));
    match regularity_certificate_with_budget(&w, budget) {
        Ok((middle, trace)) => {
            if let Err(e) = trace.validate() {
                return Outcome::error(Status::Internal, cfg, format!("derived trace does not replay: {e}"));
            }
            let text = format!("w' = {middle}\nsteps: {}\n{}", trace.steps.len(), trace.to_text());
            let json = json!({
                "word": w.to_string(),
                "middle": middle.to_string(),
                "steps": trace.steps.len(),
                "valid": true,
                "trace": trace.to_text(),
            });
            Outcome::new(Status::Affirmative, cfg, text, json)
        }
        Err(LemmaError::NotConnected(w)) => {
            let text = format!("not connected: {w}\n");
            Outcome::new(Status::Negative, cfg, text, json!({ "word": w.to_string(), "error": "NotConnected" }))
        }
        Err(e) => Outcome::error(Status::Internal, cfg, e.to_string()),
    }
}

pub fn cmd_graph(cfg: &CliConfig, word: &str) -> Outcome {
    let w = match parse_word(word) {
        Ok(w) => w,
        Err(e) => return Outcome::error(Status::InputError, cfg, e.to_string()),
    };
    let g = word_graph(&w);
    Outcome::new(Status::Affirmative, cfg, g.edge_list(), graph_json(&g))
}

pub fn cmd_build(cfg: &CliConfig, expression: &str, output: Option<&std::path::Path>) -> Outcome {
    let s = match build_expression(expression) {
        Ok(s) => s,
        Err(e) => return Outcome::error(Status::InputError, cfg, e.to_string()),
    };
    let table = to_sgp_string(&s);
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &table) {
                return Outcome::error(Status::InputError, cfg, format!("cannot write {}: {e}", path.display()));
            }
            let text = format!("wrote {} (order {})\n", path.display(), s.order());
            Outcome::new(
                Status::Affirmative,
                cfg,
                text,
                json!({ "path": path.display().to_string(), "order": s.order() }),
            )
        }
        None => Outcome::new(Status::Affirmative, cfg, table.clone(), json!({ "order": s.order(), "sgp": table })),
    }
}
