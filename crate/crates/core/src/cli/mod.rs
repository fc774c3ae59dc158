//! Command-line front end.
//!
//! Exit codes: 0 for a definite answer (including "no Carter subgroup"),
//! 1 for usage and parse errors, 2 for capacity, budget and other engine failures.

mod paper;
pub mod report;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub use paper::verify_paper_example_script;
use report::{
    CarterView, ClassView, ConditionEView, Outcome, RunReport, SeriesView, SubgroupView,
    WitnessView,
};

use crate::carter::{carter_find, check_condition_e, nilpotent_subgroups_enum, NilpotentClass};
use crate::engine::Engine;
use crate::error::Error;
use crate::grpspec::{build, parse_spec, BuiltGroup};
use crate::group::PermGroup;
use crate::series::{chief_series, verify_chief_series};

#[derive(Parser, Debug)]
#[command(name = "carter", version, about = "Carter subgroups of permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for backtrack searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Largest group order handled by explicit enumeration.
    #[arg(long, global = true)]
    enum_budget: Option<u64>,
    /// Worker threads; all cores by default.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct Input {
    /// Spec file in the group construction language.
    #[arg(long, conflicts_with = "expr")]
    spec: Option<std::path::PathBuf>,
    /// Construction given inline.
    #[arg(long)]
    expr: Option<String>,
    /// Comma-separated named subgroups to use as normal hints; all recorded
    /// normal subgroups by default.
    #[arg(long, value_delimiter = ',')]
    series_hints: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a Carter subgroup or a witness that none exists.
    Carter(Input),
    /// Only decide existence.
    Exists(Input),
    /// Nilpotent subgroups and Carter subgroups by exhaustive search.
    Brute(Input),
    /// A chief series with its factors.
    ChiefSeries(Input),
    /// Check condition (E) along a chief series.
    ConditionE(Input),
    /// Run the checks on the degree-56 example group.
    VerifyPaperExample,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Semantic(_) => 1,
        _ => 2,
    }
}

struct Loaded {
    built: BuiltGroup,
    hints: Vec<PermGroup>,
    rendered: String,
}

fn load(input: &Input) -> std::result::Result<Loaded, (i32, String)> {
    let text = match (&input.spec, &input.expr) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| (1, format!("input: cannot read {}: {e}", path.display())))?,
        (None, Some(e)) => e.clone(),
        _ => return Err((1, "input: exactly one of --spec or --expr is required".into())),
    };
    let ast = parse_spec(&text).map_err(|e| (exit_code(&e), format!("parse: {e}")))?;
    let built = build(&ast).map_err(|e| (exit_code(&e), format!("build: {e}")))?;
    let hints = match &input.series_hints {
        None => built.normal_hints(),
        Some(names) => {
            let mut v = Vec::new();
            for n in names {
                match built.named.get(n) {
                    Some(g) => v.push(g.clone()),
                    None => return Err((1, format!("input: no named subgroup {n:?}"))),
                }
            }
            v
        }
    };
    Ok(Loaded {
        rendered: ast.to_string(),
        built,
        hints,
    })
}

fn phase(name: &'static str) -> impl Fn(Error) -> (i32, String) {
    move |e| (exit_code(&e), format!("{name}: {e}"))
}

fn run(cli: &Cli, eng: &Engine) -> std::result::Result<RunReport, (i32, String)> {
    let mut timings: Vec<(String, f64)> = Vec::new();
    let start = Instant::now();
    let (command, input, outcome) = match &cli.command {
        Command::VerifyPaperExample => {
            let view = verify_paper_example_script(eng, &mut timings)
                .map_err(phase("verify-paper-example"))?;
            ("verify-paper-example", Some("(paper_example)".to_string()), Outcome::PaperExample(Box::new(view)))
        }
        Command::Carter(i) | Command::Exists(i) => {
            let l = load(i)?;
            let o = carter_find(eng, &l.built.group, &l.hints).map_err(phase("carter"))?;
            let outcome = if matches!(cli.command, Command::Carter(_)) {
                Outcome::Carter(CarterView::of(&o))
            } else {
                Outcome::Exists {
                    status: o.status,
                    witness: o.witness.as_ref().map(WitnessView::of),
                }
            };
            let name = if matches!(cli.command, Command::Carter(_)) { "carter" } else { "exists" };
            (name, Some(l.rendered), outcome)
        }
        Command::Brute(i) => {
            let l = load(i)?;
            let e = nilpotent_subgroups_enum(eng, &l.built.group, eng.enum_budget)
                .map_err(phase("brute"))?;
            let carter: Vec<SubgroupView> = e
                .classes
                .iter()
                .filter(|c| NilpotentClass::self_normalizing(c))
                .map(|c| SubgroupView::of(&c.group))
                .collect();
            if !e.complete {
                return Err((2, "brute: enumeration budget exhausted".into()));
            }
            let outcome = Outcome::Brute {
                complete: e.complete,
                nilpotent_classes: ClassView::list(&e),
                carter_classes: carter,
            };
            ("brute", Some(l.rendered), outcome)
        }
        Command::ChiefSeries(i) => {
            let l = load(i)?;
            let s = chief_series(eng, &l.built.group, &l.hints).map_err(phase("chief-series"))?;
            verify_chief_series(eng, &l.built.group, &s).map_err(phase("chief-series"))?;
            ("chief-series", Some(l.rendered), Outcome::ChiefSeries(SeriesView::of(&s)))
        }
        Command::ConditionE(i) => {
            let l = load(i)?;
            let s = chief_series(eng, &l.built.group, &l.hints).map_err(phase("chief-series"))?;
            let r = check_condition_e(eng, &l.built.group, &s).map_err(phase("condition-e"))?;
            ("condition-e", Some(l.rendered), Outcome::ConditionE(ConditionEView::of(&r)))
        }
    };
    let mut report = RunReport::new(command, input, cli.seed, outcome);
    for (k, v) in timings {
        report.timings.insert(k, v);
    }
    report
        .timings
        .insert("total".into(), start.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

/// Human-readable rendering of a report.
pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    if let Some(i) = &r.input {
        line(format!("input: {i}"));
    }
    let carter_lines = |c: &CarterView, line: &mut dyn FnMut(String)| {
        match (&c.subgroup, &c.witness) {
            (Some(k), _) => {
                line("status: exists".into());
                line(format!("subgroup order: {}", k.order));
                line(format!("generators: {}", k.generators.join(" ")));
            }
            (None, Some(w)) => {
                line("status: not_exists".into());
                line(witness_text(w));
            }
            _ => line("status: not_exists".into()),
        }
    };
    match &r.outcome {
        Outcome::Carter(c) => carter_lines(c, &mut line),
        Outcome::Exists { status, witness } => {
            line(format!("status: {}", serde_json::to_value(status).unwrap().as_str().unwrap()));
            if let Some(w) = witness {
                line(witness_text(w));
            }
        }
        Outcome::Brute {
            nilpotent_classes,
            carter_classes,
            ..
        } => {
            line(format!("nilpotent subgroup classes: {}", nilpotent_classes.len()));
            let orders: Vec<u64> = carter_classes.iter().map(|c| c.order).collect();
            line(format!("carter classes: {} {:?}", carter_classes.len(), orders));
        }
        Outcome::ChiefSeries(s) => {
            line(format!("term orders: {:?}", s.term_orders));
            for f in &s.factors {
                if f.k == 1 {
                    line(format!("factor {} = {}", f.order, f.label));
                } else {
                    line(format!("factor {} = ({})^{}", f.order, f.label, f.k));
                }
            }
        }
        Outcome::ConditionE(c) => condition_e_lines(c, &mut line),
        Outcome::PaperExample(p) => {
            line(format!("group of order {} on {} points", p.group_order, p.degree));
            for s in &p.statements {
                let tag = if s.pass { "PASS" } else { "FAIL" };
                line(format!("statement {}: {tag}  {}", s.number, s.claim));
                for c in &s.checks {
                    line(format!("    {c}"));
                }
            }
            carter_lines(&p.carter, &mut line);
        }
    }
    out
}

fn witness_text(w: &WitnessView) -> String {
    let at = match (w.level, w.factor) {
        (Some(i), Some(j)) => format!(" at level {i}, factor {j}"),
        _ => String::new(),
    };
    format!(
        "witness{at}: Aut of order {} over {} has no Carter subgroup",
        w.group.order, w.label
    )
}

fn condition_e_lines(c: &ConditionEView, line: &mut dyn FnMut(String)) {
    line(format!("satisfied: {}", c.satisfied));
    for cell in &c.cells {
        line(format!(
            "  ({}, {}) {}: |Aut| = {}, carter: {}, by {}",
            cell.level,
            cell.factor,
            cell.label,
            cell.aut_order.map_or("-".to_string(), |o| o.to_string()),
            cell.has_carter,
            serde_json::to_value(cell.method).unwrap().as_str().unwrap()
        ));
    }
    if let Some(w) = &c.witness {
        line(witness_text(w));
    }
}

/// Outcome of one invocation: exit code, the report when one was produced,
/// and the text destined for standard output or standard error.
pub struct Invocation {
    pub code: i32,
    pub report: Option<RunReport>,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs one command without printing.
pub fn cli_run<I, S>(argv: I) -> Invocation
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let fail = |code: i32, msg: String| Invocation {
        code,
        report: None,
        stdout: String::new(),
        stderr: msg,
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                fail(1, text)
            } else {
                Invocation {
                    code: 0,
                    report: None,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut eng = Engine::new(cli.seed);
    if let Some(b) = cli.budget {
        eng = eng.with_node_budget(b);
    }
    if let Some(b) = cli.enum_budget {
        eng = eng.with_enum_budget(b);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return fail(1, format!("error: threads: {e}")),
    };
    match pool.install(|| run(&cli, &eng)) {
        Ok(report) => {
            let stdout = if cli.json {
                report.to_json()
            } else {
                render_text(&report)
            };
            Invocation {
                code: 0,
                report: Some(report),
                stdout,
                stderr: String::new(),
            }
        }
        Err((code, msg)) => fail(code, format!("error: {msg}")),
    }
}

/// Runs [`cli_run`] and prints its output. Returns the process exit code.
pub fn cli_main<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let inv = cli_run(argv);
    if !inv.stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{}", inv.stdout.trim_end());
    }
    if !inv.stderr.is_empty() {
        eprintln!("{}", inv.stderr.trim_end());
    }
    inv.code
}
