//! The `aft` command line: `check`, `solve` and `compare`.
//!
//! Exit codes: 0 success, 1 failed checks, 2 unreadable or invalid input,
//! 3 violated preconditions (e.g. intervals over a space that is not a
//! complete lattice).

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::checks::{check_framework, verify_flower_propositions, CheckConfig};
use crate::encoders::{ael, lp, wadf, Source};
use crate::engine::{ultimate_approximator, Approximator, ExactOperator, Semantics, SemanticsKind};
use crate::flower::FlowerFramework;
use crate::framework::ApproximationFramework;
use crate::interval::IntervalFramework;
use crate::order::{ElemSet, FinitePoset, DEFAULT_MAX_ELEMENTS};
use crate::report::{Report, Status};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "aft", version, about = "Approximation fixpoint theory over finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the exact space of an input and check the framework axioms.
    Check(CheckArgs),
    /// Compute fixpoint semantics of a program, theory or wADF.
    Solve(SolveArgs),
    /// Compute the semantics under two configurations and compare precision.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
struct Common {
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    common: Common,
    /// Random probes per axiom when the space is too large to enumerate.
    #[arg(long, default_value_t = CheckConfig::default().samples)]
    samples: usize,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Space::Interval)]
    space: Space,
    #[arg(long, value_enum, default_value_t = ApproximatorKind::Ultimate)]
    approximator: ApproximatorKind,
    #[arg(long, value_delimiter = ',', value_parser = parse_semantics, default_value = "kk,wf,supported,stable")]
    semantics: Vec<SemanticsKind>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    common: Common,
    /// First configuration as `SPACE[:APPROXIMATOR]`, e.g. `interval:fitting`.
    #[arg(long)]
    left: RunConfig,
    /// Second configuration, same syntax as `--left`.
    #[arg(long)]
    right: RunConfig,
    #[arg(long, value_delimiter = ',', value_parser = parse_semantics, default_value = "kk,wf,supported,stable")]
    semantics: Vec<SemanticsKind>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Interval,
    Flower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ApproximatorKind {
    Ultimate,
    Fitting,
}

/// A space together with an approximator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub space: Space,
    pub approximator: ApproximatorKind,
}

impl RunConfig {
    fn label(&self) -> String {
        format!("{}:{}", value_name(self.space), value_name(self.approximator))
    }
}

impl FromStr for RunConfig {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (space, approx) = s.split_once(':').unwrap_or((s, "ultimate"));
        Ok(RunConfig {
            space: Space::from_str(space, true)?,
            approximator: ApproximatorKind::from_str(approx, true)?,
        })
    }
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn parse_semantics(s: &str) -> std::result::Result<SemanticsKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Compare(a) => cmd_compare(a),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_) | Error::NotReliable(_) | Error::InvalidRefinement(_) | Error::NotMonotone(_) => {
            EXIT_PRECONDITION
        }
        Error::Invariant(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INPUT,
    }
}

fn read_source(path: &Path) -> Result<Source> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Source::from_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn render(format: Format, json: &Value, text: String) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(json).expect("json")),
        Format::Text => text,
    }
}

/// The exact operator of a source, and the program when the source is one.
struct Problem {
    op: ExactOperator,
    program: Option<lp::NormalLogicProgram>,
}

fn problem(source: Source, max_elements: usize) -> Result<Problem> {
    match source {
        Source::Program(p) => Ok(Problem { op: lp::lp_operator_capped(&p, max_elements)?, program: Some(p) }),
        Source::Ael(t) => Ok(Problem { op: ael::ael_operator_capped(&t, max_elements)?, program: None }),
        Source::Wadf(w) => Ok(Problem { op: wadf::wadf_operator_capped(&w, max_elements)?.1, program: None }),
        Source::Poset(_) => {
            Err(Error::Parse("a bare poset has no operator; solve needs a program, AEL theory or wADF".into()))
        }
    }
}

fn exact_space(source: &Source, max_elements: usize) -> Result<Arc<FinitePoset>> {
    match source {
        Source::Poset(spec) => Ok(Arc::new(FinitePoset::from_hasse_capped(&spec.elements, &spec.hasse, max_elements)?)),
        Source::Program(p) => lp::interpretation_lattice(p, max_elements),
        Source::Ael(t) => ael::belief_lattice(t, max_elements),
        Source::Wadf(w) => Ok(wadf::WadfSpace::new(w, max_elements)?.states),
    }
}

fn summary(report: &Report) -> &'static str {
    if !report.passed() {
        "FAIL"
    } else if report.results.iter().any(|r| r.status == Status::Sampled) {
        "pass (sampled)"
    } else {
        "pass"
    }
}

fn cmd_check(a: &CheckArgs) -> Result<(String, i32)> {
    let source = read_source(&a.common.input)?;
    let exact = exact_space(&source, a.common.max_elements)?;
    let class = exact.classify();
    let cfg = CheckConfig { samples: a.samples, seed: a.common.seed };

    let mut sections: Vec<(&str, Report)> = Vec::new();
    if class.is_complete_lattice {
        let fw = IntervalFramework::new(exact.clone())?;
        sections.push(("interval", check_framework(&fw, &cfg)));
    }
    if class.is_bounded_complete {
        let fw = FlowerFramework::new(exact.clone(), true)?;
        let mut report = check_framework(&fw, &cfg);
        report.extend(verify_flower_propositions(&fw, &cfg));
        sections.push(("flower", report));
    }

    let mut headline = class.to_string();
    for (name, report) in &sections {
        write!(headline, "; {name} framework axioms: {}", summary(report)).expect("string");
    }
    if sections.is_empty() {
        headline.push_str("; no approximation framework applies");
    }
    let mut text = format!("{headline}\n");
    for (name, report) in &sections {
        write!(text, "\n{name} framework\n{report}").expect("string");
    }
    let json = json!({
        "input": source.kind(),
        "elements": exact.len(),
        "classification": class,
        "summary": headline,
        "frameworks": sections
            .iter()
            .map(|(name, r)| (name.to_string(), json!({"status": summary(r), "results": r.to_json()})))
            .collect::<serde_json::Map<_, _>>(),
    });
    let code = if sections.is_empty() {
        EXIT_PRECONDITION
    } else if sections.iter().all(|(_, r)| r.passed()) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok((render(a.common.format, &json, text), code))
}

/// Semantics with the framework erased, so two configurations can be
/// compared through the exact elements their approximants approximate.
struct Solved {
    config: RunConfig,
    json: Value,
    text: String,
    kk: Option<ElemSet>,
    wf: Option<ElemSet>,
    supported: Option<ElemSet>,
    stable: Option<ElemSet>,
}

fn erase<F: ApproximationFramework>(
    config: RunConfig,
    a: &Approximator<'_, F>,
    kinds: &[SemanticsKind],
) -> Result<Solved> {
    let fw = a.framework();
    let s = Semantics::compute(a, kinds)?;
    Ok(Solved {
        config,
        json: s.to_json(fw),
        text: s.to_text(fw),
        kk: s.kk.as_ref().map(|x| fw.approximated(x)),
        wf: s.wf.as_ref().map(|x| fw.approximated(x)),
        supported: s.supported.clone(),
        stable: s.stable.clone(),
    })
}

fn solve(p: &Problem, config: RunConfig, kinds: &[SemanticsKind]) -> Result<Solved> {
    let exact = p.op.domain_arc().clone();
    match (config.space, config.approximator) {
        (Space::Interval, kind) => {
            let fw = IntervalFramework::new(exact).map_err(|e| match e {
                Error::Precondition(msg) => Error::Precondition(format!("{msg}; use --space flower")),
                other => other,
            })?;
            let solved = match kind {
                ApproximatorKind::Ultimate => erase(config, &ultimate_approximator(&fw, &p.op), kinds),
                ApproximatorKind::Fitting => {
                    let program = p.program.as_ref().ok_or_else(|| {
                        Error::Precondition("the fitting approximator is only defined for logic programs".into())
                    })?;
                    erase(config, &lp::fitting_approximator(program, &fw)?, kinds)
                }
            };
            solved
        }
        (Space::Flower, ApproximatorKind::Ultimate) => {
            let fw = FlowerFramework::new(exact, true)?;
            let solved = erase(config, &ultimate_approximator(&fw, &p.op), kinds);
            solved
        }
        (Space::Flower, ApproximatorKind::Fitting) => {
            Err(Error::Precondition("the fitting approximator requires --space interval".into()))
        }
    }
}

fn check_config(config: RunConfig, p: &Problem) -> Result<()> {
    if config.approximator == ApproximatorKind::Fitting {
        if p.program.is_none() {
            return Err(Error::Precondition("the fitting approximator is only defined for logic programs".into()));
        }
        if config.space != Space::Interval {
            return Err(Error::Precondition("the fitting approximator requires --space interval".into()));
        }
    }
    Ok(())
}

fn cmd_solve(a: &SolveArgs) -> Result<(String, i32)> {
    let source = read_source(&a.common.input)?;
    let kind = source.kind();
    let p = problem(source, a.common.max_elements)?;
    let config = RunConfig { space: a.space, approximator: a.approximator };
    check_config(config, &p)?;
    let solved = solve(&p, config, &a.semantics)?;
    let json = json!({
        "input": kind,
        "space": value_name(config.space),
        "approximator": value_name(config.approximator),
        "semantics": solved.json,
    });
    let text = format!("{} ({} elements)\n{}\n", config.label(), p.op.domain().len(), solved.text);
    Ok((render(a.common.format, &json, text), EXIT_OK))
}

/// `≤p` read on approximated sets: fewer candidates is more precise.
fn precision_verdict(x: &ElemSet, y: &ElemSet) -> bool {
    y.is_subset(x)
}

fn cmd_compare(a: &CompareArgs) -> Result<(String, i32)> {
    let source = read_source(&a.common.input)?;
    let p = problem(source, a.common.max_elements)?;
    check_config(a.left, &p)?;
    check_config(a.right, &p)?;
    let left = solve(&p, a.left, &a.semantics)?;
    let right = solve(&p, a.right, &a.semantics)?;
    let (l, r) = labels(a.left, a.right);
    let mut lines = vec![format!("[{l}]\n{}", left.text), format!("[{r}]\n{}", right.text)];
    let mut verdicts = serde_json::Map::new();
    let mut push = |key: &str, line: String, value: bool| {
        lines.push(format!("{line}: {value}"));
        verdicts.insert(key.to_string(), json!(value));
    };
    for (name, x, y) in [("KK", &left.kk, &right.kk), ("WF", &left.wf, &right.wf)] {
        if let (Some(x), Some(y)) = (x, y) {
            let key = name.to_lowercase();
            if x == y {
                push(&format!("{key}_equal"), format!("{name}({l}) = {name}({r})"), true);
            } else {
                push(&format!("{key}_left_leq_right"), format!("{name}({l}) ≤p {name}({r})"), precision_verdict(x, y));
                push(&format!("{key}_right_leq_left"), format!("{name}({r}) ≤p {name}({l})"), precision_verdict(y, x));
            }
        }
    }
    for (name, x, y) in [("SUP", &left.supported, &right.supported), ("ST", &left.stable, &right.stable)] {
        if let (Some(x), Some(y)) = (x, y) {
            let key = name.to_lowercase();
            if x == y {
                push(&format!("{key}_equal"), format!("{name}({l}) = {name}({r})"), true);
            } else {
                push(&format!("{key}_left_subset_right"), format!("{name}({l}) ⊆ {name}({r})"), x.is_subset(y));
                push(&format!("{key}_right_subset_left"), format!("{name}({r}) ⊆ {name}({l})"), y.is_subset(x));
            }
        }
    }
    let json = json!({
        "left": {"config": left.config.label(), "semantics": left.json},
        "right": {"config": right.config.label(), "semantics": right.json},
        "verdicts": verdicts,
    });
    Ok((render(a.common.format, &json, lines.join("\n") + "\n"), EXIT_OK))
}

/// Short names for the two sides: whatever differs between them.
fn labels(a: RunConfig, b: RunConfig) -> (String, String) {
    if a == b {
        ("left".into(), "right".into())
    } else if a.space == b.space {
        (value_name(a.approximator), value_name(b.approximator))
    } else if a.approximator == b.approximator {
        (value_name(a.space), value_name(b.space))
    } else {
        (a.label(), b.label())
    }
}
