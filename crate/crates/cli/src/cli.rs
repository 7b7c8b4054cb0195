//! Argument parsing, file handling and output for the `transemi` binary.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use transemi_core::graph::DEFAULT_STATE_CAP;
use transemi_core::identity::PRESETS;
use transemi_core::oracle::DEFAULT_ELEMENT_CAP;
use transemi_core::pspace_search::{outcome_label, SearchOutcome};
use transemi_core::{Caps, Error, GeneratorSet, Property, Transformation};

use crate::commands::{self, exit, CheckOutcome, ElementMode, EngineChoice, ReductionInput, ReductionKind, Timed};
use crate::crosscheck::{self, Config, Mode};
use crate::formats::{comment_header, parse_dfa, parse_dfa_list, parse_digraph, parse_generators, render_generators};
use crate::json::{instance_digest, json_report, JsonComparison, JsonElement};

#[derive(Debug, Parser)]
#[command(
    name = "transemi",
    version,
    about = "Decide properties of finite transformation semigroups given by generators"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a property of the semigroup generated by FILE.
    Check(CheckArgs),
    /// Decide whether the semigroup satisfies a quasi-identity.
    Identity(IdentityArgs),
    /// Search the semigroup for a regularizer, weak inverse or inverse of a target.
    Element(ElementArgs),
    /// Build a generator file from a DFA or digraph.
    Reduce(ReduceArgs),
    /// Compare the structural engines with the oracle on many instances.
    Crosscheck(CrosscheckArgs),
    /// List property names and quasi-identity presets.
    Properties,
}

#[derive(Debug, Args)]
struct CapArgs {
    /// Element budget for enumeration and element searches.
    #[arg(long, env = "TRANSEMI_CAP", default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: usize,
    /// State budget for tuple reachability searches.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    state_cap: u64,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps { states: self.state_cap, elements: self.cap }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Structural,
    Oracle,
    Both,
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long)]
    property: String,
    #[arg(long, value_enum, default_value = "structural")]
    engine: EngineArg,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct IdentityArgs {
    file: PathBuf,
    /// For example `idem(x1) => x1 x2 = x2 x1`, or a preset name.
    #[arg(long)]
    quasi: String,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Regularizer,
    WeakInverse,
    Inverse,
}

#[derive(Debug, Args)]
struct ElementArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// 1-based generator index.
    #[arg(long, conflicts_with = "target_file", required_unless_present = "target_file")]
    target: Option<usize>,
    /// File holding one transformation in generator format.
    #[arg(long)]
    target_file: Option<PathBuf>,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Zero,
    Nilpotent,
    Rtrivial,
    Regular,
    WeakInverse,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(value_enum)]
    kind: KindArg,
    input: PathBuf,
    output: PathBuf,
}

#[derive(Debug, Args)]
struct CrosscheckArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Every tuple of 1..=k generators of degree n instead of random samples.
    #[arg(long, conflicts_with_all = ["samples", "seed"])]
    exhaustive: bool,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long)]
    json: bool,
}

/// A failure already mapped to its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: exit::INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::UnknownName(_)) { exit::UNKNOWN_PROPERTY } else { exit::INPUT };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_generators(path: &Path) -> Result<GeneratorSet, Failure> {
    parse_generators(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Check(a) => check(a, out),
        Command::Identity(a) => identity(a, out),
        Command::Element(a) => element(a, out),
        Command::Reduce(a) => reduce(a, out),
        Command::Crosscheck(a) => run_crosscheck(a, out),
        Command::Properties => properties(out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn write_text(out: &mut dyn Write, t: &Timed) -> std::io::Result<()> {
    writeln!(
        out,
        "{}: {} ({}, {:.3} ms)",
        t.report.property,
        t.report.verdict,
        t.report.engine.as_str(),
        t.elapsed_ms
    )?;
    if let Some(w) = &t.report.witness {
        writeln!(out, "  witness: {w}")?;
    }
    Ok(())
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Outcome {
    let property: Property = a.property.parse()?;
    let g = load_generators(&a.file)?;
    let engine = match a.engine {
        EngineArg::Structural => EngineChoice::Structural,
        EngineArg::Oracle => EngineChoice::Oracle,
        EngineArg::Both => EngineChoice::Both,
    };
    let outcome = commands::check(&g, property, engine, a.caps.caps())?;
    match (&outcome, a.json) {
        (CheckOutcome::Single(t), true) => writeln!(out, "{}", to_json(&json_report(&g, &t.report, t.elapsed_ms)))?,
        (CheckOutcome::Single(t), false) => write_text(out, t)?,
        (CheckOutcome::Both { structural, oracle }, true) => {
            let cmp = JsonComparison {
                property: property.name().to_string(),
                structural: json_report(&g, &structural.report, structural.elapsed_ms),
                oracle: json_report(&g, &oracle.report, oracle.elapsed_ms),
                agree: outcome.agree(),
            };
            writeln!(out, "{}", to_json(&cmp))?
        }
        (CheckOutcome::Both { structural, oracle }, false) => {
            write_text(out, structural)?;
            write_text(out, oracle)?;
            if !outcome.agree() {
                writeln!(out, "DISAGREEMENT")?;
            }
        }
    }
    Ok(outcome.exit_code())
}

fn identity(a: IdentityArgs, out: &mut dyn Write) -> Outcome {
    let q = commands::parse_quasi_identity(&a.quasi)?;
    let g = load_generators(&a.file)?;
    let t = commands::identity(&g, &q, a.caps.caps())?;
    if a.json {
        writeln!(out, "{}", to_json(&json_report(&g, &t.report, t.elapsed_ms)))?;
    } else {
        write_text(out, &t)?;
    }
    Ok(exit::of(t.report.verdict))
}

fn element_target(a: &ElementArgs, g: &GeneratorSet) -> Result<Transformation, Failure> {
    if let Some(k) = a.target {
        if k == 0 || k > g.len() {
            return Err(Failure::input(format!("target {k} is not a generator index in 1..={}", g.len())));
        }
        return Ok(g.get(k - 1).clone());
    }
    let path = a.target_file.as_deref().expect("clap requires a target");
    let t = load_generators(path)?;
    if t.len() != 1 {
        return Err(Failure::input(format!("{}: expected exactly one transformation", path.display())));
    }
    if t.degree() != g.degree() {
        return Err(Failure::input(format!("target has degree {}, semigroup has degree {}", t.degree(), g.degree())));
    }
    Ok(t.get(0).clone())
}

fn element(a: ElementArgs, out: &mut dyn Write) -> Outcome {
    let g = load_generators(&a.file)?;
    let target = element_target(&a, &g)?;
    let mode = match a.mode {
        ModeArg::Regularizer => ElementMode::Regularizer,
        ModeArg::WeakInverse => ElementMode::WeakInverse,
        ModeArg::Inverse => ElementMode::Inverse,
    };
    let start = std::time::Instant::now();
    let outcome = commands::element(&g, mode, &target, a.caps.cap)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    if a.json {
        let label = match &outcome {
            SearchOutcome::Found(_) => "FOUND",
            SearchOutcome::NotFound => "NONE",
            SearchOutcome::Undecided { .. } => "UNDECIDED",
        };
        let report = JsonElement {
            mode: mode.name().to_string(),
            target,
            outcome: label.to_string(),
            witness: outcome.found().cloned(),
            elapsed_ms,
            instance_sha256: instance_digest(&g),
        };
        writeln!(out, "{}", to_json(&report))?;
    } else {
        writeln!(out, "{} of {target}: {}", mode.name(), outcome_label(&outcome))?;
    }
    Ok(ElementMode::exit_code(&outcome))
}

fn reduce(a: ReduceArgs, out: &mut dyn Write) -> Outcome {
    let text = read(&a.input)?;
    let located = |e: crate::formats::FormatError| Failure::input(format!("{}: {e}", a.input.display()));
    let (kind, input) = match a.kind {
        KindArg::Zero => (ReductionKind::Zero, ReductionInput::Dfa(parse_dfa(&text).map_err(located)?)),
        KindArg::Nilpotent => {
            let d = parse_dfa(&text).map_err(located)?;
            if d.is_final(d.initial()) {
                return Err(Failure::input(
                    "precondition violated: initial state must not be final (the language contains the empty word, so it is nonempty)",
                ));
            }
            (ReductionKind::Nilpotent, ReductionInput::Dfa(d))
        }
        KindArg::Rtrivial => (ReductionKind::RTrivial, ReductionInput::Digraph(parse_digraph(&text).map_err(located)?)),
        KindArg::Regular => (ReductionKind::Regular, ReductionInput::Dfas(parse_dfa_list(&text).map_err(located)?)),
        KindArg::WeakInverse => {
            (ReductionKind::WeakInverse, ReductionInput::Dfas(parse_dfa_list(&text).map_err(located)?))
        }
    };
    let r = commands::reduce(kind, &input)?;
    let mut header = format!("generated from {}\n{}", a.input.display(), r.header);
    if let (ReductionKind::WeakInverse, Some(b)) = (kind, &r.target) {
        let target_path = target_path(&a.output);
        let target = GeneratorSet::with_names(vec![b.clone()], vec![Some("b".to_string())])?;
        std::fs::write(&target_path, comment_header("target b") + &render_generators(&target))?;
        header.push_str(&format!("\ntarget: {}", target_path.display()));
    }
    std::fs::write(&a.output, comment_header(&header) + &render_generators(&r.generators))?;
    let count = r.generators.len();
    let plural = if count == 1 { "" } else { "s" };
    writeln!(out, "wrote {} ({count} generator{plural} of degree {})", a.output.display(), r.generators.degree())?;
    Ok(exit::TRUE)
}

/// Where `reduce weak-inverse` puts the target: `OUT.target`.
pub fn target_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".target");
    PathBuf::from(s)
}

fn run_crosscheck(a: CrosscheckArgs, out: &mut dyn Write) -> Outcome {
    if a.n == 0 || a.k == 0 {
        return Err(Failure::input("--n and --k must be positive"));
    }
    let mode = if a.exhaustive { Mode::Exhaustive } else { Mode::Random { samples: a.samples, seed: a.seed } };
    let config = Config { n: a.n, k: a.k, mode, caps: a.caps.caps() };
    let summary = crosscheck::crosscheck(&config);
    if a.json {
        writeln!(out, "{}", to_json(&summary))?;
    } else {
        writeln!(
            out,
            "{} instances ({} skipped), {} disagreements, {}/{} witnesses failed, {} weak-inverse failures, {} degree-bound failures",
            summary.instances,
            summary.skipped_instances,
            summary.disagreements,
            summary.witness_failures,
            summary.witnesses_checked,
            summary.weak_inverse_failures,
            summary.degree_bound_failures
        )?;
        for (name, t) in &summary.properties {
            writeln!(out, "  {name:<20} agree {:>6}  disagree {:>4}  skipped {:>4}", t.agree, t.disagree, t.skipped)?;
        }
        for d in &summary.first_disagreements {
            writeln!(
                out,
                "  DISAGREE {} on {}: structural {} oracle {}",
                d.property, d.instance, d.structural, d.oracle
            )?;
        }
        for f in &summary.first_failures {
            writeln!(out, "  FAIL {f}")?;
        }
    }
    Ok(if summary.passed() { exit::TRUE } else { exit::DISAGREEMENT })
}

fn properties(out: &mut dyn Write) -> Outcome {
    for p in Property::ALL {
        let note = if p.has_structural_engine() { "" } else { " (oracle only)" };
        writeln!(out, "{}{note}", p.name())?;
    }
    writeln!(out)?;
    writeln!(out, "quasi-identity presets:")?;
    for name in PRESETS {
        writeln!(out, "  {name}")?;
    }
    Ok(exit::TRUE)
}
