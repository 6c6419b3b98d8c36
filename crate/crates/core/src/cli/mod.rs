//! Command-line front end. `execute` returns the exit code: 0 on success,
//! 1 when a verification fails, 2 on invalid input.

pub mod suite;

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::invariants::{cell_invariants, twisted_sectors, walk_invariants, TwistRule};
use crate::motive::{
    e_specialize, mirror_check, naive_motive, stack_dimension, stringy_motive, HandleTwists, StackSpec, TwistSpec,
};
use crate::oracle::{ff_count_rank1, FiniteFieldSpec};
use crate::rootsys::{Isogeny, RootDatum, WordSection};
use crate::walks::{cell_word, enumerate_walks, CellIndex, Handle, InstructionWord, Puncture, Step, Walk};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Directory for JSON reports when `--output` is not given.
pub const OUTPUT_DIR_ENV: &str = "CHARSTACK_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "charstack", version, about = "Walks, lattice invariants and motives of character stacks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate or validate walks of an instruction word.
    Walks(WalksArgs),
    /// Lattice invariants of walks, optionally inside a cell.
    Invariants(InvariantsArgs),
    /// Naive motive of a character stack.
    Motive(StackArgs),
    /// Stringy motive for a twist F.
    Stringy(StackArgs),
    /// Compare the stringy motive of G/F with that of its dual.
    Mirror(StackArgs),
    /// Finite field point count for SL2.
    Oracle(OracleArgs),
    /// Run the golden checks and invariant sweeps.
    VerifyPaper(SuiteArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Cartan type, e.g. A2, B3, G2.
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long, value_enum, default_value_t = IsogenyArg::Sc)]
    pub isogeny: IsogenyArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// JSON report path; defaults to $CHARSTACK_OUTPUT_DIR/<verb>.json.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsogenyArg {
    Sc,
    Ad,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionArg {
    LexLeast,
    LexGreatest,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistsArg {
    /// Refuse where the handle twists matter.
    Unspecified,
    /// Take every handle twist to be e and flag the result.
    Identity,
}

#[derive(Args, Debug, Clone)]
pub struct WalksArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated letters: a1,a2,.. or a,b,..
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    #[arg(long, default_value = "e")]
    pub from: String,
    /// Keep only walks ending here.
    #[arg(long)]
    pub to: Option<String>,
    /// Validate one walk given as U/S/D steps instead of enumerating.
    #[arg(long)]
    pub steps: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct CellArgs {
    /// Handle `pi1:pi2[:w]`, repeatable; elements as reduced words (s1s2, e).
    #[arg(long = "handle")]
    pub handles: Vec<String>,
    /// Nice puncture `levi:pi`, repeatable; `-` for the empty Levi.
    #[arg(long = "puncture")]
    pub punctures: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct InvariantsArgs {
    #[command(flatten)]
    pub common: Common,
    /// Instruction word; derived from the cell when omitted.
    #[arg(long)]
    pub word: Option<String>,
    #[arg(long, default_value = "e")]
    pub from: String,
    /// A single walk as U/S/D steps; all walks when omitted.
    #[arg(long)]
    pub steps: Option<String>,
    #[command(flatten)]
    pub cell: CellArgs,
    /// Twist subgroup F for the sector counts: trivial, full, or a central
    /// element in t(Z) coordinates such as 1/2,0.
    #[arg(long = "F")]
    pub f: Option<String>,
    #[arg(long, value_enum, default_value_t = TwistsArg::Unspecified)]
    pub twists: TwistsArg,
}

#[derive(Args, Debug, Clone)]
pub struct StackArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, alias = "genus", default_value_t = 0)]
    pub g: usize,
    /// Number of punctures, the last one regular.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Levi of a nice puncture, in order, e.g. `a1` or `-`; missing ones are empty.
    #[arg(long = "levi", allow_hyphen_values = true)]
    pub levis: Vec<String>,
    #[arg(long = "F", default_value = "trivial")]
    pub f: String,
    #[arg(long, value_enum, default_value_t = TwistsArg::Unspecified)]
    pub twists: TwistsArg,
    #[arg(long, value_enum, default_value_t = SectionArg::LexLeast)]
    pub section: SectionArg,
    /// Also print the value at these q.
    #[arg(long, value_delimiter = ',')]
    pub eval: Vec<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long, alias = "genus", default_value_t = 1)]
    pub g: usize,
    /// Eigenvalues of the regular punctures as field table indices.
    #[arg(long, value_delimiter = ',', required = true)]
    pub zeta: Vec<u8>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 300)]
    pub budget_secs: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// What a verb produced: the JSON result, a human rendering, and whether
/// its verification passed.
struct Outcome {
    result: Value,
    table: String,
    pass: bool,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    execute(&cli.command, stdout, stderr)
}

pub fn execute(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (verb, out) = match cmd {
        Command::Walks(a) => ("walks", &a.common.out),
        Command::Invariants(a) => ("invariants", &a.common.out),
        Command::Motive(a) => ("motive", &a.common.out),
        Command::Stringy(a) => ("stringy", &a.common.out),
        Command::Mirror(a) => ("mirror", &a.common.out),
        Command::Oracle(a) => ("oracle", &a.out),
        Command::VerifyPaper(a) => ("verify-paper", &a.out),
    };
    let (config, outcome) = match dispatch(cmd) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "verb": verb,
        "config": config,
        "result": outcome.result,
        "pass": outcome.pass,
    });
    let text = serde_json::to_string_pretty(&doc).expect("json");
    let target = out.output.clone().or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("{verb}.json"))));
    if let Some(path) = target {
        if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    let _ = if out.json { writeln!(stdout, "{text}") } else { write!(stdout, "{}", outcome.table) };
    if outcome.pass {
        0
    } else {
        1
    }
}

fn dispatch(cmd: &Command) -> Result<(Value, Outcome)> {
    match cmd {
        Command::Walks(a) => walks(a),
        Command::Invariants(a) => invariants(a),
        Command::Motive(a) => motive(a),
        Command::Stringy(a) => stringy(a),
        Command::Mirror(a) => mirror(a),
        Command::Oracle(a) => oracle(a),
        Command::VerifyPaper(a) => verify_paper(a),
    }
}

fn datum(c: &Common) -> Result<RootDatum> {
    let iso = match c.isogeny {
        IsogenyArg::Sc => Isogeny::SimplyConnected,
        IsogenyArg::Ad => Isogeny::Adjoint,
    };
    RootDatum::parse(&c.ty, iso)
}

fn common_json(c: &Common) -> Value {
    json!({"type": c.ty, "isogeny": format!("{:?}", c.isogeny).to_lowercase(), "jobs": c.out.jobs})
}

fn parse_steps(s: &str) -> Result<Vec<Step>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(Step::parse)
        .collect()
}

fn steps_string(w: &Walk) -> String {
    w.steps().iter().map(|s| s.tag()).collect::<Vec<_>>().join(" ")
}

fn walks(a: &WalksArgs) -> Result<(Value, Outcome)> {
    let d = datum(&a.common)?;
    let word = InstructionWord::new(d.parse_word(&a.word)?);
    let start = d.parse_element(&a.from)?;
    let end = a.to.as_deref().map(|s| d.parse_element(s)).transpose()?;
    let config = json!({
        "datum": common_json(&a.common),
        "word": a.word, "from": a.from, "to": a.to, "steps": a.steps,
    });
    let list = match &a.steps {
        Some(s) => {
            let w = Walk::from_steps(&d, word, start, parse_steps(s)?)
                .map_err(|v| Error::InvalidInput(format!("not a walk: {v}")))?;
            if end.is_some_and(|e| e != *w.end()) {
                return Err(Error::InvalidInput("walk does not end at --to".into()));
            }
            vec![w]
        }
        None => enumerate_walks(&d, &word, &start, end.as_ref())?,
    };
    let mut table = format!("{} walk(s)\n", list.len());
    for (i, w) in list.iter().enumerate() {
        let (p, pi) = w.track_words(&d);
        table.push_str(&format!("#{}  {}\n  p : {}\n  pi: {}\n", i + 1, steps_string(w), p.join(" "), pi.join(" ")));
    }
    let result = json!({"count": list.len(), "walks": list.iter().map(|w| w.to_json(&d)).collect::<Vec<_>>()});
    Ok((config, Outcome { result, table, pass: true }))
}

fn parse_levi(d: &RootDatum, s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(vec![]);
    }
    let mut l = d.parse_word(s)?;
    l.sort_unstable();
    l.dedup();
    Ok(l)
}

fn parse_cell(d: &RootDatum, c: &CellArgs) -> Result<CellIndex> {
    let mut cell = CellIndex::default();
    for h in &c.handles {
        let parts: Vec<&str> = h.split(':').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(Error::InvalidInput(format!("handle {h:?} is not pi1:pi2[:w]")));
        }
        let twist = parts.get(2).map_or(Ok(d.identity()), |w| d.parse_element(w))?;
        cell.handles.push(Handle { pi1: d.parse_element(parts[0])?, pi2: d.parse_element(parts[1])?, twist });
    }
    for p in &c.punctures {
        let (levi, rep) =
            p.split_once(':').ok_or_else(|| Error::InvalidInput(format!("puncture {p:?} is not levi:pi")))?;
        cell.punctures.push(Puncture { levi: parse_levi(d, levi)?, rep: d.parse_element(rep)? });
    }
    Ok(cell)
}

fn rule(t: TwistsArg) -> TwistRule {
    match t {
        TwistsArg::Unspecified => TwistRule::Unknown,
        TwistsArg::Identity => TwistRule::AssumeIdentity,
    }
}

fn invariants(a: &InvariantsArgs) -> Result<(Value, Outcome)> {
    let d = datum(&a.common)?;
    let cell = parse_cell(&d, &a.cell)?;
    let in_cell = cell.genus() > 0 || !cell.punctures.is_empty();
    let derived = cell_word(&d, &cell, WordSection::LexLeast)?.unipotent_word;
    let word = match &a.word {
        Some(w) => {
            let w = InstructionWord::new(d.parse_word(w)?);
            if in_cell && w != derived {
                return Err(Error::InvalidInput(format!("--word differs from the cell word {derived}")));
            }
            w
        }
        None if in_cell => derived,
        None => return Err(Error::InvalidInput("give --word or a cell".into())),
    };
    let start = d.parse_element(&a.from)?;
    let list = match &a.steps {
        Some(s) => vec![Walk::from_steps(&d, word.clone(), start, parse_steps(s)?)
            .map_err(|v| Error::InvalidInput(format!("not a walk: {v}")))?],
        None if in_cell => enumerate_walks(&d, &word, &d.identity(), Some(&d.identity()))?,
        None => enumerate_walks(&d, &word, &start, None)?,
    };
    let f = a.f.as_deref().map(|s| TwistSpec::parse(&d, s)).transpose()?;
    let config = json!({
        "datum": common_json(&a.common),
        "word": word.to_string(), "from": a.from, "steps": a.steps,
        "cell": cell.to_json(&d), "F": a.f, "twists": format!("{:?}", a.twists).to_lowercase(),
    });
    let mut rows = Vec::new();
    let mut table = format!("{} walk(s) of {word}\n", list.len());
    for w in &list {
        let wi = walk_invariants(&d, w);
        table.push_str(&format!(
            "{}  surjective={} Z(p)={} pi1(p)={} S(p)={}",
            steps_string(w),
            wi.surjective,
            wi.z_p,
            wi.pi1_p,
            wi.s_p.group().map(|g| g.to_string()).unwrap_or_else(|_| "infinite".into())
        ));
        let mut row = json!({"steps": steps_string(w), "walk": wi.to_json()});
        if in_cell {
            let ci = cell_invariants(&d, &cell, w)?;
            table.push_str(&format!(" | cell surjective={} pi1_beta={} Z_beta={}", ci.surjective, ci.pi1_beta, ci.z_beta));
            row["cell"] = ci.to_json();
            if let (Some(f), true) = (&f, ci.surjective) {
                let ts = twisted_sectors(&d, &cell, w, &f.subgroup(&d), rule(a.twists))?;
                table.push_str(&format!(" m1={} m2={}", ts.m1, ts.m2));
                row["sectors"] = ts.to_json();
            }
        }
        table.push('\n');
        rows.push(row);
    }
    Ok((config, Outcome { result: json!({"walks": rows}), table, pass: true }))
}

fn stack_spec(a: &StackArgs) -> Result<StackSpec> {
    let d = datum(&a.common)?;
    if a.k == 0 {
        return Err(Error::InvalidInput("k must be at least 1: the last puncture is regular".into()));
    }
    if a.levis.len() > a.k - 1 {
        return Err(Error::InvalidInput(format!("{} Levis given for {} nice punctures", a.levis.len(), a.k - 1)));
    }
    let mut levis = a.levis.iter().map(|l| parse_levi(&d, l)).collect::<Result<Vec<_>>>()?;
    levis.resize(a.k - 1, vec![]);
    let twist = TwistSpec::parse(&d, &a.f)?;
    let section = match a.section {
        SectionArg::LexLeast => WordSection::LexLeast,
        SectionArg::LexGreatest => WordSection::LexGreatest,
    };
    let twists = match a.twists {
        TwistsArg::Unspecified => HandleTwists::Unspecified,
        TwistsArg::Identity => HandleTwists::AssumeIdentity,
    };
    Ok(StackSpec::new(d, a.g, levis)?
        .with_twist(twist)
        .with_section(section)
        .with_handle_twists(twists)
        .with_jobs(a.common.out.jobs))
}

fn stack_config(a: &StackArgs, spec: &StackSpec) -> Value {
    let mut c = spec.to_json();
    c["jobs"] = json!(a.common.out.jobs);
    c["eval"] = json!(a.eval);
    c
}

fn evals(m: &crate::motive::MotiveClass, qs: &[i64]) -> (Value, String) {
    let vals: Vec<(i64, BigRational)> = qs.iter().map(|&q| (q, m.eval_int(q))).collect();
    let text = vals.iter().map(|(q, v)| format!("  at q={q}: {v}\n")).collect();
    (json!(vals.iter().map(|(q, v)| json!({"q": q, "value": crate::matrix::rat_json(v)})).collect::<Vec<_>>()), text)
}

fn motive(a: &StackArgs) -> Result<(Value, Outcome)> {
    let spec = stack_spec(a)?;
    let m = naive_motive(&spec)?;
    let (ev, evt) = evals(&m, &a.eval);
    let d = stack_dimension(&spec);
    let table = format!(
        "naive motive: {m}\nE-polynomial: {}\ndimension d = {d}, degree {}, palindromic {}\n{evt}",
        e_specialize(&m),
        m.degree().map_or("-".into(), |x| x.to_string()),
        m.is_palindromic()
    );
    let result = json!({
        "motive": m.to_json(), "display": m.to_string(), "e_polynomial": e_specialize(&m).to_string(),
        "dimension": d, "degree": m.degree(), "palindromic": m.is_palindromic(), "evaluations": ev,
    });
    Ok((stack_config(a, &spec), Outcome { result, table, pass: true }))
}

fn stringy(a: &StackArgs) -> Result<(Value, Outcome)> {
    let spec = stack_spec(a)?;
    let s = stringy_motive(&spec)?;
    let (ev, evt) = evals(&s.class, &a.eval);
    let table = format!(
        "stringy motive: {}\nvalidity: {}{}\n{} contributing cell walks\n{evt}",
        s.class,
        s.validity.tag(),
        if s.identity_convention { " (handle twists taken as e)" } else { "" },
        s.terms.len()
    );
    let mut result = s.to_json(&spec.datum);
    result["evaluations"] = ev;
    Ok((stack_config(a, &spec), Outcome { result, table, pass: true }))
}

fn mirror(a: &StackArgs) -> Result<(Value, Outcome)> {
    let spec = stack_spec(a)?;
    let (r, dual) = mirror_check(&spec)?;
    let mut table = format!(
        "G/F:   {}\ndual:  {}\nequal: {}  validity: {}\n",
        r.lhs.class,
        r.rhs.class,
        r.equal(),
        r.validity().tag()
    );
    if let Some((e, l, rr)) = r.first_difference() {
        table.push_str(&format!("first difference at q^{e}: {l} vs {rr}\n"));
    }
    let mut config = stack_config(a, &spec);
    config["dual_type"] = json!(dual.cartan_type().to_string());
    Ok((config, Outcome { result: r.to_json(&spec.datum, &dual), table, pass: r.equal() }))
}

fn oracle(a: &OracleArgs) -> Result<(Value, Outcome)> {
    let spec = FiniteFieldSpec { q: a.q, genus: a.g, eigenvalues: a.zeta.clone() };
    let count = ff_count_rank1(&spec)?;
    let d = RootDatum::parse("A1", Isogeny::SimplyConnected)?;
    let m = naive_motive(&StackSpec::new(d, a.g, vec![vec![]; a.zeta.len() - 1])?)?;
    let expected = m.eval_int(a.q as i64);
    let pass = count == expected;
    let table = format!("count ratio over F_{}: {count}\nnaive motive {m} at q={}: {expected}\nagree: {pass}\n", a.q, a.q);
    let config = json!({"q": a.q, "genus": a.g, "zeta": a.zeta, "jobs": a.out.jobs});
    let result = json!({
        "ratio": crate::matrix::rat_json(&count),
        "motive": m.to_json(),
        "motive_value": crate::matrix::rat_json(&expected),
        "agree": pass,
    });
    Ok((config, Outcome { result, table, pass }))
}

fn verify_paper(a: &SuiteArgs) -> Result<(Value, Outcome)> {
    let report = suite::verify_paper_suite(Duration::from_secs(a.budget_secs));
    let mut table = String::new();
    for c in &report.checks {
        table.push_str(&format!(
            "[{}] {} ({:.2}s): {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.elapsed.as_secs_f64(),
            c.detail
        ));
    }
    if report.overrun {
        table.push_str(&format!("budget of {}s exceeded\n", a.budget_secs));
    }
    let pass = report.all_pass();
    Ok((json!({"budget_secs": a.budget_secs}), Outcome { result: report.to_json(), table, pass }))
}
