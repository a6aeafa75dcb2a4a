//! Command-line surface.
//!
//! Exit codes: 0 on success, 1 when a solver finds no solution (the empty set
//! is still printed), 2 on usage, parse and domain errors.

use std::io::Write;

use cayley_core::lab::{law_by_id, scan_level, span_experiment};
use cayley_core::oracle::{oracle_solve_consim, oracle_solve_sim, zero_divisor_search};
use cayley_core::solvers::{
    canonical_form, nth_root, similarity_class, solve_conj_transform, solve_consim, solve_sim, solve_xax, sqrt,
    SolutionSet,
};
use cayley_core::{structure_table, Element, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::error::Error;
use crate::expr::{common_setting, parse_expr, Backend, FromLiteral};
use crate::format::{
    element_json, element_text, law_report_json, nullspace_json, solution_set_json, solution_set_text, span_report_json,
    to_json_string, Emit,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cayley", version, about = "Cayley-Dickson algebra calculator and equation solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Algebra level n (dimension 2^n); inferred from the inputs when omitted.
    #[arg(long, global = true)]
    level: Option<u32>,
    #[arg(long, global = true, value_enum)]
    backend: Option<BackendArg>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Pair {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Also print the exact kernel (solve-sim and solve-consim, exact backend).
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct Single {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the signed multiplication table of the basis units.
    Table,
    /// Solve a x = x b.
    SolveSim(Pair),
    /// Solve a x = conj(x) b.
    SolveConsim(Pair),
    /// Solve conj(x) a x = b.
    SolveConjTransform(Pair),
    /// Solve x a x = b.
    SolveXax(Pair),
    /// Square roots of a.
    Sqrt(Single),
    /// The m-th roots of a (float backend).
    Root {
        #[command(flatten)]
        a: Single,
        #[arg(long)]
        m: u32,
    },
    /// Similarity invariants and canonical complex form of a.
    Classify(Single),
    /// Check every algebraic law at one level (or levels 0 to 5).
    IdentityScan,
    /// Compare the two particular solutions of a x = x b with the full kernel.
    SpanExperiment,
    /// Look for a pair of nonzero elements with zero product.
    ZeroDivisors {
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
}

const DEFAULT_TRIALS: usize = 100;
const DEFAULT_SCAN_LEVELS: std::ops::RangeInclusive<u32> = 0..=5;

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn backend(&self) -> Option<Backend> {
        self.cli.backend.map(|b| match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        })
    }

    fn json(&self) -> bool {
        self.cli.output == Output::Json
    }

    fn emit(&mut self, json: Json, text: String) -> Result<(), Error> {
        let s = if self.json() { to_json_string(&json) } else { text };
        writeln!(self.out, "{s}").map_err(|e| Error::Output(e.kind()))
    }

    fn emit_set<S: Emit>(&mut self, set: &SolutionSet<S>) -> Result<i32, Error> {
        self.emit(solution_set_json(set), solution_set_text(set))?;
        Ok(if set.is_empty() { EXIT_NO_SOLUTION } else { EXIT_OK })
    }
}

/// Parses the given inputs together so they share one level and backend.
fn elements<S: FromLiteral>(texts: &[&str], level: u32) -> Result<Vec<Element<S>>, Error> {
    texts.iter().map(|t| parse_expr(t)?.eval(level)).collect()
}

fn setting(texts: &[&str], ctx: &Ctx) -> Result<(u32, Backend), Error> {
    let exprs = texts.iter().map(|t| parse_expr(t)).collect::<Result<Vec<_>, _>>()?;
    common_setting(&exprs.iter().collect::<Vec<_>>(), ctx.cli.level, ctx.backend())
}

fn pair_solver<S: Emit + FromLiteral>(cmd: &Command, p: &Pair, level: u32, ctx: &mut Ctx) -> Result<i32, Error> {
    let v = elements::<S>(&[&p.a, &p.b], level)?;
    let (a, b) = (&v[0], &v[1]);
    let set = match cmd {
        Command::SolveSim(_) => solve_sim(a, b)?,
        Command::SolveConsim(_) => solve_consim(a, b)?,
        Command::SolveConjTransform(_) => solve_conj_transform(a, b)?,
        _ => solve_xax(a, b)?,
    };
    if !p.oracle {
        return ctx.emit_set(&set);
    }
    if !S::EXACT {
        return Err(Error::Usage("--oracle needs the exact backend".into()));
    }
    let q = elements::<Rational>(&[&p.a, &p.b], level)?;
    let kernel = match cmd {
        Command::SolveSim(_) => oracle_solve_sim(&q[0], &q[1])?,
        Command::SolveConsim(_) => oracle_solve_consim(&q[0], &q[1])?,
        _ => return Err(Error::Usage("--oracle applies to solve-sim and solve-consim".into())),
    };
    let json = json!({ "solution_set": solution_set_json(&set), "nullspace": nullspace_json(&kernel) });
    let mut text = solution_set_text(&set);
    text.push_str(&format!("\noracle kernel dimension: {}", kernel.dimension()));
    for x in &kernel.basis {
        text.push_str(&format!("\n  {}", element_text(x)));
    }
    ctx.emit(json, text)?;
    Ok(if set.is_empty() { EXIT_NO_SOLUTION } else { EXIT_OK })
}

fn single<S: Emit + FromLiteral>(cmd: &Command, a: &str, level: u32, ctx: &mut Ctx) -> Result<i32, Error> {
    let a = elements::<S>(&[a], level)?.remove(0);
    match cmd {
        Command::Sqrt(_) => ctx.emit_set(&sqrt(&a)?),
        _ => classify(&a, ctx),
    }
}

fn classify<S: Emit>(a: &Element<S>, ctx: &mut Ctx) -> Result<i32, Error> {
    let class = similarity_class(a);
    let (canonical, canonical_error) = match canonical_form(a) {
        Ok((c, _)) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let json = json!({
        "element": element_json(a),
        "real_part": class.real_part.json(),
        "im_norm_sq": class.im_norm_sq.json(),
        "im_norm": class.im_norm(),
        "norm_sq": a.norm_sq().json(),
        "canonical": canonical.as_ref().map(element_json),
        "canonical_error": canonical_error,
    });
    let text = [
        format!("element: {}", element_text(a)),
        format!("Re a: {}", element_text(&Element::from_scalar(0, class.real_part.clone()))),
        format!("|Im a|^2: {}", element_text(&Element::from_scalar(0, class.im_norm_sq.clone()))),
        format!("|a|^2: {}", element_text(&Element::from_scalar(0, a.norm_sq()))),
        match (&canonical, &canonical_error) {
            (Some(c), _) => format!("canonical form: {}", element_text(c)),
            (None, Some(e)) => format!("canonical form: unavailable ({e})"),
            _ => unreachable!(),
        },
    ]
    .join("\n");
    ctx.emit(json, text)?;
    Ok(EXIT_OK)
}

fn table(ctx: &mut Ctx) -> Result<i32, Error> {
    let level = ctx.cli.level.ok_or_else(|| Error::Usage("table needs --level".into()))?;
    let t = structure_table(level)?;
    let label = |sign: i8, index: usize| {
        let unit = if index == 0 { "1".to_string() } else { format!("e{index}") };
        if sign < 0 {
            format!("-{unit}")
        } else {
            unit
        }
    };
    let rows: Vec<Vec<String>> = t.rows().map(|r| r.iter().map(|s| label(s.sign, s.index)).collect()).collect();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let text = rows
        .iter()
        .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n");
    ctx.emit(json!({ "level": level, "rows": rows }), text)?;
    Ok(EXIT_OK)
}

fn identity_scan(ctx: &mut Ctx) -> Result<i32, Error> {
    let levels = match ctx.cli.level {
        Some(l) => l..=l,
        None => DEFAULT_SCAN_LEVELS,
    };
    let trials = ctx.cli.trials.unwrap_or(DEFAULT_TRIALS);
    let mut json_lines = Vec::new();
    let mut text = vec![format!("{:<28} {:>5} {:>8} {:>7}  verdict", "law", "level", "claimed", "trials")];
    for level in levels {
        for r in scan_level(level, trials, ctx.cli.seed)? {
            json_lines.push(to_json_string(&law_report_json(&r)));
            let claimed = law_by_id(r.law).is_some_and(|l| l.claimed.contains(level));
            let verdict = if r.holds() { "holds on samples" } else { "counterexample" };
            text.push(format!("{:<28} {:>5} {:>8} {:>7}  {verdict}", r.law, level, claimed, r.trials));
        }
    }
    let s = if ctx.json() { json_lines.join("\n") } else { text.join("\n") };
    writeln!(ctx.out, "{s}").map_err(|e| Error::Output(e.kind()))?;
    Ok(EXIT_OK)
}

fn span(ctx: &mut Ctx) -> Result<i32, Error> {
    let level = ctx.cli.level.ok_or_else(|| Error::Usage("span-experiment needs --level 2 or 3".into()))?;
    let report = span_experiment(level, ctx.cli.trials.unwrap_or(DEFAULT_TRIALS), ctx.cli.seed)?;
    let (equal, total) = report.tally();
    let mut text = report.to_csv();
    text.push_str(&format!("# d_pair = d_oracle in {equal} of {total} trials"));
    for row in report.discrepancies() {
        text.push_str(&format!("\n# trial {}: a = {}; b = {}", row.trial, element_text(&row.a), element_text(&row.b)));
    }
    ctx.emit(span_report_json(&report), text)?;
    Ok(EXIT_OK)
}

fn zero_divisors(budget: usize, ctx: &mut Ctx) -> Result<i32, Error> {
    let level = ctx.cli.level.ok_or_else(|| Error::Usage("zero-divisors needs --level".into()))?;
    let found = zero_divisor_search(level, budget);
    let (json, text) = match &found {
        Some((a, b)) => (
            json!({ "level": level, "found": true, "a": element_json(a), "b": element_json(b) }),
            format!("a = {}\nb = {}\na b = 0", element_text(a), element_text(b)),
        ),
        None => (json!({ "level": level, "found": false }), "no zero divisor found".to_string()),
    };
    ctx.emit(json, text)?;
    Ok(if found.is_some() { EXIT_OK } else { EXIT_NO_SOLUTION })
}

fn dispatch(ctx: &mut Ctx) -> Result<i32, Error> {
    let cmd = &ctx.cli.command;
    match cmd {
        Command::Eval { expr } => {
            let (level, backend) = setting(&[expr], ctx)?;
            match backend {
                Backend::Exact => {
                    let v = elements::<Rational>(&[expr], level)?.remove(0);
                    ctx.emit(element_json(&v), element_text(&v))?;
                }
                Backend::Float => {
                    let v = elements::<f64>(&[expr], level)?.remove(0);
                    ctx.emit(element_json(&v), element_text(&v))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Table => table(ctx),
        Command::SolveSim(p) | Command::SolveConsim(p) | Command::SolveConjTransform(p) | Command::SolveXax(p) => {
            match setting(&[&p.a, &p.b], ctx)? {
                (level, Backend::Exact) => pair_solver::<Rational>(cmd, p, level, ctx),
                (level, Backend::Float) => pair_solver::<f64>(cmd, p, level, ctx),
            }
        }
        Command::Sqrt(s) | Command::Classify(s) => match setting(&[&s.a], ctx)? {
            (level, Backend::Exact) => single::<Rational>(cmd, &s.a, level, ctx),
            (level, Backend::Float) => single::<f64>(cmd, &s.a, level, ctx),
        },
        Command::Root { a, m } => {
            if ctx.backend() == Some(Backend::Exact) {
                return Err(Error::Usage("root runs on the float backend only".into()));
            }
            let (level, _) = setting(&[&a.a], ctx)?;
            let x = elements::<f64>(&[&a.a], level)?.remove(0);
            let set = nth_root(&x, *m)?;
            ctx.emit_set(&set)
        }
        Command::IdentityScan => identity_scan(ctx),
        Command::SpanExperiment => span(ctx),
        Command::ZeroDivisors { budget } => zero_divisors(*budget, ctx),
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, out };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        // a closed pipe (`cayley ... | head`) is not an error
        Err(Error::Output(std::io::ErrorKind::BrokenPipe)) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
