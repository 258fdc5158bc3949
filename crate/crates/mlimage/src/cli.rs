//! The `mlimage` command line.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use mlimage_core::combinatorics::compositions;
use mlimage_core::linsys::{gen_system, nullspace, worked_example_blocks};
use mlimage_core::pcpoly::identities::{check_identity, Identity};
use mlimage_core::pcpoly::independence_rank;
use mlimage_core::rational::render;
use mlimage_core::{
    evaluate, AdmissiblePoly, AnyAlgebra, AnyElement, EvaluationAlgebra, GenIndex, Kind, Perm, SolveError,
    Solver,
};
use rand::Rng;
use serde_json::{json, Value};

use crate::formats::{
    admissible_from_json, element_to_json, perm_from_str, render_element, trace_to_json, witness_from_json,
    witness_to_json, Backend, FormatError,
};
use crate::parse::{parse_element, parse_pcpoly, ParseError};
use crate::random;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mlimage", version, about = "Exact witnesses for images of multilinear polynomials")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    One,
    Two,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::One => Kind::One,
            KindArg::Two => Kind::Two,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of a partially commutative polynomial.
    Normalize {
        expr: String,
        /// Number of free variables (defaults to the largest index used).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Evaluate a polynomial at an assignment read from a witness file.
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value = "weyl")]
        backend: Backend,
        #[arg(long)]
        assign: PathBuf,
        #[arg(long, default_value_t = 20)]
        probe: usize,
    },
    /// Find x1..xn and u(v) with f(x1..xn) = target and verify it.
    Solve {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value = "1")]
        target: String,
        #[arg(long, value_enum, default_value = "weyl")]
        backend: Backend,
        #[arg(long, default_value_t = 20)]
        probe: usize,
        /// Write the reduction trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Re-evaluate every intermediate lift while solving.
        #[arg(long)]
        check_lifts: bool,
    },
    /// Rank of the spanning family of admissible polynomials.
    Independence {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Print the linear system relating type-two and type-one coefficients.
    GenSystem {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        /// Word order as a 1-based image list, e.g. `[2,1,3]`.
        #[arg(long)]
        sigma: Option<String>,
        /// Lay out the n = 2, r = 1 system in worked-example form.
        #[arg(long, alias = "paper-example")]
        worked_example: bool,
    },
    /// Check a family of polynomial identities exhaustively.
    VerifyIdentities {
        #[arg(long, alias = "lemma", value_parser = parse_identity)]
        identity: Identity,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Solve random instances and verify each witness.
    CheckRandom {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "weyl")]
        backend: Backend,
        #[arg(long, default_value_t = 20)]
        probe: usize,
    },
}

/// Identity names; the numeric forms are accepted as aliases.
pub fn parse_identity(s: &str) -> Result<Identity, String> {
    match s {
        "rewrite" | "4.3" => Ok(Identity::Rewrite),
        "pi-marked" | "4.4" => Ok(Identity::PiMarked),
        "v-shift" | "4.5" => Ok(Identity::VShift),
        "pi-word" | "4.6" => Ok(Identity::PiWord),
        "binomial" | "bin" => Ok(Identity::Binomial),
        _ => Err(format!("unknown identity `{s}` (expected rewrite, pi-marked, v-shift, pi-word or binomial)")),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] mlimage_core::Error),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solve(e) if e.is_internal() => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::File { path: path.into(), source })?;
    Ok(serde_json::from_str(&text).map_err(FormatError::from)?)
}

fn emit(out: &mut dyn Write, value: &Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("JSON values serialize"))
}

/// Runs one command, writing its report to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Normalize { expr, n } => {
            let p = parse_pcpoly(expr, *n)?;
            if cli.json {
                emit(out, &json!({ "n": p.n(), "normal_form": p.render() }))?;
            } else {
                writeln!(out, "{}", p.render())?;
            }
            Ok(EXIT_OK)
        }
        Command::Eval { expr, backend, assign, probe } => {
            let alg = backend.algebra(*probe);
            let w = witness_from_json(&read_json(assign)?, &alg)?;
            let f = parse_pcpoly(expr, Some(w.arity().max(1)))?;
            let value = evaluate(&alg, &f, &w)?;
            if cli.json {
                emit(out, &json!({ "backend": backend.name(), "value": element_to_json(&value, *probe) }))?;
            } else {
                writeln!(out, "{}", render_element(&value, *probe))?;
            }
            Ok(EXIT_OK)
        }
        Command::Solve { poly, target, backend, probe, trace, check_lifts } => {
            let f = admissible_from_json(&read_json(poly)?)?;
            let alg = backend.algebra(*probe);
            let target = parse_element(target, &alg)?;
            let solution = Solver::new().check_lifts(*check_lifts).solve(&alg, &f, &target)?;
            if let Some(path) = trace {
                let text = serde_json::to_string_pretty(&trace_to_json(&solution.trace)).expect("JSON values serialize");
                std::fs::write(path, text + "\n").map_err(|source| CliError::File { path: path.clone(), source })?;
            }
            let value = evaluate(&alg, &f.expand(), &solution.witness)?;
            let verified = alg.equal(&value, &target);
            let mut doc = witness_to_json(&solution.witness, *backend, *probe);
            doc["verified"] = json!(verified);
            emit(out, &doc)?;
            Ok(if verified { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Independence { n, r, kind } => independence(cli.json, out, *n, *r, (*kind).into()),
        Command::GenSystem { n, r, kmax, sigma, worked_example } => {
            if *worked_example {
                return worked_example_report(cli.json, out);
            }
            let sigma = match sigma {
                Some(s) => perm_from_str(s)?,
                None => Perm::identity(*n),
            };
            gen_system_report(cli.json, out, &sigma, *n, *r, *kmax)
        }
        Command::VerifyIdentities { identity, n, r, kmax } => {
            let results = check_identity(*identity, *n, *r, *kmax);
            let failed = results.iter().filter(|x| !x.holds).count();
            if cli.json {
                let instances: Vec<Value> =
                    results.iter().map(|x| json!({ "instance": x.label, "holds": x.holds })).collect();
                emit(out, &json!({ "instances": instances, "failed": failed }))?;
            } else {
                for x in &results {
                    writeln!(out, "{} {}", if x.holds { "PASS" } else { "FAIL" }, x.label)?;
                }
                writeln!(out, "{} of {} instances hold", results.len() - failed, results.len())?;
            }
            Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::CheckRandom { seed, cases, n_max, backend, probe } => {
            if *n_max == 0 {
                return Err(CliError::Usage("--n-max must be at least 1".into()));
            }
            check_random(cli.json, out, *seed, *cases, *n_max, *backend, *probe)
        }
    }
}

/// `n! |B_r|` generators of type one, `n` times as many of type two.
pub fn expected_rank(n: usize, r: usize, kind: Kind) -> usize {
    let base = (1..=n).product::<usize>() * compositions(n, r).len();
    match kind {
        Kind::One => base,
        Kind::Two => base * n,
    }
}

fn independence(json: bool, out: &mut dyn Write, n: usize, r: usize, kind: Kind) -> Result<i32, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let polys: Vec<_> = AdmissiblePoly::generators(n, r, kind).iter().map(GenIndex::expand).collect();
    let rank = independence_rank(&polys);
    let expected = expected_rank(n, r, kind);
    let independent = rank == expected && polys.len() == expected;
    if json {
        emit(out, &json!({ "n": n, "r": r, "kind": kind_label(kind), "rank": rank, "expected": expected, "independent": independent }))?;
    } else {
        writeln!(
            out,
            "n={n} r={r} kind={}: rank {rank} of {expected} ({})",
            kind_label(kind),
            if independent { "independent" } else { "dependent" }
        )?;
    }
    Ok(if independent { EXIT_OK } else { EXIT_VERIFY })
}

fn kind_label(kind: Kind) -> &'static str {
    match kind {
        Kind::One => "one",
        Kind::Two => "two",
    }
}

fn render_vector(v: &[mlimage_core::Q]) -> String {
    format!("({})", v.iter().map(render).collect::<Vec<_>>().join(", "))
}

fn gen_system_report(
    json: bool,
    out: &mut dyn Write,
    sigma: &Perm,
    n: usize,
    r: usize,
    kmax: usize,
) -> Result<i32, CliError> {
    let sys = gen_system(sigma, n, r, kmax)?;
    let kernel = nullspace(&sys);
    if json {
        let rows: Vec<Value> = (0..sys.nrows())
            .map(|i| {
                json!({
                    "k": sys.rows[i].k,
                    "b": sys.rows[i].b.entries(),
                    "equation": sys.equation(i).to_string(),
                    "entries": sys.entries[i].iter().map(|(c, x)| json!([c, x.to_string()])).collect::<Vec<_>>(),
                })
            })
            .collect();
        emit(
            out,
            &json!({
                "sigma": sigma.images().iter().map(|i| i + 1).collect::<Vec<_>>(),
                "n": n, "r": r, "kmax": kmax,
                "columns": sys.columns.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "rows": rows,
                "rank": sys.rank(),
                "kernel": kernel.iter().map(|v| v.iter().map(render).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
        )?;
    } else {
        writeln!(out, "sigma = {sigma}, n = {n}, r = {r}, k = 1..{kmax}")?;
        writeln!(out, "columns: {}", sys.columns.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))?;
        for i in 0..sys.nrows() {
            writeln!(out, "k={} b={}: {}", sys.rows[i].k, sys.rows[i].b, sys.equation(i))?;
        }
        writeln!(out, "rank {} of {} columns", sys.rank(), sys.ncols())?;
        if kernel.is_empty() {
            writeln!(out, "kernel = {{0}}")?;
        } else {
            writeln!(out, "kernel dimension {}", kernel.len())?;
            for v in &kernel {
                writeln!(out, "  {}", render_vector(v))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn worked_example_report(json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let blocks = worked_example_blocks();
    let sys = gen_system(&Perm::identity(2), 2, 1, 2)?;
    let kernel_dim = nullspace(&sys).len();
    if json {
        let blocks: Vec<Value> = blocks
            .iter()
            .map(|b| json!({ "title": b.title, "equations": b.equations.iter().map(ToString::to_string).collect::<Vec<_>>() }))
            .collect();
        emit(out, &json!({ "blocks": blocks, "kernel_dimension": kernel_dim }))?;
    } else {
        for b in &blocks {
            writeln!(out, "{}:", b.title)?;
            for e in &b.equations {
                writeln!(out, "  {e}")?;
            }
        }
        if kernel_dim == 0 {
            writeln!(out, "kernel = {{0}}")?;
        } else {
            writeln!(out, "kernel dimension {kernel_dim}")?;
        }
    }
    Ok(EXIT_OK)
}

fn random_target<R: Rng>(rng: &mut R, alg: &AnyAlgebra) -> AnyElement {
    match alg {
        AnyAlgebra::Weyl(_) => AnyElement::Weyl(random::weyl_element(rng, 3)),
        AnyAlgebra::Shift(_) => AnyElement::Shift(random::shift_op(rng, 4, 4)),
        AnyAlgebra::Product(p) => AnyElement::Product(p.components().iter().map(|a| random_target(rng, a)).collect()),
    }
}

fn check_random(
    json: bool,
    out: &mut dyn Write,
    seed: u64,
    cases: usize,
    n_max: usize,
    backend: Backend,
    probe: usize,
) -> Result<i32, CliError> {
    let mut rng = random::rng(seed);
    let alg = backend.algebra(probe);
    let solver = Solver::new();
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = rng.gen_range(1..=n_max);
        let f = random::multilinear(&mut rng, n);
        let target = random_target(&mut rng, &alg);
        let verified = match solver.solve(&alg, &f, &target) {
            Ok(sol) => alg.equal(&evaluate(&alg, &f.expand(), &sol.witness)?, &target),
            Err(e) if e.is_internal() => return Err(e.into()),
            Err(e) => {
                failures.push(format!("case {case}: {e}"));
                continue;
            }
        };
        if !verified {
            failures.push(format!("case {case}: witness does not evaluate to the target (f = {})", f.expand()));
        }
    }
    if json {
        emit(out, &json!({ "seed": seed, "backend": backend.name(), "cases": cases, "failures": failures }))?;
    } else {
        for msg in &failures {
            writeln!(out, "FAIL {msg}")?;
        }
        writeln!(out, "seed {seed}: {} of {cases} verified on {}", cases - failures.len(), backend.name())?;
    }
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_VERIFY })
}
