use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qhs::closed_forms::literal_display_catalog;
use qhs::exact::Rational;
use qhs::harmonic::{zq_bruteforce, zq_dp, IndexVector, QSpec, RootSums, SumValue, DEFAULT_BRUTE_CAP};
use qhs::verify::{run_suite_with_jobs, Grid, Suite};
use qhs::Error;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "qhs", version, about = "Exact finite q-multiple harmonic sums at roots of unity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single sum exactly.
    Compute(ComputeArgs),
    /// Check closed forms against exact sums over a parameter grid.
    Verify(VerifyArgs),
    /// Print a grid of exact values.
    Table(TableArgs),
    /// Export the catalogue of literal displays as JSON.
    Catalog,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dp,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args)]
struct ComputeArgs {
    /// Order of the root of unity (sums run over 1..n-1).
    #[arg(long, conflicts_with_all = ["q", "upper"])]
    n: Option<u32>,
    /// Rational q such as "1/3"; requires --upper.
    #[arg(long, requires = "upper")]
    q: Option<String>,
    /// Summation bound for rational q (indices run over 1..upper-1).
    #[arg(long)]
    upper: Option<u32>,
    /// Comma-separated exponents, e.g. "1,2,1".
    #[arg(long, allow_hyphen_values = true)]
    indices: String,
    #[arg(long, value_enum, default_value_t = Method::Dp)]
    method: Method,
    /// Largest number of tuples brute force will enumerate.
    #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_parser = Suite::from_str)]
    suite: Suite,
    #[arg(long = "max-n", default_value_t = Grid::default().max_n)]
    max_n: u32,
    #[arg(long = "max-m", default_value_t = Grid::default().max_m)]
    max_m: u32,
    #[arg(long = "max-A", alias = "max-a", default_value_t = Grid::default().max_a)]
    max_a: u32,
    #[arg(long = "max-s", default_value_t = Grid::default().max_s)]
    max_s: u32,
    /// Worker threads; the report is identical for any value.
    #[arg(long, env = "QHS_JOBS", default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    #[value(name = "zeta-single")]
    ZetaSingle,
    #[value(name = "F")]
    F,
    #[value(name = "R")]
    R,
}

/// Inclusive range written `a..b` or a single value `a`.
#[derive(Clone, Copy, Debug)]
struct Span(u32, u32);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("invalid bound {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span(lo, hi))
    }
}

#[derive(clap::Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    what: TableKind,
    #[arg(long, default_value = "2..10")]
    n: Span,
    #[arg(long, default_value = "1..4")]
    s: Span,
    #[arg(long = "A", default_value = "2..3")]
    a: Span,
    #[arg(long, default_value = "1..3")]
    m: Span,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn error_exit(e: &Error) -> ExitCode {
    match e {
        Error::TooLarge { .. } => fail(EXIT_CAP, e),
        _ => fail(EXIT_USAGE, e),
    }
}

fn compute(args: ComputeArgs) -> ExitCode {
    let indices = match args.indices.parse::<IndexVector>() {
        Ok(v) => v,
        Err(e) => return error_exit(&e),
    };
    let spec = match (&args.n, &args.q, args.upper) {
        (Some(n), None, None) => QSpec::root(*n),
        (None, Some(q), Some(upper)) => q.parse::<Rational>().and_then(|q| QSpec::rational(q, upper)),
        _ => return fail(EXIT_USAGE, "give either --n, or --q with --upper"),
    };
    let spec = match spec {
        Ok(s) => s,
        Err(e) => return error_exit(&e),
    };
    let value = match args.method {
        Method::Dp => zq_dp(&spec, &indices),
        Method::Brute => zq_bruteforce(&spec, &indices, args.cap),
    };
    let value = match value {
        Ok(v) => v,
        Err(e) => return error_exit(&e),
    };
    match args.format {
        Format::Json => {
            let mut out = json!({
                "indices": indices.as_slice(),
                "method": match args.method { Method::Dp => "dp", Method::Brute => "brute" },
            });
            match (&spec, &value) {
                (QSpec::RootOfUnity(_), SumValue::Cyclotomic(z)) => {
                    out["n"] = json!(spec.n());
                    out["value"] = z.rational_part().map(|r| json!(r.to_string())).unwrap_or(Value::Null);
                    out["element"] = serde_json::to_value(z).expect("serializable");
                    let c = z.to_complex();
                    out["float_advisory"] = json!({"re": c.re, "im": c.im});
                }
                (QSpec::RationalQ { q, n }, SumValue::Rational(r)) => {
                    out["q"] = json!(q.to_string());
                    out["upper"] = json!(n);
                    out["value"] = json!(r.to_string());
                }
                _ => unreachable!("value kind follows the q mode"),
            }
            emit(&(serde_json::to_string_pretty(&out).expect("serializable") + "\n"));
        }
        _ => match &value {
            SumValue::Cyclotomic(z) if !z.is_rational() => {
                let coeffs: Vec<String> = z.coeffs().iter().map(Rational::to_string).collect();
                let c = z.to_complex();
                emit(&format!(
                    "coeffs (basis 1, z, ..., z^{}, z = exp(2 pi i/{})): [{}]\nfloat (advisory): {:.15} {:+.15}i\n",
                    z.coeffs().len() - 1,
                    spec.n(),
                    coeffs.join(", "),
                    c.re,
                    c.im
                ));
            }
            v => emit(&format!("{}\n", v.as_rational().expect("rational"))),
        },
    }
    ExitCode::SUCCESS
}

fn verify(args: VerifyArgs) -> ExitCode {
    let grid = Grid { max_n: args.max_n, max_m: args.max_m, max_a: args.max_a, max_s: args.max_s };
    let report = match run_suite_with_jobs(args.suite, &grid, args.jobs) {
        Ok(r) => r,
        Err(e) => return error_exit(&e),
    };
    let body = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                return fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display()));
            }
        }
        None => emit(&body),
    }
    if !report.all_expected() {
        for c in report.failures() {
            eprintln!(
                "unexpected mismatch: {}\n  lhs = {}\n  rhs = {}",
                serde_json::to_string(&c.params).expect("serializable"),
                c.lhs,
                c.rhs
            );
        }
        return ExitCode::from(EXIT_MISMATCH);
    }
    ExitCode::SUCCESS
}

fn table(args: TableArgs) -> ExitCode {
    let mut rows: Vec<(Vec<(&str, u32)>, Rational)> = Vec::new();
    for n in args.n.0..=args.n.1 {
        let sums = match RootSums::new(n) {
            Ok(s) => s,
            Err(e) => return error_exit(&e),
        };
        let result: Result<(), Error> = (|| {
            match args.what {
                TableKind::ZetaSingle => {
                    for s in args.s.0..=args.s.1 {
                        if s == 0 {
                            return Err(Error::InvalidIndex("exponent 0 < 1".into()));
                        }
                        rows.push((vec![("n", n), ("s", s)], sums.single(s)?));
                    }
                }
                TableKind::F | TableKind::R => {
                    for a in args.a.0..=args.a.1 {
                        for m in args.m.0..=args.m.1 {
                            let v = match args.what {
                                TableKind::F => sums.cyclic_sum_ones(a, m as usize)?,
                                _ => sums.cyclic_sum_twos(a, m as usize)?,
                            };
                            rows.push((vec![("n", n), ("A", a), ("m", m)], v));
                        }
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            return error_exit(&e);
        }
    }
    let mut out = String::new();
    match args.format {
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|(keys, v)| {
                    let mut o = serde_json::Map::new();
                    for (k, x) in keys {
                        o.insert((*k).to_string(), json!(x));
                    }
                    o.insert("value".into(), json!(v.to_string()));
                    Value::Object(o)
                })
                .collect();
            out = serde_json::to_string_pretty(&arr).expect("serializable") + "\n";
        }
        Format::Csv => {
            if let Some((keys, _)) = rows.first() {
                let header: Vec<&str> = keys.iter().map(|(k, _)| *k).collect();
                let _ = writeln!(out, "{},value", header.join(","));
            }
            for (keys, v) in &rows {
                let vals: Vec<String> = keys.iter().map(|(_, x)| x.to_string()).collect();
                let _ = writeln!(out, "{},{v}", vals.join(","));
            }
        }
        Format::Text => {
            if let Some((keys, _)) = rows.first() {
                for (k, _) in keys {
                    let _ = write!(out, "{k:>4} ");
                }
                let _ = writeln!(out, " value");
            }
            for (keys, v) in &rows {
                for (_, x) in keys {
                    let _ = write!(out, "{x:>4} ");
                }
                let _ = writeln!(out, " {v}");
            }
        }
    }
    emit(&out);
    ExitCode::SUCCESS
}

fn catalog() -> ExitCode {
    let entries: Vec<Value> = literal_display_catalog()
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "location": e.location,
                "domain": e.domain,
                "status": e.status,
            })
        })
        .collect();
    emit(&(serde_json::to_string_pretty(&entries).expect("serializable") + "\n"));
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a),
        Command::Catalog => catalog(),
    }
}
