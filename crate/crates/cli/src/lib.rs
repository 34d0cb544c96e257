//! Argument handling and report rendering for the `threshold-seidel` binary.
//!
//! Everything goes through [`run`], which returns the exit code and the text
//! destined for stdout and stderr so the command can be driven from tests.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use threshold_seidel::classify::{SearchOptions, DEFAULT_SEARCH_CAP};
use threshold_seidel::quotient::symmetrize;
use threshold_seidel::sequence::MAX_ENUMERATION_N;
use threshold_seidel::{
    assemble_spectrum, block_form, char_poly, classify, cospectral_pair, cospectral_search,
    determinant, distinct_class, eigvec_families, enumerate_sequences, lifted_unit_eigenvectors,
    parse_sequence, pivot_sequence, quotient_eigenvalues, quotient_matrix, verify,
    CreationSequence, Error, IntPoly,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Longest sequences `enumerate` will list; `--count-only` has no limit.
pub const MAX_LIST_N: usize = 24;
/// Failures printed by `verify`; the total is always reported.
pub const MAX_REPORTED_FAILURES: usize = 50;

#[derive(Debug, Parser)]
#[command(
    name = "threshold-seidel",
    version,
    about = "Seidel spectra of connected threshold graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full spectrum with the multiplicities of -1 and +1.
    Spectrum { sequence: String },
    /// Characteristic polynomial coefficients, constant term first.
    Charpoly { sequence: String },
    /// Determinant of the Seidel matrix.
    Det {
        sequence: String,
        /// Also print the pivot sequence.
        #[arg(long)]
        pivots: bool,
    },
    /// Quotient matrix over the run partition and its eigenvalues.
    Quotient { sequence: String },
    /// Integer eigenvectors for -1 and +1.
    Eigvecs { sequence: String },
    /// Pattern class and number of distinct eigenvalues.
    Classify { sequence: String },
    /// All connected sequences of length n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// The cospectral pair 0^{n-2}1^2, 010^{n-3}1.
    CospectralPair {
        #[arg(long)]
        n: usize,
    },
    /// Every set of cospectral sequences of length n.
    CospectralSearch {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        /// Largest n accepted.
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: usize,
    },
    /// Cross-check every sequence with 2 <= length <= n against the oracle.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
    /// Partial result still worth printing, e.g. the mismatching classification.
    result: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_verification() {
            EXIT_MISMATCH
        } else {
            EXIT_INVALID
        };
        Failure {
            code,
            message: e.to_string(),
            result: None,
        }
    }
}

impl From<threshold_seidel::SequenceError> for Failure {
    fn from(e: threshold_seidel::SequenceError) -> Self {
        Error::from(e).into()
    }
}

fn int(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("decimal integer"))
}

fn poly(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

fn seq_list(seqs: &[CreationSequence]) -> Value {
    seqs.iter().map(|s| Value::String(s.to_string())).collect()
}

fn parse(text: &str) -> Result<CreationSequence, Failure> {
    Ok(parse_sequence(text)?)
}

fn execute(command: &Command) -> Result<(String, Value), Failure> {
    Ok(match command {
        Command::Spectrum { sequence } => {
            let seq = parse(sequence)?;
            let bf = block_form(&seq)?;
            let spec = assemble_spectrum(&seq)?;
            let m = spec.multiplicities();
            let result = json!({
                "sequence": seq.to_string(),
                "block_form": bf.to_string(),
                "eigenvalues": spec.eigenvalues(),
                "quotient_eigenvalues": spec.quotient,
                "minus_one": spec.minus_one,
                "plus_one": spec.plus_one,
                "multiplicities": { "minus_one": m.n_minus1, "plus_one": m.n_plus1 },
                "distinct": spec.distinct_count(),
            });
            (seq.to_string(), result)
        }
        Command::Charpoly { sequence } => {
            let seq = parse(sequence)?;
            let p = char_poly(&seq);
            let result = json!({
                "sequence": seq.to_string(),
                "charpoly": poly(&p),
                "polynomial": p.to_string(),
            });
            (seq.to_string(), result)
        }
        Command::Det { sequence, pivots } => {
            let seq = parse(sequence)?;
            let mut result = Map::new();
            result.insert("sequence".into(), json!(seq.to_string()));
            result.insert("det".into(), int(&determinant(&seq)?));
            if *pivots {
                result.insert("pivots".into(), json!(pivot_sequence(&seq)?.to_strings()));
            }
            (seq.to_string(), Value::Object(result))
        }
        Command::Quotient { sequence } => {
            let seq = parse(sequence)?;
            let bf = block_form(&seq)?;
            let q = quotient_matrix(&bf);
            let result = json!({
                "sequence": seq.to_string(),
                "block_form": bf.to_string(),
                "cell_sizes": q.cell_sizes(),
                "entries": q.entries(),
                "symmetrized": symmetrize(&q).entries(),
                "eigenvalues": quotient_eigenvalues(&q).map_err(Error::from)?,
            });
            (seq.to_string(), result)
        }
        Command::Eigvecs { sequence } => {
            let seq = parse(sequence)?;
            let (minus, plus) = eigvec_families(&seq)?;
            let lifted: Vec<Value> = lifted_unit_eigenvectors(&seq)?
                .into_iter()
                .map(|l| {
                    json!({
                        "value": l.value,
                        "quotient_vector": l.quotient_vector,
                        "vector": l.vector,
                    })
                })
                .collect();
            let result = json!({
                "sequence": seq.to_string(),
                "minus_one": minus.vectors,
                "plus_one": plus.vectors,
                "lifted": lifted,
            });
            (seq.to_string(), result)
        }
        Command::Classify { sequence } => {
            let seq = parse(sequence)?;
            let bf = block_form(&seq)?;
            let class = distinct_class(&seq)?;
            let result = json!({
                "sequence": seq.to_string(),
                "block_form": bf.to_string(),
                "predicted": class.predicted.to_string(),
                "predicted_count": class.predicted_count,
                "observed_count": class.observed_count,
            });
            if let Err(e) = classify(&seq) {
                return Err(Failure {
                    result: Some(result),
                    ..e.into()
                });
            }
            (seq.to_string(), result)
        }
        Command::Enumerate { n, count_only } => {
            let input = format!("n={n}");
            if *n < 2 {
                return Err(Error::OutOfRange {
                    what: "n",
                    value: *n,
                    min: 2,
                    max: usize::MAX,
                }
                .into());
            }
            let count = BigInt::from(1) << (n - 2);
            let result = if *count_only {
                json!({ "n": n, "count": int(&count) })
            } else {
                let cap = MAX_LIST_N.min(MAX_ENUMERATION_N);
                if *n > cap {
                    return Err(Error::OutOfRange {
                        what: "n",
                        value: *n,
                        min: 2,
                        max: cap,
                    }
                    .into());
                }
                let seqs: Vec<CreationSequence> = enumerate_sequences(*n)?.collect();
                json!({ "n": n, "count": int(&count), "sequences": seq_list(&seqs) })
            };
            (input, result)
        }
        Command::CospectralPair { n } => {
            let pair = cospectral_pair(*n)?;
            let result = json!({
                "n": n,
                "members": seq_list(&pair.members),
                "charpoly": poly(&pair.charpoly),
                "polynomial": pair.charpoly.to_string(),
                "quadratic": poly(&pair.quadratic),
                "degree_sequences": pair.degree_sequences,
            });
            (format!("n={n}"), result)
        }
        Command::CospectralSearch { n, jobs, cap } => {
            let opts = SearchOptions {
                cap: *cap,
                jobs: usize::from(*jobs),
            };
            let classes = cospectral_search(*n, opts)?;
            let largest = classes.iter().map(|c| c.members.len()).max().unwrap_or(0);
            let listed: Vec<Value> = classes
                .iter()
                .map(|c| json!({ "charpoly": poly(&c.fingerprint), "members": seq_list(&c.members) }))
                .collect();
            let result = json!({
                "n": n,
                "class_count": classes.len(),
                "largest_class": largest,
                "classes": listed,
            });
            (format!("n={n}"), result)
        }
        Command::Verify { n, jobs } => {
            let report = verify(*n, usize::from(*jobs))?;
            let failures: Vec<Value> = report
                .failures
                .iter()
                .take(MAX_REPORTED_FAILURES)
                .map(|f| {
                    json!({
                        "sequence": f.sequence.to_string(),
                        "check": f.check.to_string(),
                        "detail": f.detail,
                    })
                })
                .collect();
            let result = json!({
                "max_n": report.max_n,
                "graphs": report.graphs,
                "passed": report.passed(),
                "failure_count": report.failures.len(),
                "failures": failures,
            });
            if !report.passed() {
                return Err(Failure {
                    code: EXIT_MISMATCH,
                    message: format!("{} oracle mismatches", report.failures.len()),
                    result: Some(result),
                });
            }
            (format!("n={n}"), result)
        }
    })
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Spectrum { .. } => "spectrum",
        Command::Charpoly { .. } => "charpoly",
        Command::Det { .. } => "det",
        Command::Quotient { .. } => "quotient",
        Command::Eigvecs { .. } => "eigvecs",
        Command::Classify { .. } => "classify",
        Command::Enumerate { .. } => "enumerate",
        Command::CospectralPair { .. } => "cospectral-pair",
        Command::CospectralSearch { .. } => "cospectral-search",
        Command::Verify { .. } => "verify",
    }
}

fn raw_input(command: &Command) -> String {
    match command {
        Command::Spectrum { sequence }
        | Command::Charpoly { sequence }
        | Command::Det { sequence, .. }
        | Command::Quotient { sequence }
        | Command::Eigvecs { sequence }
        | Command::Classify { sequence } => sequence.clone(),
        Command::Enumerate { n, .. }
        | Command::CospectralPair { n }
        | Command::CospectralSearch { n, .. }
        | Command::Verify { n, .. } => format!("n={n}"),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn render_text(report: &Map<String, Value>) -> String {
    let mut rows: Vec<(String, String)> = Vec::new();
    for key in ["command", "input"] {
        rows.push((key.into(), scalar(&report[key])));
    }
    if let Some(Value::Object(result)) = report.get("result") {
        for (key, value) in result {
            match value {
                Value::Array(items) if items.iter().any(|i| i.is_array() || i.is_object()) => {
                    if items.is_empty() {
                        rows.push((key.clone(), String::new()));
                    }
                    for (i, item) in items.iter().enumerate() {
                        let line = match item {
                            Value::Object(fields) => fields
                                .iter()
                                .map(|(k, v)| format!("{k}={}", scalar(v)))
                                .collect::<Vec<_>>()
                                .join("  "),
                            other => scalar(other),
                        };
                        rows.push((format!("{key}[{i}]"), line));
                    }
                }
                Value::Object(fields) => {
                    for (k, v) in fields {
                        rows.push((format!("{key}.{k}"), scalar(v)));
                    }
                }
                other => rows.push((key.clone(), scalar(other))),
            }
        }
    }
    rows.push(("elapsed_ms".into(), scalar(&report["elapsed_ms"])));
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn render(format: Format, command: &str, input: String, result: Value, start: Instant) -> String {
    let elapsed = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    let mut report = Map::new();
    report.insert("command".into(), json!(command));
    report.insert("input".into(), json!(input));
    report.insert("result".into(), result);
    report.insert("elapsed_ms".into(), json!(elapsed));
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Value::Object(report)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => render_text(&report),
    }
}

/// Parses `argv` (program name first) and runs one subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    let name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok((input, result)) => Outcome {
            code: EXIT_OK,
            stdout: render(cli.format, name, input, result, start),
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: f
                .result
                .map(|r| render(cli.format, name, raw_input(&cli.command), r, start))
                .unwrap_or_default(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}
