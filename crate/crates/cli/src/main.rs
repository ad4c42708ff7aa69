mod output;

use std::collections::BTreeSet;
use std::io;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use threesq::solver::{exception_set_with, DEFAULT_CEILING};
use threesq::squares::CaseTag;
use threesq::verify::{self, Suite};
use threesq::{
    asymptotically_universal, count_representations, decompose, find_representation, kane_odd_square_check,
    kane_triangular_universal, parse_form, Error, MixedForm, ScanOptions, INPUT_CAP,
};

use output::{Emitter, Format, Outcome, Record};

#[derive(Debug, Parser)]
#[command(
    name = "threesq",
    version,
    about = "Sums of three squares and mixed square/triangular forms"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    output: Format,
    /// Largest scan bound accepted by `exceptions` and `verify`.
    #[arg(long, default_value_t = DEFAULT_CEILING, global = true)]
    bound_ceiling: u64,
    /// Treat oracle-fallback decompositions as errors.
    #[arg(long, global = true)]
    strict: bool,
    /// Worker threads for range scans.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256), global = true)]
    threads: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write each n as x² + y² + z².
    Decompose {
        #[arg(required = true)]
        n: Vec<u64>,
    },
    /// Find one representation of each n by a form, optionally counting all.
    Represent {
        #[arg(long)]
        form: String,
        #[arg(required = true)]
        n: Vec<u64>,
        /// Also count representations.
        #[arg(long)]
        count: bool,
        /// Count up to permutation of identical terms.
        #[arg(long, requires = "count")]
        unordered: bool,
    },
    /// List the integers in 0..=bound a form misses.
    Exceptions {
        #[arg(long)]
        form: String,
        #[arg(long)]
        bound: u64,
        /// Expected set, e.g. "{1,19,43,94}"; compared below the bound.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Decide universality of a form or a coefficient family.
    Check(CheckArgs),
    /// Run a verification battery.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct CheckArgs {
    /// Ternary form for the asymptotic criterion.
    #[arg(long)]
    form: Option<String>,
    /// Coefficients of `Σ bᵢ t_{xᵢ}` for the finite universality check.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    tri_coeffs: Option<Vec<u64>>,
    /// Coefficients of `Σ bᵢ s_{xᵢ}`, every xᵢ odd, for the class check.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    odd_square_coeffs: Option<Vec<u64>>,
}

fn outcome_of(err: &Error) -> Outcome {
    match err {
        Error::Syntax { .. } | Error::Arity(_) | Error::Constraint { .. } => Outcome::UsageError,
        Error::InputTooLarge(_) | Error::ResourceLimit { .. } | Error::EmptyCoefficients => Outcome::UsageError,
        _ => Outcome::DomainError,
    }
}

fn error_record(command: &'static str, input: Value, err: &Error) -> Record {
    let record = Record::error(command, input, outcome_of(err), err.to_string());
    match err {
        Error::IneligibleNumber { s, m, .. } => record.with_result(json!({ "witness": { "s": s, "m": m } })),
        _ => record,
    }
}

/// Parses `{a,b,c}` (braces optional, whitespace ignored).
fn parse_set(text: &str) -> Result<BTreeSet<u64>, String> {
    let body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let body = body.strip_prefix('{').unwrap_or(&body);
    let body = body.strip_suffix('}').unwrap_or(body);
    if body.is_empty() {
        return Ok(BTreeSet::new());
    }
    body.split(',')
        .map(|item| item.parse::<u64>().map_err(|_| format!("invalid set element {item:?}")))
        .collect()
}

fn render_set(set: &BTreeSet<u64>) -> String {
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

struct App<W: io::Write> {
    emitter: Emitter<W>,
    options: ScanOptions,
    strict: bool,
}

impl<W: io::Write> App<W> {
    fn emit(&mut self, record: Record) -> io::Result<()> {
        self.emitter.emit(&record)
    }

    fn decompose(&mut self, values: &[u64]) -> io::Result<()> {
        for &n in values {
            let input = json!({ "n": n });
            let record = match decompose(n) {
                Ok(d) if self.strict && d.case == CaseTag::OracleFallback => {
                    Record::error("decompose", input, Outcome::DomainError, "no residue pattern matched")
                        .with_result(&d)
                }
                Ok(d) => Record::ok("decompose", input, json!({ "roots": d.roots, "case": d.case })),
                Err(e) => error_record("decompose", input, &e),
            };
            self.emit(record)?;
        }
        Ok(())
    }

    fn represent(&mut self, form: &MixedForm, values: &[u64], count: bool, unordered: bool) -> io::Result<()> {
        for &n in values {
            let input = json!({ "form": form.to_string(), "n": n });
            if n > INPUT_CAP {
                self.emit(error_record("represent", input, &Error::InputTooLarge(n)))?;
                continue;
            }
            let rep = find_representation(form, n);
            let mut result = json!({ "indices": rep.map(|r| r.indices) });
            if count {
                result["count"] = json!(count_representations(form, n, !unordered));
                result["ordered"] = json!(!unordered);
            }
            self.emit(Record::ok("represent", input, result))?;
        }
        Ok(())
    }

    fn exceptions(&mut self, form: &MixedForm, bound: u64, expect: Option<&str>) -> io::Result<()> {
        let mut input = json!({ "form": form.to_string(), "bound": bound });
        if let Some(text) = expect {
            input["expect"] = json!(text);
        }
        let expected = match expect.map(parse_set).transpose() {
            Ok(set) => set,
            Err(msg) => return self.emit(Record::error("exceptions", input, Outcome::UsageError, msg)),
        };
        let report = match exception_set_with(form, bound, &self.options) {
            Ok(r) => r,
            Err(e) => return self.emit(error_record("exceptions", input, &e)),
        };
        let mut result = json!({
            "exceptions": report.exceptions,
            "count": report.exceptions.len(),
            "witnesses": report.witnesses,
        });
        let Some(expected) = expected else {
            return self.emit(Record::ok("exceptions", input, result));
        };
        let below: BTreeSet<u64> = expected.into_iter().filter(|&n| n <= bound).collect();
        let found: BTreeSet<u64> = report.exceptions.iter().copied().collect();
        let matched = below == found;
        result["expected"] = json!(below);
        result["match"] = json!(matched);
        let record = if matched {
            Record::ok("exceptions", input, result)
        } else {
            let message = format!("found {} but expected {}", render_set(&found), render_set(&below));
            Record::error("exceptions", input, Outcome::DomainError, message).with_result(result)
        };
        self.emit(record)
    }

    fn check(&mut self, args: &CheckArgs) -> io::Result<()> {
        let (input, verdict) = if let Some(text) = &args.form {
            let input = json!({ "form": text });
            match parse_form(text) {
                Ok(form) => (json!({ "form": form.to_string() }), asymptotically_universal(&form)),
                Err(e) => return self.emit(error_record("check", input, &e)),
            }
        } else if let Some(coeffs) = &args.tri_coeffs {
            (json!({ "tri_coeffs": coeffs }), kane_triangular_universal(coeffs))
        } else {
            let coeffs = args.odd_square_coeffs.as_deref().unwrap_or_default();
            (json!({ "odd_square_coeffs": coeffs }), kane_odd_square_check(coeffs))
        };
        let record = match verdict {
            Ok(v) => Record::ok("check", input, v),
            Err(e) => error_record("check", input, &e),
        };
        self.emit(record)
    }

    fn verify(&mut self, suite: Suite, bound: u64) -> io::Result<()> {
        let input = json!({ "suite": suite.name(), "bound": bound });
        let record = match verify::run(suite, bound, &self.options) {
            Ok(report) if report.passed() => Record::ok("verify", input, &report),
            Ok(report) => {
                let message = format!("{} of {} checks failed", report.failed, report.checked);
                Record::error("verify", input, Outcome::VerificationFailure, message).with_result(&report)
            }
            Err(e) => error_record("verify", input, &e),
        };
        self.emit(record)
    }

    fn run(&mut self, command: &Command) -> io::Result<()> {
        match command {
            Command::Decompose { n } => self.decompose(n),
            Command::Represent {
                form,
                n,
                count,
                unordered,
            } => match parse_form(form) {
                Ok(f) => self.represent(&f, n, *count, *unordered),
                Err(e) => self.emit(error_record("represent", json!({ "form": form }), &e)),
            },
            Command::Exceptions { form, bound, expect } => match parse_form(form) {
                Ok(f) => self.exceptions(&f, *bound, expect.as_deref()),
                Err(e) => self.emit(error_record("exceptions", json!({ "form": form, "bound": bound }), &e)),
            },
            Command::Check(args) => self.check(args),
            Command::Verify { suite, bound } => self.verify(*suite, *bound),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut app = App {
        emitter: Emitter::new(io::stdout().lock(), cli.output),
        options: ScanOptions {
            ceiling: cli.bound_ceiling,
            threads: cli.threads as usize,
        },
        strict: cli.strict,
    };
    match app.run(&cli.command) {
        Ok(()) => ExitCode::from(app.emitter.exit_code()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::from(app.emitter.exit_code()),
        Err(e) => {
            eprintln!("threesq: {e}");
            ExitCode::FAILURE
        }
    }
}
