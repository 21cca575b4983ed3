//! `qhermite`: tables, conversions, evaluation, identity suites and the
//! characterization replay from the command line.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use qhermite::characterize::{uniqueness_report, Case2Sample, Outcome};
use qhermite::families::{h_small, hermite, hermite_to_psi, psi, psi_to_hermite};
use qhermite::opcore::PolyX;
use qhermite::verify::{run_suite, Suite};
use qhermite::{Error, QScalar};

#[derive(Parser)]
#[command(
    name = "qhermite",
    version,
    about = "Exact q-Hermite and Askey-Wilson operator calculus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a polynomial in the monomial basis of x.
    Family {
        #[arg(long, value_enum)]
        name: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a polynomial at q and x.
    Eval {
        #[arg(long, value_enum)]
        name: Family,
        #[arg(long)]
        n: usize,
        /// Exact q^(1/4) as a rational in (0, 1).
        #[arg(long, conflicts_with = "q", required_unless_present = "q")]
        s: Option<String>,
        /// Approximate q in (0, 1).
        #[arg(long)]
        q: Option<f64>,
        /// One or more comma-separated points.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        x: Vec<String>,
        /// Working precision in bits for the approximate path.
        #[arg(long, default_value_t = 128)]
        precision: usize,
        #[arg(long, value_enum, default_value_t = EvalFormat::Text)]
        format: EvalFormat,
    },
    /// Connection coefficients between the Psi and Hermite bases.
    Convert {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run identity suites; exit status 1 if any check fails.
    Verify {
        /// A suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, default_value_t = 16)]
        t_order: usize,
    },
    /// Replay the characterization; exit status 0 iff only q-Hermite survives.
    Characterize {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(4..))]
        max_n: u64,
        /// Case II sample; replaces the default grid when given with --a2 and --s.
        #[arg(long, requires_all = ["a2", "s"])]
        a1: Option<String>,
        #[arg(long, requires_all = ["a1", "s"])]
        a2: Option<String>,
        #[arg(long, requires_all = ["a1", "a2"])]
        s: Option<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    Psi,
    Hermite,
    H,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum EvalFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Direction {
    PsiToHermite,
    HermiteToPsi,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Psi => "psi",
            Family::Hermite => "hermite",
            Family::H => "h",
        }
    }

    fn build(self, n: usize) -> PolyX {
        match self {
            Family::Psi => psi(n),
            Family::Hermite => hermite(n),
            Family::H => h_small(n),
        }
    }
}

/// Failure with its exit status: 1 for failed checks, 2 for bad input.
struct Failed(u8, String);

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::QOutOfRange(_) | Error::NotQuarterPower(_) => 2,
            _ => 1,
        };
        Failed(code, e.to_string())
    }
}

impl From<io::Error> for Failed {
    fn from(e: io::Error) -> Self {
        Failed(1, e.to_string())
    }
}

fn usage(msg: String) -> Failed {
    Failed(2, msg)
}

/// `a/b`, an integer, or a plain decimal such as `0.25`, read exactly.
fn parse_rational(text: &str) -> Result<BigRational, Failed> {
    let t = text.trim();
    let bad = || usage(format!("{t:?} is not a rational number"));
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let den = format!("1{}", "0".repeat(frac.len()));
        return BigRational::from_str(&format!("{digits}/{den}")).map_err(|_| bad());
    }
    let r = BigRational::from_str(t).map_err(|_| bad())?;
    Ok(r)
}

fn parse_s(text: &str) -> Result<BigRational, Failed> {
    let s = parse_rational(text)?;
    if !(s.is_positive() && s < BigRational::one()) {
        return Err(usage(format!("s = {s} must lie in (0, 1)")));
    }
    Ok(s)
}

/// Scalar without the `/(1)` when the denominator is one.
fn pretty_scalar(c: &QScalar) -> String {
    if c.denom().is_constant() && c.denom().coeff(0).is_one() {
        let num = c.numer().to_string();
        if c.numer().terms().count() > 1 {
            format!("({num})")
        } else {
            num
        }
    } else {
        c.to_string()
    }
}

fn pretty_poly(p: &PolyX) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            match (k, c.is_one()) {
                (0, _) => pretty_scalar(c),
                (_, true) => var,
                _ => format!("{}*{var}", pretty_scalar(c)),
            }
        })
        .collect();
    terms.join(" + ")
}

#[derive(Serialize)]
struct FamilyJson<'a> {
    family: &'a str,
    n: usize,
    coeffs_x: Vec<String>,
}

#[derive(Serialize)]
struct WeightJson {
    k: usize,
    weight: String,
}

#[derive(Serialize)]
struct ConvertJson {
    direction: Direction,
    n: usize,
    weights: Vec<WeightJson>,
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failed> {
    match cli.command {
        Command::Family { name, n, format } => {
            let p = name.build(n);
            match format {
                Format::Text => writeln!(out, "{}", pretty_poly(&p))?,
                Format::Json => {
                    let body = FamilyJson {
                        family: name.name(),
                        n,
                        coeffs_x: p.coeffs().iter().map(|c| c.to_string()).collect(),
                    };
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&body).expect("plain strings serialize")
                    )?;
                }
                Format::Csv => {
                    writeln!(out, "family,n,k,coeff")?;
                    for (k, c) in p.coeffs().iter().enumerate() {
                        writeln!(out, "{},{n},{k},{c}", name.name())?;
                    }
                }
            }
        }
        Command::Eval {
            name,
            n,
            s,
            q,
            x,
            precision,
            format,
        } => {
            let p = name.build(n);
            let mut rows = Vec::new();
            if let Some(s) = s {
                let s = parse_s(&s)?;
                let q_exact = num_traits::pow(s.clone(), 4);
                for xv in &x {
                    let xr = parse_rational(xv)?;
                    rows.push((q_exact.to_string(), xr.to_string(), p.eval_exact(&s, &xr)?.to_string()));
                }
            } else {
                let q = q.expect("clap requires --s or --q");
                for xv in &x {
                    let xf: f64 = xv
                        .trim()
                        .parse()
                        .map_err(|_| usage(format!("{xv:?} is not a number")))?;
                    rows.push((
                        q.to_string(),
                        xf.to_string(),
                        p.eval_float(q, xf, precision)?.to_string(),
                    ));
                }
            }
            if format == EvalFormat::Csv {
                writeln!(out, "n,q,x,value")?;
                for (qv, xv, v) in rows {
                    writeln!(out, "{n},{qv},{xv},{v}")?;
                }
            } else {
                for (_, _, v) in rows {
                    writeln!(out, "{v}")?;
                }
            }
        }
        Command::Convert { direction, n, format } => {
            let row = match direction {
                Direction::PsiToHermite => psi_to_hermite(n),
                Direction::HermiteToPsi => hermite_to_psi(n),
            };
            let (from, to) = match direction {
                Direction::PsiToHermite => ("Psi", "H"),
                Direction::HermiteToPsi => ("H", "Psi"),
            };
            match format {
                Format::Text => {
                    let terms: Vec<String> = row
                        .weights
                        .iter()
                        .map(|(k, w)| format!("{} {to}_{}", pretty_scalar(w), n - 2 * k))
                        .collect();
                    writeln!(out, "{from}_{n} = {}", terms.join(" + "))?;
                }
                Format::Json => {
                    let weights = row
                        .weights
                        .iter()
                        .map(|(k, w)| WeightJson {
                            k: *k,
                            weight: w.to_string(),
                        })
                        .collect();
                    let body = ConvertJson { direction, n, weights };
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&body).expect("plain strings serialize")
                    )?;
                }
                Format::Csv => {
                    writeln!(out, "n,k,weight")?;
                    for (k, w) in &row.weights {
                        writeln!(out, "{n},{k},{w}")?;
                    }
                }
            }
        }
        Command::Verify { suite, max_n, t_order } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>()?]
            };
            let mut failed = 0;
            for s in suites {
                let r = run_suite(s, max_n as usize, t_order);
                writeln!(out, "suite={} cases={} failures={}", r.suite, r.cases, r.failures.len())?;
                for f in &r.failures {
                    writeln!(
                        out,
                        "FAIL suite={} identity={} params={} residual={}",
                        r.suite, f.identity, f.params, f.residual
                    )?;
                }
                eprintln!("{}: {:.3} s", r.suite, r.wall_time.as_secs_f64());
                failed += r.failures.len();
            }
            if failed > 0 {
                return Err(Failed(1, format!("{failed} identity checks failed")));
            }
        }
        Command::Characterize {
            max_n,
            a1,
            a2,
            s,
            out: path,
        } => {
            let samples = match (a1, a2, s) {
                (Some(a1), Some(a2), Some(s)) => {
                    let a1 = parse_rational(&a1)?;
                    if a1.is_zero() {
                        return Err(usage("--a1 must be nonzero".into()));
                    }
                    vec![Case2Sample {
                        a1,
                        a2: parse_rational(&a2)?,
                        s: parse_s(&s)?,
                    }]
                }
                _ => Case2Sample::default_grid(),
            };
            let report = uniqueness_report(max_n as usize, &samples)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            match path {
                Some(p) => fs::write(&p, format!("{json}\n"))?,
                None => writeln!(out, "{json}")?,
            }
            writeln!(io::stderr(), "outcome: {:?}", report.outcome)?;
            if report.outcome != Outcome::ForcedHermite {
                return Err(Failed(1, format!("aggregate outcome {:?}", report.outcome)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failed(code, msg)) => {
            let _ = lock.flush();
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
