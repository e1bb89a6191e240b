use std::io::{self, Write};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use superspherical::enveloping::UElement;
use superspherical::expr;
use superspherical::gl12::{alpha_beta_recursive, alpha_closed, beta_closed, build_pair, Gl12Pair};
use superspherical::poly::UniPoly;
use superspherical::report::CheckReport;
use superspherical::sequences::{bernoulli_table, euler, zigzag_table};
use superspherical::suites::{self, Suite, Target};
use superspherical::{Error, Scalar};

const SCHEMA: &str = "1";
const DEGREE_ENV: &str = "SUPERSPHERICAL_DEGREE";

#[derive(Parser)]
#[command(name = "superspherical", version, about = "Exact computations for the pair (gl(1|2), osp(1|2))")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recursive,
    Closed,
    Pbw,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of alpha_n, lowest power first
    Alpha {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
    },
    /// Coefficients of beta_{n-1}, lowest power first
    Beta {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
    },
    /// Zigzag numbers A_0..A_n and Euler numbers E_0..E_n
    Zigzag {
        #[arg(long)]
        n: usize,
    },
    /// Bernoulli numbers B_0..B_n
    Bernoulli {
        #[arg(long)]
        n: usize,
    },
    /// PBW normal form of an expression in z, k, k1, k2, e', f', p, e, f
    Nf {
        #[arg(long)]
        expr: String,
    },
    /// Representative of an expression in U(g)/I
    Quotient {
        #[arg(long)]
        expr: String,
    },
    /// Radial restriction of z^a p^b, a + b <= degree
    Radial {
        #[arg(long, env = DEGREE_ENV, default_value_t = 6)]
        degree: u32,
    },
    /// Run a check suite
    Check {
        #[arg(long, value_parser = PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        /// Defaults to 12 for the alpha suite and 6 otherwise
        #[arg(long, env = DEGREE_ENV)]
        degree: Option<u32>,
        /// gl12, glMN, qN, or @FILE with a JSON algebra definition
        #[arg(long, default_value = "gl12")]
        algebra: String,
        /// Add wall time to every item
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: T,
}

// Write errors such as a closed pipe end the output quietly.
fn emit_json<T: Serialize>(body: T) {
    let text = serde_json::to_string(&Envelope { schema: SCHEMA, body }).expect("serializable");
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn emit_tsv(header: &[&str], rows: &[Vec<String>]) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{}", header.join("\t"));
    for row in rows {
        if writeln!(out, "{}", row.join("\t")).is_err() {
            return;
        }
    }
}

fn coefficient_strings(p: &UniPoly, len: usize) -> Vec<String> {
    (0..len).map(|k| p.coeff(k).to_string()).collect()
}

fn polynomial(which: &str, n: u32, method: Method) -> Result<UniPoly, Error> {
    let n_us = n as usize;
    let (alpha, beta) = match method {
        Method::Recursive => alpha_beta_recursive(n_us),
        Method::Closed => (alpha_closed(n_us), beta_closed(n_us)),
        Method::Pbw => build_pair()?.alpha_beta_from_pbw(n)?,
    };
    Ok(if which == "alpha" { alpha } else { beta })
}

#[derive(Serialize)]
struct ElementOut<'a> {
    expr: &'a str,
    text: String,
    terms: &'a UElement,
}

fn element(format: Format, g: &Gl12Pair, source: &str, u: &UElement) {
    match format {
        Format::Json => emit_json(ElementOut {
            expr: source,
            text: g.env.format(u),
            terms: u,
        }),
        Format::Tsv => {
            let rows: Vec<Vec<String>> = u
                .terms()
                .map(|(m, c)| {
                    let exps: Vec<String> = m.exponents().iter().map(u32::to_string).collect();
                    vec![exps.join(","), c.to_string()]
                })
                .collect();
            emit_tsv(&["monomial", "coeff"], &rows);
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let format = cli.format;
    match cli.command {
        Command::Alpha { n, method } | Command::Beta { n, method } => {
            let which = if matches!(cli.command, Command::Alpha { .. }) { "alpha" } else { "beta" };
            let p = polynomial(which, n, method)?;
            let len = if which == "alpha" { n as usize + 1 } else { n as usize };
            let coeffs = coefficient_strings(&p, len);
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct AlphaOut {
                        n: u32,
                        alpha: Vec<String>,
                    }
                    #[derive(Serialize)]
                    struct BetaOut {
                        n: u32,
                        beta: Vec<String>,
                    }
                    if which == "alpha" {
                        emit_json(AlphaOut { n, alpha: coeffs });
                    } else {
                        emit_json(BetaOut { n, beta: coeffs });
                    }
                }
                Format::Tsv => emit_tsv(&["n", which], &[vec![n.to_string(), coeffs.join(",")]]),
            }
        }
        Command::Zigzag { n } => {
            let zigzag: Vec<String> = zigzag_table(n).iter().map(ToString::to_string).collect();
            let euler: Vec<String> = (0..=n).map(|k| euler(k).to_string()).collect();
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        n: usize,
                        zigzag: Vec<String>,
                        euler: Vec<String>,
                    }
                    emit_json(Out { n, zigzag, euler });
                }
                Format::Tsv => {
                    let rows: Vec<Vec<String>> = (0..=n)
                        .map(|k| vec![k.to_string(), zigzag[k].clone(), euler[k].clone()])
                        .collect();
                    emit_tsv(&["n", "zigzag", "euler"], &rows);
                }
            }
        }
        Command::Bernoulli { n } => {
            let b: Vec<String> = bernoulli_table(n).iter().map(Scalar::to_string).collect();
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        n: usize,
                        bernoulli: Vec<String>,
                    }
                    emit_json(Out { n, bernoulli: b });
                }
                Format::Tsv => {
                    let rows: Vec<Vec<String>> = b.iter().enumerate().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
                    emit_tsv(&["n", "bernoulli"], &rows);
                }
            }
        }
        Command::Nf { expr: source } => {
            let ast = expr::parse(&source)?;
            let g = build_pair()?;
            let u = ast.elaborate(&g.env)?;
            element(format, &g, &source, &u);
        }
        Command::Quotient { expr: source } => {
            let ast = expr::parse(&source)?;
            let g = build_pair()?;
            let u = ast.elaborate(&g.env)?;
            let q = g.quotient_reduce(&u);
            element(format, &g, &source, q.as_uelement());
        }
        Command::Radial { degree } => {
            let g = build_pair()?;
            let r = g.radial_restriction_check(degree)?;
            let pass = r.pass();
            match format {
                Format::Json => emit_json(&r),
                Format::Tsv => {
                    let rows: Vec<Vec<String>> = r
                        .images
                        .iter()
                        .map(|(k, v)| vec![k.clone(), g.env.format(v)])
                        .collect();
                    emit_tsv(&["a,b", "image"], &rows);
                }
            }
            return Ok(pass);
        }
        Command::Check {
            suite,
            degree,
            algebra,
            timings,
        } => {
            let suite: Suite = suite.parse()?;
            let spec = match algebra.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?,
                None => algebra,
            };
            let target = Target::resolve(&spec)?;
            let report = suites::run(suite, &target, degree, timings)?;
            print_report(format, &report);
            return Ok(report.pass);
        }
    }
    Ok(true)
}

fn print_report(format: Format, report: &CheckReport) {
    match format {
        Format::Json => emit_json(report),
        Format::Tsv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.check.clone(),
                        c.degree.to_string(),
                        if c.pass { "pass" } else { "fail" }.into(),
                        c.count.to_string(),
                    ]
                })
                .collect();
            emit_tsv(&["check", "degree", "pass", "count"], &rows);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Syntax { .. }
                | Error::Parse(_)
                | Error::UnknownGenerator(_)
                | Error::InvalidPair(_)
                | Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
