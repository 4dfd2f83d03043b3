//! Thin command-line front end over the library. Exit codes: 0 success,
//! 2 usage or domain error, 3 precision failure, 4 certification or
//! verification failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use rademacher::kloosterman::{kloosterman_sum, RationalIndex24};
use rademacher::oracle::p_r_exact_table;
use rademacher::partitions::{p_r_analytic, p_r_certified, p_r_coefficient, CertifiedCount};
use rademacher::poincare::{eval_series, Truncation, WeightIndexPair};
use rademacher::report::{decimal, ReportRecord};
use rademacher::verify::run_suite;
use rademacher::{Error, PrecisionContext};

#[derive(Parser)]
#[command(name = "rademacher", version, about = "Exact analytic r-color partition counts")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true)]
    bits: Option<u32>,
    /// Fixed series cutoff (overrides the adaptive doubling policy).
    #[arg(long, global = true)]
    c_max: Option<u64>,
    /// Emit one JSON object per result.
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV rows with a header.
    #[arg(long, global = true)]
    csv: bool,
    /// Print the per-c terms of a coefficient evaluation.
    #[arg(long, global = true)]
    terms: bool,
    /// Worker threads for batch evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// key=value defaults file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Analytic,
    Exact,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// r-color partition counts p_r(n).
    Partitions {
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        n: Option<u64>,
        /// Evaluate every n from 0 to this bound.
        #[arg(long)]
        n_max: Option<u64>,
        /// analytic: formula only; exact: oracle only; both: certify.
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// One generalized Kloosterman sum A(m, n; c), indices scaled by 24.
    Kloosterman {
        #[arg(long)]
        m24: i64,
        #[arg(long)]
        n24: i64,
        #[arg(long)]
        c: u64,
    },
    /// One Poincaré-series Fourier coefficient, weight given as 2k.
    Coeff {
        #[arg(long)]
        two_k: i64,
        #[arg(long)]
        m24: i64,
        #[arg(long)]
        n24: i64,
    },
    /// Self-check suites: all, multiplier, kloosterman, bessel, identities, partitions.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// Smaller ranges for a fast smoke run.
        #[arg(long)]
        quick: bool,
    },
}

fn exit_code(err: &Error) -> ExitCode {
    match err {
        Error::Domain(_) => ExitCode::from(2),
        Error::Precision(_) => ExitCode::from(3),
    }
}

fn load_config(path: &PathBuf) -> Result<Vec<(String, String)>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read config {}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::domain(format!("config line {} is not key=value", lineno + 1)))?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn build_context(cli: &Cli) -> Result<PrecisionContext, Error> {
    let mut bits = None;
    let mut c_max = None;
    if let Some(path) = &cli.config {
        for (key, value) in load_config(path)? {
            match key.as_str() {
                "bits" => {
                    bits = Some(value.parse().map_err(|_| {
                        Error::domain(format!("config bits = '{value}' is not an integer"))
                    })?)
                }
                "c_max" => {
                    c_max = Some(value.parse().map_err(|_| {
                        Error::domain(format!("config c_max = '{value}' is not an integer"))
                    })?)
                }
                other => return Err(Error::domain(format!("unknown config key '{other}'"))),
            }
        }
    }
    let bits = cli.bits.or(bits).unwrap_or(128);
    let mut ctx = PrecisionContext::new(bits);
    ctx.c_max_initial = cli.c_max.or(c_max);
    Ok(ctx)
}

struct Emitter {
    json: bool,
    csv: bool,
    header_written: bool,
}

impl Emitter {
    fn emit(&mut self, record: &ReportRecord, human: String) {
        if self.json {
            println!("{}", record.to_json());
        } else if self.csv {
            if !self.header_written {
                println!("{}", ReportRecord::csv_header());
                self.header_written = true;
            }
            println!("{}", record.to_csv_row());
        } else {
            println!("{human}");
        }
    }
}

fn describe_count(r: u32, n: u64, count: &CertifiedCount) -> String {
    let cert = match count.certified {
        Some(true) => ", certified",
        Some(false) => ", MISMATCH",
        None => "",
    };
    format!(
        "p_{r}({n}) = {} (margin {:.3e}, c_max {}{})",
        count.rounded, count.margin, count.c_max, cert
    )
}

fn run_partitions(
    cli: &Cli,
    ctx: &PrecisionContext,
    r: u32,
    n: Option<u64>,
    n_max: Option<u64>,
    mode: Mode,
) -> Result<bool, Error> {
    let ns: Vec<u64> = match (n, n_max) {
        (Some(n), None) => vec![n],
        (None, Some(top)) => (0..=top).collect(),
        (Some(_), Some(_)) => {
            return Err(Error::domain("pass --n or --n-max, not both"));
        }
        (None, None) => return Err(Error::domain("pass --n or --n-max")),
    };
    let top = *ns.iter().max().expect("non-empty range");
    let table = match mode {
        Mode::Analytic => None,
        _ => Some(p_r_exact_table(r, top)?),
    };
    let mut emitter = Emitter {
        json: cli.json,
        csv: cli.csv,
        header_written: false,
    };

    if let Mode::Exact = mode {
        let table = table.as_ref().expect("exact mode builds the table");
        for &n in &ns {
            let value = table.get(n).expect("table covers the range");
            let record = ReportRecord {
                cmd: "partitions".into(),
                r: Some(r),
                n: Some(n),
                analytic_re: value.to_string(),
                analytic_im: "0".into(),
                rounded: Some(value.to_string()),
                margin: None,
                c_max: 0,
                certified: None,
                ms: 0,
            };
            emitter.emit(&record, format!("p_{r}({n}) = {value} (exact)"));
        }
        return Ok(true);
    }

    let evaluate = |n: u64| -> Result<(u64, CertifiedCount, u128), Error> {
        let start = Instant::now();
        let count = match &table {
            Some(table) => p_r_certified(r, n, ctx, table)?,
            None => p_r_analytic(r, n, ctx)?,
        };
        Ok((n, count, start.elapsed().as_millis()))
    };
    let results: Vec<_> = if cli.threads > 1 && ns.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?;
        pool.install(|| ns.par_iter().map(|&n| evaluate(n)).collect::<Result<_, _>>())?
    } else {
        ns.iter().map(|&n| evaluate(n)).collect::<Result<_, _>>()?
    };

    let mut all_certified = true;
    for (n, count, ms) in &results {
        if count.certified == Some(false) {
            all_certified = false;
        }
        if cli.terms && ns.len() == 1 && *n > 0 {
            print_terms(r, *n, ctx)?;
        }
        let record = ReportRecord::for_count("partitions", Some(r), *n, count, *ms);
        emitter.emit(&record, describe_count(r, *n, count));
    }
    Ok(all_certified)
}

fn print_terms(r: u32, n: u64, ctx: &PrecisionContext) -> Result<(), Error> {
    let trunc = Truncation {
        c_first: None,
        fixed: None,
        target: ctx.rounding_margin / 2.0,
        keep_terms: true,
    };
    let res = p_r_coefficient(r, n, ctx, &trunc)?;
    if let Some(terms) = res.terms {
        println!("# per-c terms of the coefficient series (value = -p_{r}({n}))");
        for term in terms {
            println!(
                "c = {:5}  A = {} + {}i  term = {} + {}i",
                term.c,
                decimal(&term.kloosterman.re),
                decimal(&term.kloosterman.im),
                decimal(&term.term.re),
                decimal(&term.term.im)
            );
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let ctx = build_context(cli)?;
    match &cli.cmd {
        Cmd::Partitions { r, n, n_max, mode } => run_partitions(cli, &ctx, *r, *n, *n_max, *mode),
        Cmd::Kloosterman { m24, n24, c } => {
            let start = Instant::now();
            let a = kloosterman_sum(
                RationalIndex24::new(*m24),
                RationalIndex24::new(*n24),
                *c,
                &ctx,
            )?;
            let record = ReportRecord::for_value(
                "kloosterman",
                &a.value,
                *c,
                start.elapsed().as_millis(),
            );
            let mut emitter = Emitter {
                json: cli.json,
                csv: cli.csv,
                header_written: false,
            };
            emitter.emit(
                &record,
                format!(
                    "A({m24}/24, {n24}/24; {c}) = {} + {}i ({} terms)",
                    decimal(&a.value.re),
                    decimal(&a.value.im),
                    a.term_count
                ),
            );
            Ok(true)
        }
        Cmd::Coeff { two_k, m24, n24 } => {
            let start = Instant::now();
            let pair = WeightIndexPair::new(*two_k, RationalIndex24::new(*m24))?;
            let trunc = Truncation {
                c_first: None,
                fixed: ctx.c_max_initial,
                target: ctx.rounding_margin / 2.0,
                keep_terms: cli.terms,
            };
            let res = eval_series(&pair, RationalIndex24::new(*n24), &ctx, &trunc)?;
            if let Some(terms) = &res.terms {
                for term in terms {
                    println!(
                        "c = {:5}  term = {} + {}i",
                        term.c,
                        decimal(&term.term.re),
                        decimal(&term.term.im)
                    );
                }
            }
            let record = ReportRecord::for_value(
                "coeff",
                &res.value,
                res.c_max,
                start.elapsed().as_millis(),
            );
            let mut emitter = Emitter {
                json: cli.json,
                csv: cli.csv,
                header_written: false,
            };
            emitter.emit(
                &record,
                format!(
                    "c({n24}/24) of P_{{{two_k}/2, {m24}/24}} = {} + {}i (c_max {}, tail {:.3e})",
                    decimal(&res.value.re),
                    decimal(&res.value.im),
                    res.c_max,
                    res.tail_estimate
                ),
            );
            Ok(true)
        }
        Cmd::Verify { suite, quick } => {
            let checks = run_suite(suite, &ctx, *quick)?;
            let mut all = true;
            for check in &checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                println!("{status} {} — {}", check.name, check.detail);
                all &= check.passed;
            }
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(4),
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}
