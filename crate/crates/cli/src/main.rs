//! `crankrank`: tables, moments, verification and asymptotic reports for
//! partition crank and rank statistics.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crankrank::asymptotic::{moment_trends, ospt_quarter_trend, DTildeVariant, TrendReport};
use crankrank::circle::{self, BoundCheck, QuadratureReport};
use crankrank::moments::{
    build_table, positive_count, symmetrized_from_table, Convention, MomentTable, MomentVariant,
};
use crankrank::parity::parity_suite;
use crankrank::series::euler_inverse;
use crankrank::verify::{run_suite_with, Tables};
use crankrank::{Error, Statistic};

/// Largest table size accepted; dense tables grow quadratically.
const MAX_TABLE_N: usize = 4000;

#[derive(Parser, Debug)]
#[command(name = "crankrank", version, about = "Crank and rank moments of integer partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Largest N computed
    #[arg(long, default_value_t = 200)]
    nmax: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Crank or rank distributions M(m,N) / N(m,N)
    Tables {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Kind::Crank)]
        kind: Kind,
        /// Value used for the crank at N = 1
        #[arg(long, value_enum, default_value_t = ConventionArg::GeneratingFunction)]
        convention: ConventionArg,
    },
    /// Full, positive or symmetrized moments
    Moments {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Kind::Crank)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = VariantArg::Positive)]
        variant: VariantArg,
        /// Moment orders (comma separated)
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        r: Vec<u32>,
        #[arg(long, value_enum, default_value_t = ConventionArg::GeneratingFunction)]
        convention: ConventionArg,
    },
    /// spt(N) and ospt(N)
    SptOspt {
        #[command(flatten)]
        common: Common,
    },
    /// Run the exact identity and inequality suite
    Verify {
        #[command(flatten)]
        common: Common,
        /// Moment orders to check (the largest one bounds the suite)
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8,9,10")]
        r: Vec<u32>,
        /// Largest N checked by enumeration
        #[arg(long, default_value_t = 40)]
        brute_max: usize,
    },
    /// Compare exact moments with their asymptotic predictions
    Asym {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6")]
        r: Vec<u32>,
        /// Ladder of N (strictly increasing)
        #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
        ladder: Vec<usize>,
        #[arg(long, value_enum, default_value_t = DTildeArg::Eta)]
        dtilde_variant: DTildeArg,
    },
    /// Circle-method integrals and bound checks
    Circle {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        r: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "1,3")]
        ell: Vec<u32>,
        /// Ladder of N (strictly increasing)
        #[arg(long, value_delimiter = ',', default_value = "50,100")]
        ladder: Vec<usize>,
        /// Emit a bound-check grid instead of the coefficient integrals
        #[arg(long, value_enum)]
        grid: Option<Grid>,
        #[arg(long, value_enum, default_value_t = DTildeArg::Eta)]
        dtilde_variant: DTildeArg,
    },
    /// Parity of spt and ospt against the factorization of 24N - 1
    Parity {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Crank,
    Rank,
}

impl From<Kind> for Statistic {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Crank => Statistic::Crank,
            Kind::Rank => Statistic::Rank,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConventionArg {
    GeneratingFunction,
    Combinatorial,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::GeneratingFunction => Convention::GeneratingFunction,
            ConventionArg::Combinatorial => Convention::Combinatorial,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VariantArg {
    Full,
    Positive,
    Symmetrized,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DTildeArg {
    Eta,
    Printed,
}

impl From<DTildeArg> for DTildeVariant {
    fn from(d: DTildeArg) -> Self {
        match d {
            DTildeArg::Eta => DTildeVariant::Eta,
            DTildeArg::Printed => DTildeVariant::Printed,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Grid {
    Qinfty,
    SResidual,
    FAway,
    Glj,
}

/// Failure with its exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(_) | Error::Io(_) => Failure::Resource(e.to_string()),
            Error::Unsupported(_) | Error::Domain(_) | Error::OutOfRange(_) | Error::TruncationMismatch(..) => {
                Failure::Usage(e.to_string())
            }
            Error::Convergence { .. } | Error::Consistency(_) | Error::InsufficientData(_) => {
                Failure::Verification(e.to_string())
            }
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Resource(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn open_output(common: &Common) -> Result<Box<dyn Write>, Failure> {
    Ok(match &common.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(out: &mut dyn Write, v: &Value) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::Resource(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn check_nmax(nmax: usize) -> Outcome {
    if nmax > MAX_TABLE_N {
        return Err(Failure::Resource(format!(
            "nmax {nmax} exceeds the table limit {MAX_TABLE_N}"
        )));
    }
    Ok(())
}

fn check_ladder(ladder: &[usize]) -> Outcome {
    if ladder.is_empty() || ladder.windows(2).any(|w| w[1] <= w[0]) || ladder[0] == 0 {
        return Err(Failure::Usage("ladder must be positive and strictly increasing".into()));
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run_tables(common: &Common, kind: Kind, convention: ConventionArg) -> Outcome {
    check_nmax(common.nmax)?;
    let table = build_table(kind.into(), common.nmax, convention.into());
    let mut out = open_output(common)?;
    match common.format {
        Format::Csv => table.write_csv(&mut out)?,
        Format::Json => {
            let rows: Vec<Value> = (0..=table.nmax())
                .map(|n| {
                    let counts: Vec<String> = table.row(n).iter().map(|c| c.to_string()).collect();
                    json!({ "N": n, "m_min": -(n as i64), "counts": counts })
                })
                .collect();
            write_json(&mut out, &json!({ "kind": table.kind(), "rows": rows }))?;
        }
    }
    out.flush()?;
    Ok(())
}

fn run_moments(common: &Common, kind: Kind, variant: VariantArg, rs: &[u32], convention: ConventionArg) -> Outcome {
    check_nmax(common.nmax)?;
    let table = build_table(kind.into(), common.nmax, convention.into());
    let mut tables = Vec::new();
    for &r in rs {
        let t = match variant {
            VariantArg::Full => MomentTable::full(&table, r)?,
            VariantArg::Positive => MomentTable::positive(&table, r)?,
            VariantArg::Symmetrized if r == 0 => positive_count(&table)?,
            VariantArg::Symmetrized => symmetrized_from_table(&table, r)?,
        };
        tables.push(t);
    }
    let mut out = open_output(common)?;
    match common.format {
        Format::Csv => {
            writeln!(out, "statistic,variant,r,N,value")?;
            for t in &tables {
                for n in 0..=t.nmax() {
                    writeln!(out, "{},{},{},{},{}", t.kind, variant_name(t.variant), t.r, n, t.value(n))?;
                }
            }
        }
        Format::Json => write_json(&mut out, &to_json(&tables))?,
    }
    out.flush()?;
    Ok(())
}

fn variant_name(v: MomentVariant) -> &'static str {
    v.name()
}

fn run_spt_ospt(common: &Common) -> Outcome {
    check_nmax(common.nmax)?;
    let tables = Tables::build(common.nmax)?;
    let s = &tables.spt_ospt;
    let mut out = open_output(common)?;
    match common.format {
        Format::Csv => s.write_csv(&mut out)?,
        Format::Json => {
            let rows: Vec<Value> = (1..=s.nmax())
                .map(|n| json!({ "N": n, "spt": s.spt[n].to_string(), "ospt": s.ospt[n].to_string() }))
                .collect();
            write_json(&mut out, &Value::Array(rows))?;
        }
    }
    out.flush()?;
    Ok(())
}

fn run_verify(common: &Common, rs: &[u32], brute_max: usize) -> Outcome {
    check_nmax(common.nmax)?;
    let r_max = rs.iter().copied().max().unwrap_or(0);
    if r_max == 0 {
        return Err(Failure::Usage("--r needs a positive order".into()));
    }
    let tables = Tables::build(common.nmax)?;
    let brute = brute_max.min(common.nmax).min(crankrank::partition::ENUMERATION_CAP);
    let report = run_suite_with(&tables, brute, r_max)?;
    let mut out = open_output(common)?;
    match common.format {
        Format::Csv => {
            writeln!(out, "check,pass,cases,first_counterexample")?;
            for c in &report.checks {
                let ce = c.first_counterexample.as_deref().unwrap_or("").replace('"', "'");
                writeln!(out, "{},{},{},\"{}\"", c.name, c.pass, c.cases, ce)?;
            }
        }
        Format::Json => write_json(&mut out, &to_json(&report))?,
    }
    out.flush()?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Failure::Verification(format!(
            "{} failed: {}",
            c.name,
            c.first_counterexample.as_deref().unwrap_or("")
        ))),
    }
}

fn trend_csv(out: &mut dyn Write, reports: &[TrendReport]) -> Outcome {
    writeln!(out, "target,r,ell,N,exact_log,predicted_log,ratio,fitted_exponent")?;
    for t in reports {
        let ell = t.ell.map(|e| e.to_string()).unwrap_or_default();
        for i in 0..t.ns.len() {
            writeln!(
                out,
                "{},{},{},{},{:.12e},{:.12e},{:.12e},{:.6}",
                t.target, t.r, ell, t.ns[i], t.exact_log[i], t.predicted_log[i], t.ratios[i], t.fitted_exponent
            )?;
        }
    }
    Ok(())
}

fn run_asym(common: &Common, rs: &[u32], ladder: &[usize], variant: DTildeArg) -> Outcome {
    check_ladder(ladder)?;
    if ladder.len() < 3 {
        return Err(Failure::Usage("the ladder needs at least 3 points".into()));
    }
    let nmax = *ladder.last().unwrap();
    check_nmax(nmax)?;
    let tables = Tables::build(nmax)?;
    let mut reports = Vec::new();
    for &r in rs {
        if r == 0 {
            return Err(Failure::Usage("orders start at 1".into()));
        }
        reports.extend(moment_trends(&tables.crank, &tables.rank, r, ladder, variant.into())?);
    }
    let p = euler_inverse(nmax);
    reports.push(ospt_quarter_trend(&tables.spt_ospt.ospt, p.coeffs(), ladder)?);
    let mut out = open_output(common)?;
    match common.format {
        Format::Csv => trend_csv(&mut out, &reports)?,
        Format::Json => write_json(&mut out, &to_json(&reports))?,
    }
    out.flush()?;
    Ok(())
}

fn quadrature_csv(out: &mut dyn Write, reports: &[QuadratureReport]) -> Outcome {
    writeln!(
        out,
        "N,ell,r,I_prime_re,I_prime_im,I_double_prime_re,I_double_prime_im,exact,relative_error,panels,arc_ratio"
    )?;
    for q in reports {
        writeln!(
            out,
            "{},{},{},{:.15e},{:.15e},{:.15e},{:.15e},{},{:.3e},{},{:.3e}",
            q.n,
            q.ell,
            q.r,
            q.i_prime[0],
            q.i_prime[1],
            q.i_double_prime[0],
            q.i_double_prime[1],
            q.exact_coefficient,
            q.relative_error,
            q.panel_count,
            q.arc_ratio
        )?;
    }
    Ok(())
}

fn run_circle(
    common: &Common,
    rs: &[u32],
    ells: &[u32],
    ladder: &[usize],
    grid: Option<Grid>,
    variant: DTildeArg,
) -> Outcome {
    check_ladder(ladder)?;
    let mut out = open_output(common)?;
    if let Some(grid) = grid {
        let ns: Vec<u64> = ladder.iter().map(|&n| n as u64).collect();
        let mut checks: Vec<BoundCheck> = Vec::new();
        match grid {
            Grid::Qinfty => checks.push(circle::qinfty_check(&ns, 9)?),
            Grid::SResidual | Grid::FAway => {
                for &ell in ells {
                    for &r in rs {
                        checks.push(match grid {
                            Grid::SResidual => circle::s_residual_check(ell, r, variant.into(), &ns, 9)?,
                            _ => circle::f_away_check(ell, r, &ns, 33)?,
                        });
                    }
                }
            }
            Grid::Glj => {
                for &ell in ells {
                    for j in -1..=1 {
                        for rho in [0.0, 0.5] {
                            checks.push(circle::glj_check(ell, j, rho, &ns, 9)?);
                        }
                    }
                }
            }
        }
        match common.format {
            Format::Csv => {
                for c in &checks {
                    writeln!(out, "# {}", c.name)?;
                    c.write_csv(&mut out)?;
                }
            }
            Format::Json => write_json(&mut out, &to_json(&checks))?,
        }
    } else {
        let mut reports = Vec::new();
        for &ell in ells {
            for &r in rs {
                for &n in ladder {
                    reports.push(circle::wright_integrals(ell, r, n, 8)?);
                }
            }
        }
        match common.format {
            Format::Csv => quadrature_csv(&mut out, &reports)?,
            Format::Json => write_json(&mut out, &to_json(&reports))?,
        }
    }
    out.flush()?;
    Ok(())
}

fn run_parity(common: &Common) -> Outcome {
    check_nmax(common.nmax)?;
    if common.nmax == 0 {
        return Err(Failure::Usage("parity needs nmax >= 1".into()));
    }
    let tables = Tables::build(common.nmax)?;
    let report = parity_suite(&tables.spt_ospt.spt, &tables.spt_ospt.ospt)?;
    let mut out = open_output(common)?;
    match common.format {
        Format::Csv => report.write_csv(&mut out)?,
        Format::Json => write_json(&mut out, &to_json(&report))?,
    }
    out.flush()?;
    match report.first_failure {
        None => Ok(()),
        Some(n) => Err(Failure::Verification(format!("parity criterion fails at N = {n}"))),
    }
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Tables { common, kind, convention } => run_tables(common, *kind, *convention),
        Command::Moments {
            common,
            kind,
            variant,
            r,
            convention,
        } => run_moments(common, *kind, *variant, r, *convention),
        Command::SptOspt { common } => run_spt_ospt(common),
        Command::Verify { common, r, brute_max } => run_verify(common, r, *brute_max),
        Command::Asym {
            common,
            r,
            ladder,
            dtilde_variant,
        } => run_asym(common, r, ladder, *dtilde_variant),
        Command::Circle {
            common,
            r,
            ell,
            ladder,
            grid,
            dtilde_variant,
        } => run_circle(common, r, ell, ladder, *grid, *dtilde_variant),
        Command::Parity { common } => run_parity(common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource error: {m}");
            ExitCode::from(3)
        }
    }
}
