//! The `gvtoric` command line: argument parsing, configuration, output.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gvtoric::report::{diff_tables, verify_table};
use gvtoric::selftest::{self, SelftestBounds};
use gvtoric::table::TableFile;
use gvtoric::{gv, Error, Exec, GVTable, ToricDiagram, WCache};

const EXIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INTEGRALITY: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Local Gopakumar–Vafa polynomials of toric Calabi–Yau surfaces.
#[derive(Parser, Debug)]
#[command(name = "gvtoric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the table of P_Σ(x) for every class with |Σ| <= dmax.
    Compute(ComputeArgs),
    /// Recompute a table and check degrees and leading coefficients.
    Verify(VerifyArgs),
    /// Run the property suites and congruence sweeps.
    Selftest(SelftestArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SurfaceArg {
    P2,
    Fk,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct DiagramArgs {
    #[arg(long, value_enum, conflicts_with = "diagram")]
    surface: Option<SurfaceArg>,
    #[arg(long)]
    k: Option<u64>,
    /// Toric diagram as JSON.
    #[arg(long)]
    diagram: Option<PathBuf>,
    #[arg(long)]
    dmax: Option<u64>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Persistent W-value cache. GVTORIC_CACHE takes precedence.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    #[command(flatten)]
    run: RunArgs,
    /// Stored table to diff against a fresh computation.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long)]
    deep: bool,
}

#[derive(Debug)]
enum Failure {
    Config(String),
    Engine(Error),
    Internal(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownDiagram(_)
            | Error::InvalidDiagram(_)
            | Error::Format(_)
            | Error::Cache(_)
            | Error::ClassDimension { .. } => Failure::Config(e.to_string()),
            other => Failure::Engine(other),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

type Outcome = Result<u8, Failure>;

fn config<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Config(msg.into()))
}

/// Diagram and cutoff from flags, or from a stored table when the flags are
/// absent.
fn resolve_diagram(args: &DiagramArgs, stored: Option<&TableFile>) -> Result<(ToricDiagram, u64), Failure> {
    let from_flags = match (args.surface, &args.diagram) {
        (Some(SurfaceArg::P2), _) => {
            if args.k.is_some() {
                return config("--k only applies to --surface fk");
            }
            Some(ToricDiagram::p2())
        }
        (Some(SurfaceArg::Fk), _) => match args.k {
            Some(k) => Some(ToricDiagram::fk(k)),
            None => return config("--surface fk requires --k"),
        },
        (None, Some(path)) => {
            if args.k.is_some() {
                return config("--k only applies to --surface fk");
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            Some(ToricDiagram::from_json(&text)?)
        }
        (None, None) => None,
    };
    let diagram = match (from_flags, stored) {
        (Some(d), Some(t)) if d != t.diagram => return config("diagram flags disagree with the stored table"),
        (Some(d), _) => d,
        (None, Some(t)) => t.diagram.clone(),
        (None, None) => return config("one of --surface or --diagram is required"),
    };
    let d_max = match (args.dmax, stored) {
        (Some(d), _) => d,
        (None, Some(t)) => t.d_max,
        (None, None) => return config("--dmax is required"),
    };
    if d_max < 1 {
        return config("--dmax must be at least 1");
    }
    Ok((diagram, d_max))
}

fn cache_path(run: &RunArgs) -> Option<PathBuf> {
    std::env::var_os("GVTORIC_CACHE")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| run.cache.clone())
}

fn open_cache(run: &RunArgs) -> Result<WCache, Failure> {
    match cache_path(run) {
        Some(path) => Ok(WCache::open(path)?),
        None => Ok(WCache::in_memory()),
    }
}

fn exec_for(jobs: Option<usize>) -> Exec {
    match jobs {
        Some(1) => Exec::Sequential,
        _ => Exec::default(),
    }
}

/// Runs `f` on a pool of `jobs` threads when one is requested.
fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        Some(0) => config("--jobs must be at least 1"),
        #[cfg(feature = "parallel")]
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("building the worker pool")?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).context("writing to stdout")?;
            stdout.flush().context("writing to stdout")?;
        }
    }
    Ok(())
}

fn compute_table(diagram: &ToricDiagram, d_max: u64, run: &RunArgs) -> Result<GVTable, Failure> {
    let cache = open_cache(run)?;
    let exec = exec_for(run.jobs);
    let table = with_pool(run.jobs, || gv::gv_table(diagram, d_max, &cache, exec))??;
    cache.flush()?;
    Ok(table)
}

fn to_csv(table: &GVTable) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = table.diagram.class_names().to_vec();
    header.extend(["genus", "n_hat", "n"].map(String::from));
    w.write_record(&header).context("csv")?;
    for p in table.iter() {
        let n = p.sign_convert();
        let rows: Vec<(usize, String, String)> = if p.is_zero() {
            vec![(0, "0".into(), "0".into())]
        } else {
            p.coeffs
                .iter()
                .zip(&n)
                .enumerate()
                .map(|(g, (a, b))| (g, a.to_string(), b.to_string()))
                .collect()
        };
        for (g, n_hat, n) in rows {
            let mut rec: Vec<String> = p.sigma.components().iter().map(ToString::to_string).collect();
            rec.extend([g.to_string(), n_hat, n]);
            w.write_record(&rec).context("csv")?;
        }
    }
    Ok(w.into_inner().context("csv")?)
}

fn cmd_compute(args: &ComputeArgs) -> Outcome {
    let (diagram, d_max) = resolve_diagram(&args.diagram, None)?;
    let table = compute_table(&diagram, d_max, &args.run)?;
    let bytes = match args.format {
        Format::Json => table.to_json().into_bytes(),
        Format::Csv => to_csv(&table)?,
    };
    emit(args.run.out.as_ref(), &bytes)?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let stored = match &args.table {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            Some(TableFile::parse(&text)?)
        }
        None => None,
    };
    let (diagram, d_max) = resolve_diagram(&args.diagram, stored.as_ref())?;
    let table = compute_table(&diagram, d_max, &args.run)?;
    let mut report = verify_table(&table);
    if let Some(stored) = &stored {
        report.diffs = diff_tables(stored, &table);
        report.pass &= report.diffs.is_empty();
    }
    let mut text = serde_json::to_string_pretty(&report).context("serialising the report")?;
    text.push('\n');
    emit(args.run.out.as_ref(), text.as_bytes())?;
    Ok(if report.pass { 0 } else { EXIT_FAILED })
}

fn cmd_selftest(args: &SelftestArgs) -> Outcome {
    let bounds = if args.deep { SelftestBounds::deep() } else { SelftestBounds::default() };
    let cache = open_cache(&args.run)?;
    let exec = exec_for(args.run.jobs);
    let reports = with_pool(args.run.jobs, || selftest::run(&bounds, exec, &cache))?;
    cache.flush()?;
    let mut text = String::new();
    for r in &reports {
        text.push_str(&serde_json::to_string(r).context("serialising a claim")?);
        text.push('\n');
    }
    emit(args.run.out.as_ref(), text.as_bytes())?;
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { EXIT_FAILED })
}

/// Runs one invocation; `args` includes the program name. Returns the exit
/// status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    let outcome = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            match &f {
                Failure::Config(msg) => eprintln!("error: {msg}"),
                Failure::Engine(e @ Error::IntegralityViolation { .. }) => eprintln!("error: {e}"),
                Failure::Engine(e) => eprintln!("internal error: {e}"),
                Failure::Internal(e) => eprintln!("internal error: {e:#}"),
            }
            exit_code(&f)
        }
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Config(_) => EXIT_CONFIG,
        Failure::Engine(Error::IntegralityViolation { .. }) => EXIT_INTEGRALITY,
        Failure::Engine(_) | Failure::Internal(_) => EXIT_INTERNAL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let violation = Error::IntegralityViolation {
            sigma: vec![1],
            diagnostic: "1/2".into(),
        };
        assert_eq!(exit_code(&Failure::from(violation)), EXIT_INTEGRALITY);
        assert_eq!(exit_code(&Failure::from(Error::InvalidDiagram("x".into()))), EXIT_CONFIG);
        assert_eq!(exit_code(&Failure::from(Error::Cache("x".into()))), EXIT_CONFIG);
        assert_eq!(exit_code(&Failure::from(Error::NotPolynomial)), EXIT_INTERNAL);
        assert_eq!(exit_code(&Failure::from(anyhow::anyhow!("io"))), EXIT_INTERNAL);
    }
}
