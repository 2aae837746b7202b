use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bcontinuum::analysis::Interval;
use bcontinuum::casebook::{
    emit_report, list_cases, run_case_with, series_check, CaseReport, Config, Params,
};
use bcontinuum::Error;

#[derive(Parser)]
#[command(
    name = "bcontinuum",
    version,
    about = "Hyperreal case studies and series checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Registered case studies.
    #[command(subcommand)]
    Case(CaseCommand),
    /// User-defined series.
    #[command(subcommand)]
    Series(SeriesCommand),
}

#[derive(Subcommand)]
enum CaseCommand {
    /// Run one case and emit its report.
    Run {
        name: String,
        /// Case parameter, e.g. `--param A=3`.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[command(flatten)]
        opts: Box<RunOpts>,
    },
    /// List the registered cases.
    List,
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// Convergence checks for a series given by its term in `i` and `x`.
    Check {
        expr: String,
        /// `a,b` or a bracketed form such as `(0,1]`.
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
        #[command(flatten)]
        opts: RunOpts,
    },
}

#[derive(Args)]
struct RunOpts {
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    horizon: Option<u64>,
    #[arg(long)]
    tail_window: Option<u64>,
    /// evens, odds or none.
    #[arg(long)]
    parity: Option<String>,
    #[arg(long = "st-tol")]
    st_tol: Option<f64>,
    #[arg(long = "deriv-tol")]
    deriv_tol: Option<f64>,
    #[arg(long)]
    grid: Option<u64>,
    /// json, csv or text.
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunOpts {
    fn config(&self) -> Result<Config, Error> {
        let mut cfg = Config::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
            cfg.apply_kv(&text)?;
        }
        let overrides = [
            ("horizon", self.horizon.map(|v| v.to_string())),
            ("tail_window", self.tail_window.map(|v| v.to_string())),
            ("parity_choice", self.parity.clone()),
            ("st_tolerance", self.st_tol.map(|v| v.to_string())),
            (
                "derivative_tolerance",
                self.deriv_tol.map(|v| v.to_string()),
            ),
            ("grid_density", self.grid.map(|v| v.to_string())),
            ("output_format", self.format.clone()),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_params(raw: &[String]) -> Result<Params, Error> {
    raw.iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::InvalidArgument(format!("parameter `{p}` is not KEY=VALUE")))
        })
        .collect()
}

/// Write through a sibling temporary file and rename it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

fn deliver(report: &CaseReport, cfg: &Config, out: Option<&Path>) -> Result<ExitCode, String> {
    let bytes = emit_report(report, cfg.output_format);
    match out {
        Some(path) => write_atomic(path, &bytes).map_err(|e| format!("{}: {e}", path.display()))?,
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| e.to_string())?,
    }
    if report.has_errors() {
        for v in report.verdicts.iter().filter(|v| v.is_error()) {
            eprintln!("error in {}: {}", v.label, v.witness.flatten());
        }
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Case(CaseCommand::List) => {
            for c in list_cases() {
                println!("{c}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Case(CaseCommand::Run { name, params, opts }) => {
            let cfg = opts.config().map_err(|e| e.to_string())?;
            let params = parse_params(&params).map_err(|e| e.to_string())?;
            let report = run_case_with(&name, &cfg, &params).map_err(|e| e.to_string())?;
            deliver(&report, &cfg, opts.out.as_deref())
        }
        Command::Series(SeriesCommand::Check {
            expr,
            interval,
            opts,
        }) => {
            let cfg = opts.config().map_err(|e| e.to_string())?;
            let interval: Interval = interval.parse().map_err(|e: Error| e.to_string())?;
            let report = series_check(&expr, &interval, &cfg).map_err(|e| e.to_string())?;
            deliver(&report, &cfg, opts.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("bcontinuum: {msg}");
            ExitCode::from(2)
        }
    }
}
