//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::app::emit::format_value;
use crate::app::presets::{DEFAULT_B_SERIES, DEFAULT_STEPS, DEFAULT_T_SERIES};
use crate::app::{
    audit_formulas, emit_csv, emit_json, figure_preset, frozen_lqfi, run_sweep, AuditGrid, Figure, Series, SweepSpec,
    SweepVar, Verdict,
};
use crate::error::{QcorrError, Result};
use crate::model::ModelParams;
use crate::quantifiers::{correlations_with, NegativityConvention};

#[derive(Parser, Debug)]
#[command(name = "qcorr", version, about = "Thermal quantum correlations of a two-qubit XYZ chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Negativity, LQU and LQFI at one parameter point.
    Compute(ComputeArgs),
    /// Sweep one parameter for a family of curves and write CSV.
    Sweep(SweepArgs),
    /// Regenerate the figure data sets.
    Figures(FiguresArgs),
    /// Audit the printed closed forms against the oracle.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct ModelArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    jx: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    jy: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    jz: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    dz: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    gz: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    b: f64,
    /// Temperature.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t: f64,
}

impl ModelArgs {
    fn params(&self) -> ModelParams {
        ModelParams { jx: self.jx, jy: self.jy, jz: self.jz, dz: self.dz, gz: self.gz, b: self.b, t: self.t }
    }
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Dephasing strength on qubit A, in [0, 1].
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, default_value = "halved")]
    convention: NegativityConvention,
    /// Print JSON instead of `key=value` pairs.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    var: SweepVar,
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: usize,
    /// Comma-separated values of the series variable.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    series: Option<Vec<f64>>,
    /// Variable the series overrides; `t` unless the sweep is over `t`.
    #[arg(long)]
    series_var: Option<SweepVar>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, default_value = "halved")]
    convention: NegativityConvention,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FiguresArgs {
    /// A figure name or `all`.
    #[arg(long, default_value = "all")]
    which: String,
    #[arg(long, default_value = ".")]
    outdir: PathBuf,
    /// Comma-separated series values replacing the defaults.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    series: Option<Vec<f64>>,
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Report file; standard output when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Parse `argv` (program name first), run, and return the exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_VALIDATION
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_validation() {
                EXIT_VALIDATION
            } else {
                EXIT_NUMERICAL
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Compute(a) => compute(a, out),
        Command::Sweep(a) => sweep(a, out),
        Command::Figures(a) => figures(a, err),
        Command::Verify(a) => verify(a, out, err),
    }
}

fn compute(a: ComputeArgs, out: &mut dyn Write) -> Result<()> {
    let p = a.model.params();
    let triple = correlations_with(&p, a.gamma, a.convention)?;
    if a.json {
        let s = serde_json::to_string_pretty(&triple).map_err(|e| QcorrError::Io(e.to_string()))?;
        writeln!(out, "{s}")?;
    } else {
        writeln!(
            out,
            "negativity={} lqu={} lqfi={}",
            format_value(triple.negativity),
            format_value(triple.lqu),
            format_value(triple.lqfi)
        )?;
    }
    Ok(())
}

fn default_series_values(var: SweepVar) -> Vec<f64> {
    match var {
        SweepVar::B => DEFAULT_B_SERIES.to_vec(),
        _ => DEFAULT_T_SERIES.to_vec(),
    }
}

fn sweep(a: SweepArgs, out: &mut dyn Write) -> Result<()> {
    let series_var = a.series_var.unwrap_or(if a.var == SweepVar::T { SweepVar::B } else { SweepVar::T });
    let values = a.series.unwrap_or_else(|| default_series_values(series_var));
    let spec = SweepSpec {
        variable: a.var,
        from: a.from,
        to: a.to,
        steps: a.steps,
        fixed: a.model.params(),
        gamma: a.gamma,
        series_var,
        series: values.into_iter().map(|v| Series::new(series_var, v)).collect(),
        convention: a.convention,
    };
    let csv = emit_csv(&run_sweep(&spec)?)?;
    match a.out {
        Some(path) => write_file(&path, &csv),
        None => Ok(out.write_all(csv.as_bytes())?),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

fn figures(a: FiguresArgs, err: &mut dyn Write) -> Result<()> {
    let which: Vec<Figure> = if a.which == "all" { Figure::ALL.to_vec() } else { vec![a.which.parse()?] };
    for fig in which {
        let mut spec = figure_preset(fig);
        if let Some(values) = &a.series {
            spec.series = values.iter().map(|&v| Series::new(spec.series_var, v)).collect();
        }
        if let Some(steps) = a.steps {
            spec.steps = steps;
        }
        let rows = run_sweep(&spec)?;
        let path = a.outdir.join(format!("{}.csv", fig.name()));
        write_file(&path, &emit_csv(&rows)?)?;
        writeln!(err, "wrote {}", path.display())?;
        if spec.variable == SweepVar::Gamma {
            for w in frozen_lqfi(&rows) {
                writeln!(
                    err,
                    "{fig} {}: LQFI frozen on gamma in [{:.4}, {:.4}] (LQFI change {:.2}%, negativity change {:.2}%)",
                    w.series,
                    w.from,
                    w.to,
                    100.0 * w.lqfi_rel_change,
                    100.0 * w.negativity_rel_change
                )?;
            }
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let grid = AuditGrid { count: a.count, seed: a.seed, ..AuditGrid::default() };
    let report = audit_formulas(&grid)?;
    let json = emit_json(&report)?;
    match a.report {
        Some(path) => {
            write_file(&path, &json)?;
            for r in &report {
                let tag = if r.verdict == Verdict::Consistent { "consistent" } else { "INCONSISTENT" };
                writeln!(err, "{:<26} {:>12} {tag}", r.formula_id, format!("{:.3e}", r.max_abs_dev))?;
            }
            Ok(())
        }
        None => Ok(out.write_all(json.as_bytes())?),
    }
}
