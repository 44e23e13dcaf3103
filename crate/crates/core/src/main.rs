use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coqe::harness::{
    emit_report, parse_plane, parse_sample_point, resolve_manifest, run_named, CheckName, HarnessError, RunOptions,
};

#[derive(Parser)]
#[command(name = "coqe", version, about = "Curvature and quasi-Einstein structure checks for coordinate metrics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit the machine-readable report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled equivalence and constant fits.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Override the sample point, e.g. "t=0,x=1/2".
    #[arg(long, global = true)]
    sample_point: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Christoffel symbols, Ricci tensor and scalar curvature.
    Curvature { manifest: String },
    /// Structure constraints and the trace, directional and length identities.
    Verify { manifest: String },
    /// Quasi-Einstein class of a verified structure.
    Classify { manifest: String },
    /// Sectional curvature of a plane, or of every coordinate plane.
    Sectional {
        manifest: String,
        /// Two vectors, e.g. "1,0,0,0;0,1,0,0".
        #[arg(long)]
        plane: Option<String>,
    },
    /// Field equations and two-fluid identification.
    Fluid { manifest: String },
    /// Space-matter tensor divergence.
    Spacematter { manifest: String },
    /// Run named checks, or `all`.
    Report {
        manifest: String,
        /// Comma-separated check names; the manifest's list when absent.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    let (path, names, plane) = match &cli.command {
        Command::Curvature { manifest } => (manifest, vec!["curvature"], None),
        Command::Verify { manifest } => {
            (manifest, vec!["coqe-verify", "trace-identity", "generator-ricci", "length-identity"], None)
        }
        Command::Classify { manifest } => (manifest, vec!["classify"], None),
        Command::Sectional { manifest, plane } => (manifest, vec!["sectional"], plane.as_deref()),
        Command::Fluid { manifest } => (manifest, vec!["fluid"], None),
        Command::Spacematter { manifest } => (manifest, vec!["spacematter"], None),
        Command::Report { manifest, .. } => (manifest, Vec::new(), None),
    };
    let mut m = resolve_manifest(path)?;
    if let Some(sp) = &cli.global.sample_point {
        m = m.with_sample(&parse_sample_point(sp)?)?;
    }
    let mut names: Vec<String> = names.into_iter().map(String::from).collect();
    match &cli.command {
        Command::Fluid { .. } if m.missing_input(CheckName::EnergyDensities).is_none() => {
            names.push("energy-densities".into())
        }
        Command::Report { checks, .. } => names = checks.clone().unwrap_or_else(|| m.raw.checks.clone()),
        _ => {}
    }
    let checks = m.resolve_checks(&names)?;
    let opts = RunOptions { seed: cli.global.seed, plane: plane.map(|p| parse_plane(m.chart(), p)).transpose()? };
    let report = run_named(&m, &checks, &opts);
    let bytes = emit_report(&report, if cli.global.json { "json" } else { "text" })?;
    std::io::stdout().write_all(&bytes).map_err(|e| HarnessError::Io(e.to_string()))?;
    Ok(report.exit_code())
}
