//! `opct`: command-line front end for the claims harness and the norm
//! calculators.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use opct::harness::{
    emit_report, list_claims, parse_sweep, run_claim, ClaimOutcome, ExperimentConfig, ReportFormat, Scope,
};
use opct::linalg::ExtReal;
use opct::opspace::{matrix_level_norm_detailed, AscentConfig, SpaceDescriptor, VVElement};
use opct::{Error, Result, SeedSpec};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_RECORDED: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "opct", version, about = "Type and cotype constants of operator spaces, checked numerically")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the claims registry.
    ListClaims {
        /// Emit the full registry as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run one claim and judge its scaling exponent.
    ClaimCheck(CheckArgs),
    /// Matrix-level norm of an element in a Hilbertian operator space.
    Norm {
        /// Space descriptor: inline JSON or a path to a JSON file.
        #[arg(long)]
        space: String,
        /// Linear-indexed element: inline JSON or a path to a JSON file.
        #[arg(long)]
        element: String,
        /// Restarts for the optimised norms (R+C, min).
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run every config in a sweep file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Write `<claim_id>.json` reports into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(long)]
    id: String,
    #[arg(long)]
    p: Option<ExtReal>,
    #[arg(long)]
    q: Option<ExtReal>,
    #[arg(long)]
    r: Option<ExtReal>,
    #[arg(long)]
    s: Option<ExtReal>,
    /// Comma-separated dimension ladder, e.g. 8,16,32,64.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Report file; the extension picks json, csv or svg.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG log-log plot.
    #[arg(long)]
    plot: Option<PathBuf>,
}

/// Inline JSON if it parses as such, otherwise a file path.
fn read_json_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        Ok(std::fs::read_to_string(arg)?)
    }
}

fn list(json: bool) -> Result<u8> {
    let claims = list_claims();
    if json {
        println!("{}", serde_json::to_string_pretty(claims)?);
        return Ok(EXIT_PASS);
    }
    println!("{:<26} {:<6} {:>9}  {:<30} citation", "id", "scope", "exponent", "status");
    for c in claims {
        let scope = match c.scope {
            Scope::In => "in",
            Scope::Out => "out",
        };
        println!("{:<26} {:<6} {:>9.4}  {:<30} {}", c.id, scope, c.expected_exponent, c.status, c.paper_ref.citation);
    }
    Ok(EXIT_PASS)
}

fn claim_check(a: CheckArgs) -> Result<u8> {
    let rec = opct::harness::Registry::bundled().get(&a.id)?;
    if !rec.computable {
        println!("{}: {}", rec.id, rec.status);
        return Ok(EXIT_RECORDED);
    }
    let mut cfg = ExperimentConfig::for_claim(&a.id)?;
    for (name, v) in [("p", a.p), ("q", a.q), ("r", a.r), ("s", a.s)] {
        if let Some(v) = v {
            cfg.params.insert(name.to_string(), v);
        }
    }
    if let Some(d) = a.dims {
        cfg.dims = d;
    }
    if let Some(s) = a.samples {
        cfg.samples = s;
    }
    if let Some(s) = a.seed {
        cfg.seed = SeedSpec::new(s, 0);
    }
    if let Some(t) = a.tol {
        cfg.tolerance = t;
    }
    let report = match run_claim(&cfg)? {
        ClaimOutcome::Checked(r) => r,
        ClaimOutcome::RecordedOnly { claim_id, status } => {
            println!("{claim_id}: {status}");
            return Ok(EXIT_RECORDED);
        }
    };
    for p in &report.points {
        println!("  n = {:>5}  value = {:.6e}  stderr = {:.2e}", p.n, p.value, p.stderr);
    }
    for v in &report.violations {
        println!("  violation: {v}");
    }
    println!("{}", report.summary());
    if let Some(out) = &a.out {
        emit_report(&report, ReportFormat::from_path(out).unwrap_or(ReportFormat::Json), out)?;
    }
    if let Some(plot) = &a.plot {
        emit_report(&report, ReportFormat::Svg, plot)?;
    }
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn norm(space: &str, element: &str, restarts: Option<usize>, seed: Option<u64>) -> Result<u8> {
    let space: SpaceDescriptor = serde_json::from_str(&read_json_arg(space)?)?;
    let x: VVElement = serde_json::from_str(&read_json_arg(element)?)?;
    let mut cfg = AscentConfig::default();
    if let Some(r) = restarts {
        cfg = cfg.with_restarts(r);
    }
    if let Some(s) = seed {
        cfg = cfg.with_seed(SeedSpec::new(s, 0));
    }
    cfg.validate()?;
    let v = matrix_level_norm_detailed(&space, &x, &cfg)?;
    println!(
        "{}",
        serde_json::json!({ "space": space, "value": v.value, "certainty": v.certainty, "label": v.label() })
    );
    Ok(EXIT_PASS)
}

fn sweep(config: &Path, out_dir: Option<&Path>) -> Result<u8> {
    let configs = parse_sweep(&std::fs::read_to_string(config)?)?;
    let (mut failed, mut recorded, mut errored) = (false, false, false);
    for cfg in &configs {
        match run_claim(cfg) {
            Ok(ClaimOutcome::Checked(r)) => {
                println!("{}", r.summary());
                failed |= !r.pass;
                if let Some(dir) = out_dir {
                    emit_report(&r, ReportFormat::Json, &dir.join(format!("{}.json", r.claim_id)))?;
                }
            }
            Ok(ClaimOutcome::RecordedOnly { claim_id, status }) => {
                println!("---- {claim_id}: {status}");
                recorded = true;
            }
            Err(e) => {
                println!("ERROR {}: {e}", cfg.claim_id);
                errored = true;
            }
        }
    }
    Ok(if errored {
        EXIT_ERROR
    } else if failed {
        EXIT_FAIL
    } else if recorded {
        EXIT_RECORDED
    } else {
        EXIT_PASS
    })
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("OPCT_THREADS") {
        let n: usize =
            v.trim().parse().map_err(|_| Error::Parameter(format!("OPCT_THREADS must be a count, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Parameter(format!("cannot size the thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::ListClaims { json } => list(json),
        Command::ClaimCheck(a) => claim_check(a),
        Command::Norm { space, element, restarts, seed } => norm(&space, &element, restarts, seed),
        Command::Sweep { config, out_dir } => sweep(&config, out_dir.as_deref()),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
