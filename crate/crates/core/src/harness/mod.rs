//! Claims registry, experiment runner, slope fitting and report output.

mod config;
mod fit;
mod registry;
mod report;
mod runner;
mod witnesses;

pub use config::{parse_sweep, ConfigOverrides, ExperimentConfig, TAPERED_SAMPLES, TAPER_ABOVE};
pub use fit::{fit_slope, SlopeFit};
pub use registry::{list_claims, CheckKind, ClaimDefaults, ClaimRecord, PaperRef, Registry, Scope, RECORDED_ONLY};
pub use report::{emit_report, render, render_csv, render_svg, ReportFormat};
pub use runner::{run_checked, run_claim, ClaimOutcome, ReportPoint, ScalingReport};
