//! Runs every computable claim at its default configuration and prints a
//! one-line verdict per claim.
//!
//! `cargo run --release --example scaling_claims [id ...]`

use opct::harness::{list_claims, run_claim, ClaimOutcome, ExperimentConfig};

fn main() -> opct::Result<()> {
    let only: Vec<String> = std::env::args().skip(1).collect();
    for rec in list_claims() {
        if !only.is_empty() && !only.contains(&rec.id) {
            continue;
        }
        if !rec.computable {
            println!("---- {}: {}", rec.id, rec.status);
            continue;
        }
        match run_claim(&ExperimentConfig::for_claim(&rec.id)?)? {
            ClaimOutcome::Checked(r) => {
                println!("{}  [{:.2}s]", r.summary(), r.runtime_seconds);
                for v in &r.violations {
                    println!("     ! {v}");
                }
            }
            ClaimOutcome::RecordedOnly { claim_id, status } => {
                println!("---- {claim_id}: {status}")
            }
        }
    }
    Ok(())
}
