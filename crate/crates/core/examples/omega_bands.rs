// Jump-size counts for a few divisors, the band table under both
// definitions, and the audit of the reference table.

use std::error::Error;

use geoscale::analysis::{audit_reference_bands, omega_bands, omega_report, OmegaDefinition};
use geoscale::model::ExactRatio;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for alpha in ["4/3", "3/2", "2", "2001/1000", "3", "10"] {
        let report = omega_report(&alpha.parse::<ExactRatio>()?)?;
        println!(
            "alpha={alpha:<10} ceil={} printed={} corrected={}",
            report.ceiling, report.omega_paper, report.omega_corrected
        );
    }

    let alpha_max: ExactRatio = "3".parse()?;
    for def in [OmegaDefinition::Printed, OmegaDefinition::Corrected] {
        println!("bands ({def}):");
        for band in omega_bands(def, &alpha_max)? {
            println!("  {band}");
        }
    }

    println!("reference table:");
    for row in audit_reference_bands() {
        println!("  {row}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
