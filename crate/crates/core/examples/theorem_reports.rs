// Predicted against observed step counts for each simplex construction, as
// CSV.

use std::error::Error;

use geoscale::analysis::{reports_to_csv, verify_theorem, Overrides, Theorem};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut reports = Vec::new();
    for theorem in Theorem::ALL {
        for n in 3..=8 {
            reports.push(verify_theorem(theorem, n, &Overrides::default())?);
        }
    }
    print!("{}", reports_to_csv(&reports));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
