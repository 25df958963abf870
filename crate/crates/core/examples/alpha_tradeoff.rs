// Dividing by `alpha` instead of 2: fewer augmentations per halving as
// `alpha` grows, more halvings as it shrinks.

use std::error::Error;

use geoscale::analysis::{verify_theorem, Overrides, Theorem};
use geoscale::model::ExactRatio;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n = 12;
    println!("{:>6} {:>6} {:>10} {:>9} {:>7}", "alpha", "omega", "predicted", "observed", "halve");
    for alpha in ["5/4", "4/3", "3/2", "7/4", "2"] {
        let overrides = Overrides { alpha: Some(alpha.parse::<ExactRatio>()?), ..Overrides::default() };
        let report = verify_theorem(Theorem::AlphaGeometric, n, &overrides)?;
        println!(
            "{:>6} {:>6} {:>10} {:>9} {:>7}",
            alpha,
            report.omega.map_or_else(|| "-".to_string(), |w| w.to_string()),
            report.predicted.augment,
            report.observed.augment,
            report.observed.halve
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
