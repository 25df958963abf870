// Early stopping: once `mu <= 1/2`, any improving vertex is taken instead of
// halving, and the run ends as soon as none is left.

use std::error::Error;

use geoscale::analysis::{predicted_halvings, HalvingMode};
use geoscale::model::{simplex_instance, ExactRatio, SimplexObjective};
use geoscale::scaling::{self, EngineConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let alpha = ExactRatio::from_int(2);
    for n in [3usize, 6, 10] {
        let instance = simplex_instance(n, SimplexObjective::Linear)?;
        let mu0 = ExactRatio::from_int(scaling::pow2_above(&instance.norm_inf()));
        let literal = scaling::run(&instance, &EngineConfig::mra(mu0.clone()))?.summary;
        let early = scaling::run(&instance, &EngineConfig::mra(mu0.clone()).with_early_stop(true))?.summary;
        println!(
            "n={n:<3} literal halve={} (predicted {})  early halve={} (predicted {}) value={}",
            literal.halve,
            predicted_halvings(&mu0, &alpha, n, HalvingMode::Literal),
            early.halve,
            predicted_halvings(&mu0, &alpha, n, HalvingMode::EarlyStop),
            early.final_value
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
