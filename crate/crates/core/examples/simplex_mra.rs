// Maximum-ratio augmentation on the nested simplex with `c = (1, .., n)`.
//
// Prints every step of the run; the iterate climbs one vertex at a time.

use std::error::Error;

use geoscale::model::{simplex_instance, ExactRatio, SimplexObjective};
use geoscale::scaling::{self, check_invariants, pow2_above, EngineConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n = 6;
    let instance = simplex_instance(n, SimplexObjective::Linear)?;
    let mu0 = ExactRatio::from_int(pow2_above(&instance.norm_inf()));
    let trace = scaling::run(&instance, &EngineConfig::mra(mu0).with_certify(true))?;
    assert!(check_invariants(&instance, &trace)?.is_empty());

    println!("{:>3}  {:<4} {:>6} {:>8}  iterate", "i", "kind", "mu", "ratio");
    for step in &trace.steps {
        let ratio = step.ratio.as_ref().map_or_else(|| "-".to_string(), ToString::to_string);
        println!(
            "{:>3}  {:<4} {:>6} {:>8}  {}",
            step.index,
            step.kind,
            step.mu_before.to_string(),
            ratio,
            instance.vertex(step.iterate_after)
        );
    }
    let s = &trace.summary;
    println!("augment={} halve={} final={} value={}", s.augment, s.halve, s.final_bits, s.final_value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
