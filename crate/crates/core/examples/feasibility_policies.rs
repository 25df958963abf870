// The feasibility variant under each selection policy on `S_n` with
// `c_i = 2^i`. The policy changes the path, never the final value.

use std::error::Error;

use geoscale::model::{int_pow, simplex_instance, ExactRatio, SimplexObjective};
use geoscale::oracles::{feasible_set, Policy};
use geoscale::scaling::{self, EngineConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n = 6;
    let instance = simplex_instance(n, SimplexObjective::Geometric { base: 2 })?;

    // The candidates at the start with mu = 32.
    let mu = ExactRatio::from_int(32);
    for pick in feasible_set(&instance, 0, &mu)? {
        println!("feasible at mu=32: {} ratio {}", instance.vertex(pick.index), pick.ratio);
    }

    let mu0 = ExactRatio::from_int(int_pow(2, n as u32 + 1));
    for policy in Policy::all(7) {
        let trace = scaling::run(&instance, &EngineConfig::feasibility(policy, mu0.clone()).with_certify(true))?;
        let path: Vec<String> = trace.augmentations().map(|(_, to)| instance.vertex(to).to_string()).collect();
        println!(
            "{:<12} augment={} halve={} value={} path={}",
            policy.to_string(),
            trace.summary.augment,
            trace.summary.halve,
            trace.summary.final_value,
            path.join(" -> ")
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
