// Random 0/1 polytopes: every variant and policy, in certify mode, ends at
// the brute-force optimum.

use std::error::Error;

use geoscale::model::{random_instance, ExactRatio};
use geoscale::oracles::{brute_force_opt, Policy};
use geoscale::scaling::{self, check_invariants, pow2_above, EngineConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut runs = 0;
    for seed in 0..20u64 {
        let instance = random_instance(6, 24, 50, seed)?;
        let opt = brute_force_opt(&instance);
        let mu0 = ExactRatio::from_int(pow2_above(&instance.norm_inf()));
        let mut configs = vec![EngineConfig::mra(mu0.clone())];
        configs.extend(Policy::all(seed).map(|p| EngineConfig::feasibility(p, mu0.clone())));
        for config in configs {
            for alpha in ["3/2", "2", "3"] {
                let config = config.clone().with_alpha(alpha.parse()?).with_certify(true);
                let trace = scaling::run(&instance, &config)?;
                assert!(check_invariants(&instance, &trace)?.is_empty());
                assert_eq!(trace.summary.final_value, opt.value, "seed {seed}");
                runs += 1;
            }
        }
        if seed < 3 {
            println!("seed={seed} vertices={} optimum={} value={}", instance.vertex_count(), opt.vertex, opt.value);
        }
    }
    println!("{runs} runs reached the optimum");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
