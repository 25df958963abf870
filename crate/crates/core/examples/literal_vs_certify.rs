// Stopping exactly at `mu < 1/n` can leave a non-optimal iterate. Certify
// mode keeps augmenting until no improving vertex is left.

use std::error::Error;

use geoscale::model::{parse_instance, ExactRatio};
use geoscale::oracles::brute_force_opt;
use geoscale::scaling::{self, EngineConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // One improving vertex at distance 2 with gain 1: ratio 1/2 never beats mu.
    let instance = parse_instance(r#"{"n":3,"vertices":["000","110"],"c":["1","0","0"],"start":0}"#)?;
    let opt = brute_force_opt(&instance);
    println!("optimum {} value {}", opt.vertex, opt.value);

    let config = EngineConfig::mra(ExactRatio::from_int(5));
    for (label, config) in [("literal", config.clone()), ("certify", config.with_certify(true))] {
        let s = scaling::run(&instance, &config)?.summary;
        println!(
            "{label:<8} final={} value={} augment={} certify_augment={} halve={} certified={}",
            s.final_bits, s.final_value, s.augment, s.certify_augment, s.halve, s.certified
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
