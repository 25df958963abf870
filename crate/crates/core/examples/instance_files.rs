// Instances and traces as JSON: write, parse back, and replay.

use std::error::Error;

use geoscale::model::{parse_instance, write_instance, ExactRatio};
use geoscale::oracles::Policy;
use geoscale::scaling::{self, check_invariants, EngineConfig, Trace};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // Objective entries may be strings (any size) or plain JSON integers.
    let text = r#"{"n":4,"vertices":["0000","1000","0110","1111"],"c":["123456789012345678901234567890",-3,4,1],"start":0}"#;
    let instance = parse_instance(text)?;
    let written = write_instance(&instance);
    println!("{written}");
    assert_eq!(parse_instance(&written)?.digest(), instance.digest());

    let mu0: ExactRatio = "246913578024691357802469135781".parse()?;
    let trace = scaling::run(&instance, &EngineConfig::feasibility(Policy::Random { seed: 11 }, mu0).with_certify(true))?;
    let json = trace.to_json();
    let back = Trace::from_json(&json)?;
    assert_eq!(back, trace);
    assert!(check_invariants(&instance, &back)?.is_empty());
    println!("digest {}", instance.digest());
    println!("{} steps, final {} value {}", back.steps.len(), back.summary.final_bits, back.summary.final_value);

    for bad in [r#"{"n":2,"vertices":["01","0x"],"c":["1","1"],"start":0}"#, r#"{"n":2,"vertices":["01"],"c":[1.5,1],"start":0}"#] {
        println!("rejected: {}", parse_instance(bad).unwrap_err());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
