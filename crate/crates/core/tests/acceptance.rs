//! Acceptance criteria A1-A10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use geoscale::analysis::{
    alpha_safe_mu0, audit_reference_bands, max_jump_empirical, omega_bands, omega_printed, predicted_halvings,
    HalvingMode, OmegaDefinition,
};
use geoscale::model::{int_pow, parse_instance, random_instance, simplex_instance, ExactInt, ExactRatio, Instance, SimplexObjective};
use geoscale::oracles::{brute_force_opt, Policy};
use geoscale::scaling::{self, check_invariants, pow2_above, EngineConfig, Trace};

fn r(s: &str) -> ExactRatio {
    s.parse().unwrap()
}

struct Run {
    instance: Instance,
    config: EngineConfig,
    trace: Trace,
}

impl Run {
    fn new(instance: Instance, config: EngineConfig) -> Run {
        let trace = scaling::run(&instance, &config).expect("engine run");
        Run { instance, config, trace }
    }

    /// Sizes of the augmenting jumps, measured in simplex levels.
    fn jumps(&self) -> Vec<usize> {
        self.trace
            .augmentations()
            .map(|(from, to)| self.instance.vertex(to).ones() - self.instance.vertex(from).ones())
            .collect()
    }
}

struct Outcome {
    id: &'static str,
    title: &'static str,
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new(id: &'static str, title: &'static str) -> Outcome {
        Outcome { id, title, failures: Vec::new(), detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn linear_mra(n: usize) -> (Instance, EngineConfig) {
    let instance = simplex_instance(n, SimplexObjective::Linear).unwrap();
    let mu0 = ExactRatio::from_int(pow2_above(&ExactInt::from(n)));
    (instance, EngineConfig::mra(mu0))
}

fn a1() -> (Outcome, Vec<Run>) {
    let mut out = Outcome::new("A1", "MRA on the linear simplex: n augmentations, exact halvings, one level per step");
    let start = Instant::now();
    let mut runs = Vec::new();
    for n in [3usize, 5, 8, 13, 20, 30] {
        let (instance, config) = linear_mra(n);
        let run = Run::new(instance, config);
        let s = &run.trace.summary;
        let halve = predicted_halvings(&run.config.mu0, &run.config.alpha, n, HalvingMode::Literal);
        out.check(s.augment == n, || format!("n={n}: augment {} != {n}", s.augment));
        out.check(s.halve as u64 == halve, || format!("n={n}: halve {} != {halve}", s.halve));
        out.check(run.jumps().iter().all(|&j| j == 1), || format!("n={n}: jumps {:?}", run.jumps()));
        runs.push(run);
    }
    let elapsed = start.elapsed();
    out.check(elapsed < Duration::from_secs(1), || format!("runtime {elapsed:?} >= 1s"));
    out.detail = format!("6 dimensions in {elapsed:.2?}");
    (out, runs)
}

fn pow2_feasibility(n: usize) -> Run {
    let instance = simplex_instance(n, SimplexObjective::Geometric { base: 2 }).unwrap();
    let mu0 = ExactRatio::from_int(int_pow(2, n as u32 + 1));
    Run::new(instance, EngineConfig::feasibility(Policy::MaxGain, mu0))
}

fn a2() -> (Outcome, Vec<Run>) {
    let mut out = Outcome::new("A2", "feasibility/max-gain on the base-2 simplex: n/3 augmentations, jumps of at most 3");
    let mut runs = Vec::new();
    for n in [6usize, 9, 12, 21, 30, 7, 8] {
        let run = pow2_feasibility(n);
        let s = &run.trace.summary;
        let expected = n.div_ceil(3);
        let halve = predicted_halvings(&run.config.mu0, &r("2"), n, HalvingMode::Literal);
        out.check(s.augment == expected, || format!("n={n}: augment {} != {expected}", s.augment));
        out.check(s.halve as u64 == halve, || format!("n={n}: halve {} != {halve}", s.halve));
        out.check(run.jumps().iter().all(|j| (1..=3).contains(j)), || format!("n={n}: jumps {:?}", run.jumps()));
        if n == 6 {
            out.check((s.augment, s.halve) == (2, 10), || format!("n=6: ({}, {}) != (2, 10)", s.augment, s.halve));
        }
        runs.push(run);
    }
    out.detail = "n in {6,9,12,21,30} and {7,8}".into();
    (out, runs)
}

fn alpha_run(n: usize, alpha: &ExactRatio) -> Run {
    let base = u64::try_from(alpha.ceil()).unwrap();
    let instance = simplex_instance(n, SimplexObjective::Geometric { base }).unwrap();
    let config = EngineConfig::feasibility(Policy::MaxGain, alpha_safe_mu0(alpha, n)).with_alpha(alpha.clone());
    Run::new(instance, config)
}

fn a3() -> (Outcome, Vec<Run>) {
    let mut out = Outcome::new("A3", "alpha = 4/3: n augmentations of one level each");
    let alpha = r("4/3");
    let mut runs = Vec::new();
    for n in [4usize, 6, 10, 15] {
        let run = alpha_run(n, &alpha);
        let s = &run.trace.summary;
        let halve = predicted_halvings(&run.config.mu0, &alpha, n, HalvingMode::Literal);
        out.check(s.augment == n, || format!("n={n}: augment {} != {n}", s.augment));
        out.check(run.jumps().iter().all(|&j| j == 1), || format!("n={n}: jumps {:?}", run.jumps()));
        out.check(s.halve as u64 == halve, || format!("n={n}: halve {} != {halve}", s.halve));
        runs.push(run);
    }
    out.detail = "n in {4,6,10,15}".into();
    (out, runs)
}

fn a4() -> (Outcome, Vec<Run>) {
    let mut out = Outcome::new("A4", "divisor alpha in (1, 2]: ceil(n/omega) augmentations, jumps of at most omega");
    let mut runs = Vec::new();
    let mut rows = Vec::new();
    for (alpha, omega) in [("5/4", 1u64), ("3/2", 2), ("7/4", 3), ("2", 3)] {
        let a = r(alpha);
        let computed = omega_printed(&a).unwrap();
        out.check(computed == omega, || format!("alpha={alpha}: omega {computed} != {omega}"));
        for n in [6usize, 12, 18] {
            let run = alpha_run(n, &a);
            let expected = n.div_ceil(omega as usize);
            let observed = run.trace.summary.augment;
            out.check(observed == expected, || format!("alpha={alpha} n={n}: augment {observed} != {expected}"));
            let max_jump = max_jump_empirical(n, &a, Policy::MaxGain).unwrap();
            out.check(max_jump as u64 <= omega, || format!("alpha={alpha} n={n}: max jump {max_jump} > {omega}"));
            rows.push(format!("[alpha={alpha} n={n}] {observed}/{expected}"));
            runs.push(run);
        }
    }
    out.detail = format!("observed/expected {}", rows.join(" "));
    (out, runs)
}

fn a5() -> Outcome {
    let mut out = Outcome::new("A5", "omega bands up to 2 with exact breakpoints; divergence above 2 flagged");
    let bands = omega_bands(OmegaDefinition::Printed, &r("2")).unwrap();
    let got: Vec<(String, String, u64)> = bands.iter().map(|b| (b.lo.to_string(), b.hi.to_string(), b.omega)).collect();
    let want: Vec<(String, String, u64)> =
        [("1", "4/3", 1), ("4/3", "12/7", 2), ("12/7", "2", 3)].iter().map(|&(a, b, w)| (a.into(), b.into(), w)).collect();
    out.check(got == want, || format!("bands {got:?}"));
    for probe in ["2001/1000", "1457/728", "729/364"] {
        let w = omega_printed(&r(probe)).unwrap();
        out.check(w == 5, || format!("omega({probe}) = {w}, expected 5"));
    }
    let audit = audit_reference_bands();
    let flagged: Vec<bool> = audit.iter().map(|a| !a.agrees).collect();
    out.check(flagged == [false, false, false, true], || format!("audit flags {flagged:?}"));
    out.detail = "(2, 729/364] -> 5, reference value 6 flagged".into();
    out
}

fn a6_instance(seed: u64) -> Instance {
    let n = 1 + (seed % 8) as usize;
    let cap = 40.min(1usize << n);
    let m = 1 + (seed as usize * 7919) % cap;
    random_instance(n, m, 50, seed).unwrap()
}

fn a6_configs(instance: &Instance, seed: u64) -> Vec<EngineConfig> {
    let mu0 = ExactRatio::from_int(pow2_above(&instance.norm_inf()));
    let mut variants = vec![EngineConfig::mra(mu0.clone())];
    variants.extend(Policy::all(seed).map(|p| EngineConfig::feasibility(p, mu0.clone())));
    let mut configs = Vec::new();
    for config in variants {
        for alpha in ["3/2", "2", "3"] {
            configs.push(config.clone().with_alpha(r(alpha)).with_certify(true));
        }
    }
    configs
}

fn a6() -> (Outcome, Vec<Run>) {
    let mut out = Outcome::new("A6", "certify mode reaches the brute-force optimum on 200 random instances");
    let start = Instant::now();
    let results: Vec<(Run, ExactInt)> = (0..200u64)
        .into_par_iter()
        .flat_map_iter(|seed| {
            let instance = a6_instance(seed);
            let opt = brute_force_opt(&instance).value;
            a6_configs(&instance, seed).into_iter().map(move |config| (Run::new(instance.clone(), config), opt.clone()))
        })
        .collect();
    let elapsed = start.elapsed();
    for (run, opt) in &results {
        let s = &run.trace.summary;
        out.check(&s.final_value == opt && s.certified, || {
            format!("{} {:?}: value {} != {opt}", run.instance.digest(), run.trace.config.policy, s.final_value)
        });
    }
    out.check(elapsed < Duration::from_secs(30), || format!("runtime {elapsed:?} >= 30s"));
    out.detail = format!("{} runs in {elapsed:.2?}", results.len());
    (out, results.into_iter().map(|(run, _)| run).collect())
}

fn a7(runs: &[&Run]) -> Outcome {
    let mut out = Outcome::new("A7", "invariants hold on every trace from A1-A6");
    for run in runs {
        let violations = check_invariants(&run.instance, &run.trace).unwrap();
        out.check(violations.is_empty(), || format!("{}: {:?}", run.instance.digest(), violations));
        let s = &run.trace.summary;
        let bound = run.instance.vertex_count() - 1;
        out.check(s.augment + s.certify_augment <= bound, || format!("{} augmentations > {bound}", s.augment + s.certify_augment));
    }
    out.detail = format!("{} traces", runs.len());
    out
}

fn a8() -> Outcome {
    let mut out = Outcome::new("A8", "literal termination can stop short; certify mode does not");
    let instance = parse_instance(r#"{"n":3,"vertices":["000","110"],"c":["1","0","0"],"start":0}"#).unwrap();
    for config in [EngineConfig::mra(r("5")), EngineConfig::feasibility(Policy::MaxRatio, r("5"))] {
        let variant = format!("{:?}", config.variant);
        let literal = scaling::run(&instance, &config).unwrap().summary;
        let certified = scaling::run(&instance, &config.with_certify(true)).unwrap().summary;
        out.check(literal.final_value == ExactInt::from(0), || format!("{variant} literal value {}", literal.final_value));
        out.check(certified.final_value == ExactInt::from(1), || format!("{variant} certify value {}", certified.final_value));
    }
    out.detail = "literal 0, certify 1 for both variants".into();
    out
}

fn a9() -> Outcome {
    let mut out = Outcome::new("A9", "early stopping: fewer halvings, optimal and certified");
    for n in [3usize, 5, 8, 13, 20, 30] {
        let (instance, config) = linear_mra(n);
        let halve = predicted_halvings(&config.mu0, &config.alpha, n, HalvingMode::EarlyStop);
        let s = scaling::run(&instance, &config.with_early_stop(true)).unwrap().summary;
        let opt = brute_force_opt(&instance).value;
        out.check(s.halve as u64 == halve, || format!("n={n}: halve {} != {halve}", s.halve));
        out.check(s.final_value == opt, || format!("n={n}: value {} != {opt}", s.final_value));
        out.check(s.certified, || format!("n={n}: not certified"));
    }
    out.detail = "A1 dimensions".into();
    out
}

fn a10(runs: &[&Run]) -> Outcome {
    let mut out = Outcome::new("A10", "re-running A1-A6 gives byte-identical traces");
    let mismatches = runs
        .par_iter()
        .filter(|run| scaling::run(&run.instance, &run.config).unwrap().to_json() != run.trace.to_json())
        .count();
    out.check(mismatches == 0, || format!("{mismatches} traces differ"));
    out.detail = format!("{} traces", runs.len());
    out
}

fn main() {
    let (o1, r1) = a1();
    let (o2, r2) = a2();
    let (o3, r3) = a3();
    let (o4, r4) = a4();
    let o5 = a5();
    let (o6, r6) = a6();
    let all: Vec<&Run> = r1.iter().chain(&r2).chain(&r3).chain(&r4).chain(&r6).collect();
    let outcomes = [o1, o2, o3, o4, o5, o6, a7(&all), a8(), a9(), a10(&all)];

    let mut failed = 0;
    for o in &outcomes {
        let verdict = if o.passed() { "PASS" } else { "FAIL" };
        println!("{:<4} {verdict}  {} ({})", o.id, o.title, o.detail);
        for f in &o.failures {
            println!("       - {f}");
        }
        failed += usize::from(!o.passed());
    }
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
