use std::process::{Command, Output};

fn geoscale(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geoscale")).args(args).env_remove("GEOSCALE_SEED").output().expect("spawn geoscale")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn verify_mra_linear_csv() {
    let out = geoscale(&["verify", "--theorem", "2.1", "--n", "3..8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("theorem,n,alpha,policy,mu0,predicted_augment,observed_augment,predicted_halve,observed_halve,match")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|row| row.ends_with(",true")), "{text}");
    assert!(stderr(&out).contains("seed=0"));
}

#[test]
fn omega_four_thirds() {
    let out = geoscale(&["omega", "--alpha", "4/3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "omega_paper=1 omega_corrected=1\n");
}

#[test]
fn solve_linear_simplex() {
    let out = geoscale(&["solve", "--simplex", "3", "--objective", "linear", "--variant", "mra", "--mu0", "4", "--certify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let trace: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let summary = &trace["summary"];
    assert_eq!(summary["augment"], 3);
    assert_eq!(summary["halve"], 4);
    assert_eq!(summary["certified"], true);
    let kinds: String = trace["steps"].as_array().unwrap().iter().map(|s| s["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, "HAAHAHH");
}

#[test]
fn solve_output_is_stable_and_seed_is_echoed() {
    let args = ["solve", "--simplex", "7", "--objective", "pow2", "--variant", "feasibility", "--policy", "random", "--seed", "42"];
    let a = geoscale(&args);
    let b = geoscale(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"random:42\""));

    let env = Command::new(env!("CARGO_BIN_EXE_geoscale"))
        .args(&args[..args.len() - 2])
        .env("GEOSCALE_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn solve_reads_instance_files_and_writes_traces() {
    let dir = std::env::temp_dir().join(format!("geoscale-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let instance = dir.join("gap.json");
    let trace = dir.join("trace.json");
    std::fs::write(&instance, r#"{"n":3,"vertices":["000","110"],"c":["1","0","0"],"start":0}"#).unwrap();

    let literal = geoscale(&["solve", "--instance", instance.to_str().unwrap(), "--mu0", "5", "--literal"]);
    assert_eq!(literal.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&literal)).unwrap();
    assert_eq!(value["summary"]["final_value"], "0");

    let out = geoscale(&["solve", "--instance", instance.to_str().unwrap(), "--mu0", "5", "--out", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(value["summary"]["final_value"], "1");
    assert_eq!(value["summary"]["certify_augment"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn domain_errors_exit_one_and_name_the_flag() {
    let cases: [(&[&str], &str); 4] = [
        (&["solve", "--simplex", "3", "--mu0", "3"], "--mu0 3"),
        (&["solve", "--simplex", "3", "--alpha", "1"], "--alpha 1"),
        (&["solve", "--instance", "/nonexistent/instance.json"], "--instance /nonexistent/instance.json"),
        (&["verify", "--theorem", "4.1", "--n", "6", "--alpha", "5/2"], "--theorem 4.1 --n 6"),
    ];
    for (args, needle) in cases {
        let out = geoscale(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(stderr(&out).contains(needle), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 5] = [
        &["solve"],
        &["solve", "--simplex", "3", "--certify", "--literal"],
        &["omega", "--alpha", "0.5"],
        &["verify", "--theorem", "9.9", "--n", "3"],
        &["sweep", "--alphas", "3/2", "--ns", "6..x"],
    ];
    for args in cases {
        let out = geoscale(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
    let out = geoscale(&["omega", "--alpha", "0.5"]);
    assert!(stderr(&out).contains("--alpha") && stderr(&out).contains("0.5"));
}

#[test]
fn sweep_is_sorted_by_alpha_then_n() {
    let out = geoscale(&["sweep", "--alphas", "2,5/4", "--ns", "12,6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let keys: Vec<(String, String)> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            (cells[2].to_string(), cells[1].to_string())
        })
        .collect();
    let expected = [("5/4", "6"), ("5/4", "12"), ("2", "6"), ("2", "12")];
    assert_eq!(keys, expected.map(|(a, n)| (a.to_string(), n.to_string())));
}

#[test]
fn omega_bands_and_audit() {
    let out = geoscale(&["omega", "--bands", "--alpha-max", "2", "--definition", "paper"]);
    assert_eq!(stdout(&out), "(1, 4/3] -> 1\n(4/3, 12/7] -> 2\n(12/7, 2] -> 3\n");
    let out = geoscale(&["omega", "--audit"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.lines().filter(|l| l.ends_with("DIVERGES")).count(), 1);
}
