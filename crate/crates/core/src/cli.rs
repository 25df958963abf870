//! `geoscale` command line: `solve`, `verify`, `omega` and `sweep`.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad instance, refused
//! `alpha`, invariant violations), 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    self, audit_reference_bands, omega_bands, omega_report, reports_to_csv, reports_to_text, OmegaDefinition,
    Overrides, Theorem, TheoremReport,
};
use crate::model::{parse_instance, simplex_instance, ExactRatio, Instance, SimplexObjective};
use crate::oracles::Policy;
use crate::scaling::{self, check_invariants, pow2_above, EngineConfig};

#[derive(Parser, Debug)]
#[command(name = "geoscale", version, about = "Exact geometric scaling over 0/1 polytopes")]
struct Cli {
    /// Seed for the random selection policy.
    #[arg(long, global = true, env = "GEOSCALE_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the engine on one instance and print its trace as JSON.
    Solve(SolveArgs),
    /// Check predicted against observed step counts on the simplex constructions.
    Verify(VerifyArgs),
    /// Jump-size counts for a divisor alpha, or their band table.
    Omega(OmegaArgs),
    /// Run the alpha construction over a grid of alpha and n.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ObjectiveKind {
    /// c = (1, 2, ..., n)
    Linear,
    /// c = (2, 4, ..., 2^n)
    Pow2,
    /// c = (b, b^2, ..., b^n) with b = ceil(alpha)
    AlphaPow,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Mra,
    Feasibility,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    MaxRatio,
    MaxGain,
    MinGain,
    Lex,
    Random,
}

impl PolicyArg {
    fn with_seed(self, seed: u64) -> Policy {
        match self {
            PolicyArg::MaxRatio => Policy::MaxRatio,
            PolicyArg::MaxGain => Policy::MaxGain,
            PolicyArg::MinGain => Policy::MinGain,
            PolicyArg::Lex => Policy::LexFirst,
            PolicyArg::Random => Policy::Random { seed },
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Instance file (JSON).
    #[arg(long, conflicts_with = "simplex", required_unless_present = "simplex")]
    instance: Option<PathBuf>,
    /// Generate the nested simplex S_N instead of reading a file.
    #[arg(long, value_name = "N")]
    simplex: Option<usize>,
    #[arg(long, value_enum, default_value = "linear", requires = "simplex")]
    objective: ObjectiveKind,
    #[arg(long, value_enum, default_value = "mra")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "max-ratio")]
    policy: PolicyArg,
    /// Initial scale, "p/q" or an integer. Defaults to the smallest power of 2 above ||c||_inf.
    #[arg(long, value_parser = parse_ratio)]
    mu0: Option<ExactRatio>,
    #[arg(long, value_parser = parse_ratio, default_value = "2")]
    alpha: ExactRatio,
    #[arg(long)]
    early_stop: bool,
    /// Continue with improvement checks after the loop until optimal (default).
    #[arg(long, conflicts_with = "literal")]
    certify: bool,
    /// Stop exactly when mu < 1/n, even if not optimal.
    #[arg(long)]
    literal: bool,
    #[arg(long)]
    step_limit: Option<u64>,
    /// Write the trace here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// 2.1, 3.1, 4.1 or 4.4
    #[arg(long, value_parser = parse_theorem)]
    theorem: Theorem,
    /// "A..B" (inclusive), a comma list, or a single value.
    #[arg(long, value_parser = parse_usize_set)]
    n: UsizeSet,
    #[arg(long, value_parser = parse_ratio)]
    alpha: Option<ExactRatio>,
    #[arg(long, value_parser = parse_ratio)]
    mu0: Option<ExactRatio>,
    #[arg(long, value_enum)]
    policy: Option<PolicyArg>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct OmegaArgs {
    #[arg(long, value_parser = parse_ratio, required_unless_present_any = ["bands", "audit"])]
    alpha: Option<ExactRatio>,
    /// Print the band table over (1, alpha-max].
    #[arg(long, requires = "alpha_max")]
    bands: bool,
    #[arg(long, value_parser = parse_ratio)]
    alpha_max: Option<ExactRatio>,
    /// Recompute the reference band table and flag disagreements.
    #[arg(long)]
    audit: bool,
    #[arg(long, value_parser = parse_definition, default_value = "paper")]
    definition: OmegaDefinition,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Comma-separated list of rationals.
    #[arg(long, value_parser = parse_ratio_list)]
    alphas: RatioList,
    #[arg(long, value_parser = parse_usize_set)]
    ns: UsizeSet,
    #[arg(long, value_enum, default_value = "max-gain")]
    policy: PolicyArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

fn parse_ratio(s: &str) -> Result<ExactRatio, String> {
    s.parse().map_err(|_| format!("expected an integer or \"p/q\", got {s:?}"))
}

#[derive(Clone, Debug)]
struct RatioList(Vec<ExactRatio>);

#[derive(Clone, Debug)]
struct UsizeSet(Vec<usize>);

fn parse_ratio_list(s: &str) -> Result<RatioList, String> {
    s.split(',').map(|part| parse_ratio(part.trim())).collect::<Result<_, _>>().map(RatioList)
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse()
}

fn parse_definition(s: &str) -> Result<OmegaDefinition, String> {
    s.parse()
}

fn parse_usize_set(s: &str) -> Result<UsizeSet, String> {
    parse_usize_list(s).map(UsizeSet)
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("expected \"A..B\", a comma list or an integer, got {s:?}");
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

/// Domain failure: reported on stderr, exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command, writing to
/// the given streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(args) => solve(args, cli.seed, out),
        Command::Verify(args) => verify(args, cli.seed, out, err),
        Command::Omega(args) => omega(args, out),
        Command::Sweep(args) => sweep(args, cli.seed, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn load_instance(args: &SolveArgs) -> Result<Instance, Failure> {
    if let Some(path) = &args.instance {
        let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("--instance {}: {e}", path.display())))?;
        return parse_instance(&text).map_err(|e| Failure(format!("--instance {}: {e}", path.display())));
    }
    let n = args.simplex.expect("clap enforces one instance source");
    let objective = match args.objective {
        ObjectiveKind::Linear => SimplexObjective::Linear,
        ObjectiveKind::Pow2 => SimplexObjective::Geometric { base: 2 },
        ObjectiveKind::AlphaPow => {
            let base = u64::try_from(args.alpha.ceil())
                .map_err(|_| Failure(format!("--alpha {}: ceiling too large for an objective base", args.alpha)))?;
            SimplexObjective::Geometric { base: base.max(2) }
        }
    };
    simplex_instance(n, objective).map_err(|e| Failure(format!("--simplex {n}: {e}")))
}

fn solve(args: SolveArgs, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    let instance = load_instance(&args)?;
    let mu0 = args
        .mu0
        .clone()
        .unwrap_or_else(|| ExactRatio::from_int(pow2_above(&instance.norm_inf())));
    let mut config = match args.variant {
        VariantArg::Mra => EngineConfig::mra(mu0),
        VariantArg::Feasibility => EngineConfig::feasibility(args.policy.with_seed(seed), mu0),
    }
    .with_alpha(args.alpha.clone())
    .with_early_stop(args.early_stop)
    .with_certify(!args.literal);
    if let Some(limit) = args.step_limit {
        config = config.with_step_limit(limit);
    }
    let trace = match scaling::run(&instance, &config) {
        Ok(trace) => trace,
        Err(scaling::EngineError::Mu0TooSmall { mu0, norm }) => {
            return Err(Failure(format!("--mu0 {mu0}: must exceed ||c||_inf = {norm}")))
        }
        Err(scaling::EngineError::AlphaNotAboveOne(a)) => return Err(Failure(format!("--alpha {a}: must be greater than 1"))),
        Err(e) => return Err(e.into()),
    };
    let violations = check_invariants(&instance, &trace)?;
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure(format!("trace failed its invariant checks: {}", list.join("; "))));
    }
    let json = trace.to_json();
    match &args.out {
        Some(path) => std::fs::write(path, json + "\n").map_err(|e| Failure(format!("--out {}: {e}", path.display())))?,
        None => writeln!(out, "{json}")?,
    }
    Ok(())
}

fn emit_reports(reports: &[TheoremReport], format: Format, header: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            writeln!(err, "{header}")?;
            write!(out, "{}", reports_to_csv(reports))?;
        }
        Format::Json => {
            let body = serde_json::json!({ "header": header, "reports": reports });
            writeln!(out, "{}", serde_json::to_string_pretty(&body)?)?;
        }
        Format::Text => {
            writeln!(out, "{header}")?;
            write!(out, "{}", reports_to_text(reports))?;
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs, seed: u64, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let overrides = Overrides { alpha: args.alpha.clone(), mu0: args.mu0.clone(), policy: args.policy.map(|p| p.with_seed(seed)) };
    let reports = args
        .n
        .0
        .iter()
        .map(|&n| analysis::verify_theorem(args.theorem, n, &overrides).map_err(|e| Failure(format!("--theorem {} --n {n}: {e}", args.theorem))))
        .collect::<Result<Vec<_>, _>>()?;
    let header = format!("# geoscale verify theorem={} seed={seed}", args.theorem);
    emit_reports(&reports, args.format, &header, out, err)
}

fn sweep(args: SweepArgs, seed: u64, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let policy = args.policy.with_seed(seed);
    let reports = analysis::sweep(&args.alphas.0, &args.ns.0, policy)?;
    let header = format!("# geoscale sweep policy={policy} seed={seed}");
    emit_reports(&reports, args.format, &header, out, err)
}

fn omega(args: OmegaArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if args.audit {
        let audit = audit_reference_bands();
        match args.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&audit)?)?,
            _ => {
                for row in &audit {
                    writeln!(out, "{row}")?;
                }
            }
        }
        return Ok(());
    }
    if args.bands {
        let alpha_max = args.alpha_max.clone().expect("clap enforces --alpha-max");
        let bands = omega_bands(args.definition, &alpha_max).map_err(|e| Failure(format!("--alpha-max {alpha_max}: {e}")))?;
        match args.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&bands)?)?,
            Format::Csv => {
                writeln!(out, "definition,lo,hi,omega")?;
                for b in &bands {
                    writeln!(out, "{},{},{},{}", args.definition, b.lo, b.hi, b.omega)?;
                }
            }
            Format::Text => {
                for b in &bands {
                    writeln!(out, "{b}")?;
                }
            }
        }
        return Ok(());
    }
    let alpha = args.alpha.clone().expect("clap enforces --alpha");
    let report = omega_report(&alpha).map_err(|e| Failure(format!("--alpha {alpha}: {e}")))?;
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        _ => writeln!(out, "omega_paper={} omega_corrected={}", report.omega_paper, report.omega_corrected)?,
    }
    Ok(())
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("geoscale").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sets_of_n() {
        assert_eq!(parse_usize_list("3..8").unwrap(), [3, 4, 5, 6, 7, 8]);
        assert_eq!(parse_usize_list("3,5").unwrap(), [3, 5]);
        assert_eq!(parse_usize_list("7").unwrap(), [7]);
        assert!(parse_usize_list("8..3").is_err());
        assert!(parse_usize_list("x").is_err());
    }

    #[test]
    fn omega_line() {
        let (code, out, _) = call(&["omega", "--alpha", "4/3"]);
        assert_eq!((code, out.as_str()), (0, "omega_paper=1 omega_corrected=1\n"));
    }

    #[test]
    fn usage_and_domain_codes() {
        let (code, _, err) = call(&["omega", "--alpha", "1.5"]);
        assert_eq!(code, 2);
        assert!(err.contains("--alpha") && err.contains("1.5"), "{err}");
        let (code, _, err) = call(&["omega", "--alpha", "1"]);
        assert_eq!(code, 1);
        assert!(err.contains("--alpha 1"), "{err}");
        let (code, _, err) = call(&["verify", "--theorem", "4.1", "--n", "6", "--alpha", "3"]);
        assert_eq!(code, 1);
        assert!(err.contains("outside (1, 2]"), "{err}");
    }
}
