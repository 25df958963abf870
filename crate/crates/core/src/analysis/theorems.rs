//! Runs the worst-case simplex constructions through the engine and compares
//! observed step counts with the predicted ones.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::model::{int_pow, simplex_instance, ExactInt, ExactRatio, Instance, SimplexObjective};
use crate::oracles::Policy;
use crate::scaling::{self, pow2_above, EngineConfig, StepOrigin, Trace, Variant};

use super::omega::{omega_corrected, omega_printed, OmegaDefinition};
use super::{predicted_halvings, AnalysisError, HalvingMode};

/// The four step-count claims on the nested simplex `S_n` (started at the origin).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Maximum-ratio variant, `c = (1..n)`: `n` augmentations.
    MraLinear,
    /// Feasibility variant, `c = (2, 4, .., 2^n)`, `alpha = 2`: `ceil(n/3)` augmentations.
    FeasibilityPow2,
    /// Feasibility variant, `c_i = ceil(alpha)^i`, divisor `alpha` in `(1, 2]`:
    /// `ceil(n / omega)` augmentations.
    AlphaGeometric,
    /// [`Theorem::AlphaGeometric`] at `alpha = 4/3`: `n` augmentations.
    AlphaFourThirds,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::MraLinear, Theorem::FeasibilityPow2, Theorem::AlphaGeometric, Theorem::AlphaFourThirds];

    /// Short id used on the command line and in reports.
    pub fn label(&self) -> &'static str {
        match self {
            Theorem::MraLinear => "2.1",
            Theorem::FeasibilityPow2 => "3.1",
            Theorem::AlphaGeometric => "4.1",
            Theorem::AlphaFourThirds => "4.4",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().trim_start_matches("thm_").trim_start_matches("cor_").replace('_', ".");
        Theorem::ALL
            .into_iter()
            .find(|t| t.label() == key)
            .ok_or_else(|| format!("unknown theorem {s:?} (expected 2.1, 3.1, 4.1 or 4.4)"))
    }
}

/// Optional replacements for a construction's defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub alpha: Option<ExactRatio>,
    pub mu0: Option<ExactRatio>,
    pub policy: Option<Policy>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub augment: usize,
    pub halve: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub n: usize,
    pub variant: Variant,
    pub alpha: ExactRatio,
    pub policy: Option<Policy>,
    pub mu0: ExactRatio,
    pub omega: Option<u64>,
    pub predicted: Counts,
    pub observed: Counts,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Every augmenting step satisfied the per-step jump predicate.
    pub jumps_ok: bool,
    pub jumps: Vec<usize>,
    pub notes: Vec<String>,
}

/// Instance, engine configuration and predicted augment count for one construction.
pub struct Setup {
    pub instance: Instance,
    pub config: EngineConfig,
    pub predicted_augment: usize,
    pub omega: Option<u64>,
}

fn div_ceil(a: usize, b: u64) -> usize {
    a.div_ceil(b as usize)
}

/// `mu0 = alpha * beta^n`: one division lands `mu` exactly on `c_n / alpha`,
/// the start of the widest feasible window for the first augmentation.
pub fn alpha_safe_mu0(alpha: &ExactRatio, n: usize) -> ExactRatio {
    let beta = alpha.ceil();
    alpha * &ExactRatio::from_int(num_traits::pow(beta, n))
}

/// Builds the construction without running it.
pub fn setup(theorem: Theorem, n: usize, overrides: &Overrides) -> Result<Setup, AnalysisError> {
    if n < 3 {
        return Err(AnalysisError::DimensionTooSmall(n));
    }
    let two = ExactRatio::from_int(2);
    let with_overrides = |mut config: EngineConfig| {
        if let Some(mu0) = &overrides.mu0 {
            config.mu0 = mu0.clone();
        }
        if let Some(policy) = overrides.policy {
            config.policy = policy;
        }
        config
    };
    let setup = match theorem {
        Theorem::MraLinear => {
            let instance = simplex_instance(n, SimplexObjective::Linear)?;
            let mu0 = ExactRatio::from_int(pow2_above(&ExactInt::from(n)));
            let alpha = overrides.alpha.clone().unwrap_or(two);
            Setup { instance, config: with_overrides(EngineConfig::mra(mu0).with_alpha(alpha)), predicted_augment: n, omega: None }
        }
        Theorem::FeasibilityPow2 => {
            let instance = simplex_instance(n, SimplexObjective::Geometric { base: 2 })?;
            let mu0 = ExactRatio::from_int(int_pow(2, n as u32 + 1));
            let config = with_overrides(EngineConfig::feasibility(Policy::MaxGain, mu0));
            Setup { instance, config, predicted_augment: div_ceil(n, 3), omega: Some(3) }
        }
        Theorem::AlphaGeometric | Theorem::AlphaFourThirds => {
            let alpha = match theorem {
                Theorem::AlphaFourThirds => ExactRatio::new(4, 3).expect("nonzero"),
                _ => overrides.alpha.clone().unwrap_or(two.clone()),
            };
            if alpha <= ExactRatio::one() {
                return Err(AnalysisError::AlphaNotAboveOne(alpha));
            }
            if alpha > two {
                return Err(AnalysisError::AlphaOutsideSafeBand(alpha));
            }
            let omega = omega_printed(&alpha)?;
            let instance = alpha_instance(n, &alpha)?;
            let config = with_overrides(
                EngineConfig::feasibility(Policy::MaxGain, alpha_safe_mu0(&alpha, n)).with_alpha(alpha),
            );
            let predicted_augment = match theorem {
                Theorem::AlphaFourThirds => n,
                _ => div_ceil(n, omega),
            };
            Setup { instance, config, predicted_augment, omega: Some(omega) }
        }
    };
    Ok(setup)
}

/// `S_n` with `c_i = ceil(alpha)^i`.
pub fn alpha_instance(n: usize, alpha: &ExactRatio) -> Result<Instance, AnalysisError> {
    let base: u64 = alpha
        .ceil()
        .try_into()
        .map_err(|_| AnalysisError::AlphaOutsideSafeBand(alpha.clone()))?;
    Ok(simplex_instance(n, SimplexObjective::Geometric { base })?)
}

/// Runs one construction and fills in predicted against observed counts.
pub fn verify_theorem(theorem: Theorem, n: usize, overrides: &Overrides) -> Result<TheoremReport, AnalysisError> {
    let setup = setup(theorem, n, overrides)?;
    let trace = scaling::run(&setup.instance, &setup.config)?;
    Ok(report_from_trace(theorem.label(), &setup, &trace))
}

/// Same as [`verify_theorem`] but also returns the trace.
pub fn verify_theorem_with_trace(theorem: Theorem, n: usize, overrides: &Overrides) -> Result<(TheoremReport, Setup, Trace), AnalysisError> {
    let setup = setup(theorem, n, overrides)?;
    let trace = scaling::run(&setup.instance, &setup.config)?;
    let report = report_from_trace(theorem.label(), &setup, &trace);
    Ok((report, setup, trace))
}

fn report_from_trace(label: &str, setup: &Setup, trace: &Trace) -> TheoremReport {
    let config = &setup.config;
    let n = setup.instance.dim();
    let predicted = Counts {
        augment: setup.predicted_augment,
        halve: predicted_halvings(&config.mu0, &config.alpha, n, HalvingMode::Literal) as usize,
    };
    let observed = Counts { augment: trace.summary.augment, halve: trace.summary.halve };
    let jumps: Vec<usize> = trace.augmentations().map(|(i, j)| j - i).collect();
    let (jumps_ok, notes) = check_jumps(label, setup, trace);
    TheoremReport {
        theorem: label.to_string(),
        n,
        variant: config.variant,
        alpha: config.alpha.clone(),
        policy: (config.variant == Variant::Feasibility).then_some(config.policy),
        mu0: config.mu0.clone(),
        omega: setup.omega,
        predicted,
        observed,
        matched: predicted == observed,
        jumps_ok,
        jumps,
        notes,
    }
}

/// Per-step predicates on the simplex trajectory. Vertex index `i` is `x^i`.
fn check_jumps(label: &str, setup: &Setup, trace: &Trace) -> (bool, Vec<String>) {
    let inst = &setup.instance;
    let n = inst.dim();
    let alpha = &setup.config.alpha;
    let mut notes = Vec::new();
    let mut ok = true;

    for step in trace.steps.iter().filter(|s| s.origin == StepOrigin::Scaling) {
        if step.kind != scaling::StepKind::Augment {
            continue;
        }
        let (i, j) = (step.iterate_before, step.iterate_after);
        if j <= i {
            ok = false;
            notes.push(format!("step {}: moved backwards x^{i} -> x^{j}", step.index));
            continue;
        }
        let t = (j - i) as u64;
        let mu = &step.mu_before;
        // Largest coordinate not yet collected: c_(n-i).
        let c_top = ExactRatio::from_int(inst.objective()[n - i - 1].clone());
        let in_window = mu < &c_top && c_top <= alpha * mu;
        match label {
            "2.1" => {
                if t != 1 {
                    ok = false;
                    notes.push(format!("step {}: x^{i} -> x^{j} skips a vertex", step.index));
                }
            }
            "4.4" => {
                if t != 1 {
                    ok = false;
                    notes.push(format!("step {}: jump {t} > 1", step.index));
                }
            }
            _ => {
                // Exact ratio from the model, then the window and jump predicates.
                let ratio = inst.ratio(i, j).expect("distinct vertices");
                let beta = alpha.ceil();
                let beta_r = ExactRatio::from_int(beta.clone());
                let bt = ExactRatio::from_int(num_traits::pow(beta.clone(), t as usize));
                let shrink = &(&beta_r * &(ExactRatio::one() - ExactRatio::one() / bt))
                    / &(&(&beta_r - &ExactRatio::one()) * &ExactRatio::from_int(t));
                let upper = &(alpha * mu) * &shrink;
                let predicate = alpha * &shrink > ExactRatio::one();
                let max_jump = if label == "3.1" { 3 } else { omega_corrected(alpha).unwrap_or(0) };
                if !(in_window && &ratio > mu && ratio <= upper && predicate && t <= max_jump) {
                    ok = false;
                    notes.push(format!(
                        "step {}: jump {t} at mu={mu} (ratio {ratio}, window {in_window}, predicate {predicate})",
                        step.index
                    ));
                }
            }
        }
    }
    let summary = match label {
        "2.1" => "every augmentation is x^i -> x^(i+1)",
        "3.1" => "every augmentation lands in x^(i+1)..x^(i+3) from inside its window",
        "4.4" => "every jump has size 1",
        _ => "every jump satisfies the window and jump-size predicates",
    };
    notes.insert(0, format!("{summary}: {}", if ok { "yes" } else { "no" }));
    if setup.predicted_augment != trace.summary.augment {
        notes.push(format!(
            "augment count {} differs from predicted {}",
            trace.summary.augment, setup.predicted_augment
        ));
    }
    (ok, notes)
}

/// Largest `j - i` over the augmenting steps of the `alpha` construction run
/// with `policy`. `alpha` may exceed 2 here; the objective base is `ceil(alpha)`.
pub fn max_jump_empirical(n: usize, alpha: &ExactRatio, policy: Policy) -> Result<usize, AnalysisError> {
    let trace = alpha_trace(n, alpha, policy)?;
    Ok(trace.augmentations().map(|(i, j)| j.saturating_sub(i)).max().unwrap_or(0))
}

fn alpha_trace(n: usize, alpha: &ExactRatio, policy: Policy) -> Result<Trace, AnalysisError> {
    if alpha <= &ExactRatio::one() {
        return Err(AnalysisError::AlphaNotAboveOne(alpha.clone()));
    }
    let instance = alpha_instance(n, alpha)?;
    let config = EngineConfig::feasibility(policy, alpha_safe_mu0(alpha, n)).with_alpha(alpha.clone());
    Ok(scaling::run(&instance, &config)?)
}

/// One report per `(alpha, n)`, sorted by `alpha` then `n`. Rows with
/// `alpha <= 2` are [`Theorem::AlphaGeometric`] checks; larger `alpha` rows
/// are exploratory and predict `ceil(n / omega)` from the corrected count.
pub fn sweep(alphas: &[ExactRatio], ns: &[usize], policy: Policy) -> Result<Vec<TheoremReport>, AnalysisError> {
    let mut grid: Vec<(ExactRatio, usize)> = alphas.iter().flat_map(|a| ns.iter().map(move |&n| (a.clone(), n))).collect();
    grid.sort();
    grid.dedup();
    let two = ExactRatio::from_int(2);
    grid.par_iter()
        .map(|(alpha, n)| {
            let overrides = Overrides { alpha: Some(alpha.clone()), mu0: None, policy: Some(policy) };
            if alpha <= &two {
                return verify_theorem(Theorem::AlphaGeometric, *n, &overrides);
            }
            if *n < 3 {
                return Err(AnalysisError::DimensionTooSmall(*n));
            }
            let omega = omega_corrected(alpha)?;
            let setup = Setup {
                instance: alpha_instance(*n, alpha)?,
                config: EngineConfig::feasibility(policy, alpha_safe_mu0(alpha, *n)).with_alpha(alpha.clone()),
                predicted_augment: div_ceil(*n, omega),
                omega: Some(omega),
            };
            let trace = scaling::run(&setup.instance, &setup.config)?;
            let mut report = report_from_trace("4.1-explore", &setup, &trace);
            report.notes.push(format!("exploratory: omega from the {} definition", OmegaDefinition::Corrected));
            Ok(report)
        })
        .collect()
}
