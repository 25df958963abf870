//! The geometric scaling engine.
//!
//! Two variants share one loop. Starting from `mu = mu0` at the start vertex,
//! each iteration either augments (moves to a better vertex, `mu` unchanged)
//! or halves (`mu <- mu / alpha`, iterate unchanged). The loop exits once
//! `mu < 1/n`.
//!
//! * [`Variant::Mra`] asks for the maximum-ratio vertex and halves when its
//!   ratio is `< mu`; a ratio exactly equal to `mu` augments.
//! * [`Variant::Feasibility`] asks for any vertex with ratio `> mu`, chosen by
//!   a [`Policy`]; a ratio exactly equal to `mu` halves.
//!
//! Early stopping replaces every would-be halving at `mu <= 1/2` by a
//! threshold-zero improvement check and ends the run, certified, when that
//! check fails. Certify mode runs the same check after the loop until it
//! fails. Literal mode does neither and may stop at a suboptimal vertex whose
//! gap is below `mu * n`.

mod invariants;
mod trace;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{bit_len, ExactInt, ExactRatio, Instance};
use crate::oracles::{self, OracleError, Pick, Policy};

pub use invariants::{check_invariants, Violation};
pub use trace::{phases_of, summarize, ConfigEcho, Phase, Step, StepKind, StepOrigin, Summary, Trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Maximum-ratio augmentation.
    Mra,
    /// Strict feasibility test plus a selection policy.
    Feasibility,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Mra => "mra",
            Variant::Feasibility => "feasibility",
        })
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("mu0 = {mu0} must exceed ||c||_inf = {norm}")]
    Mu0TooSmall { mu0: ExactRatio, norm: ExactInt },
    #[error("divisor alpha = {0} must be greater than 1")]
    AlphaNotAboveOne(ExactRatio),
    #[error("step limit must be positive")]
    ZeroStepLimit,
    #[error("run exceeded its step limit of {limit} steps")]
    StepLimit { limit: u64, partial: Box<Trace> },
    #[error("trace does not belong to this instance: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub variant: Variant,
    /// Ignored by [`Variant::Mra`].
    pub policy: Policy,
    pub mu0: ExactRatio,
    pub alpha: ExactRatio,
    pub early_stop: bool,
    pub certify: bool,
    /// `None` selects [`default_step_limit`].
    pub step_limit: Option<u64>,
}

impl EngineConfig {
    /// Maximum-ratio variant, `alpha = 2`, literal termination.
    pub fn mra(mu0: ExactRatio) -> Self {
        EngineConfig {
            variant: Variant::Mra,
            policy: Policy::MaxRatio,
            mu0,
            alpha: ExactRatio::from_int(2),
            early_stop: false,
            certify: false,
            step_limit: None,
        }
    }

    /// Feasibility variant, `alpha = 2`, literal termination.
    pub fn feasibility(policy: Policy, mu0: ExactRatio) -> Self {
        EngineConfig { variant: Variant::Feasibility, policy, ..EngineConfig::mra(mu0) }
    }

    pub fn with_alpha(mut self, alpha: ExactRatio) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_early_stop(mut self, on: bool) -> Self {
        self.early_stop = on;
        self
    }

    pub fn with_certify(mut self, on: bool) -> Self {
        self.certify = on;
        self
    }

    pub fn with_step_limit(mut self, limit: u64) -> Self {
        self.step_limit = Some(limit);
        self
    }

    pub fn validate(&self, instance: &Instance) -> Result<(), EngineError> {
        let norm = instance.norm_inf();
        if self.mu0 <= ExactRatio::from_int(norm.clone()) {
            return Err(EngineError::Mu0TooSmall { mu0: self.mu0.clone(), norm });
        }
        if self.alpha <= ExactRatio::one() {
            return Err(EngineError::AlphaNotAboveOne(self.alpha.clone()));
        }
        if self.step_limit == Some(0) {
            return Err(EngineError::ZeroStepLimit);
        }
        Ok(())
    }
}

/// Smallest power of two strictly greater than `value` (and at least 1).
pub fn pow2_above(value: &ExactInt) -> ExactInt {
    let mut p = ExactInt::from(1);
    while &p <= value {
        p <<= 1;
    }
    p
}

/// Number of divisions by `alpha` that take `mu0` to a value `< threshold`
/// (`strict`) or `<= threshold`, by exact iteration.
pub fn halvings_to_reach(mu0: &ExactRatio, alpha: &ExactRatio, threshold: &ExactRatio, strict: bool) -> u64 {
    assert!(alpha > &ExactRatio::one(), "alpha must exceed 1");
    let below = |mu: &ExactRatio| if strict { mu < threshold } else { mu <= threshold };
    let mut mu = mu0.clone();
    let mut k = 0;
    while !below(&mu) {
        mu = &mu / alpha;
        k += 1;
    }
    k
}

/// `10 (n+2) (bits(mu0 n) + 2)`, raised when needed to the exact worst case
/// `halvings + |v(P)|`, which matters for divisors close to 1.
pub fn default_step_limit(instance: &Instance, config: &EngineConfig) -> u64 {
    let n = instance.dim() as u64;
    let scaled = (&config.mu0 * &ExactRatio::from_int(n)).ceil();
    let formula = 10 * (n + 2) * (bit_len(&scaled) + 2);
    let one_over_n = ExactRatio::new(1, n).expect("n >= 1");
    let half = ExactRatio::new(1, 2).expect("nonzero");
    let halvings = halvings_to_reach(&config.mu0, &config.alpha, &one_over_n, true)
        .max(halvings_to_reach(&config.mu0, &config.alpha, &half, false));
    formula.max(halvings + instance.vertex_count() as u64 + 1)
}

struct Recorder<'a> {
    instance: &'a Instance,
    limit: u64,
    steps: Vec<Step>,
}

impl Recorder<'_> {
    fn push(&mut self, kind: StepKind, origin: StepOrigin, mu: (&ExactRatio, &ExactRatio), from: usize, to: usize, ratio: Option<ExactRatio>) -> bool {
        if self.steps.len() as u64 >= self.limit {
            return false;
        }
        self.steps.push(Step {
            index: self.steps.len(),
            kind,
            mu_before: mu.0.clone(),
            mu_after: mu.1.clone(),
            iterate_after: to,
            objective_after: self.instance.value(to).clone(),
            iterate_before: from,
            origin,
            ratio,
        });
        true
    }

    fn augment(&mut self, origin: StepOrigin, mu: &ExactRatio, from: usize, pick: &Pick) -> bool {
        self.push(StepKind::Augment, origin, (mu, mu), from, pick.index, Some(pick.ratio.clone()))
    }
}

/// Runs the configured variant on `instance` and records every step.
pub fn run(instance: &Instance, config: &EngineConfig) -> Result<Trace, EngineError> {
    config.validate(instance)?;
    let limit = config.step_limit.unwrap_or_else(|| default_step_limit(instance, config));
    let exit_below = ExactRatio::new(1, instance.dim() as u64).expect("n >= 1");
    let early_zone = ExactRatio::new(1, 2).expect("nonzero");

    let mut rec = Recorder { instance, limit, steps: Vec::new() };
    let mut mu = config.mu0.clone();
    let mut current = instance.start();
    let mut certified = false;

    let abort = |rec: Recorder, current: usize, certified: bool| EngineError::StepLimit {
        limit,
        partial: Box::new(finish(instance, config, limit, rec.steps, current, certified, true)),
    };

    loop {
        let (proposal, best_ratio) = match config.variant {
            Variant::Mra => match oracles::mra_argmax(instance, current)? {
                Some(pick) if pick.ratio >= mu => (Some(pick), None),
                other => (None, other.map(|p| p.ratio)),
            },
            Variant::Feasibility => (oracles::select(config.policy, instance, current, &mu)?, None),
        };

        let recorded = match proposal {
            Some(pick) => {
                let ok = rec.augment(StepOrigin::Scaling, &mu, current, &pick);
                current = pick.index;
                ok
            }
            None if config.early_stop && mu <= early_zone => match oracles::improve_any(instance, current)? {
                Some(pick) => {
                    let ok = rec.augment(StepOrigin::EarlyStop, &mu, current, &pick);
                    current = pick.index;
                    ok
                }
                None => {
                    certified = true;
                    break;
                }
            },
            None => {
                let next = &mu / &config.alpha;
                let ok = rec.push(StepKind::Halve, StepOrigin::Scaling, (&mu, &next), current, current, best_ratio);
                mu = next;
                ok
            }
        };
        if !recorded {
            return Err(abort(rec, current, certified));
        }
        // Early-stop runs end on the failed improvement check, not on the 1/n test.
        if !config.early_stop && mu < exit_below {
            break;
        }
    }

    if config.certify && !certified {
        while let Some(pick) = oracles::improve_any(instance, current)? {
            if !rec.augment(StepOrigin::Certify, &mu, current, &pick) {
                return Err(abort(rec, current, certified));
            }
            current = pick.index;
        }
        certified = true;
    }

    Ok(finish(instance, config, limit, rec.steps, current, certified, false))
}

fn finish(instance: &Instance, config: &EngineConfig, limit: u64, steps: Vec<Step>, current: usize, certified: bool, aborted: bool) -> Trace {
    let config_echo = ConfigEcho {
        instance: instance.digest(),
        n: instance.dim(),
        vertices: instance.vertex_count(),
        start: instance.start(),
        variant: config.variant,
        policy: (config.variant == Variant::Feasibility).then_some(config.policy),
        mu0: config.mu0.clone(),
        alpha: config.alpha.clone(),
        early_stop: config.early_stop,
        certify: config.certify,
        step_limit: limit,
    };
    let mut trace = Trace {
        config: config_echo,
        phases: phases_of(&steps),
        steps,
        summary: Summary {
            augment: 0,
            halve: 0,
            certify_augment: 0,
            total: 0,
            final_vertex: current,
            final_bits: instance.vertex(current).to_string(),
            final_value: instance.value(current).clone(),
            certified,
            aborted,
        },
    };
    trace.summary = summarize(&trace);
    trace
}
