//! Post-hoc audit of a trace against the instance it was run on.

use std::fmt;

use crate::model::{ExactInt, ExactRatio, Instance};
use crate::oracles::brute_force_opt;

use super::trace::{phases_of, summarize, StepKind, StepOrigin, Trace};
use super::EngineError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// An augmenting step did not strictly increase the objective.
    NotIncreasing { step: usize, before: ExactInt, after: ExactInt },
    /// At a halving step the primal gap exceeded `mu * n`.
    GapBound { step: usize, gap: ExactInt, bound: ExactRatio },
    /// Halving step whose scale is not `mu / alpha`, or that moved the iterate.
    BadHalving { step: usize },
    /// Augmenting step that changed the scale.
    BadAugment { step: usize },
    /// Step index, iterate or scale does not continue from the previous step,
    /// or the recorded objective is wrong.
    Discontinuity { step: usize, what: &'static str },
    /// More augmentations than `|v(P)| - 1`.
    TooManyAugmentations { count: usize, bound: usize },
    /// Summary or phase list disagrees with the steps.
    Bookkeeping(&'static str),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotIncreasing { step, before, after } => {
                write!(f, "step {step}: objective {before} -> {after} is not a strict increase")
            }
            Violation::GapBound { step, gap, bound } => write!(f, "step {step}: gap {gap} exceeds mu*n = {bound}"),
            Violation::BadHalving { step } => write!(f, "step {step}: malformed halving step"),
            Violation::BadAugment { step } => write!(f, "step {step}: augmenting step changed mu"),
            Violation::Discontinuity { step, what } => write!(f, "step {step}: {what} does not continue"),
            Violation::TooManyAugmentations { count, bound } => {
                write!(f, "{count} augmentations exceed |v(P)|-1 = {bound}")
            }
            Violation::Bookkeeping(what) => write!(f, "{what} disagrees with the steps"),
        }
    }
}

/// Checks objective monotonicity, the `opt - c.x <= mu n` gap bound at every
/// scaling-loop halving step, per-step structure and the `|v(P)| - 1` bound on
/// augmentations. An empty list means the trace is clean.
pub fn check_invariants(instance: &Instance, trace: &Trace) -> Result<Vec<Violation>, EngineError> {
    if trace.config.instance != instance.digest() {
        return Err(EngineError::Mismatch("instance fingerprint differs".into()));
    }
    let count = instance.vertex_count();
    if let Some(s) = trace.steps.iter().find(|s| s.iterate_before >= count || s.iterate_after >= count) {
        return Err(EngineError::Mismatch(format!("step {} refers to a vertex outside the polytope", s.index)));
    }

    let n = ExactRatio::from_int(instance.dim() as u64);
    let opt = brute_force_opt(instance).value;
    let mut out = Vec::new();
    let mut current = trace.config.start;
    let mut mu = trace.config.mu0.clone();

    for (pos, step) in trace.steps.iter().enumerate() {
        if step.index != pos {
            out.push(Violation::Discontinuity { step: pos, what: "index" });
        }
        if step.iterate_before != current {
            out.push(Violation::Discontinuity { step: pos, what: "iterate" });
        }
        if step.mu_before != mu {
            out.push(Violation::Discontinuity { step: pos, what: "mu" });
        }
        if &step.objective_after != instance.value(step.iterate_after) {
            out.push(Violation::Discontinuity { step: pos, what: "objective" });
        }
        match step.kind {
            StepKind::Halve => {
                if step.iterate_after != step.iterate_before || step.mu_after != &step.mu_before / &trace.config.alpha {
                    out.push(Violation::BadHalving { step: pos });
                }
                if step.origin == StepOrigin::Scaling {
                    let gap = &opt - instance.value(step.iterate_before);
                    let bound = &step.mu_before * &n;
                    if ExactRatio::from_int(gap.clone()) > bound {
                        out.push(Violation::GapBound { step: pos, gap, bound });
                    }
                }
            }
            StepKind::Augment => {
                if step.mu_after != step.mu_before {
                    out.push(Violation::BadAugment { step: pos });
                }
                let before = instance.value(step.iterate_before);
                let after = instance.value(step.iterate_after);
                if after <= before {
                    out.push(Violation::NotIncreasing { step: pos, before: before.clone(), after: after.clone() });
                }
            }
        }
        current = step.iterate_after;
        mu = step.mu_after.clone();
    }

    let augmentations = trace.steps.iter().filter(|s| s.kind == StepKind::Augment).count();
    if augmentations > count - 1 {
        out.push(Violation::TooManyAugmentations { count: augmentations, bound: count - 1 });
    }
    if summarize(trace) != trace.summary || trace.summary.final_bits != instance.vertex(trace.summary.final_vertex).to_string() {
        out.push(Violation::Bookkeeping("summary"));
    }
    if phases_of(&trace.steps) != trace.phases {
        out.push(Violation::Bookkeeping("phase list"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{simplex_instance, SimplexObjective};
    use crate::oracles::Policy;
    use crate::scaling::{run, EngineConfig};

    fn r(s: &str) -> ExactRatio {
        s.parse().unwrap()
    }

    #[test]
    fn clean_traces() {
        let lin = simplex_instance(3, SimplexObjective::Linear).unwrap();
        let t = run(&lin, &EngineConfig::mra(r("4"))).unwrap();
        assert_eq!(check_invariants(&lin, &t).unwrap(), []);

        let geo = simplex_instance(6, SimplexObjective::Geometric { base: 2 }).unwrap();
        let t = run(&geo, &EngineConfig::feasibility(Policy::MaxGain, r("128"))).unwrap();
        assert_eq!(t.summary.halve, 10);
        assert_eq!(check_invariants(&geo, &t).unwrap(), []);
    }

    #[test]
    fn repeated_iterate_is_reported() {
        let lin = simplex_instance(3, SimplexObjective::Linear).unwrap();
        let mut t = run(&lin, &EngineConfig::mra(r("4"))).unwrap();
        // Step 2 moves x1 -> x2; make it "move" x1 -> x1 instead.
        let step = &mut t.steps[2];
        step.iterate_after = step.iterate_before;
        step.objective_after = lin.value(step.iterate_before).clone();
        let v = check_invariants(&lin, &t).unwrap();
        assert!(v.iter().any(|x| matches!(x, Violation::NotIncreasing { step: 2, .. })), "{v:?}");
    }

    #[test]
    fn gap_violation_detected() {
        let lin = simplex_instance(3, SimplexObjective::Linear).unwrap();
        let mut t = run(&lin, &EngineConfig::mra(r("4"))).unwrap();
        // Pretend the last halving happened at a tiny mu while far from optimal.
        let last = t.steps.len() - 1;
        t.steps[last].iterate_before = 0;
        t.steps[last].iterate_after = 0;
        t.steps[last].objective_after = ExactInt::from(0);
        let v = check_invariants(&lin, &t).unwrap();
        assert!(v.iter().any(|x| matches!(x, Violation::GapBound { .. })), "{v:?}");
    }

    #[test]
    fn foreign_trace_rejected() {
        let lin = simplex_instance(3, SimplexObjective::Linear).unwrap();
        let other = simplex_instance(4, SimplexObjective::Linear).unwrap();
        let t = run(&lin, &EngineConfig::mra(r("4"))).unwrap();
        assert!(matches!(check_invariants(&other, &t), Err(EngineError::Mismatch(_))));
    }
}
