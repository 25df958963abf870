use serde::{Deserialize, Serialize};

use crate::model::{decimal, ExactInt, ExactRatio};
use crate::oracles::Policy;

use super::Variant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    #[serde(rename = "A")]
    Augment,
    #[serde(rename = "H")]
    Halve,
}

impl std::fmt::Display for StepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StepKind::Augment => "A",
            StepKind::Halve => "H",
        })
    }
}

/// Which part of the run produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepOrigin {
    /// The scaling loop proper.
    Scaling,
    /// Threshold-zero improvement taken in place of a halving once `mu <= 1/2`.
    EarlyStop,
    /// Post-loop improvement run by certify mode.
    Certify,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(rename = "i")]
    pub index: usize,
    pub kind: StepKind,
    #[serde(rename = "mu")]
    pub mu_before: ExactRatio,
    pub mu_after: ExactRatio,
    #[serde(rename = "x")]
    pub iterate_after: usize,
    #[serde(rename = "obj", with = "decimal")]
    pub objective_after: ExactInt,
    #[serde(rename = "from")]
    pub iterate_before: usize,
    pub origin: StepOrigin,
    /// Ratio of the accepted vertex; on a maximum-ratio halving step, the best
    /// (rejected) ratio.
    pub ratio: Option<ExactRatio>,
}

/// Maximal run of consecutive steps of one kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phase {
    pub kind: StepKind,
    pub first: usize,
    pub last: usize,
}

impl Phase {
    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    /// Augmenting steps inside the scaling loop (early-stop improvements included).
    pub augment: usize,
    pub halve: usize,
    /// Augmenting steps made after the loop by certify mode.
    pub certify_augment: usize,
    pub total: usize,
    pub final_vertex: usize,
    pub final_bits: String,
    #[serde(with = "decimal")]
    pub final_value: ExactInt,
    pub certified: bool,
    /// Set when the run hit its step limit; the trace is then partial.
    pub aborted: bool,
}

/// Configuration as actually run, with the instance fingerprint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub instance: String,
    pub n: usize,
    pub vertices: usize,
    pub start: usize,
    pub variant: Variant,
    pub policy: Option<Policy>,
    pub mu0: ExactRatio,
    pub alpha: ExactRatio,
    pub early_stop: bool,
    pub certify: bool,
    pub step_limit: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub config: ConfigEcho,
    pub steps: Vec<Step>,
    pub phases: Vec<Phase>,
    pub summary: Summary,
}

impl Trace {
    pub fn summary(&self) -> &Summary {
        &self.summary
    }

    /// Pretty JSON with a fixed field order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Trace, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// `(from, to)` vertex indices of every augmenting step, in order.
    pub fn augmentations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::Augment)
            .map(|s| (s.iterate_before, s.iterate_after))
    }
}

/// Splits steps into maximal same-kind runs.
pub fn phases_of(steps: &[Step]) -> Vec<Phase> {
    let mut phases: Vec<Phase> = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        match phases.last_mut() {
            Some(p) if p.kind == step.kind => p.last = i,
            _ => phases.push(Phase { kind: step.kind, first: i, last: i }),
        }
    }
    phases
}

/// Recomputes the summary from the steps. Fields the steps cannot determine
/// (the certificate flags, the final value of an empty run) are carried over.
pub fn summarize(trace: &Trace) -> Summary {
    let count = |pred: &dyn Fn(&Step) -> bool| trace.steps.iter().filter(|s| pred(s)).count();
    let last = trace.steps.last();
    Summary {
        augment: count(&|s| s.kind == StepKind::Augment && s.origin != StepOrigin::Certify),
        halve: count(&|s| s.kind == StepKind::Halve),
        certify_augment: count(&|s| s.kind == StepKind::Augment && s.origin == StepOrigin::Certify),
        total: trace.steps.len(),
        final_vertex: last.map_or(trace.config.start, |s| s.iterate_after),
        final_value: last.map_or_else(|| trace.summary.final_value.clone(), |s| s.objective_after.clone()),
        ..trace.summary.clone()
    }
}
