//! Jump-size counts and their bands, predicted step counts, and verification
//! reports for the worst-case simplex constructions.

mod omega;
mod report;
mod theorems;

use thiserror::Error;

use crate::model::{ExactRatio, ModelError};
use crate::scaling::{halvings_to_reach, EngineError};

pub use omega::{
    audit_reference_bands, breakpoint, ceiling, jump_admissible, omega, omega_bands, omega_corrected, omega_printed,
    omega_report, BandAudit, OmegaBand, OmegaDefinition, OmegaReport, REFERENCE_BANDS,
};
pub use report::{reports_to_csv, reports_to_text, CSV_HEADER};
pub use theorems::{
    alpha_instance, alpha_safe_mu0, max_jump_empirical, setup, sweep, verify_theorem, verify_theorem_with_trace, Counts,
    Overrides, Setup, Theorem, TheoremReport,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("alpha = {0} must be greater than 1")]
    AlphaNotAboveOne(ExactRatio),
    #[error(
        "alpha = {0} is outside (1, 2]: the closed-form jump bound only holds for ceil(alpha) = 2; \
         use `sweep` and the corrected omega for larger alpha"
    )]
    AlphaOutsideSafeBand(ExactRatio),
    #[error("n = {0} is too small; the constructions need n >= 3")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalvingMode {
    /// Until `mu < 1/n`.
    Literal,
    /// Until `mu <= 1/2`.
    EarlyStop,
}

/// Number of divisions by `alpha` a completed run performs, computed by exact
/// iteration of `mu0 / alpha^k` (no logarithms).
///
/// The count does not depend on the trajectory because only halving steps
/// change `mu`. In literal mode this assumes `mu0 >= 1/n`.
pub fn predicted_halvings(mu0: &ExactRatio, alpha: &ExactRatio, n: usize, mode: HalvingMode) -> u64 {
    match mode {
        HalvingMode::Literal => {
            let threshold = ExactRatio::new(1, n as u64).expect("n >= 1");
            halvings_to_reach(mu0, alpha, &threshold, true)
        }
        HalvingMode::EarlyStop => {
            let threshold = ExactRatio::new(1, 2).expect("nonzero");
            halvings_to_reach(mu0, alpha, &threshold, false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> ExactRatio {
        s.parse().unwrap()
    }

    #[test]
    fn halving_predictions() {
        assert_eq!(predicted_halvings(&r("4"), &r("2"), 3, HalvingMode::Literal), 4);
        assert_eq!(predicted_halvings(&r("128"), &r("2"), 6, HalvingMode::Literal), 10);
        assert_eq!(predicted_halvings(&r("4"), &r("2"), 3, HalvingMode::EarlyStop), 3);
        // 3 -> 9/4 -> 27/16 -> ... with alpha = 4/3 until below 1/5.
        let k = predicted_halvings(&r("3"), &r("4/3"), 5, HalvingMode::Literal);
        let mu = r("3") * r("3/4").pow(k as u32);
        assert!(mu < r("1/5") && mu * r("4/3") >= r("1/5"));
    }
}
