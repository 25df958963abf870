//! Jump-size counts for the alpha-divided feasibility schedule on the
//! geometric simplex, and their exact band structure.
//!
//! With `beta = ceil(alpha)`, two readings of the count are provided:
//!
//! * printed: `#{t >= 1 : alpha * beta * (1 - beta^-t) / t > 1}`
//! * corrected: `#{t >= 1 : alpha * beta * (1 - beta^-t) / ((beta - 1) t) > 1}`
//!
//! The corrected form keeps the `1 / (beta - 1)` factor of the geometric sum
//! `sum_{k<t} beta^k`. The two agree whenever `beta = 2`, i.e. on `(1, 2]`.
//! Both are evaluated with cross-multiplied integers only.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use crate::model::{ExactInt, ExactRatio};

use super::AnalysisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaDefinition {
    /// Without the `1 / (beta - 1)` factor.
    Printed,
    /// With the `1 / (beta - 1)` factor.
    Corrected,
}

impl fmt::Display for OmegaDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaDefinition::Printed => "paper",
            OmegaDefinition::Corrected => "corrected",
        })
    }
}

impl FromStr for OmegaDefinition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" | "printed" => Ok(OmegaDefinition::Printed),
            "corrected" => Ok(OmegaDefinition::Corrected),
            other => Err(format!("unknown omega definition {other:?} (expected paper or corrected)")),
        }
    }
}

fn check_alpha(alpha: &ExactRatio) -> Result<(), AnalysisError> {
    if alpha <= &ExactRatio::one() {
        return Err(AnalysisError::AlphaNotAboveOne(alpha.clone()));
    }
    Ok(())
}

/// `ceil(alpha)`
pub fn ceiling(alpha: &ExactRatio) -> ExactInt {
    alpha.ceil()
}

fn pow(base: &ExactInt, exp: u64) -> ExactInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// Whether jump size `t` passes the inequality for `alpha` (with `beta = ceil(alpha)`).
pub fn jump_admissible(def: OmegaDefinition, alpha: &ExactRatio, t: u64) -> bool {
    let beta = ceiling(alpha);
    admissible_with_base(def, alpha, &beta, t)
}

fn admissible_with_base(def: OmegaDefinition, alpha: &ExactRatio, beta: &ExactInt, t: u64) -> bool {
    let bt = pow(beta, t);
    // alpha = p/q:  p * beta * (beta^t - 1) > q * k * t * beta^t, k = 1 or beta - 1
    let lhs = alpha.numer() * beta * (&bt - 1);
    let k = match def {
        OmegaDefinition::Printed => ExactInt::one(),
        OmegaDefinition::Corrected => beta - 1,
    };
    let rhs = alpha.denom() * k * ExactInt::from(t) * bt;
    lhs > rhs
}

fn count(def: OmegaDefinition, alpha: &ExactRatio) -> Result<(u64, Vec<u64>), AnalysisError> {
    check_alpha(alpha)?;
    let beta = ceiling(alpha);
    // The left side over t is strictly decreasing, so the satisfied set is 1..=omega.
    let satisfied: Vec<u64> = (1..).take_while(|&t| admissible_with_base(def, alpha, &beta, t)).collect();
    Ok((satisfied.len() as u64, satisfied))
}

pub fn omega(def: OmegaDefinition, alpha: &ExactRatio) -> Result<u64, AnalysisError> {
    count(def, alpha).map(|(w, _)| w)
}

/// Count under the printed inequality.
pub fn omega_printed(alpha: &ExactRatio) -> Result<u64, AnalysisError> {
    omega(OmegaDefinition::Printed, alpha)
}

/// Count under the inequality with the geometric-sum factor restored.
pub fn omega_corrected(alpha: &ExactRatio) -> Result<u64, AnalysisError> {
    omega(OmegaDefinition::Corrected, alpha)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub alpha: ExactRatio,
    #[serde(with = "crate::model::decimal")]
    pub ceiling: ExactInt,
    pub omega_paper: u64,
    pub omega_corrected: u64,
    pub satisfied_t_paper: Vec<u64>,
}

impl OmegaReport {
    pub fn agree(&self) -> bool {
        self.omega_paper == self.omega_corrected
    }
}

pub fn omega_report(alpha: &ExactRatio) -> Result<OmegaReport, AnalysisError> {
    let (omega_paper, satisfied_t_paper) = count(OmegaDefinition::Printed, alpha)?;
    Ok(OmegaReport {
        alpha: alpha.clone(),
        ceiling: ceiling(alpha),
        omega_paper,
        omega_corrected: omega_corrected(alpha)?,
        satisfied_t_paper,
    })
}

/// The `alpha` at which jump size `t` stops being admissible for base `beta`:
/// `t beta^(t-1) / (beta^t - 1)`, times `beta - 1` for the corrected reading.
/// Jump `t` is admissible exactly when `alpha` is strictly above it.
pub fn breakpoint(def: OmegaDefinition, beta: &ExactInt, t: u64) -> ExactRatio {
    assert!(t >= 1 && beta >= &ExactInt::from(2));
    let k = match def {
        OmegaDefinition::Printed => ExactInt::one(),
        OmegaDefinition::Corrected => beta - 1,
    };
    ExactRatio::new(k * ExactInt::from(t) * pow(beta, t - 1), pow(beta, t) - 1).expect("beta^t > 1")
}

/// Half-open interval `(lo, hi]` on which the count is constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaBand {
    pub lo: ExactRatio,
    pub hi: ExactRatio,
    pub omega: u64,
}

impl fmt::Display for OmegaBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}] -> {}", self.lo, self.hi, self.omega)
    }
}

/// Exact bands covering `(1, alpha_max]`. Band edges are breakpoints or
/// integers, where `ceil(alpha)` changes.
pub fn omega_bands(def: OmegaDefinition, alpha_max: &ExactRatio) -> Result<Vec<OmegaBand>, AnalysisError> {
    check_alpha(alpha_max)?;
    let mut bands = Vec::new();
    let mut m = ExactInt::one();
    while &ExactRatio::from_int(m.clone()) < alpha_max {
        let lo = ExactRatio::from_int(m.clone());
        let next = ExactRatio::from_int(&m + 1);
        let hi = if &next < alpha_max { next } else { alpha_max.clone() };
        let beta = &m + 1;

        let mut omega_at_lo = 0;
        let mut inner = Vec::new();
        for t in 1.. {
            let b = breakpoint(def, &beta, t);
            if b >= hi {
                break;
            }
            if b <= lo {
                omega_at_lo += 1;
            } else {
                inner.push(b);
            }
        }
        let mut edge = lo;
        let mut omega = omega_at_lo;
        for b in inner {
            bands.push(OmegaBand { lo: edge, hi: b.clone(), omega });
            edge = b;
            omega += 1;
        }
        bands.push(OmegaBand { lo: edge, hi: hi.clone(), omega });
        m += 1;
    }
    Ok(bands)
}

/// Reference band table `(lo, hi, omega)` as commonly quoted for this
/// construction. The last row disagrees with the strict inequality; see
/// [`audit_reference_bands`].
pub const REFERENCE_BANDS: [(&str, &str, u64); 4] = [("1", "4/3", 1), ("4/3", "12/7", 2), ("12/7", "2", 3), ("2", "729/364", 6)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BandAudit {
    pub lo: ExactRatio,
    pub hi: ExactRatio,
    pub reference: u64,
    /// Distinct values of the printed count on the interval (one if constant).
    pub computed_printed: Vec<u64>,
    pub computed_corrected: Vec<u64>,
    pub agrees: bool,
}

impl fmt::Display for BandAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}] reference={} printed={:?} corrected={:?}{}",
            self.lo,
            self.hi,
            self.reference,
            self.computed_printed,
            self.computed_corrected,
            if self.agrees { "" } else { "  DIVERGES" }
        )
    }
}

fn values_on(def: OmegaDefinition, lo: &ExactRatio, hi: &ExactRatio) -> Result<Vec<u64>, AnalysisError> {
    let mut values: Vec<u64> = omega_bands(def, hi)?
        .into_iter()
        .filter(|b| &b.hi > lo)
        .map(|b| b.omega)
        .collect();
    values.dedup();
    Ok(values)
}

/// Recomputes every row of [`REFERENCE_BANDS`] under both readings and flags
/// rows where the strict printed count is not the quoted constant.
pub fn audit_reference_bands() -> Vec<BandAudit> {
    REFERENCE_BANDS
        .iter()
        .map(|&(lo, hi, reference)| {
            let lo: ExactRatio = lo.parse().expect("static rational");
            let hi: ExactRatio = hi.parse().expect("static rational");
            let computed_printed = values_on(OmegaDefinition::Printed, &lo, &hi).expect("hi > 1");
            let computed_corrected = values_on(OmegaDefinition::Corrected, &lo, &hi).expect("hi > 1");
            let agrees = computed_printed == [reference];
            BandAudit { lo, hi, reference, computed_printed, computed_corrected, agrees }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> ExactRatio {
        s.parse().unwrap()
    }

    #[test]
    fn printed_counts() {
        assert_eq!(omega_printed(&r("4/3")).unwrap(), 1);
        assert_eq!(omega_printed(&r("3/2")).unwrap(), 2);
        assert_eq!(omega_printed(&r("2")).unwrap(), 3);
        assert_eq!(omega_printed(&r("10")).unwrap(), 99);
        assert_eq!(omega_printed(&r("2001/1000")).unwrap(), 5);
        assert_eq!(omega_printed(&r("729/364")).unwrap(), 5);
        assert!(omega_printed(&r("1")).is_err());
    }

    #[test]
    fn corrected_counts() {
        for a in ["4/3", "3/2", "2"] {
            assert_eq!(omega_corrected(&r(a)).unwrap(), omega_printed(&r(a)).unwrap());
        }
        assert_eq!(omega_corrected(&r("2001/1000")).unwrap(), 2);
        assert_eq!(omega_corrected(&r("3")).unwrap(), 4);
    }

    #[test]
    fn report_lists_satisfied_t() {
        let rep = omega_report(&r("2")).unwrap();
        assert_eq!(rep.satisfied_t_paper, [1, 2, 3]);
        assert_eq!(rep.ceiling, ExactInt::from(2));
        assert!(rep.agree());
    }

    #[test]
    fn breakpoints() {
        let two = ExactInt::from(2);
        assert_eq!(breakpoint(OmegaDefinition::Printed, &two, 2), r("4/3"));
        assert_eq!(breakpoint(OmegaDefinition::Printed, &two, 3), r("12/7"));
        assert_eq!(breakpoint(OmegaDefinition::Printed, &ExactInt::from(3), 6), r("729/364"));
    }

    #[test]
    fn bands_up_to_two() {
        let bands = omega_bands(OmegaDefinition::Printed, &r("2")).unwrap();
        let shown: Vec<String> = bands.iter().map(|b| b.to_string()).collect();
        assert_eq!(shown, ["(1, 4/3] -> 1", "(4/3, 12/7] -> 2", "(12/7, 2] -> 3"]);
        assert_eq!(omega_bands(OmegaDefinition::Corrected, &r("2")).unwrap(), bands);
    }

    #[test]
    fn band_past_two() {
        let bands = omega_bands(OmegaDefinition::Printed, &r("729/364")).unwrap();
        assert_eq!(bands.last().unwrap().to_string(), "(2, 729/364] -> 5");
        assert_eq!(bands.len(), 4);
    }

    #[test]
    fn audit_flags_only_last_row() {
        let audit = audit_reference_bands();
        let flags: Vec<bool> = audit.iter().map(|a| a.agrees).collect();
        assert_eq!(flags, [true, true, true, false]);
        assert_eq!(audit[3].computed_printed, [5]);
        assert_eq!(audit[3].computed_corrected, [2]);
    }
}
