//! Oracles over an explicit vertex list: maximum-ratio augmentation, the
//! strict feasibility test with a selection policy, threshold-zero
//! improvement, and brute-force optimization.
//!
//! Every oracle is a pure function of its arguments. Ties are always broken
//! toward the lexicographically smallest bitstring.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{BitVertex, ExactInt, ExactRatio, Instance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("vertex index {index} is not in the polytope ({count} vertices)")]
    NotAVertex { index: usize, count: usize },
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(ExactRatio),
}

/// How the feasibility oracle picks among the vertices that pass the test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Policy {
    MaxRatio,
    MaxGain,
    MinGain,
    LexFirst,
    /// Uniform over the feasible set. The draw is a function of the seed, the
    /// current vertex and the scale only.
    Random { seed: u64 },
}

impl Policy {
    pub const ALL_NAMES: [&'static str; 5] = ["max-ratio", "max-gain", "min-gain", "lex", "random"];

    pub fn name(&self) -> &'static str {
        match self {
            Policy::MaxRatio => "max-ratio",
            Policy::MaxGain => "max-gain",
            Policy::MinGain => "min-gain",
            Policy::LexFirst => "lex",
            Policy::Random { .. } => "random",
        }
    }

    /// Every policy, with `seed` used for the random one.
    pub fn all(seed: u64) -> [Policy; 5] {
        [Policy::MaxRatio, Policy::MaxGain, Policy::MinGain, Policy::LexFirst, Policy::Random { seed }]
    }

    /// Parses a policy name; `seed` is attached when the name is `random`.
    pub fn from_name(name: &str, seed: u64) -> Option<Policy> {
        Some(match name {
            "max-ratio" => Policy::MaxRatio,
            "max-gain" => Policy::MaxGain,
            "min-gain" => Policy::MinGain,
            "lex" => Policy::LexFirst,
            "random" => Policy::Random { seed },
            _ => return None,
        })
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Random { seed } => write!(f, "random:{seed}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(seed) = s.strip_prefix("random:") {
            let seed = seed.parse().map_err(|_| format!("bad random seed in policy {s:?}"))?;
            return Ok(Policy::Random { seed });
        }
        Policy::from_name(s, 0).ok_or_else(|| format!("unknown policy {s:?}"))
    }
}

impl Serialize for Policy {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Policy {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A vertex returned by an oracle, with its augmentation ratio from the
/// current iterate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pick {
    pub index: usize,
    pub ratio: ExactRatio,
}

/// `None` means no qualifying vertex exists.
pub type OracleAnswer = Option<Pick>;

fn check_vertex(instance: &Instance, current: usize) -> Result<(), OracleError> {
    if current >= instance.vertex_count() {
        return Err(OracleError::NotAVertex { index: current, count: instance.vertex_count() });
    }
    Ok(())
}

fn lex(instance: &Instance, a: usize, b: usize) -> Ordering {
    instance.vertex(a).cmp(instance.vertex(b))
}

fn candidates(instance: &Instance, current: usize) -> impl Iterator<Item = Pick> + '_ {
    (0..instance.vertex_count()).filter(move |&j| j != current).map(move |j| Pick {
        index: j,
        ratio: instance.ratio(current, j).expect("distinct vertices have positive distance"),
    })
}

/// Vertex maximizing `c.(x - current) / ||x - current||_1` over all other
/// vertices. `None` only for a single-vertex polytope.
pub fn mra_argmax(instance: &Instance, current: usize) -> Result<OracleAnswer, OracleError> {
    check_vertex(instance, current)?;
    Ok(candidates(instance, current).reduce(|best, cand| {
        match cand.ratio.cmp(&best.ratio).then_with(|| lex(instance, best.index, cand.index)) {
            Ordering::Greater => cand,
            _ => best,
        }
    }))
}

/// All vertices with `c.(x - current) > mu * ||x - current||_1`, in polytope order.
pub fn feasible_set(instance: &Instance, current: usize, mu: &ExactRatio) -> Result<Vec<Pick>, OracleError> {
    check_vertex(instance, current)?;
    if !mu.is_positive() {
        return Err(OracleError::NonPositiveScale(mu.clone()));
    }
    Ok(candidates(instance, current).filter(|p| &p.ratio > mu).collect())
}

/// Feasibility oracle: one vertex of [`feasible_set`] chosen by `policy`.
pub fn select(policy: Policy, instance: &Instance, current: usize, mu: &ExactRatio) -> Result<OracleAnswer, OracleError> {
    let feasible = feasible_set(instance, current, mu)?;
    if feasible.is_empty() {
        return Ok(None);
    }
    let value = |p: &Pick| instance.value(p.index);
    // `best_by(key)` keeps the candidate with the greatest key, ties to the smaller bitstring.
    let best_by = |cmp: &dyn Fn(&Pick, &Pick) -> Ordering| {
        feasible
            .iter()
            .cloned()
            .reduce(|best, cand| match cmp(&cand, &best).then_with(|| lex(instance, best.index, cand.index)) {
                Ordering::Greater => cand,
                _ => best,
            })
    };
    Ok(match policy {
        Policy::MaxRatio => best_by(&|a, b| a.ratio.cmp(&b.ratio)),
        Policy::MaxGain => best_by(&|a, b| value(a).cmp(value(b))),
        Policy::MinGain => best_by(&|a, b| value(b).cmp(value(a))),
        Policy::LexFirst => best_by(&|_, _| Ordering::Equal),
        Policy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(draw_seed(seed, instance.vertex(current), mu));
            let k = rng.gen_range(0..feasible.len());
            Some(feasible[k].clone())
        }
    })
}

fn draw_seed(seed: u64, current: &BitVertex, mu: &ExactRatio) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(current.to_string().as_bytes());
    hasher.update(b"|");
    hasher.update(mu.to_string().as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("sha256 is 32 bytes"))
}

/// Threshold-zero augmentation: the lexicographically smallest vertex with
/// strictly larger objective, or `None` if `current` is optimal.
pub fn improve_any(instance: &Instance, current: usize) -> Result<OracleAnswer, OracleError> {
    check_vertex(instance, current)?;
    let here = instance.value(current);
    Ok(candidates(instance, current)
        .filter(|p| instance.value(p.index) > here)
        .min_by(|a, b| lex(instance, a.index, b.index)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub index: usize,
    pub vertex: BitVertex,
    pub value: ExactInt,
}

/// Exhaustive `max c.x`; ties go to the lexicographically smallest vertex.
pub fn brute_force_opt(instance: &Instance) -> Optimum {
    let index = (0..instance.vertex_count())
        .reduce(|best, j| {
            match instance.value(j).cmp(instance.value(best)).then_with(|| lex(instance, best, j)) {
                Ordering::Greater => j,
                _ => best,
            }
        })
        .expect("polytopes are non-empty");
    Optimum { index, vertex: instance.vertex(index).clone(), value: instance.value(index).clone() }
}
