//! Instance generators: the nested simplex `S_n`, its linear and geometric
//! objectives, and seeded random 0/1 polytopes.
//!
//! Random draws use `ChaCha8Rng::seed_from_u64`, so a seed reproduces the same
//! instance on every platform.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{int_pow, BitVertex, ExactInt, Instance, ModelError, Polytope};

/// The simplex whose vertex `i` has exactly its last `i` coordinates set,
/// for `i = 0..=n`. Vertex 0 is the origin.
pub fn make_simplex(n: usize) -> Result<Polytope, ModelError> {
    if n == 0 {
        return Err(ModelError::ZeroDimension);
    }
    Polytope::new(n, (0..=n).map(|i| BitVertex::suffix_ones(n, i)).collect())
}

/// `c = (1, 2, ..., n)`
pub fn objective_linear(n: usize) -> Vec<ExactInt> {
    (1..=n).map(ExactInt::from).collect()
}

/// `c = (base, base^2, ..., base^n)`
pub fn objective_geometric(n: usize, base: u64) -> Result<Vec<ExactInt>, ModelError> {
    if base < 2 {
        return Err(ModelError::BadBase(base));
    }
    Ok((1..=n as u32).map(|i| int_pow(base, i)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexObjective {
    Linear,
    Geometric { base: u64 },
}

/// `S_n` with the chosen objective, started at the origin.
pub fn simplex_instance(n: usize, objective: SimplexObjective) -> Result<Instance, ModelError> {
    let polytope = make_simplex(n)?;
    let c = match objective {
        SimplexObjective::Linear => objective_linear(n),
        SimplexObjective::Geometric { base } => objective_geometric(n, base)?,
    };
    Instance::new(polytope, c, 0)
}

/// `m` distinct vertices of the `n`-cube drawn without replacement, sorted
/// lexicographically.
pub fn random_polytope(n: usize, m: usize, seed: u64) -> Result<Polytope, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_polytope(&mut rng, n, m)
}

/// Entries uniform in `[-max_abs, max_abs]`.
pub fn random_objective(n: usize, max_abs: i64, seed: u64) -> Vec<ExactInt> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_objective(&mut rng, n, max_abs)
}

/// Random polytope, objective and start vertex from one seeded stream.
pub fn random_instance(n: usize, m: usize, max_abs: i64, seed: u64) -> Result<Instance, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polytope = sample_polytope(&mut rng, n, m)?;
    let c = sample_objective(&mut rng, n, max_abs);
    let start = rng.gen_range(0..polytope.len());
    Instance::new(polytope, c, start)
}

fn sample_polytope(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Result<Polytope, ModelError> {
    if n == 0 {
        return Err(ModelError::ZeroDimension);
    }
    if m == 0 {
        return Err(ModelError::NoVertices);
    }
    let too_many = ModelError::TooManyVertices { n, requested: m };
    let mut vertices: Vec<BitVertex> = if n < usize::BITS as usize {
        let cube = 1usize << n;
        if m > cube {
            return Err(too_many);
        }
        index::sample(rng, cube, m)
            .into_iter()
            .map(|code| BitVertex::new((0..n).map(|k| code >> (n - 1 - k) & 1 == 1).collect()))
            .collect()
    } else {
        let mut seen = BTreeSet::new();
        while seen.len() < m {
            seen.insert(BitVertex::new((0..n).map(|_| rng.gen::<bool>()).collect()));
        }
        seen.into_iter().collect()
    };
    vertices.sort();
    Polytope::new(n, vertices)
}

fn sample_objective(rng: &mut ChaCha8Rng, n: usize, max_abs: i64) -> Vec<ExactInt> {
    (0..n).map(|_| ExactInt::from(rng.gen_range(-max_abs..=max_abs))).collect()
}
