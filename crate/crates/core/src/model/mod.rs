//! Exact numeric types, 0/1 polytopes given by explicit vertex lists, problem
//! instances, the worst-case generators and the instance file format.

mod exact;
mod generators;
mod io;
mod vertex;

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use exact::{bit_len, decimal, int_pow, parse_int, ExactInt, ExactRatio};
pub use generators::{
    make_simplex, objective_geometric, objective_linear, random_instance, random_objective,
    random_polytope, simplex_instance, SimplexObjective,
};
pub use io::{parse_instance, write_instance};
pub use vertex::BitVertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("polytope has no vertices")]
    NoVertices,
    #[error("vertex {index} has length {found}, expected {expected}")]
    WrongLength { index: usize, expected: usize, found: usize },
    #[error("invalid character {ch:?} in bitstring {text:?}")]
    BadBit { text: String, ch: char },
    #[error("vertex {second} duplicates vertex {first} ({bits})")]
    DuplicateVertex { first: usize, second: usize, bits: String },
    #[error("objective has {found} entries, expected {expected}")]
    ObjectiveLength { expected: usize, found: usize },
    #[error("objective entry {index} is not an integer: {value}")]
    NonInteger { index: usize, value: String },
    #[error("start index {start} out of range for {count} vertices")]
    BadStart { start: usize, count: usize },
    #[error("base must be at least 2, got {0}")]
    BadBase(u64),
    #[error("cannot draw {requested} distinct vertices from a {n}-cube")]
    TooManyVertices { n: usize, requested: usize },
    #[error("ratio between a vertex and itself is undefined")]
    ZeroDistance,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not a rational number: {0:?}")]
    BadRational(String),
    #[error("malformed instance file: {0}")]
    Json(String),
}

/// A 0/1 polytope given by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    n: usize,
    vertices: Vec<BitVertex>,
}

impl Polytope {
    pub fn new(n: usize, vertices: Vec<BitVertex>) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::ZeroDimension);
        }
        if vertices.is_empty() {
            return Err(ModelError::NoVertices);
        }
        let mut seen = HashMap::with_capacity(vertices.len());
        for (index, v) in vertices.iter().enumerate() {
            if v.dim() != n {
                return Err(ModelError::WrongLength { index, expected: n, found: v.dim() });
            }
            if let Some(&first) = seen.get(v) {
                return Err(ModelError::DuplicateVertex { first, second: index, bits: v.to_string() });
            }
            seen.insert(v, index);
        }
        Ok(Polytope { n, vertices })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[BitVertex] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> &BitVertex {
        &self.vertices[index]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, v: &BitVertex) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }
}

/// Polytope, integer objective and start vertex.
///
/// Objective values of all vertices are computed once at construction; the
/// instance is immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    polytope: Polytope,
    objective: Vec<ExactInt>,
    start: usize,
    values: Vec<ExactInt>,
}

impl Instance {
    pub fn new(polytope: Polytope, objective: Vec<ExactInt>, start: usize) -> Result<Self, ModelError> {
        if objective.len() != polytope.dim() {
            return Err(ModelError::ObjectiveLength { expected: polytope.dim(), found: objective.len() });
        }
        if start >= polytope.len() {
            return Err(ModelError::BadStart { start, count: polytope.len() });
        }
        let values = polytope.vertices().iter().map(|v| dot(&objective, v)).collect();
        Ok(Instance { polytope, objective, start, values })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn objective(&self) -> &[ExactInt] {
        &self.objective
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn vertex_count(&self) -> usize {
        self.polytope.len()
    }

    pub fn vertex(&self, index: usize) -> &BitVertex {
        self.polytope.vertex(index)
    }

    /// `c . x` for the vertex at `index`.
    pub fn value(&self, index: usize) -> &ExactInt {
        &self.values[index]
    }

    pub fn values(&self) -> &[ExactInt] {
        &self.values
    }

    /// `||c||_inf`
    pub fn norm_inf(&self) -> ExactInt {
        norm_inf(&self.objective)
    }

    /// Augmentation ratio `c.(y - x) / ||y - x||_1` between two vertices, by index.
    pub fn ratio(&self, from: usize, to: usize) -> Result<ExactRatio, ModelError> {
        let dist = self.vertex(from).l1_dist(self.vertex(to));
        if dist == 0 {
            return Err(ModelError::ZeroDistance);
        }
        ExactRatio::new(&self.values[to] - &self.values[from], ExactInt::from(dist))
    }

    /// Stable content hash of the serialized instance, used to tie traces to
    /// the instance they were produced on.
    pub fn digest(&self) -> String {
        let text = write_instance(self);
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

/// Inner product of an integer vector with a 0/1 point.
pub fn dot(c: &[ExactInt], x: &BitVertex) -> ExactInt {
    c.iter()
        .zip(x.bits())
        .filter(|(_, &b)| b)
        .fold(ExactInt::zero(), |acc, (ci, _)| acc + ci)
}

pub fn l1_dist(x: &BitVertex, y: &BitVertex) -> ExactInt {
    ExactInt::from(x.l1_dist(y))
}

/// `(c.y - c.from) / ||y - from||_1`, canonical. Fails when `y == from`.
pub fn ratio(c: &[ExactInt], from: &BitVertex, y: &BitVertex) -> Result<ExactRatio, ModelError> {
    let dist = from.l1_dist(y);
    if dist == 0 {
        return Err(ModelError::ZeroDistance);
    }
    ExactRatio::new(dot(c, y) - dot(c, from), ExactInt::from(dist))
}

pub fn norm_inf(c: &[ExactInt]) -> ExactInt {
    c.iter().map(|ci| ci.abs()).max().unwrap_or_else(ExactInt::zero)
}
