//! Geometric scaling for linear optimization over 0/1 polytopes, in exact
//! rational arithmetic.
//!
//! * [`model`]: exact numbers, vertex-list polytopes, instance generators and the
//!   instance file format.
//! * [`oracles`]: maximum-ratio, feasibility (with selection policies),
//!   threshold-zero improvement and brute-force oracles.
//! * [`scaling`]: the scaling engine with full step traces and invariant checks.
//! * [`analysis`]: jump-size bounds, band tables, predicted step counts and
//!   step-count verification reports.
//! * [`cli`]: the `geoscale` command-line front end.

pub mod analysis;
pub mod cli;
pub mod model;
pub mod oracles;
pub mod scaling;
