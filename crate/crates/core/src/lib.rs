//! Exact entropy-cone toolkit.
//!
//! `entrocone` computes min-cut entropy vectors of weighted boundary-colored
//! graphs, applies the `Sym(n+1)` symmetrization (permutations of the `n`
//! parties together with the purifier) to entropy vectors, inequalities and
//! graphs, and builds the symmetrized holographic and quantum entropy cones
//! (SHEC / SQEC) for any party count together with their exact volumes.
//!
//! Every number in this crate is an exact rational; no floating point is
//! used on any computational path.

pub mod cones;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod notation;
pub mod rational;
pub mod subsystem;
pub mod symmetrize;
pub mod vectors;
pub mod volumes;

pub use cones::{ConeKind, Membership, SimplicialCone};
pub use error::{Error, GraphError, Result};
pub use graph::{Backend, CombineMode, Cut, GraphModel};
pub use matrix::RMatrix;
pub use rational::Rational;
pub use subsystem::{Permutation, Subsystem};
pub use vectors::{EntropyVector, Inequality, SymInequality, SymVector};
pub use volumes::{RatioRow, VolumeReport};
