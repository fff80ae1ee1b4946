//! Exact Lie-theoretic data and level-k modular data for compact simple Lie
//! groups, and the torus-knot invariants of Chern-Simons theory built on them.

pub mod affine;
pub mod cache;
pub mod error;
pub mod invariants;
pub mod lie;
pub mod modular;
pub mod reps;

pub use error::{Error, Result};
pub use invariants::{EvalPath, InvariantValue, TorusKnotSpec};
pub use lie::{CartanLabel, Rational, RootSystem, Series, Weight, WeylElement};
pub use modular::LevelData;
pub use reps::MultiplicityTable;
