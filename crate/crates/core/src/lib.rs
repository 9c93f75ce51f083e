//! Exact symbolic engine for quantum cellular automata on the G-symmetric subalgebra of a
//! one-dimensional spin chain, with a dense-matrix oracle for small periodic chains.

pub mod anyon;
pub mod arith;
pub mod deffile;
pub mod error;
pub mod group;
pub mod index;
pub mod library;
pub mod modlin;
pub mod oracle;
pub mod pauli;
pub mod qca;
pub mod sample;
pub mod phase;

pub use error::{Error, Result};
pub use group::{Character, CocycleClass, FiniteAbelianGroup, GroupAutomorphism, GroupElement};
pub use pauli::{Interval, PauliMonomial};
pub use phase::Phase;
