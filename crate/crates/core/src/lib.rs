//! Overpartition analogues of Bressoud's conjecture.
//!
//! The crate is organised bottom-up: [`core`] holds parts, overpartitions and
//! parameters; [`marking`] computes Gordon markings; [`moves`] implements the
//! elementary transformations; [`bijections`] composes them into Φ/Ψ and
//! Φ₀/Ψ₀; [`classes`] is a brute-force enumeration oracle; [`qseries`] is an
//! exact truncated q-series engine; [`cli`] is the command-line surface.

pub mod bijections;
pub mod classes;
pub mod cli;
pub mod core;
pub mod error;
pub mod marking;
pub mod moves;
pub mod qseries;
pub mod report;

pub use crate::core::{DistinctEtaPartition, Overpartition, Params, Part};
pub use crate::error::{Error, Result};
