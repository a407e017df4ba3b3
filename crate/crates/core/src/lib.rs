#![allow(clippy::needless_range_loop)]

pub mod canonical;
pub mod classify;
pub mod data;
pub mod error;
pub mod exact;
pub mod f4;
pub mod gf2;
pub mod lattice;
pub mod par;
pub mod qseries;
pub mod selfdual;
pub mod z4;
pub mod serde_util;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, WeightDistribution};
pub use par::Execution;
