//! Quantum Tanner codes on left-right Cayley complexes, with the sequential and
//! parallel mismatch-decomposition decoders and a Monte-Carlo harness for
//! single-shot and multi-round experiments under noisy syndromes.

pub mod classical;
pub mod cli;
pub mod complex;
pub mod config;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod instances;
pub mod noise;
pub mod tanner;

pub use error::{Error, Result};
