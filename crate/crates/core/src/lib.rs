//! Capacity regions of phase-insensitive bosonic amplifier channels.
//!
//! The crate evaluates the closed-form boundaries of
//!
//! - the classical / quantum / entanglement triple trade-off region of the
//!   quantum-limited amplifier ([`tradeoff`]),
//! - the public / private / secret-key trade-off region ([`tradeoff`]),
//! - the two-receiver broadcast region of the amplifier dilation together
//!   with homodyne and heterodyne baselines ([`broadcast`]),
//! - an entropy-power outer bound for the pure-loss channel ([`qepi`]),
//!
//! and cross-checks every thermal-entropy expression against an independent
//! covariance-matrix computation ([`oracle`]).
//!
//! All rates are in bits (or qubits, ebits) per channel use. Negative rates
//! denote consumption of a resource.

#![forbid(unsafe_code)]

pub mod broadcast;
pub mod channels;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod qepi;
pub mod search;
pub mod tradeoff;
pub mod verify;

pub use error::{Error, Result};
