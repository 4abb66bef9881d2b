//! Files in and out: impedance sweeps, run configurations and results.

pub mod config;
pub mod emit;
pub mod fixtures;
pub mod impedance;
