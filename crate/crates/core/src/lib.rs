//! Coupled uniform circular arrays as multiport networks: eigen-modes,
//! Fano-limited box-car matching and Diversity-OFDM outage capacity.

pub mod array_model;
pub mod capacity;
pub mod channel;
pub mod error;
pub mod fano;
pub mod io;
pub mod netalg;
pub mod rf_chain;
pub mod cli;
