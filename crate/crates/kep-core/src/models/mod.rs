//! The three worked model systems.

pub mod double_delta;
pub mod h2plus;
pub mod magnetic_oscillator;
