//! Unit conventions and published reference values used by the test suite.
//!
//! Everything in this workspace is expressed in dimensionless atomic-style
//! units: `hbar = 1`, particle mass `= 1` unless a model says otherwise, and
//! `e = 1` for the molecular problem (energies in hartree, lengths in bohr).

use crate::error::{Error, Result};

pub const HBAR: f64 = 1.0;
pub const ELECTRON_MASS: f64 = 1.0;
pub const ELEMENTARY_CHARGE: f64 = 1.0;

/// Published equilibrium bond distances and bond energies for the hydrogen
/// molecular ion, `(method, R_e / bohr, E_e / hartree)`. These are fixtures
/// for comparison output and golden tests, never computation inputs.
pub const H2PLUS_REFERENCE: &[(&str, f64, f64)] = &[
    ("LCAO-MO", 2.5, -0.5648),
    ("Bates et al.", 2.0, -0.6026),
    ("Pauling", 2.5, -0.5648),
    ("Bowen et al.", 2.0, -0.5985),
    ("Finkelstein et al.", 2.0, -0.5865),
    ("Madsen et al.", 2.0, -0.6026),
    ("Gaussian09", 2.0, -0.6012),
    ("KEP", 2.0, -0.6019),
    ("Experiment", 2.0, -0.6026),
];

/// Looks up a published `(R_e, E_e)` row by method name.
pub fn reference_row(method: &str) -> Result<(f64, f64)> {
    H2PLUS_REFERENCE
        .iter()
        .find(|(name, _, _)| *name == method)
        .map(|&(_, re, ee)| (re, ee))
        .ok_or_else(|| Error::UnknownMethod(method.to_string()))
}
