//! Two attractive delta wells of equal depth at `x = +a` and `x = -a`.
//!
//! Every matrix element involving a delta potential is evaluated through the
//! sifting property, never by quadrature. Each subsystem (a single well with
//! doubled mass) has one bound state, so the union basis has two functions
//! and the pencil a closed-form lowest root.
//!
//! Units: `hbar = 1` throughout; the well depth `lambda` and particle mass
//! `m` are dimensionless.

use crate::error::{Error, Result};
use crate::kep::{assemble, solve, CouplingIntegrals, KepAssembly, SubsystemBasis};
use crate::linalg::{Matrix, SymMatrix};
use crate::opt::newton_bisect;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaParams {
    pub mass: f64,
    pub depth: f64,
    /// Wells sit at `x = +a` and `x = -a`.
    pub half_separation: f64,
}

impl DeltaParams {
    pub fn new(mass: f64, depth: f64, half_separation: f64) -> Result<Self> {
        if !(mass > 0.0) || !(depth > 0.0) || !(half_separation >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "need m > 0, lambda > 0, a >= 0; got m = {mass}, lambda = {depth}, a = {half_separation}"
            )));
        }
        Ok(Self { mass, depth, half_separation })
    }

    /// Paper-style defaults `m = a = 1` at the given well depth.
    pub fn with_depth(depth: f64) -> Result<Self> {
        Self::new(1.0, depth, 1.0)
    }
}

/// Quantities derived from the parameters.
///
/// `k` is the bound-state decay rate of a single well at the doubled mass,
/// `bound_energy` its eigenvalue (the same for both wells), `xi` the
/// potential-difference diagonal element, `eta` the cross overlap and `beta`
/// the strength parameter of the exact even-state condition.
#[derive(Debug, Clone, Copy)]
pub struct DeltaDerived {
    pub k: f64,
    pub bound_energy: f64,
    pub xi: f64,
    pub eta: f64,
    pub beta: f64,
}

pub fn derive(p: &DeltaParams) -> DeltaDerived {
    let m_star = 2.0 * p.mass;
    let k = m_star * p.depth;
    let ka = k * p.half_separation;
    DeltaDerived {
        k,
        bound_energy: -0.5 * m_star * p.depth * p.depth,
        xi: p.depth * k * (1.0 - (-4.0 * ka).exp()),
        eta: (-2.0 * ka).exp() * (2.0 * ka + 1.0),
        beta: 2.0 * p.half_separation * p.mass * p.depth,
    }
}

/// Bound state of the well at `x = +a` (doubled mass): `sqrt(k) e^{-k|x-a|}`.
pub fn psi1(p: &DeltaParams, x: f64) -> f64 {
    let d = derive(p);
    d.k.sqrt() * (-d.k * (x - p.half_separation).abs()).exp()
}

/// Bound state of the well at `x = -a`.
pub fn psi2(p: &DeltaParams, x: f64) -> f64 {
    let d = derive(p);
    d.k.sqrt() * (-d.k * (x + p.half_separation).abs()).exp()
}

/// The two one-state subsystem bases (even mass split, `kappa = 2`).
pub fn subsystem_states(p: &DeltaParams) -> (SubsystemBasis, SubsystemBasis) {
    let e = derive(p).bound_energy;
    (
        SubsystemBasis::new(2.0, vec![e]).expect("valid params"),
        SubsystemBasis::new(2.0, vec![e]).expect("valid params"),
    )
}

/// Analytic coupling integrals: `xi` on both diagonal blocks, `eta` across.
pub fn coupling(p: &DeltaParams) -> CouplingIntegrals {
    let d = derive(p);
    CouplingIntegrals {
        diag_block_1: SymMatrix::from_rows(&[vec![d.xi]]).expect("1x1"),
        diag_block_2: SymMatrix::from_rows(&[vec![d.xi]]).expect("1x1"),
        cross_overlap: Matrix::from_fn(1, 1, |_, _| d.eta),
    }
}

pub fn assembly(p: &DeltaParams) -> Result<KepAssembly> {
    let (s1, s2) = subsystem_states(p);
    assemble(&s1, &s2, &coupling(p))
}

/// Two-state result; `wavenumber` is `sqrt(-2 m E)` and absent when the
/// state comes out unbound (reported rather than raised).
#[derive(Debug, Clone, Copy)]
pub struct TwoStateKep {
    pub energy: f64,
    pub wavenumber: Option<f64>,
}

/// Closed-form lowest root of the two-state pencil,
/// `E = 2 E_1 + xi / (1 + eta)`; the other branch is an unbound state.
pub fn kep_two_state(p: &DeltaParams) -> TwoStateKep {
    let d = derive(p);
    let energy = 2.0 * d.bound_energy + d.xi / (1.0 + d.eta);
    let wavenumber =
        (energy < 0.0).then(|| (-2.0 * p.mass * energy).sqrt());
    TwoStateKep { energy, wavenumber }
}

/// The exact even bound state of the double well.
#[derive(Debug, Clone, Copy)]
pub struct ExactReference {
    pub energy: f64,
    pub wavenumber: f64,
    pub gamma: f64,
    half_separation: f64,
}

impl ExactReference {
    /// Normalized even eigenfunction: `cosh(K x)` inside the wells and a
    /// matched exponential tail outside.
    pub fn wavefunction(&self, x: f64) -> f64 {
        let (kk, g, a) = (self.wavenumber, self.gamma, self.half_separation);
        let z = (2.0 * g).exp() + 2.0 * g + 1.0;
        let amp = (2.0 * kk / z).sqrt();
        if x.abs() > a {
            amp * g.cosh() * (-kk * (x.abs() - a)).exp()
        } else {
            amp * (kk * x).cosh()
        }
    }
}

/// Solves `gamma (1 + tanh gamma) = beta` for the exact even state.
///
/// The left side is monotone increasing with `f(0) = 0 < beta <= f(beta)`,
/// so the root is bracketed by `[0, beta]`. Coincident wells (`a = 0`) reduce
/// to a single well of doubled depth and are special-cased.
pub fn exact_reference(p: &DeltaParams) -> Result<ExactReference> {
    if p.half_separation == 0.0 {
        let k = 2.0 * p.mass * p.depth;
        return Ok(ExactReference {
            energy: -2.0 * p.mass * p.depth * p.depth,
            wavenumber: k,
            gamma: 0.0,
            half_separation: 0.0,
        });
    }
    let beta = derive(p).beta;
    let gamma = newton_bisect(
        |g| g * (1.0 + g.tanh()) - beta,
        |g| 1.0 + g.tanh() + g / g.cosh().powi(2),
        0.0,
        beta,
        1e-13,
    )?;
    let wavenumber = gamma / p.half_separation;
    Ok(ExactReference {
        energy: -wavenumber * wavenumber / (2.0 * p.mass),
        wavenumber,
        gamma,
        half_separation: p.half_separation,
    })
}

/// One row of the depth scan: exact and two-state wavenumbers and energies.
#[derive(Debug, Clone, Copy)]
pub struct DepthScanRow {
    pub depth: f64,
    pub k_exact: f64,
    pub k_kep: f64,
    pub e_exact: f64,
    pub e_kep: f64,
}

/// Scans the well depth at fixed `m`, `a`.
pub fn scan_depths(p: &DeltaParams, depths: &[f64]) -> Result<Vec<DepthScanRow>> {
    depths
        .iter()
        .map(|&depth| {
            let pd = DeltaParams::new(p.mass, depth, p.half_separation)?;
            let exact = exact_reference(&pd)?;
            let kep = kep_two_state(&pd);
            Ok(DepthScanRow {
                depth,
                k_exact: exact.wavenumber,
                k_kep: kep.wavenumber.unwrap_or(0.0),
                e_exact: exact.energy,
                e_kep: kep.energy,
            })
        })
        .collect()
}

/// Exact and synthesized two-state ground-state profiles on a grid, both
/// unit-normalized with positive peak.
pub fn wavefunction_overlay(p: &DeltaParams, xs: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
    let exact = exact_reference(p)?;
    let sol = solve(&assembly(p)?, 1e-10)?;
    let kep = crate::kep::synthesize(
        &sol,
        0,
        |_, &x| psi1(p, x),
        |_, &x| psi2(p, x),
        xs,
    )?;
    Ok(xs
        .iter()
        .zip(kep)
        .map(|(&x, k)| (x, exact.wavefunction(x), k))
        .collect())
}
