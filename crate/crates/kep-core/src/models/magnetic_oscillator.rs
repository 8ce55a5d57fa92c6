//! Charged oscillator in a uniform magnetic field, zero angular momentum.
//!
//! In the symmetric gauge the `m = 0` radial problem sees two competing
//! quadratic potentials: the diamagnetic term (an oscillator at the Larmor
//! frequency) and the trap itself. Splitting the kinetic energy in half gives
//! two solvable subsystems whose radial eigenfunctions are Laguerre-Gaussians
//! with length scales `b_1`, `b_2`; the exact problem is the same oscillator
//! at the combined frequency `sqrt(omega^2 + omega_L^2)`.
//!
//! All radial inner products use the planar measure `2 pi rho d rho`.

use crate::error::{Error, Result};
use crate::kep::{assemble, solve, CouplingIntegrals, KepAssembly, SubsystemBasis};
use crate::linalg::{Matrix, SymMatrix};
use crate::quad::gauss_laguerre;
use crate::special::{confluent_m_poly, laguerre};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagOscParams {
    /// Reduced mass of the charge.
    pub mass: f64,
    /// Trap frequency.
    pub omega: f64,
    /// Larmor frequency `H / (2 mu c)`; field strength and light speed never
    /// enter separately.
    pub omega_larmor: f64,
    /// Basis functions per subsystem.
    pub basis_size: usize,
}

impl MagOscParams {
    pub fn new(mass: f64, omega: f64, omega_larmor: f64, basis_size: usize) -> Result<Self> {
        if !(mass > 0.0) || !(omega > 0.0) || !(omega_larmor > 0.0) {
            return Err(Error::InvalidParameter(
                "mass and both frequencies must be positive".into(),
            ));
        }
        if basis_size == 0 {
            return Err(Error::InvalidParameter("basis size must be >= 1".into()));
        }
        Ok(Self { mass, omega, omega_larmor, basis_size })
    }

    /// The dimensionless benchmark configuration: `mu = 1`, `omega = sqrt 2`,
    /// `omega_L = 2` (combined frequency `sqrt 6`).
    pub fn benchmark(basis_size: usize) -> Self {
        Self {
            mass: 1.0,
            omega: std::f64::consts::SQRT_2,
            omega_larmor: 2.0,
            basis_size,
        }
    }
}

/// Doubled-mass subsystem frequencies and the three length scales.
#[derive(Debug, Clone, Copy)]
pub struct MagOscDerived {
    pub mass_star: f64,
    /// Subsystem-1 frequency `omega_L / sqrt 2`.
    pub omega_larmor_star: f64,
    /// Subsystem-2 frequency `omega / sqrt 2`.
    pub omega_star: f64,
    pub b1: f64,
    pub b2: f64,
    /// Exact combined frequency `sqrt(omega^2 + omega_L^2)`.
    pub omega_total: f64,
    /// Exact length scale `1 / sqrt(mu Omega)`.
    pub b_exact: f64,
}

pub fn derive(p: &MagOscParams) -> MagOscDerived {
    let mass_star = 2.0 * p.mass;
    let omega_larmor_star = p.omega_larmor / std::f64::consts::SQRT_2;
    let omega_star = p.omega / std::f64::consts::SQRT_2;
    let omega_total = (p.omega * p.omega + p.omega_larmor * p.omega_larmor).sqrt();
    MagOscDerived {
        mass_star,
        omega_larmor_star,
        omega_star,
        b1: 1.0 / (mass_star * omega_larmor_star).sqrt(),
        b2: 1.0 / (mass_star * omega_star).sqrt(),
        omega_total,
        b_exact: 1.0 / (p.mass * omega_total).sqrt(),
    }
}

/// Normalized `m = 0` oscillator radial function with length scale `b`:
/// `(1 / (b sqrt pi)) e^{-rho^2 / 2 b^2} L_n(rho^2 / b^2)`.
fn laguerre_gaussian(b: f64, n: usize, rho: f64) -> f64 {
    let u = rho * rho / (b * b);
    (-0.5 * u).exp() * laguerre(n, u) / (b * std::f64::consts::PI.sqrt())
}

/// Subsystem-1 basis function (diamagnetic share).
pub fn basis1_value(p: &MagOscParams, n: usize, rho: f64) -> f64 {
    laguerre_gaussian(derive(p).b1, n, rho)
}

/// Subsystem-2 basis function (trap share).
pub fn basis2_value(p: &MagOscParams, n: usize, rho: f64) -> f64 {
    laguerre_gaussian(derive(p).b2, n, rho)
}

pub fn subsystem_bases(p: &MagOscParams) -> (SubsystemBasis, SubsystemBasis) {
    let d = derive(p);
    let e1 = (0..p.basis_size)
        .map(|n| (2 * n + 1) as f64 * d.omega_larmor_star)
        .collect();
    let e2 = (0..p.basis_size)
        .map(|n| (2 * n + 1) as f64 * d.omega_star)
        .collect();
    (
        SubsystemBasis::new(2.0, e1).expect("valid params"),
        SubsystemBasis::new(2.0, e2).expect("valid params"),
    )
}

/// `<m| rho^2 |n>` in a Laguerre-Gaussian basis of scale `b`: tridiagonal,
/// from the recurrence `x L_n = (2n+1) L_n - (n+1) L_{n+1} - n L_{n-1}`.
pub fn radial_mean_square(b: f64, m: usize, n: usize) -> f64 {
    let b2 = b * b;
    let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
    match hi - lo {
        0 => (2 * n + 1) as f64 * b2,
        1 => -(hi as f64) * b2,
        _ => 0.0,
    }
}

/// Coupling integrals: the quadratic potential difference gives analytic
/// tridiagonal diagonal blocks; cross overlaps are Gauss-Laguerre exact in
/// the squared-radius variable.
pub fn coupling(p: &MagOscParams) -> Result<CouplingIntegrals> {
    let d = derive(p);
    let n = p.basis_size;
    // V2 - V1 = (mu / 2)(omega^2 - omega_L^2) rho^2
    let dv = 0.5 * p.mass * (p.omega * p.omega - p.omega_larmor * p.omega_larmor);
    let diag_block_1 = SymMatrix::from_fn(n, |i, j| dv * radial_mean_square(d.b1, i, j));
    let diag_block_2 = SymMatrix::from_fn(n, |i, j| -dv * radial_mean_square(d.b2, i, j));

    // <Psi_1m | Psi_2n> = (1 / (s b1 b2)) int e^{-u} L_m(c1 u) L_n(c2 u) du
    // after u = s rho^2 with s = (1/b1^2 + 1/b2^2) / 2; the integrand is a
    // polynomial of degree m + n, so the rule below is exact.
    let s = 0.5 * (1.0 / (d.b1 * d.b1) + 1.0 / (d.b2 * d.b2));
    let c1 = 1.0 / (s * d.b1 * d.b1);
    let c2 = 1.0 / (s * d.b2 * d.b2);
    let rule = gauss_laguerre((2 * n).max(16))?;
    let prefactor = 1.0 / (s * d.b1 * d.b2);
    let cross_overlap = Matrix::from_fn(n, n, |m, k| {
        prefactor * rule.integrate(|u| laguerre(m, c1 * u) * laguerre(k, c2 * u))
    });
    Ok(CouplingIntegrals { diag_block_1, diag_block_2, cross_overlap })
}

pub fn assembly(p: &MagOscParams) -> Result<KepAssembly> {
    let (s1, s2) = subsystem_bases(p);
    assemble(&s1, &s2, &coupling(p)?)
}

/// Exact spectrum `E = (2n + |m| + 1) sqrt(omega^2 + omega_L^2) + m omega_L`.
pub fn exact_energy(p: &MagOscParams, n: usize, m_quantum: i64) -> f64 {
    let d = derive(p);
    (2 * n as i64 + m_quantum.abs() + 1) as f64 * d.omega_total
        + m_quantum as f64 * p.omega_larmor
}

/// Exact normalized `m = 0` radial eigenfunction.
pub fn exact_radial(p: &MagOscParams, n: usize, rho: f64) -> f64 {
    laguerre_gaussian(derive(p).b_exact, n, rho)
}

/// Exact radial part for general `m` (reference output only): the confluent
/// polynomial form with its closed-form normalization.
pub fn exact_radial_m(p: &MagOscParams, n: usize, m_quantum: i64, rho: f64) -> Result<f64> {
    let d = derive(p);
    let b = d.b_exact;
    let ma = m_quantum.unsigned_abs() as usize;
    let u = rho * rho / (b * b);
    // N_c = (n + |m|)! / (pi b^2 (|m|!)^2 n!)
    let mut nc = 1.0 / (std::f64::consts::PI * b * b);
    for k in 1..=ma {
        nc *= (n + k) as f64 / ((k as f64) * (k as f64));
    }
    let m_poly = confluent_m_poly(n, (ma + 1) as f64, u)?;
    Ok(nc.sqrt() * (-0.5 * u).exp() * (rho / b).powi(ma as i32) * m_poly)
}

#[derive(Debug, Clone, Copy)]
pub struct SpectrumRow {
    pub n: usize,
    pub e_kep: f64,
    pub e_exact: f64,
    pub rel_error: f64,
}

/// Solves the pencil and pairs each retained level with the exact one.
pub fn kep_spectrum(p: &MagOscParams) -> Result<Vec<SpectrumRow>> {
    let sol = solve(&assembly(p)?, 1e-10)?;
    Ok(sol
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(n, &e_kep)| {
            let e_exact = exact_energy(p, n, 0);
            SpectrumRow { n, e_kep, e_exact, rel_error: (e_kep - e_exact).abs() / e_exact.abs() }
        })
        .collect())
}

/// Synthesized radial profiles of states `0..=n_max` on `grid`.
pub fn wavefunctions(p: &MagOscParams, n_max: usize, grid: &[f64]) -> Result<Vec<Vec<f64>>> {
    let sol = solve(&assembly(p)?, 1e-10)?;
    (0..=n_max)
        .map(|state| {
            crate::kep::synthesize(
                &sol,
                state,
                |n, &rho| basis1_value(p, n, rho),
                |k, &rho| basis2_value(p, k, rho),
                grid,
            )
        })
        .collect()
}
