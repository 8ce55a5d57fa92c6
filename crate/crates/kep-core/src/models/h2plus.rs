//! Hydrogen molecular ion with clamped nuclei, in atomic units.
//!
//! The electron sees two Coulomb wells a bond length `R` apart. The kinetic
//! energy is split with a tunable ratio: subsystem 1 gets effective mass
//! `alpha`, subsystem 2 gets `alpha / (alpha - 1)`, so each subsystem is a
//! hydrogen-like atom with length scale `a_1 = 1/alpha`, `a_2 = 1 - 1/alpha`
//! and s-shell energies `-1 / (2 a_i n^2)`. With `alpha` free, its value at
//! each `R` is chosen variationally.
//!
//! All two-center integrals go through prolate-spheroidal coordinates
//! `xi = (r1 + r2)/R`, `eta = (r1 - r2)/R`; the volume element
//! `(R^3/8)(xi^2 - eta^2)` cancels every Coulomb singularity, leaving smooth
//! exponentially decaying integrands.

use crate::error::{Error, Result};
use crate::kep::{assemble, solve, CouplingIntegrals, KepAssembly, KepSolution, SubsystemBasis};
use crate::linalg::{gen_eigen, Matrix, SymMatrix};
use crate::opt::golden_min;
use crate::quad::integrate_elliptic;
use crate::special::RadialOrbital;
use rayon::prelude::*;

/// Mass-split strategy: a fixed ratio or a variational search per bond
/// length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Fixed(f64),
    Auto,
}

/// The variational `alpha` search runs over `t = 1/alpha` in
/// `[T_MIN, 1 - T_MIN]`.
pub const T_MIN: f64 = 0.02;
/// Search tolerance in `t`.
pub const T_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct H2Params {
    /// Internuclear distance in bohr.
    pub r: f64,
    pub alpha: Alpha,
    /// Principal numbers of the s shells carried by each center.
    pub shells: Vec<u32>,
    pub xi_order: usize,
    pub eta_order: usize,
}

impl H2Params {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!("bond length must be positive, got {r}")));
        }
        Ok(Self { r, alpha: Alpha::Auto, shells: vec![1, 2], xi_order: 64, eta_order: 64 })
    }

    pub fn with_alpha(mut self, alpha: Alpha) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_shells(mut self, shells: Vec<u32>) -> Self {
        self.shells = shells;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.shells.is_empty() || self.shells.iter().any(|&n| n == 0) {
            return Err(Error::InvalidParameter("shell list must be nonempty, n >= 1".into()));
        }
        if let Alpha::Fixed(a) = self.alpha {
            if !(a > 1.0) || !a.is_finite() {
                return Err(Error::InvalidParameter(format!("alpha must exceed 1, got {a}")));
            }
        }
        Ok(())
    }
}

/// Orbitals carried by the two centers for a concrete `alpha`.
struct CenterBases {
    orb1: Vec<RadialOrbital>,
    orb2: Vec<RadialOrbital>,
    kappa1: f64,
    kappa2: f64,
}

fn center_bases(p: &H2Params, alpha: f64) -> Result<CenterBases> {
    p.validate()?;
    if !(alpha > 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must exceed 1, got {alpha}")));
    }
    let a1 = 1.0 / alpha;
    let a2 = 1.0 - 1.0 / alpha;
    let orb1 = p.shells.iter().map(|&n| RadialOrbital::new(n, a1)).collect::<Result<_>>()?;
    let orb2 = p.shells.iter().map(|&n| RadialOrbital::new(n, a2)).collect::<Result<_>>()?;
    Ok(CenterBases { orb1, orb2, kappa1: alpha, kappa2: alpha / (alpha - 1.0) })
}

/// Subsystem bases for a concrete `alpha`: scales `1/alpha` and
/// `1 - 1/alpha`, energies `-1/(2 a_i n^2)`.
pub fn subsystem_bases(p: &H2Params, alpha: f64) -> Result<(SubsystemBasis, SubsystemBasis)> {
    let cb = center_bases(p, alpha)?;
    Ok((
        SubsystemBasis::new(cb.kappa1, cb.orb1.iter().map(|o| o.energy()).collect())?,
        SubsystemBasis::new(cb.kappa2, cb.orb2.iter().map(|o| o.energy()).collect())?,
    ))
}

const INV_SQRT_4PI: f64 = 0.28209479177387814; // 1 / sqrt(4 pi)

/// Value of basis function `idx` of center 1 at distance `r1` from its
/// nucleus (s orbital: radial part over `sqrt(4 pi)`).
pub fn basis1_value(p: &H2Params, alpha: f64, idx: usize, r1: f64) -> f64 {
    let a1 = 1.0 / alpha;
    INV_SQRT_4PI * crate::special::hydrogenic_r(p.shells[idx], a1, r1)
}

pub fn basis2_value(p: &H2Params, alpha: f64, idx: usize, r2: f64) -> f64 {
    let a2 = 1.0 - 1.0 / alpha;
    INV_SQRT_4PI * crate::special::hydrogenic_r(p.shells[idx], a2, r2)
}

/// Two-center Coulomb and overlap integrals for a concrete `alpha`.
///
/// Diagonal blocks carry `<psi_im | (V_other - (kappa_i - 1) V_own) | psi_in>`
/// and the cross block the plain overlaps, all by mapped-Laguerre x Legendre
/// quadrature with the order-doubling stability check.
pub fn coulomb_integrals(p: &H2Params, alpha: f64) -> Result<CouplingIntegrals> {
    let cb = center_bases(p, alpha)?;
    let r = p.r;
    let ns = p.shells.len();

    // own-center blocks: the bracket [(kappa_i - 1)(xi -/+ eta) - (xi +/- eta)]
    // is what survives of (xi^2 - eta^2)(V_other - (kappa_i - 1) V_own)
    let diag = |orbs: &[RadialOrbital], kappa: f64, own_plus_eta: bool| -> Result<SymMatrix> {
        let mut m = SymMatrix::zeros(ns);
        for i in 0..ns {
            for j in i..ns {
                let (oi, oj) = (orbs[i], orbs[j]);
                let s_hint = 0.5 * r * (oi.decay_rate() + oj.decay_rate());
                let v = integrate_elliptic(
                    |xi, eta| {
                        let r_own = if own_plus_eta { 0.5 * r * (xi + eta) } else { 0.5 * r * (xi - eta) };
                        let (own, other) =
                            if own_plus_eta { (xi - eta, xi + eta) } else { (xi + eta, xi - eta) };
                        r * r / 8.0
                            * oi.value(r_own)
                            * oj.value(r_own)
                            * ((kappa - 1.0) * own - other)
                    },
                    s_hint,
                    p.xi_order,
                    p.eta_order,
                )?;
                m.set(i, j, v);
            }
        }
        Ok(m)
    };
    let diag_block_1 = diag(&cb.orb1, cb.kappa1, true)?;
    let diag_block_2 = diag(&cb.orb2, cb.kappa2, false)?;

    let mut cross_overlap = Matrix::zeros(ns, ns);
    for m in 0..ns {
        for k in 0..ns {
            let (o1, o2) = (cb.orb1[m], cb.orb2[k]);
            let s_hint = 0.5 * r * (o1.decay_rate() + o2.decay_rate());
            let v = integrate_elliptic(
                |xi, eta| {
                    let r1 = 0.5 * r * (xi + eta);
                    let r2 = 0.5 * r * (xi - eta);
                    r.powi(3) / 16.0 * (xi * xi - eta * eta) * o1.value(r1) * o2.value(r2)
                },
                s_hint,
                p.xi_order,
                p.eta_order,
            )?;
            cross_overlap.set(m, k, v);
        }
    }
    Ok(CouplingIntegrals { diag_block_1, diag_block_2, cross_overlap })
}

pub fn assembly(p: &H2Params, alpha: f64) -> Result<KepAssembly> {
    let (s1, s2) = subsystem_bases(p, alpha)?;
    assemble(&s1, &s2, &coulomb_integrals(p, alpha)?)
}

/// Lowest electronic eigenvalue (no nuclear repulsion) at a concrete `alpha`.
pub fn electronic_ground(p: &H2Params, alpha: f64) -> Result<(f64, KepSolution)> {
    let sol = solve(&assembly(p, alpha)?, 1e-10)?;
    Ok((sol.eigenvalues[0], sol))
}

/// Variational choice of the mass split: minimizes the electronic ground
/// energy over `t = 1/alpha` on the compact search interval.
pub fn optimize_alpha(p: &H2Params) -> Result<f64> {
    p.validate()?;
    let objective = |t: f64| {
        electronic_ground(p, 1.0 / t)
            .map(|(e, _)| e)
            .unwrap_or(f64::INFINITY)
    };
    let (t_best, _) = golden_min(objective, T_MIN, 1.0 - T_MIN, T_TOL);
    Ok(1.0 / t_best)
}

/// Resolves the configured `alpha` (running the search when `Auto`).
pub fn resolve_alpha(p: &H2Params) -> Result<f64> {
    p.validate()?;
    match p.alpha {
        Alpha::Fixed(a) => Ok(a),
        Alpha::Auto => optimize_alpha(p),
    }
}

/// One point of the potential curve.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub r: f64,
    pub alpha_used: f64,
    pub e_electronic: f64,
    pub e_total: f64,
}

pub fn curve_point(p: &H2Params) -> Result<CurvePoint> {
    let alpha = resolve_alpha(p)?;
    let (e_electronic, _) = electronic_ground(p, alpha)?;
    Ok(CurvePoint { r: p.r, alpha_used: alpha, e_electronic, e_total: e_electronic + 1.0 / p.r })
}

/// Curve over a list of bond lengths; points are independent and evaluated
/// in parallel, output stays in input order.
pub fn potential_curve(base: &H2Params, rs: &[f64]) -> Result<Vec<CurvePoint>> {
    rs.par_iter()
        .map(|&r| {
            let mut p = base.clone();
            p.r = r;
            if !(r > 0.0) {
                return Err(Error::InvalidParameter(format!("bond length must be positive, got {r}")));
            }
            curve_point(&p)
        })
        .collect()
}

/// Equilibrium bond length and energy by golden-section on the total energy
/// over `[1, 4]` bohr, to 1e-3 in `R`.
pub fn equilibrium(base: &H2Params) -> Result<(f64, f64)> {
    base.validate()?;
    let objective = |r: f64| {
        let mut p = base.clone();
        p.r = r;
        curve_point(&p).map(|c| c.e_total).unwrap_or(f64::INFINITY)
    };
    let (r_e, e_e) = golden_min(objective, 1.0, 4.0, 1e-3);
    Ok((r_e, e_e))
}

/// Conventional molecular-orbital baseline: one hydrogen 1s per center with
/// full single-mass kinetic energy.
#[derive(Debug, Clone, Copy)]
pub struct LcaoResult {
    pub e_electronic: f64,
    pub e_total: f64,
    pub coefficients: [f64; 2],
}

/// Solves the textbook 2x2 pencil at bond length `r`. The eigenfunction
/// identity `(p^2/2 - 1/r_1) phi_1 = -phi_1/2` reduces every element to the
/// overlap `S`, the Coulomb attraction to the far nucleus `J`, and the
/// resonance attraction `K`.
pub fn lcao_baseline(r: f64, xi_order: usize, eta_order: usize) -> Result<LcaoResult> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("bond length must be positive, got {r}")));
    }
    let orb = RadialOrbital::new(1, 1.0)?;
    let val = |d: f64| INV_SQRT_4PI * orb.value(d);
    let s_hint = r; // both orbitals decay as e^{-r}
    let measure = r.powi(3) / 16.0;

    let overlap = integrate_elliptic(
        |xi, eta| {
            let (r1, r2) = (0.5 * r * (xi + eta), 0.5 * r * (xi - eta));
            4.0 * std::f64::consts::PI * measure * (xi * xi - eta * eta) * val(r1) * val(r2)
        },
        s_hint,
        xi_order,
        eta_order,
    )?;
    // J = <1s_a| -1/r_2 |1s_a>;  (xi^2-eta^2)/r_2 = (2/R)(xi + eta)
    let j_attr = integrate_elliptic(
        |xi, eta| {
            let r1 = 0.5 * r * (xi + eta);
            let v = val(r1);
            -4.0 * std::f64::consts::PI * measure * (2.0 / r) * (xi + eta) * v * v
        },
        s_hint,
        xi_order,
        eta_order,
    )?;
    // K = <1s_a| -1/r_1 |1s_b>;  (xi^2-eta^2)/r_1 = (2/R)(xi - eta)
    let k_attr = integrate_elliptic(
        |xi, eta| {
            let (r1, r2) = (0.5 * r * (xi + eta), 0.5 * r * (xi - eta));
            -4.0 * std::f64::consts::PI * measure * (2.0 / r) * (xi - eta) * val(r1) * val(r2)
        },
        s_hint,
        xi_order,
        eta_order,
    )?;

    let h11 = -0.5 + j_attr;
    let h12 = -0.5 * overlap + k_attr;
    let h = SymMatrix::from_rows(&[vec![h11, h12], vec![h12, h11]]).expect("2x2");
    let s = SymMatrix::from_rows(&[vec![1.0, overlap], vec![overlap, 1.0]]).expect("2x2");
    let g = gen_eigen(&h, &s, 1e-10)?;
    let e_electronic = g.eigenvalues[0];
    Ok(LcaoResult {
        e_electronic,
        e_total: e_electronic + 1.0 / r,
        coefficients: [g.coefficients[0][0], g.coefficients[0][1]],
    })
}

/// Equilibrium of the baseline curve on the same bracket as the split-mass
/// search.
pub fn lcao_equilibrium(xi_order: usize, eta_order: usize) -> Result<(f64, f64)> {
    let objective = |r: f64| {
        lcao_baseline(r, xi_order, eta_order)
            .map(|l| l.e_total)
            .unwrap_or(f64::INFINITY)
    };
    let (r_e, e_e) = golden_min(objective, 1.0, 4.0, 1e-3);
    Ok((r_e, e_e))
}

/// Ground-state profile along the internuclear axis (`y = z = 0`), with the
/// nuclei at `x = -R/2` and `x = +R/2`.
pub fn wavefunction_slice(p: &H2Params, xs: &[f64]) -> Result<Vec<f64>> {
    let alpha = resolve_alpha(p)?;
    let (_, sol) = electronic_ground(p, alpha)?;
    let half = 0.5 * p.r;
    crate::kep::synthesize(
        &sol,
        0,
        |n, &x: &f64| basis1_value(p, alpha, n, (x + half).abs()),
        |k, &x: &f64| basis2_value(p, alpha, k, (x - half).abs()),
        xs,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed-form 1s-1s two-center quantities for equal scales `a`.
    mod closed {
        /// Overlap: `e^{-s}(1 + s + s^2/3)`, `s = R/a`.
        pub fn overlap(r: f64, a: f64) -> f64 {
            let s = r / a;
            (-s).exp() * (1.0 + s + s * s / 3.0)
        }
        /// `<1s_a | 1/r_b | 1s_a> = (1/R)(1 - e^{-2R/a}(1 + R/a))`.
        pub fn far_coulomb(r: f64, a: f64) -> f64 {
            (1.0 - (-2.0 * r / a).exp() * (1.0 + r / a)) / r
        }
        /// `<1s_a | 1/r_a | 1s_b> = (1/a) e^{-R/a} (1 + R/a)`.
        pub fn resonance(r: f64, a: f64) -> f64 {
            (-r / a).exp() * (1.0 + r / a) / a
        }
    }

    #[test]
    fn mass_split_scales_and_energies() {
        let p = H2Params::new(2.0).unwrap();
        let (s1, s2) = subsystem_bases(&p, 2.0).unwrap();
        assert_eq!(s1.kappa, 2.0);
        assert_eq!(s2.kappa, 2.0);
        // alpha = 2: both scales 1/2, ground shells at -1
        assert!((s1.energies[0] + 1.0).abs() < 1e-15);
        assert!((s2.energies[0] + 1.0).abs() < 1e-15);
        assert!((s1.energies[1] + 0.25).abs() < 1e-15);

        // alpha -> 1+: center 1 approaches a free hydrogen atom
        let (s1, _s2) = subsystem_bases(&p, 1.0001).unwrap();
        assert!((s1.energies[0] + 0.50005).abs() < 1e-10);

        let single = p.clone().with_shells(vec![1]);
        let (s1, s2) = subsystem_bases(&single, 2.0).unwrap();
        assert_eq!(s1.size(), 1);
        assert_eq!(s2.size(), 1);
    }

    #[test]
    fn overlap_matches_closed_form() {
        let p = H2Params::new(2.0).unwrap().with_shells(vec![1]);
        let ints = coulomb_integrals(&p, 2.0).unwrap();
        let expect = closed::overlap(2.0, 0.5);
        assert!(
            (ints.cross_overlap.get(0, 0) - expect).abs() < 1e-9,
            "{} vs {expect}",
            ints.cross_overlap.get(0, 0)
        );
    }

    #[test]
    fn coulomb_blocks_match_closed_forms() {
        // alpha = 2, 1s shells: diag = <-1/r_other> + <1/r_own>
        let r = 2.0;
        let a = 0.5;
        let p = H2Params::new(r).unwrap().with_shells(vec![1]);
        let ints = coulomb_integrals(&p, 2.0).unwrap();
        let expect = -closed::far_coulomb(r, a) + 1.0 / a;
        assert!((ints.diag_block_1.get(0, 0) - expect).abs() < 1e-9);
        // homonuclear at alpha = 2: the second block mirrors the first
        assert!((ints.diag_block_2.get(0, 0) - expect).abs() < 1e-9);
        let _ = closed::resonance(r, a); // exercised in the pencil test below
    }

    #[test]
    fn separated_atoms_decouple() {
        let p = H2Params::new(30.0).unwrap().with_shells(vec![1]);
        let ints = coulomb_integrals(&p, 2.0).unwrap();
        assert!(ints.cross_overlap.get(0, 0).abs() < 1e-9);
        // <-1/r_2 + 1/r_1> -> 1/a - 1/R
        let expect = 2.0 - 1.0 / 30.0;
        assert!((ints.diag_block_1.get(0, 0) - expect).abs() < 1e-6);
    }

    #[test]
    fn united_atom_overlap_limit() {
        let p = H2Params::new(1e-3).unwrap().with_shells(vec![1]);
        let ints = coulomb_integrals(&p, 2.0).unwrap();
        assert!((ints.cross_overlap.get(0, 0) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn single_shell_pencil_agrees_with_closed_form_matrix() {
        // alpha = 2, 1s-only: every element has a closed form, so the lowest
        // root does too
        let r = 2.0;
        let a = 0.5;
        let s = closed::overlap(r, a);
        let h11 = -2.0 + (1.0 / a - closed::far_coulomb(r, a));
        let h12 = -2.0 * s;
        let exact_root = (h11 + h12) / (1.0 + s); // symmetric 2x2 pencil
        let p = H2Params::new(r).unwrap().with_shells(vec![1]);
        let (e, sol) = electronic_ground(&p, 2.0).unwrap();
        assert!((e - exact_root).abs() < 1e-9, "{e} vs {exact_root}");
        assert_eq!(sol.retained_dim, 2);
        // variational position above the exact electronic ground at R = 2
        assert!(e >= -1.1026 - 1e-9);
        assert!(e + 1.0 / r > -0.6026);
    }

    #[test]
    fn two_shells_improve_on_one() {
        let p1 = H2Params::new(2.0).unwrap().with_shells(vec![1]);
        let p12 = H2Params::new(2.0).unwrap();
        let (e1, _) = electronic_ground(&p1, 2.0).unwrap();
        let (e12, _) = electronic_ground(&p12, 2.0).unwrap();
        assert!(e12 <= e1 + 1e-10, "nested bases: {e12} vs {e1}");
        assert!(e12 >= -1.1026 - 1e-9);
    }

    #[test]
    fn overlap_positive_definite_at_moderate_separations() {
        for r in [0.5, 1.0, 2.0, 5.0] {
            let p = H2Params::new(r).unwrap();
            let asm = assembly(&p, 2.0).unwrap();
            assert!(
                crate::linalg::cholesky(&asm.s).is_ok(),
                "overlap not positive definite at R = {r}"
            );
        }
    }

    #[test]
    fn optimized_alpha_is_first_order_stationary() {
        let p = H2Params::new(2.0).unwrap();
        let alpha = optimize_alpha(&p).unwrap();
        let (e0, _) = electronic_ground(&p, alpha).unwrap();
        for da in [-1e-3, 1e-3] {
            let (e, _) = electronic_ground(&p, alpha + da).unwrap();
            assert!(e > e0 - 1e-6, "perturbing alpha by {da} lowered E: {e} vs {e0}");
        }
    }

    #[test]
    fn lcao_reference_point() {
        let l = lcao_baseline(2.5, 64, 64).unwrap();
        assert!((l.e_total + 0.5648).abs() < 5e-4, "E_total {}", l.e_total);
        // homonuclear parity: ground coefficients equal
        assert!((l.coefficients[0] - l.coefficients[1]).abs() < 1e-10);
        // R -> infinity: a lone hydrogen atom
        let far = lcao_baseline(25.0, 48, 48).unwrap();
        assert!((far.e_total + 0.5).abs() < 2e-3, "E_total {}", far.e_total);
    }

    #[test]
    fn lcao_equilibrium_matches_reference() {
        let (r_e, e_e) = lcao_equilibrium(48, 48).unwrap();
        assert!((r_e - 2.5).abs() < 0.1, "R_e {r_e}");
        assert!((e_e + 0.5648).abs() < 1e-3, "E_e {e_e}");
    }

    #[test]
    fn curve_is_smooth_near_equilibrium() {
        let p = H2Params::new(2.0).unwrap().with_alpha(Alpha::Fixed(2.0));
        let rs: Vec<f64> = (0..7).map(|i| 1.7 + 0.1 * i as f64).collect();
        let pts = potential_curve(&p, &rs).unwrap();
        assert_eq!(pts.len(), rs.len());
        for w in pts.windows(2) {
            assert!((w[1].e_total - w[0].e_total).abs() < 0.05, "jump at R = {}", w[1].r);
        }
    }

    #[test]
    fn slice_has_cusps_at_both_nuclei() {
        let p = H2Params::new(2.0).unwrap();
        let h = 1e-4;
        for x0 in [-1.0, 1.0] {
            let xs = [x0 - h, x0, x0 + h];
            let v = wavefunction_slice(&p, &xs).unwrap();
            let left = (v[1] - v[0]) / h;
            let right = (v[2] - v[1]) / h;
            let denom = left.abs().max(right.abs());
            assert!(
                (left - right).abs() / denom > 0.1,
                "no cusp at {x0}: slopes {left} vs {right}"
            );
        }
        // positive at the midpoint, near-symmetric profile, finite values
        let xs: Vec<f64> = (0..81).map(|i| -4.0 + 0.1 * i as f64).collect();
        let v = wavefunction_slice(&p, &xs).unwrap();
        assert!(v.iter().all(|y| y.is_finite()));
        let mid = v[40];
        assert!(mid > 0.0);
        let peak = v.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
        for i in 0..40 {
            assert!(
                (v[i] - v[80 - i]).abs() <= 0.02 * peak,
                "asymmetry at x = {}",
                xs[i]
            );
        }
    }
}
