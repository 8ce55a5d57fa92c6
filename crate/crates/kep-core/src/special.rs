//! Orthogonal polynomials and hydrogen-like s radial functions.

use crate::error::{Error, Result};

/// Laguerre polynomial `L_n(x)` by the three-term recurrence.
pub fn laguerre(n: usize, x: f64) -> f64 {
    assoc_laguerre(n, 0.0, x)
}

/// Associated Laguerre polynomial `L_n^alpha(x)`.
pub fn assoc_laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0 + alpha - x) * p1 - (kf + alpha) * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Terminating confluent hypergeometric polynomial `M(-n, b, x)`.
///
/// Equals `n! Gamma(b) / Gamma(n + b) * L_n^{b-1}(x)`; the prefactor is the
/// reciprocal Pochhammer symbol `(b)_n`, accumulated as a product.
pub fn confluent_m_poly(n: usize, b: f64, x: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::InvalidParameter(format!("confluent b must be positive, got {b}")));
    }
    let mut prefactor = 1.0;
    for k in 0..n {
        prefactor *= (k as f64 + 1.0) / (b + k as f64);
    }
    Ok(prefactor * assoc_laguerre(n, b - 1.0, x))
}

/// Normalized hydrogen-like s radial function with length scale `a`.
///
/// `R_{1,0}(r) = 2 a^{-3/2} e^{-r/a}` and so on for higher shells; the radial
/// measure is `r^2 dr`, so `int R^2 r^2 dr = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOrbital {
    pub n: u32,
    pub a: f64,
}

impl RadialOrbital {
    pub fn new(n: u32, a: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("principal number must be >= 1".into()));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter(format!("length scale must be positive, got {a}")));
        }
        Ok(Self { n, a })
    }

    pub fn value(&self, r: f64) -> f64 {
        hydrogenic_r(self.n, self.a, r)
    }

    /// Bound-state energy of its generating Hamiltonian: `-1 / (2 a n^2)`.
    pub fn energy(&self) -> f64 {
        -1.0 / (2.0 * self.a * (self.n as f64).powi(2))
    }

    /// Exponential decay rate of the tail, `1 / (n a)`.
    pub fn decay_rate(&self) -> f64 {
        1.0 / (self.n as f64 * self.a)
    }
}

/// `R_{n,0}(r)` for a hydrogen-like problem with length scale `a`.
pub fn hydrogenic_r(n: u32, a: f64, r: f64) -> f64 {
    debug_assert!(n >= 1 && a > 0.0 && r >= 0.0);
    let nf = n as f64;
    let na = nf * a;
    let rho = r / na;
    // norm^2 = (2/(n a))^3 (n-1)! / (2n * n!)
    let mut ratio = 1.0; // (n-1)! / n! = 1/n
    ratio /= nf;
    let norm = ((2.0 / na).powi(3) * ratio / (2.0 * nf)).sqrt();
    norm * (-rho).exp() * assoc_laguerre((n - 1) as usize, 1.0, 2.0 * rho)
}
