//! Gauss quadrature rules and the two-center integration grid.
//!
//! Nodes are found by Newton iteration on the polynomial recurrences with
//! the usual asymptotic initial guesses. Laguerre and Hermite recurrences are
//! evaluated with the exponential factor folded in (`L_n e^{-x/2}`,
//! orthonormal Hermite times `e^{-x^2/2}`) so that large orders neither
//! overflow nor lose the tail weights.
//!
//! Semi-infinite integrals are handled by mapping a Laguerre grid with a
//! caller-supplied decay-rate hint; accuracy is enforced by an order-doubling
//! stability check (relative 1e-9 with an absolute floor of 1e-12).

use crate::error::{Error, Result};

pub const MAX_LEGENDRE_ORDER: usize = 512;
pub const MAX_LAGUERRE_ORDER: usize = 256;
pub const MAX_HERMITE_ORDER: usize = 512;

/// Relative tolerance of the order-doubling stability check.
pub const DOUBLING_REL_TOL: f64 = 1e-9;
/// Absolute floor of the order-doubling stability check.
pub const DOUBLING_ABS_FLOOR: f64 = 1e-12;

const NEWTON_MAX_ITER: usize = 100;
const NEWTON_TOL: f64 = 1e-15;

/// Integration domain a rule is attached to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// Finite interval `[a, b]`.
    Finite(f64, f64),
    /// `[0, inf)`.
    HalfLine,
    /// `(-inf, inf)`.
    RealLine,
}

/// A quadrature rule: `sum_i weights[i] * f(nodes[i])` approximates the
/// integral of `f` times the rule's weight function over its domain.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: Domain,
    pub order: usize,
}

impl QuadratureRule {
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Affine image of a `[-1, 1]` rule on `[a, b]`.
    pub fn mapped_to(&self, a: f64, b: f64) -> QuadratureRule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        QuadratureRule {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| w * half).collect(),
            domain: Domain::Finite(a, b),
            order: self.order,
        }
    }
}

/// Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    if order < 1 {
        return Err(Error::InvalidParameter("quadrature order must be >= 1".into()));
    }
    if order > MAX_LEGENDRE_ORDER {
        return Err(Error::OrderTooLarge { order, max: MAX_LEGENDRE_ORDER });
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, dp) = legendre_pair(n, z);
            pp = dp;
            let dz = p / dp;
            z -= dz;
            if dz.abs() <= NEWTON_TOL * (1.0 + z.abs()) {
                let (p, dp) = legendre_pair(n, z);
                pp = dp;
                z -= p / dp;
                break;
            }
        }
        if n % 2 == 1 && i == m - 1 {
            z = 0.0; // middle node of an odd rule is exactly zero
            let (_, dp) = legendre_pair(n, z);
            pp = dp;
        }
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        // store ascending, mirrored about zero
        nodes[i] = -z.abs();
        nodes[n - 1 - i] = z.abs();
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Ok(QuadratureRule { nodes, weights, domain: Domain::Finite(-1.0, 1.0), order })
}

/// Evaluates `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Internal: Laguerre nodes plus "flat" weights `w_i e^{x_i}` suitable for
/// integrating plain functions on the half line. Computed from the scaled
/// recurrence `L_n(x) e^{-x/2}` so nothing overflows.
fn laguerre_nodes_flat(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if order < 1 {
        return Err(Error::InvalidParameter("quadrature order must be >= 1".into()));
    }
    if order > MAX_LAGUERRE_ORDER {
        return Err(Error::OrderTooLarge { order, max: MAX_LAGUERRE_ORDER });
    }
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut flat = vec![0.0; n];
    let mut z = 0.0;
    for i in 0..n {
        // asymptotic initial guesses (Stroud/Secrest via Numerical Recipes)
        if i == 0 {
            z = 3.0 / (1.0 + 2.4 * nf);
        } else if i == 1 {
            z += 15.0 / (1.0 + 2.5 * nf);
        } else {
            let ai = (i - 1) as f64;
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2]);
        }
        for _ in 0..NEWTON_MAX_ITER {
            let (ln, ln1) = laguerre_scaled_pair(n, z);
            let dp = nf * (ln - ln1) / z;
            let dz = ln / dp;
            z -= dz;
            if dz.abs() <= NEWTON_TOL * (1.0 + z.abs()) {
                break;
            }
        }
        nodes[i] = z;
        // w e^{x} = x / ((n+1)^2 [L_{n+1}(x) e^{-x/2}]^2)
        let lnp1 = laguerre_scaled_value(n + 1, z);
        flat[i] = z / ((nf + 1.0) * (nf + 1.0) * lnp1 * lnp1);
    }
    Ok((nodes, flat))
}

/// `(L_n(x) e^{-x/2}, L_{n-1}(x) e^{-x/2})`.
fn laguerre_scaled_pair(n: usize, x: f64) -> (f64, f64) {
    let scale = (-0.5 * x).exp();
    let mut p0 = scale;
    let mut p1 = (1.0 - x) * scale;
    if n == 0 {
        return (p0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0 - x) * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn laguerre_scaled_value(n: usize, x: f64) -> f64 {
    laguerre_scaled_pair(n, x).0
}

/// Gauss-Laguerre rule: `sum w_i f(x_i)` approximates the integral of
/// `e^{-x} f(x)` over `[0, inf)`.
pub fn gauss_laguerre(order: usize) -> Result<QuadratureRule> {
    let (nodes, flat) = laguerre_nodes_flat(order)?;
    let weights = nodes.iter().zip(&flat).map(|(&x, &w)| w * (-x).exp()).collect();
    Ok(QuadratureRule { nodes, weights, domain: Domain::HalfLine, order })
}

/// Rule for plain integrals `int_0^inf g(t) dt` of functions decaying like
/// `e^{-s t}`: a Laguerre grid stretched by the decay-rate hint `s`.
pub fn half_line_decay(order: usize, s: f64) -> Result<QuadratureRule> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter(format!("decay hint must be positive, got {s}")));
    }
    let (nodes, flat) = laguerre_nodes_flat(order)?;
    Ok(QuadratureRule {
        nodes: nodes.iter().map(|&x| x / s).collect(),
        weights: flat.iter().map(|&w| w / s).collect(),
        domain: Domain::HalfLine,
        order,
    })
}

/// Internal: Hermite nodes plus flat weights `w_i e^{x_i^2}`, from the
/// orthonormal Hermite-function recurrence.
fn hermite_nodes_flat(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if order < 1 {
        return Err(Error::InvalidParameter("quadrature order must be >= 1".into()));
    }
    if order > MAX_HERMITE_ORDER {
        return Err(Error::OrderTooLarge { order, max: MAX_HERMITE_ORDER });
    }
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut flat = vec![0.0; n];
    let m = n.div_ceil(2);
    let mut z = 0.0;
    for i in 0..m {
        if i == 0 {
            z = (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0);
        } else if i == 1 {
            z -= 1.14 * nf.powf(0.426) / z;
        } else if i == 2 {
            z = 1.86 * z - 0.86 * nodes[n - 1];
        } else if i == 3 {
            z = 1.91 * z - 0.91 * nodes[n - 2];
        } else {
            z = 2.0 * z - nodes[n - i + 1];
        }
        for _ in 0..NEWTON_MAX_ITER {
            let (hn, hn1) = hermite_scaled_pair(n, z);
            let dp = (2.0 * nf).sqrt() * hn1 - z * hn;
            let dz = hn / dp;
            z -= dz;
            if dz.abs() <= NEWTON_TOL * (1.0 + z.abs()) {
                break;
            }
        }
        if n % 2 == 1 && i == m - 1 {
            z = 0.0;
        }
        let (_, hn1) = hermite_scaled_pair(n, z);
        let droot = (2.0 * nf).sqrt() * hn1; // scaled derivative at the root
        let w_flat = 2.0 / (droot * droot);
        nodes[n - 1 - i] = z;
        nodes[i] = -z;
        flat[n - 1 - i] = w_flat;
        flat[i] = w_flat;
    }
    Ok((nodes, flat))
}

/// `(h_n(x), h_{n-1}(x))` where `h_k` is the orthonormal Hermite polynomial
/// times `e^{-x^2/2}`.
fn hermite_scaled_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    if n == 0 {
        return (p0, 0.0);
    }
    let mut p1 = std::f64::consts::SQRT_2 * x * p0;
    for k in 1..n {
        let kf = k as f64;
        let p2 = x * (2.0 / (kf + 1.0)).sqrt() * p1 - (kf / (kf + 1.0)).sqrt() * p0;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// Gauss-Hermite rule: `sum w_i f(x_i)` approximates the integral of
/// `e^{-x^2} f(x)` over the real line.
pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    let (nodes, flat) = hermite_nodes_flat(order)?;
    let weights = nodes.iter().zip(&flat).map(|(&x, &w)| w * (-x * x).exp()).collect();
    Ok(QuadratureRule { nodes, weights, domain: Domain::RealLine, order })
}

/// Rule for plain integrals `int f(x) dx` of functions decaying like
/// `e^{-(scale (x - center))^2}`: a Hermite grid shifted and stretched.
pub fn real_line_gaussian(order: usize, center: f64, scale: f64) -> Result<QuadratureRule> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::InvalidParameter(format!("scale must be positive, got {scale}")));
    }
    let (nodes, flat) = hermite_nodes_flat(order)?;
    Ok(QuadratureRule {
        nodes: nodes.iter().map(|&x| center + x / scale).collect(),
        weights: flat.iter().map(|&w| w / scale).collect(),
        domain: Domain::RealLine,
        order,
    })
}

/// Integrates `g` over `[0, inf)` with the decay hint `s`, doubling the order
/// until two consecutive values agree to the stability tolerance.
pub fn converge_half_line(
    mut g: impl FnMut(f64) -> f64,
    s: f64,
    start_order: usize,
) -> Result<f64> {
    let mut order = start_order.max(4);
    let mut prev = half_line_decay(order, s)?.integrate(&mut g);
    loop {
        let next_order = order * 2;
        if next_order > MAX_LAGUERRE_ORDER {
            return Err(Error::NotConverged { change: f64::NAN });
        }
        let cur = half_line_decay(next_order, s)?.integrate(&mut g);
        let change = (cur - prev).abs();
        if change <= DOUBLING_ABS_FLOOR.max(DOUBLING_REL_TOL * cur.abs()) {
            return Ok(cur);
        }
        prev = cur;
        order = next_order;
    }
}

/// Tensor rule for two-center integrals in prolate-spheroidal coordinates:
/// `int_1^inf dxi int_{-1}^1 deta f(xi, eta)`.
///
/// The xi direction is a Laguerre grid mapped by `xi = 1 + t/s` with `s` the
/// decay-rate hint of the integrand; the eta direction is Gauss-Legendre,
/// split at zero so corner behaviour stays on panel boundaries.
#[derive(Debug, Clone)]
pub struct EllipticRule {
    xi_nodes: Vec<f64>,
    xi_weights: Vec<f64>,
    eta_nodes: Vec<f64>,
    eta_weights: Vec<f64>,
}

impl EllipticRule {
    pub fn new(s_hint: f64, order_xi: usize, order_eta: usize) -> Result<Self> {
        let xi = half_line_decay(order_xi, s_hint)?;
        let leg = gauss_legendre(order_eta)?;
        let lo = leg.mapped_to(-1.0, 0.0);
        let hi = leg.mapped_to(0.0, 1.0);
        let mut eta_nodes = lo.nodes;
        eta_nodes.extend(hi.nodes);
        let mut eta_weights = lo.weights;
        eta_weights.extend(hi.weights);
        Ok(Self {
            xi_nodes: xi.nodes.iter().map(|&t| 1.0 + t).collect(),
            xi_weights: xi.weights,
            eta_nodes,
            eta_weights,
        })
    }

    pub fn integrate(&self, mut f: impl FnMut(f64, f64) -> f64) -> f64 {
        let mut total = 0.0;
        for (&xi, &wx) in self.xi_nodes.iter().zip(&self.xi_weights) {
            let mut inner = 0.0;
            for (&eta, &we) in self.eta_nodes.iter().zip(&self.eta_weights) {
                inner += we * f(xi, eta);
            }
            total += wx * inner;
        }
        total
    }
}

/// Integrates `f(xi, eta)` over the prolate-spheroidal strip with an
/// order-doubling stability check, escalating both orders until two
/// consecutive refinements agree or the order caps are hit.
///
/// `s_hint` is the exponential decay rate of `f` in xi (for orbital products
/// this is `R (1/a_1 + 1/a_2) / 2` or the per-pair analogue).
pub fn integrate_elliptic(
    f: impl Fn(f64, f64) -> f64,
    s_hint: f64,
    order_xi: usize,
    order_eta: usize,
) -> Result<f64> {
    let (mut oxi, mut oeta) = (order_xi.max(4), order_eta.max(4));
    let mut prev = EllipticRule::new(s_hint, oxi, oeta)?.integrate(&f);
    loop {
        let (nxi, neta) = (oxi * 2, oeta * 2);
        if nxi > MAX_LAGUERRE_ORDER || neta > MAX_LEGENDRE_ORDER {
            return Err(Error::NotConverged { change: f64::NAN });
        }
        let cur = EllipticRule::new(s_hint, nxi, neta)?.integrate(&f);
        let change = (cur - prev).abs();
        if change <= DOUBLING_ABS_FLOOR.max(DOUBLING_REL_TOL * cur.abs()) {
            return Ok(cur);
        }
        prev = cur;
        oxi = nxi;
        oeta = neta;
    }
}
