//! Scalar minimization and root finding used by the model layers.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` on `[lo, hi]` to an `x`-tolerance.
///
/// A coarse pre-scan picks the best starting bracket first, so symmetric
/// double-well shaped objectives land in one basin deterministically.
pub fn golden_min(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    assert!(hi > lo && tol > 0.0);
    const PRESCAN: usize = 17;
    let step = (hi - lo) / (PRESCAN - 1) as f64;
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..PRESCAN {
        let v = f(lo + step * i as f64);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let mut a = lo + step * best_i.saturating_sub(1) as f64;
    let mut b = (lo + step * (best_i + 1) as f64).min(hi);

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (a + b);
    let fm = f(xm);
    if fm <= f1 && fm <= f2 {
        (xm, fm)
    } else if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Root of a monotone function on `[lo, hi]` by bisection with Newton
/// acceleration, to `|f| < tol_f`.
pub fn newton_bisect(
    mut f: impl FnMut(f64) -> f64,
    mut df: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol_f: f64,
) -> Result<f64> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::RootBracketFailure(format!(
            "no sign change on [{lo}, {hi}]: f = ({flo:.3e}, {fhi:.3e})"
        )));
    }
    let increasing = fhi > 0.0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx.abs() < tol_f {
            return Ok(x);
        }
        if (fx > 0.0) == increasing {
            hi = x;
        } else {
            lo = x;
        }
        let d = df(x);
        let newton = x - fx / d;
        x = if d != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, v) = golden_min(|x| (x - 1.3).powi(2) + 0.5, -2.0, 4.0, 1e-6);
        assert!((x - 1.3).abs() < 1e-5);
        assert!((v - 0.5).abs() < 1e-9);
    }

    #[test]
    fn golden_handles_symmetric_double_well() {
        // symmetric bimodal objective: must land in one of the two minima
        let (x, v) = golden_min(|x| (x * x - 1.0).powi(2), -2.0, 2.0, 1e-6);
        assert!((x.abs() - 1.0).abs() < 1e-4);
        assert!(v < 1e-8);
    }

    #[test]
    fn newton_bisect_solves_tanh_equation() {
        // gamma (1 + tanh gamma) = 0.4
        let beta = 0.4;
        let g = newton_bisect(
            |g| g * (1.0 + g.tanh()) - beta,
            |g| 1.0 + g.tanh() + g / g.cosh().powi(2),
            0.0,
            beta,
            1e-13,
        )
        .unwrap();
        assert!((g * (1.0 + g.tanh()) - beta).abs() < 1e-13);
        assert!((g - 0.308018).abs() < 1e-5);
    }

    #[test]
    fn newton_bisect_requires_bracket() {
        assert!(newton_bisect(|x| x * x + 1.0, |x| 2.0 * x, -1.0, 1.0, 1e-12).is_err());
    }
}
