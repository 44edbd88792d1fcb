//! Bracketed scalar root refinement.

use crate::error::{Error, Result};

/// Safeguarded Newton iteration on a sign-change bracket [lo, hi].
///
/// `f` returns the value and derivative. Newton steps that leave the current
/// bracket, or fail to halve it, are replaced by bisection. After 200
/// iterations without meeting `xtol` a convergence error names the bracket.
pub(crate) fn newton_bracketed<F>(f: F, lo: f64, hi: f64, xtol: f64, routine: &'static str) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (mut a, mut b) = (lo, hi);
    let (fa, _) = f(a)?;
    let (fb, _) = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Convergence { routine, lo, hi });
    }
    let sa = fa.signum();
    let mut x = 0.5 * (a + b);
    let mut last_width = b - a;
    for _ in 0..200 {
        let (fx, dfx) = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == sa {
            a = x;
        } else {
            b = x;
        }
        let width = b - a;
        let newton = x - fx / dfx;
        let step_ok = dfx != 0.0 && newton.is_finite() && newton > a && newton < b && width < 0.75 * last_width;
        let next = if step_ok { newton } else { 0.5 * (a + b) };
        last_width = width;
        let tol = xtol * (1.0 + x.abs());
        if (next - x).abs() <= tol || width <= tol {
            return Ok(next.clamp(a, b));
        }
        x = next;
    }
    Err(Error::Convergence { routine, lo, hi })
}

/// Derivative-free root of a continuous function with a sign change on
/// [lo, hi]: bisection interleaved with Illinois-modified regula falsi.
pub(crate) fn illinois<F>(f: F, lo: f64, hi: f64, xtol: f64, routine: &'static str) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Convergence { routine, lo, hi });
    }
    let mut side = 0i8;
    for it in 0..300 {
        if (b - a).abs() <= xtol * (1.0 + a.abs().max(b.abs())) {
            return Ok(0.5 * (a + b));
        }
        // every fourth step is a plain bisection so the bracket always shrinks
        let x = if it % 4 == 3 {
            0.5 * (a + b)
        } else {
            let r = (a * fb - b * fa) / (fb - fa);
            if r.is_finite() && r > a && r < b {
                r
            } else {
                0.5 * (a + b)
            }
        };
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
    }
    Err(Error::Convergence { routine, lo, hi })
}
