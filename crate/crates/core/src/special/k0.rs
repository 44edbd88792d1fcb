//! Modified Bessel function K_0 and the integrand of Watson's zero-velocity
//! integral.

use std::f64::consts::PI;

use super::{EvalResult, Method};
use crate::error::{domain, Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;
const EPS: f64 = f64::EPSILON;

/// K_0(x) for x > 0.
///
/// For x <= 2 the logarithmic series
/// K_0 = -(ln(x/2) + γ) I_0 + Σ_{k>=1} (x²/4)^k H_k / (k!)² is summed; beyond
/// that the Steed continued fraction for K_ν at ν = 0 is used.
pub fn modified_k0(x: f64) -> Result<EvalResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("K0 requires finite x > 0, got {x}")));
    }
    if x <= 2.0 {
        let t = 0.25 * x * x;
        let mut term = 1.0;
        let mut i0 = 1.0;
        let mut harmonic = 0.0;
        let mut tail = 0.0;
        for k in 1..200 {
            let kf = k as f64;
            term *= t / (kf * kf);
            harmonic += 1.0 / kf;
            i0 += term;
            tail += term * harmonic;
            if term < 1e-18 * i0 {
                break;
            }
        }
        let lead = -((0.5 * x).ln() + EULER_GAMMA);
        let value = lead * i0 + tail;
        let scale = lead.abs() * i0 + tail;
        return Ok(EvalResult { value, abs_error_estimate: 16.0 * EPS * scale, method: Method::Series });
    }
    // CF2 (Temme / Steed) for K_μ with μ = 0
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence { routine: "K0 continued fraction", lo: x, hi: x });
    }
    let value = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    Ok(EvalResult { value, abs_error_estimate: 32.0 * EPS * value, method: Method::BackwardRecurrence })
}

/// Integrand of dc/dν = 2c ∫_0^∞ K_0(2c sinh t) e^{-2νt} dt after the
/// substitution u = sinh t:
/// K_0(2cu) (u + sqrt(1+u²))^{-2ν} / sqrt(1+u²).
pub fn watson_integrand(c: f64, nu: f64, u: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(domain(format!("Watson integrand needs a positive zero, got {c}")));
    }
    if !(u > 0.0) {
        return Err(domain("Watson integrand is evaluated for u > 0 only"));
    }
    let r = (1.0 + u * u).sqrt();
    // e^{-2ν asinh u}
    let weight = (-2.0 * nu * u.asinh()).exp();
    Ok(modified_k0(2.0 * c * u)?.value * weight / r)
}
