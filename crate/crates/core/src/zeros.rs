//! Positive zeros of J_ν, Y_ν, C_ν^α and J'_ν, McMahon's expansion for
//! large indices, and the order derivative dj_{ν,k}/dν.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lommel::{lommel_roots, LommelKind};
use crate::quadrature::integrate;
use crate::solve::newton_bracketed;
use crate::special::{watson_integrand, FunctionId};

/// Default residual tolerance: |f(z)| <= ZERO_TOL · max(1, |f'(z)|).
pub const ZERO_TOL: f64 = 1e-12;

/// Scan step used to bracket sign changes.
pub const SCAN_STEP: f64 = 0.5;

/// Ascending positive zeros of one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroList {
    pub fid: FunctionId,
    pub zeros: Vec<f64>,
    /// |f(z)| / max(1, |f'(z)|) at each zero.
    pub residuals: Vec<f64>,
    pub method: String,
    pub tolerance: f64,
}

impl ZeroList {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

fn check_fid(fid: &FunctionId) -> Result<()> {
    let nu = fid.order();
    if !nu.is_finite() || nu.abs() > 60.0 + 1e-9 {
        return Err(domain(format!("zeros are supported for |nu| <= 60, got {nu}")));
    }
    match *fid {
        FunctionId::BesselJ { order } if !(order > -1.0) => {
            Err(domain(format!("zeros of J_nu need nu > -1, got {order}")))
        }
        FunctionId::BesselJPrime { order } if !(order >= 0.0) => {
            Err(domain(format!("zeros of J'_nu need nu >= 0, got {order}")))
        }
        FunctionId::Cylinder { alpha, .. } if !(0.0..PI).contains(&alpha) => {
            Err(domain(format!("cylinder angle must lie in [0, pi), got {alpha}")))
        }
        _ => Ok(()),
    }
}

fn scan_start(fid: &FunctionId) -> f64 {
    match *fid {
        FunctionId::BesselJ { order } | FunctionId::BesselJPrime { order } => order.max(1e-3),
        FunctionId::Cylinder { order, alpha: 0.0 } => order.max(1e-3),
        _ => 1e-3,
    }
}

/// The first `count` positive zeros of `fid` with the default tolerance.
pub fn zeros(fid: FunctionId, count: usize) -> Result<ZeroList> {
    zeros_with_tol(fid, count, ZERO_TOL)
}

/// The first `count` positive zeros of `fid`.
///
/// Sign changes are bracketed on a grid of step [`SCAN_STEP`] and each
/// bracket is refined by safeguarded Newton iteration with analytic
/// derivatives. A zero whose residual exceeds `tol · max(1, |f'|)` is a
/// convergence error naming its bracket. Lommel kinds return at most
/// ⌊degree/2⌋ roots.
pub fn zeros_with_tol(fid: FunctionId, count: usize, tol: f64) -> Result<ZeroList> {
    if !(tol > 0.0) {
        return Err(domain("zero tolerance must be positive"));
    }
    match fid {
        FunctionId::Lommel { order, degree } => {
            let mut l = lommel_roots(degree, order - 1.0, LommelKind::Plain)?;
            l.zeros.truncate(count);
            l.residuals.truncate(count);
            return Ok(l);
        }
        FunctionId::AssocLommel { order, degree } => {
            let mut l = lommel_roots(degree, order, LommelKind::Associated)?;
            l.zeros.truncate(count);
            l.residuals.truncate(count);
            return Ok(l);
        }
        _ => {}
    }
    check_fid(&fid)?;
    let mut out = ZeroList {
        fid,
        zeros: Vec::with_capacity(count),
        residuals: Vec::with_capacity(count),
        method: "scan + bracketed Newton".to_string(),
        tolerance: tol,
    };
    if count == 0 {
        return Ok(out);
    }
    let f = |x: f64| fid.eval_with_derivative(x);

    let mut a = scan_start(&fid);
    let mut fa = loop {
        match fid.eval(a) {
            Ok(v) => break v,
            Err(Error::Overflow { .. }) if a < 1e3 => a *= 2.0,
            Err(e) => return Err(e),
        }
    };
    let mut steps = 0usize;
    while out.zeros.len() < count {
        let b = a + SCAN_STEP;
        let fb = fid.eval(b)?;
        if fa == 0.0 {
            push_zero(&mut out, &f, a, tol)?;
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            let z = newton_bracketed(f, a, b, 1e-16, "zeros")?;
            push_zero(&mut out, &f, z, tol)?;
        }
        a = b;
        fa = fb;
        steps += 1;
        if steps > 100_000 {
            return Err(Error::Convergence { routine: "zeros", lo: scan_start(&fid), hi: a });
        }
    }
    Ok(out)
}

/// All positive zeros of `fid` that are <= `bound` (Bessel kinds only).
pub fn zeros_below(fid: FunctionId, bound: f64) -> Result<ZeroList> {
    let mut n = 8usize;
    loop {
        let mut z = zeros(fid, n)?;
        if z.zeros.last().is_some_and(|&v| v > bound) {
            let keep = z.zeros.iter().take_while(|&&v| v <= bound).count();
            z.zeros.truncate(keep);
            z.residuals.truncate(keep);
            return Ok(z);
        }
        if n > 100_000 {
            return Err(Error::Convergence { routine: "zeros_below", lo: 0.0, hi: bound });
        }
        n *= 2;
    }
}

fn push_zero<F>(out: &mut ZeroList, f: &F, z: f64, tol: f64) -> Result<()>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (v, d) = f(z)?;
    let r = v.abs() / d.abs().max(1.0);
    if r > tol {
        return Err(Error::Convergence { routine: "zeros", lo: z, hi: z });
    }
    out.zeros.push(z);
    out.residuals.push(r);
    Ok(())
}

/// McMahon's expansion of j_{ν,k} for large k.
pub fn mcmahon(nu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    let b8_2 = b8 * b8;
    let t1 = (mu - 1.0) / b8;
    let t2 = 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8_2);
    let t3 = 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8 * b8_2 * b8_2);
    let t4 = 64.0 * (mu - 1.0) * (6949.0 * mu * mu * mu - 153_855.0 * mu * mu + 1_585_743.0 * mu - 6_277_237.0)
        / (105.0 * b8 * b8_2 * b8_2 * b8_2);
    beta - t1 - t2 - t3 - t4
}

/// Number of zeros of J_ν computed by root finding in
/// [`bessel_j_zeros_extended`]; later ones come from McMahon's expansion.
pub fn exact_zero_count(nu: f64) -> usize {
    40 + (3.0 * nu.abs()).ceil() as usize
}

/// The first `n` zeros of J_ν: the first [`exact_zero_count`] by root
/// finding, the rest from McMahon's expansion.
pub fn bessel_j_zeros_extended(nu: f64, n: usize) -> Result<Vec<f64>> {
    let exact = n.min(exact_zero_count(nu));
    let mut z = zeros(FunctionId::BesselJ { order: nu }, exact)?.zeros;
    z.extend((exact + 1..=n).map(|k| mcmahon(nu, k)));
    Ok(z)
}

/// dj_{ν,k}/dν computed three ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderDerivative {
    pub nu: f64,
    pub k: usize,
    pub zero: f64,
    pub value_fd: f64,
    pub value_series: f64,
    pub value_watson: f64,
    /// Largest pairwise relative difference.
    pub spread: f64,
}

fn kth_zero(nu: f64, k: usize) -> Result<f64> {
    Ok(zeros(FunctionId::BesselJ { order: nu }, k)?.zeros[k - 1])
}

/// (2/j) Σ_{n>=0} R²_{n,ν+1}(j) at j = j_{ν,k}.
///
/// At a zero of J_ν, R_{n,ν+1}(j) = J_{ν+1+n}(j)/J_{ν+1}(j), so the terms are
/// generated by backward recurrence from far above the turning point and
/// normalized to R_{0,ν+1} = 1. Summation stops once a term drops below
/// 1e-17 of the partial sum.
pub fn dj_dnu_series(nu: f64, j: f64) -> Result<f64> {
    let top = (j + 60.0 + 10.0 * j.cbrt()).ceil() as usize;
    let mut y = vec![0.0; top + 2];
    y[top] = 1e-300;
    for n in (1..=top).rev() {
        // J_{μ-1} = (2μ/x) J_μ - J_{μ+1} with μ = ν+1+n
        y[n - 1] = 2.0 * (nu + 1.0 + n as f64) / j * y[n] - y[n + 1];
        if y[n - 1].abs() > 1e250 {
            for v in &mut y[n - 1..] {
                *v *= 1e-250;
            }
        }
    }
    let y0 = y[0];
    if y0 == 0.0 || !y0.is_finite() {
        return Err(Error::Convergence { routine: "dj_dnu_series", lo: j, hi: j });
    }
    let mut sum = 0.0;
    for v in &y {
        let r = v / y0;
        let t = r * r;
        sum += t;
        if t < 1e-17 * sum && r.abs() < 1.0 {
            break;
        }
    }
    Ok(2.0 / j * sum)
}

/// 2j ∫_0^∞ K_0(2j sinh t) e^{-2νt} dt, integrated in u = sinh t.
pub fn dj_dnu_watson(nu: f64, j: f64) -> Result<f64> {
    let u_max = 45.0 / (2.0 * j);
    let q = integrate(|u| if u == 0.0 { Ok(0.0) } else { watson_integrand(j, nu, u) }, 0.0, u_max, 1e-15, 1e-12)?;
    Ok(2.0 * j * q.value)
}

/// dj_{ν,k}/dν by central difference (h = 1e-4), the Lommel series and
/// Watson's integral.
pub fn dj_dnu(nu: f64, k: usize) -> Result<OrderDerivative> {
    if !(nu > 0.0) || k == 0 {
        return Err(domain(format!("dj_dnu needs nu > 0 and k >= 1, got nu = {nu}, k = {k}")));
    }
    let h = 1e-4;
    let zero = kth_zero(nu, k)?;
    let value_fd = (kth_zero(nu + h, k)? - kth_zero(nu - h, k)?) / (2.0 * h);
    let value_series = dj_dnu_series(nu, zero)?;
    let value_watson = dj_dnu_watson(nu, zero)?;
    let v = [value_fd, value_series, value_watson];
    let mut spread: f64 = 0.0;
    for i in 0..3 {
        for l in i + 1..3 {
            spread = spread.max((v[i] - v[l]).abs() / v[i].abs().max(v[l].abs()));
        }
    }
    Ok(OrderDerivative { nu, k, zero, value_fd, value_series, value_watson, spread })
}

/// c_{ν,k} sampled over an order grid, and whether it strictly increases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityVerdict {
    pub alpha: f64,
    pub k: usize,
    pub samples: Vec<(f64, f64)>,
    pub increasing: bool,
}

pub fn cylinder_zero_monotonicity(alpha: f64, orders: &[f64], k: usize) -> Result<MonotonicityVerdict> {
    if k == 0 {
        return Err(domain("zero index starts at 1"));
    }
    let mut samples = Vec::with_capacity(orders.len());
    for &nu in orders {
        if !(nu > 0.0) {
            return Err(domain(format!("monotonicity is checked for nu > 0, got {nu}")));
        }
        let z = zeros(FunctionId::Cylinder { order: nu, alpha }, k)?.zeros[k - 1];
        samples.push((nu, z));
    }
    let increasing = samples.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1);
    Ok(MonotonicityVerdict { alpha, k, samples, increasing })
}
