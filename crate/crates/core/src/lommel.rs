//! Lommel polynomials R_{m,ν}, the associated polynomials R*_{m,ν}, their
//! positive roots, Wronskian identities and the large-order slope constants.
//!
//! R_{m,ν}(x) = Σ_{k=0}^{⌊m/2⌋} c_k (x/2)^{2k-m}, with
//! c_k = (-1)^k C(m-k, k) (ν+k)(ν+k+1)...(ν+m-k-1).
//! Negative degrees follow R_{-m,ν} = -R_{m-2,ν-m+1}, so R_{-1,ν} ≡ 0.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::gamma::pochhammer;
use crate::poly::{horner, real_root_estimates};
use crate::solve::newton_bracketed;
use crate::special::FunctionId;
use crate::zeros::ZeroList;

/// Largest degree accepted by the constructors.
pub const MAX_DEGREE: i32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LommelKind {
    Plain,
    Associated,
}

/// Coefficients of R_{m,ν} or R*_{m,ν} multiplying (x/2)^{2k-m}, k = 0..=⌊m/2⌋.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LommelCoefficients {
    pub m: i32,
    pub nu: f64,
    pub kind: LommelKind,
    pub coeffs: Vec<f64>,
}

fn binomial(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r.round()
}

fn plain_coeffs(m: i32, nu: f64) -> Vec<f64> {
    let m = m as i64;
    (0..=m / 2)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let prod: f64 = (k..m - k).map(|i| nu + i as f64).product();
            sign * binomial(m - k, k) * prod
        })
        .collect()
}

fn assoc_coeffs(m: i32, nu: f64) -> Vec<f64> {
    let mut c = plain_coeffs(m, nu);
    // subtract R_{m-2,ν+2}, whose k-th term carries (x/2)^{2(k+1)-m}
    match m {
        0 => c[0] += 1.0, // R_{-2,ν+2} = -R_{0,ν+1} = -1
        1 => {}
        _ => {
            for (k, d) in plain_coeffs(m - 2, nu + 2.0).into_iter().enumerate() {
                c[k + 1] -= d;
            }
        }
    }
    c.iter_mut().for_each(|v| *v *= 0.5);
    c
}

fn check_degree(m: i32) -> Result<()> {
    if m.abs() > MAX_DEGREE {
        return Err(domain(format!("Lommel degree {m} exceeds {MAX_DEGREE}")));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Lommel polynomials require finite x > 0, got {x}")));
    }
    Ok(())
}

impl LommelCoefficients {
    /// Coefficients for m >= 0.
    pub fn new(m: i32, nu: f64, kind: LommelKind) -> Result<Self> {
        if m < 0 {
            return Err(domain(format!("coefficient vectors need m >= 0, got {m}")));
        }
        check_degree(m)?;
        let coeffs = match kind {
            LommelKind::Plain => plain_coeffs(m, nu),
            LommelKind::Associated => assoc_coeffs(m, nu),
        };
        Ok(LommelCoefficients { m, nu, kind, coeffs })
    }

    /// The polynomial in t = (x/2)^2 whose positive roots give the positive
    /// roots of the Lommel polynomial.
    pub fn in_t(&self) -> &[f64] {
        &self.coeffs
    }

    /// Value and x-derivative at x > 0.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let h = 0.5 * x;
        let (p, dp) = horner(&self.coeffs, h * h);
        let pre = h.powi(-self.m);
        // d/dx [h^{-m} P(h^2)] = h^{-m} (-m P / x + P'(t) h)
        (pre * p, pre * (-(self.m as f64) * p / x + dp * h))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_with_derivative(x).0
    }

    /// Σ |c_k (x/2)^{2k-m}|, the scale against which rounding error in
    /// [`eval`](Self::eval) should be measured.
    pub fn magnitude(&self, x: f64) -> f64 {
        let t = 0.25 * x * x;
        let abs: Vec<f64> = self.coeffs.iter().map(|c| c.abs()).collect();
        horner(&abs, t).0 * (0.5 * x).powi(-self.m)
    }
}

/// Maps a negative degree to the Graf form: R_{m,ν} = sign · R_{m', ν'}.
fn graf(m: i32, nu: f64) -> Option<(f64, i32, f64)> {
    if m >= 0 {
        Some((1.0, m, nu))
    } else if m == -1 {
        None
    } else {
        Some((-1.0, -m - 2, nu + m as f64 + 1.0))
    }
}

/// R_{m,ν}(x) and its x-derivative, any integer m.
pub fn lommel_eval_with_derivative(m: i32, nu: f64, x: f64) -> Result<(f64, f64)> {
    check_x(x)?;
    check_degree(m)?;
    match graf(m, nu) {
        None => Ok((0.0, 0.0)),
        Some((s, mm, nn)) => {
            let (v, d) = LommelCoefficients::new(mm, nn, LommelKind::Plain)?.eval_with_derivative(x);
            Ok((s * v, s * d))
        }
    }
}

/// R_{m,ν}(x) from the explicit coefficient form, any integer m.
pub fn lommel_eval(m: i32, nu: f64, x: f64) -> Result<f64> {
    Ok(lommel_eval_with_derivative(m, nu, x)?.0)
}

/// R_{m,ν}(x) by the forward recurrence R_{k+1} = 2(ν+k)/x R_k - R_{k-1}
/// from R_{-1} = 0, R_0 = 1 (m >= -1).
pub fn lommel_eval_recurrence(m: i32, nu: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    check_degree(m)?;
    if m < -1 {
        return Err(domain("recurrence evaluation needs m >= -1"));
    }
    Ok(recurrence_values(m.max(0) as usize, nu, x, 0.0)[(m + 1) as usize])
}

/// [R_{-1}, R_0, ..., R_m] for R_{-1} = `r_minus`, R_0 = 1.
fn recurrence_values(m: usize, nu: f64, x: f64, r_minus: f64) -> Vec<f64> {
    let mut v = Vec::with_capacity(m + 2);
    v.push(r_minus);
    v.push(1.0);
    for k in 0..m {
        let next = 2.0 * (nu + k as f64) / x * v[k + 1] - v[k];
        v.push(next);
    }
    v
}

/// R*_{m,ν}(x) = (R_{m,ν}(x) - R_{m-2,ν+2}(x)) / 2 and its derivative, any integer m.
pub fn assoc_eval_with_derivative(m: i32, nu: f64, x: f64) -> Result<(f64, f64)> {
    check_x(x)?;
    check_degree(m)?;
    if m >= 0 {
        return Ok(LommelCoefficients::new(m, nu, LommelKind::Associated)?.eval_with_derivative(x));
    }
    let (a, da) = lommel_eval_with_derivative(m, nu, x)?;
    let (b, db) = lommel_eval_with_derivative(m - 2, nu + 2.0, x)?;
    Ok((0.5 * (a - b), 0.5 * (da - db)))
}

pub fn assoc_eval(m: i32, nu: f64, x: f64) -> Result<f64> {
    Ok(assoc_eval_with_derivative(m, nu, x)?.0)
}

/// R*_{m,ν}(x) by R*_{k+1} = 2(ν+k)/x R*_k - R*_{k-1} from R*_0 = 1, R*_1 = ν/x.
pub fn assoc_eval_recurrence(m: i32, nu: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    check_degree(m)?;
    if m < 0 {
        return Err(domain("recurrence evaluation needs m >= 0"));
    }
    // R*_{-1} = ν/x makes the first step produce R*_1 = ν/x
    Ok(recurrence_values(m as usize, nu, x, nu / x)[(m + 1) as usize])
}

/// Positive roots, ascending: of R_{n,λ+1} for `Plain`, of R*_{n,λ} for
/// `Associated`.
///
/// Every candidate from the companion matrix must show a sign change within a
/// relative half-width of at most 1e-3 before it is polished and accepted.
pub fn lommel_roots(n: i32, lambda: f64, kind: LommelKind) -> Result<ZeroList> {
    let (order, fid) = match kind {
        LommelKind::Plain => {
            if !(lambda > -1.0) {
                return Err(domain(format!("Lommel roots need lambda > -1, got {lambda}")));
            }
            (lambda + 1.0, FunctionId::Lommel { order: lambda + 1.0, degree: n })
        }
        LommelKind::Associated => {
            if !(lambda > 0.0) {
                return Err(domain(format!("associated Lommel roots need lambda > 0, got {lambda}")));
            }
            (lambda, FunctionId::AssocLommel { order: lambda, degree: n })
        }
    };
    const TOL: f64 = 1e-12;
    let mut list = ZeroList {
        fid,
        zeros: Vec::new(),
        residuals: Vec::new(),
        method: "companion matrix + bracketed Newton".to_string(),
        tolerance: TOL,
    };
    if n < 2 {
        if n < 0 {
            return Err(domain(format!("Lommel roots need n >= 0, got {n}")));
        }
        return Ok(list);
    }
    let c = LommelCoefficients::new(n, order, kind)?;
    let p = |x: f64| {
        let h = 0.5 * x;
        let (v, dv) = horner(c.in_t(), h * h);
        Ok((v, dv * h))
    };
    for t in real_root_estimates(c.in_t()) {
        if !(t > 0.0) {
            continue;
        }
        let x0 = 2.0 * t.sqrt();
        let mut w = 1e-6;
        let mut bracket = None;
        while w <= 1e-3 {
            let (lo, hi) = (x0 - w * (1.0 + x0), x0 + w * (1.0 + x0));
            if lo > 0.0 {
                let (flo, _) = p(lo)?;
                let (fhi, _) = p(hi)?;
                if flo.signum() != fhi.signum() {
                    bracket = Some((lo, hi));
                    break;
                }
            }
            w *= 10.0;
        }
        let Some((lo, hi)) = bracket else { continue };
        let root = newton_bracketed(p, lo, hi, 1e-16, "lommel_roots")?;
        if list.zeros.last().is_some_and(|&z: &f64| (root - z).abs() <= 1e-10 * root) {
            continue;
        }
        let (v, d) = c.eval_with_derivative(root);
        list.zeros.push(root);
        list.residuals.push(v.abs() / d.abs().max(1.0));
    }
    Ok(list)
}

/// Residuals of the Wronskian identities at (m, ν, x), m >= 1:
///
/// * W[R_{m-2,ν+1}, R_{m-1,ν+1}] + (2/x²) Σ_{k=0}^{m-2} (ν+k+1) R²_{k,ν+1}
/// * W[R*_{m+1,ν}, R*_{m,ν}] - (2/x²) Σ_{k=1}^{m} (ν+k) R*²_{k,ν} - ν/x²
///
/// each divided by the sum of the magnitudes of its terms.
pub fn lommel_wronskian_identity(m: i32, nu: f64, x: f64) -> Result<(f64, f64)> {
    if m < 1 {
        return Err(domain(format!("Wronskian identities need m >= 1, got {m}")));
    }
    check_x(x)?;
    let x2 = x * x;

    let (a, da) = lommel_eval_with_derivative(m - 2, nu + 1.0, x)?;
    let (b, db) = lommel_eval_with_derivative(m - 1, nu + 1.0, x)?;
    let w = a * db - da * b;
    let mut sum = 0.0;
    for k in 0..=(m - 2) {
        let r = lommel_eval(k, nu + 1.0, x)?;
        sum += (nu + k as f64 + 1.0) * r * r;
    }
    let rhs = -2.0 / x2 * sum;
    let plain = (w - rhs).abs() / ((a * db).abs() + (da * b).abs() + rhs.abs()).max(f64::MIN_POSITIVE);

    let (p, dp) = assoc_eval_with_derivative(m + 1, nu, x)?;
    let (q, dq) = assoc_eval_with_derivative(m, nu, x)?;
    let w = p * dq - dp * q;
    let mut sum = nu;
    let mut scale = nu.abs();
    for k in 1..=m {
        let r = assoc_eval(k, nu, x)?;
        sum += 2.0 * (nu + k as f64) * r * r;
        scale += 2.0 * (nu + k as f64).abs() * r * r;
    }
    let rhs = sum / x2;
    let assoc = (w - rhs).abs() / ((p * dq).abs() + (dp * q).abs() + scale / x2).max(f64::MIN_POSITIVE);
    Ok((plain, assoc))
}

/// Roots η of the large-order slope equation
/// ₂F₁[(1-n)/2, -n/2; -n | η²] = 0, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaRoot {
    pub n: i32,
    pub roots: Vec<f64>,
}

/// Coefficients (ascending in z) of the terminating ₂F₁[(1-n)/2, -n/2; -n | z].
pub fn eta_polynomial(n: i32) -> Vec<f64> {
    let a = 0.5 * (1.0 - n as f64);
    let b = -0.5 * n as f64;
    let c = -(n as f64);
    let mut coeffs = vec![1.0];
    let mut term = 1.0;
    for j in 0..(n / 2) {
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0));
        coeffs.push(term);
    }
    coeffs
}

pub fn eta_limit(n: i32) -> Result<EtaRoot> {
    if n < 2 {
        return Err(domain(format!("eta_limit needs n >= 2, got {n}")));
    }
    let coeffs = eta_polynomial(n);
    let f = |eta: f64| {
        let (v, dv) = horner(&coeffs, eta * eta);
        Ok((v, 2.0 * eta * dv))
    };
    let mut roots = Vec::new();
    for z in real_root_estimates(&coeffs) {
        if !(z > 0.0) {
            continue;
        }
        let e0 = z.sqrt();
        let w = 1e-6 * (1.0 + e0);
        let (lo, hi) = (e0 - w, e0 + w);
        let root =
            if f(lo)?.0.signum() != f(hi)?.0.signum() { newton_bracketed(f, lo, hi, 1e-16, "eta_limit")? } else { e0 };
        roots.push(root);
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    Ok(EtaRoot { n, roots })
}

/// lim_{ν→∞} R_{m,ν+1}(ρ)/2^m as a ratio of Pochhammer symbols.
pub fn pochhammer_limit(m: i32) -> Result<f64> {
    if m < 0 {
        return Err(domain(format!("pochhammer_limit needs m >= 0, got {m}")));
    }
    let mf = m as f64;
    Ok(if m % 2 == 0 {
        let n = (m / 2) as usize;
        pochhammer(-(mf + 1.0) / 2.0, n) / pochhammer(-mf, n)
    } else {
        let n = ((m - 1) / 2) as usize;
        pochhammer(-mf / 2.0, n) / pochhammer(-mf, n)
    })
}
