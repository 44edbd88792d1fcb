//! Merged zero sequences, common zeros, interlacing checks and the Wronskian
//! series for J_ν and R_{m-1,ν+1} J_{ν+m}, the cylinder analogue with
//! C_ν^α, and the derivative analogue with J'_ν and R*_{m,ν} J_{ν+m}.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lommel::{
    assoc_eval, assoc_eval_with_derivative, lommel_eval, lommel_eval_with_derivative, lommel_roots, LommelKind,
};
use crate::special::{
    bessel_j, bessel_j_prime, bessel_j_scaled, bessel_j_scaled_prime, bessel_second_derivative, cylinder,
    cylinder_prime, FunctionId,
};
use crate::zeros::{bessel_j_zeros_extended, zeros, zeros_below};

/// Which pair of functions is compared.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// J_ν against R_{m-1,ν+1} J_{ν+m} (sequence ω).
    BesselJ,
    /// C_ν against R_{m-1,ν+1} C_{ν+m} (sequence τ).
    Cylinder { alpha: f64 },
    /// J'_ν against R*_{m,ν} J_{ν+m} (sequence ω*).
    Derivative,
}

impl Family {
    fn check(&self, m: i32, nu: f64) -> Result<()> {
        match *self {
            Family::BesselJ if !(nu > -1.0) || m < 1 => {
                Err(domain(format!("Bessel family needs nu > -1 and m >= 1, got nu = {nu}, m = {m}")))
            }
            Family::Cylinder { alpha } if !(nu > 0.0) || m < 1 || !(0.0..PI).contains(&alpha) => Err(domain(format!(
                "cylinder family needs nu > 0, m >= 1, 0 <= alpha < pi, got nu = {nu}, m = {m}, alpha = {alpha}"
            ))),
            Family::Derivative if !(nu > 0.0) || m < 0 => {
                Err(domain(format!("derivative family needs nu > 0 and m >= 0, got nu = {nu}, m = {m}")))
            }
            _ => Ok(()),
        }
    }

    /// The base function: J_ν, C_ν or J'_ν.
    pub fn base(&self, nu: f64) -> FunctionId {
        match *self {
            Family::BesselJ => FunctionId::BesselJ { order: nu },
            Family::Cylinder { alpha } => FunctionId::Cylinder { order: nu, alpha },
            Family::Derivative => FunctionId::BesselJPrime { order: nu },
        }
    }

    /// The higher-order function: J_{ν+m} or C_{ν+m}.
    pub fn high(&self, m: i32, nu: f64) -> FunctionId {
        match *self {
            Family::Cylinder { alpha } => FunctionId::Cylinder { order: nu + m as f64, alpha },
            _ => FunctionId::BesselJ { order: nu + m as f64 },
        }
    }

    /// The compensating polynomial: R_{m-1,ν+1} or R*_{m,ν}.
    pub fn polynomial(&self, m: i32, nu: f64) -> FunctionId {
        match *self {
            Family::Derivative => FunctionId::AssocLommel { order: nu, degree: m },
            _ => FunctionId::Lommel { order: nu + 1.0, degree: m - 1 },
        }
    }

    fn polynomial_roots(&self, m: i32, nu: f64) -> Result<Vec<f64>> {
        Ok(match *self {
            Family::Derivative => lommel_roots(m, nu, LommelKind::Associated)?.zeros,
            _ => lommel_roots(m - 1, nu, LommelKind::Plain)?.zeros,
        })
    }
}

/// Tolerances of the verification routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// A base zero x is common when |f_high(x)| < common · max(1, |f_high'(x)|).
    pub common: f64,
    /// Merged entries closer than dedup · x collapse into one.
    pub dedup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { common: 1e-8, dedup: 1e-7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommonPoint {
    pub x: f64,
    /// 1-based index of x among the base zeros.
    pub index: usize,
    /// |base function(x)|
    pub low_residual: f64,
    /// |higher-order function(x)|
    pub high_residual: f64,
    /// |polynomial(x)|
    pub polynomial_value: f64,
}

/// Base zeros that are also zeros of the higher-order function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommonZeroSet {
    pub family: Family,
    pub m: i32,
    pub nu: f64,
    pub points: Vec<CommonPoint>,
    pub tolerance: f64,
}

/// Upper bound on the number of common zeros: ⌊(m-1)/2⌋, or ⌊m/2⌋ for the
/// derivative family.
pub fn common_zero_bound(family: Family, m: i32) -> usize {
    match family {
        Family::Derivative => (m.max(0) / 2) as usize,
        _ => ((m - 1).max(0) / 2) as usize,
    }
}

fn detect_in(family: Family, m: i32, nu: f64, base: &[f64], tol: f64) -> Result<Vec<CommonPoint>> {
    let high = family.high(m, nu);
    let low = family.base(nu);
    let poly = family.polynomial(m, nu);
    let mut points = Vec::new();
    for (i, &x) in base.iter().enumerate() {
        let (h, dh) = high.eval_with_derivative(x)?;
        if h.abs() < tol * dh.abs().max(1.0) {
            points.push(CommonPoint {
                x,
                index: i + 1,
                low_residual: low.eval(x)?.abs(),
                high_residual: h.abs(),
                polynomial_value: poly.eval(x)?.abs(),
            });
        }
    }
    Ok(points)
}

/// Common zeros among the first `k` base zeros.
pub fn detect_common_zeros(family: Family, m: i32, nu: f64, k: usize, tol: f64) -> Result<CommonZeroSet> {
    family.check(m, nu)?;
    let base = zeros(family.base(nu), k)?.zeros;
    Ok(CommonZeroSet { family, m, nu, points: detect_in(family, m, nu, &base, tol)?, tolerance: tol })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    HigherOrderZero,
    LommelRoot,
    CommonZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MergedEntry {
    pub value: f64,
    pub source: Source,
}

/// Zeros of the higher-order function merged with the polynomial roots, all
/// not exceeding `limit`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergedZeros {
    pub family: Family,
    pub m: i32,
    pub nu: f64,
    pub limit: f64,
    pub entries: Vec<MergedEntry>,
}

fn merge(high: &[f64], roots: &[f64], dedup: f64) -> Vec<MergedEntry> {
    let mut all: Vec<MergedEntry> = high
        .iter()
        .map(|&value| MergedEntry { value, source: Source::HigherOrderZero })
        .chain(roots.iter().map(|&value| MergedEntry { value, source: Source::LommelRoot }))
        .collect();
    all.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut out: Vec<MergedEntry> = Vec::with_capacity(all.len());
    for e in all {
        if let Some(last) = out.last_mut() {
            if (e.value - last.value).abs() <= dedup * e.value.abs() && e.source != last.source {
                last.source = Source::CommonZero;
                continue;
            }
        }
        out.push(e);
    }
    out
}

fn merged_up_to(family: Family, m: i32, nu: f64, limit: f64, dedup: f64) -> Result<Vec<MergedEntry>> {
    let high = zeros_below(family.high(m, nu), limit)?.zeros;
    let roots: Vec<f64> = family.polynomial_roots(m, nu)?.into_iter().filter(|&r| r <= limit).collect();
    Ok(merge(&high, &roots, dedup))
}

/// The merged sequence over the range of the first `k` base zeros.
pub fn merged_sequence(family: Family, m: i32, nu: f64, k: usize) -> Result<MergedZeros> {
    merged_sequence_with(family, m, nu, k, &Tolerances::default())
}

pub fn merged_sequence_with(family: Family, m: i32, nu: f64, k: usize, tol: &Tolerances) -> Result<MergedZeros> {
    family.check(m, nu)?;
    if k == 0 {
        return Err(Error::InsufficientZeros { needed: 1, available: 0 });
    }
    let base = zeros(family.base(nu), k)?.zeros;
    let limit = base[k - 1];
    let entries = merged_up_to(family, m, nu, limit, tol.dedup)?;
    Ok(MergedZeros { family, m, nu, limit, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    /// Base zeros minus common zeros against the merged sequence.
    Generalized,
    /// All base zeros against the zeros of the higher-order function alone.
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// 1-based position in the combined ascending sequence.
    pub position: usize,
    pub value: f64,
    /// True when the offending entry is a base zero.
    pub base: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlaceReport {
    pub family: Family,
    pub m: i32,
    pub nu: f64,
    pub pattern: Pattern,
    pub ok: bool,
    pub first_violation: Option<usize>,
    pub violations: Vec<Violation>,
    /// Base zeros removed because they are common zeros.
    pub skipped_base_zeros: Vec<f64>,
    pub common_zeros: Vec<CommonPoint>,
    pub base_zeros: Vec<f64>,
    pub merged: Vec<MergedEntry>,
    /// Smallest distance between neighbours in the combined sequence.
    pub min_gap: f64,
}

impl InterlaceReport {
    /// Number of merged entries that took part in the check.
    pub fn merged_checked(&self) -> usize {
        self.merged.len()
    }
}

/// Checks base_1 < merged_1 < base_2 < merged_2 < ... on (0, base_k].
fn alternation(base: &[f64], merged: &[MergedEntry]) -> (Vec<Violation>, f64) {
    let mut seq: Vec<(f64, bool)> = base.iter().map(|&b| (b, true)).collect();
    seq.extend(merged.iter().map(|e| (e.value, false)));
    seq.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut violations = Vec::new();
    let mut min_gap = f64::INFINITY;
    for (i, &(v, is_base)) in seq.iter().enumerate() {
        let bad = if i == 0 {
            !is_base
        } else {
            let (prev, prev_base) = seq[i - 1];
            min_gap = min_gap.min(v - prev);
            prev_base == is_base || v == prev
        };
        if bad {
            violations.push(Violation { position: i + 1, value: v, base: is_base });
        }
    }
    (violations, min_gap)
}

/// Generalized interlacing over the first `k` base zeros.
pub fn verify_generalized_interlacing(family: Family, m: i32, nu: f64, k: usize) -> Result<InterlaceReport> {
    verify_with(family, m, nu, k, Pattern::Generalized, &Tolerances::default())
}

/// Plain interlacing of the base zeros with the higher-order zeros alone.
pub fn verify_plain_interlacing(family: Family, m: i32, nu: f64, k: usize) -> Result<InterlaceReport> {
    verify_with(family, m, nu, k, Pattern::Plain, &Tolerances::default())
}

pub fn verify_with(
    family: Family,
    m: i32,
    nu: f64,
    k: usize,
    pattern: Pattern,
    tol: &Tolerances,
) -> Result<InterlaceReport> {
    family.check(m, nu)?;
    if k < 3 {
        return Err(Error::InsufficientZeros { needed: 3, available: k });
    }
    let base_all = zeros(family.base(nu), k)?.zeros;
    let limit = base_all[k - 1];
    let (base, merged, common, skipped) = match pattern {
        Pattern::Generalized => {
            let common = detect_in(family, m, nu, &base_all, tol.common)?;
            let skipped: Vec<f64> = common.iter().map(|p| p.x).collect();
            let base: Vec<f64> = base_all.iter().copied().filter(|x| !skipped.contains(x)).collect();
            let merged = merged_up_to(family, m, nu, limit, tol.dedup)?;
            (base, merged, common, skipped)
        }
        Pattern::Plain => {
            let high = zeros_below(family.high(m, nu), limit)?.zeros;
            let merged = high.into_iter().map(|value| MergedEntry { value, source: Source::HigherOrderZero }).collect();
            (base_all, merged, Vec::new(), Vec::new())
        }
    };
    let (violations, min_gap) = alternation(&base, &merged);
    Ok(InterlaceReport {
        family,
        m,
        nu,
        pattern,
        ok: violations.is_empty(),
        first_violation: violations.first().map(|v| v.position),
        violations,
        skipped_base_zeros: skipped,
        common_zeros: common,
        base_zeros: base,
        merged,
        min_gap,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoConsecutiveVerdict {
    pub m: i32,
    pub nu: f64,
    pub common_indices: Vec<usize>,
    pub ok: bool,
}

/// No two consecutive zeros of J_ν are common zeros with J_{ν+m}.
pub fn no_consecutive_common_zeros(m: i32, nu: f64, k: usize) -> Result<NoConsecutiveVerdict> {
    let set = detect_common_zeros(Family::BesselJ, m, nu, k, Tolerances::default().common)?;
    let common_indices: Vec<usize> = set.points.iter().map(|p| p.index).collect();
    let ok = common_indices.windows(2).all(|w| w[1] != w[0] + 1);
    Ok(NoConsecutiveVerdict { m, nu, common_indices, ok })
}

/// The neighbourhood of a common zero ζ = j_{ν,s} = j_{ν+m,k}:
/// j_{ν+m,k-1} < j_{ν,s-1} < ζ < j_{ν,s+1} < j_{ν+m,k+1}, with j_{·,0} = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommonZeroSandwich {
    pub zeta: f64,
    pub s: usize,
    pub k: usize,
    pub high_prev: f64,
    pub base_prev: f64,
    pub base_next: f64,
    pub high_next: f64,
    pub holds: bool,
}

pub fn common_zero_sandwich(m: i32, nu: f64, zeta: f64) -> Result<CommonZeroSandwich> {
    let base = zeros_below(FunctionId::BesselJ { order: nu }, zeta * (1.0 + 1e-7) + 4.0 * PI)?.zeros;
    let high = zeros_below(FunctionId::BesselJ { order: nu + m as f64 }, zeta * (1.0 + 1e-7) + 4.0 * PI)?.zeros;
    let near = |v: &[f64]| v.iter().position(|&z| (z - zeta).abs() <= 1e-7 * zeta);
    let (Some(si), Some(ki)) = (near(&base), near(&high)) else {
        return Err(domain(format!("{zeta} is not a common zero of J_{nu} and J_{}", nu + m as f64)));
    };
    if si + 1 >= base.len() || ki + 1 >= high.len() {
        return Err(Error::InsufficientZeros { needed: si + 2, available: base.len() });
    }
    let at = |v: &[f64], i: usize| if i == 0 { 0.0 } else { v[i - 1] };
    let high_prev = at(&high, ki);
    let base_prev = at(&base, si);
    let (base_next, high_next) = (base[si + 1], high[ki + 1]);
    let holds = high_prev < base_prev && base_prev < zeta && zeta < base_next && base_next < high_next;
    Ok(CommonZeroSandwich { zeta, s: si + 1, k: ki + 1, high_prev, base_prev, base_next, high_next, holds })
}

/// The m = 2 derivative breakdown: with ρ* = sqrt(2ν(ν+1)),
/// j_{ν+2,k} < j'_{ν,s} < ρ* < j'_{ν,s+1} < j_{ν+2,k+1}, using j_{ν+2,0} = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeBreakdown {
    pub nu: f64,
    pub rho_star: f64,
    pub k: usize,
    pub s: usize,
    pub high_k: f64,
    pub jp_s: f64,
    pub jp_s1: f64,
    pub high_k1: f64,
    pub holds: bool,
    /// Plain interlacing of j'_ν with j_{ν+2} fails in the sandwich.
    pub plain_fails: bool,
}

pub fn derivative_breakdown(nu: f64) -> Result<DerivativeBreakdown> {
    if !(nu > 0.0) {
        return Err(domain(format!("derivative breakdown needs nu > 0, got {nu}")));
    }
    let rho_star = (2.0 * nu * (nu + 1.0)).sqrt();
    let jp = zeros_below(FunctionId::BesselJPrime { order: nu }, rho_star + 2.0 * PI)?.zeros;
    let s = jp.iter().take_while(|&&z| z < rho_star).count();
    if s == 0 || s >= jp.len() {
        return Err(Error::InsufficientZeros { needed: s + 1, available: jp.len() });
    }
    let (jp_s, jp_s1) = (jp[s - 1], jp[s]);
    let high = zeros_below(FunctionId::BesselJ { order: nu + 2.0 }, jp_s1 + 2.0 * PI)?.zeros;
    let k = high.iter().take_while(|&&z| z < jp_s).count();
    let high_k = if k == 0 { 0.0 } else { high[k - 1] };
    let high_k1 = high[k];
    let holds = high_k < jp_s && jp_s < rho_star && rho_star < jp_s1 && jp_s1 < high_k1;
    Ok(DerivativeBreakdown { nu, rho_star, k, s, high_k, jp_s, jp_s1, high_k1, holds, plain_fails: holds })
}

/// On (0, c_{ν+m,1}): zeros c_1 < ... < c_N of C_ν and roots ρ_1 < ... < ρ_M
/// of R_{m-1,ν+1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirstIntervalReport {
    pub alpha: f64,
    pub m: i32,
    pub nu: f64,
    pub bound: f64,
    pub base_zeros: Vec<f64>,
    pub roots: Vec<f64>,
    /// c_1 < ρ_1 < c_2 < ... < ρ_{N-1} < c_N
    pub alternates: bool,
    pub m_is_n_minus_1: bool,
    /// (-1)^{k+1} R_{m-1,ν+1}(c_k) > 0 for every k
    pub polynomial_signs: bool,
    /// (-1)^ℓ C_ν(ρ_ℓ) > 0 for every ℓ
    pub cylinder_signs: bool,
}

impl FirstIntervalReport {
    pub fn ok(&self) -> bool {
        self.alternates && self.m_is_n_minus_1 && self.polynomial_signs && self.cylinder_signs
    }
}

pub fn cylinder_first_interval(alpha: f64, m: i32, nu: f64) -> Result<FirstIntervalReport> {
    let family = Family::Cylinder { alpha };
    family.check(m, nu)?;
    let bound = zeros(family.high(m, nu), 1)?.zeros[0];
    let base_zeros = zeros_below(family.base(nu), bound)?.zeros;
    let roots: Vec<f64> = family.polynomial_roots(m, nu)?.into_iter().filter(|&r| r < bound).collect();
    let merged: Vec<MergedEntry> =
        roots.iter().map(|&value| MergedEntry { value, source: Source::LommelRoot }).collect();
    let (violations, _) = alternation(&base_zeros, &merged);
    let alternates = violations.is_empty() && !base_zeros.is_empty();
    let m_is_n_minus_1 = roots.len() + 1 == base_zeros.len();
    let mut polynomial_signs = true;
    for (i, &c) in base_zeros.iter().enumerate() {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        polynomial_signs &= sign * lommel_eval(m - 1, nu + 1.0, c)? > 0.0;
    }
    let mut cylinder_signs = true;
    for (i, &r) in roots.iter().enumerate() {
        let sign = if i % 2 == 0 { -1.0 } else { 1.0 };
        cylinder_signs &= sign * cylinder(alpha, nu, r)?.value > 0.0;
    }
    Ok(FirstIntervalReport {
        alpha,
        m,
        nu,
        bound,
        base_zeros,
        roots,
        alternates,
        m_is_n_minus_1,
        polynomial_signs,
        cylinder_signs,
    })
}

/// x · W[C_{μ-1}, C_μ](x).
pub fn cylinder_pair_wronskian(alpha: f64, mu: f64, x: f64) -> Result<f64> {
    let a = cylinder(alpha, mu - 1.0, x)?.value;
    let da = cylinder_prime(alpha, mu - 1.0, x)?.value;
    let b = cylinder(alpha, mu, x)?.value;
    let db = cylinder_prime(alpha, mu, x)?.value;
    Ok(x * (a * db - da * b))
}

/// Default number of zeros in the Wronskian series.
pub const DEFAULT_TERMS: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WronskianSample {
    pub x: f64,
    /// From analytic derivatives.
    pub direct: f64,
    /// Second direct evaluation through the Lommel Wronskian decomposition.
    pub decomposed: f64,
    pub series: f64,
    pub terms: usize,
    pub tail_bound: f64,
    /// x lies within 1e-6 of a zero of J_{ν+m}; that series term used its limit.
    pub near_singular: bool,
}

impl WronskianSample {
    /// |direct - series| <= tail_bound + 1e-9 · max(1, |direct|)
    pub fn consistent(&self) -> bool {
        (self.direct - self.series).abs() <= self.tail_bound + 1e-9 * self.direct.abs().max(1.0)
    }
}

/// J²_μ(x) Σ_{k=1}^{N} (x² + j_k²)/(x² - j_k²)² over the zeros j_k of J_μ,
/// the per-term limit J'_μ(j)²/2 replacing terms with |x - j_k| < 1e-6, and
/// a bound on J²_μ(x) times the omitted tail.
fn weighted_zero_sum(mu: f64, x: f64, n: usize) -> Result<(f64, f64, bool)> {
    let j = bessel_j(mu, x)?.value;
    let jz = bessel_j_zeros_extended(mu, n)?;
    let x2 = x * x;
    let mut sum = 0.0;
    let mut singular = 0.0;
    let mut near = false;
    for &z in &jz {
        if (x - z).abs() < 1e-6 {
            near = true;
            // J(x)/(x - z) ≈ J'(z) + J''(z)(x - z)/2
            let d = bessel_j_prime(mu, z)?.value;
            let q = d + 0.5 * bessel_second_derivative(mu, z, 0.0, d) * (x - z);
            singular += q * q * (x2 + z * z) / ((x + z) * (x + z));
        } else {
            let d = x2 - z * z;
            sum += (x2 + z * z) / (d * d);
        }
    }
    let last = *jz.last().unwrap_or(&x);
    let tail =
        if n > 1 { 1.1 * (1.0 + 3.0 * x2 / (last * last)) / (PI * PI * (n as f64 - 1.0)) } else { f64::INFINITY };
    Ok((j * j * sum + singular, j * j * tail, near))
}

/// W[J_ν, R_{m-1,ν+1} J_{ν+m}](x) directly and from the zero series.
pub fn wronskian_series(m: i32, nu: f64, x: f64, n: usize) -> Result<WronskianSample> {
    if !(nu > -1.0) || m < 1 || !(x > 0.0) || n == 0 {
        return Err(domain(format!(
            "wronskian_series needs nu > -1, m >= 1, x > 0, N >= 1 (nu = {nu}, m = {m}, x = {x})"
        )));
    }
    let mu = nu + m as f64;
    let j0 = bessel_j(nu, x)?.value;
    let d0 = bessel_j_prime(nu, x)?.value;
    let jm = bessel_j(mu, x)?.value;
    let dm = bessel_j_prime(mu, x)?.value;
    let (r, dr) = lommel_eval_with_derivative(m - 1, nu + 1.0, x)?;
    let phi = r * jm;
    let dphi = dr * jm + r * dm;
    let direct = j0 * dphi - d0 * phi;

    // J_ν = R_{m-1,ν+1} J_{ν+m-1} - R_{m-2,ν+1} J_{ν+m}
    let (r2, dr2) = lommel_eval_with_derivative(m - 2, nu + 1.0, x)?;
    let jm1 = bessel_j(mu - 1.0, x)?.value;
    let dm1 = bessel_j_prime(mu - 1.0, x)?.value;
    let decomposed = -jm * jm * (r2 * dr - dr2 * r) + r * r * (jm1 * dm - dm1 * jm);

    let (weighted, tail, near) = weighted_zero_sum(mu, x, n)?;
    let mut poly = 0.0;
    for k in 0..m {
        let rk = lommel_eval(k, nu + 1.0, x)?;
        poly += (nu + k as f64 + 1.0) * rk * rk;
    }
    let series = 2.0 * (r * r * weighted + jm * jm * poly / (x * x));
    Ok(WronskianSample { x, direct, decomposed, series, terms: n, tail_bound: 2.0 * r * r * tail, near_singular: near })
}

/// W[J'_ν, R*_{m,ν} J_{ν+m}](x) directly and from the zero series (m >= 0).
pub fn derivative_wronskian_series(m: i32, nu: f64, x: f64, n: usize) -> Result<WronskianSample> {
    let allowed = (nu > 0.0 && m >= 0) || (nu == 0.0 && m >= 2);
    if !allowed || !(x > 0.0) || n == 0 {
        return Err(domain(format!(
            "derivative_wronskian_series needs nu > 0 (or nu = 0, m >= 2), x > 0 (nu = {nu}, m = {m}, x = {x})"
        )));
    }
    let mu = nu + m as f64;
    let j0 = bessel_j(nu, x)?.value;
    let d0 = bessel_j_prime(nu, x)?.value;
    let dd0 = bessel_second_derivative(nu, x, j0, d0);
    let jm = bessel_j(mu, x)?.value;
    let dm = bessel_j_prime(mu, x)?.value;
    let (r, dr) = assoc_eval_with_derivative(m, nu, x)?;
    let psi = r * jm;
    let dpsi = dr * jm + r * dm;
    let direct = d0 * dpsi - dd0 * psi;

    // J'_ν = -R*_{m-1,ν} J_{ν+m} + R*_{m,ν} J_{ν+m-1}
    let decomposed = if m >= 1 {
        let (q, dq) = assoc_eval_with_derivative(m - 1, nu, x)?;
        let jm1 = bessel_j(mu - 1.0, x)?.value;
        let dm1 = bessel_j_prime(mu - 1.0, x)?.value;
        -jm * jm * (q * dr - dq * r) + r * r * (jm1 * dm - dm1 * jm)
    } else {
        direct
    };

    let (weighted, tail, near) = weighted_zero_sum(mu, x, n)?;
    let mut poly = 0.5 * nu;
    for k in 1..=m {
        let rk = assoc_eval(k, nu, x)?;
        poly += (nu + k as f64) * rk * rk;
    }
    let series = 2.0 * (r * r * weighted + jm * jm * poly / (x * x));
    Ok(WronskianSample { x, direct, decomposed, series, terms: n, tail_bound: 2.0 * r * r * tail, near_singular: near })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialFractionSample {
    pub nu: f64,
    pub x: f64,
    pub terms: usize,
    /// 𝕁_ν(x) / 𝕁_{ν+1}(x)
    pub ratio: f64,
    /// 1 + x Σ_{k<=N} c_k (1/(x - j_k) + 1/(x + j_k))
    pub truncated: f64,
    /// Estimate of the omitted terms, -x² / ((ν+1) π² (N + (ν+1)/2 + 1/4)).
    pub tail_estimate: f64,
    /// |ratio - truncated - tail_estimate|
    pub residual: f64,
    /// |ratio - truncated|
    pub raw_residual: f64,
    /// Largest relative deviation of c_k from 1/(2(ν+1)).
    pub coefficient_residual: f64,
}

/// Compares 𝕁_ν/𝕁_{ν+1} with its partial-fraction expansion over the
/// zeros of J_{ν+1}; each coefficient c_k = 𝕁_ν(j)/(j 𝕁'_{ν+1}(j)) is
/// evaluated from the functions themselves.
pub fn partial_fraction_check(nu: f64, x: f64, n: usize) -> Result<PartialFractionSample> {
    if !(nu > -1.0) || !(x > 0.0) || n == 0 {
        return Err(domain(format!("partial_fraction_check needs nu > -1, x > 0, N >= 1 (nu = {nu}, x = {x})")));
    }
    let ratio = bessel_j_scaled(nu, x)?.value / bessel_j_scaled(nu + 1.0, x)?.value;
    let jz = bessel_j_zeros_extended(nu + 1.0, n)?;
    let expected = 1.0 / (2.0 * (nu + 1.0));
    let mut sum = 0.0;
    let mut coefficient_residual: f64 = 0.0;
    for (i, &z) in jz.iter().enumerate() {
        // the coefficients are evaluated for the exactly located zeros and
        // take their known common value beyond
        let c = if i < 200 {
            let c = term_coefficient(nu, z)?;
            coefficient_residual = coefficient_residual.max((c - expected).abs() / expected);
            c
        } else {
            expected
        };
        sum += c * (1.0 / (x - z) + 1.0 / (x + z));
    }
    let truncated = 1.0 + x * sum;
    let a = 0.5 * (nu + 1.0) - 0.25;
    let tail_estimate = -x * x / ((nu + 1.0) * PI * PI * (n as f64 + a + 0.5));
    Ok(PartialFractionSample {
        nu,
        x,
        terms: n,
        ratio,
        truncated,
        tail_estimate,
        residual: (ratio - truncated - tail_estimate).abs(),
        raw_residual: (ratio - truncated).abs(),
        coefficient_residual,
    })
}

/// 𝕁_ν(j) / (j 𝕁'_{ν+1}(j)) at a zero j of J_{ν+1}.
pub fn term_coefficient(nu: f64, j: f64) -> Result<f64> {
    Ok(bessel_j_scaled(nu, j)?.value / (j * bessel_j_scaled_prime(nu + 1.0, j)?.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m1_and_m2_have_no_lommel_roots() {
        for m in [1, 2] {
            let s = merged_sequence(Family::BesselJ, m, 0.7, 10).unwrap();
            assert!(s.entries.iter().all(|e| e.source == Source::HigherOrderZero));
            let c = detect_common_zeros(Family::BesselJ, m, 0.7, 10, 1e-8).unwrap();
            assert!(c.points.is_empty());
        }
    }

    #[test]
    fn lommel_root_leads_at_nine_eighths() {
        let s = merged_sequence(Family::BesselJ, 3, 1.125, 5).unwrap();
        let rho = 2.0 * (2.125f64 * 3.125).sqrt();
        assert_eq!(s.entries[0].source, Source::LommelRoot);
        assert!((s.entries[0].value - rho).abs() < 1e-12);
        let j = zeros(FunctionId::BesselJ { order: 4.125 }, 1).unwrap().zeros[0];
        assert_eq!(s.entries[1].source, Source::HigherOrderZero);
        assert!((s.entries[1].value - j).abs() < 1e-12);
    }

    #[test]
    fn dedup_marks_common_entries() {
        let m = merge(&[1.0, 3.0, 5.0], &[3.0 + 1e-10, 4.0], 1e-7);
        let sources: Vec<Source> = m.iter().map(|e| e.source).collect();
        assert_eq!(
            sources,
            vec![Source::HigherOrderZero, Source::CommonZero, Source::LommelRoot, Source::HigherOrderZero]
        );
    }

    #[test]
    fn alternation_reports_first_break() {
        let merged = |v: &[f64]| -> Vec<MergedEntry> {
            v.iter().map(|&value| MergedEntry { value, source: Source::HigherOrderZero }).collect()
        };
        let (v, gap) = alternation(&[1.0, 3.0, 5.0], &merged(&[2.0, 4.0]));
        assert!(v.is_empty());
        assert_eq!(gap, 1.0);
        let (v, _) = alternation(&[1.0, 3.0, 5.0], &merged(&[2.0, 2.5]));
        assert_eq!(v[0].position, 3);
        let (v, _) = alternation(&[1.0, 3.0], &merged(&[0.5]));
        assert_eq!(v[0].position, 1);
    }

    #[test]
    fn classical_and_generalized_patterns() {
        assert!(verify_generalized_interlacing(Family::BesselJ, 1, 1.0, 20).unwrap().ok);
        let plain = verify_plain_interlacing(Family::BesselJ, 3, 1.125, 15).unwrap();
        assert!(!plain.ok && plain.first_violation.is_some());
        assert!(verify_generalized_interlacing(Family::BesselJ, 3, 1.125, 15).unwrap().ok);
        assert!(verify_with(Family::BesselJ, 3, 1.125, 2, Pattern::Plain, &Tolerances::default()).is_err());
    }

    #[test]
    fn half_order_wronskian() {
        let s = wronskian_series(1, -0.5, 2.0, 2000).unwrap();
        assert!((s.direct - 1.0 / PI).abs() < 1e-12);
        assert!(s.consistent(), "{s:?}");
        for (m, nu, x) in [(1, 0.3, 1.7), (3, 0.5, 4.0), (5, 2.5, 11.0)] {
            let s = wronskian_series(m, nu, x, 5000).unwrap();
            assert!((s.direct - s.decomposed).abs() < 1e-10 * s.direct.abs().max(1.0), "{s:?}");
            assert!(s.consistent(), "{s:?}");
        }
    }

    #[test]
    fn derivative_examples() {
        let s = derivative_wronskian_series(0, 1.0, 2.0, 5000).unwrap();
        assert!(s.consistent(), "{s:?}");
        for (m, nu, x) in [(1, 2.0, 5.0), (2, 0.5, 3.0), (4, 1.5, 9.0)] {
            let s = derivative_wronskian_series(m, nu, x, 5000).unwrap();
            assert!((s.direct - s.decomposed).abs() < 1e-10 * s.direct.abs().max(1.0), "{s:?}");
            assert!(s.consistent(), "{s:?}");
        }
        let s = derivative_wronskian_series(2, 0.0, 1.0, 5000).unwrap();
        assert!(s.direct > 0.0 && s.consistent());
        let b = derivative_breakdown(1.0).unwrap();
        assert!(b.holds && b.k == 0 && b.s == 1, "{b:?}");
    }

    #[test]
    fn partial_fraction_examples() {
        let p = partial_fraction_check(0.0, 1.0, 200).unwrap();
        assert!(p.residual < 1e-6, "{p:?}");
        let p = partial_fraction_check(1.5, 1e-4, 50).unwrap();
        assert!((p.ratio - 1.0).abs() < 1e-8 && (p.truncated - 1.0).abs() < 1e-8);
        let j = zeros(FunctionId::BesselJ { order: 2.0 }, 1).unwrap().zeros[0];
        assert!((term_coefficient(1.0, j).unwrap() - 0.25).abs() < 1e-9);
    }
}
