//! Orders ν* at which J_ν and J_{ν+m} share a zero, found as roots of
//! d(ν) = ρ_{m-1,ν,ℓ} - j_{ν,k}, where ρ_{m-1,ν,ℓ} is the ℓ-th positive root
//! of R_{m-1,ν+1}; and the zero trajectories in the (ν, x)-plane.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lommel::{lommel_roots, LommelKind};
use crate::solve::illinois;
use crate::special::FunctionId;
use crate::zeros::zeros;

/// Grid step of [`scan_nu_star`].
pub const SCAN_GRID: f64 = 0.125;
/// Bound on |dx/dν| used by the continuity guard.
pub const SLOPE_BOUND: f64 = 5.0;
/// Bracket width at which the solver stops.
pub const NU_TOL: f64 = 1e-13;

const ANNOTATION: &str = "for integer m a common zero of J_nu and J_(nu+m) forces nu to be irrational; \
nu_star is a floating-point approximation";

/// The base function whose zeros meet the Lommel roots: J_ν or C_ν^α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Base {
    Bessel,
    Cylinder { alpha: f64 },
}

impl Base {
    fn fid(self, nu: f64) -> FunctionId {
        match self {
            Base::Bessel => FunctionId::BesselJ { order: nu },
            Base::Cylinder { alpha } => FunctionId::Cylinder { order: nu, alpha },
        }
    }

    fn lowest(self) -> f64 {
        match self {
            Base::Bessel => -1.0,
            Base::Cylinder { .. } => 0.0,
        }
    }

    fn check(self, m: i32, lo: f64, hi: f64) -> Result<()> {
        if m < 3 {
            return Err(domain(format!("common zeros need m >= 3, got {m}")));
        }
        if let Base::Cylinder { alpha } = self {
            if !(0.0..PI).contains(&alpha) {
                return Err(domain(format!("cylinder angle must lie in [0, pi), got {alpha}")));
            }
        }
        if !(lo > self.lowest()) || !(hi > lo) || !hi.is_finite() {
            return Err(domain(format!("bad order interval ({lo}, {hi}) for {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuStarSolution {
    pub m: i32,
    pub l: usize,
    pub k: usize,
    pub base: Base,
    pub nu_star: f64,
    pub x_star: f64,
    /// |J_{ν*}(x*)| (or |C_{ν*}(x*)|)
    pub residual_j: f64,
    /// |J_{ν*+m}(x*)| (or |C_{ν*+m}(x*)|)
    pub residual_jm: f64,
    pub bracket: (f64, f64),
    pub annotation: String,
}

fn lommel_root(m: i32, nu: f64, l: usize) -> Result<f64> {
    let roots = lommel_roots(m - 1, nu, LommelKind::Plain)?.zeros;
    roots.get(l - 1).copied().ok_or_else(|| Error::IndexCrossing {
        nu,
        detail: format!("R_(m-1,nu+1) with m = {m} has {} positive roots, root {l} requested", roots.len()),
    })
}

fn base_zero(base: Base, nu: f64, k: usize) -> Result<f64> {
    Ok(zeros(base.fid(nu), k)?.zeros[k - 1])
}

/// d(ν) = ρ_{m-1,ν,ℓ} - j_{ν,k}.
pub fn d_value(m: i32, l: usize, k: usize, nu: f64) -> Result<f64> {
    d_generic(Base::Bessel, m, l, k, nu)
}

fn d_generic(base: Base, m: i32, l: usize, k: usize, nu: f64) -> Result<f64> {
    Ok(lommel_root(m, nu, l)? - base_zero(base, nu, k)?)
}

/// Solves d(ν) = 0 on [lo, hi].
pub fn solve_nu_star(m: i32, l: usize, k: usize, lo: f64, hi: f64) -> Result<NuStarSolution> {
    solve_generic(Base::Bessel, m, l, k, lo, hi)
}

/// As [`solve_nu_star`] with the zeros of C_ν^α in place of those of J_ν.
pub fn cylinder_nu_star(alpha: f64, m: i32, l: usize, k: usize, lo: f64, hi: f64) -> Result<NuStarSolution> {
    if alpha == 0.0 {
        return solve_nu_star(m, l, k, lo, hi);
    }
    solve_generic(Base::Cylinder { alpha }, m, l, k, lo, hi)
}

fn solve_generic(base: Base, m: i32, l: usize, k: usize, lo: f64, hi: f64) -> Result<NuStarSolution> {
    base.check(m, lo, hi)?;
    if l == 0 || k == 0 {
        return Err(domain("root and zero indices start at 1"));
    }
    let d = |nu: f64| d_generic(base, m, l, k, nu);
    let (d_lo, d_hi) = (d(lo)?, d(hi)?);
    if d_lo.signum() == d_hi.signum() {
        return Err(Error::NoSignChange { lo, hi, d_lo, d_hi });
    }
    let nu_star = illinois(d, lo, hi, NU_TOL, "solve_nu_star")?;
    let x_star = base_zero(base, nu_star, k)?;
    let residual_j = base.fid(nu_star).eval(x_star)?.abs();
    let residual_jm = base.fid(nu_star + m as f64).eval(x_star)?.abs();
    Ok(NuStarSolution {
        m,
        l,
        k,
        base,
        nu_star,
        x_star,
        residual_j,
        residual_jm,
        bracket: (lo, hi),
        annotation: ANNOTATION.to_string(),
    })
}

/// Every (ℓ, k) whose d changes sign between `lo` and `hi`, solved.
pub fn solve_in_bracket(m: i32, lo: f64, hi: f64) -> Result<Vec<NuStarSolution>> {
    solve_in_bracket_generic(Base::Bessel, m, lo, hi)
}

pub fn cylinder_solve_in_bracket(alpha: f64, m: i32, lo: f64, hi: f64) -> Result<Vec<NuStarSolution>> {
    let base = if alpha == 0.0 { Base::Bessel } else { Base::Cylinder { alpha } };
    solve_in_bracket_generic(base, m, lo, hi)
}

fn solve_in_bracket_generic(base: Base, m: i32, lo: f64, hi: f64) -> Result<Vec<NuStarSolution>> {
    base.check(m, lo, hi)?;
    let rho_lo = lommel_roots(m - 1, lo, LommelKind::Plain)?.zeros;
    let rho_hi = lommel_roots(m - 1, hi, LommelKind::Plain)?.zeros;
    if rho_lo.len() != rho_hi.len() {
        return Err(Error::IndexCrossing { nu: hi, detail: "Lommel root count changes inside the bracket".into() });
    }
    let Some(&top) = rho_hi.last() else { return Ok(Vec::new()) };
    // j_{ν,k} increases with ν, so zeros of the lower order beyond the
    // largest root at the upper order cannot meet a root
    let bound = top.max(rho_lo[rho_lo.len() - 1]) + 1.0;
    let zl = zeros_upto(base, lo, bound)?;
    let zh = zeros(base.fid(hi), zl.len().max(1))?.zeros;
    let mut out = Vec::new();
    for (li, (&a, &b)) in rho_lo.iter().zip(&rho_hi).enumerate() {
        for ki in 0..zl.len() {
            let (d_lo, d_hi) = (a - zl[ki], b - zh[ki]);
            if d_lo.signum() != d_hi.signum() {
                out.push(solve_generic(base, m, li + 1, ki + 1, lo, hi)?);
            }
        }
    }
    out.sort_by(|a, b| a.nu_star.total_cmp(&b.nu_star));
    Ok(out)
}

fn zeros_upto(base: Base, nu: f64, bound: f64) -> Result<Vec<f64>> {
    let mut n = 4;
    loop {
        let z = zeros(base.fid(nu), n)?.zeros;
        if z[n - 1] > bound {
            return Ok(z.into_iter().filter(|&x| x <= bound).collect());
        }
        n *= 2;
    }
}

struct GridPoint {
    nu: f64,
    roots: Vec<f64>,
    base: Vec<f64>,
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).floor() as usize;
    let mut g: Vec<f64> = (0..=n).map(|i| lo + i as f64 * step).collect();
    if hi - g[n] > 1e-12 * step.max(1.0) {
        g.push(hi);
    }
    g
}

fn sample(base: Base, m: i32, nus: &[f64], k_max: usize) -> Result<Vec<GridPoint>> {
    nus.par_iter()
        .map(|&nu| {
            Ok(GridPoint {
                nu,
                roots: lommel_roots(m - 1, nu, LommelKind::Plain)?.zeros,
                base: zeros(base.fid(nu), k_max)?.zeros,
            })
        })
        .collect()
}

/// All sign changes of d over a grid of step 1/8 starting just above ν = -1
/// and ending at `nu_max`, for ℓ over every root of R_{m-1,ν+1} and
/// k = 1..=`k_max`, each refined; sorted by ν*.
///
/// A cell where ρ or j moves by more than 2 · step · [`SLOPE_BOUND`] is
/// treated as an index swap and skipped.
pub fn scan_nu_star(m: i32, k_max: usize, nu_max: f64) -> Result<Vec<NuStarSolution>> {
    scan_generic(Base::Bessel, m, k_max, nu_max)
}

/// As [`scan_nu_star`] for C_ν^α, starting just above ν = 0 when α > 0.
pub fn cylinder_scan_nu_star(alpha: f64, m: i32, k_max: usize, nu_max: f64) -> Result<Vec<NuStarSolution>> {
    let base = if alpha == 0.0 { Base::Bessel } else { Base::Cylinder { alpha } };
    scan_generic(base, m, k_max, nu_max)
}

fn scan_generic(base: Base, m: i32, k_max: usize, nu_max: f64) -> Result<Vec<NuStarSolution>> {
    let lo = base.lowest() + 1e-3;
    base.check(m, lo, lo + 1.0)?;
    if k_max == 0 || nu_max <= lo {
        return Ok(Vec::new());
    }
    let pts = sample(base, m, &grid(lo, nu_max, SCAN_GRID), k_max)?;
    let guard = 2.0 * SCAN_GRID * SLOPE_BOUND;
    let mut cells = Vec::new();
    for w in pts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        for (li, (&ra, &rb)) in a.roots.iter().zip(&b.roots).enumerate() {
            for ki in 0..k_max {
                let (ja, jb) = (a.base[ki], b.base[ki]);
                if (rb - ra).abs() > guard || (jb - ja).abs() > guard {
                    continue;
                }
                if (ra - ja).signum() != (rb - jb).signum() {
                    cells.push((li + 1, ki + 1, a.nu, b.nu));
                }
            }
        }
    }
    let mut out: Vec<NuStarSolution> =
        cells.into_par_iter().map(|(l, k, a, b)| solve_generic(base, m, l, k, a, b)).collect::<Result<_>>()?;
    out.sort_by(|a, b| a.nu_star.total_cmp(&b.nu_star));
    Ok(out)
}

/// Which zero family a trajectory follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "index", rename_all = "snake_case")]
pub enum CurveId {
    /// j_{ν,k}
    BaseZero(usize),
    /// j_{ν+m,k}
    HighZero(usize),
    /// ρ_{m-1,ν,ℓ}
    LommelRoot(usize),
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveId::BaseZero(k) => write!(f, "j_nu_{k}"),
            CurveId::HighZero(k) => write!(f, "j_nu_plus_m_{k}"),
            CurveId::LommelRoot(l) => write!(f, "rho_{l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub m: i32,
    pub curve_id: CurveId,
    /// (ν, x) pairs in increasing ν.
    pub samples: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectories {
    pub m: i32,
    pub curves: Vec<Trajectory>,
    /// Crossings of a ρ curve with a j_{ν,k} curve.
    pub crossings: Vec<NuStarSolution>,
}

/// Samples j_{ν,k}, j_{ν+m,k} (k <= `k_max`) and ρ_{m-1,ν,ℓ} (ℓ <= `l_max`)
/// on a ν grid and solves every crossing of a ρ curve with a j_{ν,k} curve.
///
/// Each sample is matched to the nearest value of its family at the
/// previous grid point; a match further than half the local spacing is an
/// index crossing error.
pub fn trace_trajectories(
    m: i32,
    nu_from: f64,
    nu_to: f64,
    step: f64,
    k_max: usize,
    l_max: usize,
) -> Result<Trajectories> {
    Base::Bessel.check(m.max(3), nu_from, nu_to)?;
    if m < 1 || !(step > 0.0) {
        return Err(domain(format!("trajectories need m >= 1 and step > 0, got m = {m}, step = {step}")));
    }
    let nus = grid(nu_from, nu_to, step);
    let k_max = k_max.max(1);
    let pts: Vec<Slice> = nus
        .par_iter()
        .map(|&nu| {
            let roots = if m >= 3 {
                let mut r = lommel_roots(m - 1, nu, LommelKind::Plain)?.zeros;
                r.truncate(l_max);
                r
            } else {
                Vec::new()
            };
            let base = zeros(FunctionId::BesselJ { order: nu }, k_max)?.zeros;
            let high = zeros(FunctionId::BesselJ { order: nu + m as f64 }, k_max)?.zeros;
            Ok(Slice { nu, curves: [base, high, roots] })
        })
        .collect::<Result<_>>()?;

    let mut curves = Vec::new();
    let makers: [fn(usize) -> CurveId; 3] = [CurveId::BaseZero, CurveId::HighZero, CurveId::LommelRoot];
    for (f, make) in makers.into_iter().enumerate() {
        for i in 0..pts[0].curves[f].len() {
            let mut samples = vec![(pts[0].nu, pts[0].curves[f][i])];
            for w in pts.windows(2) {
                let (prev, cur) = (&w[0].curves[f], &w[1].curves[f]);
                let x_prev = samples.last().unwrap().1;
                let (j, &x) = cur
                    .iter()
                    .enumerate()
                    .min_by(|a, b| (a.1 - x_prev).abs().total_cmp(&(b.1 - x_prev).abs()))
                    .ok_or_else(|| Error::IndexCrossing { nu: w[1].nu, detail: format!("{} vanished", make(i + 1)) })?;
                let spacing = local_spacing(prev, i);
                if j != i || (x - x_prev).abs() > 0.5 * spacing {
                    return Err(Error::IndexCrossing {
                        nu: w[1].nu,
                        detail: format!("{} jumped from {x_prev} to {x}; reduce the step", make(i + 1)),
                    });
                }
                samples.push((w[1].nu, x));
            }
            curves.push(Trajectory { m, curve_id: make(i + 1), samples });
        }
    }

    let mut cells = Vec::new();
    for w in pts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        for (li, (&ra, &rb)) in a.curves[2].iter().zip(&b.curves[2]).enumerate() {
            for ki in 0..k_max {
                if (ra - a.curves[0][ki]).signum() != (rb - b.curves[0][ki]).signum() {
                    cells.push((li + 1, ki + 1, a.nu, b.nu));
                }
            }
        }
    }
    let mut crossings: Vec<NuStarSolution> =
        cells.into_par_iter().map(|(l, k, lo, hi)| solve_nu_star(m, l, k, lo, hi)).collect::<Result<_>>()?;
    crossings.sort_by(|a, b| a.nu_star.total_cmp(&b.nu_star));
    Ok(Trajectories { m, curves, crossings })
}

/// Base zeros, higher-order zeros and Lommel roots at one order.
struct Slice {
    nu: f64,
    curves: [Vec<f64>; 3],
}

fn local_spacing(v: &[f64], i: usize) -> f64 {
    let left = if i > 0 { v[i] - v[i - 1] } else { v[i] };
    let right = if i + 1 < v.len() { v[i + 1] - v[i] } else { f64::INFINITY };
    left.min(right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_zero_meets_first_root_for_m3() {
        assert!(d_value(3, 1, 2, 3.0).unwrap() < 0.0);
        assert!(d_value(3, 1, 2, 5.0).unwrap() > 0.0);
        let s = solve_nu_star(3, 1, 2, 3.0, 5.0).unwrap();
        let rho = 2.0 * ((s.nu_star + 1.0) * (s.nu_star + 2.0)).sqrt();
        assert!((rho - s.x_star).abs() < 1e-10);
        assert!(s.residual_j < 1e-8 && s.residual_jm < 1e-8, "{s:?}");
    }

    #[test]
    fn first_zero_never_meets_a_root() {
        for nu in [-0.999, -0.9, -0.5, 0.0, 1.0, 5.0, 20.0] {
            assert!(d_value(3, 1, 1, nu).unwrap() > 0.0);
        }
        let e = solve_nu_star(3, 1, 1, -1.0 + 1e-6, 0.0).unwrap_err();
        assert!(matches!(e, Error::NoSignChange { .. }));
        assert!(scan_nu_star(3, 1, 0.0).unwrap().is_empty());
    }

    #[test]
    fn bad_arguments() {
        assert!(solve_nu_star(2, 1, 1, 0.0, 1.0).is_err());
        assert!(solve_nu_star(3, 1, 1, -1.0, 1.0).is_err());
        assert!(matches!(solve_nu_star(3, 2, 1, 0.0, 1.0), Err(Error::IndexCrossing { .. })));
        assert!(scan_nu_star(3, 0, 10.0).unwrap().is_empty());
    }

    #[test]
    fn m5_common_zero_in_narrow_bracket() {
        let s = solve_in_bracket(5, 5.619, 5.62).unwrap();
        assert_eq!(s.len(), 1, "{s:?}");
        let s = &s[0];
        assert!(s.nu_star > 5.619 && s.nu_star < 5.62);
        assert!(s.residual_j < 1e-8 && s.residual_jm < 1e-8);
    }

    #[test]
    fn cylinder_at_zero_angle_is_bessel() {
        let a = cylinder_nu_star(0.0, 3, 1, 2, 3.0, 5.0).unwrap();
        let b = solve_nu_star(3, 1, 2, 3.0, 5.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn trajectories_increase() {
        let t = trace_trajectories(4, 0.0, 6.0, 0.25, 3, 2).unwrap();
        for c in &t.curves {
            assert!(c.samples.windows(2).all(|w| w[1].1 > w[0].1), "{}", c.curve_id);
        }
        for s in &t.crossings {
            assert!(s.residual_jm < 1e-8);
        }
    }
}
