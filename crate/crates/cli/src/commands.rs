use bessel_interlace::continuation::{
    cylinder_nu_star, cylinder_scan_nu_star, cylinder_solve_in_bracket, scan_nu_star, solve_in_bracket, solve_nu_star,
    trace_trajectories, NuStarSolution,
};
use bessel_interlace::interlace::{
    derivative_wronskian_series, verify_with, wronskian_series, Family, InterlaceReport, Pattern, Source, Tolerances,
};
use bessel_interlace::lommel::{eta_limit, LommelCoefficients, LommelKind};
use bessel_interlace::zeros::zeros_with_tol;
use bessel_interlace::{Error, FunctionId};
use serde::Serialize;

use crate::config::RunConfig;
use crate::table::{num, Table};

/// Residual bound for a reported common zero.
pub const COMMON_RESIDUAL: f64 = 1e-8;

pub struct Output {
    pub json: serde_json::Value,
    pub table: Table,
    /// False when a verification failed; the process exits with status 1.
    pub ok: bool,
    pub notes: Vec<String>,
}

fn output<T: Serialize>(value: &T, table: Table, ok: bool) -> Output {
    Output { json: serde_json::to_value(value).expect("reports serialize"), table, ok, notes: Vec::new() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ZeroKind {
    J,
    Y,
    C,
    Jp,
}

pub fn zeros(kind: ZeroKind, nu: f64, alpha: Option<f64>, count: usize, cfg: &RunConfig) -> Result<Output, Error> {
    let fid = match (kind, alpha) {
        (ZeroKind::J, _) => FunctionId::BesselJ { order: nu },
        (ZeroKind::Y, _) => FunctionId::BesselY { order: nu },
        (ZeroKind::C, a) => FunctionId::Cylinder { order: nu, alpha: a.unwrap_or(0.0) },
        (ZeroKind::Jp, _) => FunctionId::BesselJPrime { order: nu },
    };
    let list = zeros_with_tol(fid, count, cfg.zero_tol)?;
    let mut t = Table::new(&["k", "zero", "residual"]);
    for (i, (z, r)) in list.zeros.iter().zip(&list.residuals).enumerate() {
        t.push(vec![(i + 1).to_string(), num(*z), num(*r)]);
    }
    Ok(output(&list, t, true))
}

pub fn lommel(m: i32, nu: f64, assoc: bool, roots: bool, cfg: &RunConfig) -> Result<Output, Error> {
    let kind = if assoc { LommelKind::Associated } else { LommelKind::Plain };
    if roots {
        let fid = if assoc {
            FunctionId::AssocLommel { order: nu, degree: m }
        } else {
            FunctionId::Lommel { order: nu, degree: m }
        };
        let list = zeros_with_tol(fid, usize::MAX, cfg.zero_tol)?;
        let mut t = Table::new(&["l", "root", "residual"]);
        for (i, (z, r)) in list.zeros.iter().zip(&list.residuals).enumerate() {
            t.push(vec![(i + 1).to_string(), num(*z), num(*r)]);
        }
        return Ok(output(&list, t, true));
    }
    let c = LommelCoefficients::new(m, nu, kind)?;
    let mut t = Table::new(&["k", "power_of_half_x", "coefficient"]);
    for (k, v) in c.coeffs.iter().enumerate() {
        t.push(vec![k.to_string(), (2 * k as i32 - m).to_string(), num(*v)]);
    }
    Ok(output(&c, t, true))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyArg {
    J,
    C,
    Jp,
}

pub fn interlace(
    family: FamilyArg,
    m: i32,
    nu: f64,
    k: usize,
    alpha: Option<f64>,
    plain: bool,
    cfg: &RunConfig,
) -> Result<Output, Error> {
    let family = match family {
        FamilyArg::J => Family::BesselJ,
        FamilyArg::C => Family::Cylinder { alpha: alpha.unwrap_or(0.0) },
        FamilyArg::Jp => Family::Derivative,
    };
    let tol = Tolerances { common: cfg.common_tol, dedup: cfg.dedup_tol };
    let pattern = if plain { Pattern::Plain } else { Pattern::Generalized };
    let mut report = verify_with(family, m, nu, k, pattern, &tol)?;
    let table = interlace_table(&report);
    let mut notes = Vec::new();
    if let Some(v) = report.violations.first() {
        notes.push(format!("first violation at position {} (x = {})", v.position, v.value));
    }
    if !cfg.verbose {
        report.violations.truncate(1);
    }
    let ok = report.ok;
    let mut out = output(&report, table, ok);
    out.notes = notes;
    Ok(out)
}

fn interlace_table(r: &InterlaceReport) -> Table {
    let mut rows: Vec<(f64, &'static str)> = r.base_zeros.iter().map(|&x| (x, "base_zero")).collect();
    rows.extend(r.skipped_base_zeros.iter().map(|&x| (x, "skipped_common_zero")));
    rows.extend(r.merged.iter().map(|e| {
        let role = match e.source {
            Source::HigherOrderZero => "higher_order_zero",
            Source::LommelRoot => "lommel_root",
            Source::CommonZero => "common_zero",
        };
        (e.value, role)
    }));
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(b.1)));
    let mut t = Table::new(&["position", "x", "role"]);
    for (i, (x, role)) in rows.into_iter().enumerate() {
        t.push(vec![(i + 1).to_string(), num(x), role.to_string()]);
    }
    t
}

pub enum CommonZeroQuery {
    Single { l: usize, k: usize, lo: f64, hi: f64 },
    Bracket { lo: f64, hi: f64 },
    Scan { nu_max: f64, k_max: usize },
}

pub fn common_zero(m: i32, query: CommonZeroQuery, alpha: Option<f64>) -> Result<Output, Error> {
    let alpha = alpha.unwrap_or(0.0);
    let sols: Vec<NuStarSolution> = match query {
        CommonZeroQuery::Single { l, k, lo, hi } => {
            vec![if alpha == 0.0 { solve_nu_star(m, l, k, lo, hi)? } else { cylinder_nu_star(alpha, m, l, k, lo, hi)? }]
        }
        CommonZeroQuery::Bracket { lo, hi } => {
            let s =
                if alpha == 0.0 { solve_in_bracket(m, lo, hi)? } else { cylinder_solve_in_bracket(alpha, m, lo, hi)? };
            if s.is_empty() {
                return Err(Error::NoSignChange { lo, hi, d_lo: f64::NAN, d_hi: f64::NAN });
            }
            s
        }
        CommonZeroQuery::Scan { nu_max, k_max } => {
            if alpha == 0.0 {
                scan_nu_star(m, k_max, nu_max)?
            } else {
                cylinder_scan_nu_star(alpha, m, k_max, nu_max)?
            }
        }
    };
    let ok = sols.iter().all(|s| s.residual_j < COMMON_RESIDUAL && s.residual_jm < COMMON_RESIDUAL);
    let mut t = Table::new(&["m", "l", "k", "nu_star", "x_star", "residual_j", "residual_jm", "nu_lo", "nu_hi"]);
    for s in &sols {
        t.push(vec![
            s.m.to_string(),
            s.l.to_string(),
            s.k.to_string(),
            num(s.nu_star),
            num(s.x_star),
            num(s.residual_j),
            num(s.residual_jm),
            num(s.bracket.0),
            num(s.bracket.1),
        ]);
    }
    Ok(output(&sols, t, ok))
}

pub fn wronskian(m: i32, nu: f64, x: f64, deriv: bool, cfg: &RunConfig) -> Result<Output, Error> {
    let s = if deriv {
        derivative_wronskian_series(m, nu, x, cfg.truncation)?
    } else {
        wronskian_series(m, nu, x, cfg.truncation)?
    };
    let mut t = Table::new(&["x", "direct", "decomposed", "series", "terms", "tail_bound", "near_singular"]);
    t.push(vec![
        num(s.x),
        num(s.direct),
        num(s.decomposed),
        num(s.series),
        s.terms.to_string(),
        num(s.tail_bound),
        s.near_singular.to_string(),
    ]);
    let mut out = output(&s, t, s.consistent());
    if s.near_singular {
        out.notes.push(format!("x = {x} lies within 1e-6 of a zero of J_(nu+m); the series used the limiting term"));
    }
    Ok(out)
}

pub fn trajectory(m: i32, from: f64, to: f64, step: f64, k_max: usize, l_max: usize) -> Result<Output, Error> {
    let t = trace_trajectories(m, from, to, step, k_max, l_max)?;
    let mut table = Table::new(&["curve_id", "nu", "x"]);
    for c in &t.curves {
        for &(nu, x) in &c.samples {
            table.push(vec![c.curve_id.to_string(), num(nu), num(x)]);
        }
    }
    let mut out = output(&t, table, true);
    for s in &t.crossings {
        out.notes.push(format!("crossing rho_{} / j_nu_{} at nu* = {}", s.l, s.k, s.nu_star));
    }
    Ok(out)
}

pub fn eta(n: i32) -> Result<Output, Error> {
    let e = eta_limit(n)?;
    let mut t = Table::new(&["index", "eta"]);
    for (i, r) in e.roots.iter().enumerate() {
        t.push(vec![(i + 1).to_string(), num(*r)]);
    }
    Ok(output(&e, t, true))
}
