//! Evaluation of J_ν, Y_ν, cylinder functions C_ν^α, J'_ν, the normalized
//! function 𝕁_ν(x) = Γ(ν+1)(x/2)^{-ν} J_ν(x) and K_0.
//!
//! Accuracy contract: for 0 <= x <= 100 and -1 < ν <= 60, J_ν is returned with
//! absolute error at most 1e-11 · max(|J_ν(x)|, sqrt(J_ν² + Y_ν²)), i.e.
//! relative to the local envelope; Y_ν satisfies the same bound on
//! 0.1 <= x <= 100, |ν| <= 60. K_0 is relatively accurate to 1e-9 on
//! [1e-3, 50]. Every result carries an error estimate that bounds the actual
//! error on the reference grid shipped with the tests.

mod bessel;
mod k0;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use bessel::MAX_ORDER;
pub use k0::{modified_k0, watson_integrand};

use crate::error::{domain, Result};
use crate::gamma::ln_gamma;
use crate::lommel;
use bessel::{check_order, is_integer, j_series, jy, scaled_series, series_region, EPS};

/// How a value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    BackwardRecurrence,
    Asymptotic,
    Connection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub method: Method,
}

/// A member of the Bessel/Lommel family.
///
/// The cylinder angle exists only on `Cylinder`; the polynomial degree only on
/// the Lommel kinds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionId {
    BesselJ {
        order: f64,
    },
    BesselY {
        order: f64,
    },
    /// cos α J_ν − sin α Y_ν with 0 <= α < π.
    Cylinder {
        order: f64,
        alpha: f64,
    },
    BesselJPrime {
        order: f64,
    },
    /// R_{m,ν}
    Lommel {
        order: f64,
        degree: i32,
    },
    /// R*_{m,ν}
    AssocLommel {
        order: f64,
        degree: i32,
    },
}

impl FunctionId {
    pub fn order(&self) -> f64 {
        match *self {
            FunctionId::BesselJ { order }
            | FunctionId::BesselY { order }
            | FunctionId::Cylinder { order, .. }
            | FunctionId::BesselJPrime { order }
            | FunctionId::Lommel { order, .. }
            | FunctionId::AssocLommel { order, .. } => order,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            FunctionId::Cylinder { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<i32> {
        match *self {
            FunctionId::Lommel { degree, .. } | FunctionId::AssocLommel { degree, .. } => Some(degree),
            _ => None,
        }
    }

    /// The same kind of function at a different order.
    pub fn with_order(&self, order: f64) -> FunctionId {
        let mut f = *self;
        match &mut f {
            FunctionId::BesselJ { order: o }
            | FunctionId::BesselY { order: o }
            | FunctionId::Cylinder { order: o, .. }
            | FunctionId::BesselJPrime { order: o }
            | FunctionId::Lommel { order: o, .. }
            | FunctionId::AssocLommel { order: o, .. } => *o = order,
        }
        f
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(match *self {
            FunctionId::BesselJ { order } => bessel_j(order, x)?.value,
            FunctionId::BesselY { order } => bessel_y(order, x)?.value,
            FunctionId::Cylinder { order, alpha } => cylinder(alpha, order, x)?.value,
            FunctionId::BesselJPrime { order } => bessel_j_prime(order, x)?.value,
            FunctionId::Lommel { order, degree } => lommel::lommel_eval(degree, order, x)?,
            FunctionId::AssocLommel { order, degree } => lommel::assoc_eval(degree, order, x)?,
        })
    }

    /// Value and x-derivative.
    pub fn eval_with_derivative(&self, x: f64) -> Result<(f64, f64)> {
        Ok(match *self {
            FunctionId::BesselJ { order } => (bessel_j(order, x)?.value, bessel_j_prime(order, x)?.value),
            FunctionId::BesselY { order } => (bessel_y(order, x)?.value, bessel_y_prime(order, x)?.value),
            FunctionId::Cylinder { order, alpha } => {
                (cylinder(alpha, order, x)?.value, cylinder_prime(alpha, order, x)?.value)
            }
            FunctionId::BesselJPrime { order } => {
                let j = bessel_j(order, x)?.value;
                let jp = bessel_j_prime(order, x)?.value;
                (jp, bessel_second_derivative(order, x, j, jp))
            }
            FunctionId::Lommel { order, degree } => lommel::lommel_eval_with_derivative(degree, order, x)?,
            FunctionId::AssocLommel { order, degree } => lommel::assoc_eval_with_derivative(degree, order, x)?,
        })
    }
}

/// f'' = -f'/x - (1 - ν²/x²) f for any solution of Bessel's equation.
pub fn bessel_second_derivative(nu: f64, x: f64, f: f64, fp: f64) -> f64 {
    -fp / x - (1.0 - nu * nu / (x * x)) * f
}

fn check_x(x: f64, what: &str) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        return Err(domain(format!("{what} requires x >= 0, got {x}")));
    }
    Ok(())
}

/// J_ν(x), x >= 0.
///
/// Orders below -1 are accepted through reflection; negative integer orders
/// use J_{-n} = (-1)^n J_n.
pub fn bessel_j(nu: f64, x: f64) -> Result<EvalResult> {
    check_x(x, "J")?;
    check_order(nu, x, "J")?;
    if nu < 0.0 && is_integer(nu) {
        let r = bessel_j(-nu, x)?;
        let s = if (nu as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(EvalResult { value: s * r.value, ..r });
    }
    if x == 0.0 || series_region(nu, x) {
        let s = j_series(nu, x)?;
        return Ok(EvalResult { value: s.value, abs_error_estimate: s.abs_err, method: Method::Series });
    }
    let r = jy(nu, x)?;
    Ok(EvalResult { value: r.j, abs_error_estimate: r.rel_err * r.modulus(), method: r.method })
}

/// 𝕁_ν(x) = Γ(ν+1)(x/2)^{-ν} J_ν(x) for ν > -1, x >= 0; 𝕁_ν(0) = 1.
pub fn bessel_j_scaled(nu: f64, x: f64) -> Result<EvalResult> {
    check_x(x, "scaled J")?;
    if !(nu > -1.0) {
        return Err(domain(format!("scaled J requires nu > -1, got {nu}")));
    }
    check_order(nu, x, "scaled J")?;
    if x == 0.0 || series_region(nu, x) {
        let s = scaled_series(nu, x);
        return Ok(EvalResult { value: s.value, abs_error_estimate: s.abs_err, method: Method::Series });
    }
    let r = bessel_j(nu, x)?;
    let (lg, _) = ln_gamma(nu + 1.0);
    let factor = (lg - nu * (0.5 * x).ln()).exp();
    Ok(EvalResult {
        value: factor * r.value,
        abs_error_estimate: factor * r.abs_error_estimate + 4.0 * EPS * (factor * r.value).abs(),
        method: r.method,
    })
}

/// 𝕁'_ν(x) = -(x / (2(ν+1))) 𝕁_{ν+1}(x).
pub fn bessel_j_scaled_prime(nu: f64, x: f64) -> Result<EvalResult> {
    let r = bessel_j_scaled(nu + 1.0, x)?;
    let f = -0.5 * x / (nu + 1.0);
    Ok(EvalResult { value: f * r.value, abs_error_estimate: f.abs() * r.abs_error_estimate, method: r.method })
}

/// Y_ν(x), x > 0.
pub fn bessel_y(nu: f64, x: f64) -> Result<EvalResult> {
    if !(x > 0.0) {
        return Err(domain(format!("Y requires x > 0, got {x}")));
    }
    let r = jy(nu, x)?;
    Ok(EvalResult { value: r.y, abs_error_estimate: r.rel_err * r.modulus(), method: r.method })
}

/// J'_ν(x) = (J_{ν-1}(x) - J_{ν+1}(x)) / 2.
///
/// At x = 0 the limit is returned when it is finite (ν = 0, ν = 1 or ν > 1).
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<EvalResult> {
    check_x(x, "J'")?;
    if x == 0.0 {
        let value = if nu == 1.0 {
            0.5
        } else if nu == 0.0 || nu > 1.0 {
            0.0
        } else {
            return Err(domain(format!("J'_nu(0) is unbounded for nu = {nu}")));
        };
        return Ok(EvalResult { value, abs_error_estimate: 0.0, method: Method::Series });
    }
    let lo = bessel_j(nu - 1.0, x)?;
    let hi = bessel_j(nu + 1.0, x)?;
    Ok(EvalResult {
        value: 0.5 * (lo.value - hi.value),
        abs_error_estimate: 0.5 * (lo.abs_error_estimate + hi.abs_error_estimate),
        method: if lo.method == hi.method { lo.method } else { Method::Connection },
    })
}

/// Y'_ν(x) = (Y_{ν-1}(x) - Y_{ν+1}(x)) / 2.
pub fn bessel_y_prime(nu: f64, x: f64) -> Result<EvalResult> {
    let lo = bessel_y(nu - 1.0, x)?;
    let hi = bessel_y(nu + 1.0, x)?;
    Ok(EvalResult {
        value: 0.5 * (lo.value - hi.value),
        abs_error_estimate: 0.5 * (lo.abs_error_estimate + hi.abs_error_estimate),
        method: if lo.method == hi.method { lo.method } else { Method::Connection },
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..PI).contains(&alpha) {
        return Err(domain(format!("cylinder angle must lie in [0, pi), got {alpha}")));
    }
    Ok(())
}

fn combine(alpha: f64, j: EvalResult, y: impl FnOnce() -> Result<EvalResult>) -> Result<EvalResult> {
    if alpha == 0.0 {
        return Ok(j);
    }
    let y = y()?;
    let (s, c) = alpha.sin_cos();
    Ok(EvalResult {
        value: c * j.value - s * y.value,
        abs_error_estimate: c.abs() * j.abs_error_estimate + s * y.abs_error_estimate,
        method: Method::Connection,
    })
}

/// C_ν^α(x) = cos α J_ν(x) − sin α Y_ν(x); at α = 0 this is exactly J_ν.
pub fn cylinder(alpha: f64, nu: f64, x: f64) -> Result<EvalResult> {
    check_alpha(alpha)?;
    if alpha != 0.0 && !(x > 0.0) {
        return Err(domain(format!("cylinder function requires x > 0, got {x}")));
    }
    combine(alpha, bessel_j(nu, x)?, || bessel_y(nu, x))
}

pub fn cylinder_prime(alpha: f64, nu: f64, x: f64) -> Result<EvalResult> {
    check_alpha(alpha)?;
    if alpha != 0.0 && !(x > 0.0) {
        return Err(domain(format!("cylinder function requires x > 0, got {x}")));
    }
    combine(alpha, bessel_j_prime(nu, x)?, || bessel_y_prime(nu, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    /// Plain power series, summed naively; accurate to ~1e-13 for x <= 9.
    fn naive_j(nu: f64, x: f64) -> f64 {
        let mut term = (0.5 * x).powf(nu) / libm::tgamma(nu + 1.0);
        let mut sum = term;
        for k in 1..200 {
            let kf = k as f64;
            term *= -0.25 * x * x / (kf * (nu + kf));
            sum += term;
        }
        sum
    }

    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let fa = f(a);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if (f(m) > 0.0) == (fa > 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn j_at_origin() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap().value, 1.0);
        assert_eq!(bessel_j(2.5, 0.0).unwrap().value, 0.0);
        assert!(bessel_j(-0.5, 0.0).is_err());
        assert!(bessel_j(1.0, -1.0).is_err());
    }

    #[test]
    fn half_integer_closed_forms() {
        // J_{1/2}(x) = sqrt(2/(πx)) sin x
        assert!(bessel_j(0.5, PI).unwrap().value.abs() < 1e-12);
        // Y_{1/2}(x) = -sqrt(2/(πx)) cos x
        assert!(bessel_y(0.5, PI / 2.0).unwrap().value.abs() < 1e-12);
        for &x in &[0.3, 2.0, 7.7, 31.0, 88.0] {
            let amp = (2.0 / (PI * x)).sqrt();
            assert!((bessel_j(0.5, x).unwrap().value - amp * x.sin()).abs() < 1e-14);
            assert!((bessel_j(-0.5, x).unwrap().value - amp * x.cos()).abs() < 1e-14);
            assert!((bessel_y(0.5, x).unwrap().value + amp * x.cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn first_zero_of_j0_from_series_oracle() {
        let z = bisect(|x| naive_j(0.0, x), 2.0, 3.0);
        assert!((z - 2.404_825_557_695_773).abs() < 1e-14);
        assert!(bessel_j(0.0, 2.404_825_557_695_773).unwrap().value.abs() < 1e-10);
    }

    #[test]
    fn scaled_function_examples() {
        assert_eq!(bessel_j_scaled(3.7, 0.0).unwrap().value, 1.0);
        for &x in &[0.0, 0.7, 3.0, 15.0, 60.0] {
            let a = bessel_j_scaled(0.0, x).unwrap().value;
            let b = bessel_j(0.0, x).unwrap().value;
            assert!((a - b).abs() < 1e-15);
        }
        let oracle = naive_j(1.0, 2.0);
        assert!((bessel_j_scaled(1.0, 2.0).unwrap().value - oracle).abs() < 1e-14);
    }

    #[test]
    fn scaled_derivative_matches_finite_difference() {
        for &(nu, x) in &[(0.0, 1.0), (1.5, 4.0), (-0.5, 7.0), (3.0, 20.0)] {
            let h = 1e-5;
            let fd =
                (bessel_j_scaled(nu, x + h).unwrap().value - bessel_j_scaled(nu, x - h).unwrap().value) / (2.0 * h);
            let d = bessel_j_scaled_prime(nu, x).unwrap().value;
            assert!((fd - d).abs() < 1e-8 * (1.0 + d.abs()), "nu={nu} x={x}");
        }
    }

    #[test]
    fn y_connection_formula() {
        for &nu in &[0.3, 1.7, 4.25] {
            for &x in &[0.5, 3.0, 12.0, 40.0] {
                let (s, c) = (nu * PI).sin_cos();
                let conn = (bessel_j(nu, x).unwrap().value * c - bessel_j(-nu, x).unwrap().value) / s;
                let y = bessel_y(nu, x).unwrap().value;
                assert!((conn - y).abs() < 1e-10 * (1.0 + y.abs()), "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn cross_product_wronskian() {
        let (nu, x) = (1.3, 5.0);
        let j = bessel_j(nu, x).unwrap().value;
        let y = bessel_y(nu, x).unwrap().value;
        let jp = bessel_j_prime(nu, x).unwrap().value;
        let yp = bessel_y_prime(nu, x).unwrap().value;
        assert!((j * yp - jp * y - 2.0 / (PI * x)).abs() < 1e-10);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(bessel_j_prime(1.0, 0.0).unwrap().value, 0.5);
        assert!((bessel_j_prime(1.0, 1e-9).unwrap().value - 0.5).abs() < 1e-12);
        let j01 = 2.404_825_557_695_773;
        let d = bessel_j_prime(0.0, j01).unwrap().value;
        assert!((d + bessel_j(1.0, j01).unwrap().value).abs() < 1e-15);
        // first zero of J_1' by bisection on (J_0 - J_2)/2 built from the naive series
        let z = bisect(|x| 0.5 * (naive_j(0.0, x) - naive_j(2.0, x)), 1.0, 2.5);
        assert!((z - 1.841_183_781_340_659_3).abs() < 1e-12);
        assert!(bessel_j_prime(1.0, 1.841_183_781_340_659_3).unwrap().value.abs() < 1e-9);
    }

    #[test]
    fn cylinder_examples() {
        for &(nu, x) in &[(0.0, 1.0), (2.5, 7.0), (1.0, 3.0)] {
            let j = bessel_j(nu, x).unwrap().value;
            let y = bessel_y(nu, x).unwrap().value;
            assert_eq!(cylinder(0.0, nu, x).unwrap().value, j);
            assert!((cylinder(PI / 2.0, nu, x).unwrap().value + y).abs() < 1e-15);
        }
        let expect = (bessel_j(1.0, 3.0).unwrap().value - bessel_y(1.0, 3.0).unwrap().value) * FRAC_1_SQRT_2;
        assert!((cylinder(PI / 4.0, 1.0, 3.0).unwrap().value - expect).abs() < 1e-15);
        assert!(cylinder(PI, 1.0, 3.0).is_err());
        assert!(cylinder(-0.1, 1.0, 3.0).is_err());
    }

    #[test]
    fn function_id_dispatch() {
        let f = FunctionId::Cylinder { order: 2.0, alpha: 0.0 };
        assert_eq!(f.eval(4.0).unwrap(), bessel_j(2.0, 4.0).unwrap().value);
        assert_eq!(f.alpha(), Some(0.0));
        assert_eq!(f.degree(), None);
        let l = FunctionId::Lommel { order: 1.5, degree: 1 };
        assert!((l.eval(2.0).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(l.with_order(2.0).order(), 2.0);
    }
}
