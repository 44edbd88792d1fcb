//! Real-order Bessel functions of the first and second kind.
//!
//! Three evaluation routes are used:
//!
//! * the power series of J for small arguments,
//! * Steed's method: the continued fraction for J'/J, downward recurrence to an
//!   order in [-1/2, 1/2], then either Temme's series (x < 2) or the complex
//!   continued fraction CF2 (x >= 2) for the normalization and for Y,
//! * Hankel's asymptotic expansion for x >= max(25, ν²).
//!
//! Negative orders are reduced to positive ones by reflection.

use std::f64::consts::{FRAC_2_PI, PI};

use super::Method;
use crate::error::{domain, Error, Result};
use crate::gamma::{cos_pi, gamma, ln_gamma, sin_pi, temme_gammas};

pub(crate) const EPS: f64 = f64::EPSILON;

/// Orders beyond this magnitude are rejected as overflow-prone.
pub const MAX_ORDER: f64 = 500.0;

/// J, Y and their x-derivatives at one (ν, x), with a relative error scale.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Jy {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
    pub method: Method,
    /// Bound on the absolute error of j and y, relative to `modulus()`.
    pub rel_err: f64,
}

impl Jy {
    /// sqrt(J² + Y²), the envelope of the oscillatory solutions.
    pub fn modulus(&self) -> f64 {
        self.j.hypot(self.y)
    }
}

/// Power series result: value and absolute error bound.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesValue {
    pub value: f64,
    pub abs_err: f64,
}

pub(crate) fn is_integer(nu: f64) -> bool {
    nu == nu.round()
}

pub(crate) fn check_order(nu: f64, x: f64, what: &'static str) -> Result<()> {
    if !nu.is_finite() || !x.is_finite() {
        return Err(domain(format!("{what}: non-finite argument (nu = {nu}, x = {x})")));
    }
    if nu.abs() > MAX_ORDER {
        return Err(Error::Overflow { what, order: nu, x });
    }
    Ok(())
}

/// Σ_k (-t)^k / (k! (ν+1)_k) with t = (x/2)², i.e. Γ(ν+1)(x/2)^{-ν} J_ν(x).
///
/// Valid for any ν that is not a negative integer. Uses Neumaier summation.
pub(crate) fn scaled_series(nu: f64, x: f64) -> SeriesValue {
    let t = 0.25 * x * x;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64;
    let mut abs_sum = 1.0_f64;
    let mut k = 0usize;
    loop {
        k += 1;
        let kf = k as f64;
        term *= -t / (kf * (nu + kf));
        let s = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - s) + term } else { (term - s) + sum };
        sum = s;
        abs_sum += term.abs();
        if kf > t.sqrt() && kf + nu > 0.0 && term.abs() <= 0.25 * EPS * (sum + comp).abs() {
            break;
        }
        if k > 2000 {
            break;
        }
    }
    let value = sum + comp;
    SeriesValue { value, abs_err: 2.0 * term.abs() + (k as f64 + 4.0) * EPS * abs_sum }
}

/// J_ν(x) from the power series, for ν not a negative integer and x >= 0.
pub(crate) fn j_series(nu: f64, x: f64) -> Result<SeriesValue> {
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(SeriesValue { value: 1.0, abs_err: 0.0 })
        } else if nu > 0.0 {
            Ok(SeriesValue { value: 0.0, abs_err: 0.0 })
        } else {
            Err(Error::Overflow { what: "J", order: nu, x })
        };
    }
    let s = scaled_series(nu, x);
    // (x/2)^ν / Γ(ν+1)
    let (lg, sign) = ln_gamma(nu + 1.0);
    let log_lead = nu * (0.5 * x).ln() - lg;
    if log_lead > 700.0 {
        return Err(Error::Overflow { what: "J", order: nu, x });
    }
    // the direct quotient is accurate to a few ulps; exp(log_lead) loses
    // about |log_lead| ulps and is kept for arguments that would overflow
    let (lead, lead_err) = if nu + 1.0 < 170.0 && log_lead.abs() < 600.0 {
        ((0.5 * x).powf(nu) / gamma(nu + 1.0), 8.0 * EPS)
    } else {
        (sign * log_lead.exp(), (8.0 + log_lead.abs()) * EPS)
    };
    Ok(SeriesValue { value: lead * s.value, abs_err: (lead * s.abs_err).abs() + lead_err * (lead * s.value).abs() })
}

/// True where the power series for J is used by `bessel_j`.
pub(crate) fn series_region(nu: f64, x: f64) -> bool {
    x <= 2.0 || (nu >= 0.0 && 0.25 * x * x <= 0.25 * (nu + 1.0))
}

fn asymptotic_region(nu: f64, x: f64) -> bool {
    x >= 25.0 && x >= nu * nu
}

/// Hankel expansion: returns (J_ν, Y_ν, abs error bound).
fn hankel(nu: f64, x: f64) -> (f64, f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut omitted = 0.0;
    for k in 1..400 {
        let kf = k as f64;
        if kf > 2.0 * x {
            // past the smallest term; the remainder is below e^{-2x}
            omitted = term.abs();
            break;
        }
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        // a_k / x^k alternates between Q (odd k) and P (even k) with sign (-1)^{⌊k/2⌋}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * term;
        } else {
            p += sign * term;
        }
        if term.abs() < 0.1 * EPS {
            omitted = term.abs();
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let amp = (FRAC_2_PI / x).sqrt();
    let j = amp * (p * c - q * s);
    let y = amp * (p * s + q * c);
    // rounding of chi contributes a phase error of order EPS·x
    (j, y, amp * (omitted + (8.0 + x) * EPS * (p.abs() + q.abs())))
}

/// Steed's method for ν >= 0, x > 0.
fn steed(nu: f64, x: f64) -> Result<Jy> {
    const FPMIN: f64 = 1e-290;
    const BIG: f64 = 1e250;
    const XMIN: f64 = 2.0;
    let maxit = 20_000 + 20 * (x as usize);

    let nl = if x < XMIN { (nu + 0.5) as usize } else { (nu - x + 1.5).max(0.0) as usize };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν / J_ν
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0_f64;
    let mut c = h;
    let mut converged = false;
    for _ in 0..maxit {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence { routine: "CF1", lo: x, hi: x });
    }

    // downward recurrence from ν to μ, rescaling to stay in range
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > BIG {
            rjl /= BIG;
            rjpl /= BIG;
            rjl1 /= BIG;
            rjp1 /= BIG;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1, method);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = FRAC_2_PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..maxit {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence { routine: "Temme series", lo: x, hi: x });
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
        method = Method::Series;
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut ok = false;
        for i in 2..maxit {
            a += (2 * (i - 1)) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence { routine: "CF2", lo: x, hi: x });
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        // p Y + q J rather than Y (p + q / γ): finite at zeros of Y
        let rymup = p * rymu + q * rjmu;
        ry1 = xmu * xi * rymu - rymup;
        method = Method::BackwardRecurrence;
    }

    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    let jp = rjp1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let y = rymu;
    let yp = nu * xi * rymu - ry1;
    if !(j.is_finite() && y.is_finite() && jp.is_finite() && yp.is_finite()) {
        return Err(Error::Overflow { what: "J/Y", order: nu, x });
    }
    Ok(Jy { j, y, jp, yp, method, rel_err: EPS * (50.0 + 4.0 * x + nl as f64) })
}

fn jy_nonneg(nu: f64, x: f64) -> Result<Jy> {
    if asymptotic_region(nu, x) {
        let (j, y, e0) = hankel(nu, x);
        let (j1, y1, e1) = hankel(nu + 1.0, x);
        let m = j.hypot(y);
        return Ok(Jy {
            j,
            y,
            jp: nu / x * j - j1,
            yp: nu / x * y - y1,
            method: Method::Asymptotic,
            rel_err: (e0 + e1) / m + 4.0 * EPS,
        });
    }
    steed(nu, x)
}

/// J, Y, J', Y' for any real order with |ν| <= MAX_ORDER and x > 0.
pub(crate) fn jy(nu: f64, x: f64) -> Result<Jy> {
    check_order(nu, x, "J/Y")?;
    if x <= 0.0 {
        return Err(domain(format!("J/Y pair requires x > 0, got {x}")));
    }
    if nu >= 0.0 {
        return jy_nonneg(nu, x);
    }
    let a = -nu;
    let r = jy_nonneg(a, x)?;
    if is_integer(a) {
        let s = if (a as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(Jy { j: s * r.j, y: s * r.y, jp: s * r.jp, yp: s * r.yp, ..r });
    }
    // J_{-a} = cos(aπ) J_a - sin(aπ) Y_a, Y_{-a} = sin(aπ) J_a + cos(aπ) Y_a
    let (c, s) = (cos_pi(a), sin_pi(a));
    Ok(Jy {
        j: c * r.j - s * r.y,
        y: s * r.j + c * r.y,
        jp: c * r.jp - s * r.yp,
        yp: s * r.jp + c * r.yp,
        method: Method::Connection,
        rel_err: r.rel_err + 2.0 * EPS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steed_and_hankel_agree_where_both_apply() {
        for &nu in &[0.0, 0.5, 1.3, 3.0, 4.9] {
            for &x in &[26.0, 33.3, 60.0, 99.0] {
                let a = steed(nu, x).unwrap();
                let (j, y, _) = hankel(nu, x);
                let m = j.hypot(y);
                assert!((a.j - j).abs() < 5e-13 * m, "J nu={nu} x={x}: {} vs {j}", a.j);
                assert!((a.y - y).abs() < 5e-13 * m, "Y nu={nu} x={x}: {} vs {y}", a.y);
            }
        }
    }

    #[test]
    fn series_and_steed_agree_on_overlap() {
        for &nu in &[0.0, 0.25, 1.0, 2.7, 8.5] {
            for &x in &[0.3, 1.0, 1.99, 2.0] {
                let s = j_series(nu, x).unwrap();
                let a = steed(nu, x).unwrap();
                assert!((s.value - a.j).abs() < 1e-14 * (1.0 + a.modulus()), "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn reflection_matches_series_for_negative_order() {
        for &nu in &[-0.9, -0.5, -0.25, -1.5] {
            for &x in &[0.4, 1.2, 1.9] {
                let s = j_series(nu, x).unwrap();
                let r = jy(nu, x).unwrap();
                assert!((s.value - r.j).abs() < 1e-13 * (1.0 + s.value.abs()), "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn steed_at_a_zero_of_y() {
        // Y_{5/2} vanishes near 3.9595
        let a = steed(2.5, 3.9595279165010955).unwrap();
        assert!(a.y.abs() < 1e-6 && a.yp.is_finite());
    }

    #[test]
    fn scaled_series_is_one_at_origin() {
        assert_eq!(scaled_series(3.7, 0.0).value, 1.0);
    }
}
