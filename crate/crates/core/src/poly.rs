//! Real roots of real polynomials through companion-matrix eigenvalues.

use nalgebra::DMatrix;

/// p(t) and p'(t) for coefficients in ascending powers.
pub(crate) fn horner(coeffs: &[f64], t: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs.iter().rev() {
        dp = dp * t + p;
        p = p * t + c;
    }
    (p, dp)
}

/// Approximate real roots (ascending) of Σ c_k t^k.
///
/// The variable is rescaled so that the constant and leading coefficients have
/// equal magnitude before the companion matrix is formed. Eigenvalues whose
/// imaginary part is small relative to their modulus are returned as real
/// candidates; callers confirm them with a sign change.
pub(crate) fn real_root_estimates(coeffs: &[f64]) -> Vec<f64> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c[c.len() - 1] == 0.0 {
        c.pop();
    }
    // factor out roots at zero
    let mut zeros = 0;
    while c.len() > 1 && c[0] == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    let n = c.len() - 1;
    let mut out = vec![0.0; zeros];
    if n == 0 {
        return out;
    }
    let s = (c[0].abs() / c[n].abs()).powf(1.0 / n as f64);
    let scaled: Vec<f64> = c.iter().enumerate().map(|(k, &a)| a * s.powi(k as i32)).collect();
    let lead = scaled[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -scaled[i] / lead;
    }
    for z in m.complex_eigenvalues().iter() {
        if z.im.abs() <= 1e-6 * (1.0 + z.re.abs()) {
            out.push(z.re * s);
        }
    }
    out.sort_by(|a, b| a.total_cmp(b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_value_and_slope() {
        // 1 - 3t + 2t^2
        let (p, dp) = horner(&[1.0, -3.0, 2.0], 2.0);
        assert_eq!(p, 3.0);
        assert_eq!(dp, 5.0);
    }

    #[test]
    fn roots_of_products() {
        // (t - 1)(t - 4)(t + 2) = t^3 - 3t^2 - 6t + 8
        let r = real_root_estimates(&[8.0, -6.0, -3.0, 1.0]);
        assert_eq!(r.len(), 3);
        for (a, b) in r.iter().zip([-2.0, 1.0, 4.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        // t^2 + 1 has no real roots
        assert!(real_root_estimates(&[1.0, 0.0, 1.0]).is_empty());
        // badly scaled: (t - 1e6)(t - 3e6)
        let r = real_root_estimates(&[3e12, -4e6, 1.0]);
        assert!((r[0] / 1e6 - 1.0).abs() < 1e-12 && (r[1] / 3e6 - 1.0).abs() < 1e-12);
    }
}
