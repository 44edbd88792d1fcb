//! Gamma-function helpers and exact trigonometry at multiples of π.

use std::f64::consts::PI;

/// Taylor coefficients of 1/Γ(z) about z = 0, starting at the z¹ term.
const RGAMMA_TAYLOR: [f64; 28] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
];

pub(crate) fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln|Γ(x)| and the sign of Γ(x).
pub(crate) fn ln_gamma(x: f64) -> (f64, f64) {
    let (v, s) = libm::lgamma_r(x);
    (v, if s < 0 { -1.0 } else { 1.0 })
}

/// Temme's auxiliary values for |mu| <= 1/2:
/// (gam1, gam2, 1/Γ(1+mu), 1/Γ(1-mu)) with
/// gam1 = (1/Γ(1-mu) - 1/Γ(1+mu)) / (2 mu) and gam2 = (1/Γ(1-mu) + 1/Γ(1+mu)) / 2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    debug_assert!(mu.abs() <= 0.5 + 1e-12);
    let mu2 = mu * mu;
    // odd part: Σ c_{2j+2} mu^{2j}, even part: Σ c_{2j+1} mu^{2j}
    let mut odd = 0.0;
    let mut even = 0.0;
    for j in (0..RGAMMA_TAYLOR.len() / 2).rev() {
        even = even * mu2 + RGAMMA_TAYLOR[2 * j];
        odd = odd * mu2 + RGAMMA_TAYLOR[2 * j + 1];
    }
    let gam1 = -odd;
    let gam2 = even;
    let gampl = gam2 - mu * gam1; // 1/Γ(1+mu)
    let gammi = gam2 + mu * gam1; // 1/Γ(1-mu)
    (gam1, gam2, gampl, gammi)
}

/// sin(πx), exact at integers and half-integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// cos(πx), exact at integers and half-integers.
pub(crate) fn cos_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.5 || r == 1.5 {
        return 0.0;
    }
    if r == 0.0 {
        return 1.0;
    }
    if r == 1.0 {
        return -1.0;
    }
    (PI * r).cos()
}

/// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1).
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (a + i as f64))
}
