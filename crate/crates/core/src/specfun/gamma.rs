use std::f64::consts::PI;

use super::{SpecialError, SpecialValue};

/// Lanczos coefficients for g = 607/128, fifteen terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_048_8e-4,
    2.174_396_181_152_126_5e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162_5e-6,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Largest argument with a finite gamma value.
pub const GAMMA_OVERFLOW: f64 = 171.624_376_956_302_7;

/// Taylor coefficients of 1/Γ(z) about 0, starting at z¹.
const RGAMMA_TAYLOR: [f64; 28] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_9,
    -0.042_002_635_034_095_24,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_34,
    -0.009_621_971_527_876_974,
    0.007_218_943_246_663_1,
    -0.001_165_167_591_859_065,
    -2.152_416_741_149_51e-4,
    1.280_502_823_881_162e-4,
    -2.013_485_478_078_824e-5,
    -1.250_493_482_142_670_7e-6,
    1.133_027_231_981_696e-6,
    -2.056_338_416_977_607e-7,
    6.116_095_104_481_416e-9,
    5.002_007_644_469_223e-9,
    -1.181_274_570_487_020_1e-9,
    1.043_426_711_691_100_5e-10,
    7.782_263_439_905_071e-12,
    -3.696_805_618_642_206e-12,
    5.100_370_287_454_476e-13,
    -2.058_326_053_566_507e-14,
    -5.348_122_539_423_018e-15,
    1.226_778_628_238_260_8e-15,
    -1.181_259_301_697_458_8e-16,
    1.186_692_254_751_600_3e-18,
    1.412_380_655_318_031_8e-18,
];

/// sin(πx) with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = x % 2.0;
    let r = if r < -1.0 {
        r + 2.0
    } else if r > 1.0 {
        r - 2.0
    } else {
        r
    };
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// cos(πx) with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn lanczos_sum(z: f64) -> f64 {
    let mut acc = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    acc
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x) for x ≥ 0.5 by the Lanczos approximation, without overflow checks.
fn gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(z)
}

fn factorial_table() -> &'static [f64; 171] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[f64; 171]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [1.0; 171];
        for k in 1..171 {
            t[k] = t[k - 1] * k as f64;
        }
        t
    })
}

/// Γ(x) as a plain number; NaN at poles, ±∞ on overflow.
pub fn gamma_value(x: f64) -> f64 {
    if x.is_nan() || is_nonpositive_integer(x) {
        return f64::NAN;
    }
    if x > GAMMA_OVERFLOW {
        return f64::INFINITY;
    }
    if x == x.floor() && x <= 171.0 {
        return factorial_table()[x as usize - 1];
    }
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx)
        let s = sin_pi(x);
        let g = gamma_value(1.0 - x);
        if g.is_infinite() {
            return 0.0 * s.signum();
        }
        return PI / (s * g);
    }
    gamma_lanczos(x)
}

/// Γ(x) with an error estimate.
pub fn gamma(x: f64) -> Result<SpecialValue, SpecialError> {
    if x.is_nan() {
        return Err(SpecialError::Domain { func: "gamma", arg: x });
    }
    if is_nonpositive_integer(x) {
        return Err(SpecialError::Pole { func: "gamma", arg: x });
    }
    if x > GAMMA_OVERFLOW {
        return Err(SpecialError::Overflow { func: "gamma", arg: x });
    }
    let value = gamma_value(x);
    let scale = 1.0 + 0.05 * x.abs();
    Ok(SpecialValue::new(value, 8.0 * f64::EPSILON * scale * value.abs()))
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> Result<SpecialValue, SpecialError> {
    if x.is_nan() || x == f64::INFINITY {
        return Err(SpecialError::Domain { func: "ln_gamma", arg: x });
    }
    if is_nonpositive_integer(x) {
        return Err(SpecialError::Pole { func: "ln_gamma", arg: x });
    }
    let value = ln_gamma_value(x);
    Ok(SpecialValue::new(value, 8.0 * f64::EPSILON * (1.0 + value.abs())))
}

pub fn ln_gamma_value(x: f64) -> f64 {
    if x < 0.5 {
        // ln|Γ(x)| = ln π − ln|sin πx| − ln Γ(1−x)
        return PI.ln() - sin_pi(x).abs().ln() - ln_gamma_value(1.0 - x);
    }
    if x < 20.0 {
        return gamma_value(x).abs().ln();
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// 1/Γ(x), entire: zero at the nonpositive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x.abs() <= 0.5 {
        return rgamma_taylor(x);
    }
    if x > GAMMA_OVERFLOW {
        return (-ln_gamma_value(x)).exp();
    }
    1.0 / gamma_value(x)
}

/// 1/Γ(x) from its Taylor series; accurate for |x| ≤ 1/2.
fn rgamma_taylor(x: f64) -> f64 {
    let mut acc = 0.0;
    for c in RGAMMA_TAYLOR.iter().rev() {
        acc = acc * x + c;
    }
    acc * x
}

/// The Temme auxiliary quantities for |μ| ≤ 1/2:
/// (Γ₁(μ), Γ₂(μ), 1/Γ(1+μ), 1/Γ(1−μ)), where
/// Γ₁ = (1/Γ(1−μ) − 1/Γ(1+μ)) / 2μ and Γ₂ = (1/Γ(1−μ) + 1/Γ(1+μ)) / 2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Γ(1+x) = Σ c_{k} x^{k−1}
    let mut odd = 0.0; // Σ c_{2j+1} μ^{2j}
    let mut even = 0.0; // Σ c_{2j} μ^{2j-2}
    let mu2 = mu * mu;
    for j in (0..RGAMMA_TAYLOR.len() / 2).rev() {
        odd = odd * mu2 + RGAMMA_TAYLOR[2 * j];
        even = even * mu2 + RGAMMA_TAYLOR[2 * j + 1];
    }
    let plus = odd + mu * even;
    let minus = odd - mu * even;
    let gam1 = -even;
    let gam2 = odd;
    (gam1, gam2, plus, minus)
}
