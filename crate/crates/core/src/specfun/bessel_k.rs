//! Macdonald function K_ν for real order, with an exponentially scaled form.

use std::f64::consts::{FRAC_PI_2, PI};

use super::gamma::temme_gammas;
use super::{SpecialError, SpecialValue};

const EPS: f64 = 1e-16;
const MAXIT: usize = 100_000;
const TEMME_XMAX: f64 = 2.0;

/// Unscaled K underflows past this argument.
pub const K_UNDERFLOW_ARG: f64 = 700.0;

/// (e^x K_ν(x), e^x K_{ν+1}(x)) for ν ≥ 0 by Temme's series (x < 2) or
/// the Steed–Thompson–Barnett continued fraction, then upward recurrence.
fn k_scaled_pair(nu: f64, x: f64) -> (f64, f64) {
    let nl = (nu + 0.5) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let (mut rkmu, mut rk1);
    if x < TEMME_XMAX {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        for i in 1..=MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let scale = x.exp();
        rkmu = sum * scale;
        rk1 = sum1 * xi2 * scale;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 1..MAXIT {
            let fi = i as f64;
            a -= 2.0 * fi;
            c = -a * c / (fi + 1.0);
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    for i in 1..=nl {
        let next = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = next;
    }
    (rkmu, rk1)
}

/// e^x · K_ν(x) without domain checks.
pub fn bessel_k_scaled_value(nu: f64, x: f64) -> f64 {
    if !(x > 0.0) {
        return if x == 0.0 { f64::INFINITY } else { f64::NAN };
    }
    let nu = nu.abs();
    if nu == 0.5 {
        return (FRAC_PI_2 / x).sqrt();
    }
    k_scaled_pair(nu, x).0
}

/// K_ν(x) without domain checks; silently underflows to zero.
pub fn bessel_k_value(nu: f64, x: f64) -> f64 {
    let s = bessel_k_scaled_value(nu, x);
    if x > K_UNDERFLOW_ARG + 45.0 {
        return 0.0;
    }
    s * (-x).exp()
}

fn err_for(value: f64, nu: f64) -> f64 {
    (16.0 + 2.0 * nu.abs()) * EPS * value.abs()
}

/// K_ν(x) with an error estimate. Arguments past ≈700 are reported as
/// underflow; use [`bessel_k_scaled`] there.
pub fn bessel_k(nu: f64, x: f64) -> Result<SpecialValue, SpecialError> {
    if !nu.is_finite() {
        return Err(SpecialError::OrderOutOfRange { func: "bessel_k", order: nu });
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecialError::Domain { func: "bessel_k", arg: x });
    }
    if x > K_UNDERFLOW_ARG {
        return Err(SpecialError::Underflow { func: "bessel_k", arg: x });
    }
    let v = bessel_k_value(nu, x);
    Ok(SpecialValue::new(v, err_for(v, nu)))
}

/// e^x K_ν(x) with an error estimate.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<SpecialValue, SpecialError> {
    if !nu.is_finite() {
        return Err(SpecialError::OrderOutOfRange { func: "bessel_k_scaled", order: nu });
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecialError::Domain { func: "bessel_k_scaled", arg: x });
    }
    let v = bessel_k_scaled_value(nu, x);
    Ok(SpecialValue::new(v, err_for(v, nu)))
}
