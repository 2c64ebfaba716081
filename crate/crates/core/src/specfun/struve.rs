//! Struve function **H**_ν.
//!
//! The power series is summed in double-double up to x = 30. Past that the
//! function is split as H_ν = Y_ν + R_ν, where R_ν is the smooth,
//! non-oscillating remainder given by its asymptotic series.

use std::f64::consts::PI;

use super::bessel_j::bessel_y_value;
use super::dd::Dd;
use super::gamma::rgamma;
use super::{Order, SpecialError, SpecialValue};

const SERIES_XMAX: f64 = 30.0;
/// Public evaluation is capped here; the quadrature engine handles the
/// far tail through [`struve_remainder`].
pub const STRUVE_XMAX: f64 = 200.0;

/// Power series Σ (−1)^k (x/2)^{2k+ν+1} / (Γ(k+3/2) Γ(k+ν+3/2)).
pub fn struve_h_series(nu: f64, x: f64) -> f64 {
    let z = -(Dd::prod(x, x) * 0.25);
    let a = Dd::new(1.5);
    let b = Dd::new(nu) + Dd::new(1.5);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..4000 {
        let kf = Dd::new(k as f64);
        term = term * z / ((kf + a) * (kf + b));
        sum = sum + term;
        if term.hi.abs() < 1e-32 * sum.hi.abs() && (k as f64) > 0.5 * x {
            break;
        }
    }
    (0.5 * x).powf(nu + 1.0) * rgamma(1.5) * rgamma(nu + 1.5) * sum.to_f64()
}

/// R_ν(x) = H_ν(x) − Y_ν(x) from its asymptotic series
/// (1/π) Σ Γ(k+1/2) (x/2)^{ν−2k−1} / Γ(ν+1/2−k). Returns (value, last term).
pub fn struve_remainder(nu: f64, x: f64) -> (f64, f64) {
    let half = 0.5 * x;
    let mut term = PI.sqrt() * half.powf(nu - 1.0) * rgamma(nu + 0.5) / PI;
    // ν + 1/2 a nonpositive integer: every coefficient vanishes.
    if term == 0.0 {
        return (0.0, 0.0);
    }
    let mut sum = term;
    let mut last = term.abs();
    for k in 0..200 {
        let kf = k as f64;
        let next = term * (kf + 0.5) * (nu - 0.5 - kf) / (half * half);
        if next == 0.0 {
            return (sum, 0.0);
        }
        if next.abs() >= last {
            return (sum, last);
        }
        if next.abs() < 1e-17 * sum.abs() {
            return (sum + next, next.abs());
        }
        sum += next;
        term = next;
        last = next.abs();
    }
    (sum, last)
}

/// H_ν(x) without domain checks, valid for all x > 0.
pub fn struve_h_value(nu: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return if x == 0.0 && nu > -1.0 { 0.0 } else { f64::NAN };
    }
    if nu == 0.5 {
        return (2.0 / (PI * x)).sqrt() * 2.0 * (0.5 * x).sin().powi(2);
    }
    if x <= SERIES_XMAX {
        struve_h_series(nu, x)
    } else {
        bessel_y_value(nu, x) + struve_remainder(nu, x).0
    }
}

/// H_ν(x) with an error estimate, ν ∈ [−1.4, 5], 0 < x ≤ 200.
pub fn struve_h(nu: Order, x: f64) -> Result<SpecialValue, SpecialError> {
    let nu = nu.value();
    if !(-1.4..=5.0).contains(&nu) {
        return Err(SpecialError::OrderOutOfRange { func: "struve_h", order: nu });
    }
    if !(x > 0.0) || x > STRUVE_XMAX {
        return Err(SpecialError::Domain { func: "struve_h", arg: x });
    }
    let value = struve_h_value(nu, x);
    let err = if x <= SERIES_XMAX {
        32.0 * f64::EPSILON * value.abs().max(1e-300)
    } else {
        let (_, last) = struve_remainder(nu, x);
        last + 64.0 * f64::EPSILON * (value.abs() + (2.0 / (PI * x)).sqrt())
    };
    Ok(SpecialValue::new(value, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_closed_form_vs_series() {
        for &x in &[0.1, 1.0, PI, 10.0, 29.0] {
            let exact = (2.0 / (PI * x)).sqrt() * 2.0 * (0.5 * x).sin().powi(2);
            let s = struve_h_series(0.5, x);
            assert!((s - exact).abs() < 1e-14 * exact.abs().max(1e-3), "x={x}: {s} vs {exact}");
        }
    }

    #[test]
    fn remainder_matches_series_at_switch() {
        for &nu in &[-1.4, -0.3, 0.0, 1.0, 2.5, 5.0] {
            let x = SERIES_XMAX;
            let series = struve_h_series(nu, x);
            let split = bessel_y_value(nu, x) + struve_remainder(nu, x).0;
            assert!((series - split).abs() < 1e-11 * series.abs().max(1.0), "nu={nu}: {series} vs {split}");
        }
    }

    #[test]
    fn origin_and_domain() {
        assert_eq!(struve_h_value(0.0, 0.0), 0.0);
        assert!(struve_h(Order::new(0.0).unwrap(), 0.0).is_err());
        assert!(struve_h(Order::new(0.0).unwrap(), 250.0).is_err());
        assert!(struve_h(Order::new(-1.6).unwrap(), 1.0).is_err());
    }
}
