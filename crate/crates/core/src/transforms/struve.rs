//! 𝔥_ν{f}(y) = ∫ √(xy) H_ν(xy) f(x) dx.
//!
//! Up to xy = 30 the kernel comes from the power series. Beyond, H_ν = Y_ν + R_ν:
//! the Y_ν part is summed over its zeros and the smooth remainder R_ν is
//! integrated on the mapped tail.

use super::{decaying_tail, finish, Decay, RealFunction, TransformError, TransformKind, TransformValue};
use crate::quadrature::{
    integrate_finite, integrate_oscillatory, integrate_semi_infinite, BesselKind, Integrand, QuadConfig, TailClass,
};
use crate::specfun::{bessel_y_value, struve_h_series, struve_remainder, Order};

const SPLIT: f64 = 30.0;

pub fn struve_transform(
    nu: Order,
    f: &dyn RealFunction,
    y: f64,
    cfg: &QuadConfig,
) -> Result<TransformValue, TransformError> {
    TransformKind::StruveTransform(nu).validate()?;
    super::check_point("struve_transform", y)?;
    let nu = nu.value();
    let s = f.shape();
    if let Decay::Oscillating { .. } = s.decay {
        return Err(TransformError::Unsupported {
            kind: "struve_transform",
            reason: "products of two oscillating factors are not supported",
        });
    }
    let x0 = SPLIT / y;
    let part_cfg = QuadConfig { rel_tol: cfg.rel_tol / 3.0, abs_tol: cfg.abs_tol / 3.0, ..*cfg };
    let times_f = |k: &dyn Fn(f64) -> f64, x: f64| {
        let v = f.eval(x);
        if v == 0.0 {
            0.0
        } else {
            k(x) * v
        }
    };

    let series = |x: f64| {
        let t = x * y;
        t.sqrt() * struve_h_series(nu, t)
    };
    let mut head = Integrand::new(|x| times_f(&series, x), TailClass::Mixed).with_scale(s.scale);
    head.singular_at_zero = s.singularity(nu + 1.5, false);
    let head = integrate_finite(&head, 0.0, x0, &part_cfg)?;

    let ykern = |x: f64| {
        let t = x * y;
        t.sqrt() * bessel_y_value(nu, t)
    };
    let yt = Integrand::new(
        |x| times_f(&ykern, x),
        TailClass::OscillatoryBessel { order: nu, frequency: y, kind: BesselKind::Y },
    )
    .with_scale(s.scale.max(x0));
    let ypart = integrate_oscillatory(&yt, x0, &part_cfg)?;

    let rkern = |x: f64| {
        let t = x * y;
        t.sqrt() * struve_remainder(nu, t).0
    };
    let tail = decaying_tail("struve_transform", &s, nu - 0.5, 0.0)?;
    let rt = Integrand::new(|x| times_f(&rkern, x), tail).with_scale(x0);
    let rpart = integrate_semi_infinite(&rt, x0, &part_cfg)?;

    Ok(finish(f, head.merge(ypart).merge(rpart), y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma_value, Order};
    use crate::transforms::{Custom, Shape};
    use std::f64::consts::PI;

    fn power(mu: f64) -> impl RealFunction {
        Custom::new(move |x: f64| x.powf(mu), Shape::new(mu, Decay::Algebraic { power: mu }))
    }

    fn closed(nu: f64, mu: f64, a: f64) -> f64 {
        let s = mu / 2.0 + nu / 2.0 + 0.75;
        2f64.powf(mu + 0.5) * gamma_value(s) / (a.powf(mu + 1.0) * gamma_value(nu / 2.0 - mu / 2.0 + 0.25))
            * (PI * s).tan()
    }

    #[test]
    fn power_closed_form() {
        let cfg = QuadConfig::default();
        for &(nu, mu, a) in &[(0.0, -1.2, 1.0), (0.0, -1.2, 2.0), (1.0, -2.0, 1.5), (-0.5, -0.5, 1.0)] {
            let v = struve_transform(Order::new(nu).unwrap(), &power(mu), a, &cfg).unwrap();
            let exact = closed(nu, mu, a);
            assert!(((v.value - exact) / exact).abs() < 1e-8, "nu={nu} mu={mu} a={a}: {v:?} vs {exact}");
        }
    }

    #[test]
    fn zero_function() {
        let z = Custom::new(|_| 0.0, Shape::new(0.0, Decay::Exponential { rate: 1.0 }));
        let v = struve_transform(Order::new(0.0).unwrap(), &z, 1.0, &QuadConfig::default()).unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn point_scaling() {
        // 𝔥_ν{u^μ}(a) = a^{−μ−1} 𝔥_ν{u^μ}(1)
        let (nu, mu, a) = (0.0, -1.2, 2.0);
        let cfg = QuadConfig::default();
        let nu = Order::new(nu).unwrap();
        let at_a = struve_transform(nu, &power(mu), a, &cfg).unwrap().value;
        let at_1 = struve_transform(nu, &power(mu), 1.0, &cfg).unwrap().value;
        assert!(((at_a - a.powf(-mu - 1.0) * at_1) / at_a).abs() < 1e-8);
    }

    #[test]
    fn rejects_low_order() {
        let r = struve_transform(Order::new(-1.6).unwrap(), &power(-1.0), 1.0, &QuadConfig::default());
        assert!(r.is_err());
    }
}
