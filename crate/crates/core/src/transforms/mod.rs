//! The integral transforms as numeric operators over [`RealFunction`]s.
//!
//! Each transform builds an [`Integrand`] from the kernel and the shape of
//! `f`, then hands it to the matching integrator: the mapped semi-infinite
//! rule when the product decays, the block-summation rule when it only
//! converges by oscillation.

mod function;
mod struve;

pub use function::{Custom, Decay, Product, RealFunction, Shape, SqrtArg, Transformed, Weighted};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::{
    integrate_oscillatory, integrate_semi_infinite, BesselKind, Integrand, QuadConfig, QuadError, QuadResult,
    TailClass, TrigPhase,
};
use crate::specfun::{bessel_j_value, bessel_k_value, Order, SpecialError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "nu")]
pub enum TransformKind {
    Laplace,
    Stieltjes,
    Widder,
    FourierSine,
    FourierCosine,
    Hankel(Order),
    KTransform(Order),
    Mellin,
    StruveTransform(Order),
}

impl TransformKind {
    pub const NAMES: [&'static str; 9] = [
        "laplace",
        "stieltjes",
        "widder",
        "fourier_sine",
        "fourier_cosine",
        "hankel",
        "k_transform",
        "mellin",
        "struve_transform",
    ];

    /// Builds a kind from its name; order-bearing kinds need `nu`.
    pub fn from_name(name: &str, nu: Option<f64>) -> Result<Self, TransformError> {
        let order = |nu: Option<f64>| -> Result<Order, TransformError> {
            let nu = nu.ok_or_else(|| TransformError::MissingOrder(name.to_string()))?;
            Ok(Order::new(nu)?)
        };
        let kind = match name {
            "laplace" => TransformKind::Laplace,
            "stieltjes" => TransformKind::Stieltjes,
            "widder" => TransformKind::Widder,
            "fourier_sine" => TransformKind::FourierSine,
            "fourier_cosine" => TransformKind::FourierCosine,
            "mellin" => TransformKind::Mellin,
            "hankel" => TransformKind::Hankel(order(nu)?),
            "k_transform" => TransformKind::KTransform(order(nu)?),
            "struve_transform" => TransformKind::StruveTransform(order(nu)?),
            _ => return Err(TransformError::UnknownKind(name.to_string())),
        };
        kind.validate()?;
        Ok(kind)
    }

    pub fn name(&self) -> &'static str {
        match self {
            TransformKind::Laplace => "laplace",
            TransformKind::Stieltjes => "stieltjes",
            TransformKind::Widder => "widder",
            TransformKind::FourierSine => "fourier_sine",
            TransformKind::FourierCosine => "fourier_cosine",
            TransformKind::Hankel(_) => "hankel",
            TransformKind::KTransform(_) => "k_transform",
            TransformKind::Mellin => "mellin",
            TransformKind::StruveTransform(_) => "struve_transform",
        }
    }

    pub fn order(&self) -> Option<f64> {
        match self {
            TransformKind::Hankel(nu) | TransformKind::KTransform(nu) | TransformKind::StruveTransform(nu) => {
                Some(nu.value())
            }
            _ => None,
        }
    }

    /// Hankel needs ν > −1 and the Struve transform ν > −3/2; the
    /// K-transform is even in ν and takes any real order.
    pub fn validate(&self) -> Result<(), TransformError> {
        match *self {
            TransformKind::Hankel(nu) if !(nu.value() > -1.0) => {
                Err(SpecialError::OrderOutOfRange { func: "hankel", order: nu.value() }.into())
            }
            TransformKind::StruveTransform(nu) if !(nu.value() > -1.5) => {
                Err(SpecialError::OrderOutOfRange { func: "struve_transform", order: nu.value() }.into())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order() {
            Some(nu) => write!(f, "{}[nu={nu}]", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformValue {
    pub value: f64,
    pub abs_err: f64,
    /// The evaluation point y, or the exponent μ for the Mellin transform.
    pub point: f64,
    pub converged: bool,
    pub evals: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("unknown transform kind '{0}'")]
    UnknownKind(String),
    #[error("transform '{0}' needs an order")]
    MissingOrder(String),
    #[error("{kind}: evaluation point {point} must be finite and positive")]
    InvalidPoint { kind: &'static str, point: f64 },
    #[error("{kind}: {reason}")]
    Unsupported { kind: &'static str, reason: &'static str },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// T{f}(point) for any kind.
pub fn transform(
    kind: TransformKind,
    f: &dyn RealFunction,
    point: f64,
    cfg: &QuadConfig,
) -> Result<TransformValue, TransformError> {
    match kind {
        TransformKind::Laplace => laplace(f, point, cfg),
        TransformKind::Stieltjes => stieltjes(f, point, cfg),
        TransformKind::Widder => widder(f, point, cfg),
        TransformKind::FourierSine => fourier_sine(f, point, cfg),
        TransformKind::FourierCosine => fourier_cosine(f, point, cfg),
        TransformKind::Hankel(nu) => hankel(nu, f, point, cfg),
        TransformKind::KTransform(nu) => k_transform(nu, f, point, cfg),
        TransformKind::Mellin => mellin(f, point, cfg),
        TransformKind::StruveTransform(nu) => struve_transform(nu, f, point, cfg),
    }
}

fn check_point(kind: &'static str, y: f64) -> Result<(), TransformError> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(TransformError::InvalidPoint { kind, point: y })
    }
}

/// Folds the inner functions' error level and convergence into a result.
fn finish(f: &dyn RealFunction, r: QuadResult, point: f64) -> TransformValue {
    TransformValue {
        value: r.value,
        abs_err: r.abs_err + r.value.abs() * f.error_level(),
        point,
        converged: r.converged && f.all_converged(),
        evals: r.evals,
    }
}

/// Tail class of kernel·f when the kernel contributes x^w and, optionally,
/// an extra exponential rate.
fn decaying_tail(kind: &'static str, s: &Shape, w: f64, kernel_rate: f64) -> Result<TailClass, TransformError> {
    match s.decay {
        Decay::Exponential { rate } => Ok(TailClass::ExponentialDecay { rate: rate + kernel_rate }),
        _ if kernel_rate > 0.0 => Ok(TailClass::ExponentialDecay { rate: kernel_rate }),
        Decay::Algebraic { power } => Ok(TailClass::AlgebraicDecay { power: power + w }),
        Decay::Oscillating { .. } => Err(TransformError::Unsupported {
            kind,
            reason: "oscillating functions are only supported under exponentially decaying kernels",
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn semi_infinite(
    kind: &'static str,
    f: &dyn RealFunction,
    kernel: impl Fn(f64) -> f64,
    kernel_zero_power: f64,
    kernel_log: bool,
    kernel_decay_power: f64,
    kernel_rate: f64,
    kernel_scale: f64,
    point: f64,
    cfg: &QuadConfig,
) -> Result<TransformValue, TransformError> {
    let s = f.shape();
    let tail = decaying_tail(kind, &s, kernel_decay_power, kernel_rate)?;
    let mut g = Integrand::new(
        |x: f64| {
            let v = f.eval(x);
            if v == 0.0 {
                0.0
            } else {
                kernel(x) * v
            }
        },
        tail,
    )
    .with_scale(s.scale.min(kernel_scale))
    .with_reach(s.scale.max(kernel_scale));
    g.singular_at_zero = s.singularity(kernel_zero_power, kernel_log);
    let r = integrate_semi_infinite(&g, 0.0, cfg)?;
    Ok(finish(f, r, point))
}

fn oscillatory(
    kind: &'static str,
    f: &dyn RealFunction,
    kernel: impl Fn(f64) -> f64,
    kernel_zero_power: f64,
    tail: TailClass,
    point: f64,
    cfg: &QuadConfig,
) -> Result<TransformValue, TransformError> {
    let s = f.shape();
    if let Decay::Oscillating { .. } = s.decay {
        return Err(TransformError::Unsupported {
            kind,
            reason: "products of two oscillating factors are not supported",
        });
    }
    let mut g = Integrand::new(
        |x: f64| {
            let v = f.eval(x);
            if v == 0.0 {
                0.0
            } else {
                kernel(x) * v
            }
        },
        tail,
    )
    .with_scale(s.scale);
    g.singular_at_zero = s.singularity(kernel_zero_power, false);
    let frequency = match tail {
        TailClass::OscillatoryBessel { frequency, .. } | TailClass::OscillatoryTrig { frequency, .. } => frequency,
        _ => f64::INFINITY,
    };
    // Under one oscillation per decay length the zeros are irrelevant, and
    // at tiny frequencies they are too far out to be resolved.
    if let Decay::Exponential { rate } = s.decay {
        if frequency <= rate {
            g.tail = TailClass::ExponentialDecay { rate };
            let r = integrate_semi_infinite(&g, 0.0, cfg)?;
            return Ok(finish(f, r, point));
        }
    }
    let r = integrate_oscillatory(&g, 0.0, cfg)?;
    Ok(finish(f, r, point))
}

/// 𝓛{f}(y) = ∫ e^{−xy} f(x) dx.
pub fn laplace(f: &dyn RealFunction, y: f64, cfg: &QuadConfig) -> Result<TransformValue, TransformError> {
    check_point("laplace", y)?;
    semi_infinite("laplace", f, |x| (-x * y).exp(), 0.0, false, 0.0, y, 1.0 / y, y, cfg)
}

/// 𝓢{f}(y) = ∫ f(x)/(x + y) dx.
pub fn stieltjes(f: &dyn RealFunction, y: f64, cfg: &QuadConfig) -> Result<TransformValue, TransformError> {
    check_point("stieltjes", y)?;
    semi_infinite("stieltjes", f, |x| 1.0 / (x + y), 0.0, false, -1.0, 0.0, y, y, cfg)
}

/// 𝓟{f}(y) = ∫ x f(x)/(x² + y²) dx.
pub fn widder(f: &dyn RealFunction, y: f64, cfg: &QuadConfig) -> Result<TransformValue, TransformError> {
    check_point("widder", y)?;
    let y2 = y * y;
    semi_infinite("widder", f, |x| x / (x * x + y2), 1.0, false, -1.0, 0.0, y, y, cfg)
}

/// 𝓕_S{f}(y) = ∫ sin(xy) f(x) dx.
pub fn fourier_sine(f: &dyn RealFunction, y: f64, cfg: &QuadConfig) -> Result<TransformValue, TransformError> {
    check_point("fourier_sine", y)?;
    let tail = TailClass::OscillatoryTrig { frequency: y, phase: TrigPhase::Sine };
    oscillatory("fourier_sine", f, |x| (x * y).sin(), 1.0, tail, y, cfg)
}

/// 𝓕_C{f}(y) = ∫ cos(xy) f(x) dx.
pub fn fourier_cosine(f: &dyn RealFunction, y: f64, cfg: &QuadConfig) -> Result<TransformValue, TransformError> {
    check_point("fourier_cosine", y)?;
    let tail = TailClass::OscillatoryTrig { frequency: y, phase: TrigPhase::Cosine };
    oscillatory("fourier_cosine", f, |x| (x * y).cos(), 0.0, tail, y, cfg)
}

/// 𝓗_ν{f}(y) = ∫ √(xy) J_ν(xy) f(x) dx, ν > −1.
pub fn hankel(nu: Order, f: &dyn RealFunction, y: f64, cfg: &QuadConfig) -> Result<TransformValue, TransformError> {
    TransformKind::Hankel(nu).validate()?;
    check_point("hankel", y)?;
    let nu = nu.value();
    let tail = TailClass::OscillatoryBessel { order: nu, frequency: y, kind: BesselKind::J };
    let kernel = |x: f64| {
        let t = x * y;
        t.sqrt() * bessel_j_value(nu, t)
    };
    oscillatory("hankel", f, kernel, nu + 0.5, tail, y, cfg)
}

/// 𝓚_ν{f}(y) = ∫ √(xy) K_ν(xy) f(x) dx for any real ν.
pub fn k_transform(
    nu: Order,
    f: &dyn RealFunction,
    y: f64,
    cfg: &QuadConfig,
) -> Result<TransformValue, TransformError> {
    check_point("k_transform", y)?;
    let a = nu.value().abs();
    let kernel = |x: f64| {
        let t = x * y;
        t.sqrt() * bessel_k_value(a, t)
    };
    semi_infinite("k_transform", f, kernel, 0.5 - a, a == 0.0, 0.0, y, 1.0 / y, y, cfg)
}

/// 𝓜{f}(μ) = ∫ x^{μ−1} f(x) dx. The exponent plays the role of the point.
pub fn mellin(f: &dyn RealFunction, mu: f64, cfg: &QuadConfig) -> Result<TransformValue, TransformError> {
    if !mu.is_finite() {
        return Err(TransformError::InvalidPoint { kind: "mellin", point: mu });
    }
    let scale = f.shape().scale;
    semi_infinite("mellin", f, |x| x.powf(mu - 1.0), mu - 1.0, false, mu - 1.0, 0.0, scale, mu, cfg)
}

/// ∫₀^∞ f(x) dx.
pub fn integrate_function(f: &dyn RealFunction, cfg: &QuadConfig) -> Result<TransformValue, TransformError> {
    let scale = f.shape().scale;
    semi_infinite("integral", f, |_| 1.0, 0.0, false, 0.0, 0.0, scale, 1.0, cfg)
}

pub use struve::struve_transform;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_k_value, gamma_value, struve_h_value};
    use std::f64::consts::PI;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn exp_decay(a: f64) -> impl RealFunction {
        Custom::new(move |x: f64| (-a * x).exp(), Shape::new(0.0, Decay::Exponential { rate: a }))
    }

    fn power(mu: f64) -> impl RealFunction {
        Custom::new(move |x: f64| x.powf(mu), Shape::new(mu, Decay::Algebraic { power: mu }))
    }

    fn zero() -> impl RealFunction {
        Custom::new(|_| 0.0, Shape::new(0.0, Decay::Exponential { rate: 1.0 }))
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    fn order(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn laplace_elementary() {
        let one = Custom::new(|_| 1.0, Shape::new(0.0, Decay::Algebraic { power: 0.0 }));
        assert!(close(laplace(&one, 2.0, &cfg()).unwrap().value, 0.5, 1e-12));
        assert!(close(laplace(&exp_decay(1.0), 1.0, &cfg()).unwrap().value, 0.5, 1e-12));
        let v = laplace(&power(0.5), 1.0, &cfg()).unwrap();
        assert!(close(v.value, PI.sqrt() / 2.0, 1e-10), "{v:?}");
    }

    #[test]
    fn widder_examples() {
        let f = Custom::new(|x: f64| x / (x * x + 1.0), Shape::new(1.0, Decay::Algebraic { power: -1.0 }));
        assert!(close(widder(&f, 2.0, &cfg()).unwrap().value, PI / 6.0, 1e-10));
        assert_eq!(widder(&zero(), 1.0, &cfg()).unwrap().value, 0.0);
        let v = widder(&power(-0.5), 1.0, &cfg()).unwrap();
        assert!(close(v.value, PI / 2f64.sqrt(), 1e-9), "{v:?}");
    }

    #[test]
    fn stieltjes_examples() {
        let v = stieltjes(&power(-0.5), 1.0, &cfg()).unwrap();
        assert!(close(v.value, PI, 1e-9), "{v:?}");
        assert_eq!(stieltjes(&zero(), 1.0, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn widder_from_stieltjes_of_root_argument() {
        let f = exp_decay(1.0);
        let y = 1.3;
        let p = widder(&f, y, &cfg()).unwrap().value;
        let s = stieltjes(&SqrtArg(&f), y * y, &cfg()).unwrap().value;
        assert!(close(p, 0.5 * s, 1e-9), "{p} {s}");
    }

    #[test]
    fn fourier_pair() {
        assert!(close(fourier_sine(&exp_decay(1.0), 1.0, &cfg()).unwrap().value, 0.5, 1e-10));
        let y = 1e-6;
        let v = fourier_cosine(&exp_decay(1.0), y, &cfg()).unwrap();
        assert!(close(v.value, 1.0 / (1.0 + y * y), 1e-9), "{v:?}");
    }

    #[test]
    fn hankel_half_order_is_sine() {
        let h = hankel(order(0.5), &exp_decay(1.0), 2.0, &cfg()).unwrap().value;
        let s = fourier_sine(&exp_decay(1.0), 2.0, &cfg()).unwrap().value;
        assert!(close(h, (2.0 / PI).sqrt() * s, 1e-9));
        assert!(close(h, (2.0 / PI).sqrt() * 0.4, 1e-9));
    }

    #[test]
    fn hankel_of_kernel_fraction() {
        let nu = 0.25;
        let f = Custom::new(
            move |x: f64| x.powf(nu + 0.5) / (x * x + 1.0),
            Shape::new(nu + 0.5, Decay::Algebraic { power: nu - 1.5 }),
        );
        let v = hankel(order(nu), &f, 2.0, &cfg()).unwrap();
        let exact = 2f64.sqrt() * bessel_k_value(nu, 2.0);
        assert!(close(v.value, exact, 1e-8), "{v:?} vs {exact}");
    }

    #[test]
    fn hankel_of_power() {
        let mu = -0.7;
        let v = hankel(order(0.0), &power(mu), 1.0, &cfg()).unwrap();
        let exact = 2f64.powf(mu + 0.5) * gamma_value(mu / 2.0 + 0.75) / gamma_value(0.25 - mu / 2.0);
        assert!(close(v.value, exact, 1e-7), "{v:?} vs {exact}");
    }

    #[test]
    fn hankel_rejects_low_order() {
        assert!(hankel(order(-1.0), &exp_decay(1.0), 1.0, &cfg()).is_err());
        assert!(TransformKind::from_name("hankel", Some(-1.2)).is_err());
    }

    #[test]
    fn k_half_order_is_laplace() {
        let k = k_transform(order(0.5), &exp_decay(1.0), 1.0, &cfg()).unwrap().value;
        assert!(close(k, (PI / 2.0).sqrt() * 0.5, 1e-11));
        let km = k_transform(order(-0.5), &exp_decay(1.0), 1.0, &cfg()).unwrap().value;
        assert!(close(k, km, 1e-14));
    }

    #[test]
    fn k_of_bessel_power() {
        let (nu, a, y): (f64, f64, f64) = (0.5, 1.0, 2.0);
        let f = Custom::new(
            move |u: f64| u.powf(2.0 * nu + 0.5) * bessel_j_value(nu, a * u),
            Shape::new(3.0 * nu + 0.5, Decay::Oscillating { envelope: 2.0 * nu, frequency: a }),
        );
        let v = k_transform(order(nu), &f, y, &cfg()).unwrap();
        let exact = 2f64.powf(2.0 * nu) * a.powf(nu) * y.powf(nu + 0.5) * gamma_value(2.0 * nu + 1.0)
            / (y * y + a * a).powf(2.0 * nu + 1.0);
        assert!(close(v.value, exact, 1e-9), "{v:?} vs {exact}");
    }

    #[test]
    fn k_of_struve_half() {
        let f = Custom::new(
            |u: f64| u.sqrt() * struve_h_value(0.0, u),
            Shape::new(1.5, Decay::Oscillating { envelope: -0.5, frequency: 1.0 }),
        );
        let v = k_transform(order(0.0), &f, 1.0, &cfg()).unwrap();
        assert!(close(v.value, 0.5, 1e-9), "{v:?}");
    }

    #[test]
    fn mellin_examples() {
        assert!(close(mellin(&exp_decay(1.0), 2.0, &cfg()).unwrap().value, 1.0, 1e-12));
        assert!(close(mellin(&exp_decay(1.0), 0.5, &cfg()).unwrap().value, PI.sqrt(), 1e-10));
        let f = Custom::new(|x: f64| 1.0 / (x + 1.0), Shape::new(0.0, Decay::Algebraic { power: -1.0 }));
        let v = mellin(&f, 0.5, &cfg()).unwrap();
        assert!(close(v.value, PI, 1e-9), "{v:?}");
    }

    #[test]
    fn invalid_points() {
        assert!(matches!(laplace(&exp_decay(1.0), 0.0, &cfg()), Err(TransformError::InvalidPoint { .. })));
        assert!(matches!(widder(&exp_decay(1.0), -1.0, &cfg()), Err(TransformError::InvalidPoint { .. })));
        assert!(mellin(&exp_decay(1.0), f64::NAN, &cfg()).is_err());
    }

    #[test]
    fn divergent_inputs_are_reported() {
        // ∫ x^{-1/2}/(1+... ) fine, but Mellin at μ = 0 of e^{-x} diverges at the origin.
        assert!(matches!(mellin(&exp_decay(1.0), 0.0, &cfg()), Err(TransformError::Quad(QuadError::Divergent(_)))));
        assert!(widder(&power(1.5), 1.0, &cfg()).is_err());
    }

    #[test]
    fn iterated_laplace_is_stieltjes() {
        let g = exp_decay(1.0);
        let lg = Transformed::new(TransformKind::Laplace, &g, &cfg());
        let ll = laplace(&lg, 2.0, &cfg()).unwrap();
        let s = stieltjes(&g, 2.0, &cfg()).unwrap();
        assert!(close(ll.value, s.value, 1e-8), "{ll:?} {s:?}");
        assert!(ll.converged);
    }

    #[test]
    fn kind_names_round_trip() {
        for name in TransformKind::NAMES {
            let k = TransformKind::from_name(name, Some(0.5)).unwrap();
            assert_eq!(k.name(), name);
        }
        assert!(TransformKind::from_name("hankel", None).is_err());
        assert!(TransformKind::from_name("nope", None).is_err());
        let json = serde_json::to_string(&TransformKind::Hankel(order(0.5))).unwrap();
        let back: TransformKind = serde_json::from_str(&json).unwrap();
        assert_eq!(back, TransformKind::Hankel(order(0.5)));
    }
}
