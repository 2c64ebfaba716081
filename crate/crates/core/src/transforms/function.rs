//! Real functions on (0, ∞) with the shape metadata the integrators use,
//! and a few combinators for building nested transform integrands.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use super::{transform, TransformKind};
use crate::quadrature::QuadConfig;

/// How a function behaves as x → ∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decay {
    Exponential {
        rate: f64,
    },
    Algebraic {
        power: f64,
    },
    /// Bounded by x^envelope times an oscillation of the given frequency.
    Oscillating {
        envelope: f64,
        frequency: f64,
    },
}

impl Decay {
    /// Effective power for comparisons; −∞ for exponential decay.
    pub fn power(&self) -> f64 {
        match *self {
            Decay::Exponential { .. } => f64::NEG_INFINITY,
            Decay::Algebraic { power } => power,
            Decay::Oscillating { envelope, .. } => envelope,
        }
    }

    fn times_power(self, w: f64) -> Decay {
        match self {
            Decay::Exponential { .. } => self,
            Decay::Algebraic { power } => Decay::Algebraic { power: power + w },
            Decay::Oscillating { envelope, frequency } => Decay::Oscillating { envelope: envelope + w, frequency },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shape {
    /// f ~ x^p as x → 0⁺.
    pub zero_power: f64,
    /// An extra logarithmic factor at the origin.
    pub log_at_zero: bool,
    pub decay: Decay,
    /// Length scale of the structure near the origin.
    pub scale: f64,
}

impl Shape {
    pub fn new(zero_power: f64, decay: Decay) -> Self {
        Shape { zero_power, log_at_zero: false, decay, scale: 1.0 }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    /// Singularity power to declare to the integrator, if any.
    pub(crate) fn singularity(&self, extra: f64, log: bool) -> Option<f64> {
        let mut p = self.zero_power + extra;
        if (log || self.log_at_zero) && p <= 0.0 {
            p -= 0.5;
        }
        (p < 0.0).then_some(p)
    }
}

pub trait RealFunction: Sync {
    fn eval(&self, x: f64) -> f64;
    fn shape(&self) -> Shape;
    /// Bound on the relative error of values returned so far.
    fn error_level(&self) -> f64 {
        0.0
    }
    /// False once any nested evaluation failed to converge.
    fn all_converged(&self) -> bool {
        true
    }
}

impl<T: RealFunction + ?Sized> RealFunction for &T {
    fn eval(&self, x: f64) -> f64 {
        (**self).eval(x)
    }
    fn shape(&self) -> Shape {
        (**self).shape()
    }
    fn error_level(&self) -> f64 {
        (**self).error_level()
    }
    fn all_converged(&self) -> bool {
        (**self).all_converged()
    }
}

/// A closure with declared shape.
pub struct Custom<F> {
    f: F,
    shape: Shape,
}

impl<F: Fn(f64) -> f64 + Sync> Custom<F> {
    pub fn new(f: F, shape: Shape) -> Self {
        Custom { f, shape }
    }
}

impl<F: Fn(f64) -> f64 + Sync> RealFunction for Custom<F> {
    fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn shape(&self) -> Shape {
        self.shape
    }
}

/// c · x^w · f(x).
pub struct Weighted<F> {
    inner: F,
    power: f64,
    coef: f64,
}

impl<F: RealFunction> Weighted<F> {
    pub fn new(inner: F, power: f64, coef: f64) -> Self {
        Weighted { inner, power, coef }
    }
}

impl<F: RealFunction> RealFunction for Weighted<F> {
    fn eval(&self, x: f64) -> f64 {
        let v = self.inner.eval(x);
        if v == 0.0 || self.coef == 0.0 {
            return 0.0;
        }
        self.coef * x.powf(self.power) * v
    }
    fn shape(&self) -> Shape {
        let s = self.inner.shape();
        Shape { zero_power: s.zero_power + self.power, decay: s.decay.times_power(self.power), ..s }
    }
    fn error_level(&self) -> f64 {
        self.inner.error_level()
    }
    fn all_converged(&self) -> bool {
        self.inner.all_converged()
    }
}

/// f(√x).
pub struct SqrtArg<F>(pub F);

impl<F: RealFunction> RealFunction for SqrtArg<F> {
    fn eval(&self, x: f64) -> f64 {
        self.0.eval(x.sqrt())
    }
    fn shape(&self) -> Shape {
        let s = self.0.shape();
        let decay = match s.decay {
            // e^{−a√x} has no exponential rate in x; treat it as fast algebraic.
            Decay::Exponential { .. } => Decay::Algebraic { power: -8.0 },
            Decay::Algebraic { power } => Decay::Algebraic { power: 0.5 * power },
            Decay::Oscillating { envelope, frequency } => Decay::Oscillating { envelope: 0.5 * envelope, frequency },
        };
        Shape { zero_power: 0.5 * s.zero_power, decay, scale: s.scale * s.scale, ..s }
    }
    fn error_level(&self) -> f64 {
        self.0.error_level()
    }
    fn all_converged(&self) -> bool {
        self.0.all_converged()
    }
}

/// f(x) · g(x).
pub struct Product<F, G>(pub F, pub G);

impl<F: RealFunction, G: RealFunction> RealFunction for Product<F, G> {
    fn eval(&self, x: f64) -> f64 {
        let a = self.0.eval(x);
        if a == 0.0 {
            return 0.0;
        }
        a * self.1.eval(x)
    }
    fn shape(&self) -> Shape {
        let (s, t) = (self.0.shape(), self.1.shape());
        let decay = match (s.decay, t.decay) {
            (Decay::Exponential { rate: r1 }, Decay::Exponential { rate: r2 }) => Decay::Exponential { rate: r1 + r2 },
            (Decay::Exponential { rate }, _) | (_, Decay::Exponential { rate }) => Decay::Exponential { rate },
            (Decay::Oscillating { envelope, frequency }, d) | (d, Decay::Oscillating { envelope, frequency }) => {
                Decay::Oscillating { envelope: envelope + d.power(), frequency }
            }
            (Decay::Algebraic { power: p }, Decay::Algebraic { power: q }) => Decay::Algebraic { power: p + q },
        };
        Shape {
            zero_power: s.zero_power + t.zero_power,
            log_at_zero: s.log_at_zero || t.log_at_zero,
            decay,
            scale: s.scale.min(t.scale),
        }
    }
    fn error_level(&self) -> f64 {
        self.0.error_level() + self.1.error_level()
    }
    fn all_converged(&self) -> bool {
        self.0.all_converged() && self.1.all_converged()
    }
}

/// u ↦ T{f}(u), evaluated lazily by quadrature at every call.
///
/// Inner errors are measured against the largest inner value seen, so a
/// transform passing through zero does not count as a failure. Only maxima
/// are kept, which makes the bookkeeping independent of evaluation order.
pub struct Transformed<F> {
    kind: TransformKind,
    inner: F,
    cfg: QuadConfig,
    peak: AtomicU64,
    worst_abs: AtomicU64,
    worst_unconverged: AtomicU64,
}

fn raise(slot: &AtomicU64, v: f64) {
    let mut cur = slot.load(Ordering::Relaxed);
    while f64::from_bits(cur) < v {
        match slot.compare_exchange_weak(cur, v.to_bits(), Ordering::Relaxed, Ordering::Relaxed) {
            Ok(_) => break,
            Err(actual) => cur = actual,
        }
    }
}

fn read(slot: &AtomicU64) -> f64 {
    f64::from_bits(slot.load(Ordering::Relaxed))
}

impl<F: RealFunction> Transformed<F> {
    /// `cfg` is the parent's configuration; the inner integrals get the
    /// nested (tighter) budget.
    pub fn new(kind: TransformKind, inner: F, cfg: &QuadConfig) -> Self {
        Transformed {
            kind,
            inner,
            cfg: cfg.nested(),
            peak: AtomicU64::new(0f64.to_bits()),
            worst_abs: AtomicU64::new(0f64.to_bits()),
            worst_unconverged: AtomicU64::new(0f64.to_bits()),
        }
    }
}

impl<F: RealFunction> RealFunction for Transformed<F> {
    fn eval(&self, u: f64) -> f64 {
        match transform(self.kind, &self.inner, u, &self.cfg) {
            Ok(v) => {
                raise(&self.peak, v.value.abs());
                raise(&self.worst_abs, v.abs_err);
                if !v.converged {
                    // An unconverged result with no error estimate is a real failure.
                    raise(&self.worst_unconverged, if v.abs_err > 0.0 { v.abs_err } else { f64::INFINITY });
                }
                v.value
            }
            Err(_) => f64::NAN,
        }
    }

    fn shape(&self) -> Shape {
        propagate(self.kind, self.inner.shape())
    }

    fn error_level(&self) -> f64 {
        let peak = read(&self.peak);
        let own = if peak > 0.0 { read(&self.worst_abs) / peak } else { 0.0 };
        own + self.inner.error_level()
    }

    fn all_converged(&self) -> bool {
        let bad = read(&self.worst_unconverged);
        let ok = bad == 0.0 || bad <= self.cfg.rel_tol * read(&self.peak);
        ok && self.inner.all_converged()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 1e-12 && (x - x.round()).abs() < 1e-12
}

/// Shape of T{f} from the shape of f, by the leading small- and
/// large-argument behaviour of each kernel. Where the leading coefficient
/// can vanish the next order is assumed, which is never faster than the truth.
pub(crate) fn propagate(kind: TransformKind, s: Shape) -> Shape {
    let p0 = s.zero_power;
    let q = s.decay.power();
    let inv_scale = 1.0 / s.scale;
    let mut log = false;
    let (zero, decay, scale) = match kind {
        TransformKind::Laplace => {
            let z = if q < -1.0 { 0.0 } else { -(q + 1.0) };
            (z, -(p0 + 1.0), inv_scale)
        }
        TransformKind::Stieltjes | TransformKind::Widder => {
            let z = if p0 > 0.0 {
                0.0
            } else {
                log = p0 == 0.0;
                p0
            };
            let floor = if kind == TransformKind::Widder { -2.0 } else { -1.0 };
            (z, q.max(floor), s.scale)
        }
        TransformKind::FourierSine => {
            let z = if q < -2.0 { 1.0 } else { -(q + 1.0) };
            let vanishes = ((p0 + 1.0) / 2.0).fract().abs() < 1e-12;
            (z, if vanishes { -(p0 + 2.0) } else { -(p0 + 1.0) }, inv_scale)
        }
        TransformKind::FourierCosine => {
            let z = if q < -1.0 { 0.0 } else { -(q + 1.0) };
            let vanishes = (p0 / 2.0).fract().abs() < 1e-12 && p0 >= 0.0;
            (z, if vanishes { -(p0 + 2.0) } else { -(p0 + 1.0) }, inv_scale)
        }
        TransformKind::Hankel(nu) => {
            let nu = nu.value();
            let z = if q + nu + 0.5 < -1.0 { nu + 0.5 } else { -(q + 1.0) };
            let vanishes = is_nonpositive_integer(0.5 * nu - 0.5 * p0 + 0.25);
            (z, if vanishes { -(p0 + 2.0) } else { -(p0 + 1.0) }, inv_scale)
        }
        TransformKind::KTransform(nu) => {
            let a = nu.value().abs();
            log = a == 0.0;
            let z = if q + 0.5 - a < -1.0 { 0.5 - a } else { -(q + 1.0) };
            (z, -(p0 + 1.0), inv_scale)
        }
        // Not functions of a transform variable in the nested sense.
        TransformKind::Mellin | TransformKind::StruveTransform(_) => (0.0, q, s.scale),
    };
    Shape { zero_power: zero, log_at_zero: log, decay: Decay::Algebraic { power: decay }, scale }
}
