//! Adaptive quadrature on finite intervals and on [a, ∞), including
//! conditionally convergent oscillatory integrals.

mod accel;
mod adaptive;
mod gauss_kronrod;
mod oscillatory;
mod semi_infinite;
mod zeros;

pub use accel::{euler_average, levin_u};
pub use adaptive::integrate_finite;
pub use gauss_kronrod::{gk21, GkEstimate};
pub use oscillatory::integrate_oscillatory;
pub use semi_infinite::{integrate_semi_infinite, integrate_semi_infinite_with, TailMap};
pub use zeros::{find_bessel_zeros, BesselKind, ZeroIter};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::specfun::SpecialError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Accel {
    Euler,
    LevinU,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
    pub accel: Accel,
    pub max_oscillation_blocks: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_evals: 2_000_000,
            accel: Accel::LevinU,
            max_oscillation_blocks: 200,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<(), QuadError> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(QuadError::InvalidConfig("tolerances must be positive"));
        }
        if self.max_evals < 21 {
            return Err(QuadError::InvalidConfig("max_evals must allow at least one rule"));
        }
        if self.max_oscillation_blocks < 4 {
            return Err(QuadError::InvalidConfig("max_oscillation_blocks must be at least 4"));
        }
        Ok(())
    }

    /// Configuration for an integral evaluated inside another one: each
    /// nesting level gets a quarter of the parent's tolerance.
    pub fn nested(&self) -> QuadConfig {
        QuadConfig { rel_tol: (self.rel_tol / 4.0).max(1e-14), abs_tol: (self.abs_tol / 4.0).max(1e-300), ..*self }
    }

    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub evals: usize,
    pub converged: bool,
}

impl QuadResult {
    pub fn rel_err(&self) -> f64 {
        if self.value == 0.0 {
            self.abs_err
        } else {
            self.abs_err / self.value.abs()
        }
    }

    pub(crate) fn merge(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            abs_err: self.abs_err + other.abs_err,
            evals: self.evals + other.evals,
            converged: self.converged && other.converged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
    #[error("integral appears divergent: {0}")]
    Divergent(String),
    #[error("tail class {0} cannot be handled by this integrator")]
    WrongTail(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrigPhase {
    Sine,
    Cosine,
}

/// Behaviour of an integrand as x → ∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailClass {
    ExponentialDecay {
        rate: f64,
    },
    AlgebraicDecay {
        power: f64,
    },
    /// The integrand carries J_ν(ωx) or Y_ν(ωx).
    OscillatoryBessel {
        order: f64,
        frequency: f64,
        kind: BesselKind,
    },
    /// The integrand carries sin(ωx) or cos(ωx).
    OscillatoryTrig {
        frequency: f64,
        phase: TrigPhase,
    },
    /// Decays, but at an unknown rate.
    Mixed,
}

impl TailClass {
    pub(crate) fn name(&self) -> &'static str {
        match self {
            TailClass::ExponentialDecay { .. } => "exponential_decay",
            TailClass::AlgebraicDecay { .. } => "algebraic_decay",
            TailClass::OscillatoryBessel { .. } => "oscillatory_bessel",
            TailClass::OscillatoryTrig { .. } => "oscillatory_trig",
            TailClass::Mixed => "mixed",
        }
    }
}

/// A real integrand on (0, ∞) plus the metadata the integrators need.
pub struct Integrand<'a> {
    f: Box<dyn Fn(f64) -> f64 + 'a>,
    pub tail: TailClass,
    /// Integrand behaves like x^p as x → 0⁺.
    pub singular_at_zero: Option<f64>,
    /// Length scale of the integrand's structure near the origin.
    pub scale: f64,
    /// Length beyond which only the declared decay remains; the range
    /// between `scale` and `reach` is bridged on a logarithmic grid.
    pub reach: f64,
}

impl<'a> Integrand<'a> {
    pub fn new(f: impl Fn(f64) -> f64 + 'a, tail: TailClass) -> Self {
        Integrand { f: Box::new(f), tail, singular_at_zero: None, scale: 1.0, reach: 1.0 }
    }

    pub fn smooth(f: impl Fn(f64) -> f64 + 'a) -> Self {
        Self::new(f, TailClass::Mixed)
    }

    pub fn with_singularity(mut self, p: f64) -> Self {
        self.singular_at_zero = Some(p);
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        if scale.is_finite() && scale > 0.0 {
            self.scale = scale;
        }
        self
    }

    pub fn with_reach(mut self, reach: f64) -> Self {
        if reach.is_finite() && reach > 0.0 {
            self.reach = reach;
        }
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }
}
