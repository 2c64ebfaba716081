//! Real-argument, real-order special functions used by the transform
//! kernels and closed forms: Γ, ln Γ, J_ν, Y_ν, K_ν and the Struve **H**_ν.

mod bessel_j;
mod bessel_k;
pub(crate) mod dd;
mod gamma;
mod struve;

pub(crate) use bessel_j::cylinder;
pub use bessel_j::{
    bessel_j, bessel_j_asymptotic, bessel_j_derivative, bessel_j_series, bessel_j_value, bessel_y_value,
};
pub use bessel_k::{bessel_k, bessel_k_scaled, bessel_k_scaled_value, bessel_k_value, K_UNDERFLOW_ARG};
pub use gamma::{cos_pi, gamma, gamma_value, ln_gamma, ln_gamma_value, rgamma, sin_pi, GAMMA_OVERFLOW};
pub use struve::{struve_h, struve_h_series, struve_h_value, struve_remainder, STRUVE_XMAX};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("{func}: argument {arg} outside the domain")]
    Domain { func: &'static str, arg: f64 },
    #[error("{func}: pole at {arg}")]
    Pole { func: &'static str, arg: f64 },
    #[error("{func}: overflow at {arg}")]
    Overflow { func: &'static str, arg: f64 },
    #[error("{func}: result underflows at {arg}; use the scaled variant")]
    Underflow { func: &'static str, arg: f64 },
    #[error("{func}: order {order} outside the supported range")]
    OrderOutOfRange { func: &'static str, order: f64 },
    #[error("order must be finite, got {0}")]
    InvalidOrder(f64),
}

/// A transform order ν. Always finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self, SpecialError> {
        if nu.is_finite() {
            Ok(Order(nu))
        } else {
            Err(SpecialError::InvalidOrder(nu))
        }
    }

    /// An order satisfying ν > −1, as the Hankel kernel requires.
    pub fn hankel(nu: f64) -> Result<Self, SpecialError> {
        let o = Self::new(nu)?;
        if nu > -1.0 {
            Ok(o)
        } else {
            Err(SpecialError::OrderOutOfRange { func: "hankel order", order: nu })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A function value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialValue {
    pub value: f64,
    pub abs_err: f64,
}

impl SpecialValue {
    pub fn new(value: f64, abs_err: f64) -> Self {
        SpecialValue { value, abs_err }
    }
}
