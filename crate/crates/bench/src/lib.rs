//! Shared inputs for the criterion benches in `benches/`.

use hankel_core::FunctionDescriptor;

/// Arguments spanning the series, recurrence and asymptotic regimes.
pub const ARGS: [f64; 6] = [0.05, 0.7, 3.0, 12.0, 40.0, 250.0];

pub fn descriptor(s: &str) -> FunctionDescriptor {
    s.parse().expect("valid descriptor")
}
