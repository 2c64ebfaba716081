//! Globally adaptive bisection driven by the Gauss–Kronrod error estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::gauss_kronrod::gk21;
use super::{Integrand, QuadConfig, QuadError, QuadResult};

const RULE_EVALS: usize = 21;
const ROUNDOFF: f64 = 100.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    abs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn rule(g: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<Segment, QuadError> {
    let est = gk21(g, a, b).map_err(|x| QuadError::NonFinite { x })?;
    Ok(Segment { a, b, value: est.value, err: est.err, abs: est.abs_value })
}

/// Adaptive integration of a plain callback over [a, b], starting from
/// `pieces` equal subintervals.
pub(crate) fn adapt(
    g: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    pieces: usize,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    let pieces = pieces.max(1);
    let mut heap = BinaryHeap::with_capacity(64);
    let mut done: Vec<Segment> = Vec::new();
    let h = (b - a) / pieces as f64;
    let mut evals = 0;
    for i in 0..pieces {
        let lo = a + h * i as f64;
        let hi = if i + 1 == pieces { b } else { a + h * (i + 1) as f64 };
        heap.push(rule(g, lo, hi)?);
        evals += RULE_EVALS;
    }
    let mut value: f64 = heap.iter().map(|s| s.value).sum();
    let mut err: f64 = heap.iter().map(|s| s.err).sum();
    let mut abs: f64 = heap.iter().map(|s| s.abs).sum();
    // An error at the rounding level of ∫|g| cannot be reduced further.
    let met = |value: f64, err: f64, abs: f64| err <= cfg.target(value).max(ROUNDOFF * abs);
    let mut converged = met(value, err, abs);
    while !converged && evals + 2 * RULE_EVALS <= cfg.max_evals {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        // Stop splitting once the midpoint is no longer representable.
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) < 4.0 * f64::EPSILON * mid.abs() {
            done.push(worst);
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let left = rule(g, worst.a, mid)?;
        let right = rule(g, mid, worst.b)?;
        evals += 2 * RULE_EVALS;
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        abs += left.abs + right.abs - worst.abs;
        heap.push(left);
        heap.push(right);
        if met(value, err, abs) {
            // Re-sum to shed accumulated rounding before declaring success.
            let all = || heap.iter().chain(done.iter());
            value = all().map(|s| s.value).sum();
            err = all().map(|s| s.err).sum();
            abs = all().map(|s| s.abs).sum();
            converged = met(value, err, abs);
        }
    }
    let value: f64 = heap.iter().chain(done.iter()).map(|s| s.value).sum();
    let err: f64 = heap.iter().chain(done.iter()).map(|s| s.err).sum();
    let abs: f64 = heap.iter().chain(done.iter()).map(|s| s.abs).sum();
    Ok(QuadResult { value, abs_err: err, evals, converged: met(value, err, abs) })
}

/// ∫_a^b f. A declared singularity x^p at the origin (p > −1) is removed
/// with the substitution x = t^m, m = 1/(1+p).
pub fn integrate_finite(f: &Integrand, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadError> {
    cfg.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadError::InvalidInterval { a, b });
    }
    let pieces = ((b - a) / f.scale).ceil().clamp(1.0, 16.0) as usize;
    match f.singular_at_zero {
        Some(p) if a == 0.0 && p < 0.0 => {
            if p <= -1.0 {
                return Err(QuadError::Divergent(format!("integrand behaves like x^{p} at the origin")));
            }
            let m = 1.0 / (1.0 + p);
            let g = |t: f64| {
                if t == 0.0 {
                    return 0.0;
                }
                let x = t.powf(m);
                f.eval(x) * m * t.powf(m - 1.0)
            };
            adapt(&g, 0.0, b.powf(1.0 / m), pieces, cfg)
        }
        _ => adapt(&|x| f.eval(x), a, b, pieces, cfg),
    }
}
