//! Block summation between consecutive kernel zeros, with acceleration of
//! the partial-sum sequence.

use std::f64::consts::PI;

use super::accel::{euler_average, levin_u};
use super::adaptive::integrate_finite;
use super::zeros::ZeroIter;
use super::{Accel, Integrand, QuadConfig, QuadError, QuadResult, TailClass, TrigPhase};

const LEVIN_WINDOW: usize = 15;
const EULER_WINDOW: usize = 12;

enum Breaks {
    Trig { omega: f64, offset: f64, k: f64 },
    Bessel { omega: f64, zeros: ZeroIter },
}

impl Breaks {
    fn new(tail: &TailClass, a: f64) -> Result<Breaks, QuadError> {
        match *tail {
            TailClass::OscillatoryTrig { frequency, phase } => {
                if !(frequency > 0.0) {
                    return Err(QuadError::InvalidConfig("frequency must be positive"));
                }
                let offset = match phase {
                    TrigPhase::Sine => 0.0,
                    TrigPhase::Cosine => 0.5,
                };
                // First index with (k + offset)π > ωa.
                let k = ((frequency * a) / PI - offset).floor() + 1.0;
                Ok(Breaks::Trig { omega: frequency, offset, k: k.max(0.0) })
            }
            TailClass::OscillatoryBessel { order, frequency, kind } => {
                if !(frequency > 0.0) {
                    return Err(QuadError::InvalidConfig("frequency must be positive"));
                }
                Ok(Breaks::Bessel { omega: frequency, zeros: ZeroIter::new(kind, order, frequency * a) })
            }
            _ => Err(QuadError::WrongTail(tail.name())),
        }
    }

    fn next(&mut self) -> f64 {
        match self {
            Breaks::Trig { omega, offset, k } => {
                let x = (*k + *offset) * PI / *omega;
                *k += 1.0;
                x
            }
            Breaks::Bessel { omega, zeros } => zeros.next().unwrap_or(f64::INFINITY) / *omega,
        }
    }
}

/// ∫_lo^hi f, pre-split geometrically when the interval is long compared
/// with the integrand's length scale so that structure near `lo` is seen.
pub(crate) fn integrate_long(f: &Integrand, lo: f64, hi: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadError> {
    let scale = f.scale;
    if hi - lo <= 16.0 * scale {
        return integrate_finite(f, lo, hi, cfg);
    }
    let mut total: Option<QuadResult> = None;
    let mut left = lo;
    let mut width = scale;
    while left < hi {
        let right = (left + width).min(hi);
        let piece = integrate_finite(f, left, right, cfg)?;
        total = Some(match total {
            None => piece,
            Some(t) => t.merge(piece),
        });
        left = right;
        width *= 2.0;
    }
    Ok(total.expect("at least one piece"))
}

/// ∫_a^∞ f for an integrand whose tail class names its oscillating kernel.
pub fn integrate_oscillatory(f: &Integrand, a: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadError> {
    cfg.validate()?;
    if !(a >= 0.0) || !a.is_finite() {
        return Err(QuadError::InvalidInterval { a, b: f64::INFINITY });
    }
    let mut breaks = Breaks::new(&f.tail, a)?;
    let block_cfg = QuadConfig { rel_tol: cfg.rel_tol / 4.0, abs_tol: cfg.abs_tol / 4.0, ..*cfg };

    let mut sums: Vec<f64> = Vec::new();
    let mut terms: Vec<f64> = Vec::new();
    let mut block_err = 0.0;
    let mut evals = 0;
    let mut all_blocks_ok = true;
    let mut estimates: Vec<f64> = Vec::new();
    let mut left = a;
    let mut running = 0.0;

    while sums.len() < cfg.max_oscillation_blocks {
        let right = breaks.next();
        if !right.is_finite() || right <= left {
            return Err(QuadError::InvalidConfig("kernel zero sequence failed to advance"));
        }
        let block = integrate_long(f, left, right, &block_cfg)?;
        evals += block.evals;
        block_err += block.abs_err;
        all_blocks_ok &= block.converged;
        running += block.value;
        sums.push(running);
        terms.push(block.value);
        left = right;

        let n = sums.len();
        let target = cfg.target(running);
        // Envelope has died out: plain summation is already converged.
        if n >= 3 && terms[n - 3..].iter().all(|t| t.abs() <= 1e-3 * target) {
            let tail_bound = terms[n - 1].abs();
            return Ok(QuadResult { value: running, abs_err: block_err + tail_bound, evals, converged: all_blocks_ok });
        }

        let estimate = match cfg.accel {
            Accel::None => Some(running),
            Accel::Euler => euler_average(&sums[n.saturating_sub(EULER_WINDOW)..]),
            Accel::LevinU => {
                if n < 3 {
                    None
                } else {
                    let start = n.saturating_sub(LEVIN_WINDOW);
                    levin_u(&sums[start..], &terms[start..], start)
                        .or_else(|| euler_average(&sums[n.saturating_sub(EULER_WINDOW)..]))
                }
            }
        };
        if let Some(e) = estimate {
            estimates.push(e);
        }
        let m = estimates.len();
        if m >= 3 && n >= 4 {
            let d1 = (estimates[m - 1] - estimates[m - 2]).abs();
            let d2 = (estimates[m - 2] - estimates[m - 3]).abs();
            let value = estimates[m - 1];
            let target = cfg.target(value);
            if d1 <= target && d2 <= target {
                return Ok(QuadResult { value, abs_err: d1.max(d2) + block_err, evals, converged: all_blocks_ok });
            }
        }
        if evals >= cfg.max_evals {
            break;
        }
    }

    let m = estimates.len();
    let value = estimates.last().copied().unwrap_or(running);
    let spread = if m >= 2 { (estimates[m - 1] - estimates[m - 2]).abs() } else { value.abs() };
    Ok(QuadResult { value, abs_err: spread + block_err, evals, converged: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::BesselKind;
    use crate::specfun::{bessel_j_value, bessel_k_value};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn sine(w: f64) -> TailClass {
        TailClass::OscillatoryTrig { frequency: w, phase: TrigPhase::Sine }
    }

    #[test]
    fn damped_sine() {
        let f = Integrand::new(|x: f64| x.sin() * (-x).exp(), sine(1.0));
        let r = integrate_oscillatory(&f, 0.0, &cfg()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-11 && r.converged, "{r:?}");
    }

    #[test]
    fn dirichlet_integral() {
        let f = Integrand::new(|x: f64| if x == 0.0 { 1.0 } else { x.sin() / x }, sine(1.0));
        for accel in [Accel::LevinU, Accel::Euler] {
            let c = QuadConfig { accel, ..cfg() };
            let r = integrate_oscillatory(&f, 0.0, &c).unwrap();
            assert!((r.value - PI / 2.0).abs() < 1e-8, "{accel:?}: {r:?}");
            assert!(r.converged);
        }
    }

    #[test]
    fn unaccelerated_slow_series_reports_nonconvergence() {
        let f = Integrand::new(|x: f64| if x == 0.0 { 1.0 } else { x.sin() / x }, sine(1.0));
        let c = QuadConfig { accel: Accel::None, max_oscillation_blocks: 50, ..cfg() };
        let r = integrate_oscillatory(&f, 0.0, &c).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn kernel_product_integral() {
        // ∫ u J_0(u) K_0(2u) du = 1/5
        let f = Integrand::new(
            |u: f64| u * bessel_j_value(0.0, u) * bessel_k_value(0.0, 2.0 * u),
            TailClass::OscillatoryBessel { order: 0.0, frequency: 1.0, kind: BesselKind::J },
        );
        let r = integrate_oscillatory(&f, 0.0, &cfg()).unwrap();
        assert!((r.value - 0.2).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn long_first_block_keeps_peak() {
        // Very low frequency: the first zero sits far beyond the envelope.
        let w = 1e-5;
        let f = Integrand::new(move |x: f64| (w * x).sin() * (-x).exp(), sine(w));
        let r = integrate_oscillatory(&f, 0.0, &cfg()).unwrap();
        let exact = w / (1.0 + w * w);
        assert!(((r.value - exact) / exact).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn rejects_non_oscillatory_tail() {
        let f = Integrand::smooth(|x: f64| (-x).exp());
        assert!(matches!(integrate_oscillatory(&f, 0.0, &cfg()), Err(QuadError::WrongTail(_))));
    }
}
