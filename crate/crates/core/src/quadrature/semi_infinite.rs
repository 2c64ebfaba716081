//! [a, ∞) by a change of variable onto [0, 1).

use super::adaptive::{adapt, integrate_finite};
use super::{Integrand, QuadConfig, QuadError, QuadResult, TailClass};

/// The substitution used for the tail beyond the head interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailMap {
    /// x = c − ln(1 − t) / rate, for exponentially decaying integrands.
    Logarithmic { rate: f64 },
    /// x = c + L((1 − t)^{−m} − 1) with m chosen from the decay power.
    Rational { power: f64 },
}

impl TailMap {
    fn for_tail(tail: &TailClass) -> Result<TailMap, QuadError> {
        match *tail {
            // Half the decay rate keeps e^{-rate x} times powers or bounded
            // oscillation vanishing at t = 1 instead of merely bounded.
            TailClass::ExponentialDecay { rate } if rate > 0.0 => Ok(TailMap::Logarithmic { rate: 0.5 * rate }),
            TailClass::ExponentialDecay { .. } => Err(QuadError::Divergent("exponential rate must be positive".into())),
            TailClass::AlgebraicDecay { power } => Ok(TailMap::Rational { power }),
            TailClass::Mixed => Ok(TailMap::Rational { power: -2.0 }),
            // Conditional convergence is only accepted on the block path.
            TailClass::OscillatoryBessel { .. } | TailClass::OscillatoryTrig { .. } => {
                Err(QuadError::WrongTail(tail.name()))
            }
        }
    }
}

/// ∫_a^∞ f for exponentially or algebraically decaying f.
pub fn integrate_semi_infinite(f: &Integrand, a: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadError> {
    let map = TailMap::for_tail(&f.tail)?;
    integrate_semi_infinite_with(f, a, map, cfg)
}

/// As [`integrate_semi_infinite`] with an explicit tail substitution.
pub fn integrate_semi_infinite_with(
    f: &Integrand,
    a: f64,
    map: TailMap,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    cfg.validate()?;
    if !(a >= 0.0) || !a.is_finite() {
        return Err(QuadError::InvalidInterval { a, b: f64::INFINITY });
    }
    let mut len = f.scale;
    let mut reach = f.reach.max(len);
    if let TailMap::Logarithmic { rate } = map {
        len = len.min(10.0 / rate);
        reach = reach.min(10.0 / rate).max(len);
    }
    let head_end = a + len;
    // A tail map scaled to `len` cannot resolve structure at `reach` when
    // the two differ by many orders of magnitude.
    let bridged = reach > 4.0 * len;
    let (c, len) = if bridged { (a + reach, reach) } else { (head_end, len) };
    let g: Box<dyn Fn(f64) -> f64 + '_> = match map {
        TailMap::Logarithmic { rate } => Box::new(move |t: f64| {
            let s = 1.0 - t;
            if s <= 0.0 {
                return 0.0;
            }
            let x = c - s.ln() / rate;
            let v = f.eval(x);
            if v == 0.0 {
                0.0
            } else {
                v / (rate * s)
            }
        }),
        TailMap::Rational { power } => {
            if power >= -1.0 {
                return Err(QuadError::Divergent(format!("integrand decays like x^{power}, which is not integrable")));
            }
            let m = (-1.0 / (power + 1.0)).clamp(0.25, 10.0);
            Box::new(move |t: f64| {
                let s = 1.0 - t;
                if s <= 0.0 {
                    return 0.0;
                }
                let w = s.powf(-m);
                let x = c + len * (w - 1.0);
                if !x.is_finite() {
                    return 0.0;
                }
                let v = f.eval(x);
                if v == 0.0 {
                    0.0
                } else {
                    v * len * m * w / s
                }
            })
        }
    };
    check_divergence(&*g)?;
    // Head, bridge and tail share the error budget.
    let part_cfg = QuadConfig { rel_tol: cfg.rel_tol / 3.0, abs_tol: cfg.abs_tol / 3.0, ..*cfg };
    let mut head = integrate_finite(f, a, head_end, &part_cfg)?;
    if bridged {
        let ratio = reach / (head_end - a);
        let g = |s: f64| {
            let d = (head_end - a) * s.exp();
            f.eval(a + d) * d
        };
        let pieces = ratio.ln().ceil().clamp(1.0, 64.0) as usize;
        let bridge_cfg = QuadConfig { max_evals: cfg.max_evals.saturating_sub(head.evals).max(63), ..part_cfg };
        let bridge = adapt(&g, 0.0, ratio.ln(), pieces, &bridge_cfg)?;
        head = head.merge(bridge);
    }
    let tail_cfg = QuadConfig {
        max_evals: cfg.max_evals.saturating_sub(head.evals).max(63),
        abs_tol: part_cfg.abs_tol.max(part_cfg.rel_tol * head.value.abs()),
        ..part_cfg
    };
    let tail = adapt(&*g, 0.0, 1.0, 4, &tail_cfg)?;
    // Each piece met its share of the budget or its rounding floor.
    Ok(head.merge(tail))
}

/// Flags a mapped integrand that grows at least like 1/(1 − t) near t = 1.
fn check_divergence(g: &dyn Fn(f64) -> f64) -> Result<(), QuadError> {
    let samples: Vec<f64> = (0..7).map(|k| g(1.0 - 2f64.powi(-(6 + 4 * k))).abs()).collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Ok(()); // left to the integrator's own NaN diagnostic
    }
    let growing = samples.windows(2).skip(2).all(|w| w[0] > 0.0 && w[1] >= 15.0 * w[0]);
    if growing {
        return Err(QuadError::Divergent("mapped integrand grows without bound toward infinity".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn exponential_and_lorentzian() {
        let f = Integrand::new(|x: f64| (-x).exp(), TailClass::ExponentialDecay { rate: 1.0 });
        let r = integrate_semi_infinite(&f, 0.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12 && r.converged);
        let f = Integrand::new(|x: f64| 1.0 / (x * x + 1.0), TailClass::AlgebraicDecay { power: -2.0 });
        let r = integrate_semi_infinite(&f, 0.0, &cfg()).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn partial_fraction_widder_case() {
        let f =
            Integrand::new(|x: f64| x * x / ((x * x + 1.0) * (x * x + 4.0)), TailClass::AlgebraicDecay { power: -2.0 });
        let r = integrate_semi_infinite(&f, 0.0, &cfg()).unwrap();
        assert!((r.value - PI / 6.0).abs() < 1e-11);
    }

    #[test]
    fn narrow_peak_far_below_decay_length() {
        // ∫ e^{-x}/(x² + y²) = π/(2y) + ln y + γ − 1 + O(y).
        for y in [1e-8, 1e-20, 1e-40] {
            let f =
                Integrand::new(move |x: f64| (-x).exp() / (x * x + y * y), TailClass::ExponentialDecay { rate: 1.0 })
                    .with_scale(y);
            let r = integrate_semi_infinite(&f, 0.0, &cfg()).unwrap();
            let exact = PI / (2.0 * y) + y.ln() + 0.5772156649015329 - 1.0;
            assert!(((r.value - exact) / exact).abs() < 1e-10, "y={y}: {} vs {exact}", r.value);
        }
    }

    #[test]
    fn both_maps_agree() {
        let h = |x: f64| (-x).exp() / (1.0 + x);
        let f = Integrand::smooth(h);
        let a = integrate_semi_infinite_with(&f, 0.0, TailMap::Logarithmic { rate: 1.0 }, &cfg()).unwrap();
        let b = integrate_semi_infinite_with(&f, 0.0, TailMap::Rational { power: -4.0 }, &cfg()).unwrap();
        assert!((a.value - b.value).abs() < 1e-10);
    }

    #[test]
    fn divergence_detected() {
        let f = Integrand::new(|_x: f64| 1.0, TailClass::ExponentialDecay { rate: 1.0 });
        assert!(matches!(integrate_semi_infinite(&f, 0.0, &cfg()), Err(QuadError::Divergent(_))));
        let f = Integrand::new(|x: f64| 1.0 / (1.0 + x), TailClass::AlgebraicDecay { power: -1.0 });
        assert!(matches!(integrate_semi_infinite(&f, 0.0, &cfg()), Err(QuadError::Divergent(_))));
        // Declared too optimistically: the true decay is x^{-1/2}.
        let f = Integrand::new(|x: f64| (1.0 + x).powf(-0.5), TailClass::AlgebraicDecay { power: -3.0 });
        assert!(matches!(integrate_semi_infinite(&f, 0.0, &cfg()), Err(QuadError::Divergent(_))));
    }

    #[test]
    fn oscillatory_tail_rejected() {
        let f = Integrand::new(
            f64::sin,
            TailClass::OscillatoryTrig { frequency: 1.0, phase: crate::quadrature::TrigPhase::Sine },
        );
        assert!(matches!(integrate_semi_infinite(&f, 0.0, &cfg()), Err(QuadError::WrongTail(_))));
    }
}
