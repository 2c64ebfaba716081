//! Zeros of J_ν and Y_ν: McMahon's expansion as the starting guess,
//! Newton refinement, and a sign-change scan when the guess is unreliable.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::QuadError;
use crate::specfun::{cylinder, Order, SpecialError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BesselKind {
    J,
    Y,
}

const SCAN_STEP: f64 = 0.25;
const MAX_SPACING: f64 = 2.0 * PI;

fn value_and_slope(kind: BesselKind, nu: f64, t: f64) -> (f64, f64) {
    let c = cylinder(nu, t);
    match kind {
        BesselKind::J => (c.j, c.jp),
        BesselKind::Y => (c.y, c.yp),
    }
}

/// McMahon's large-zero expansion for the k-th positive zero.
fn mcmahon(kind: BesselKind, nu: f64, k: usize) -> f64 {
    let shift = match kind {
        BesselKind::J => 0.25,
        BesselKind::Y => 0.75,
    };
    let beta = (k as f64 + 0.5 * nu - shift) * PI;
    let mu = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

/// Newton iteration from `guess`; `None` if it wanders or stalls.
fn newton(kind: BesselKind, nu: f64, guess: f64) -> Option<f64> {
    let mut t = guess;
    for _ in 0..40 {
        if !(t > 0.0) {
            return None;
        }
        let (f, fp) = value_and_slope(kind, nu, t);
        if fp == 0.0 || !fp.is_finite() {
            return None;
        }
        let step = f / fp;
        if step.abs() > 2.0 {
            return None;
        }
        t -= step;
        if step.abs() <= 4.0 * f64::EPSILON * t {
            return Some(t);
        }
    }
    None
}

/// Bisection-safeguarded Newton inside a sign-change bracket.
fn refine_bracket(kind: BesselKind, nu: f64, mut lo: f64, mut hi: f64) -> f64 {
    let (mut flo, _) = value_and_slope(kind, nu, lo);
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (f, fp) = value_and_slope(kind, nu, t);
        if f == 0.0 {
            return t;
        }
        if (f > 0.0) == (flo > 0.0) {
            lo = t;
            flo = f;
        } else {
            hi = t;
        }
        let newton = t - f / fp;
        let next = if fp != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - t).abs() <= 4.0 * f64::EPSILON * t || hi - lo <= 4.0 * f64::EPSILON * hi {
            return next;
        }
        t = next;
    }
    t
}

/// Successive zeros of J_ν(t) or Y_ν(t) strictly beyond a starting point.
#[derive(Debug, Clone)]
pub struct ZeroIter {
    kind: BesselKind,
    nu: f64,
    last: f64,
    prev: Option<f64>,
    found: usize,
}

impl ZeroIter {
    pub fn new(kind: BesselKind, nu: f64, start: f64) -> Self {
        ZeroIter { kind, nu, last: start.max(0.0), prev: None, found: 0 }
    }

    fn sign_after(&self, t: f64) -> bool {
        let eps = 1e-9 * t.max(1.0);
        value_and_slope(self.kind, self.nu, t + eps).0 > 0.0
    }

    fn scan_forward(&self) -> f64 {
        let start = self.last + 1e-9 * self.last.max(1e-3);
        let mut lo = start;
        let mut flo = value_and_slope(self.kind, self.nu, lo).0;
        loop {
            let hi = lo + SCAN_STEP;
            let fhi = value_and_slope(self.kind, self.nu, hi).0;
            if fhi == 0.0 {
                return hi;
            }
            if (fhi > 0.0) != (flo > 0.0) {
                return refine_bracket(self.kind, self.nu, lo, hi);
            }
            lo = hi;
            flo = fhi;
        }
    }

    fn guess(&self) -> Option<f64> {
        if let Some(prev) = self.prev {
            return Some(2.0 * self.last - prev);
        }
        // First zero: McMahon only away from the turning point.
        if self.last < 2.0 * self.nu.abs() + 5.0 {
            return None;
        }
        let shift = if self.kind == BesselKind::J { 0.25 } else { 0.75 };
        let k0 = (self.last / PI - 0.5 * self.nu + shift).floor().max(1.0) as usize;
        (k0..k0 + 3).map(|k| mcmahon(self.kind, self.nu, k)).find(|&g| g > self.last)
    }

    fn accept(&self, z: f64) -> bool {
        let gap = z - self.last;
        if !(gap > 1e-6) || gap > MAX_SPACING {
            return false;
        }
        if let Some(prev) = self.prev {
            if gap < 0.3 * (self.last - prev) {
                return false;
            }
        }
        // Exactly one sign change in between.
        self.sign_after(self.last) != self.sign_after(z)
    }
}

impl Iterator for ZeroIter {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let z = match self.guess().and_then(|g| newton(self.kind, self.nu, g)) {
            Some(z) if self.accept(z) => z,
            _ => self.scan_forward(),
        };
        if self.found > 0 {
            self.prev = Some(self.last);
        }
        self.last = z;
        self.found += 1;
        Some(z)
    }
}

/// The k_from-th through k_to-th positive zeros of J_ν (1-based).
pub fn find_bessel_zeros(nu: Order, k_from: usize, k_to: usize) -> Result<Vec<f64>, QuadError> {
    let nu = nu.value();
    if !(-0.99..=10.0).contains(&nu) {
        return Err(SpecialError::OrderOutOfRange { func: "find_bessel_zeros", order: nu }.into());
    }
    if k_from < 1 || k_from > k_to {
        return Err(QuadError::InvalidConfig("zero indices must satisfy 1 <= k_from <= k_to"));
    }
    // Far enough out McMahon pins the index; otherwise count from the origin.
    let seed = mcmahon(BesselKind::J, nu, k_from);
    if k_from > 1 && seed > 2.0 * nu.abs() + 20.0 {
        if let Some(z) = newton(BesselKind::J, nu, seed) {
            if (z - seed).abs() < 0.5 {
                let mut out = vec![z];
                let mut it = ZeroIter { kind: BesselKind::J, nu, last: z, prev: None, found: 1 };
                out.extend(it.by_ref().take(k_to - k_from));
                return Ok(out);
            }
        }
    }
    Ok(ZeroIter::new(BesselKind::J, nu, 0.0).skip(k_from - 1).take(k_to - k_from + 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_j_value, bessel_y_value};

    fn order(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn first_zero_of_j0() {
        let z = find_bessel_zeros(order(0.0), 1, 1).unwrap();
        assert!((z[0] - 2.404_825_557_695_773).abs() < 1e-14);
    }

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        let z = find_bessel_zeros(order(0.5), 1, 30).unwrap();
        for (k, zk) in z.iter().enumerate() {
            assert!((zk - (k + 1) as f64 * PI).abs() < 1e-12 * zk, "k={k}");
        }
        let far = find_bessel_zeros(order(0.5), 500, 502).unwrap();
        assert!((far[0] - 500.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn increasing_and_small_residual() {
        for &nu in &[-0.99, -0.5, 0.0, 1.0, 2.5, 10.0] {
            let z = find_bessel_zeros(order(nu), 1, 40).unwrap();
            assert!(z.windows(2).all(|w| w[1] > w[0]), "nu={nu}");
            for &t in &z {
                assert!(bessel_j_value(nu, t).abs() <= 1e-10, "nu={nu} t={t}");
            }
        }
    }

    #[test]
    fn index_consistent_between_paths() {
        let counted = find_bessel_zeros(order(1.0), 1, 60).unwrap();
        let seeded = find_bessel_zeros(order(1.0), 50, 55).unwrap();
        for (a, b) in counted[49..55].iter().zip(&seeded) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn y_zeros_after_point() {
        let it = ZeroIter::new(BesselKind::Y, 0.3, 30.0);
        let z: Vec<f64> = it.take(10).collect();
        assert!(z[0] > 30.0 && z[0] < 30.0 + MAX_SPACING);
        for &t in &z {
            assert!(bessel_y_value(0.3, t).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(find_bessel_zeros(order(0.0), 0, 3).is_err());
        assert!(find_bessel_zeros(order(11.0), 1, 3).is_err());
    }
}
