//! Bessel functions of the first and second kind, J_ν and Y_ν, for real order.
//!
//! Moderate arguments use Temme's series (x < 2) or Steed's continued
//! fraction (x ≥ 2), both combined with the J-ratio continued fraction.
//! Large arguments use the Hankel asymptotic expansion, and the two
//! half-integer orders ±1/2 are evaluated in closed form.

use std::f64::consts::{FRAC_2_PI, PI};

use super::dd::Dd;
use super::gamma::{cos_pi, rgamma, sin_pi, temme_gammas};
use super::{Order, SpecialError, SpecialValue};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-280;
const MAXIT: usize = 100_000;
const TEMME_XMAX: f64 = 2.0;
const SMALL_X: f64 = 1e-3;

/// J, Y and their derivatives at one point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cylinder {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

/// Argument above which the Hankel asymptotic expansion is used.
pub(crate) fn asymptotic_threshold(nu: f64) -> f64 {
    (25.0f64).max(1.2 * nu * nu)
}

/// Steed/Temme evaluation for ν ≥ 0, x > 0.
pub(crate) fn jy_steed(nu: f64, x: f64) -> Cylinder {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let nl = if x < TEMME_XMAX { (nu + 0.5) as usize } else { (nu - x + 1.5).max(0.0) as usize };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν / J_ν
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < TEMME_XMAX {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = FRAC_2_PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..=MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 2..=MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let fact = rjmu / rjl;
    let j = rjl1 * fact;
    let jp = rjp1 * fact;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    Cylinder { j, y: rymu, jp, yp: nu * xi * rymu - ry1 }
}

/// Hankel's P and Q series. Returns (P, Q, size of the last term used), or
/// `None` when the expansion cannot reach double precision at this `x`.
/// With `truncate` the series instead stops at its smallest term.
pub(crate) fn hankel_pq(nu: f64, x: f64, truncate: bool) -> Option<(f64, f64, f64)> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        if mag > last && odd * odd > mu {
            return truncate.then_some((p, q, last));
        }
        // Signs follow +t0 − t2 + t4 … for P and +t1 − t3 + … for Q.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if mag < 0.5 * EPS * (p.abs() + q.abs()) {
            return Some((p, q, mag));
        }
        if term == 0.0 {
            return Some((p, q, 0.0));
        }
        last = mag;
    }
    None
}

/// (J_ν, Y_ν) from the Hankel expansion, any real ν.
pub(crate) fn jy_asymptotic(nu: f64, x: f64) -> Option<(f64, f64, f64)> {
    jy_hankel(nu, x, false)
}

fn jy_hankel(nu: f64, x: f64, truncate: bool) -> Option<(f64, f64, f64)> {
    let (p, q, last) = hankel_pq(nu, x, truncate)?;
    let chi = x - (0.5 * nu + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let amp = (FRAC_2_PI / x).sqrt();
    let j = amp * (p * c - q * s);
    let y = amp * (p * s + q * c);
    let err = amp * (last + 4.0 * EPS * (1.0 + x * EPS * 10.0));
    Some((j, y, err))
}

fn jy_small_series(nu: f64, x: f64) -> f64 {
    let z = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..30 {
        term *= z / (k as f64 * (k as f64 + nu));
        sum += term;
        if term.abs() < EPS * sum.abs() {
            break;
        }
    }
    (0.5 * x).powf(nu) * rgamma(nu + 1.0) * sum
}

/// Full cylinder evaluation (J, Y, J', Y') for any real order.
pub(crate) fn cylinder(nu: f64, x: f64) -> Cylinder {
    if x >= asymptotic_threshold(nu) {
        if let (Some((j, y, _)), Some((j1, y1, _))) = (jy_asymptotic(nu, x), jy_asymptotic(nu + 1.0, x)) {
            return Cylinder { j, y, jp: nu / x * j - j1, yp: nu / x * y - y1 };
        }
    }
    if nu >= 0.0 {
        return jy_steed(nu, x);
    }
    let a = -nu;
    let base = jy_steed(a, x);
    let (c, s) = (cos_pi(a), sin_pi(a));
    Cylinder {
        j: c * base.j - s * base.y,
        y: s * base.j + c * base.y,
        jp: c * base.jp - s * base.yp,
        yp: s * base.jp + c * base.yp,
    }
}

/// J_ν(x) without domain checks; NaN for x ≤ 0 unless ν=0.
pub fn bessel_j_value(nu: f64, x: f64) -> f64 {
    if x <= 0.0 {
        if x == 0.0 {
            return if nu == 0.0 {
                1.0
            } else if nu > 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
        }
        return f64::NAN;
    }
    if nu == 0.5 {
        return (FRAC_2_PI / x).sqrt() * x.sin();
    }
    if nu == -0.5 {
        return (FRAC_2_PI / x).sqrt() * x.cos();
    }
    if x < SMALL_X && nu > -1.0 {
        return jy_small_series(nu, x);
    }
    if x >= asymptotic_threshold(nu) {
        if let Some((j, _, _)) = jy_asymptotic(nu, x) {
            return j;
        }
    }
    cylinder(nu, x).j
}

/// Y_ν(x) without domain checks.
pub fn bessel_y_value(nu: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NAN;
    }
    if nu == 0.5 {
        return -(FRAC_2_PI / x).sqrt() * x.cos();
    }
    if nu == -0.5 {
        return (FRAC_2_PI / x).sqrt() * x.sin();
    }
    if x >= asymptotic_threshold(nu) {
        if let Some((_, y, _)) = jy_asymptotic(nu, x) {
            return y;
        }
    }
    cylinder(nu, x).y
}

/// J'_ν(x).
pub fn bessel_j_derivative(nu: f64, x: f64) -> f64 {
    cylinder(nu, x).jp
}

/// J_ν(x) with an error estimate, for ν ≥ −0.99 and x > 0.
pub fn bessel_j(nu: Order, x: f64) -> Result<SpecialValue, SpecialError> {
    let nu = nu.value();
    if nu < -0.99 {
        return Err(SpecialError::OrderOutOfRange { func: "bessel_j", order: nu });
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecialError::Domain { func: "bessel_j", arg: x });
    }
    let value = bessel_j_value(nu, x);
    // Absolute accuracy tracks the envelope √(2/πx), not the local value.
    let envelope = if x > 1.0 { (FRAC_2_PI / x).sqrt() } else { value.abs().max(f64::MIN_POSITIVE) };
    let err = 16.0 * EPS * (value.abs() + envelope * (1.0 + EPS * x));
    Ok(SpecialValue::new(value, err))
}

/// Ascending series Σ (−x²/4)^k / (k! Γ(k+ν+1)) · (x/2)^ν summed in
/// double-double, so that it stays accurate well past x = 12.
pub fn bessel_j_series(nu: f64, x: f64) -> f64 {
    let z = -(Dd::prod(x, x) * 0.25);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let nu_dd = Dd::new(nu);
    for k in 1..2000 {
        let kf = k as f64;
        let denom = Dd::new(kf) * (Dd::new(kf) + nu_dd);
        term = term * z / denom;
        sum = sum + term;
        if term.hi.abs() < 1e-33 * sum.hi.abs() && term.hi.abs() < 1e-33 {
            break;
        }
        if term.hi.abs() < 1e-32 * sum.hi.abs() && kf > x {
            break;
        }
    }
    (0.5 * x).powf(nu) * rgamma(nu + 1.0) * sum.to_f64()
}

/// Hankel asymptotic expansion for J_ν, cut at its smallest term, with
/// an absolute error estimate. `None` when the series sums no terms usefully.
pub fn bessel_j_asymptotic(nu: f64, x: f64) -> Option<(f64, f64)> {
    jy_hankel(nu, x, true).filter(|&(_, _, e)| e.is_finite()).map(|(j, _, e)| (j, e))
}
