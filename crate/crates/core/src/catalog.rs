//! Named test-function families with declared shape metadata, parameter
//! constraints and known transforms to use as oracles.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::specfun::{bessel_j_value, bessel_k_value, cos_pi, gamma_value, sin_pi, struve_h_value, Order};
use crate::transforms::{Decay, RealFunction, Shape, TransformKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown function family '{0}'")]
    UnknownFamily(String),
    #[error("malformed function descriptor '{0}': expected family:key=value,...")]
    Syntax(String),
    #[error("{family} has no parameter '{param}'")]
    UnknownParam { family: &'static str, param: String },
    #[error("{family} needs parameter '{param}'")]
    MissingParam { family: &'static str, param: &'static str },
    #[error("{family}: constraint {constraint} violated ({param} = {value})")]
    Constraint { family: &'static str, constraint: String, param: &'static str, value: f64 },
    #[error("empty sampling region: {0}")]
    EmptyRegion(String),
}

/// A strict two-sided (possibly one-sided) inequality lo < param < hi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub param: &'static str,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl Constraint {
    pub const fn above(param: &'static str, lo: f64) -> Self {
        Constraint { param, lower: Some(lo), upper: None }
    }
    pub const fn between(param: &'static str, lo: f64, hi: f64) -> Self {
        Constraint { param, lower: Some(lo), upper: Some(hi) }
    }
    pub fn holds(&self, v: f64) -> bool {
        v.is_finite() && self.lower.is_none_or(|lo| v > lo) && self.upper.is_none_or(|hi| v < hi)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lower, self.upper) {
            (Some(lo), Some(hi)) => write!(f, "{lo} < {} < {hi}", self.param),
            (Some(lo), None) => write!(f, "{} > {lo}", self.param),
            (None, Some(hi)) => write!(f, "{} < {hi}", self.param),
            (None, None) => write!(f, "{} finite", self.param),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Family {
    /// x^μ
    Power { mu: f64 },
    /// e^{−ax}
    ExpDecay { a: f64 },
    /// x^μ e^{−ax}
    PowerExp { mu: f64, a: f64 },
    /// x^{2ν}/(x² + a²)
    LorentzPower { nu: f64, a: f64 },
    /// x^{ν+1/2}/(x² + t²)
    HankelKernelFrac { nu: f64, t: f64 },
    /// x^{2ν+1/2} J_ν(ax)
    BesselPower { nu: f64, a: f64 },
    /// x^{1/2} H_ν(ax)
    StruveHalf { nu: f64, a: f64 },
    /// e^{−ax²}
    Gauss { a: f64 },
}

pub const FAMILY_NAMES: [&str; 8] =
    ["power", "exp_decay", "power_exp", "lorentz_power", "hankel_kernel_frac", "bessel_power", "struve_half", "gauss"];

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Power { .. } => "power",
            Family::ExpDecay { .. } => "exp_decay",
            Family::PowerExp { .. } => "power_exp",
            Family::LorentzPower { .. } => "lorentz_power",
            Family::HankelKernelFrac { .. } => "hankel_kernel_frac",
            Family::BesselPower { .. } => "bessel_power",
            Family::StruveHalf { .. } => "struve_half",
            Family::Gauss { .. } => "gauss",
        }
    }

    fn param_names(name: &str) -> Option<&'static [&'static str]> {
        Some(match name {
            "power" => &["mu"],
            "exp_decay" | "gauss" => &["a"],
            "power_exp" => &["mu", "a"],
            "lorentz_power" | "bessel_power" | "struve_half" => &["nu", "a"],
            "hankel_kernel_frac" => &["nu", "t"],
            _ => return None,
        })
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let pairs: Vec<(&str, f64)> = match *self {
            Family::Power { mu } => vec![("mu", mu)],
            Family::ExpDecay { a } | Family::Gauss { a } => vec![("a", a)],
            Family::PowerExp { mu, a } => vec![("mu", mu), ("a", a)],
            Family::LorentzPower { nu, a } | Family::BesselPower { nu, a } | Family::StruveHalf { nu, a } => {
                vec![("nu", nu), ("a", a)]
            }
            Family::HankelKernelFrac { nu, t } => vec![("nu", nu), ("t", t)],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    /// The defining inequalities on the family's parameters.
    pub fn constraints(&self) -> Vec<Constraint> {
        let positive = |p| Constraint::above(p, 0.0);
        match self {
            Family::Power { .. } => vec![Constraint { param: "mu", lower: None, upper: None }],
            Family::ExpDecay { .. } | Family::Gauss { .. } => vec![positive("a")],
            Family::PowerExp { .. } => vec![Constraint::above("mu", -1.0), positive("a")],
            Family::LorentzPower { .. } => vec![Constraint::between("nu", -1.0, 1.0), positive("a")],
            Family::HankelKernelFrac { .. } => vec![Constraint::between("nu", -1.0, 1.5), positive("t")],
            Family::BesselPower { .. } => vec![Constraint::above("nu", -1.0), positive("a")],
            Family::StruveHalf { .. } => vec![Constraint::above("nu", -1.5), positive("a")],
        }
    }

    fn build(name: &str, p: &BTreeMap<String, f64>) -> Result<Family, CatalogError> {
        let names = Family::param_names(name).ok_or_else(|| CatalogError::UnknownFamily(name.to_string()))?;
        let family: &'static str = FAMILY_NAMES.iter().find(|n| **n == name).copied().unwrap_or("?");
        for k in p.keys() {
            if !names.contains(&k.as_str()) {
                return Err(CatalogError::UnknownParam { family, param: k.clone() });
            }
        }
        let get = |k: &'static str| -> Result<f64, CatalogError> {
            match p.get(k) {
                Some(&v) => Ok(v),
                None if k == "a" || k == "t" => Ok(1.0),
                None => Err(CatalogError::MissingParam { family, param: k }),
            }
        };
        Ok(match name {
            "power" => Family::Power { mu: get("mu")? },
            "exp_decay" => Family::ExpDecay { a: get("a")? },
            "power_exp" => Family::PowerExp { mu: get("mu")?, a: get("a")? },
            "lorentz_power" => Family::LorentzPower { nu: get("nu")?, a: get("a")? },
            "hankel_kernel_frac" => Family::HankelKernelFrac { nu: get("nu")?, t: get("t")? },
            "bessel_power" => Family::BesselPower { nu: get("nu")?, a: get("a")? },
            "struve_half" => Family::StruveHalf { nu: get("nu")?, a: get("a")? },
            "gauss" => Family::Gauss { a: get("a")? },
            _ => unreachable!(),
        })
    }
}

/// A validated member of a catalog family, times a constant amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionDescriptor {
    #[serde(flatten)]
    family: Family,
    #[serde(default = "unit", skip_serializing_if = "is_unit")]
    amplitude: f64,
}

fn unit() -> f64 {
    1.0
}

fn is_unit(c: &f64) -> bool {
    *c == 1.0
}

/// Checks the family's constraints and returns the descriptor.
pub fn instantiate(family: Family) -> Result<FunctionDescriptor, CatalogError> {
    let params = family.params();
    for c in family.constraints() {
        let v = params[c.param];
        if !c.holds(v) {
            return Err(CatalogError::Constraint {
                family: family.name(),
                constraint: c.to_string(),
                param: c.param,
                value: v,
            });
        }
    }
    Ok(FunctionDescriptor { family, amplitude: 1.0 })
}

impl FunctionDescriptor {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// The same member multiplied by `c`.
    pub fn scaled(self, c: f64) -> Self {
        FunctionDescriptor { amplitude: self.amplitude * c, ..self }
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        self.family.params()
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        self.family.constraints()
    }
}

impl FromStr for FunctionDescriptor {
    type Err = CatalogError;

    /// `[c*]family:key=value,key=value`; the parameter list may be omitted
    /// when every parameter has a default.
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let s = s.trim();
        let (amplitude, body) = match s.split_once('*') {
            Some((c, body)) => {
                let c: f64 = c.trim().parse().map_err(|_| CatalogError::Syntax(s.to_string()))?;
                if !c.is_finite() {
                    return Err(CatalogError::Syntax(s.to_string()));
                }
                (c, body.trim())
            }
            None => (1.0, s),
        };
        let (name, rest) = body.split_once(':').unwrap_or((body, ""));
        let mut params = BTreeMap::new();
        for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| CatalogError::Syntax(s.to_string()))?;
            let v: f64 = v.trim().parse().map_err(|_| CatalogError::Syntax(s.to_string()))?;
            if params.insert(k.trim().to_string(), v).is_some() {
                return Err(CatalogError::Syntax(s.to_string()));
            }
        }
        Ok(instantiate(Family::build(name.trim(), &params)?)?.scaled(amplitude))
    }
}

impl fmt::Display for FunctionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Family::param_names(self.name()).expect("known family");
        let params = self.params();
        let body: Vec<String> = names.iter().map(|k| format!("{k}={}", params[*k])).collect();
        if self.amplitude != 1.0 {
            write!(f, "{}*", self.amplitude)?;
        }
        write!(f, "{}:{}", self.name(), body.join(","))
    }
}

impl RealFunction for FunctionDescriptor {
    fn eval(&self, x: f64) -> f64 {
        let v = match self.family {
            Family::Power { mu } => x.powf(mu),
            Family::ExpDecay { a } => (-a * x).exp(),
            Family::PowerExp { mu, a } => {
                let e = (-a * x).exp();
                if e == 0.0 {
                    0.0
                } else {
                    x.powf(mu) * e
                }
            }
            Family::LorentzPower { nu, a } => x.powf(2.0 * nu) / (x * x + a * a),
            Family::HankelKernelFrac { nu, t } => x.powf(nu + 0.5) / (x * x + t * t),
            Family::BesselPower { nu, a } => x.powf(2.0 * nu + 0.5) * bessel_j_value(nu, a * x),
            Family::StruveHalf { nu, a } => x.sqrt() * struve_h_value(nu, a * x),
            Family::Gauss { a } => (-a * x * x).exp(),
        };
        self.amplitude * v
    }

    fn shape(&self) -> Shape {
        match self.family {
            Family::Power { mu } => Shape::new(mu, Decay::Algebraic { power: mu }),
            Family::ExpDecay { a } => Shape::new(0.0, Decay::Exponential { rate: a }).with_scale(1.0 / a),
            Family::PowerExp { mu, a } => Shape::new(mu, Decay::Exponential { rate: a }).with_scale(1.0 / a),
            Family::LorentzPower { nu, a } => {
                Shape::new(2.0 * nu, Decay::Algebraic { power: 2.0 * nu - 2.0 }).with_scale(a)
            }
            Family::HankelKernelFrac { nu, t } => {
                Shape::new(nu + 0.5, Decay::Algebraic { power: nu - 1.5 }).with_scale(t)
            }
            Family::BesselPower { nu, a } => {
                Shape::new(3.0 * nu + 0.5, Decay::Oscillating { envelope: 2.0 * nu, frequency: a }).with_scale(1.0 / a)
            }
            // H_ν = Y_ν + R_ν with R_ν(x) ~ x^{ν−1}.
            Family::StruveHalf { nu, a } => {
                Shape::new(nu + 1.5, Decay::Oscillating { envelope: (nu - 0.5).max(0.0), frequency: a })
                    .with_scale(1.0 / a)
            }
            Family::Gauss { a } => {
                let s = a.sqrt();
                Shape::new(0.0, Decay::Exponential { rate: 2.0 * s }).with_scale(1.0 / s)
            }
        }
    }
}

/// A known transform of a catalog member, used as an oracle.
pub struct ClosedForm {
    pub transform: TransformKind,
    pub citation: &'static str,
    /// Open interval of admissible points (y, or the Mellin exponent).
    pub point_range: (f64, f64),
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl ClosedForm {
    fn new(
        transform: TransformKind,
        citation: &'static str,
        point_range: (f64, f64),
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ClosedForm { transform, citation, point_range, eval: Box::new(eval) }
    }

    fn positive(
        transform: TransformKind,
        citation: &'static str,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(transform, citation, (0.0, f64::INFINITY), eval)
    }

    pub fn eval(&self, point: f64) -> f64 {
        (self.eval)(point)
    }

    /// Three sample points inside the admissible range.
    pub fn sample_points(&self) -> Vec<f64> {
        let (lo, hi) = self.point_range;
        if lo == 0.0 && hi.is_infinite() {
            vec![0.5, 1.0, 2.0]
        } else {
            strip_points(lo, hi.min(lo + 4.0), 3).unwrap_or_default()
        }
    }
}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosedForm")
            .field("transform", &self.transform)
            .field("citation", &self.citation)
            .field("point_range", &self.point_range)
            .finish()
    }
}

fn order(nu: f64) -> Order {
    Order::new(nu).expect("finite order")
}

/// Orders at which order-bearing closed forms are offered.
const ORDERS: [f64; 3] = [0.0, 0.5, 1.0];

/// 𝓟{x^{2ν}/(x²+a²)}(y) = π (a^{2ν} − y^{2ν}) / (2 sin(νπ) (a² − y²)),
/// written so that the removable singularities at ν = 0 and y = a are
/// evaluated without cancellation.
pub fn lorentz_widder(nu: f64, a: f64, y: f64) -> f64 {
    // ν / sin(νπ)
    let q = if nu.abs() < 1e-4 { (1.0 + (nu * PI).powi(2) / 6.0) / PI } else { nu / sin_pi(nu) };
    let d = (a / y).ln();
    // (e^{2νd} − 1) / (ν (e^{2d} − 1))
    let e = if d.abs() < 1e-7 {
        1.0 + (nu - 1.0) * d
    } else if nu == 0.0 {
        2.0 * d / (2.0 * d).exp_m1()
    } else {
        (2.0 * nu * d).exp_m1() / (nu * (2.0 * d).exp_m1())
    };
    0.5 * PI * y.powf(2.0 * nu - 2.0) * q * e
}

/// ∫ x^{s−1}/(x² + b²) dx = (π/2) b^{s−2} / sin(πs/2), 0 < s < 2.
fn mellin_lorentz(s: f64, b: f64) -> f64 {
    0.5 * PI * b.powf(s - 2.0) / sin_pi(0.5 * s)
}

/// Known transforms of `f`, all valid at f's parameters.
pub fn closed_forms(f: &FunctionDescriptor) -> Vec<ClosedForm> {
    let c = f.amplitude;
    let mut out = unit_closed_forms(f);
    if c != 1.0 {
        for cf in &mut out {
            let eval = std::mem::replace(&mut cf.eval, Box::new(|_| 0.0));
            cf.eval = Box::new(move |y| c * eval(y));
        }
    }
    out
}

fn unit_closed_forms(f: &FunctionDescriptor) -> Vec<ClosedForm> {
    let mut out = Vec::new();
    match f.family {
        Family::Power { mu: m } => {
            if m > -1.0 {
                out.push(ClosedForm::positive(TransformKind::Laplace, "Laplace transform of a power", move |y| {
                    gamma_value(m + 1.0) * y.powf(-m - 1.0)
                }));
            }
            if m > -2.0 && m < 0.0 {
                out.push(ClosedForm::positive(TransformKind::Widder, "Widder transform of a power", move |y| {
                    0.5 * PI / cos_pi(0.5 * (m + 1.0)) * y.powf(m)
                }));
                out.push(ClosedForm::positive(
                    TransformKind::FourierSine,
                    "Fourier sine transform of a power",
                    move |y| gamma_value(m + 1.0) * sin_pi(0.5 * (m + 1.0)) * y.powf(-m - 1.0),
                ));
            }
            if m > -1.0 && m < 0.0 {
                out.push(ClosedForm::positive(TransformKind::Stieltjes, "Stieltjes transform of a power", move |y| {
                    PI / sin_pi(m + 1.0) * y.powf(m)
                }));
                out.push(ClosedForm::positive(
                    TransformKind::FourierCosine,
                    "Fourier cosine transform of a power",
                    move |y| gamma_value(m + 1.0) * cos_pi(0.5 * (m + 1.0)) * y.powf(-m - 1.0),
                ));
            }
            for nu in ORDERS {
                if m > -nu - 1.5 && m < 0.0 {
                    out.push(ClosedForm::positive(
                        TransformKind::Hankel(order(nu)),
                        "Hankel transform of a power",
                        move |y| {
                            2f64.powf(m + 0.5) * gamma_value(0.5 * m + 0.5 * nu + 0.75)
                                / gamma_value(0.25 + 0.5 * nu - 0.5 * m)
                                * y.powf(-m - 1.0)
                        },
                    ));
                }
                if m > nu - 1.5 {
                    out.push(ClosedForm::positive(
                        TransformKind::KTransform(order(nu)),
                        "K-transform of a power",
                        move |y| {
                            2f64.powf(m - 0.5)
                                * gamma_value(0.5 * (m + 1.5 + nu))
                                * gamma_value(0.5 * (m + 1.5 - nu))
                                * y.powf(-m - 1.0)
                        },
                    ));
                }
                if m + nu > -2.5 && m + nu < -0.5 && m < 0.0 {
                    out.push(ClosedForm::positive(
                        TransformKind::StruveTransform(order(nu)),
                        "Struve transform of a power",
                        move |y| struve_power(nu, m, y),
                    ));
                }
            }
        }
        Family::ExpDecay { a } => {
            out.push(ClosedForm::positive(TransformKind::Laplace, "Laplace transform of an exponential", move |y| {
                1.0 / (y + a)
            }));
            out.push(ClosedForm::positive(
                TransformKind::FourierSine,
                "Fourier sine transform of an exponential",
                move |y| y / (a * a + y * y),
            ));
            out.push(ClosedForm::positive(
                TransformKind::FourierCosine,
                "Fourier cosine transform of an exponential",
                move |y| a / (a * a + y * y),
            ));
            out.push(ClosedForm::positive(
                TransformKind::Hankel(order(0.5)),
                "half-order Hankel transform of an exponential",
                move |y| (2.0 / PI).sqrt() * y / (a * a + y * y),
            ));
            out.push(ClosedForm::positive(
                TransformKind::Hankel(order(-0.5)),
                "half-order Hankel transform of an exponential",
                move |y| (2.0 / PI).sqrt() * a / (a * a + y * y),
            ));
            out.push(ClosedForm::positive(
                TransformKind::KTransform(order(0.5)),
                "half-order K-transform of an exponential",
                move |y| (PI / 2.0).sqrt() / (y + a),
            ));
            out.push(ClosedForm::new(
                TransformKind::Mellin,
                "Mellin transform of an exponential",
                (0.0, f64::INFINITY),
                move |s| gamma_value(s) * a.powf(-s),
            ));
        }
        Family::PowerExp { mu, a } => {
            out.push(ClosedForm::positive(TransformKind::Laplace, "Laplace transform of a damped power", move |y| {
                gamma_value(mu + 1.0) * (y + a).powf(-mu - 1.0)
            }));
            out.push(ClosedForm::new(
                TransformKind::Mellin,
                "Mellin transform of a damped power",
                (-mu, f64::INFINITY),
                move |s| gamma_value(s + mu) * a.powf(-s - mu),
            ));
        }
        Family::Gauss { a } => {
            out.push(ClosedForm::positive(
                TransformKind::FourierCosine,
                "Fourier cosine transform of a Gaussian",
                move |y| 0.5 * (PI / a).sqrt() * (-y * y / (4.0 * a)).exp(),
            ));
            out.push(ClosedForm::new(
                TransformKind::Mellin,
                "Mellin transform of a Gaussian",
                (0.0, f64::INFINITY),
                move |s| 0.5 * gamma_value(0.5 * s) * a.powf(-0.5 * s),
            ));
        }
        Family::LorentzPower { nu, a } => {
            out.push(ClosedForm::positive(TransformKind::Widder, "Widder transform of x^{2nu}/(x^2+a^2)", move |y| {
                lorentz_widder(nu, a, y)
            }));
            out.push(ClosedForm::new(
                TransformKind::Mellin,
                "Mellin transform of x^{2nu}/(x^2+a^2)",
                (-2.0 * nu, 2.0 - 2.0 * nu),
                move |s| mellin_lorentz(s + 2.0 * nu, a),
            ));
        }
        Family::HankelKernelFrac { nu, t } => {
            out.push(ClosedForm::positive(
                TransformKind::Hankel(order(nu)),
                "Hankel transform of x^{nu+1/2}/(x^2+t^2)",
                move |y| t.powf(nu) * y.sqrt() * bessel_k_value(nu, t * y),
            ));
            out.push(ClosedForm::new(
                TransformKind::Mellin,
                "Mellin transform of x^{nu+1/2}/(x^2+t^2)",
                (-nu - 0.5, 1.5 - nu),
                move |s| mellin_lorentz(s + nu + 0.5, t),
            ));
        }
        Family::BesselPower { nu, a } => {
            if nu > -0.5 {
                out.push(ClosedForm::positive(
                    TransformKind::KTransform(order(nu)),
                    "K-transform of x^{2nu+1/2} J_nu(ax)",
                    move |y| {
                        2f64.powf(2.0 * nu) * a.powf(nu) * y.powf(nu + 0.5) * gamma_value(2.0 * nu + 1.0)
                            / (y * y + a * a).powf(2.0 * nu + 1.0)
                    },
                ));
            }
        }
        Family::StruveHalf { nu, a } => {
            out.push(ClosedForm::positive(
                TransformKind::KTransform(order(nu)),
                "K-transform of x^{1/2} H_nu(ax)",
                move |y| a.powf(nu + 1.0) * y.powf(-nu - 0.5) / (y * y + a * a),
            ));
        }
    }
    out
}

/// 𝔥_ν{u^μ}(y), −5/2 < μ+ν < −1/2.
pub fn struve_power(nu: f64, mu: f64, y: f64) -> f64 {
    // Γ(s) tan(πs) written as π / (Γ(1 − s) cos(πs)), finite at s = 0.
    let s = 0.5 * mu + 0.5 * nu + 0.75;
    2f64.powf(mu + 0.5) * PI
        / (y.powf(mu + 1.0) * gamma_value(0.5 * nu - 0.5 * mu + 0.25) * gamma_value(1.0 - s) * cos_pi(s))
}

/// n deterministic points in the open strip (lo, hi), kept at least 0.05
/// (and 10% of the width) away from both edges. n = 1 gives the centre.
pub fn strip_points(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, CatalogError> {
    if n == 0 {
        return Err(CatalogError::EmptyRegion("zero grid points requested".into()));
    }
    let width = hi - lo;
    let margin = (0.1 * width).max(0.05);
    if !(width > 2.0 * 0.05) || !width.is_finite() {
        return Err(CatalogError::EmptyRegion(format!("({lo}, {hi})")));
    }
    if n == 1 {
        return Ok(vec![lo + 0.5 * width]);
    }
    let span = width - 2.0 * margin;
    Ok((0..n).map(|k| lo + margin + span * k as f64 / (n - 1) as f64).collect())
}

const LORENTZ_NU: [f64; 5] = [-0.5, -0.25, 0.25, 0.5, 0.75];
/// Sampling extent used for one-sided constraints.
const OPEN_SPAN: f64 = 2.0;

/// Parameter tuples for `f`'s family: the order or exponent is varied over
/// its constraint strip, the remaining parameters are kept from `f`.
pub fn sample_grid(f: &FunctionDescriptor, n: usize) -> Result<Vec<BTreeMap<String, f64>>, CatalogError> {
    let base = f.params();
    let strip = f
        .constraints()
        .into_iter()
        .find(|c| c.param == "mu" || c.param == "nu")
        .or_else(|| f.constraints().into_iter().next())
        .expect("every family constrains a parameter");
    let values = match (f.family, n) {
        (Family::LorentzPower { .. }, 2..=5) => {
            let step = (LORENTZ_NU.len() - 1) as f64 / (n - 1) as f64;
            (0..n).map(|k| LORENTZ_NU[(k as f64 * step).round() as usize]).collect()
        }
        _ => {
            let (lo, hi) = match (strip.lower, strip.upper) {
                (Some(lo), Some(hi)) => (lo, hi),
                (Some(lo), None) => (lo, lo + OPEN_SPAN),
                (None, Some(hi)) => (hi - OPEN_SPAN, hi),
                (None, None) => (-OPEN_SPAN / 2.0, OPEN_SPAN / 2.0),
            };
            strip_points(lo, hi, n)?
        }
    };
    Ok(values
        .into_iter()
        .map(|v| {
            let mut p = base.clone();
            p.insert(strip.param.to_string(), v);
            p
        })
        .collect())
}

/// Rebuilds a descriptor of the same family with new parameter values.
pub fn with_params(f: &FunctionDescriptor, params: &BTreeMap<String, f64>) -> Result<FunctionDescriptor, CatalogError> {
    Ok(instantiate(Family::build(f.name(), params)?)?.scaled(f.amplitude))
}
