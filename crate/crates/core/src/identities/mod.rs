//! Registry of transform identities and the residual checker that
//! evaluates both sides independently over parameter grids.

mod registry;

pub use registry::{ex5_closed_form, moment_constants, registry};

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{CatalogError, Constraint, FunctionDescriptor};
use crate::quadrature::QuadConfig;
use crate::transforms::{Decay, RealFunction, TransformError, TransformValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    Iteration,
    ParsevalExchange,
    ClosedForm,
    Moment,
}

impl IdentityKind {
    pub fn name(&self) -> &'static str {
        match self {
            IdentityKind::Iteration => "iteration",
            IdentityKind::ParsevalExchange => "parseval_exchange",
            IdentityKind::ClosedForm => "closed_form",
            IdentityKind::Moment => "moment",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [IdentityKind::Iteration, IdentityKind::ParsevalExchange, IdentityKind::ClosedForm, IdentityKind::Moment]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdentityError {
    #[error("unknown identity '{0}'")]
    UnknownId(String),
    #[error("{id}: {reason}")]
    Domain { id: String, reason: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// One side of an identity evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Side {
    pub value: f64,
    pub abs_err: f64,
    pub converged: bool,
}

impl Side {
    pub fn exact(value: f64) -> Self {
        Side { value, abs_err: 0.0, converged: true }
    }

    pub fn scale(self, c: f64) -> Self {
        Side { value: c * self.value, abs_err: c.abs() * self.abs_err, ..self }
    }
}

impl From<TransformValue> for Side {
    fn from(v: TransformValue) -> Self {
        Side { value: v.value, abs_err: v.abs_err, converged: v.converged }
    }
}

/// Parameters and functions for one evaluation of an identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub params: BTreeMap<String, f64>,
    pub functions: Vec<FunctionDescriptor>,
}

impl Case {
    pub fn new(params: &[(&str, f64)], functions: Vec<FunctionDescriptor>) -> Self {
        Case { params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(), functions }
    }

    /// A named parameter; panics if the identity's grid did not set it.
    pub fn p(&self, key: &str) -> f64 {
        *self.params.get(key).unwrap_or_else(|| panic!("case lacks parameter {key}"))
    }

    pub fn f(&self, i: usize) -> &dyn RealFunction {
        &self.functions[i]
    }
}

pub(crate) type SideFn = Box<dyn Fn(&Case, &QuadConfig) -> Result<Side, TransformError> + Send + Sync>;
pub(crate) type GridFn = Box<dyn Fn(usize) -> Vec<BTreeMap<String, f64>> + Send + Sync>;

pub struct Identity {
    pub id: &'static str,
    pub kind: IdentityKind,
    pub citation: &'static str,
    /// Human-readable default domain.
    pub domain: String,
    /// Number of catalog functions the identity takes.
    pub arity: usize,
    pub constraints: Vec<Constraint>,
    pub(crate) default_functions: Vec<Vec<FunctionDescriptor>>,
    pub(crate) grid: GridFn,
    pub(crate) lhs: SideFn,
    pub(crate) rhs: SideFn,
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity").field("id", &self.id).field("kind", &self.kind).finish()
    }
}

impl Identity {
    /// Default pairings crossed with the parameter grid.
    pub fn cases(&self, grid_size: usize) -> Vec<Case> {
        self.cases_with(&self.default_functions, grid_size)
    }

    fn cases_with(&self, pairings: &[Vec<FunctionDescriptor>], grid_size: usize) -> Vec<Case> {
        let grid = (self.grid)(grid_size.max(1));
        let mut out = Vec::new();
        for fs in pairings {
            for p in &grid {
                out.push(Case { params: p.clone(), functions: fs.clone() });
            }
        }
        out
    }

    pub fn default_functions(&self) -> &[Vec<FunctionDescriptor>] {
        &self.default_functions
    }

    fn admit(&self, functions: &[FunctionDescriptor]) -> Result<(), IdentityError> {
        let domain = |reason: String| IdentityError::Domain { id: self.id.to_string(), reason };
        if functions.len() != self.arity {
            return Err(domain(format!("expects {} function(s), got {}", self.arity, functions.len())));
        }
        for f in functions {
            let s = f.shape();
            if !matches!(s.decay, Decay::Exponential { .. }) || s.zero_power < 0.0 {
                return Err(domain(format!(
                    "{f} is outside the identity's hypotheses (needs a bounded, exponentially decaying function)"
                )));
            }
        }
        Ok(())
    }

    fn check_case_params(&self, case: &Case) -> Result<(), IdentityError> {
        for c in &self.constraints {
            let v = case.p(c.param);
            if !c.holds(v) {
                return Err(IdentityError::Domain {
                    id: self.id.to_string(),
                    reason: format!("{c} violated ({} = {v})", c.param),
                });
            }
        }
        Ok(())
    }

    pub fn eval_lhs(&self, case: &Case, cfg: &QuadConfig) -> Result<Side, TransformError> {
        (self.lhs)(case, cfg)
    }

    pub fn eval_rhs(&self, case: &Case, cfg: &QuadConfig) -> Result<Side, TransformError> {
        (self.rhs)(case, cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub point: BTreeMap<String, f64>,
    pub functions: Vec<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_err: f64,
    pub rhs_err: f64,
    pub rel_residual: f64,
    pub passed: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

const RESIDUAL_FLOOR: f64 = 1e-300;

/// |a − b| / max(|a|, |b|, 1e−300).
pub fn rel_residual(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(RESIDUAL_FLOOR)
}

/// Quadrature settings for a residual tolerance: three orders of magnitude
/// tighter, within [1e−10, 1e−7]. No absolute floor: small inner values
/// such as far tails of a Widder transform still get full relative accuracy.
pub fn quad_config_for(tol: f64) -> QuadConfig {
    QuadConfig { rel_tol: (tol * 1e-3).clamp(1e-10, 1e-7), abs_tol: 1e-300, ..QuadConfig::default() }
}

/// Evaluates both sides of `identity` at `case` and grades the residual.
pub fn check_case(identity: &Identity, case: &Case, tol: f64, cfg: &QuadConfig) -> CheckOutcome {
    let functions = case.functions.iter().map(|f| f.to_string()).collect();
    let lhs = identity.eval_lhs(case, cfg);
    let rhs = identity.eval_rhs(case, cfg);
    let (lhs, rhs) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => (l, r),
        (l, r) => {
            let note = [l.as_ref().err().map(|e| format!("lhs: {e}")), r.as_ref().err().map(|e| format!("rhs: {e}"))]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>()
                .join("; ");
            let side =
                |s: &Result<Side, TransformError>| s.as_ref().map_or((f64::NAN, f64::NAN), |s| (s.value, s.abs_err));
            let ((lv, le), (rv, re)) = (side(&l), side(&r));
            return CheckOutcome {
                point: case.params.clone(),
                functions,
                lhs: lv,
                rhs: rv,
                lhs_err: le,
                rhs_err: re,
                rel_residual: f64::NAN,
                passed: false,
                status: Status::Inconclusive,
                note: Some(note),
            };
        }
    };
    let res = rel_residual(lhs.value, rhs.value);
    let scale = lhs.value.abs().max(rhs.value.abs()).max(RESIDUAL_FLOOR);
    let allowed = tol.max(10.0 * (lhs.abs_err + rhs.abs_err) / scale);
    let finite = res.is_finite();
    let (status, note) = if !finite {
        (Status::Inconclusive, Some("non-finite side value".to_string()))
    } else if !(lhs.converged && rhs.converged) {
        (Status::Inconclusive, Some("quadrature did not converge".to_string()))
    } else if res <= allowed {
        (Status::Pass, None)
    } else {
        (Status::Fail, None)
    };
    CheckOutcome {
        point: case.params.clone(),
        functions,
        lhs: lhs.value,
        rhs: rhs.value,
        lhs_err: lhs.abs_err,
        rhs_err: rhs.abs_err,
        rel_residual: res,
        passed: status == Status::Pass,
        status,
        note,
    }
}

pub fn find(id: &str) -> Result<&'static Identity, IdentityError> {
    registry().iter().find(|i| i.id == id).ok_or_else(|| IdentityError::UnknownId(id.to_string()))
}

/// Checks one identity over its grid. `functions`, when given, replaces the
/// default pairings.
pub fn check(
    identity_id: &str,
    functions: Option<&[FunctionDescriptor]>,
    grid_size: usize,
    tol: f64,
    cfg: &QuadConfig,
) -> Result<Vec<CheckOutcome>, IdentityError> {
    let identity = find(identity_id)?;
    let cases = match functions {
        Some(fs) => {
            identity.admit(fs)?;
            identity.cases_with(&[fs.to_vec()], grid_size)
        }
        None => identity.cases(grid_size),
    };
    for c in &cases {
        identity.check_case_params(c)?;
    }
    Ok(cases.par_iter().map(|c| check_case(identity, c, tol, cfg)).collect())
}

/// Per-identity aggregate over its grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentitySummary {
    pub id: String,
    pub kind: IdentityKind,
    pub citation: String,
    pub points: Vec<CheckOutcome>,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub pass_rate: f64,
    pub max_residual: f64,
    /// No failures and at least 95% of points passing.
    pub ok: bool,
}

impl IdentitySummary {
    pub fn from_points(identity: &Identity, points: Vec<CheckOutcome>) -> Self {
        let count = |s: Status| points.iter().filter(|p| p.status == s).count();
        let (passed, failed, inconclusive) = (count(Status::Pass), count(Status::Fail), count(Status::Inconclusive));
        let pass_rate = if points.is_empty() { 0.0 } else { passed as f64 / points.len() as f64 };
        let max_residual = points.iter().map(|p| p.rel_residual).filter(|r| r.is_finite()).fold(0.0, f64::max);
        IdentitySummary {
            id: identity.id.to_string(),
            kind: identity.kind,
            citation: identity.citation.to_string(),
            points,
            passed,
            failed,
            inconclusive,
            pass_rate,
            max_residual,
            ok: failed == 0 && pass_rate >= 0.95,
        }
    }
}

/// Results of a suite run plus wall-clock seconds spent per identity.
#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub summaries: Vec<IdentitySummary>,
    pub seconds: BTreeMap<String, f64>,
}

/// Runs every identity whose id is in `ids` (all when `None`) and whose
/// kind matches `kind`, in registry order. Points run concurrently.
pub fn check_all(
    grid_size: usize,
    tol: f64,
    cfg: &QuadConfig,
    ids: Option<&[String]>,
    kind: Option<IdentityKind>,
) -> SuiteRun {
    let selected: Vec<&Identity> = registry()
        .iter()
        .filter(|i| ids.is_none_or(|ids| ids.iter().any(|s| s == i.id)))
        .filter(|i| kind.is_none_or(|k| i.kind == k))
        .collect();
    let jobs: Vec<(usize, Case)> =
        selected.iter().enumerate().flat_map(|(k, i)| i.cases(grid_size).into_iter().map(move |c| (k, c))).collect();
    let results: Vec<(usize, CheckOutcome, f64)> = jobs
        .into_par_iter()
        .map(|(k, case)| {
            let start = Instant::now();
            let out = check_case(selected[k], &case, tol, cfg);
            (k, out, start.elapsed().as_secs_f64())
        })
        .collect();
    let mut grouped: Vec<Vec<CheckOutcome>> = vec![Vec::new(); selected.len()];
    let mut seconds = BTreeMap::new();
    for (k, out, secs) in results {
        grouped[k].push(out);
        *seconds.entry(selected[k].id.to_string()).or_insert(0.0) += secs;
    }
    let summaries = selected.iter().zip(grouped).map(|(i, pts)| IdentitySummary::from_points(i, pts)).collect();
    SuiteRun { summaries, seconds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn registry_ids_unique_and_complete() {
        let ids: Vec<&str> = registry().iter().map(|i| i.id).collect();
        let set: HashSet<&str> = ids.iter().copied().collect();
        assert_eq!(set.len(), ids.len());
        assert!(ids.len() >= 40);
        for id in ["T2.3", "EX1", "KERN", "HINV", "WST", "CT3.5", "ML4", "IT5", "C5.1"] {
            assert!(set.contains(id), "{id}");
        }
    }

    #[test]
    fn closed_form_kind_subset() {
        let mut ids: Vec<&str> =
            registry().iter().filter(|i| i.kind == IdentityKind::ClosedForm).map(|i| i.id).collect();
        ids.sort();
        assert_eq!(ids, ["EX1", "EX2", "EX3", "EX4", "EX5", "REX1", "REX2", "REX3"]);
    }

    #[test]
    fn residual_definition() {
        assert_eq!(rel_residual(1.0, 1.0), 0.0);
        assert!((rel_residual(1.0, 2.0) - 0.5).abs() < 1e-16);
        assert_eq!(rel_residual(0.0, 0.0), 0.0);
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(check("NOPE", None, 1, 1e-6, &QuadConfig::default()), Err(IdentityError::UnknownId(_))));
        let run = check_all(1, 1e-6, &QuadConfig::default(), Some(&["NOPE".to_string()]), None);
        assert!(run.summaries.is_empty());
    }

    #[test]
    fn domain_violations() {
        let power: FunctionDescriptor = "power:mu=-0.5".parse().unwrap();
        let r = check("HALF3", Some(&[power]), 1, 1e-6, &QuadConfig::default());
        assert!(matches!(r, Err(IdentityError::Domain { .. })));
        let e: FunctionDescriptor = "exp_decay:a=1".parse().unwrap();
        let r = check("T2.3", Some(&[e]), 1, 1e-6, &QuadConfig::default());
        assert!(matches!(r, Err(IdentityError::Domain { .. })));
    }

    #[test]
    fn kern_spec_point() {
        let id = find("KERN").unwrap();
        let case = Case::new(&[("nu", 0.0), ("x", 2.0), ("y", 1.0)], vec![]);
        let out = check_case(id, &case, 1e-7, &QuadConfig::default());
        assert!((out.rhs - 0.2).abs() < 1e-15);
        assert!(out.passed && out.rel_residual <= 1e-7, "{out:?}");
    }

    #[test]
    fn ex1_partial_fraction_point() {
        let id = find("EX1").unwrap();
        let case = Case::new(&[("nu", 0.5), ("a", 1.0), ("y", 2.0)], vec![]);
        let out = check_case(id, &case, 1e-8, &QuadConfig::default());
        let sixth = std::f64::consts::PI / 6.0;
        assert!((out.lhs - sixth).abs() < 1e-8 * sixth && (out.rhs - sixth).abs() < 1e-12);
        assert!(out.passed);
    }
}
