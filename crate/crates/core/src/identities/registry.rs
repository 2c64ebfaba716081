//! The identity definitions. Each side is an independent composition of
//! transforms; nested transforms are evaluated lazily inside the outer
//! quadrature.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use super::{Case, GridFn, Identity, IdentityKind, Side, SideFn};
use crate::catalog::{lorentz_widder, strip_points, struve_power, Constraint, Family, FunctionDescriptor};
use crate::quadrature::QuadConfig;
use crate::specfun::{bessel_k_value, cos_pi, gamma_value, sin_pi, Order};
use crate::transforms::{
    integrate_function, mellin, transform, Custom, Decay, Product, RealFunction, Shape, SqrtArg, TransformError,
    TransformKind, Transformed, Weighted,
};

use IdentityKind::{ClosedForm, Iteration, Moment, ParsevalExchange};
use TransformKind::{FourierCosine as FC, FourierSine as FS, Laplace as L, Stieltjes as S, Widder as W};

type R = Result<Side, TransformError>;
type F<'a> = &'a dyn RealFunction;

fn order(nu: f64) -> Order {
    Order::new(nu).expect("finite order")
}

fn hk(c: &Case) -> TransformKind {
    TransformKind::Hankel(order(c.p("nu")))
}

fn kk(c: &Case) -> TransformKind {
    TransformKind::KTransform(order(c.p("nu")))
}

fn at(kind: TransformKind, f: F, y: f64, q: &QuadConfig) -> R {
    Ok(transform(kind, f, y, q)?.into())
}

fn nest<'a>(kind: TransformKind, f: F<'a>, q: &QuadConfig) -> Transformed<F<'a>> {
    Transformed::new(kind, f, q)
}

fn xw(f: F, w: f64) -> Weighted<F> {
    Weighted::new(f, w, 1.0)
}

fn integral(f: F, q: &QuadConfig) -> R {
    Ok(integrate_function(f, q)?.into())
}

/// ∫ a(x) b(x) dx.
fn pair(a: F, b: F, q: &QuadConfig) -> R {
    integral(&Product(a, b), q)
}

fn side(f: impl Fn(&Case, &QuadConfig) -> R + Send + Sync + 'static) -> SideFn {
    Box::new(f)
}

fn family(f: Family) -> FunctionDescriptor {
    crate::catalog::instantiate(f).expect("valid default function")
}

fn exp_decay(a: f64) -> FunctionDescriptor {
    family(Family::ExpDecay { a })
}

fn single_defaults() -> Vec<Vec<FunctionDescriptor>> {
    vec![vec![exp_decay(1.0)], vec![family(Family::Gauss { a: 1.0 })]]
}

fn pair_defaults() -> Vec<Vec<FunctionDescriptor>> {
    vec![
        vec![exp_decay(1.0), family(Family::Gauss { a: 1.0 })],
        vec![family(Family::PowerExp { mu: 0.5, a: 1.0 }), exp_decay(2.0)],
    ]
}

// ---- grids -----------------------------------------------------------

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// 0.5, 1, 2 for n = 3; geometric on [0.5, 2] in general.
fn points(n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![1.0];
    }
    (0..n).map(|k| 0.5 * 4f64.powf(k as f64 / (n - 1) as f64)).collect()
}

fn strip(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    strip_points(lo, hi, n).expect("non-empty strip")
}

fn grid_var(var: &'static str) -> GridFn {
    Box::new(move |n| points(n).into_iter().map(|y| params(&[(var, y)])).collect())
}

/// ν over (lo, hi) paired index-wise with the point grid.
fn grid_nu_var(lo: f64, hi: f64, var: &'static str) -> GridFn {
    Box::new(move |n| {
        strip(lo, hi, n).into_iter().zip(points(n)).map(|(nu, y)| params(&[("nu", nu), (var, y)])).collect()
    })
}

fn grid_nu(lo: f64, hi: f64) -> GridFn {
    Box::new(move |n| strip(lo, hi, n).into_iter().map(|nu| params(&[("nu", nu)])).collect())
}

fn grid_mu(lo: f64, hi: f64) -> GridFn {
    Box::new(move |n| strip(lo, hi, n).into_iter().map(|mu| params(&[("mu", mu)])).collect())
}

fn grid_none() -> GridFn {
    Box::new(|_| vec![BTreeMap::new()])
}

fn grid_list(list: Vec<Vec<(&'static str, f64)>>, centre: Vec<(&'static str, f64)>) -> GridFn {
    Box::new(move |n| if n <= 1 { vec![params(&centre)] } else { list.iter().map(|p| params(p)).collect() })
}

// ---- builders --------------------------------------------------------

struct Spec {
    id: &'static str,
    kind: IdentityKind,
    citation: &'static str,
    domain: &'static str,
    arity: usize,
    constraints: Vec<Constraint>,
    functions: Vec<Vec<FunctionDescriptor>>,
    grid: GridFn,
}

impl Spec {
    fn build(self, lhs: SideFn, rhs: SideFn) -> Identity {
        Identity {
            id: self.id,
            kind: self.kind,
            citation: self.citation,
            domain: self.domain.to_string(),
            arity: self.arity,
            constraints: self.constraints,
            default_functions: self.functions,
            grid: self.grid,
            lhs,
            rhs,
        }
    }
}

fn one(id: &'static str, kind: IdentityKind, citation: &'static str, domain: &'static str, grid: GridFn) -> Spec {
    Spec { id, kind, citation, domain, arity: 1, constraints: vec![], functions: single_defaults(), grid }
}

fn two(id: &'static str, citation: &'static str, domain: &'static str, grid: GridFn) -> Spec {
    Spec {
        id,
        kind: ParsevalExchange,
        citation,
        domain,
        arity: 2,
        constraints: vec![],
        functions: pair_defaults(),
        grid,
    }
}

fn none(id: &'static str, kind: IdentityKind, citation: &'static str, domain: &'static str, grid: GridFn) -> Spec {
    Spec { id, kind, citation, domain, arity: 0, constraints: vec![], functions: vec![vec![]], grid }
}

fn with_nu(mut s: Spec, lo: f64, hi: f64) -> Spec {
    s.constraints.push(Constraint::between("nu", lo, hi));
    s
}

// ---- shared sides ----------------------------------------------------

/// 𝓗_ν{u^{ν+1/2} 𝓟{x^{−ν−1/2} f}}(y)
fn hankel_of_widder(c: &Case, q: &QuadConfig) -> R {
    let nu = c.p("nu");
    let w = xw(c.f(0), -nu - 0.5);
    let p = nest(W, &w, q);
    at(hk(c), &xw(&p, nu + 0.5), c.p("y"), q)
}

/// 𝓟{u^{ν−1/2} 𝓗_ν f}(y)
fn widder_of_hankel(c: &Case, q: &QuadConfig) -> R {
    let h = nest(hk(c), c.f(0), q);
    at(W, &xw(&h, c.p("nu") - 0.5), c.p("y"), q)
}

fn sine_of_laplace(c: &Case, q: &QuadConfig) -> R {
    let l = nest(L, c.f(0), q);
    at(FS, &l, c.p("y"), q)
}

fn cosine_of_laplace(c: &Case, q: &QuadConfig) -> R {
    let l = nest(L, c.f(0), q);
    at(FC, &l, c.p("y"), q)
}

fn laplace_of_sine(c: &Case, q: &QuadConfig) -> R {
    let s = nest(FS, c.f(0), q);
    at(L, &s, c.p("y"), q)
}

fn laplace_of_cosine(c: &Case, q: &QuadConfig) -> R {
    let s = nest(FC, c.f(0), q);
    at(L, &s, c.p("y"), q)
}

/// y 𝓟{x^{−1} f}(y)
fn y_widder_over_x(c: &Case, q: &QuadConfig) -> R {
    let y = c.p("y");
    Ok(at(W, &xw(c.f(0), -1.0), y, q)?.scale(y))
}

fn widder_f(c: &Case, q: &QuadConfig) -> R {
    at(W, c.f(0), c.p("y"), q)
}

fn half_pi_laplace(c: &Case, q: &QuadConfig) -> R {
    Ok(at(L, c.f(0), c.p("y"), q)?.scale(FRAC_PI_2))
}

/// 𝓕_S{u 𝓟{x^{−1} f}}(y)
fn sine_of_u_widder(c: &Case, q: &QuadConfig) -> R {
    let w = xw(c.f(0), -1.0);
    let p = nest(W, &w, q);
    at(FS, &xw(&p, 1.0), c.p("y"), q)
}

/// y 𝓟{u^{−1} 𝓕_C f}(y)
fn y_widder_of_cosine(c: &Case, q: &QuadConfig) -> R {
    let y = c.p("y");
    let fc = nest(FC, c.f(0), q);
    Ok(at(W, &xw(&fc, -1.0), y, q)?.scale(y))
}

/// 𝓟{x 𝓟{u^{−1} g}}(t)
fn widder_x_widder(c: &Case, q: &QuadConfig) -> R {
    let w = xw(c.f(0), -1.0);
    let p = nest(W, &w, q);
    at(W, &xw(&p, 1.0), c.p("t"), q)
}

/// 𝓟{x^{−1} 𝓟 g}(t)
fn widder_over_x_widder(c: &Case, q: &QuadConfig) -> R {
    let p = nest(W, c.f(0), q);
    at(W, &xw(&p, -1.0), c.p("t"), q)
}

fn laplace_laplace(c: &Case, q: &QuadConfig) -> R {
    let l = nest(L, c.f(0), q);
    at(L, &l, c.p("t"), q)
}

// Parseval pieces: f = functions[0], g = functions[1].

fn int_hankel_f_k_g(c: &Case, q: &QuadConfig) -> R {
    let hf = nest(hk(c), c.f(0), q);
    let kg = nest(kk(c), c.f(1), q);
    pair(&hf, &kg, q)
}

/// ∫ x^{ν+1/2} f 𝓟{u^{−ν−1/2} g}
fn int_f_widder_g(c: &Case, q: &QuadConfig) -> R {
    let nu = c.p("nu");
    let wg = xw(c.f(1), -nu - 0.5);
    let p = nest(W, &wg, q);
    pair(&xw(c.f(0), nu + 0.5), &p, q)
}

/// ∫ u^{1/2−ν} g 𝓟{x^{ν−1/2} f}
fn int_g_widder_f(c: &Case, q: &QuadConfig) -> R {
    let nu = c.p("nu");
    let wf = xw(c.f(0), nu - 0.5);
    let p = nest(W, &wf, q);
    pair(&xw(c.f(1), 0.5 - nu), &p, q)
}

fn int_sine_f_laplace_g(c: &Case, q: &QuadConfig) -> R {
    let s = nest(FS, c.f(0), q);
    let l = nest(L, c.f(1), q);
    pair(&s, &l, q)
}

fn int_cosine_f_laplace_g(c: &Case, q: &QuadConfig) -> R {
    let s = nest(FC, c.f(0), q);
    let l = nest(L, c.f(1), q);
    pair(&s, &l, q)
}

/// ∫ x f 𝓟{u^{−1} g}
fn int_xf_widder_g_over_u(c: &Case, q: &QuadConfig) -> R {
    let wg = xw(c.f(1), -1.0);
    let p = nest(W, &wg, q);
    pair(&xw(c.f(0), 1.0), &p, q)
}

/// ∫ a 𝓟 b
fn int_widder(a: F, b: F, q: &QuadConfig) -> R {
    let p = nest(W, b, q);
    pair(a, &p, q)
}

/// ∫ y^{ν+1/2} 𝓗_ν f 𝓟{u^{−ν−1/2} g}
fn int_hankel_widder(c: &Case, q: &QuadConfig) -> R {
    let nu = c.p("nu");
    let h = nest(hk(c), c.f(0), q);
    let wg = xw(c.f(1), -nu - 0.5);
    let p = nest(W, &wg, q);
    pair(&xw(&h, nu + 0.5), &p, q)
}

fn int_k(a: F, b: F, kind: TransformKind, q: &QuadConfig) -> R {
    let k = nest(kind, b, q);
    pair(a, &k, q)
}

/// ∫ y 𝓕_S f 𝓟{u^{−1} g}
fn int_y_sine_widder(c: &Case, q: &QuadConfig) -> R {
    let s = nest(FS, c.f(0), q);
    let wg = xw(c.f(1), -1.0);
    let p = nest(W, &wg, q);
    pair(&xw(&s, 1.0), &p, q)
}

fn int_cosine_widder(c: &Case, q: &QuadConfig) -> R {
    let s = nest(FC, c.f(0), q);
    let p = nest(W, c.f(1), q);
    pair(&s, &p, q)
}

fn int_laplace(a: F, b: F, q: &QuadConfig) -> R {
    let l = nest(L, b, q);
    pair(a, &l, q)
}

// Moment pieces with g = functions[0].

fn moment_widder(c: &Case, q: &QuadConfig) -> R {
    let (nu, mu) = (c.p("nu"), c.p("mu"));
    let wg = xw(c.f(0), -nu - 0.5);
    let p = nest(W, &wg, q);
    integral(&xw(&p, mu + nu + 0.5), q)
}

fn moment_k(c: &Case, q: &QuadConfig) -> R {
    let k = nest(kk(c), c.f(0), q);
    integral(&xw(&k, -c.p("mu") - 1.0), q)
}

fn moment_g(c: &Case, q: &QuadConfig) -> R {
    Ok(mellin(c.f(0), c.p("mu") + 1.0, q)?.into())
}

fn moment_laplace(c: &Case, q: &QuadConfig) -> R {
    let l = nest(L, c.f(0), q);
    integral(&xw(&l, -c.p("mu") - 1.0), q)
}

fn moment_widder_over_u(c: &Case, q: &QuadConfig) -> R {
    let wg = xw(c.f(0), -1.0);
    let p = nest(W, &wg, q);
    integral(&xw(&p, c.p("mu") + 1.0), q)
}

/// Constants multiplying the right-hand sides of M1, M2 and M3.
pub fn moment_constants(nu: f64, mu: f64) -> [f64; 3] {
    let a = gamma_value(0.5 * mu + 0.5 * nu + 0.75);
    let b = gamma_value(0.5 * nu - 0.5 * mu + 0.25);
    let c = gamma_value(0.25 - 0.5 * mu - 0.5 * nu);
    [2f64.powf(mu + 0.5) * a / b, 2f64.powf(-mu - 1.5) * b * c, 0.5 * a * c]
}

fn moment_const(c: &Case, k: usize) -> f64 {
    moment_constants(c.p("nu"), c.p("mu"))[k]
}

/// (a^{2ν} − x^{2ν})/(a² − x²) without cancellation near x = a.
fn power_ratio(nu: f64, a: f64, x: f64) -> f64 {
    let d = (a / x).ln();
    let e = if d.abs() < 1e-7 { nu * (1.0 + (nu - 1.0) * d) } else { (2.0 * nu * d).exp_m1() / (2.0 * d).exp_m1() };
    x.powf(2.0 * nu - 2.0) * e
}

fn moment_grid() -> GridFn {
    // ν over (−1/2, 1) and, for each ν, μ inside (−ν − 3/2, −1/2).
    Box::new(|n| {
        strip(-0.5, 1.0, n)
            .into_iter()
            .enumerate()
            .map(|(k, nu)| {
                let mus = strip(-nu - 1.5, -0.5, n);
                params(&[("nu", nu), ("mu", mus[k])])
            })
            .collect()
    })
}

// ---- registry --------------------------------------------------------

pub fn registry() -> &'static [Identity] {
    static REGISTRY: OnceLock<Vec<Identity>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

fn build() -> Vec<Identity> {
    let mut v = Vec::new();
    let nu_y = || grid_nu_var(-1.0, 1.0, "y");
    let dom_nu_y = "-1 < nu < 1 paired with y in {0.5, 1, 2}";
    let dom_y = "y in {0.5, 1, 2}";
    let dom_t = "t in {0.5, 1, 2}";

    // Hankel/K iteration and its consequences.
    v.push(
        with_nu(
            one(
                "L1.1",
                Iteration,
                "Hankel transform of the K-transform as a weighted Widder transform",
                dom_nu_y,
                nu_y(),
            ),
            -1.0,
            1.5,
        )
        .build(
            side(|c, q| {
                let k = nest(kk(c), c.f(0), q);
                at(hk(c), &k, c.p("y"), q)
            }),
            side(|c, q| {
                let (nu, y) = (c.p("nu"), c.p("y"));
                Ok(at(W, &xw(c.f(0), -nu - 0.5), y, q)?.scale(y.powf(nu + 0.5)))
            }),
        ),
    );
    v.push(
        with_nu(
            one(
                "L1.2",
                Iteration,
                "K-transform of the Hankel transform as a weighted Widder transform",
                dom_nu_y,
                nu_y(),
            ),
            -1.0,
            1.5,
        )
        .build(
            side(|c, q| {
                let h = nest(hk(c), c.f(0), q);
                at(kk(c), &h, c.p("y"), q)
            }),
            side(|c, q| {
                let (nu, y) = (c.p("nu"), c.p("y"));
                Ok(at(W, &xw(c.f(0), nu - 0.5), y, q)?.scale(y.powf(0.5 - nu)))
            }),
        ),
    );
    v.push(
        with_nu(
            one(
                "C1.1",
                Iteration,
                "Hankel transform of a weighted Widder transform gives the K-transform",
                dom_nu_y,
                nu_y(),
            ),
            -1.0,
            1.5,
        )
        .build(side(hankel_of_widder), side(|c, q| at(kk(c), c.f(0), c.p("y"), q))),
    );
    v.push(
        with_nu(
            one(
                "C1.2",
                Iteration,
                "Widder transform of a weighted Hankel transform gives the K-transform",
                dom_nu_y,
                nu_y(),
            ),
            -1.0,
            1.5,
        )
        .build(
            side(widder_of_hankel),
            side(|c, q| {
                let (nu, y) = (c.p("nu"), c.p("y"));
                Ok(at(kk(c), c.f(0), y, q)?.scale(y.powf(nu - 0.5)))
            }),
        ),
    );
    v.push(
        with_nu(
            one(
                "C1.3",
                Iteration,
                "Hankel-of-Widder and Widder-of-Hankel iterates agree up to a power",
                dom_nu_y,
                nu_y(),
            ),
            -1.0,
            1.5,
        )
        .build(
            side(hankel_of_widder),
            side(|c, q| {
                let (nu, y) = (c.p("nu"), c.p("y"));
                Ok(widder_of_hankel(c, q)?.scale(y.powf(0.5 - nu)))
            }),
        ),
    );

    // Half-order specializations: Fourier and Laplace.
    let cites_c2 = "Fourier and Laplace iterates as Widder transforms";
    v.push(one("C2.1", Iteration, cites_c2, dom_y, grid_var("y")).build(side(sine_of_laplace), side(y_widder_over_x)));
    v.push(one("C2.2", Iteration, cites_c2, dom_y, grid_var("y")).build(side(laplace_of_sine), side(widder_f)));
    v.push(one("C2.3", Iteration, cites_c2, dom_y, grid_var("y")).build(side(cosine_of_laplace), side(widder_f)));
    v.push(
        one("C2.4", Iteration, cites_c2, dom_y, grid_var("y")).build(side(laplace_of_cosine), side(y_widder_over_x)),
    );
    let cites_c3 = "Fourier sine of Laplace equals Laplace of Fourier cosine";
    v.push(
        one("C3.1", Iteration, cites_c3, dom_y, grid_var("y")).build(side(sine_of_laplace), side(laplace_of_cosine)),
    );
    v.push(
        one("C3.2", Iteration, "Laplace of Fourier sine equals Fourier cosine of Laplace", dom_y, grid_var("y"))
            .build(side(laplace_of_sine), side(cosine_of_laplace)),
    );
    let cites_c4 = "Fourier-Widder iterates equal (pi/2) times the Laplace transform";
    v.push(one("C4.1", Iteration, cites_c4, dom_y, grid_var("y")).build(side(sine_of_u_widder), side(half_pi_laplace)));
    v.push(one("C4.2", Iteration, cites_c4, dom_y, grid_var("y")).build(
        side(|c, q| {
            let s = nest(FS, c.f(0), q);
            at(W, &s, c.p("y"), q)
        }),
        side(half_pi_laplace),
    ));
    v.push(one("C4.3", Iteration, cites_c4, dom_y, grid_var("y")).build(
        side(|c, q| {
            let p = nest(W, c.f(0), q);
            at(FC, &p, c.p("y"), q)
        }),
        side(half_pi_laplace),
    ));
    v.push(
        one("C4.4", Iteration, cites_c4, dom_y, grid_var("y")).build(side(y_widder_of_cosine), side(half_pi_laplace)),
    );
    v.push(
        one("C5.1", Iteration, "chain equality of the Fourier-Widder iterates", dom_y, grid_var("y"))
            .build(side(sine_of_u_widder), side(y_widder_of_cosine)),
    );

    // Parseval-Goldstein exchange identities.
    let nu_grid = || grid_nu(-1.0, 1.0);
    let dom_nu = "-1 < nu < 1";
    let dom_none = "default (f, g) pairings";
    let cites_t1 = "Parseval-Goldstein identity for Hankel and K-transforms via the Widder transform";
    v.push(
        with_nu(two("T1.1", cites_t1, dom_nu, nu_grid()), -1.0, 1.5)
            .build(side(int_hankel_f_k_g), side(int_f_widder_g)),
    );
    v.push(
        with_nu(two("T1.2", cites_t1, dom_nu, nu_grid()), -1.0, 1.5)
            .build(side(int_hankel_f_k_g), side(int_g_widder_f)),
    );
    v.push(
        with_nu(two("T1.3", cites_t1, dom_nu, nu_grid()), -1.0, 1.5).build(side(int_f_widder_g), side(int_g_widder_f)),
    );
    let cites_ct1 = "Fourier sine, Laplace and Widder exchange identities";
    v.push(
        two("CT1.1", cites_ct1, dom_none, grid_none()).build(side(int_sine_f_laplace_g), side(int_xf_widder_g_over_u)),
    );
    v.push(
        two("CT1.2", cites_ct1, dom_none, grid_none())
            .build(side(int_sine_f_laplace_g), side(|c, q| int_widder(c.f(1), c.f(0), q))),
    );
    v.push(
        two("CT1.3", cites_ct1, dom_none, grid_none())
            .build(side(int_xf_widder_g_over_u), side(|c, q| int_widder(c.f(1), c.f(0), q))),
    );
    let cites_ct2 = "Fourier cosine, Laplace and Widder exchange identities";
    v.push(
        two("CT2.1", cites_ct2, dom_none, grid_none())
            .build(side(int_cosine_f_laplace_g), side(|c, q| int_widder(c.f(0), c.f(1), q))),
    );
    v.push(two("CT2.2", cites_ct2, dom_none, grid_none()).build(
        side(int_cosine_f_laplace_g),
        side(|c, q| {
            let wf = xw(c.f(0), -1.0);
            let p = nest(W, &wf, q);
            pair(&xw(c.f(1), 1.0), &p, q)
        }),
    ));
    let cites_t2 = "Parseval-Goldstein identities with the K-transform exchange";
    v.push(
        with_nu(two("T2.1", cites_t2, dom_nu, nu_grid()), -1.0, 1.5)
            .build(side(int_hankel_widder), side(|c, q| int_k(c.f(0), c.f(1), kk(c), q))),
    );
    v.push(
        with_nu(two("T2.2", cites_t2, dom_nu, nu_grid()), -1.0, 1.5)
            .build(side(int_hankel_widder), side(|c, q| int_k(c.f(1), c.f(0), kk(c), q))),
    );
    v.push(
        with_nu(two("T2.3", cites_t2, dom_nu, nu_grid()), -1.0, 1.5)
            .build(side(|c, q| int_k(c.f(0), c.f(1), kk(c), q)), side(|c, q| int_k(c.f(1), c.f(0), kk(c), q))),
    );
    let cites_ct3 = "Fourier-Widder exchange reducing to the Laplace exchange identity";
    let half_pi_flg = |c: &Case, q: &QuadConfig| Ok(int_laplace(c.f(0), c.f(1), q)?.scale(FRAC_PI_2));
    let half_pi_glf = |c: &Case, q: &QuadConfig| Ok(int_laplace(c.f(1), c.f(0), q)?.scale(FRAC_PI_2));
    v.push(two("CT3.1", cites_ct3, dom_none, grid_none()).build(side(int_y_sine_widder), side(half_pi_flg)));
    v.push(two("CT3.2", cites_ct3, dom_none, grid_none()).build(side(int_y_sine_widder), side(half_pi_glf)));
    v.push(two("CT3.3", cites_ct3, dom_none, grid_none()).build(side(int_cosine_widder), side(half_pi_flg)));
    v.push(two("CT3.4", cites_ct3, dom_none, grid_none()).build(side(int_cosine_widder), side(half_pi_glf)));
    let mut ct35 = two("CT3.5", "Laplace exchange identity", "default pairings plus f = g = exp_decay(1)", grid_none());
    ct35.functions.push(vec![exp_decay(1.0), exp_decay(1.0)]);
    v.push(ct35.build(side(|c, q| int_laplace(c.f(0), c.f(1), q)), side(|c, q| int_laplace(c.f(1), c.f(0), q))));

    // Widder iterates.
    let cites_it = "iterated Widder transform identities";
    let mut it1 = with_nu(
        one(
            "IT1",
            Iteration,
            cites_it,
            "-1 < nu < 3/2 enforced; grid -1 < nu < 1 paired with t in {0.5, 1, 2}",
            grid_nu_var(-1.0, 1.0, "t"),
        ),
        -1.0,
        1.5,
    );
    it1.kind = Iteration;
    v.push(it1.build(
        side(|c, q| {
            let nu = c.p("nu");
            let wg = xw(c.f(0), -nu - 0.5);
            let p = nest(W, &wg, q);
            at(W, &xw(&p, 2.0 * nu), c.p("t"), q)
        }),
        side(|c, q| {
            let (nu, t) = (c.p("nu"), c.p("t"));
            let k = nest(kk(c), c.f(0), q);
            Ok(at(kk(c), &k, t, q)?.scale(t.powf(nu - 0.5)))
        }),
    ));
    v.push(
        one("IT2", Iteration, cites_it, dom_t, grid_var("t"))
            .build(side(widder_x_widder), side(|c, q| Ok(laplace_laplace(c, q)?.scale(FRAC_PI_2)))),
    );
    v.push(
        one("IT3", Iteration, cites_it, dom_t, grid_var("t"))
            .build(side(widder_over_x_widder), side(|c, q| Ok(laplace_laplace(c, q)?.scale(FRAC_PI_2 / c.p("t"))))),
    );
    let cites_its = "iterated Widder transforms as Stieltjes transforms";
    v.push(
        one("IT4", Iteration, cites_its, dom_t, grid_var("t"))
            .build(side(widder_x_widder), side(|c, q| Ok(at(S, c.f(0), c.p("t"), q)?.scale(FRAC_PI_2)))),
    );
    v.push(one("IT5", Iteration, cites_its, dom_t, grid_var("t")).build(
        side(widder_over_x_widder),
        side(|c, q| {
            let t = c.p("t");
            Ok(at(S, c.f(0), t, q)?.scale(FRAC_PI_2 / t))
        }),
    ));

    // Moments.
    let g15 = vec![vec![family(Family::PowerExp { mu: 1.5, a: 1.0 })]];
    let dom_m = "-1/2 < nu < 1 paired with -nu - 3/2 < mu < -1/2";
    let moment = |id, cite| Spec {
        id,
        kind: Moment,
        citation: cite,
        domain: dom_m,
        arity: 1,
        constraints: vec![],
        functions: g15.clone(),
        grid: moment_grid(),
    };
    v.push(
        moment("M1", "Widder moment identity with a gamma ratio")
            .build(side(moment_widder), side(|c, q| Ok(moment_k(c, q)?.scale(moment_const(c, 0))))),
    );
    v.push(
        moment("M2", "K-transform moment as a Mellin transform")
            .build(side(moment_k), side(|c, q| Ok(moment_g(c, q)?.scale(moment_const(c, 1))))),
    );
    v.push(
        moment("M3", "Widder moment as a Mellin transform")
            .build(side(moment_widder), side(|c, q| Ok(moment_g(c, q)?.scale(moment_const(c, 2))))),
    );
    let ml_funcs = vec![vec![family(Family::PowerExp { mu: 0.5, a: 1.0 })], vec![exp_decay(1.0)]];
    let dom_ml = "-1 < mu < 0";
    let ml = |id, cite| Spec {
        id,
        kind: Moment,
        citation: cite,
        domain: dom_ml,
        arity: 1,
        constraints: vec![Constraint::between("mu", -1.0, 0.0)],
        functions: ml_funcs.clone(),
        grid: grid_mu(-1.0, 0.0),
    };
    v.push(ml("ML1", "Laplace moments as Widder moments").build(
        side(moment_laplace),
        side(|c, q| {
            let mu = c.p("mu");
            Ok(moment_widder_over_u(c, q)?.scale(1.0 / (cos_pi(0.5 * mu) * gamma_value(mu + 1.0))))
        }),
    ));
    v.push(
        ml("ML2", "Laplace moments as Mellin transforms")
            .build(side(moment_laplace), side(|c, q| Ok(moment_g(c, q)?.scale(gamma_value(-c.p("mu")))))),
    );
    v.push(ml("ML3", "Widder moments as Mellin transforms").build(
        side(moment_widder_over_u),
        side(|c, q| Ok(moment_g(c, q)?.scale(-FRAC_PI_2 / sin_pi(0.5 * c.p("mu"))))),
    ));
    v.push(
        Spec {
            id: "ML4",
            kind: Moment,
            citation: "integral of the Laplace transform equals the integral of g(u)/u",
            domain: "g = power_exp(0.5, 1)",
            arity: 1,
            constraints: vec![],
            functions: vec![vec![family(Family::PowerExp { mu: 0.5, a: 1.0 })]],
            grid: grid_none(),
        }
        .build(
            side(|c, q| {
                let l = nest(L, c.f(0), q);
                integral(&l, q)
            }),
            side(|c, q| Ok(mellin(c.f(0), 0.0, q)?.into())),
        ),
    );

    // Closed-form examples.
    let lorentz_nu = [-0.5, 0.25, 0.75];
    v.push(
        none("EX1", ClosedForm, "Widder transform of x^{2nu}/(x^2+a^2)", "|nu| < 1, a = 1, y in {0.5, 1, 2}", {
            Box::new(move |n| {
                let nus: Vec<f64> = if n <= 1 {
                    vec![0.0]
                } else if n == 3 {
                    lorentz_nu.to_vec()
                } else {
                    strip(-1.0, 1.0, n)
                };
                let mut out = vec![params(&[("nu", 0.5), ("a", 1.0), ("y", 2.0)])];
                for nu in nus {
                    for y in points(n) {
                        out.push(params(&[("nu", nu), ("a", 1.0), ("y", y)]));
                    }
                }
                out
            })
        })
        .build(
            side(|c, q| {
                let f = family(Family::LorentzPower { nu: c.p("nu"), a: c.p("a") });
                at(W, &f, c.p("y"), q)
            }),
            side(|c, _| Ok(Side::exact(lorentz_widder(c.p("nu"), c.p("a"), c.p("y"))))),
        ),
    );
    v.push(
        none(
            "EX2",
            ClosedForm,
            "integral of x^{mu+nu+1/2}(a^{2nu}-x^{2nu})/(a^2-x^2)",
            "|nu| < 1, -3/2 < mu+3nu < 1/2, a = 1.5",
            {
                Box::new(|n| {
                    let nus = if n <= 1 {
                        vec![0.2]
                    } else {
                        (0..n).map(|k| -0.2 + 0.8 * k as f64 / (n - 1) as f64).collect()
                    };
                    nus.into_iter()
                        .map(|nu: f64| {
                            let lo = (-nu - 1.5).max(-1.5 - 3.0 * nu);
                            let hi = (-0.5f64).min(0.5 - 3.0 * nu);
                            params(&[("nu", nu), ("mu", 0.5 * (lo + hi)), ("a", 1.5)])
                        })
                        .collect()
                })
            },
        )
        .build(
            side(|c, q| {
                let (nu, mu, a) = (c.p("nu"), c.p("mu"), c.p("a"));
                let p = mu + nu + 0.5;
                let h = Custom::new(
                    move |x: f64| x.powf(p) * power_ratio(nu, a, x),
                    Shape::new(p + (2.0 * nu).min(0.0), Decay::Algebraic { power: p - 2.0 + (2.0 * nu).max(0.0) })
                        .with_scale(a),
                );
                integral(&h, q)
            }),
            side(|c, _| {
                let (nu, mu, a) = (c.p("nu"), c.p("mu"), c.p("a"));
                let v = 0.5 * sin_pi(nu) / cos_pi(0.5 * mu + 1.5 * nu + 0.25)
                    * gamma_value(0.5 * mu + 0.5 * nu + 0.75)
                    * gamma_value(0.25 - 0.5 * mu - 0.5 * nu)
                    * a.powf(mu + 3.0 * nu - 0.5);
                Ok(Side::exact(v))
            }),
        ),
    );
    let struve_cases =
        [vec![("nu", -0.3), ("mu", -1.6)], vec![("nu", 0.5), ("mu", -2.0)], vec![("nu", 1.3), ("mu", -2.4)]];
    v.push(
        none(
            "EX3",
            ClosedForm,
            "Mellin-type integral of the Struve function",
            "nu > -3/2, -5/2 < mu+nu < -1/2, a = 1",
            {
                let list: Vec<Vec<(&str, f64)>> = struve_cases
                    .iter()
                    .map(|p| {
                        let mut p = p.clone();
                        p.push(("a", 1.0));
                        p
                    })
                    .collect();
                grid_list(list, vec![("nu", 0.5), ("mu", -2.0), ("a", 1.0)])
            },
        )
        .build(
            side(|c, q| {
                let (nu, mu, a) = (c.p("nu"), c.p("mu"), c.p("a"));
                let f = family(Family::Power { mu });
                Ok(at(TransformKind::StruveTransform(order(nu)), &f, a, q)?.scale(1.0 / a.sqrt()))
            }),
            side(|c, _| {
                let (nu, mu, a) = (c.p("nu"), c.p("mu"), c.p("a"));
                let s = 0.5 * mu + 0.5 * nu + 0.75;
                // Γ(s) tan(πs) = π / (Γ(1 − s) cos(πs)) by reflection.
                let v = 2f64.powf(mu + 0.5) * PI
                    / (a.powf(mu + 1.5) * gamma_value(0.5 * nu - 0.5 * mu + 0.25) * gamma_value(1.0 - s) * cos_pi(s));
                Ok(Side::exact(v))
            }),
        ),
    );
    v.push(
        none(
            "EX4",
            ClosedForm,
            "Mellin transform of (y^2+a^2)^{-2nu-1}",
            "-0.3 < nu < 1.5, -3/2 < mu+3nu, mu-nu < 1/2, a = 1.5",
            {
                Box::new(|n| {
                    strip(-0.3, 1.5, n)
                        .into_iter()
                        .map(|nu| {
                            let mu = 0.5 * ((-1.5 - 3.0 * nu) + (0.5 + nu));
                            params(&[("nu", nu), ("mu", mu), ("a", 1.5)])
                        })
                        .collect()
                })
            },
        )
        .build(
            side(|c, q| {
                let (nu, mu, a) = (c.p("nu"), c.p("mu"), c.p("a"));
                let p = nu - mu - 0.5;
                let e = 2.0 * nu + 1.0;
                let h = Custom::new(
                    move |y: f64| y.powf(p) / (y * y + a * a).powf(e),
                    Shape::new(p, Decay::Algebraic { power: p - 2.0 * e }).with_scale(a),
                );
                integral(&h, q)
            }),
            side(|c, _| {
                let (nu, mu, a) = (c.p("nu"), c.p("mu"), c.p("a"));
                let v = 0.5 * a.powf(-3.0 * nu - mu - 1.5) / gamma_value(2.0 * nu + 1.0)
                    * gamma_value(0.5 * nu - 0.5 * mu + 0.25)
                    * gamma_value(1.5 * nu + 0.5 * mu + 0.75);
                Ok(Side::exact(v))
            }),
        ),
    );
    v.push(
        none("EX5", ClosedForm, "K-transform of a power", "mu+2nu > |nu| - 3/2", {
            grid_list(
                vec![
                    vec![("nu", 0.5), ("mu", -1.0), ("a", 2.0)],
                    vec![("nu", 0.0), ("mu", -0.5), ("a", 1.0)],
                    vec![("nu", 1.0), ("mu", -1.5), ("a", 1.5)],
                ],
                vec![("nu", 0.5), ("mu", -1.0), ("a", 2.0)],
            )
        })
        .build(
            side(|c, q| {
                let (nu, mu, a) = (c.p("nu"), c.p("mu"), c.p("a"));
                let f = family(Family::Power { mu: mu + 2.0 * nu });
                at(TransformKind::KTransform(order(nu)), &f, a, q)
            }),
            side(|c, _| {
                let (nu, mu, a) = (c.p("nu"), c.p("mu"), c.p("a"));
                Ok(Side::exact(ex5_closed_form(nu, mu, a, -mu - 2.0 * nu - 1.0)))
            }),
        ),
    );
    v.push(
        none("REX1", ClosedForm, "two-pole Mellin integral", "0 < mu < 4, beta = 1, gamma = 4", {
            Box::new(|n| {
                strip(0.0, 4.0, n).into_iter().map(|mu| params(&[("mu", mu), ("beta", 1.0), ("gamma", 4.0)])).collect()
            })
        })
        .build(
            side(|c, q| {
                let (mu, b, g) = (c.p("mu"), c.p("beta"), c.p("gamma"));
                let h = Custom::new(
                    move |x: f64| x.powf(mu - 1.0) / ((x * x + b) * (x * x + g)),
                    Shape::new(mu - 1.0, Decay::Algebraic { power: mu - 5.0 }),
                );
                integral(&h, q)
            }),
            side(|c, _| {
                let (mu, b, g) = (c.p("mu"), c.p("beta"), c.p("gamma"));
                Ok(Side::exact(lorentz_widder(0.5 * mu - 1.0, b.sqrt(), g.sqrt())))
            }),
        ),
    );
    v.push(
        none("REX2", ClosedForm, "integral of x^{mu+1}/(x+a)", "-2 < mu < -1, a in {0.5, 1, 2}", {
            Box::new(|n| {
                strip(-2.0, -1.0, n).into_iter().zip(points(n)).map(|(mu, a)| params(&[("mu", mu), ("a", a)])).collect()
            })
        })
        .build(
            side(|c, q| {
                let f = family(Family::Power { mu: c.p("mu") + 1.0 });
                at(S, &f, c.p("a"), q)
            }),
            side(|c, _| {
                let (mu, a) = (c.p("mu"), c.p("a"));
                Ok(Side::exact(PI / sin_pi(mu) * a.powf(mu + 1.0)))
            }),
        ),
    );
    v.push(
        none(
            "REX3",
            ClosedForm,
            "Struve transform of a power",
            "nu > -3/2, -5/2 < mu+nu < -1/2, a in {2, 0.5, 1.5}",
            {
                let list: Vec<Vec<(&str, f64)>> = struve_cases
                    .iter()
                    .zip([2.0, 0.5, 1.5])
                    .map(|(p, a)| {
                        let mut p = p.clone();
                        p.push(("a", a));
                        p
                    })
                    .collect();
                grid_list(list, vec![("nu", 0.0), ("mu", -1.2), ("a", 2.0)])
            },
        )
        .build(
            side(|c, q| {
                let f = family(Family::Power { mu: c.p("mu") });
                at(TransformKind::StruveTransform(order(c.p("nu"))), &f, c.p("a"), q)
            }),
            side(|c, _| Ok(Side::exact(struve_power(c.p("nu"), c.p("mu"), c.p("a"))))),
        ),
    );

    // Kernel integral, reciprocity and half-order reductions.
    v.push(
        none("KERN", Iteration, "integral of u J_nu(uy) K_nu(ux)", "nu in {0, 0.25, 0.5, 1}, x, y in {0.5, 1, 2}", {
            Box::new(|n| {
                if n <= 1 {
                    return vec![params(&[("nu", 0.0), ("x", 2.0), ("y", 1.0)])];
                }
                let mut out = Vec::new();
                for nu in [0.0, 0.25, 0.5, 1.0] {
                    for x in [0.5, 1.0, 2.0] {
                        for y in [0.5, 1.0, 2.0] {
                            out.push(params(&[("nu", nu), ("x", x), ("y", y)]));
                        }
                    }
                }
                out
            })
        })
        .build(
            side(|c, q| {
                let (nu, x, y) = (c.p("nu"), c.p("x"), c.p("y"));
                let shape = Shape {
                    log_at_zero: nu == 0.0,
                    ..Shape::new(0.5 - nu.abs(), Decay::Exponential { rate: x }).with_scale(1.0 / x)
                };
                let h = Custom::new(move |u: f64| u.sqrt() * bessel_k_value(nu, x * u), shape);
                Ok(at(hk(c), &h, y, q)?.scale(1.0 / y.sqrt()))
            }),
            side(|c, _| {
                let (nu, x, y) = (c.p("nu"), c.p("x"), c.p("y"));
                Ok(Side::exact(y.powf(nu) / (x.powf(nu) * (x * x + y * y))))
            }),
        ),
    );
    v.push(
        Spec {
            id: "HINV",
            kind: Iteration,
            citation: "self-reciprocity of the Hankel transform",
            domain: "nu in {0.5, 1}, x in {0.5, 1, 2}",
            arity: 1,
            constraints: vec![Constraint::above("nu", -1.0)],
            functions: vec![vec![family(Family::PowerExp { mu: 1.0, a: 1.0 })]],
            grid: Box::new(|n| {
                if n <= 1 {
                    return vec![params(&[("nu", 0.5), ("x", 1.0)])];
                }
                let mut out = Vec::new();
                for nu in [0.5, 1.0] {
                    for x in points(n) {
                        out.push(params(&[("nu", nu), ("x", x)]));
                    }
                }
                out
            }),
        }
        .build(
            side(|c, q| {
                let h = nest(hk(c), c.f(0), q);
                at(hk(c), &h, c.p("x"), q)
            }),
            side(|c, _| Ok(Side::exact(c.f(0).eval(c.p("x"))))),
        ),
    );
    v.push(
        one("WST", Iteration, "Widder transform as a Stieltjes transform of f(sqrt x)", dom_y, grid_var("y")).build(
            side(widder_f),
            side(|c, q| {
                let y = c.p("y");
                Ok(at(S, &SqrtArg(c.f(0)), y * y, q)?.scale(0.5))
            }),
        ),
    );
    let half = |nu: f64| TransformKind::Hankel(order(nu));
    v.push(
        one("HALF1", Iteration, "Hankel transform of order 1/2 is a Fourier sine transform", dom_y, grid_var("y"))
            .build(
                side(move |c, q| at(half(0.5), c.f(0), c.p("y"), q)),
                side(|c, q| Ok(at(FS, c.f(0), c.p("y"), q)?.scale((2.0 / PI).sqrt()))),
            ),
    );
    v.push(
        one("HALF2", Iteration, "Hankel transform of order -1/2 is a Fourier cosine transform", dom_y, grid_var("y"))
            .build(
                side(move |c, q| at(half(-0.5), c.f(0), c.p("y"), q)),
                side(|c, q| Ok(at(FC, c.f(0), c.p("y"), q)?.scale((2.0 / PI).sqrt()))),
            ),
    );
    v.push(one("HALF3", Iteration, "K-transform of order 1/2 is a Laplace transform", dom_y, grid_var("y")).build(
        side(|c, q| at(TransformKind::KTransform(order(0.5)), c.f(0), c.p("y"), q)),
        side(|c, q| Ok(at(L, c.f(0), c.p("y"), q)?.scale((PI / 2.0).sqrt()))),
    ));
    v
}

/// 2^{μ+2ν−1/2} a^{exponent} Γ(μ/2+ν/2+3/4) Γ(μ/2+3ν/2+3/4).
pub fn ex5_closed_form(nu: f64, mu: f64, a: f64, exponent: f64) -> f64 {
    2f64.powf(mu + 2.0 * nu - 0.5)
        * a.powf(exponent)
        * gamma_value(0.5 * mu + 0.5 * nu + 0.75)
        * gamma_value(0.5 * mu + 1.5 * nu + 0.75)
}
