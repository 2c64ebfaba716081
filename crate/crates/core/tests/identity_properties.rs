//! Structural checks on the identity registry: scale covariance, continuity
//! in the order, consistency between specialisations, and repeatability.

use std::f64::consts::PI;

use hankel_core::catalog::FunctionDescriptor;
use hankel_core::identities::{check_case, find, moment_constants, quad_config_for, Case, Status};

const TOL: f64 = 1e-6;

fn fd(s: &str) -> FunctionDescriptor {
    s.parse().unwrap()
}

#[test]
fn doubling_f_doubles_both_sides_of_t23() {
    let id = find("T2.3").unwrap();
    let cfg = quad_config_for(TOL);
    for case in id.cases(3) {
        let base = check_case(id, &case, TOL, &cfg);
        let mut doubled = case.clone();
        doubled.functions[0] = doubled.functions[0].scaled(2.0);
        let twice = check_case(id, &doubled, TOL, &cfg);
        assert!((twice.lhs - 2.0 * base.lhs).abs() <= 1e-12 * base.lhs.abs(), "{:?}", case.params);
        assert!((twice.rhs - 2.0 * base.rhs).abs() <= 1e-12 * base.rhs.abs(), "{:?}", case.params);
        assert!((twice.rel_residual - base.rel_residual).abs() <= 1e-10);
        assert_eq!(base.status, twice.status);
    }
}

#[test]
fn l11_is_continuous_in_nu_around_one_half() {
    let id = find("L1.1").unwrap();
    let cfg = quad_config_for(TOL);
    for f in ["exp_decay:a=1", "gauss:a=1"] {
        for y in [0.5, 1.0, 2.0] {
            let at = |nu| check_case(id, &Case::new(&[("nu", nu), ("y", y)], vec![fd(f)]), TOL, &cfg);
            let (lo, mid, hi) = (at(0.49), at(0.5), at(0.51));
            for o in [&lo, &mid, &hi] {
                assert_eq!(o.status, Status::Pass, "{f} y={y}: {o:?}");
            }
            // The second difference of a smooth function over h = 0.01 is O(h²).
            let curvature = (lo.lhs - 2.0 * mid.lhs + hi.lhs).abs();
            assert!(curvature <= 1e-2 * mid.lhs.abs(), "{f} y={y}: {curvature}");
            let step = (hi.lhs - lo.lhs).abs();
            assert!(step <= 0.1 * mid.lhs.abs(), "{f} y={y}: jump {step}");
        }
    }
}

#[test]
fn t11_at_half_order_matches_ct11() {
    let (t11, ct11) = (find("T1.1").unwrap(), find("CT1.1").unwrap());
    let cfg = quad_config_for(TOL);
    let pairs = [["exp_decay:a=1", "gauss:a=1"], ["power_exp:mu=0.5,a=1", "exp_decay:a=2"]];
    for [f, g] in pairs {
        let fs = vec![fd(f), fd(g)];
        let a = check_case(t11, &Case::new(&[("nu", 0.5)], fs.clone()), TOL, &cfg);
        let b = check_case(ct11, &Case::new(&[], fs), TOL, &cfg);
        let bound = 10.0 * (a.lhs_err + b.lhs_err) + 1e-9 * a.lhs.abs();
        assert!((a.lhs - b.lhs).abs() <= bound, "{f}, {g}: {} vs {}", a.lhs, b.lhs);
    }
}

#[test]
fn moment_constants_compose_by_reflection() {
    let id = find("M1").unwrap();
    for case in id.cases(5) {
        let (nu, mu) = (case.p("nu"), case.p("mu"));
        let [c1, c2, c3] = moment_constants(nu, mu);
        assert!((c1 * c2 - c3).abs() <= 1e-10 * c3.abs(), "nu={nu} mu={mu}");
        // Γ(s)Γ(1 − s) with s = μ/2 + ν/2 + 3/4.
        let s = 0.5 * mu + 0.5 * nu + 0.75;
        let reflected = 0.5 * PI / (PI * s).sin();
        assert!((c3 - reflected).abs() <= 1e-10 * c3.abs(), "nu={nu} mu={mu}");
    }
}

#[test]
fn repeated_checks_are_identical() {
    let cfg = quad_config_for(TOL);
    for name in ["L1.1", "T2.3", "ML1", "HINV", "EX3"] {
        let id = find(name).unwrap();
        let case = id.cases(1).remove(0);
        let a = check_case(id, &case, TOL, &cfg);
        // Evaluate the sides alone, in the opposite order, then the whole check again.
        let rhs = id.eval_rhs(&case, &cfg).unwrap();
        let lhs = id.eval_lhs(&case, &cfg).unwrap();
        let b = check_case(id, &case, TOL, &cfg);
        assert_eq!(a, b, "{name}");
        assert!((lhs.value - a.lhs).abs() <= 1e-12 * a.lhs.abs(), "{name}");
        assert!((rhs.value - a.rhs).abs() <= 1e-12 * a.rhs.abs(), "{name}");
    }
}

#[test]
fn widder_stieltjes_relation_on_catalog() {
    let id = find("WST").unwrap();
    let cfg = quad_config_for(TOL);
    for case in id.cases(3) {
        let o = check_case(id, &case, TOL, &cfg);
        assert_eq!(o.status, Status::Pass, "{o:?}");
    }
}
