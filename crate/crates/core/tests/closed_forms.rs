//! Every catalog closed form against direct quadrature of its defining
//! integral, across the family's three-point parameter grid.

use hankel_core::catalog::{closed_forms, sample_grid, with_params, FunctionDescriptor};
use hankel_core::quadrature::QuadConfig;
use hankel_core::transforms::transform;

const BASES: [&str; 8] = [
    "power:mu=-0.5",
    "exp_decay:a=1",
    "power_exp:mu=0.5,a=1",
    "lorentz_power:nu=0.25,a=1",
    "hankel_kernel_frac:nu=0.25,t=1",
    "bessel_power:nu=0.5,a=1",
    "struve_half:nu=0,a=1",
    "gauss:a=1",
];

#[test]
fn closed_forms_match_quadrature() {
    let cfg = QuadConfig::default();
    let mut checked = 0;
    let mut bad = Vec::new();
    for base in BASES {
        let base: FunctionDescriptor = base.parse().unwrap();
        for params in sample_grid(&base, 3).unwrap() {
            let f = with_params(&base, &params).unwrap();
            for cf in closed_forms(&f) {
                for y in cf.sample_points() {
                    let exact = cf.eval(y);
                    match transform(cf.transform, &f, y, &cfg) {
                        Ok(v) => {
                            let rel = (v.value - exact).abs() / exact.abs().max(1e-300);
                            checked += 1;
                            if rel.is_nan() || rel > 1e-6 {
                                bad.push(format!("{f} {} y={y}: {} vs {exact} ({rel:e})", cf.transform, v.value));
                            }
                        }
                        Err(e) => bad.push(format!("{f} {} y={y}: {e}", cf.transform)),
                    }
                }
            }
        }
    }
    assert!(bad.is_empty(), "{checked} checked, failures:\n{}", bad.join("\n"));
    assert!(checked > 100, "{checked}");
}
