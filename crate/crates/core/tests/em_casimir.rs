mod common;

use std::f64::consts::PI;

use casimir_core::em::*;
use casimir_core::fermion::{BoxGeometry, ThermalState};
use casimir_core::series::PrecisionPolicy;
use casimir_core::special::ZETA4;
use common::*;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn p() -> PrecisionPolicy {
    PrecisionPolicy::default().with_rel_tol(1e-13).unwrap()
}

fn full(a: f64, b: f64, c: f64, t: f64) -> EmResult {
    em_energy_finite_t(&BoxGeometry::new(a, b, c).unwrap(), &ThermalState::new(t).unwrap(), &p()).unwrap()
}

#[test]
fn cube_vacuum_energy() {
    let e = em_energy_t0(&BoxGeometry::cube(1.0).unwrap(), &p()).unwrap().value;
    assert!((e - 0.0917).abs() < 5e-4, "{e}");
    let e2 = em_energy_t0(&BoxGeometry::cube(2.0).unwrap(), &p()).unwrap().value;
    assert!(rel(e2, e / 2.0) < 1e-12);
}

#[test]
fn thermal_correction_matches_the_mode_sum() {
    for (a, b, c, t) in [(1.0, 1.0, 1.0, 1.0), (1.0, 1.0, 1.0, 0.5), (1.0, 1.5, 2.0, 1.0), (0.7, 1.0, 1.3, 2.0)] {
        let oracle = em_delta_t_f0_mode_sum(a, b, c, t);
        let v = full(a, b, c, t).delta_t_f0.value;
        assert!((v - oracle).abs() < 1e-8 * oracle.abs().max(1.0), "({a},{b},{c},{t}): {v} vs {oracle}");
    }
}

#[test]
fn high_temperature_polynomial_fit() {
    let (a, b, c) = (1.0, 1.2, 1.5);
    let ts: Vec<f64> = (0..21).map(|i| 5.0 + 0.5 * i as f64).collect();
    // scaled variable s = T/10 keeps the normal matrix well conditioned
    let design = DMatrix::from_fn(ts.len(), 5, |i, j| (ts[i] / 10.0).powi(4 - j as i32));
    let y = DVector::from_iterator(
        ts.len(),
        ts.iter().map(|&t| full(a, b, c, t).delta_t_f0.value + t * t.ln() / 2.0),
    );
    let coef = design.svd(true, true).solve(&y, 1e-14).unwrap();
    let quartic = coef[0] / 1e4;
    let quadratic = coef[2] / 1e2;
    let want4 = -2.0 * ZETA4 * a * b * c / (PI * PI);
    let want2 = PI * (a + b + c) / 12.0;
    assert!(rel(quartic, want4) < 1e-6, "{quartic} vs {want4}");
    assert!(rel(quadratic, want2) < 1e-6, "{quadratic} vs {want2}");
    assert!((coef[1] / 1e3).abs() < 1e-6, "cubic {}", coef[1] / 1e3);
}

#[test]
fn high_temperature_pieces() {
    let g = BoxGeometry::new(1.0, 1.2, 1.5).unwrap();
    let f1a = f1(&g, &p()).unwrap().value;
    for t in [3.0, 10.0] {
        let r = full(1.0, 1.2, 1.5, t);
        assert_eq!(r.f1.value, f1a);
        assert_eq!(r.renorm_coefficients, renorm_coefficients(&g));
    }
    assert!(f2(&g, 30.0, &p()).unwrap().value.abs() < 1e-6);
    assert!(f2(&g, 1.0, &p()).unwrap().value.abs() > f2(&g, 3.0, &p()).unwrap().value.abs());
    let r = full(1.0, 1.2, 1.5, 20.0);
    let lead = em_high_t(&g, 20.0, &p()).unwrap().value + r.log_term;
    assert!((r.f_phys.value - lead).abs() < 1e-6);
}

#[test]
fn blackbody_term() {
    let g = BoxGeometry::new(1.0, 2.0, 3.0).unwrap();
    assert!(rel(blackbody_free_energy(&g, 2.0), -PI * PI * 6.0 * 16.0 / 45.0) < 1e-14);
}

#[test]
fn rejects_zero_temperature_in_the_thermal_path() {
    let g = BoxGeometry::cube(1.0).unwrap();
    assert!(em_energy_finite_t(&g, &ThermalState::zero(), &p()).is_err());
    assert!(f2(&g, 0.0, &p()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn permutation_invariance(a in 0.5f64..2.5, b in 0.5f64..2.5, c in 0.5f64..2.5, t in 0.3f64..3.0) {
        let r = full(a, b, c, t);
        for (x, y, z) in [(b, a, c), (c, b, a), (b, c, a)] {
            let s = full(x, y, z, t);
            prop_assert!(rel(s.f_phys.value, r.f_phys.value) < 1e-8);
            prop_assert!(rel(s.e0_ren.value, r.e0_ren.value) < 1e-8);
        }
    }
}
