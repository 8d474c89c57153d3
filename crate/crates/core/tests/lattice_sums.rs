mod common;

use casimir_core::lattice::*;
use casimir_core::series::{ErrorMode, PrecisionPolicy};
use common::*;
use proptest::prelude::*;

fn p() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

fn tight() -> PrecisionPolicy {
    PrecisionPolicy::default().with_rel_tol(1e-14).unwrap()
}

#[test]
fn integer_families_match_direct_sums() {
    for x in [0.4, 1.0, 2.3] {
        assert!(rel(y0(x, &p()).unwrap().value, y0_direct(x, 60)) < 1e-9, "Y0({x})");
        assert!(rel(y1(x, &p()).unwrap().value, y_direct(1.0, 2, x, 60)) < 1e-9, "Y1({x})");
        assert!(rel(y3_2(x, &p()).unwrap().value, y_direct(1.5, 3, x, 60)) < 1e-9, "Y3/2({x})");
    }
    for (x, y, z) in [(1.0, 1.0, 1.0), (0.7, 1.3, 2.0), (2.0, 0.8, 1.1)] {
        assert!(rel(v1(x, y, z, &p()).unwrap().value, v1_direct(x, y, z, 30)) < 1e-9, "V1");
        assert!(rel(z3(x, y, z, 1.4, &p()).unwrap().value, z3_direct(x, y, z, 1.4, 30)) < 1e-9, "Z3");
    }
}

#[test]
fn half_integer_families_match_direct_sums() {
    for (x, y, z) in [(1.0, 1.0, 1.0), (0.8, 1.3, 2.0), (2.0, 0.8, 1.1)] {
        assert!(rel(m1(x, y, z, &p()).unwrap().value, m1_direct(x, y, z, 40)) < 1e-9, "M1");
        assert!(rel(w3(x, y, z, 0.9, &p()).unwrap().value, w3_direct(x, y, z, 0.9, 40)) < 1e-9, "W3");
    }
}

#[test]
fn z1_matches_its_definition() {
    for x in [0.2, 1.0, 3.0] {
        let direct: f64 = (1..2000).map(|m| (-(-2.0 * std::f64::consts::PI * m as f64 * x).exp()).ln_1p()).sum();
        assert!(rel(z1(x, &p()).unwrap().value, direct) < 1e-9);
    }
}

#[test]
fn alternating_partial_sums_bracket_the_limit() {
    let mut g = rng(1);
    for _ in 0..20 {
        let x = log_uniform(&mut g, 0.3, 3.0);
        let m = m3_2(x, &tight()).unwrap().value;
        let nh = n1_2(x, &tight()).unwrap().value;
        for cut in [1, 2, 3, 4] {
            let pm = m3_2_partial(x, cut, 60);
            let pn = n1_2_partial(x, cut, 60);
            let slack = 1e-13 * m.abs().max(nh.abs());
            if cut % 2 == 1 {
                assert!(pm >= m - slack && pn >= nh - slack, "x={x} cut={cut}");
            } else {
                assert!(pm <= m + slack && pn <= nh + slack, "x={x} cut={cut}");
            }
        }
    }
}

#[test]
fn error_modes_agree() {
    let first = PrecisionPolicy::new(1e-12, 1e-300, 10_000, ErrorMode::FirstOmittedTerm).unwrap();
    for x in [0.3, 1.0] {
        let a = y1(x, &first).unwrap();
        let b = y1(x, &tight()).unwrap();
        assert!((a.value - b.value).abs() < 1e-11 * b.value.abs());
    }
}

#[test]
fn dispatch_by_name() {
    let s: LatticeSum = serde_json::from_str(r#"{"family":"m1","x":1.0,"y":1.0,"z":1.0}"#).unwrap();
    assert_eq!(s.evaluate(&p()).unwrap(), m1(1.0, 1.0, 1.0, &p()).unwrap());
    assert_eq!(s.to_string(), "M1");
}

fn family_values(x: f64, y: f64, z: f64, t: f64, policy: &PrecisionPolicy) -> Vec<(&'static str, casimir_core::series::SeriesValue)> {
    vec![
        ("Y0", y0(x, policy).unwrap()),
        ("Y1", y1(x, policy).unwrap()),
        ("Y3/2", y3_2(x, policy).unwrap()),
        ("Z1", z1(x, policy).unwrap()),
        ("Z2", z2(x, y, z, policy).unwrap()),
        ("Z3", z3(x, y, z, t, policy).unwrap()),
        ("V1", v1(x, y, z, policy).unwrap()),
        ("M0", m0(x, y, z, policy).unwrap()),
        ("M1", m1(x, y, z, policy).unwrap()),
        ("M3/2", m3_2(x, policy).unwrap()),
        ("N0", n0(x, y, z, policy).unwrap()),
        ("N1/2", n1_2(x, policy).unwrap()),
        ("W3", w3(x, y, z, t, policy).unwrap()),
        ("Fermi", fermi_kernel_sum(x, y, z, t, policy).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tail_bounds_cover_the_truncation(x in 0.3f64..4.0, y in 0.3f64..4.0, z in 0.3f64..4.0, t in 0.3f64..4.0) {
        let loose = PrecisionPolicy::default().with_rel_tol(1e-6).unwrap();
        let a = family_values(x, y, z, t, &loose);
        let b = family_values(x, y, z, t, &tight());
        for ((name, lo), (_, hi)) in a.iter().zip(&b) {
            let gap = (lo.value - hi.value).abs();
            prop_assert!(gap <= lo.error_bound + hi.error_bound + 1e-15 * hi.value.abs(),
                "{} gap {} bound {}", name, gap, lo.error_bound);
        }
    }

    #[test]
    fn doubling_max_index_stays_within_the_bound(x in 0.3f64..4.0, y in 0.3f64..4.0, z in 0.3f64..4.0) {
        let base = p();
        let doubled = base.with_max_index(2 * base.max_index).unwrap();
        let a = family_values(x, y, z, 1.0, &base);
        let b = family_values(x, y, z, 1.0, &doubled);
        for ((name, lo), (_, hi)) in a.iter().zip(&b) {
            prop_assert!((lo.value - hi.value).abs() <= lo.error_bound.max(1e-300), "{}", name);
        }
    }

    #[test]
    fn signs(x in 0.2f64..5.0, y in 0.2f64..5.0, z in 0.2f64..5.0, t in 0.2f64..5.0) {
        prop_assert!(y0(x, &p()).unwrap().value >= 0.0);
        prop_assert!(y1(x, &p()).unwrap().value >= 0.0);
        prop_assert!(y3_2(x, &p()).unwrap().value >= 0.0);
        prop_assert!(v1(x, y, z, &p()).unwrap().value >= 0.0);
        prop_assert!(w3(x, y, z, t, &p()).unwrap().value >= 0.0);
        prop_assert!(z1(x, &p()).unwrap().value <= 0.0);
        prop_assert!(z2(x, y, z, &p()).unwrap().value <= 0.0);
        prop_assert!(z3(x, y, z, t, &p()).unwrap().value <= 0.0);
    }

    #[test]
    fn w3_depends_only_on_ratios(x in 0.3f64..3.0, y in 0.3f64..3.0, z in 0.3f64..3.0, t in 0.3f64..3.0, s in 0.5f64..2.0) {
        let a = w3(x, y, z, t, &tight()).unwrap().value;
        let b = w3(s * x, s * y, s * z, s * t, &tight()).unwrap().value;
        prop_assert!(rel(b, a) < 1e-12, "{} vs {}", a, b);
    }
}
