//! Slow, independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use casimir_core::special::{k0, k1, k_half, ZETA4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rel(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs().max(1e-300)
}

/// Seeded generator for the versioned random grids of the test suites.
pub fn rng(suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xCA51_0001_0000_0000 ^ suite)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

/// `K_ν(z) = ∫_0^∞ e^{-z cosh t} cosh(νt) dt` by the trapezoidal rule, which
/// converges geometrically for this even analytic integrand.
pub fn bessel_k_quadrature(nu: f64, z: f64) -> f64 {
    let t_max = (800.0 / z).max(2.0).acosh() + 1.0;
    let h = 0.005;
    let n = (t_max / h).ceil() as usize;
    let mut s = 0.5 * (-z).exp();
    for i in 1..=n {
        let t = i as f64 * h;
        s += (-z * t.cosh()).exp() * (nu * t).cosh();
    }
    s * h
}

/// Bessel function for the brute-force lattice sums; `order` is 0, 1, or
/// twice a half-integer order passed as `2ν`.
fn kernel(order2: u32, z: f64) -> f64 {
    match order2 {
        0 => k0(z),
        2 => k1(z),
        odd => k_half(odd / 2, z),
    }
}

fn sgn(n: u64) -> f64 {
    if n % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `Σ_{m,n=1}^{N} m^p n^{-p} K(2πmnx)` with fixed cutoff, covering `Y_1`
/// (`p = 1`) and `Y_{3/2}` (`p = 3/2`).
pub fn y_direct(p: f64, order2: u32, x: f64, n_max: u64) -> f64 {
    let mut s = 0.0;
    for m in 1..=n_max {
        for n in 1..=n_max {
            let (m, n) = (m as f64, n as f64);
            s += (m / n).powf(p) * kernel(order2, 2.0 * PI * m * n * x);
        }
    }
    s
}

pub fn y0_direct(x: f64, n_max: u64) -> f64 {
    let mut s = 0.0;
    for m in 1..=n_max {
        for n in 1..=n_max {
            let m = m as f64;
            s += m * m * k0(2.0 * PI * m * n as f64 * x);
        }
    }
    s
}

pub fn v1_direct(x: f64, y: f64, z: f64, n_max: u64) -> f64 {
    let mut s = 0.0;
    for k in 1..=n_max {
        for m in 1..=n_max {
            let q = ((m * m) as f64 / (y * y) + (k * k) as f64 / (z * z)).sqrt();
            for n in 1..=n_max {
                s += q / n as f64 * k1(2.0 * PI * n as f64 * x * q);
            }
        }
    }
    s
}

pub fn z3_direct(x: f64, y: f64, z: f64, t: f64, n_max: u64) -> f64 {
    let mut s = 0.0;
    for n in 1..=n_max {
        for m in 1..=n_max {
            for j in 1..=n_max {
                let q = ((n * n) as f64 / (y * y) + (m * m) as f64 / (z * z) + (j * j) as f64 / (t * t)).sqrt();
                s += (-(-2.0 * PI * x * q).exp()).ln_1p();
            }
        }
    }
    s
}

fn h(i: u64) -> f64 {
    i as f64 + 0.5
}

/// Partial sums of `M_{3/2}(x)` over `n ≤ n_cut` (all `m` to `m_max`).
pub fn m3_2_partial(x: f64, n_cut: u64, m_max: u64) -> f64 {
    let mut s = 0.0;
    for m in 0..m_max {
        for n in 1..=n_cut {
            let nf = n as f64;
            s += sgn(n) * nf.powf(-1.5) * h(m).powf(1.5) * k_half(1, 2.0 * PI * h(m) * nf * x);
        }
    }
    s
}

/// Partial sums of `N_{1/2}(x)` over `n ≤ n_cut`.
pub fn n1_2_partial(x: f64, n_cut: u64, k_max: u64) -> f64 {
    let mut s = 0.0;
    for k in 0..k_max {
        for n in 1..=n_cut {
            let nf = n as f64;
            s += sgn(n) * nf.powf(-0.5) * h(k).powf(2.5) * k_half(0, 2.0 * PI * h(k) * nf * x);
        }
    }
    s
}

pub fn m1_direct(x: f64, y: f64, z: f64, n_max: u64) -> f64 {
    let mut s = 0.0;
    for m in 0..n_max {
        for k in 0..n_max {
            let q = (h(m) * h(m) / (y * y) + h(k) * h(k) / (z * z)).sqrt();
            for n in 1..=n_max {
                s += sgn(n) / n as f64 * q * k1(2.0 * PI * x * n as f64 * q);
            }
        }
    }
    s
}

pub fn w3_direct(x: f64, y: f64, z: f64, t: f64, n_max: u64) -> f64 {
    let mut s = 0.0;
    for m in 0..n_max {
        for n in 0..n_max {
            for k in 0..n_max {
                let q = (h(m) * h(m) / (y * y) + h(n) * h(n) / (z * z) + h(k) * h(k) / (t * t)).sqrt();
                s += (-2.0 * PI * x * q).exp().ln_1p();
            }
        }
    }
    s
}

/// Sum of `f(n, m, j)` over a non-negative index box, stopping each axis once
/// `f` drops below `cut` (the summands decrease along every axis).
fn sum_decreasing3<F: Fn(u64, u64, u64) -> f64>(start: u64, f: F, cut: f64) -> f64 {
    let mut total = 0.0;
    let mut n = start;
    loop {
        let mut plane = 0.0;
        let mut m = start;
        loop {
            let mut line = 0.0;
            let mut j = start;
            loop {
                let v = f(n, m, j);
                if v.abs() < cut {
                    break;
                }
                line += v;
                j += 1;
            }
            if j == start {
                break;
            }
            plane += line;
            m += 1;
        }
        if m == start {
            break;
        }
        total += plane;
        n += 1;
    }
    total
}

fn plane_sum<F: Fn(u64, u64) -> f64>(start: u64, f: F, cut: f64) -> f64 {
    let mut total = 0.0;
    let mut m = start;
    loop {
        let mut line = 0.0;
        let mut j = start;
        loop {
            let v = f(m, j);
            if v.abs() < cut {
                break;
            }
            line += v;
            j += 1;
        }
        if j == start {
            break;
        }
        total += line;
        m += 1;
    }
    total
}

/// Fermionic free energy from its definition: the zero-temperature energy
/// `f0` plus `-4T Σ ln(1 + e^{-ω/T})` over half-integer modes, minus the
/// free blackbody term `-7ζ(4)abcT⁴/(2π²)`.
pub fn fermion_free_energy_mode_sum(a: f64, b: f64, c: f64, t: f64, f0: f64) -> f64 {
    let thermal = sum_decreasing3(
        0,
        |n, m, j| {
            let w = PI * (h(n) * h(n) / (a * a) + h(m) * h(m) / (b * b) + h(j) * h(j) / (c * c)).sqrt();
            (-w / t).exp().ln_1p()
        },
        1e-22,
    );
    let blackbody = -7.0 * ZETA4 * a * b * c * t.powi(4) / (2.0 * PI * PI);
    f0 - 4.0 * t * thermal - blackbody
}

/// Unrenormalized electromagnetic thermal correction from the mode sum:
/// `T Σ ln(1 - e^{-ω/T})` over the two-index TE/TM families (once each) and
/// the three-index family (twice).
pub fn em_delta_t_f0_mode_sum(a: f64, b: f64, c: f64, t: f64) -> f64 {
    let l = |w: f64| (-(-w / t).exp()).ln_1p();
    let pair = |x: f64, y: f64| {
        plane_sum(
            1,
            |n, m| l(PI * ((n * n) as f64 / (x * x) + (m * m) as f64 / (y * y)).sqrt()),
            1e-22,
        )
    };
    let triple = sum_decreasing3(
        1,
        |n, m, j| l(PI * ((n * n) as f64 / (a * a) + (m * m) as f64 / (b * b) + (j * j) as f64 / (c * c)).sqrt()),
        1e-22,
    );
    t * (pair(a, b) + pair(a, c) + pair(b, c) + 2.0 * triple)
}

/// Richardson-extrapolated central difference (two levels).
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let (d1, d2) = (d(h), d(h / 2.0));
    (4.0 * d2 - d1) / 3.0
}

/// `g(ξ) = (ξ/4π) Σ_n (-1)^n [sinh(2πξn) + 2πξn cosh(2πξn)] / (n³ sinh²(2πξn))`
pub fn plate_g_sinh_form(xi: f64) -> f64 {
    let mut s = 0.0;
    for n in 1..400u32 {
        let u = 2.0 * PI * xi * n as f64;
        if u > 700.0 {
            break;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * (u.sinh() + u * u.cosh()) / ((n as f64).powi(3) * u.sinh().powi(2));
    }
    xi / (4.0 * PI) * s
}

use casimir_core::fermion::{shat_apply, BoxGeometry};
use casimir_core::lattice::{m1, m3_2, v1, w3, y1, y3_2, z2, z3};
use casimir_core::series::PrecisionPolicy;
use casimir_core::special::ZETA3;

/// Each edge-doubling identity at `geom` and temperature `t`, as
/// `(name, Ŝ applied to the operand, closed form)`.
pub fn shat_identities(geom: &BoxGeometry, t: f64) -> Vec<(&'static str, f64, f64)> {
    let p = PrecisionPolicy::default().with_rel_tol(1e-14).unwrap();
    let v = |r: casimir_core::error::Result<casimir_core::series::SeriesValue>| r.map(|s| s.value);
    let (a, b, c) = (geom.a, geom.b, geom.c);
    let apply = |u: &dyn Fn(f64, f64, f64) -> casimir_core::error::Result<f64>| shat_apply(u, geom).unwrap();
    let mut out = Vec::new();

    let u1 = |a: f64, b: f64, c: f64| -> casimir_core::error::Result<f64> {
        Ok(3.0 * ZETA3 * a * b * t * t / (16.0 * PI) + 3.0 * ZETA3 * a * c * t * t / (16.0 * PI) - PI * a * t / 48.0
            + ZETA3 * a / (32.0 * PI * b * b * t)
            + 0.5 * (v(z2(1.0 / t, b, c, &p))? - v(z2(0.5 / t, b, c, &p))?)
            - a * t * v(y1(b * t, &p))? / 2.0
            + a * t * v(y1(2.0 * b * t, &p))?)
    };
    out.push(("S U1 = 0", apply(&u1), 0.0));

    let bulk = |a: f64, b: f64, c: f64| {
        Ok(-7.0 * ZETA4 * a * b * c * t.powi(3) / (8.0 * PI * PI) - ZETA4 * a * c / (16.0 * PI * PI * b.powi(3) * t))
    };
    out.push((
        "S bulk",
        apply(&bulk),
        -7.0 * ZETA4 * a * b * c * t.powi(3) / (8.0 * PI * PI) + 7.0 * ZETA4 * a * c / (128.0 * PI * PI * b.powi(3) * t),
    ));

    let u22 = |a: f64, b: f64, c: f64| Ok(a * v(y3_2(c / b, &p))? / (b.powf(1.5) * c.sqrt()));
    out.push((
        "S a Y3/2(c/b)/(b^3/2 c^1/2)",
        apply(&u22),
        -a / (b.powf(1.5) * c.sqrt()) * m3_2(c / b, &p).unwrap().value,
    ));

    let uv1 = |a: f64, b: f64, c: f64| v(v1(a, b, c, &p));
    out.push(("S V1 = -M1", apply(&uv1), -m1(a, b, c, &p).unwrap().value));

    let u31 = |a: f64, b: f64, c: f64| Ok(v(z3(a, b, c, 0.5 / t, &p))? - v(z3(a, b, c, 1.0 / t, &p))?);
    out.push(("S Z3 difference = -W3", apply(&u31), -w3(a, b, c, 0.5 / t, &p).unwrap().value));

    let u32 = |a: f64, b: f64, c: f64| Ok(-a * v(v1(c, b, 0.5 / t, &p))? + a * v(v1(c, b, 1.0 / t, &p))?);
    out.push(("S a V1 difference = -a M1", apply(&u32), -a * m1(c, b, 0.5 / t, &p).unwrap().value));

    let u33 = |a: f64, b: f64, c: f64| {
        Ok(-a * c * (2.0 * t.powi(3) / b).sqrt() * v(y3_2(2.0 * t * b, &p))?
            + a * c / 2.0 * (t.powi(3) / b).sqrt() * v(y3_2(t * b, &p))?)
    };
    out.push((
        "S a c Y3/2 difference = -a c M3/2",
        apply(&u33),
        -a * c * (2.0 * t.powi(3) / b).sqrt() * m3_2(2.0 * b * t, &p).unwrap().value,
    ));
    out
}

/// The versioned 30-point grid for force/energy consistency: edges in
/// [0.5, 2.5], temperatures log-uniform in [0.2, 3], a random axis.
pub fn force_energy_grid() -> Vec<(BoxGeometry, f64, casimir_core::fermion::Axis)> {
    let mut g = rng(5);
    (0..30)
        .map(|_| {
            let geom = BoxGeometry::new(
                uniform(&mut g, 0.5, 2.5),
                uniform(&mut g, 0.5, 2.5),
                uniform(&mut g, 0.5, 2.5),
            )
            .unwrap();
            let t = log_uniform(&mut g, 0.2, 3.0);
            let axis = casimir_core::fermion::Axis::ALL[g.random_range(0..3usize)];
            (geom, t, axis)
        })
        .collect()
}
