//! The named lattice-sum families.
//!
//! Integer-lattice families (`Y`, `Z`, `V_1`) sum over indices starting at 1;
//! half-integer families (`M`, `N`, `W_3`, the Fermi kernel) shift the mode
//! indices to `m + 1/2` with `m ≥ 0`. The index inside a Bessel argument's
//! product (`n`) is always the innermost axis, and alternating `(-1)^{n+1}`
//! sums are paired.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Result};
use crate::series::{sum_alternating, sum_axis, PrecisionPolicy, SeriesValue};
use crate::special::{k0, k1, k_half, ZETA2, ZETA3, ZETA4};

const TWO_PI: f64 = 2.0 * PI;

#[inline]
fn half(i: u64) -> f64 {
    i as f64 + 0.5
}

/// `ln(1 - e^{-w})`
#[inline]
pub(crate) fn log_bose(w: f64) -> f64 {
    (-(-w).exp()).ln_1p()
}

/// `ln(1 + e^{-w})`
#[inline]
pub(crate) fn log_fermi(w: f64) -> f64 {
    (-w).exp().ln_1p()
}

fn positive(args: &[(&str, f64)]) -> Result<()> {
    args.iter().try_for_each(|&(name, v)| require_positive(name, v))
}

/// `Y_0(x) = Σ_{m,n≥1} m² K_0(2πmnx)`
pub fn y0(x: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x)])?;
    sum_axis(policy, 1, |m| {
        let m = m as f64;
        sum_axis(policy, 1, |n| SeriesValue::term(m * m * k0(TWO_PI * m * n as f64 * x)))
    })
    .check("Y0", policy)
}

/// `Y_1(x) = Σ_{m,n≥1} (m/n) K_1(2πmnx)`
pub fn y1(x: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x)])?;
    sum_axis(policy, 1, |m| {
        let m = m as f64;
        sum_axis(policy, 1, |n| {
            let n = n as f64;
            SeriesValue::term(m / n * k1(TWO_PI * m * n * x))
        })
    })
    .check("Y1", policy)
}

/// `Y_{3/2}(x) = Σ_{m,n≥1} (m/n)^{3/2} K_{3/2}(2πmnx)`
pub fn y3_2(x: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x)])?;
    sum_axis(policy, 1, |m| {
        let m = m as f64;
        sum_axis(policy, 1, |n| {
            let n = n as f64;
            SeriesValue::term((m / n).powf(1.5) * k_half(1, TWO_PI * m * n * x))
        })
    })
    .check("Y3/2", policy)
}

/// `Z_1(x) = Σ_{m≥1} ln(1 - e^{-2πmx})`
pub fn z1(x: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x)])?;
    sum_axis(policy, 1, |m| SeriesValue::term(log_bose(TWO_PI * m as f64 * x))).check("Z1", policy)
}

/// `Z_2(x,y,z) = Σ_{n,m≥1} ln(1 - e^{-2πx√(n²/y² + m²/z²)})`
pub fn z2(x: f64, y: f64, z: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x), ("y", y), ("z", z)])?;
    sum_axis(policy, 1, |m| {
        let mz = m as f64 / z;
        sum_axis(policy, 1, |n| {
            let ny = n as f64 / y;
            SeriesValue::term(log_bose(TWO_PI * x * (ny * ny + mz * mz).sqrt()))
        })
    })
    .check("Z2", policy)
}

/// `Z_3(x,y,z,t) = Σ_{n,m,j≥1} ln(1 - e^{-2πx√(n²/y² + m²/z² + j²/t²)})`
pub fn z3(x: f64, y: f64, z: f64, t: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x), ("y", y), ("z", z), ("t", t)])?;
    sum_axis(policy, 1, |j| {
        let jt = j as f64 / t;
        sum_axis(policy, 1, |m| {
            let mz = m as f64 / z;
            let base = jt * jt + mz * mz;
            sum_axis(policy, 1, |n| {
                let ny = n as f64 / y;
                SeriesValue::term(log_bose(TWO_PI * x * (base + ny * ny).sqrt()))
            })
        })
    })
    .check("Z3", policy)
}

/// `V_1(x,y,z) = Σ_{k,m,n≥1} (q/n) K_1(2πnxq)`, `q = √(m²/y² + k²/z²)`
pub fn v1(x: f64, y: f64, z: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x), ("y", y), ("z", z)])?;
    sum_axis(policy, 1, |k| {
        let kz = k as f64 / z;
        sum_axis(policy, 1, |m| {
            let my = m as f64 / y;
            let q = (my * my + kz * kz).sqrt();
            sum_axis(policy, 1, |n| {
                let n = n as f64;
                SeriesValue::term(q / n * k1(TWO_PI * n * x * q))
            })
        })
    })
    .check("V1", policy)
}

/// `M_{3/2}(x) = Σ_{m≥0,n≥1} (-1)^{n+1} n^{-3/2} (m+1/2)^{3/2} K_{3/2}(2π(m+1/2)nx)`
pub fn m3_2(x: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x)])?;
    sum_axis(policy, 0, |m| {
        let mh = half(m);
        let weight = mh.powf(1.5);
        sum_alternating(policy, |n| {
            let n = n as f64;
            weight * n.powf(-1.5) * k_half(1, TWO_PI * mh * n * x)
        })
    })
    .check("M3/2", policy)
}

/// Shared shape of the three-index half-integer Bessel sums: `k` outer, `m`
/// middle, alternating `n` inner, with `q = √((m+1/2)²/y² + (k+1/2)²/z²)`.
fn half_lattice<W, K>(x: f64, y: f64, z: f64, policy: &PrecisionPolicy, weight: W, kernel: K) -> SeriesValue
where
    W: Fn(f64, f64) -> f64,
    K: Fn(f64, f64) -> f64,
{
    sum_axis(policy, 0, |k| {
        let kz = half(k) / z;
        sum_axis(policy, 0, |m| {
            let my = half(m) / y;
            let q = (my * my + kz * kz).sqrt();
            let w = weight(half(m), q);
            sum_alternating(policy, |n| {
                let n = n as f64;
                w * kernel(n, TWO_PI * x * n * q)
            })
        })
    })
}

/// `M_1(x,y,z) = Σ_{m,k≥0,n≥1} (-1)^{n+1} (q/n) K_1(2πxnq)`
pub fn m1(x: f64, y: f64, z: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x), ("y", y), ("z", z)])?;
    half_lattice(x, y, z, policy, |_, q| q, |n, arg| k1(arg) / n).check("M1", policy)
}

/// `M_0(x,y,z) = Σ_{m,k≥0,n≥1} (-1)^{n+1} q² K_0(2πxnq)`
pub fn m0(x: f64, y: f64, z: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x), ("y", y), ("z", z)])?;
    half_lattice(x, y, z, policy, |_, q| q * q, |_, arg| k0(arg)).check("M0", policy)
}

/// `N_0(x,y,z) = Σ_{m,k≥0,n≥1} (-1)^{n+1} (m+1/2)² K_0(2πxnq)`, which satisfies
/// `∂M_1(x,y,z)/∂y = (2πx/y³) N_0(x,y,z)`.
pub fn n0(x: f64, y: f64, z: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x), ("y", y), ("z", z)])?;
    half_lattice(x, y, z, policy, |mh, _| mh * mh, |_, arg| k0(arg)).check("N0", policy)
}

/// `N_{1/2}(x) = Σ_{k≥0,n≥1} (-1)^{n+1} n^{-1/2} (k+1/2)^{5/2} K_{1/2}(2π(k+1/2)nx)`
pub fn n1_2(x: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x)])?;
    sum_axis(policy, 0, |k| {
        let kh = half(k);
        let weight = kh.powf(2.5);
        sum_alternating(policy, |n| {
            let n = n as f64;
            weight / n.sqrt() * k_half(0, TWO_PI * kh * n * x)
        })
    })
    .check("N1/2", policy)
}

/// `W_3(x,y,z,t) = Σ_{m,n,k≥0} ln(1 + e^{-2πx√((m+1/2)²/y² + (n+1/2)²/z² + (k+1/2)²/t²)})`
pub fn w3(x: f64, y: f64, z: f64, t: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("x", x), ("y", y), ("z", z), ("t", t)])?;
    sum_axis(policy, 0, |k| {
        let kt = half(k) / t;
        sum_axis(policy, 0, |n| {
            let nz = half(n) / z;
            let base = kt * kt + nz * nz;
            sum_axis(policy, 0, |m| {
                let my = half(m) / y;
                SeriesValue::term(log_fermi(TWO_PI * x * (base + my * my).sqrt()))
            })
        })
    })
    .check("W3", policy)
}

/// `Σ_{k,m,j≥0} q/(e^{2πaq} + 1)` with
/// `q = √(4T²(k+1/2)² + (m+1/2)²/b² + (j+1/2)²/c²)`; the temperature axis `k`
/// is outermost.
pub fn fermi_kernel_sum(a: f64, b: f64, c: f64, temperature: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("a", a), ("b", b), ("c", c), ("T", temperature)])?;
    sum_axis(policy, 0, |k| {
        let kt = 2.0 * temperature * half(k);
        sum_axis(policy, 0, |j| {
            let jc = half(j) / c;
            let base = kt * kt + jc * jc;
            sum_axis(policy, 0, |m| {
                let mb = half(m) / b;
                let q = (base + mb * mb).sqrt();
                let e = (-TWO_PI * a * q).exp();
                SeriesValue::term(q * e / (1.0 + e))
            })
        })
    })
    .check("Fermi kernel sum", policy)
}

/// The integration constant `Q(a,b)` of the two-dimensional log-sum identity.
pub fn q_constant(a: f64, b: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("a", a), ("b", b)])?;
    let value = 0.5 * z1(a / b, policy)? - ZETA2 / (4.0 * PI) + ZETA3 * b / (8.0 * PI * a)
        - ZETA3 * a * a / (8.0 * PI * b * b)
        + y1(b / a, policy)?
        - (a / b) * y1(a / b, policy)?;
    Ok(value)
}

/// The integration constant `N(a,b,c)` of the three-dimensional log-sum identity.
pub fn n_constant(a: f64, b: f64, c: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    positive(&[("a", a), ("b", b), ("c", c)])?;
    let zeta_terms = ZETA2 / (8.0 * PI)
        + ZETA3 * a * a / (16.0 * PI * b * b)
        - ZETA3 * b / (16.0 * PI * a)
        - ZETA3 * c / (16.0 * PI * a)
        + c * (ZETA4 * b / (8.0 * PI * PI * a * a) - ZETA4 * a * a / (8.0 * PI * PI * b.powi(3)));
    let value = 0.5 * z2(a, b, c, policy)? + a * (v1(c, a, b, policy)? - v1(a, b, c, policy)?)
        - 0.5 * y1(b / a, policy)?
        + c / (2.0 * (a * b).sqrt()) * y3_2(b / a, policy)?
        - a * a / (2.0 * c.sqrt() * b.powf(1.5)) * y3_2(c / b, policy)?
        + zeta_terms;
    Ok(value)
}

/// Every named family with its arguments, for uniform dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LatticeSum {
    Y0 { x: f64 },
    Y1 { x: f64 },
    Y32 { x: f64 },
    Z1 { x: f64 },
    Z2 { x: f64, y: f64, z: f64 },
    Z3 { x: f64, y: f64, z: f64, t: f64 },
    V1 { x: f64, y: f64, z: f64 },
    M0 { x: f64, y: f64, z: f64 },
    M1 { x: f64, y: f64, z: f64 },
    M32 { x: f64 },
    N0 { x: f64, y: f64, z: f64 },
    N12 { x: f64 },
    W3 { x: f64, y: f64, z: f64, t: f64 },
    Fermi { a: f64, b: f64, c: f64, temperature: f64 },
    Q { a: f64, b: f64 },
    N { a: f64, b: f64, c: f64 },
}

impl LatticeSum {
    pub fn evaluate(&self, policy: &PrecisionPolicy) -> Result<SeriesValue> {
        policy.validate()?;
        match *self {
            LatticeSum::Y0 { x } => y0(x, policy),
            LatticeSum::Y1 { x } => y1(x, policy),
            LatticeSum::Y32 { x } => y3_2(x, policy),
            LatticeSum::Z1 { x } => z1(x, policy),
            LatticeSum::Z2 { x, y, z } => z2(x, y, z, policy),
            LatticeSum::Z3 { x, y, z, t } => z3(x, y, z, t, policy),
            LatticeSum::V1 { x, y, z } => v1(x, y, z, policy),
            LatticeSum::M0 { x, y, z } => m0(x, y, z, policy),
            LatticeSum::M1 { x, y, z } => m1(x, y, z, policy),
            LatticeSum::M32 { x } => m3_2(x, policy),
            LatticeSum::N0 { x, y, z } => n0(x, y, z, policy),
            LatticeSum::N12 { x } => n1_2(x, policy),
            LatticeSum::W3 { x, y, z, t } => w3(x, y, z, t, policy),
            LatticeSum::Fermi { a, b, c, temperature } => fermi_kernel_sum(a, b, c, temperature, policy),
            LatticeSum::Q { a, b } => q_constant(a, b, policy),
            LatticeSum::N { a, b, c } => n_constant(a, b, c, policy),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LatticeSum::Y0 { .. } => "Y0",
            LatticeSum::Y1 { .. } => "Y1",
            LatticeSum::Y32 { .. } => "Y3/2",
            LatticeSum::Z1 { .. } => "Z1",
            LatticeSum::Z2 { .. } => "Z2",
            LatticeSum::Z3 { .. } => "Z3",
            LatticeSum::V1 { .. } => "V1",
            LatticeSum::M0 { .. } => "M0",
            LatticeSum::M1 { .. } => "M1",
            LatticeSum::M32 { .. } => "M3/2",
            LatticeSum::N0 { .. } => "N0",
            LatticeSum::N12 { .. } => "N1/2",
            LatticeSum::W3 { .. } => "W3",
            LatticeSum::Fermi { .. } => "Fermi kernel sum",
            LatticeSum::Q { .. } => "Q",
            LatticeSum::N { .. } => "N",
        }
    }
}

impl fmt::Display for LatticeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Orders of the `Y` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum YOrder {
    Zero,
    One,
    ThreeHalves,
}

pub fn eval_y(order: YOrder, x: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    match order {
        YOrder::Zero => y0(x, policy),
        YOrder::One => y1(x, policy),
        YOrder::ThreeHalves => y3_2(x, policy),
    }
}

/// Orders of the alternating `M` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MOrder {
    Zero,
    One,
    ThreeHalves,
}

/// `M_{3/2}` takes only `x`; `y` and `z` are ignored for it.
pub fn eval_m(order: MOrder, x: f64, y: f64, z: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    match order {
        MOrder::Zero => m0(x, y, z, policy),
        MOrder::One => m1(x, y, z, policy),
        MOrder::ThreeHalves => m3_2(x, policy),
    }
}
