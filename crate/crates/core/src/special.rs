//! Modified Bessel functions of the second kind for the orders that appear in
//! the lattice sums, and the zeta constants ζ(2), ζ(3), ζ(4).
//!
//! `K_0` and `K_1` use the ascending series (with the logarithmic term) for
//! `z ≤ 2` and Steed's continued fraction for `z > 2`; both reach full double
//! precision. Half-integer orders use the terminating closed form
//! `K_{i+1/2}(z) = √(π/2z) e^{-z} Σ_k (i+k)!/(k!(i-k)!(2z)^k)`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, CasimirError, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Arguments above this return exactly zero with the underflow flag set.
pub const UNDERFLOW_ARGUMENT: f64 = 700.0;

pub const ZETA2: f64 = PI * PI / 6.0;
pub const ZETA3: f64 = 1.202_056_903_159_594_3;
pub const ZETA4: f64 = PI * PI * PI * PI / 90.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaConstant {
    pub s: u32,
    pub value: f64,
}

/// Riemann ζ(s) for the only arguments the Casimir formulas need.
pub fn zeta(s: u32) -> Result<ZetaConstant> {
    let value = match s {
        2 => ZETA2,
        3 => ZETA3,
        4 => ZETA4,
        _ => {
            return Err(CasimirError::Domain(format!(
                "zeta constant only available for s in {{2, 3, 4}}, got {s}"
            )))
        }
    };
    Ok(ZetaConstant { s, value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BesselOrder {
    /// ν = n, with n ∈ {0, 1}.
    Integer(u8),
    /// ν = i + 1/2, with i ≤ 8.
    HalfInteger(u8),
}

impl BesselOrder {
    pub const MAX_HALF_INTEGER: u8 = 8;

    pub fn validate(self) -> Result<Self> {
        match self {
            BesselOrder::Integer(n) if n <= 1 => Ok(self),
            BesselOrder::HalfInteger(i) if i <= Self::MAX_HALF_INTEGER => Ok(self),
            _ => Err(CasimirError::UnsupportedOrder(self.to_string())),
        }
    }

    pub fn nu(self) -> f64 {
        match self {
            BesselOrder::Integer(n) => n as f64,
            BesselOrder::HalfInteger(i) => i as f64 + 0.5,
        }
    }

    /// The order `ν - steps`, if it stays within the supported set.
    pub fn lowered(self, steps: u8) -> Result<Self> {
        let lowered = match self {
            BesselOrder::Integer(n) if steps <= n => BesselOrder::Integer(n - steps),
            BesselOrder::HalfInteger(i) if steps <= i => BesselOrder::HalfInteger(i - steps),
            _ => {
                return Err(CasimirError::UnsupportedOrder(format!(
                    "{self} lowered by {steps}"
                )))
            }
        };
        Ok(lowered)
    }
}

impl fmt::Display for BesselOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BesselOrder::Integer(n) => write!(f, "{n}"),
            BesselOrder::HalfInteger(i) => write!(f, "{}/2", 2 * *i as u32 + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselValue {
    pub value: f64,
    /// True when the argument lies beyond the exponential floor and the
    /// value was flushed to zero.
    pub underflow: bool,
}

/// `K_ν(z)` with argument and order validation.
pub fn bessel_k(order: BesselOrder, z: f64) -> Result<BesselValue> {
    order.validate()?;
    require_positive("Bessel argument", z)?;
    if z > UNDERFLOW_ARGUMENT {
        return Ok(BesselValue {
            value: 0.0,
            underflow: true,
        });
    }
    let value = match order {
        BesselOrder::Integer(0) => k0(z),
        BesselOrder::Integer(_) => k1(z),
        BesselOrder::HalfInteger(i) => k_half(i as u32, z),
    };
    Ok(BesselValue {
        value,
        underflow: false,
    })
}

#[inline]
pub fn k0(z: f64) -> f64 {
    if z > UNDERFLOW_ARGUMENT {
        0.0
    } else if z <= 2.0 {
        k01_series(z).0
    } else {
        k01_continued_fraction(z).0
    }
}

#[inline]
pub fn k1(z: f64) -> f64 {
    if z > UNDERFLOW_ARGUMENT {
        0.0
    } else if z <= 2.0 {
        k01_series(z).1
    } else {
        k01_continued_fraction(z).1
    }
}

/// `K_{i+1/2}(z)`.
#[inline]
pub fn k_half(i: u32, z: f64) -> f64 {
    if z > UNDERFLOW_ARGUMENT {
        return 0.0;
    }
    let prefactor = (PI / (2.0 * z)).sqrt() * (-z).exp();
    match i {
        0 => prefactor,
        1 => prefactor * (1.0 + 1.0 / z),
        _ => {
            // (i+k)!/(k!(i-k)!) built up from k = 0.
            let inv_2z = 0.5 / z;
            let mut coeff = 1.0;
            let mut power = 1.0;
            let mut sum = 1.0;
            for k in 1..=i {
                coeff *= ((i + k) * (i - k + 1)) as f64 / k as f64;
                power *= inv_2z;
                sum += coeff * power;
            }
            prefactor * sum
        }
    }
}

/// Ascending series for (K_0, K_1), accurate for small and moderate z.
fn k01_series(z: f64) -> (f64, f64) {
    let y = 0.25 * z * z;
    let log_half = (0.5 * z).ln();

    // k = 0 terms
    let mut t0 = 1.0; // y^k / (k!)^2
    let mut t1 = 1.0; // y^k / (k!(k+1)!)
    let mut harmonic = 0.0; // H_k
    let mut i0 = 1.0;
    let mut i1 = 1.0;
    let mut k0_rest = 0.0;
    // ψ(k+1) + ψ(k+2) = 2 H_k + 1/(k+1) - 2γ
    let mut k1_rest = 1.0 - 2.0 * EULER_GAMMA;
    for k in 1..60u32 {
        let kf = k as f64;
        t0 *= y / (kf * kf);
        t1 *= y / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        i0 += t0;
        i1 += t1;
        k0_rest += harmonic * t0;
        k1_rest += (2.0 * harmonic + 1.0 / (kf + 1.0) - 2.0 * EULER_GAMMA) * t1;
        if t0 < 1e-18 * i0 && t1 < 1e-18 * i1 {
            break;
        }
    }
    let i1 = 0.5 * z * i1;
    let k0 = -(log_half + EULER_GAMMA) * i0 + k0_rest;
    let k1 = 1.0 / z + log_half * i1 - 0.25 * z * k1_rest;
    (k0, k1)
}

/// Steed's continued fraction (Temme's CF2) for (K_0, K_1), z > 2.
fn k01_continued_fraction(z: f64) -> (f64, f64) {
    const EPS: f64 = 1e-17;
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..10_000u32 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    let k0 = (PI / (2.0 * z)).sqrt() * (-z).exp() / s;
    let k1 = k0 * (z + 0.5 - a1 * h) / z;
    (k0, k1)
}

/// Residual of `(d/(z dz))^i [z^ν K_ν(z)] = (-1)^i z^{ν-i} K_{ν-i}(z)`, with the
/// left side taken by central finite differences. Self-test only.
pub fn bessel_k_derivative_identity_check(order: BesselOrder, z: f64, steps: u8) -> Result<f64> {
    order.validate()?;
    let lowered = order.lowered(steps)?;
    require_positive("Bessel argument", z)?;
    let nu = order.nu();
    let g = |x: f64| -> Result<f64> { Ok(x.powf(nu) * bessel_k(order, x)?.value) };

    // Richardson-extrapolated nested central differences of (1/x) d/dx.
    fn apply(
        g: &dyn Fn(f64) -> Result<f64>,
        x: f64,
        steps: u8,
        h: f64,
    ) -> Result<f64> {
        if steps == 0 {
            return g(x);
        }
        let diff = |h: f64| -> Result<f64> {
            Ok((apply(g, x + h, steps - 1, h)? - apply(g, x - h, steps - 1, h)?) / (2.0 * h * x))
        };
        Ok((4.0 * diff(h)? - diff(2.0 * h)?) / 3.0)
    }

    let h = 1e-3 * z.min(1.0);
    if z - 2.0 * h * steps as f64 <= 0.0 {
        return Err(CasimirError::Domain(format!(
            "argument {z} too small for the finite-difference check"
        )));
    }
    let lhs = apply(&g, z, steps, h)?;
    let sign = if steps.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = sign * z.powf(lowered.nu()) * bessel_k(lowered, z)?.value;
    Ok((lhs - rhs).abs())
}
