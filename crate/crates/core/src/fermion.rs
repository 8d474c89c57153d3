//! Casimir free energy and forces of a massless fermion field with bag
//! boundary conditions in a rectangular box, plus its waveguide and
//! parallel-plate limits.
//!
//! Sign convention: a negative force is attractive, i.e. it acts to shrink the
//! edge along which it is taken. Every force is `-∂F/∂(edge)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, CasimirError, Result};
use crate::lattice::{fermi_kernel_sum, m0, m1, m3_2, n0, n1_2, w3};
use crate::series::{PrecisionPolicy, SeriesValue};
use crate::special::ZETA4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    A,
    B,
    C,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::A, Axis::B, Axis::C];

    pub fn index(self) -> usize {
        match self {
            Axis::A => 0,
            Axis::B => 1,
            Axis::C => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::A => "a",
            Axis::B => "b",
            Axis::C => "c",
        })
    }
}

impl FromStr for Axis {
    type Err = CasimirError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Axis::A),
            "b" | "B" => Ok(Axis::B),
            "c" | "C" => Ok(Axis::C),
            _ => Err(CasimirError::Domain(format!("unknown axis '{s}', expected a, b or c"))),
        }
    }
}

/// Edge lengths of the box in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxGeometry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl BoxGeometry {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        require_positive("edge a", a)?;
        require_positive("edge b", b)?;
        require_positive("edge c", c)?;
        Ok(BoxGeometry { a, b, c })
    }

    pub fn cube(l: f64) -> Result<Self> {
        Self::new(l, l, l)
    }

    pub fn edges(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn edge(&self, axis: Axis) -> f64 {
        self.edges()[axis.index()]
    }

    pub fn with_edge(&self, axis: Axis, value: f64) -> Result<Self> {
        let mut e = self.edges();
        e[axis.index()] = value;
        Self::new(e[0], e[1], e[2])
    }

    /// The relabelling with `b ≤ c ≤ a`, together with the original axis that
    /// now plays each of the roles `a`, `b`, `c`.
    pub fn canonical(&self) -> (BoxGeometry, [Axis; 3]) {
        let mut order = Axis::ALL;
        order.sort_by(|&x, &y| self.edge(x).total_cmp(&self.edge(y)));
        let [short, mid, long] = order;
        let roles = [long, short, mid];
        (
            BoxGeometry {
                a: self.edge(long),
                b: self.edge(short),
                c: self.edge(mid),
            },
            roles,
        )
    }

    /// Edges `(a, b, c)` with `axis` in the `a` role and `b ≤ c` for the rest.
    pub fn oriented(&self, axis: Axis) -> (f64, f64, f64) {
        let a = self.edge(axis);
        let mut rest: Vec<f64> = Axis::ALL
            .iter()
            .filter(|&&x| x != axis)
            .map(|&x| self.edge(x))
            .collect();
        rest.sort_by(f64::total_cmp);
        (a, rest[0], rest[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Zero,
    Low,
    Finite,
    High,
}

/// Temperature in inverse-length units. The regime is relative to a unit
/// edge: below 0.1 the thermal correction is tiny, above 5 it dominates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalState {
    pub temperature: f64,
    pub regime: Regime,
}

impl ThermalState {
    pub const LOW_THRESHOLD: f64 = 0.1;
    pub const HIGH_THRESHOLD: f64 = 5.0;

    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature >= 0.0 && temperature.is_finite()) {
            return Err(CasimirError::Domain(format!(
                "temperature must be finite and non-negative, got {temperature}"
            )));
        }
        let regime = if temperature == 0.0 {
            Regime::Zero
        } else if temperature < Self::LOW_THRESHOLD {
            Regime::Low
        } else if temperature > Self::HIGH_THRESHOLD {
            Regime::High
        } else {
            Regime::Finite
        };
        Ok(ThermalState { temperature, regime })
    }

    pub fn zero() -> Self {
        ThermalState {
            temperature: 0.0,
            regime: Regime::Zero,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.temperature == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Total,
    PerUnitLength,
    PerUnitArea,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Total => "total",
            Normalization::PerUnitLength => "per_unit_length",
            Normalization::PerUnitArea => "per_unit_area",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CasimirResult {
    pub energy: SeriesValue,
    pub force_a: Option<SeriesValue>,
    pub force_b: Option<SeriesValue>,
    pub force_c: Option<SeriesValue>,
    pub geometry: BoxGeometry,
    pub thermal: ThermalState,
    pub normalization: Normalization,
}

impl CasimirResult {
    pub fn force(&self, axis: Axis) -> Option<SeriesValue> {
        match axis {
            Axis::A => self.force_a,
            Axis::B => self.force_b,
            Axis::C => self.force_c,
        }
    }
}

/// Energy and the requested forces of the box, routed to the zero- or
/// finite-temperature formulas.
pub fn evaluate(
    geom: &BoxGeometry,
    thermal: &ThermalState,
    forces: &[Axis],
    policy: &PrecisionPolicy,
) -> Result<CasimirResult> {
    let energy = if thermal.is_zero() {
        energy_t0(geom, policy)?
    } else {
        energy_finite_t(geom, thermal, policy)?
    };
    let mut result = CasimirResult {
        energy,
        force_a: None,
        force_b: None,
        force_c: None,
        geometry: *geom,
        thermal: *thermal,
        normalization: Normalization::Total,
    };
    for &axis in forces {
        let f = if thermal.is_zero() {
            force_t0(geom, axis, policy)?
        } else {
            force_finite_t(geom, thermal, axis, policy)?
        };
        match axis {
            Axis::A => result.force_a = Some(f),
            Axis::B => result.force_b = Some(f),
            Axis::C => result.force_c = Some(f),
        }
    }
    Ok(result)
}

/// Zero-temperature energy
/// `F_0 = -[7ζ(4)ac/(32π²b³) + a b^{-3/2} c^{-1/2} M_{3/2}(c/b) + 2M_1(a,b,c)]`.
pub fn energy_t0(geom: &BoxGeometry, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    let (g, _) = geom.canonical();
    let (a, b, c) = (g.a, g.b, g.c);
    let bulk = 7.0 * ZETA4 * a * c / (32.0 * PI * PI * b.powi(3));
    let v = -(a / (b.powf(1.5) * c.sqrt())) * m3_2(c / b, policy)? - 2.0 * m1(a, b, c, policy)? - bulk;
    Ok(v)
}

/// Zero-temperature force along `axis`.
pub fn force_t0(geom: &BoxGeometry, axis: Axis, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    let (a, b, c) = geom.oriented(axis);
    let bulk = 7.0 * ZETA4 * c / (32.0 * PI * PI * b.powi(3));
    let v = (1.0 / (b.powf(1.5) * c.sqrt())) * m3_2(c / b, policy)?
        - (2.0 / a) * m1(a, b, c, policy)?
        - 4.0 * PI * m0(a, b, c, policy)?
        + bulk;
    Ok(v)
}

fn require_finite_temperature(thermal: &ThermalState) -> Result<f64> {
    require_positive("temperature", thermal.temperature)?;
    Ok(thermal.temperature)
}

/// Finite-temperature free energy `F_C = 4T·A_3` with
/// `A_3 = -W_3(a,b,c,1/2T) - a M_1(c,b,1/2T) - ac(2T³/b)^{1/2} M_{3/2}(2bT)`.
pub fn energy_finite_t(geom: &BoxGeometry, thermal: &ThermalState, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    let t = require_finite_temperature(thermal)?;
    let (g, _) = geom.canonical();
    let (a, b, c) = (g.a, g.b, g.c);
    let inv = 0.5 / t;
    let a3 = -w3(a, b, c, inv, policy)?
        - a * m1(c, b, inv, policy)?
        - a * c * (2.0 * t.powi(3) / b).sqrt() * m3_2(2.0 * b * t, policy)?;
    Ok(4.0 * t * a3)
}

/// Finite-temperature force along `axis`.
pub fn force_finite_t(
    geom: &BoxGeometry,
    thermal: &ThermalState,
    axis: Axis,
    policy: &PrecisionPolicy,
) -> Result<SeriesValue> {
    let t = require_finite_temperature(thermal)?;
    let (a, b, c) = geom.oriented(axis);
    let inv = 0.5 / t;
    let inner = m1(c, b, inv, policy)? - 2.0 * PI * fermi_kernel_sum(a, b, c, t, policy)?
        + c * (2.0 * t.powi(3) / b).sqrt() * m3_2(2.0 * b * t, policy)?;
    Ok(4.0 * t * inner)
}

/// Energy and force densities of a limiting geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveguideResult {
    /// Energy per unit length.
    pub energy: SeriesValue,
    /// Force per unit length along `b`.
    pub force_b: SeriesValue,
    /// Force per unit length along `c`.
    pub force_c: SeriesValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlateResult {
    /// Energy per unit area.
    pub energy: SeriesValue,
    /// Force per unit area along the separation `b`.
    pub force: SeriesValue,
}

fn waveguide_t0_energy(b: f64, c: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    let bulk = 7.0 * ZETA4 * c / (32.0 * PI * PI * b.powi(3));
    Ok(-(1.0 / (b.powf(1.5) * c.sqrt())) * m3_2(c / b, policy)? - bulk)
}

fn waveguide_t0_force_b(b: f64, c: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    let bulk = 21.0 * ZETA4 * c / (32.0 * PI * PI * b.powi(4));
    Ok((2.0 * PI * c.sqrt() / b.powf(3.5)) * n1_2(c / b, policy)? - bulk)
}

/// Waveguide (edge `a → ∞`) at zero temperature, per unit length.
pub fn waveguide_t0(b: f64, c: f64, policy: &PrecisionPolicy) -> Result<WaveguideResult> {
    require_positive("edge b", b)?;
    require_positive("edge c", c)?;
    let (short, long) = if b <= c { (b, c) } else { (c, b) };
    Ok(WaveguideResult {
        energy: waveguide_t0_energy(short, long, policy)?,
        force_b: waveguide_t0_force_b(b, c, policy)?,
        force_c: waveguide_t0_force_b(c, b, policy)?,
    })
}

/// Transverse force along `c` of the zero-temperature waveguide.
pub fn waveguide_t0_force_c(b: f64, c: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    require_positive("edge b", b)?;
    require_positive("edge c", c)?;
    waveguide_t0_force_b(c, b, policy)
}

/// Parallel plates (edges `a, c → ∞`) separated by `b`, per unit area.
pub fn parallel_plate(b: f64, thermal: &ThermalState, policy: &PrecisionPolicy) -> Result<PlateResult> {
    require_positive("separation b", b)?;
    if thermal.is_zero() {
        let c = 7.0 * PI * PI;
        return Ok(PlateResult {
            energy: SeriesValue::exact(-c / (2880.0 * b.powi(3))),
            force: SeriesValue::exact(-c / (960.0 * b.powi(4))),
        });
    }
    let t = thermal.temperature;
    let pre = (2.0 * t).powf(2.5) / b.sqrt();
    let m = m3_2(2.0 * b * t, policy)?;
    let n = n1_2(2.0 * b * t, policy)?;
    Ok(PlateResult {
        energy: -pre * m,
        force: -2.0 * pre * ((1.0 / b) * m + 2.0 * PI * t * n),
    })
}

fn waveguide_finite_force_b(b: f64, c: f64, t: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    let x = 2.0 * t * b;
    let thermal = (2.0 * t.powi(3)).sqrt()
        * ((1.0 / b.powf(1.5)) * m3_2(x, policy)? + (2.0 * PI * t / b.sqrt()) * n1_2(x, policy)?);
    Ok(8.0 * t * c * ((PI / b.powi(3)) * n0(c, b, 0.5 / t, policy)? - thermal))
}

/// Waveguide at finite temperature, per unit length.
pub fn waveguide_finite_t(b: f64, c: f64, thermal: &ThermalState, policy: &PrecisionPolicy) -> Result<WaveguideResult> {
    require_positive("edge b", b)?;
    require_positive("edge c", c)?;
    let t = require_finite_temperature(thermal)?;
    let (short, long) = if b <= c { (b, c) } else { (c, b) };
    let energy = -4.0
        * t
        * (m1(long, short, 0.5 / t, policy)?
            + long * (2.0 * t.powi(3) / short).sqrt() * m3_2(2.0 * short * t, policy)?);
    Ok(WaveguideResult {
        energy,
        force_b: waveguide_finite_force_b(b, c, t, policy)?,
        force_c: waveguide_finite_force_b(c, b, t, policy)?,
    })
}

/// Transverse force along `c` of the finite-temperature waveguide.
pub fn waveguide_finite_t_force_c(b: f64, c: f64, thermal: &ThermalState, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    require_positive("edge b", b)?;
    require_positive("edge c", c)?;
    let t = require_finite_temperature(thermal)?;
    waveguide_finite_force_b(c, b, t, policy)
}

/// The eight terms of the edge-doubling operator: which edges are doubled and
/// the sign of the term.
pub const SHAT_TERMS: [([bool; 3], f64); 8] = [
    ([true, true, true], 1.0),
    ([false, false, true], 1.0),
    ([false, true, false], 1.0),
    ([true, false, false], 1.0),
    ([false, true, true], -1.0),
    ([true, false, true], -1.0),
    ([true, true, false], -1.0),
    ([false, false, false], -1.0),
];

/// Applies the edge-doubling operator `Ŝ` to `u` at `(a, b, c)`.
pub fn shat_apply<F>(u: F, geom: &BoxGeometry) -> Result<f64>
where
    F: Fn(f64, f64, f64) -> Result<f64>,
{
    let e = geom.edges();
    let scale = |doubled: bool, x: f64| if doubled { 2.0 * x } else { x };
    SHAT_TERMS.iter().try_fold(0.0, |acc, &(d, sign)| {
        Ok(acc + sign * u(scale(d[0], e[0]), scale(d[1], e[1]), scale(d[2], e[2]))?)
    })
}

/// The plate energy recast as `g(ξ) = -(2ξ)^{5/2} M_{3/2}(2ξ)` with `ξ = bT`,
/// alongside the blackbody piece `-7π²ξ⁴/180` that separates it from the
/// unsubtracted free energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GundersenTerms {
    pub g: SeriesValue,
    pub blackbody: f64,
}

pub fn gundersen_comparison(xi: f64, policy: &PrecisionPolicy) -> Result<GundersenTerms> {
    require_positive("xi", xi)?;
    Ok(GundersenTerms {
        g: -(2.0 * xi).powf(2.5) * m3_2(2.0 * xi, policy)?,
        blackbody: -7.0 * PI * PI * xi.powi(4) / 180.0,
    })
}
