//! Electromagnetic Casimir free energy of a perfectly conducting box.
//!
//! The physical free energy is
//! `F^phys = E_0^ren + Δ_T F_0 - F_bb - α_1 T³ - α_2 T²`, which after resumming
//! the thermal modes becomes `-(T ln T)/2 + T F_1(a,b,c) + F_2(a,b,c,T)`. The
//! geometry-independent `-(T ln T)/2` is reported as its own channel because it
//! carries no force.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Result};
use crate::fermion::{BoxGeometry, ThermalState};
use crate::lattice::{v1, y1, y3_2, z1, z2, z3};
use crate::series::{PrecisionPolicy, SeriesValue};
use crate::special::{ZETA2, ZETA3, ZETA4};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmResult {
    pub e0_ren: SeriesValue,
    pub f1: SeriesValue,
    pub f2: SeriesValue,
    /// `-(T ln T)/2`
    pub log_term: f64,
    pub f_phys: SeriesValue,
    /// The unrenormalized thermal correction rebuilt from the pieces above.
    pub delta_t_f0: SeriesValue,
    /// `(α_1, α_2)` of the heat-kernel subtraction.
    pub renorm_coefficients: (f64, f64),
}

/// `(α_1, α_2) = (0, π(a+b+c)/12)`
pub fn renorm_coefficients(geom: &BoxGeometry) -> (f64, f64) {
    (0.0, PI * (geom.a + geom.b + geom.c) / 12.0)
}

/// `F_bb = -π²abcT⁴/45`
pub fn blackbody_free_energy(geom: &BoxGeometry, temperature: f64) -> f64 {
    -2.0 * ZETA4 * geom.a * geom.b * geom.c * temperature.powi(4) / (PI * PI)
}

/// Renormalized zero-temperature energy `E_0^ren(a,b,c)`.
pub fn em_energy_t0(geom: &BoxGeometry, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    let (g, _) = geom.canonical();
    let (a, b, c) = (g.a, g.b, g.c);
    let zeta_terms = ZETA4 * c / (8.0 * PI * PI * b.powi(3)) + ZETA3 / (16.0 * PI * c * c);
    let v = -a * ((1.0 / (2.0 * b.powf(1.5) * c.sqrt())) * y3_2(c / b, policy)? + zeta_terms)
        + PI / 48.0 * (1.0 / b + 1.0 / c)
        - v1(a, b, c, policy)?
        - (1.0 / (2.0 * b)) * y1(a / b, policy)?
        - (1.0 / (2.0 * c)) * y1(a / c, policy)?;
    Ok(v)
}

/// The temperature-independent high-temperature coefficient `F_1(a,b,c)`.
pub fn f1(geom: &BoxGeometry, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    let (g, _) = geom.canonical();
    let (a, b, c) = (g.a, g.b, g.c);
    let constants = ZETA4 * b * c / (4.0 * PI * PI * a * a)
        - a * a * (ZETA4 * c / (4.0 * PI * PI * b.powi(3)) + ZETA3 / (8.0 * PI * c * c))
        - (b * c).ln() / 4.0
        - ZETA2 / (4.0 * PI)
        - LN_2 / 2.0;
    let v = -(a * a / (b.powf(1.5) * c.sqrt())) * y3_2(c / b, policy)?
        + z2(a, b, c, policy)?
        + 0.5 * z1(a / b, policy)?
        + 0.5 * z1(a / c, policy)?
        + y1(c / a, policy)?
        - (2.0 * a) * v1(a, b, c, policy)?
        - (a / b) * y1(a / b, policy)?
        - (a / c) * y1(a / c, policy)?
        + (2.0 * a) * v1(c, b, a, policy)?
        + (c / (a * b).sqrt()) * y3_2(b / a, policy)?
        + constants;
    Ok(v)
}

/// The exponentially decaying remainder `F_2(a,b,c,T)`.
pub fn f2(geom: &BoxGeometry, temperature: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    require_positive("temperature", temperature)?;
    let (g, _) = geom.canonical();
    let (a, b, c) = (g.a, g.b, g.c);
    let t = 0.5 / temperature;
    let logs = 2.0 * z3(a, b, c, t, policy)? + z2(a, b, t, policy)? + z2(a, c, t, policy)?
        - 0.5 * z1(2.0 * temperature * b, policy)?
        - 0.5 * z1(2.0 * temperature * c, policy)?;
    let bessels = 2.0 * v1(c, b, t, policy)?
        + (2.0 * c * (2.0 * temperature.powi(3) / b).sqrt()) * y3_2(2.0 * b * temperature, policy)?
        + (2.0 * temperature) * y1(2.0 * c * temperature, policy)?;
    Ok(temperature * (logs - a * bessels))
}

/// Full finite-temperature decomposition.
pub fn em_energy_finite_t(geom: &BoxGeometry, thermal: &ThermalState, policy: &PrecisionPolicy) -> Result<EmResult> {
    let temperature = thermal.temperature;
    require_positive("temperature", temperature)?;
    let e0_ren = em_energy_t0(geom, policy)?;
    let f1 = f1(geom, policy)?;
    let f2 = f2(geom, temperature, policy)?;
    let log_term = -temperature * temperature.ln() / 2.0;
    let f_phys = temperature * f1 + f2 + log_term;
    let (alpha1, alpha2) = renorm_coefficients(geom);
    let delta_t_f0 = f_phys - e0_ren
        + blackbody_free_energy(geom, temperature)
        + alpha1 * temperature.powi(3)
        + alpha2 * temperature * temperature;
    Ok(EmResult {
        e0_ren,
        f1,
        f2,
        log_term,
        f_phys,
        delta_t_f0,
        renorm_coefficients: (alpha1, alpha2),
    })
}

/// Leading high-temperature behaviour `T·F_1(a,b,c)` of `F^phys + (T ln T)/2`.
pub fn em_high_t(geom: &BoxGeometry, temperature: f64, policy: &PrecisionPolicy) -> Result<SeriesValue> {
    require_positive("temperature", temperature)?;
    Ok(temperature * f1(geom, policy)?)
}
