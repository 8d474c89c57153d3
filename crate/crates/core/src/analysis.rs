//! Force-sign classification, critical curves and convergence profiles.
//!
//! Everything here is orchestration over [`crate::fermion`]: grid points are
//! evaluated concurrently and merged back in grid order, and every boundary is
//! located by plain bisection on a sign change.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};
use crate::fermion::{
    energy_finite_t, energy_t0, evaluate, force_finite_t, force_t0, parallel_plate, waveguide_finite_t,
    waveguide_finite_t_force_c, waveguide_t0, waveguide_t0_force_c, Axis, BoxGeometry, ThermalState,
};
use crate::series::PrecisionPolicy;

/// Forces below this magnitude carry no sign.
pub const DEAD_ZONE: f64 = 1e-9;
/// Default bisection tolerance in the geometric parameter.
pub const ROOT_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForceSign {
    Attractive,
    Repulsive,
    Indeterminate,
}

impl ForceSign {
    pub fn of(force: f64) -> Self {
        if force.abs() < DEAD_ZONE {
            ForceSign::Indeterminate
        } else if force < 0.0 {
            ForceSign::Attractive
        } else {
            ForceSign::Repulsive
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ForceSign::Attractive => "attractive",
            ForceSign::Repulsive => "repulsive",
            ForceSign::Indeterminate => "indeterminate",
        }
    }
}

/// Regions of the `b = 1` force diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// Repulsive along `a` only.
    I,
    /// Repulsive along `a` and `c`.
    II,
    /// Attractive along every axis.
    III,
    /// Repulsive along `c` only.
    IV,
}

impl Region {
    pub fn classify(signs: [ForceSign; 3]) -> Option<Region> {
        use ForceSign::*;
        match signs {
            [Repulsive, Attractive, Attractive] => Some(Region::I),
            [Repulsive, Attractive, Repulsive] => Some(Region::II),
            [Attractive, Attractive, Attractive] => Some(Region::III),
            [Attractive, Attractive, Repulsive] => Some(Region::IV),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Region::I => "I",
            Region::II => "II",
            Region::III => "III",
            Region::IV => "IV",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub geometry: BoxGeometry,
    pub temperature: f64,
    /// Forces along `a`, `b`, `c`; `None` when not evaluated.
    pub forces: [Option<f64>; 3],
    pub signs: [Option<ForceSign>; 3],
    pub region: Option<Region>,
}

/// Which parameter a crossing was found along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingDirection {
    Edge(Axis),
    /// `b = c` varied together.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCrossing {
    /// Force component that changes sign.
    pub force: Axis,
    pub direction: CrossingDirection,
    /// Geometry at the root.
    pub geometry: BoxGeometry,
    pub root: f64,
    pub bracket: (f64, f64),
}

/// Echo of the grid that produced a map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub temperature: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMap {
    pub grid: GridSpec,
    pub records: Vec<RegionRecord>,
    pub zero_crossings: Vec<ZeroCrossing>,
}

/// A bracketed root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub root: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Root {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }
}

/// Evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Bisection on `[lo, hi]` until the bracket is narrower than `tol`.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(Root { root: lo, lo, hi: lo });
    }
    if f_hi == 0.0 {
        return Ok(Root { root: hi, lo: hi, hi });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(CasimirError::Bracket { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(Root { root: mid, lo: mid, hi: mid });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(Root {
        root: 0.5 * (lo + hi),
        lo,
        hi,
    })
}

/// Samples `f` on `grid` and bisects the first sign change between nonzero
/// samples. Exact zeros are skipped: far from the walls they come from
/// underflow, so a function that vanishes on the whole grid has no root.
pub fn scan_and_bisect<F>(f: F, grid: &[f64], tol: f64) -> Result<Option<Root>>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut prev: Option<(f64, f64)> = None;
    for &x in grid {
        let v = f(x)?;
        if v == 0.0 {
            continue;
        }
        if let Some((px, pv)) = prev {
            if pv.signum() != v.signum() {
                return bisect(&f, px, x, tol).map(Some);
            }
        }
        prev = Some((x, v));
    }
    Ok(None)
}

fn box_force(geom: &BoxGeometry, thermal: &ThermalState, axis: Axis, policy: &PrecisionPolicy) -> Result<f64> {
    let v = if thermal.is_zero() {
        force_t0(geom, axis, policy)?
    } else {
        force_finite_t(geom, thermal, axis, policy)?
    };
    Ok(v.value)
}

fn record(geom: BoxGeometry, temperature: f64, forces: [Option<f64>; 3]) -> RegionRecord {
    let signs = forces.map(|f| f.map(ForceSign::of));
    let region = match signs {
        [Some(a), Some(b), Some(c)] => Region::classify([a, b, c]),
        _ => None,
    };
    RegionRecord {
        geometry: geom,
        temperature,
        forces,
        signs,
        region,
    }
}

/// Adjacent-point sign changes of `force` along each line of `records`,
/// located by bisection in the varying `edge`.
fn line_crossings(
    lines: &[Vec<RegionRecord>],
    force: Axis,
    direction: CrossingDirection,
    thermal: &ThermalState,
    policy: &PrecisionPolicy,
) -> Result<Vec<ZeroCrossing>> {
    let set_param = |g: &BoxGeometry, x: f64| -> Result<BoxGeometry> {
        match direction {
            CrossingDirection::Edge(axis) => g.with_edge(axis, x),
            CrossingDirection::Diagonal => BoxGeometry::new(g.a, x, x),
        }
    };
    let param = |g: &BoxGeometry| match direction {
        CrossingDirection::Edge(axis) => g.edge(axis),
        CrossingDirection::Diagonal => g.b,
    };
    let jobs: Vec<(BoxGeometry, f64, f64)> = lines
        .iter()
        .flat_map(|line| line.windows(2))
        .filter_map(|w| {
            let (f0, f1) = (w[0].forces[force.index()]?, w[1].forces[force.index()]?);
            let (s0, s1) = (ForceSign::of(f0), ForceSign::of(f1));
            let flips = s0 != s1 && s0 != ForceSign::Indeterminate && s1 != ForceSign::Indeterminate;
            flips.then(|| (w[0].geometry, param(&w[0].geometry), param(&w[1].geometry)))
        })
        .collect();
    jobs.par_iter()
        .map(|&(g, lo, hi)| {
            let r = bisect(|x| box_force(&set_param(&g, x)?, thermal, force, policy), lo, hi, ROOT_TOL)?;
            Ok(ZeroCrossing {
                force,
                direction,
                geometry: set_param(&g, r.root)?,
                root: r.root,
                bracket: (r.lo, r.hi),
            })
        })
        .collect()
}

/// Signs of all three forces on the `b = 1` grid `a × c`, with regions and the
/// crossings of `f_a` along `a` and of `f_c` along `c`.
pub fn classify_regions(
    a_values: &[f64],
    c_values: &[f64],
    thermal: &ThermalState,
    policy: &PrecisionPolicy,
) -> Result<RegionMap> {
    let points: Vec<(f64, f64)> = c_values
        .iter()
        .flat_map(|&c| a_values.iter().map(move |&a| (a, c)))
        .collect();
    let records: Vec<RegionRecord> = points
        .par_iter()
        .map(|&(a, c)| {
            let g = BoxGeometry::new(a, 1.0, c)?;
            let r = evaluate(&g, thermal, &Axis::ALL, policy)?;
            let forces = Axis::ALL.map(|ax| r.force(ax).map(|v| v.value));
            Ok(record(g, thermal.temperature, forces))
        })
        .collect::<Result<_>>()?;

    let by_c: Vec<Vec<RegionRecord>> = records.chunks(a_values.len().max(1)).map(|c| c.to_vec()).collect();
    let by_a: Vec<Vec<RegionRecord>> = (0..a_values.len())
        .map(|i| by_c.iter().map(|line| line[i]).collect())
        .collect();
    let mut zero_crossings = line_crossings(&by_c, Axis::A, CrossingDirection::Edge(Axis::A), thermal, policy)?;
    zero_crossings.extend(line_crossings(&by_a, Axis::C, CrossingDirection::Edge(Axis::C), thermal, policy)?);
    Ok(RegionMap {
        grid: GridSpec {
            a: a_values.to_vec(),
            b: vec![1.0],
            c: c_values.to_vec(),
            temperature: thermal.temperature,
        },
        records,
        zero_crossings,
    })
}

/// Sign field of `f_a` over `a × b × c`, with its crossings along `b` and,
/// when the `b` and `c` grids coincide, along the diagonal `b = c`.
pub fn zero_force_surface(
    a_values: &[f64],
    b_values: &[f64],
    c_values: &[f64],
    thermal: &ThermalState,
    policy: &PrecisionPolicy,
) -> Result<RegionMap> {
    let mut points = Vec::with_capacity(a_values.len() * b_values.len() * c_values.len());
    for &a in a_values {
        for &c in c_values {
            for &b in b_values {
                points.push((a, b, c));
            }
        }
    }
    let records: Vec<RegionRecord> = points
        .par_iter()
        .map(|&(a, b, c)| {
            let g = BoxGeometry::new(a, b, c)?;
            let f = box_force(&g, thermal, Axis::A, policy)?;
            Ok(record(g, thermal.temperature, [Some(f), None, None]))
        })
        .collect::<Result<_>>()?;

    let lines: Vec<Vec<RegionRecord>> = records.chunks(b_values.len().max(1)).map(|c| c.to_vec()).collect();
    let mut zero_crossings = line_crossings(&lines, Axis::A, CrossingDirection::Edge(Axis::B), thermal, policy)?;
    if b_values == c_values {
        let nb = b_values.len();
        let diagonals: Vec<Vec<RegionRecord>> = (0..a_values.len())
            .map(|ia| (0..nb).map(|i| records[ia * nb * nb + i * nb + i]).collect())
            .collect();
        zero_crossings.extend(line_crossings(&diagonals, Axis::A, CrossingDirection::Diagonal, thermal, policy)?);
    }
    Ok(RegionMap {
        grid: GridSpec {
            a: a_values.to_vec(),
            b: b_values.to_vec(),
            c: c_values.to_vec(),
            temperature: thermal.temperature,
        },
        records,
        zero_crossings,
    })
}

/// The cross-section ratio `c/b` at which the transverse force along `c` of
/// the zero-temperature waveguide with `b = 1` changes sign.
pub fn find_critical_aspect_t0(policy: &PrecisionPolicy) -> Result<Root> {
    critical_aspect_t0_at(1.0, policy)
}

/// [`find_critical_aspect_t0`] for a waveguide of short side `b`, returned as
/// the ratio `c/b`.
pub fn critical_aspect_t0_at(b: f64, policy: &PrecisionPolicy) -> Result<Root> {
    let r = bisect(
        |ratio| Ok(waveguide_t0_force_c(b, ratio * b, policy)?.value),
        1.05,
        1.5,
        ROOT_TOL,
    )?;
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CurveMode {
    /// Critical `c` of the waveguide versus its short side `b` at fixed `T`.
    CcrVsB { temperature: f64 },
    /// Critical `c` of the waveguide versus `T` at fixed short side `b`.
    CcrVsT { b: f64 },
    /// Critical `b` of the box with `a = c = 1` versus `T`.
    BcrVsT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    InteriorMaximum,
    InteriorMinimum,
    Mixed,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub parameter: f64,
    /// `None` when the scanned window holds no sign change.
    pub root: Option<f64>,
    pub bracket_width: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalCurve {
    pub mode: CurveMode,
    pub parameter_name: String,
    pub points: Vec<CurvePoint>,
    pub monotonicity: Monotonicity,
}

impl CriticalCurve {
    /// The sweep parameter at the largest root.
    pub fn argmax(&self) -> Option<f64> {
        self.points
            .iter()
            .filter_map(|p| p.root.map(|r| (p.parameter, r)))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .map(|(p, _)| p)
    }
}

/// Classifies a sequence of roots ordered by the sweep parameter.
pub fn monotonicity(roots: &[f64]) -> Monotonicity {
    if roots.len() < 2 {
        return Monotonicity::Undetermined;
    }
    let steps: Vec<f64> = roots.windows(2).map(|w| w[1] - w[0]).collect();
    if steps.iter().all(|&d| d > 0.0) {
        return Monotonicity::Increasing;
    }
    if steps.iter().all(|&d| d < 0.0) {
        return Monotonicity::Decreasing;
    }
    let turns = steps.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    match (turns, steps[0] > 0.0) {
        (1, true) => Monotonicity::InteriorMaximum,
        (1, false) => Monotonicity::InteriorMinimum,
        _ => Monotonicity::Mixed,
    }
}

fn waveguide_force_c(b: f64, c: f64, thermal: &ThermalState, policy: &PrecisionPolicy) -> Result<f64> {
    let v = if thermal.is_zero() {
        waveguide_t0_force_c(b, c, policy)?
    } else {
        waveguide_finite_t_force_c(b, c, thermal, policy)?
    };
    Ok(v.value)
}

/// Scan resolution used to find the first sign change before bisecting.
const CURVE_SCAN_POINTS: usize = 25;

/// Critical-curve extraction; sweep values are evaluated concurrently.
pub fn find_critical_curve(
    mode: CurveMode,
    sweep: &[f64],
    tol: f64,
    policy: &PrecisionPolicy,
) -> Result<CriticalCurve> {
    let point = |s: f64| -> Result<CurvePoint> {
        let root = match mode {
            CurveMode::CcrVsB { temperature } => {
                let th = ThermalState::new(temperature)?;
                let grid = linspace(s * 1.0001, s * 3.0, CURVE_SCAN_POINTS);
                scan_and_bisect(|c| waveguide_force_c(s, c, &th, policy), &grid, tol)?
            }
            CurveMode::CcrVsT { b } => {
                let th = ThermalState::new(s)?;
                let grid = linspace(b * 1.0001, b * 3.0, CURVE_SCAN_POINTS);
                scan_and_bisect(|c| waveguide_force_c(b, c, &th, policy), &grid, tol)?
            }
            CurveMode::BcrVsT => {
                let th = ThermalState::new(s)?;
                let grid = linspace(1.0, 4.0, 31);
                scan_and_bisect(
                    |b| box_force(&BoxGeometry::new(1.0, b, 1.0)?, &th, Axis::B, policy),
                    &grid,
                    tol,
                )?
            }
        };
        Ok(CurvePoint {
            parameter: s,
            root: root.map(|r| r.root),
            bracket_width: root.map(|r| r.hi - r.lo),
        })
    };
    let points: Vec<CurvePoint> = sweep.par_iter().map(|&s| point(s)).collect::<Result<_>>()?;
    let roots: Vec<f64> = points.iter().filter_map(|p| p.root).collect();
    let parameter_name = match mode {
        CurveMode::CcrVsB { .. } => "b",
        CurveMode::CcrVsT { .. } | CurveMode::BcrVsT => "T",
    };
    Ok(CriticalCurve {
        mode,
        parameter_name: parameter_name.to_string(),
        monotonicity: monotonicity(&roots),
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileFamily {
    /// Box `(L, 1, L)` against parallel plates at separation 1, per unit area.
    PlateEdge,
    /// Box `(L, 1, 1)` against the `1 × 1` waveguide, per unit length.
    WaveguideLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub edge: f64,
    pub energy_ratio: f64,
    pub force_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceProfile {
    pub family: ProfileFamily,
    pub temperature: f64,
    pub points: Vec<ProfilePoint>,
    /// Smallest sampled edge from which both ratios stay within 1% of one.
    pub converged_edge: Option<f64>,
}

pub const PROFILE_TOLERANCE: f64 = 0.01;

/// Energy and transverse force (along `b`) of growing boxes divided by their
/// limiting density times the growing length or area.
pub fn normalized_convergence_profile(
    family: ProfileFamily,
    thermal: &ThermalState,
    edges: &[f64],
    policy: &PrecisionPolicy,
) -> Result<ConvergenceProfile> {
    let (limit_energy, limit_force) = match family {
        ProfileFamily::PlateEdge => {
            let p = parallel_plate(1.0, thermal, policy)?;
            (p.energy.value, p.force.value)
        }
        ProfileFamily::WaveguideLength => {
            let w = if thermal.is_zero() {
                waveguide_t0(1.0, 1.0, policy)?
            } else {
                waveguide_finite_t(1.0, 1.0, thermal, policy)?
            };
            (w.energy.value, w.force_b.value)
        }
    };
    let points: Vec<ProfilePoint> = edges
        .par_iter()
        .map(|&l| {
            let (g, measure) = match family {
                ProfileFamily::PlateEdge => (BoxGeometry::new(l, 1.0, l)?, l * l),
                ProfileFamily::WaveguideLength => (BoxGeometry::new(l, 1.0, 1.0)?, l),
            };
            let energy = if thermal.is_zero() {
                energy_t0(&g, policy)?
            } else {
                energy_finite_t(&g, thermal, policy)?
            };
            let force = box_force(&g, thermal, Axis::B, policy)?;
            Ok(ProfilePoint {
                edge: l,
                energy_ratio: energy.value / (measure * limit_energy),
                force_ratio: force / (measure * limit_force),
            })
        })
        .collect::<Result<_>>()?;
    let within = |p: &ProfilePoint| {
        (p.energy_ratio - 1.0).abs() <= PROFILE_TOLERANCE && (p.force_ratio - 1.0).abs() <= PROFILE_TOLERANCE
    };
    let converged_edge = (0..points.len())
        .find(|&i| points[i..].iter().all(within))
        .map(|i| points[i].edge);
    Ok(ConvergenceProfile {
        family,
        temperature: thermal.temperature,
        points,
        converged_edge,
    })
}
