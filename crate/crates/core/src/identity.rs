//! Numerical verification of the Schlömilch-type lattice-sum identities.
//!
//! Each identity is checked by summing its left side directly, term by term,
//! and assembling its right side from the accelerated Bessel families of
//! [`crate::lattice`]. The direct sums only converge quickly when the decay
//! rates along every axis are not too small, so the fixed verification grid
//! keeps to tuples whose direct sums fit a bounded budget.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, CasimirError, Result};
use crate::lattice::{log_bose, q_constant, n_constant, v1, y0, y1, y3_2, z1, z2, z3};
use crate::quadrature::integrate_to_infinity;
use crate::series::{sum_axis, PrecisionPolicy, SeriesValue};
use crate::special::{k0, k_half, ZETA2, ZETA3, ZETA4};

/// Per-axis cap for the direct left-hand sums.
pub const LHS_MAX_INDEX: u64 = 100_000;
/// Relative tolerance for verification runs. The right sides of the
/// multi-series identities cancel O(1) terms, so the library default leaves
/// only about six digits on some tuples.
pub const VERIFY_REL_TOL: f64 = 1e-13;

/// Bumped whenever the grid generator or its admissibility rule changes.
pub const GRID_VERSION: u32 = 1;
const GRID_SEED: u64 = 0x5C81_0E11_C0DE_0001;
pub const GRID_RANGE: (f64, f64) = (0.3, 5.0);
/// Largest admissible number of direct left-hand terms in one identity.
const GRID_TERM_BUDGET: f64 = 4.0e6;
/// Smallest admissible leading left-hand term.
const GRID_MIN_LEADING: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    Schlomilch,
    OnePartition,
    OneSum,
    TwoSum,
    TwoPartition,
    ThreeSum,
    ThreePartition,
    ThreePartitionPlus,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 8] = [
        IdentityKind::Schlomilch,
        IdentityKind::OnePartition,
        IdentityKind::OneSum,
        IdentityKind::TwoSum,
        IdentityKind::TwoPartition,
        IdentityKind::ThreeSum,
        IdentityKind::ThreePartition,
        IdentityKind::ThreePartitionPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Schlomilch => "schlomilch",
            IdentityKind::OnePartition => "one_partition",
            IdentityKind::OneSum => "one_sum",
            IdentityKind::TwoSum => "two_sum",
            IdentityKind::TwoPartition => "two_partition",
            IdentityKind::ThreeSum => "three_sum",
            IdentityKind::ThreePartition => "three_partition",
            IdentityKind::ThreePartitionPlus => "three_partition_plus",
        }
    }

    fn arity(self) -> usize {
        match self {
            IdentityKind::Schlomilch | IdentityKind::OnePartition => 1,
            IdentityKind::TwoSum => 2,
            IdentityKind::OneSum
            | IdentityKind::TwoPartition
            | IdentityKind::ThreeSum => 3,
            IdentityKind::ThreePartition | IdentityKind::ThreePartitionPlus => 4,
        }
    }

    /// Builds the identity from positional parameters in declaration order.
    pub fn with_params(self, p: &[f64]) -> Result<Identity> {
        if p.len() != self.arity() {
            return Err(CasimirError::Domain(format!(
                "{} takes {} parameters, got {}",
                self.name(),
                self.arity(),
                p.len()
            )));
        }
        let id = match self {
            IdentityKind::Schlomilch => Identity::Schlomilch { alpha: p[0] },
            IdentityKind::OnePartition => Identity::OnePartition { alpha: p[0] },
            IdentityKind::OneSum => Identity::OneSum { theta: p[0], m: p[1], alpha: p[2] },
            IdentityKind::TwoSum => Identity::TwoSum { theta: p[0], sigma: p[1] },
            IdentityKind::TwoPartition => Identity::TwoPartition { a: p[0], b: p[1], alpha: p[2] },
            IdentityKind::ThreeSum => Identity::ThreeSum { theta: p[0], sigma: p[1], gamma: p[2] },
            IdentityKind::ThreePartition => Identity::ThreePartition { a: p[0], b: p[1], c: p[2], alpha: p[3] },
            IdentityKind::ThreePartitionPlus => Identity::ThreePartitionPlus { a: p[0], b: p[1], c: p[2], alpha: p[3] },
        };
        id.validate()?;
        Ok(id)
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = CasimirError;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_").to_lowercase();
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| CasimirError::Domain(format!("unknown identity '{s}'")))
    }
}

/// An identity together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "identity", rename_all = "snake_case")]
pub enum Identity {
    /// `αΣk/(e^{2αk}-1) + βΣk/(e^{2βk}-1) = (α+β)/24 - 1/4` with `αβ = π²`.
    Schlomilch { alpha: f64 },
    OnePartition { alpha: f64 },
    /// `m = 0` is accepted as the massless limit.
    OneSum { theta: f64, m: f64, alpha: f64 },
    TwoSum { theta: f64, sigma: f64 },
    TwoPartition { a: f64, b: f64, alpha: f64 },
    ThreeSum { theta: f64, sigma: f64, gamma: f64 },
    ThreePartition { a: f64, b: f64, c: f64, alpha: f64 },
    ThreePartitionPlus { a: f64, b: f64, c: f64, alpha: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub lhs: SeriesValue,
    pub rhs: SeriesValue,
    pub abs_diff: f64,
    pub digits_agreed: i32,
    /// Terms consumed by each sub-series, flagged when an axis was truncated.
    pub diagnostics: Vec<String>,
}

/// `floor(-log10(|Δ| / max(|lhs|, 1e-300)))`, capped at 16.
pub fn digits_agreed(lhs: f64, abs_diff: f64) -> i32 {
    if abs_diff == 0.0 {
        return 16;
    }
    let rel = abs_diff / lhs.abs().max(1e-300);
    (-rel.log10()).floor().min(16.0) as i32
}

struct Tally(Vec<String>);

impl Tally {
    fn note(&mut self, label: &str, r: Result<SeriesValue>) -> Result<SeriesValue> {
        let v = r?;
        let flag = if v.truncated { " (truncated)" } else { "" };
        self.0.push(format!("{label}: {} terms{flag}", v.terms_used));
        Ok(v)
    }
}

impl Identity {
    pub fn kind(&self) -> IdentityKind {
        match self {
            Identity::Schlomilch { .. } => IdentityKind::Schlomilch,
            Identity::OnePartition { .. } => IdentityKind::OnePartition,
            Identity::OneSum { .. } => IdentityKind::OneSum,
            Identity::TwoSum { .. } => IdentityKind::TwoSum,
            Identity::TwoPartition { .. } => IdentityKind::TwoPartition,
            Identity::ThreeSum { .. } => IdentityKind::ThreeSum,
            Identity::ThreePartition { .. } => IdentityKind::ThreePartition,
            Identity::ThreePartitionPlus { .. } => IdentityKind::ThreePartitionPlus,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Identity::Schlomilch { alpha } | Identity::OnePartition { alpha } => vec![alpha],
            Identity::OneSum { theta, m, alpha } => vec![theta, m, alpha],
            Identity::TwoSum { theta, sigma } => vec![theta, sigma],
            Identity::TwoPartition { a, b, alpha } => vec![a, b, alpha],
            Identity::ThreeSum { theta, sigma, gamma } => vec![theta, sigma, gamma],
            Identity::ThreePartition { a, b, c, alpha } | Identity::ThreePartitionPlus { a, b, c, alpha } => {
                vec![a, b, c, alpha]
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Identity::OneSum { theta, m, alpha } = *self {
            require_positive("theta", theta)?;
            require_positive("alpha", alpha)?;
            if !(m >= 0.0 && m.is_finite()) {
                return Err(CasimirError::Domain(format!("m must be finite and non-negative, got {m}")));
            }
            return Ok(());
        }
        self.params().iter().try_for_each(|&v| require_positive("identity parameter", v))
    }

    /// Exponential decay rate of the left-hand summand along each axis.
    fn lhs_rates(&self) -> Vec<f64> {
        match *self {
            Identity::Schlomilch { alpha } => vec![2.0 * alpha.min(PI * PI / alpha)],
            Identity::OnePartition { alpha } => vec![alpha],
            Identity::OneSum { theta, alpha, .. } => vec![alpha * theta],
            Identity::TwoSum { theta, sigma } => vec![theta, sigma],
            Identity::TwoPartition { a, b, alpha } => vec![alpha / a, alpha / b],
            Identity::ThreeSum { theta, sigma, gamma } => vec![theta, sigma, gamma],
            Identity::ThreePartition { a, b, c, alpha } | Identity::ThreePartitionPlus { a, b, c, alpha } => {
                vec![alpha / a, alpha / b, alpha / c]
            }
        }
    }

    /// Magnitude of the first left-hand term.
    fn lhs_leading(&self) -> f64 {
        let bose = |w: f64| w / w.exp_m1();
        match *self {
            Identity::Schlomilch { alpha } => alpha / (2.0 * alpha).exp_m1(),
            Identity::OnePartition { alpha } => -log_bose(alpha),
            Identity::OneSum { theta, m, alpha } => {
                let w = (theta * theta + m * m).sqrt();
                w / (alpha * w).exp_m1()
            }
            Identity::TwoSum { theta, sigma } => bose((theta * theta + sigma * sigma).sqrt()),
            Identity::TwoPartition { a, b, alpha } => -log_bose(alpha * (1.0 / (a * a) + 1.0 / (b * b)).sqrt()),
            Identity::ThreeSum { theta, sigma, gamma } => {
                bose((theta * theta + sigma * sigma + gamma * gamma).sqrt())
            }
            Identity::ThreePartition { a, b, c, alpha } | Identity::ThreePartitionPlus { a, b, c, alpha } => {
                -log_bose(alpha * (1.0 / (a * a) + 1.0 / (b * b) + 1.0 / (c * c)).sqrt())
            }
        }
    }

    /// Whether the direct left-hand sum is cheap and not swamped by the
    /// right-hand constants.
    pub fn admissible(&self) -> bool {
        const DIGITS: f64 = 37.0;
        let work: f64 = self.lhs_rates().iter().map(|r| (DIGITS / r).max(1.0)).product();
        let per_axis_ok = self.lhs_rates().iter().all(|r| DIGITS / r < LHS_MAX_INDEX as f64);
        per_axis_ok && work <= GRID_TERM_BUDGET && self.lhs_leading() >= GRID_MIN_LEADING
    }

    pub fn verify(&self, policy: &PrecisionPolicy) -> Result<IdentityReport> {
        self.validate()?;
        policy.validate()?;
        let lhs_policy = policy.with_max_index(policy.max_index.max(LHS_MAX_INDEX))?;
        let mut tally = Tally(Vec::new());
        let (lhs, rhs) = match *self {
            Identity::Schlomilch { alpha } => schlomilch(alpha, &lhs_policy, &mut tally)?,
            Identity::OnePartition { alpha } => one_partition(alpha, &lhs_policy, &mut tally)?,
            Identity::OneSum { theta, m, alpha } => one_sum(theta, m, alpha, policy, &lhs_policy, &mut tally)?,
            Identity::TwoSum { theta, sigma } => two_sum(theta, sigma, policy, &lhs_policy, &mut tally)?,
            Identity::TwoPartition { a, b, alpha } => two_partition(a, b, alpha, policy, &lhs_policy, &mut tally)?,
            Identity::ThreeSum { theta, sigma, gamma } => three_sum(theta, sigma, gamma, policy, &lhs_policy, &mut tally)?,
            Identity::ThreePartition { a, b, c, alpha } => {
                three_partition(a, b, c, alpha, policy, &lhs_policy, &mut tally)?
            }
            Identity::ThreePartitionPlus { a, b, c, alpha } => {
                three_partition_plus(a, b, c, alpha, policy, &lhs_policy, &mut tally)?
            }
        };
        let abs_diff = (lhs.value - rhs.value).abs();
        Ok(IdentityReport {
            identity: *self,
            lhs,
            rhs,
            abs_diff,
            digits_agreed: digits_agreed(lhs.value, abs_diff),
            diagnostics: tally.0,
        })
    }
}

pub fn verify_schlomilch(alpha: f64, policy: &PrecisionPolicy) -> Result<IdentityReport> {
    Identity::Schlomilch { alpha }.verify(policy)
}

pub fn verify_one_sum(theta: f64, m: f64, alpha: f64, policy: &PrecisionPolicy) -> Result<IdentityReport> {
    Identity::OneSum { theta, m, alpha }.verify(policy)
}

pub fn verify_multi_series(kind: IdentityKind, params: &[f64], policy: &PrecisionPolicy) -> Result<IdentityReport> {
    kind.with_params(params)?.verify(policy)
}

/// The fixed, versioned verification grid: `count` admissible tuples drawn
/// log-uniformly from [`GRID_RANGE`] with a per-identity seed.
pub fn verification_grid(kind: IdentityKind, count: usize) -> Vec<Identity> {
    let seed = GRID_SEED ^ ((GRID_VERSION as u64) << 32) ^ (kind as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (GRID_RANGE.0.ln(), GRID_RANGE.1.ln());
    let mut out = Vec::with_capacity(count);
    let mut params = vec![0.0; kind.arity()];
    // Rejection sampling; the cap only matters if the admissibility rule
    // is tightened so far that nothing passes.
    for _ in 0..count * 1000 {
        if out.len() == count {
            break;
        }
        for p in params.iter_mut() {
            *p = rng.random_range(lo..hi).exp();
        }
        let id = kind.with_params(&params).expect("grid parameters are positive");
        if id.admissible() {
            out.push(id);
        }
    }
    out
}

type Sides = (SeriesValue, SeriesValue);

fn bose_weight(w: f64) -> f64 {
    w / w.exp_m1()
}

fn schlomilch(alpha: f64, lp: &PrecisionPolicy, t: &mut Tally) -> Result<Sides> {
    let beta = PI * PI / alpha;
    let s = |x: f64, t: &mut Tally, label: &str| {
        let v = sum_axis(lp, 1, |k| {
            let k = k as f64;
            SeriesValue::term(k / (2.0 * x * k).exp_m1())
        });
        t.note(label, v.check(label, lp))
    };
    let lhs = alpha * s(alpha, t, "sum at alpha")? + beta * s(beta, t, "sum at beta")?;
    let rhs = SeriesValue::exact((alpha + beta) / 24.0 - 0.25);
    Ok((lhs, rhs))
}

fn one_partition(alpha: f64, lp: &PrecisionPolicy, t: &mut Tally) -> Result<Sides> {
    let log_sum = |rate: f64, t: &mut Tally, label: &str| {
        let v = sum_axis(lp, 1, |k| SeriesValue::term(log_bose(rate * k as f64)));
        t.note(label, v.check(label, lp))
    };
    let lhs = log_sum(alpha, t, "direct log sum")?;
    let rhs = log_sum(4.0 * PI * PI / alpha, t, "dual log sum")? - alpha.ln() / 2.0 - PI * PI / (6.0 * alpha)
        + alpha / 24.0
        + (2.0 * PI).ln() / 2.0;
    Ok((lhs, rhs))
}

fn one_sum(theta: f64, m: f64, alpha: f64, p: &PrecisionPolicy, lp: &PrecisionPolicy, t: &mut Tally) -> Result<Sides> {
    let lhs = sum_axis(lp, 1, |n| {
        let w = (theta * theta * (n * n) as f64 + m * m).sqrt();
        SeriesValue::term(w / (alpha * w).exp_m1())
    });
    let lhs = t.note("direct sum", lhs.check("one-sum direct sum", lp))?;

    let dual = sum_axis(p, 1, |n| {
        let n = n as f64;
        let w = (4.0 * PI * PI * n * n / (alpha * alpha) + m * m).sqrt();
        SeriesValue::term(n * n / (w * (2.0 * PI / theta * w).exp_m1()))
    });
    let dual = t.note("dual sum", dual.check("one-sum dual sum", p))?;

    let zero_mode = if m == 0.0 { 1.0 / alpha } else { m / (alpha * m).exp_m1() };
    let quad_tol = 0.1 * p.rel_tol;
    let i1 = integrate_to_infinity(
        |x| {
            let w = (x * x + m * m).sqrt();
            if w == 0.0 {
                1.0 / alpha
            } else {
                w / (alpha * w).exp_m1()
            }
        },
        0.0,
        quad_tol,
        1e-300,
    )?;
    // y = m + s² removes the square-root edge at y = m.
    let i2 = integrate_to_infinity(
        |s| {
            let y = m + s * s;
            let e = (2.0 * PI / theta * y).exp_m1();
            if e == 0.0 {
                theta / PI * (2.0 * m).sqrt()
            } else {
                2.0 * s * s * (2.0 * m + s * s).sqrt() / e
            }
        },
        0.0,
        quad_tol,
        1e-300,
    )?;
    t.0.push(format!("integrals: {} + {} subintervals", i1.intervals, i2.intervals));
    let integrals = SeriesValue {
        value: (i1.value + i2.value) / theta,
        error_bound: (i1.error + i2.error) / theta,
        terms_used: 0,
        truncated: false,
    };
    let rhs = (-8.0 * PI.powi(3) / (theta * alpha.powi(3))) * dual - 0.5 * zero_mode + integrals;
    Ok((lhs, rhs))
}

fn two_sum(theta: f64, sigma: f64, p: &PrecisionPolicy, lp: &PrecisionPolicy, t: &mut Tally) -> Result<Sides> {
    let lhs = sum_axis(lp, 1, |m| {
        let sm = sigma * m as f64;
        sum_axis(lp, 1, |n| {
            let tn = theta * n as f64;
            SeriesValue::term(bose_weight((tn * tn + sm * sm).sqrt()))
        })
    });
    let lhs = t.note("direct double sum", lhs.check("two-sum direct sum", lp))?;

    let dual = sum_axis(p, 1, |m| {
        let sm = sigma * m as f64;
        sum_axis(p, 1, |n| {
            let n = n as f64;
            let w = (4.0 * PI * PI * n * n + sm * sm).sqrt();
            SeriesValue::term(n * n / (w * (2.0 * PI / theta * w).exp_m1()))
        })
    });
    let dual = t.note("dual double sum", dual.check("two-sum dual sum", p))?;
    let single = sum_axis(p, 1, |m| {
        let m = m as f64;
        SeriesValue::term(m / (sigma * m).exp_m1())
    });
    let single = t.note("zero-mode sum", single.check("two-sum zero-mode sum", p))?;
    let y0v = t.note("Y0(2pi/sigma)", y0(2.0 * PI / sigma, p))?;
    let y1v = t.note("Y1(sigma/theta)", y1(sigma / theta, p))?;

    let bracket = (-8.0 * PI.powi(3) / sigma) * y0v - ZETA2 / 2.0 + PI * ZETA3 / sigma
        + ZETA3 * sigma * sigma / (16.0 * PI * PI);
    let rhs = (-8.0 * PI.powi(3) / theta) * dual - (sigma / 2.0) * single
        + (1.0 / theta) * bracket
        + (sigma / (2.0 * PI)) * y1v;
    Ok((lhs, rhs))
}

fn log_double(x: f64, y: f64, alpha: f64, lp: &PrecisionPolicy) -> SeriesValue {
    sum_axis(lp, 1, |m| {
        let my = m as f64 / y;
        sum_axis(lp, 1, |n| {
            let nx = n as f64 / x;
            SeriesValue::term(log_bose(alpha * (nx * nx + my * my).sqrt()))
        })
    })
}

fn two_partition(a: f64, b: f64, alpha: f64, p: &PrecisionPolicy, lp: &PrecisionPolicy, t: &mut Tally) -> Result<Sides> {
    let lhs = t.note("direct double log sum", log_double(a, b, alpha, lp).check("two-partition direct sum", lp))?;
    let x = alpha / (2.0 * PI);
    let rhs = t.note("Z2(a,b,alpha/2pi)", z2(a, b, x, p))?
        - 0.5 * t.note("Z1(alpha/2pi b)", z1(x / b, p))?
        + a * (ZETA2 / (2.0 * alpha) - PI * ZETA3 * b / (2.0 * alpha * alpha) + ZETA3 * alpha / (16.0 * PI * PI * b * b))
        - (2.0 * PI * a / alpha) * t.note("Y1(2pi b/alpha)", y1(2.0 * PI * b / alpha, p))?
        + (alpha / (2.0 * PI * b)) * t.note("Y1(a/b)", y1(a / b, p))?
        + t.note("Q(a,b)", q_constant(a, b, p))?;
    Ok((lhs, rhs))
}

fn three_sum(theta: f64, sigma: f64, gamma: f64, p: &PrecisionPolicy, lp: &PrecisionPolicy, t: &mut Tally) -> Result<Sides> {
    let lhs = sum_axis(lp, 1, |j| {
        let gj = gamma * j as f64;
        sum_axis(lp, 1, |m| {
            let sm = sigma * m as f64;
            let base = gj * gj + sm * sm;
            sum_axis(lp, 1, |n| {
                let tn = theta * n as f64;
                SeriesValue::term(bose_weight((base + tn * tn).sqrt()))
            })
        })
    });
    let lhs = t.note("direct triple sum", lhs.check("three-sum direct sum", lp))?;

    let dual = sum_axis(p, 1, |j| {
        let gj = gamma * j as f64;
        sum_axis(p, 1, |m| {
            let sm = sigma * m as f64;
            let base = gj * gj + sm * sm;
            sum_axis(p, 1, |k| {
                let k = k as f64;
                let w = (4.0 * PI * PI * k * k + base).sqrt();
                SeriesValue::term(k * k / (w * (2.0 * PI / theta * w).exp_m1()))
            })
        })
    });
    let dual = t.note("dual triple sum", dual.check("three-sum dual sum", p))?;

    let plane = sum_axis(p, 1, |j| {
        let gj = gamma * j as f64;
        sum_axis(p, 1, |m| {
            let sm = sigma * m as f64;
            SeriesValue::term(0.5 * bose_weight((gj * gj + sm * sm).sqrt()))
        })
    });
    let plane = t.note("zero-mode double sum", plane.check("three-sum zero-mode sum", p))?;

    // All three indices start at 1.
    let k0_sum = sum_axis(p, 1, |k| {
        let k = k as f64;
        let shift = 4.0 * k * k * PI * PI / (sigma * sigma);
        sum_axis(p, 1, |m| {
            let m = m as f64;
            let r = (m * m + shift).sqrt();
            sum_axis(p, 1, |n| {
                SeriesValue::term(k * k * k0(2.0 * PI * sigma * n as f64 / gamma * r))
            })
        })
    });
    let k0_sum = t.note("triple K0 sum", k0_sum.check("three-sum K0 sum", p))?;

    let khalf_sum = sum_axis(p, 1, |k| {
        let k = k as f64;
        sum_axis(p, 1, |n| {
            let n = n as f64;
            SeriesValue::term((k.powi(5) / n).sqrt() * k_half(0, 4.0 * PI * PI * k * n / sigma))
        })
    });
    let khalf_sum = t.note("double K1/2 sum", khalf_sum.check("three-sum K1/2 sum", p))?;

    let y0v = t.note("Y0(2pi/sigma)", y0(2.0 * PI / sigma, p))?;
    let y32v = t.note("Y3/2(sigma/gamma)", y3_2(sigma / gamma, p))?;
    let v1v = t.note("V1(1/theta,1/sigma,1/gamma)", v1(1.0 / theta, 1.0 / sigma, 1.0 / gamma, p))?;

    let first = (-8.0 * PI.powi(3) / gamma) * k0_sum;
    let second = (4.0 * PI.powi(3) / sigma) * y0v + ZETA2 / 4.0 - PI * ZETA3 / (2.0 * sigma)
        - ZETA3 * sigma * sigma / (32.0 * PI * PI);
    let third = (1.0 / gamma)
        * ((-4.0 * PI.powi(4) * (2.0 / (PI * sigma)).sqrt()) * khalf_sum - PI * ZETA3 / 2.0
            + 3.0 * PI * ZETA4 / sigma
            + ZETA4 * sigma.powi(3) / (16.0 * PI.powi(3)));
    let fourth = (gamma.sqrt() * sigma.powf(1.5) / (4.0 * PI)) * y32v;
    let rhs = (-8.0 * PI.powi(3) / theta) * dual - plane
        + (1.0 / theta) * (first + second + third + fourth)
        + (1.0 / (2.0 * PI)) * v1v;
    Ok((lhs, rhs))
}

fn log_triple(a: f64, b: f64, c: f64, alpha: f64, plus: bool, lp: &PrecisionPolicy) -> SeriesValue {
    sum_axis(lp, 1, |j| {
        let jc = j as f64 / c;
        sum_axis(lp, 1, |m| {
            let mb = m as f64 / b;
            let base = jc * jc + mb * mb;
            sum_axis(lp, 1, |n| {
                let na = n as f64 / a;
                let e = (-alpha * (base + na * na).sqrt()).exp();
                SeriesValue::term(if plus { e.ln_1p() } else { (-e).ln_1p() })
            })
        })
    })
}

fn three_partition(
    a: f64,
    b: f64,
    c: f64,
    alpha: f64,
    p: &PrecisionPolicy,
    lp: &PrecisionPolicy,
    t: &mut Tally,
) -> Result<Sides> {
    let lhs = log_triple(a, b, c, alpha, false, lp);
    let lhs = t.note("direct triple log sum", lhs.check("three-partition direct sum", lp))?;
    let x = alpha / (2.0 * PI);
    let y32_long = t.note("Y3/2(2pi b/alpha)", y3_2(2.0 * PI * b / alpha, p))?;
    let a_bracket = -t.note("V1(c,b,alpha/2pi)", v1(c, b, x, p))?
        + (-ZETA2 / (4.0 * alpha) + PI * ZETA3 * b / (4.0 * alpha * alpha) - ZETA3 * alpha / (32.0 * PI * PI * b * b))
        + (PI / alpha) * t.note("Y1(2pi b/alpha)", y1(2.0 * PI * b / alpha, p))?
        + c * (PI * ZETA3 / (4.0 * alpha * alpha) - PI * ZETA4 * b / alpha.powi(3) + ZETA4 * alpha / (16.0 * PI.powi(3) * b.powi(3)))
        - (c * PI * (2.0 * PI / (b * alpha.powi(3))).sqrt()) * y32_long
        + (alpha / (4.0 * PI * c.sqrt() * b.powf(1.5))) * t.note("Y3/2(c/b)", y3_2(c / b, p))?;
    let rhs = t.note("Z3(a,b,c,alpha/2pi)", z3(a, b, c, x, p))?
        - 0.5 * t.note("Z2(alpha/2pi,b,c)", z2(x, b, c, p))?
        + a * a_bracket
        + (alpha / (2.0 * PI)) * t.note("V1(a,b,c)", v1(a, b, c, p))?
        + t.note("N(a,b,c)", n_constant(a, b, c, p))?;
    Ok((lhs, rhs))
}

fn three_partition_plus(
    a: f64,
    b: f64,
    c: f64,
    alpha: f64,
    p: &PrecisionPolicy,
    lp: &PrecisionPolicy,
    t: &mut Tally,
) -> Result<Sides> {
    let lhs = log_triple(a, b, c, alpha, true, lp);
    let lhs = t.note("direct triple log sum", lhs.check("three-partition-plus direct sum", lp))?;
    let (x1, x2) = (alpha / (2.0 * PI), alpha / PI);
    let inner = ZETA4 * a * c / (16.0 * PI.powi(3) * b.powi(3))
        + (a / (4.0 * PI * b.powf(1.5) * c.sqrt())) * t.note("Y3/2(c/b)", y3_2(c / b, p))?
        + (1.0 / (2.0 * PI)) * t.note("V1(a,b,c)", v1(a, b, c, p))?;
    let rhs = 7.0 * PI * ZETA4 * a * b * c / (8.0 * alpha.powi(3)) + alpha * inner
        + t.note("Z3(a,b,c,alpha/pi)", z3(a, b, c, x2, p))?
        - t.note("Z3(a,b,c,alpha/2pi)", z3(a, b, c, x1, p))?
        + a * t.note("V1(c,b,alpha/2pi)", v1(c, b, x1, p))?
        - a * t.note("V1(c,b,alpha/pi)", v1(c, b, x2, p))?
        + (a * c * PI * (2.0 * PI / (b * alpha.powi(3))).sqrt())
            * t.note("Y3/2(2pi b/alpha)", y3_2(2.0 * PI * b / alpha, p))?
        - (a * c * PI / 2.0 * (PI / (b * alpha.powi(3))).sqrt()) * t.note("Y3/2(pi b/alpha)", y3_2(PI * b / alpha, p))?
        + ZETA2 * a / (8.0 * alpha)
        - 3.0 * PI * ZETA3 * a * b / (16.0 * alpha * alpha)
        - 3.0 * PI * ZETA3 * a * c / (16.0 * alpha * alpha)
        - ZETA3 * a * alpha / (32.0 * PI * PI * b * b)
        + 0.5 * t.note("Z2(alpha/2pi,b,c)", z2(x1, b, c, p))?
        - 0.5 * t.note("Z2(alpha/pi,b,c)", z2(x2, b, c, p))?
        + (a * PI / (2.0 * alpha)) * t.note("Y1(pi b/alpha)", y1(PI * b / alpha, p))?
        - (a * PI / alpha) * t.note("Y1(2pi b/alpha)", y1(2.0 * PI * b / alpha, p))?;
    Ok((lhs, rhs))
}
