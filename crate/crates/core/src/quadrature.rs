//! Globally adaptive 15-point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{CasimirError, Result};

// Kronrod abscissae (positive half, descending) and weights; the Gauss
// 7-point rule uses every second abscissa starting at index 1.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over the finite interval `[lo, hi]` to
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F>(f: F, lo: f64, hi: f64, rel_tol: f64, abs_tol: f64) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    const MAX_INTERVALS: usize = 2000;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(CasimirError::Domain(format!(
            "invalid integration interval [{lo}, {hi}]"
        )));
    }
    let first = kronrod(&f, lo, hi);
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::from([first]);
    while error > abs_tol.max(rel_tol * value.abs()) {
        if !error.is_finite() || !value.is_finite() {
            return Err(CasimirError::Quadrature(format!(
                "non-finite integrand on [{lo}, {hi}]"
            )));
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(CasimirError::Quadrature(format!(
                "no convergence after {MAX_INTERVALS} subintervals: value {value:e}, error {error:e}"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = kronrod(&f, worst.lo, mid);
        let right = kronrod(&f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Recompute from the segments to shed accumulated rounding in the updates.
    let value = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    Ok(Quadrature {
        value,
        error,
        intervals: heap.len(),
    })
}

/// Integrates `f` over `[lo, ∞)` via `x = lo + t/(1-t)`.
pub fn integrate_to_infinity<F>(f: F, lo: f64, rel_tol: f64, abs_tol: f64) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    let mapped = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let s = 1.0 - t;
        let x = lo + t / s;
        let v = f(x) / (s * s);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(mapped, 0.0, 1.0, rel_tol, abs_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x.powi(6) - 3.0 * x, 0.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((q.value - (128.0 / 7.0 - 6.0)).abs() < 1e-13);
        assert_eq!(q.intervals, 1);
    }

    #[test]
    fn bose_integral() {
        // ∫₀^∞ x³/(eˣ-1) dx = π⁴/15
        let q = integrate_to_infinity(|x| x.powi(3) / x.exp_m1(), 0.0, 1e-13, 0.0).unwrap();
        assert!((q.value / (PI.powi(4) / 15.0) - 1.0).abs() < 1e-12, "{}", q.value);
    }

    #[test]
    fn peaked_integrand_subdivides() {
        let q = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12, 0.0).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((q.value / exact - 1.0).abs() < 1e-11);
        assert!(q.intervals > 1);
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(integrate(|x| x, 1.0, 0.0, 1e-10, 0.0).is_err());
        assert!(integrate(|x| x, 0.0, f64::INFINITY, 1e-10, 0.0).is_err());
    }
}
