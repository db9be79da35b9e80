//! Circular convolution with a smooth compactly supported bump.

use alloc::vec::Vec;

use super::{BoundaryDatum, Representation, StepFunction};
use crate::math::{self, TAU};
use crate::{Error, Result};

const CDF_INTERVALS: usize = 8192;
const QUADRATURE_NODES: usize = 256;
const MIN_SAMPLES: usize = 4096;

/// Normalized cumulative distribution of `exp(−1/(1−x²))` on `[−1, 1]`.
struct BumpCdf {
    table: Vec<f64>,
}

impl BumpCdf {
    fn new() -> Self {
        let h = 2.0 / CDF_INTERVALS as f64;
        let density = |x: f64| {
            let s = 1.0 - x * x;
            if s <= 0.0 {
                0.0
            } else {
                math::exp(-1.0 / s)
            }
        };
        let mut table = Vec::with_capacity(CDF_INTERVALS + 1);
        table.push(0.0);
        let mut acc = 0.0;
        for i in 0..CDF_INTERVALS {
            let a = -1.0 + h * i as f64;
            // trapezoid is spectrally accurate for this flat-ended density
            acc += 0.5 * h * (density(a) + density(a + h));
            table.push(acc);
        }
        for v in &mut table {
            *v /= acc;
        }
        BumpCdf { table }
    }

    fn eval(&self, x: f64) -> f64 {
        if x <= -1.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        let s = (x + 1.0) * 0.5 * CDF_INTERVALS as f64;
        let i = (math::floor(s) as usize).min(CDF_INTERVALS - 1);
        let w = s - i as f64;
        self.table[i] + (self.table[i + 1] - self.table[i]) * w
    }
}

/// Convolves `f` with a bump of half-width `ε` and samples the result on
/// `max(4096, ⌈16π/ε⌉)` uniform points.
///
/// Step functions are convolved exactly (each jump becomes a scaled copy of the
/// kernel's distribution function); other data use a kernel-weighted quadrature
/// whose weights sum to one, so constants are reproduced exactly.
pub fn mollify(f: &BoundaryDatum, eps: f64) -> Result<BoundaryDatum> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("mollification width {eps} must be positive")));
    }
    let n = MIN_SAMPLES.max(math::ceil(8.0 * TAU / eps) as usize);
    let cdf = BumpCdf::new();
    let h = TAU / n as f64;
    let values: Vec<f64> = match f.representation() {
        Representation::PiecewiseConstant(step) => {
            (0..n).map(|i| convolve_step(step, &cdf, eps, h * i as f64)).collect()
        }
        _ => {
            let weights: Vec<(f64, f64)> = (0..QUADRATURE_NODES)
                .map(|j| {
                    let a = -1.0 + 2.0 * j as f64 / QUADRATURE_NODES as f64;
                    let b = -1.0 + 2.0 * (j + 1) as f64 / QUADRATURE_NODES as f64;
                    (0.5 * (a + b) * eps, cdf.eval(b) - cdf.eval(a))
                })
                .collect();
            (0..n)
                .map(|i| {
                    let theta = h * i as f64;
                    weights.iter().map(|&(s, w)| w * f.eval(theta - s)).sum()
                })
                .collect()
        }
    };
    BoundaryDatum::sampled(values)
}

fn convolve_step(step: &StepFunction, cdf: &BumpCdf, eps: f64, theta: f64) -> f64 {
    let breaks = step.breaks();
    if breaks.is_empty() {
        return step.eval(theta);
    }
    let values = step.values();
    let m = breaks.len();
    let lo = theta - eps;
    let hi = theta + eps;
    let mut acc = step.eval(lo);
    // jump at breaks[i] is values[i] − values[i−1]; visit every periodic copy in (lo, hi]
    let k_min = math::floor(lo / TAU) as i64;
    let k_max = math::floor(hi / TAU) as i64;
    for k in k_min..=k_max {
        let shift = TAU * k as f64;
        let start = breaks.partition_point(|&b| b + shift <= lo);
        for i in start..m {
            let phi = breaks[i] + shift;
            if phi > hi {
                break;
            }
            let jump = values[i] - values[(i + m - 1) % m];
            acc += jump * cdf.eval((theta - phi) / eps);
        }
    }
    acc
}
