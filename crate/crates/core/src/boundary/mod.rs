//! Boundary data of bounded variation on `∂Ω`, parametrized by `θ ∈ [0, 2π)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::math::{self, TAU};
use crate::{Error, Result};

mod cantor;
mod mollify;

pub use cantor::{
    cantor_g, cantor_inequality_check, cantor_interval_length, cantor_interval_length_recurrence, cantor_stage_datum,
    cantor_stage_intervals, cantor_stage_measure, trapezoid_comparison, verify_fat_variant, CantorVariant,
    InequalityCheck, TrapezoidCheck, DEFAULT_FAT_RHO, MAX_CANTOR_STAGE,
};
pub use mollify::mollify;

/// Samples used for analytic data unless configured otherwise.
pub const DEFAULT_RESOLUTION: usize = 4096;

/// Sampled slope below which a level is treated as near-critical.
pub const MIN_CROSSING_SLOPE: f64 = 1e-6;

/// Bisection tolerance on `θ` for analytic crossings.
pub const CROSSING_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `f` rises above the level when moving counterclockwise.
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub theta: f64,
    pub direction: Direction,
}

/// Boundary points where `f` crosses level `t`, in increasing `θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossingSet {
    pub level: f64,
    pub crossings: Vec<Crossing>,
}

impl CrossingSet {
    pub fn new(level: f64, crossings: Vec<Crossing>) -> Self {
        CrossingSet { level, crossings }
    }

    /// Crossings at the given angles with directions alternating from `first`.
    pub fn alternating(level: f64, thetas: &[f64], first: Direction) -> Self {
        let crossings = thetas
            .iter()
            .enumerate()
            .map(|(i, &theta)| Crossing {
                theta,
                direction: if (i % 2 == 0) == (first == Direction::Up) { Direction::Up } else { Direction::Down },
            })
            .collect();
        CrossingSet { level, crossings }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Checks even cardinality, increasing angles and cyclic alternation.
    pub fn validate(&self) -> Result<()> {
        let n = self.crossings.len();
        if n % 2 != 0 {
            return Err(Error::MalformedCrossingSet(format!("odd crossing count {n}")));
        }
        for i in 0..n {
            let a = &self.crossings[i];
            let b = &self.crossings[(i + 1) % n];
            if a.direction == b.direction {
                return Err(Error::MalformedCrossingSet(format!("directions do not alternate at index {i}")));
            }
            if i + 1 < n && !(a.theta < b.theta) {
                return Err(Error::MalformedCrossingSet(format!("angles not increasing at index {i}")));
            }
        }
        if let (Some(first), Some(last)) = (self.crossings.first(), self.crossings.last()) {
            if first.theta < 0.0 || last.theta >= TAU {
                return Err(Error::MalformedCrossingSet("angles outside [0, 2π)".into()));
            }
        }
        Ok(())
    }
}

/// A closed-form datum `θ ↦ f(θ)`, cached on a uniform grid for range,
/// variation and crossing brackets.
#[derive(Clone)]
pub struct AnalyticFn {
    label: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    samples: Vec<f64>,
}

impl AnalyticFn {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn eval(&self, theta: f64) -> f64 {
        (self.eval)(theta)
    }
}

impl fmt::Debug for AnalyticFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFn").field("label", &self.label).field("resolution", &self.samples.len()).finish()
    }
}

/// One arc of a piecewise-constant datum. `from > to` wraps through `θ = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcValue {
    pub from: f64,
    pub to: f64,
    pub value: f64,
}

/// Step function on the circle: `values[i]` holds on `[breaks[i], breaks[i+1])`,
/// the last piece wrapping to `breaks[0]`. No breaks means a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    breaks: Vec<f64>,
    values: Vec<f64>,
    constant: f64,
}

impl StepFunction {
    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Arcs with a value different from `background`.
    pub fn arcs(&self, background: f64) -> Vec<ArcValue> {
        let n = self.breaks.len();
        if n == 0 {
            return if self.constant != background {
                alloc::vec![ArcValue { from: 0.0, to: TAU, value: self.constant }]
            } else {
                Vec::new()
            };
        }
        (0..n)
            .filter(|&i| self.values[i] != background)
            .map(|i| ArcValue { from: self.breaks[i], to: self.breaks[(i + 1) % n], value: self.values[i] })
            .collect()
    }

    fn eval(&self, theta: f64) -> f64 {
        if self.breaks.is_empty() {
            return self.constant;
        }
        let theta = math::wrap_angle(theta);
        let idx = self.breaks.partition_point(|&b| b <= theta);
        if idx == 0 {
            *self.values.last().unwrap()
        } else {
            self.values[idx - 1]
        }
    }
}

/// Piecewise-linear interpolant of samples on `θ_i = 2πi/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.values.len() as f64
    }

    fn eval(&self, theta: f64) -> f64 {
        let n = self.values.len();
        let x = math::wrap_angle(theta) / self.spacing();
        let i = (math::floor(x) as usize).min(n - 1);
        let s = x - i as f64;
        let a = self.values[i];
        let b = self.values[(i + 1) % n];
        a + (b - a) * s
    }
}

#[derive(Clone, Debug)]
pub enum Representation {
    Analytic(AnalyticFn),
    PiecewiseConstant(StepFunction),
    Sampled(SampledFunction),
}

/// Boundary datum `f ∈ BV(∂Ω)`, 2π-periodic in the boundary parameter.
#[derive(Clone, Debug)]
pub struct BoundaryDatum {
    repr: Representation,
    range: (f64, f64),
}

impl BoundaryDatum {
    /// Closed-form datum sampled at `resolution` points for range and crossing brackets.
    pub fn analytic<F>(label: impl Into<String>, resolution: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if resolution < 8 {
            return Err(Error::InvalidParameter(format!("resolution {resolution} below 8")));
        }
        let samples: Vec<f64> = (0..resolution).map(|i| f(TAU * i as f64 / resolution as f64)).collect();
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDatum("analytic datum produced a non-finite value".into()));
        }
        let range = min_max(&samples);
        Ok(BoundaryDatum {
            repr: Representation::Analytic(AnalyticFn { label: label.into(), eval: Arc::new(f), samples }),
            range,
        })
    }

    /// Brothers-type datum `θ ↦ cos(2θ − phase)`.
    pub fn brothers(phase: f64) -> Self {
        Self::analytic(format!("cos(2θ - {phase})"), DEFAULT_RESOLUTION, move |t| math::cos(2.0 * t - phase))
            .expect("cosine datum is finite")
    }

    pub fn constant(value: f64) -> Self {
        BoundaryDatum {
            repr: Representation::PiecewiseConstant(StepFunction {
                breaks: Vec::new(),
                values: Vec::new(),
                constant: value,
            }),
            range: (value, value),
        }
    }

    /// Step function taking `background` off the listed arcs. Arcs must not overlap.
    pub fn piecewise_constant(arcs: &[ArcValue], background: f64) -> Result<Self> {
        let mut pieces: Vec<(f64, f64, f64)> = Vec::new();
        for arc in arcs {
            if !(arc.from.is_finite() && arc.to.is_finite() && arc.value.is_finite()) {
                return Err(Error::InvalidDatum("non-finite arc".into()));
            }
            let span = arc.to - arc.from;
            if span >= TAU {
                pieces.push((0.0, TAU, arc.value));
                continue;
            }
            let from = math::wrap_angle(arc.from);
            let to = math::wrap_angle(arc.to);
            if from == to {
                if span != 0.0 {
                    return Err(Error::InvalidDatum(format!("ambiguous arc [{}, {}]", arc.from, arc.to)));
                }
                continue;
            }
            if from < to {
                pieces.push((from, to, arc.value));
            } else {
                pieces.push((from, TAU, arc.value));
                if to > 0.0 {
                    pieces.push((0.0, to, arc.value));
                }
            }
        }
        pieces.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in pieces.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(Error::InvalidDatum(format!("overlapping arcs near θ = {}", w[1].0)));
            }
        }
        // Piece list covering [0, 2π) with background fill.
        let mut segs: Vec<(f64, f64)> = Vec::new();
        let mut cursor = 0.0;
        for &(a, b, v) in &pieces {
            if a > cursor {
                segs.push((cursor, background));
            }
            segs.push((a, v));
            cursor = b;
        }
        if cursor < TAU || segs.is_empty() {
            segs.push((cursor, background));
        }
        // merge equal neighbours, including across θ = 0
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (start, v) in segs {
            if start >= TAU {
                continue;
            }
            match merged.last() {
                Some(&(_, last)) if last == v => {}
                _ => merged.push((start, v)),
            }
        }
        if merged.len() > 1 && merged[0].1 == merged.last().unwrap().1 {
            merged.remove(0);
        }
        let values: Vec<f64> = merged.iter().map(|s| s.1).collect();
        let range = min_max(&values);
        let step = if merged.len() <= 1 {
            StepFunction { breaks: Vec::new(), values: Vec::new(), constant: values[0] }
        } else {
            StepFunction { breaks: merged.iter().map(|s| s.0).collect(), values, constant: 0.0 }
        };
        Ok(BoundaryDatum { repr: Representation::PiecewiseConstant(step), range })
    }

    /// Characteristic function of the counterclockwise arc `[from, to]`.
    pub fn arc_indicator(from: f64, to: f64) -> Result<Self> {
        Self::piecewise_constant(&[ArcValue { from, to, value: 1.0 }], 0.0)
    }

    /// Samples on the uniform grid `θ_i = 2πi/N`.
    pub fn sampled(values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::InvalidDatum("at least three samples required".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDatum("non-finite sample".into()));
        }
        let range = min_max(&values);
        Ok(BoundaryDatum { repr: Representation::Sampled(SampledFunction { values }), range })
    }

    /// Accepts `(θ_i, f_i)` pairs and checks they lie on the uniform grid.
    pub fn sampled_from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let n = pairs.len();
        if n < 3 {
            return Err(Error::InvalidDatum("at least three samples required".into()));
        }
        let h = TAU / n as f64;
        for (i, &(theta, _)) in pairs.iter().enumerate() {
            if math::abs(theta - h * i as f64) > 1e-9 * TAU {
                return Err(Error::InvalidDatum(format!(
                    "sample {i} at θ = {theta} is not on the uniform grid 2πi/{n}"
                )));
            }
        }
        Self::sampled(pairs.iter().map(|p| p.1).collect())
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    /// `[min f, max f]`; for analytic data the extremes over the cached samples.
    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    /// Distinct values of a step function, ascending; empty for other data.
    pub fn plateau_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = match &self.repr {
            Representation::PiecewiseConstant(s) if s.breaks.is_empty() => alloc::vec![s.constant],
            Representation::PiecewiseConstant(s) => s.values.clone(),
            _ => Vec::new(),
        };
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v.dedup();
        v
    }

    pub fn is_constant(&self) -> bool {
        self.range.0 == self.range.1
    }

    pub fn eval(&self, theta: f64) -> f64 {
        match &self.repr {
            Representation::Analytic(a) => a.eval(math::wrap_angle(theta)),
            Representation::PiecewiseConstant(s) => s.eval(theta),
            Representation::Sampled(s) => s.eval(theta),
        }
    }

    /// Resamples onto `n` uniform points.
    pub fn to_sampled(&self, n: usize) -> Result<Self> {
        Self::sampled((0..n).map(|i| self.eval(TAU * i as f64 / n as f64)).collect())
    }

    /// Total variation around the circle.
    ///
    /// Exact for step functions (sum of jump magnitudes) and for sampled data
    /// (sum of successive differences); analytic data use their cached samples.
    pub fn bv_seminorm(&self) -> f64 {
        match &self.repr {
            Representation::PiecewiseConstant(s) => cyclic_variation(&s.values),
            Representation::Sampled(s) => cyclic_variation(&s.values),
            Representation::Analytic(a) => cyclic_variation(&a.samples),
        }
    }

    /// `∫|f| dθ` by the midpoint rule on `samples` points.
    pub fn l1_norm(&self, samples: usize) -> f64 {
        let h = TAU / samples as f64;
        (0..samples).map(|i| math::abs(self.eval(h * (i as f64 + 0.5)))).sum::<f64>() * h
    }

    /// `∫|f − g| dθ` by the midpoint rule on `samples` points.
    pub fn l1_distance(&self, other: &BoundaryDatum, samples: usize) -> f64 {
        let h = TAU / samples as f64;
        (0..samples)
            .map(|i| {
                let t = h * (i as f64 + 0.5);
                math::abs(self.eval(t) - other.eval(t))
            })
            .sum::<f64>()
            * h
    }

    /// Points where `f` crosses `t`, with directions.
    ///
    /// Levels outside the open range give an empty set. Levels that touch a
    /// plateau of a step function, or whose crossing has sampled slope below
    /// [`MIN_CROSSING_SLOPE`], are rejected as non-regular.
    pub fn level_crossings(&self, t: f64) -> Result<CrossingSet> {
        let (lo, hi) = self.range;
        if !(t > lo && t < hi) {
            return Ok(CrossingSet::new(t, Vec::new()));
        }
        let crossings = match &self.repr {
            Representation::PiecewiseConstant(s) => step_crossings(s, t)?,
            Representation::Sampled(s) => sampled_crossings(&s.values, t)?,
            Representation::Analytic(a) => analytic_crossings(a, t)?,
        };
        Ok(CrossingSet::new(t, crossings))
    }
}

fn min_max(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

fn cyclic_variation(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    (0..n).map(|i| math::abs(values[(i + 1) % n] - values[i])).sum()
}

fn step_crossings(s: &StepFunction, t: f64) -> Result<Vec<Crossing>> {
    let scale = s.values.iter().fold(1.0f64, |m, v| m.max(math::abs(*v)));
    if s.values.iter().any(|v| math::abs(v - t) <= 1e-12 * scale) {
        return Err(Error::NonRegularLevel { level: t });
    }
    let n = s.breaks.len();
    let mut out = Vec::new();
    for i in 0..n {
        let left = s.values[(i + n - 1) % n];
        let right = s.values[i];
        if (left < t) != (right < t) {
            let direction = if right > left { Direction::Up } else { Direction::Down };
            out.push(Crossing { theta: s.breaks[i], direction });
        }
    }
    Ok(out)
}

fn sampled_crossings(values: &[f64], t: f64) -> Result<Vec<Crossing>> {
    let n = values.len();
    let h = TAU / n as f64;
    let mut out = Vec::new();
    for i in 0..n {
        let a = values[i];
        let b = values[(i + 1) % n];
        let above_a = a >= t;
        let above_b = b >= t;
        if above_a == above_b {
            continue;
        }
        if math::abs(b - a) / h < MIN_CROSSING_SLOPE {
            return Err(Error::NonRegularLevel { level: t });
        }
        let theta = (h * (i as f64 + (t - a) / (b - a))).clamp(h * i as f64, h * (i + 1) as f64);
        let direction = if above_b { Direction::Up } else { Direction::Down };
        out.push(Crossing { theta: normalize_crossing(theta), direction });
    }
    sort_crossings(&mut out);
    Ok(out)
}

fn analytic_crossings(a: &AnalyticFn, t: f64) -> Result<Vec<Crossing>> {
    let n = a.samples.len();
    let h = TAU / n as f64;
    let mut out = Vec::new();
    for i in 0..n {
        let fa = a.samples[i];
        let fb = a.samples[(i + 1) % n];
        let above_a = fa >= t;
        let above_b = fb >= t;
        if above_a == above_b {
            continue;
        }
        if math::abs(fb - fa) / h < MIN_CROSSING_SLOPE {
            return Err(Error::NonRegularLevel { level: t });
        }
        // invariant: eval(lo) on the `above_a` side, eval(hi) on the other
        let mut lo = h * i as f64;
        let mut hi = h * (i + 1) as f64;
        while hi - lo > CROSSING_TOL {
            let mid = 0.5 * (lo + hi);
            if (a.eval(mid) >= t) == above_a {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let direction = if above_b { Direction::Up } else { Direction::Down };
        out.push(Crossing { theta: normalize_crossing(0.5 * (lo + hi)), direction });
    }
    sort_crossings(&mut out);
    Ok(out)
}

fn normalize_crossing(theta: f64) -> f64 {
    if theta >= TAU {
        theta - TAU
    } else {
        theta
    }
}

fn sort_crossings(v: &mut [Crossing]) {
    v.sort_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap());
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    // Composite Simpson on |f'| as an independent oracle for total variation.
    fn simpson_abs(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a).abs() + f(b).abs();
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + h * i as f64).abs();
        }
        s * h / 3.0
    }

    #[test]
    fn bv_examples() {
        assert_eq!(BoundaryDatum::constant(3.0).bv_seminorm(), 0.0);
        assert_eq!(BoundaryDatum::arc_indicator(0.0, 1.0).unwrap().bv_seminorm(), 2.0);
        let oracle = simpson_abs(|t| -2.0 * (2.0 * t).sin(), 0.0, TAU, 20_000);
        assert!((oracle - 8.0).abs() < 1e-9);
        let sampled =
            BoundaryDatum::sampled((0..4096).map(|i| (2.0 * TAU * i as f64 / 4096.0).cos()).collect()).unwrap();
        assert!((sampled.bv_seminorm() - oracle).abs() < 1e-3);
        assert!((BoundaryDatum::brothers(0.0).bv_seminorm() - oracle).abs() < 1e-3);
    }

    #[test]
    fn bv_invariant_under_base_point_rotation() {
        let values: Vec<f64> = (0..500).map(|i| ((i * 37) % 11) as f64 - 0.3 * (i % 7) as f64).collect();
        let base = BoundaryDatum::sampled(values.clone()).unwrap().bv_seminorm();
        for shift in [1, 17, 250, 499] {
            let mut rotated = values.clone();
            rotated.rotate_left(shift);
            let v = BoundaryDatum::sampled(rotated).unwrap().bv_seminorm();
            assert!((v - base).abs() <= 1e-12 * base);
        }
    }

    #[test]
    fn brothers_values() {
        assert_eq!(BoundaryDatum::brothers(0.0).eval(0.0), 1.0);
        assert!((BoundaryDatum::brothers(FRAC_PI_2).eval(FRAC_PI_4) - 1.0).abs() < 1e-15);
        assert_eq!(BoundaryDatum::brothers(0.0).range(), (-1.0, 1.0));
    }

    #[test]
    fn cos2_zero_level() {
        let cs = BoundaryDatum::brothers(0.0).level_crossings(0.0).unwrap();
        cs.validate().unwrap();
        let expected = [FRAC_PI_4, 3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4, 7.0 * FRAC_PI_4];
        assert_eq!(cs.len(), 4);
        for (c, e) in cs.crossings.iter().zip(expected) {
            assert!((c.theta - e).abs() < 1e-11, "{} vs {e}", c.theta);
        }
        assert_eq!(cs.crossings[0].direction, Direction::Down);
    }

    #[test]
    fn constant_has_no_crossings() {
        let c = BoundaryDatum::constant(2.0);
        assert!(c.level_crossings(2.0).unwrap().is_empty());
        assert!(c.level_crossings(0.0).unwrap().is_empty());
    }

    #[test]
    fn step_crossings_at_arc_ends() {
        let f = BoundaryDatum::piecewise_constant(
            &[ArcValue { from: 0.0, to: 0.375, value: 1.0 }, ArcValue { from: 0.625, to: 1.0, value: 1.0 }],
            0.0,
        )
        .unwrap();
        let cs = f.level_crossings(0.5).unwrap();
        cs.validate().unwrap();
        let thetas: Vec<f64> = cs.crossings.iter().map(|c| c.theta).collect();
        assert_eq!(thetas, [0.0, 0.375, 0.625, 1.0]);
        assert_eq!(cs.crossings[0].direction, Direction::Up);
        assert!(matches!(f.level_crossings(1.0), Ok(ref s) if s.is_empty()));
    }

    #[test]
    fn plateau_level_is_non_regular() {
        let f = BoundaryDatum::piecewise_constant(
            &[ArcValue { from: 0.0, to: 1.0, value: 2.0 }, ArcValue { from: 2.0, to: 3.0, value: 1.0 }],
            0.0,
        )
        .unwrap();
        assert_eq!(f.level_crossings(1.0), Err(Error::NonRegularLevel { level: 1.0 }));
        assert_eq!(f.level_crossings(1.5).unwrap().len(), 2);
        assert_eq!(f.level_crossings(0.5).unwrap().len(), 4);
    }

    #[test]
    fn flat_sampled_crossing_is_non_regular() {
        let mut v = alloc::vec![0.0; 64];
        v[10] = 1.0;
        v[20] = 1e-9;
        let f = BoundaryDatum::sampled(v).unwrap();
        assert!(f.level_crossings(0.5).is_ok());
        assert!(matches!(f.level_crossings(0.5e-9), Err(Error::NonRegularLevel { .. })));
    }

    #[test]
    fn wrapping_arc() {
        let f = BoundaryDatum::arc_indicator(6.0, 0.5).unwrap();
        assert_eq!(f.eval(0.2), 1.0);
        assert_eq!(f.eval(6.1), 1.0);
        assert_eq!(f.eval(3.0), 0.0);
        let cs = f.level_crossings(0.5).unwrap();
        cs.validate().unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(f.bv_seminorm(), 2.0);
    }

    #[test]
    fn overlapping_arcs_rejected() {
        let r = BoundaryDatum::piecewise_constant(
            &[ArcValue { from: 0.0, to: 1.0, value: 1.0 }, ArcValue { from: 0.5, to: 2.0, value: 2.0 }],
            0.0,
        );
        assert!(r.is_err());
    }

    #[test]
    fn sampled_pairs_must_be_uniform() {
        let ok: Vec<(f64, f64)> = (0..8).map(|i| (TAU * i as f64 / 8.0, i as f64)).collect();
        assert!(BoundaryDatum::sampled_from_pairs(&ok).is_ok());
        let mut bad = ok.clone();
        bad[3].0 += 0.1;
        assert!(BoundaryDatum::sampled_from_pairs(&bad).is_err());
    }

    #[test]
    fn crossing_set_validation() {
        let good = CrossingSet::alternating(0.0, &[0.1, 0.2, 0.3, 0.4], Direction::Up);
        good.validate().unwrap();
        let odd = CrossingSet::alternating(0.0, &[0.1, 0.2, 0.3], Direction::Up);
        assert!(odd.validate().is_err());
        let mut same = good.clone();
        same.crossings[1].direction = Direction::Up;
        assert!(same.validate().is_err());
        let _ = PI;
    }
}
