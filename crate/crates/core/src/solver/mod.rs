//! Level sweep: one minimal chord system per sampled level, nested into a
//! superlevel family from which the solution is reconstructed.

use alloc::vec::Vec;

use crate::boundary::{BoundaryDatum, CrossingSet};
use crate::geometry::{polyline_cost, Anisotropy, ConvexDomain, Point};
use crate::matching::{enumerate_optimal, min_matching, LevelMatching, TIE_TOLERANCE};
use crate::{Error, Result};

mod field;
mod region;
mod trace;

pub use field::{grid_tv, reconstruct, reconstruct_lenient, GridSpec, ScalarField, SolutionField};
pub use region::{Location, RegionShape, BOUNDARY_TOL};
pub use trace::{compare_competitor, trace_check, TvComparison, TvMeasure, TRACE_SAMPLES};

pub const DEFAULT_LEVELS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    pub levels: usize,
    /// Relative tolerance for the optimal set consulted during nesting repair.
    pub rel_tol: f64,
    pub repair_nesting: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { levels: DEFAULT_LEVELS, rel_tol: TIE_TOLERANCE, repair_nesting: true }
    }
}

impl SweepOptions {
    pub fn with_levels(levels: usize) -> Self {
        SweepOptions { levels, ..Self::default() }
    }
}

/// One kept level: its matching, the region it bounds and the value band
/// `[lo, hi)` it represents in the layer-cake sum.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelRegion {
    pub level: f64,
    pub matching: LevelMatching,
    pub shape: RegionShape,
    /// φ-perimeter of the region inside the domain.
    pub perimeter: f64,
    pub band: (f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NestingViolation {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuperlevelFamily {
    domain: ConvexDomain,
    aniso: Anisotropy,
    range: (f64, f64),
    pub levels: Vec<LevelRegion>,
    pub skipped: Vec<f64>,
    pub nesting_violations: Vec<NestingViolation>,
    /// Levels whose matching was replaced by a tied alternative to restore nesting.
    pub repaired: Vec<f64>,
}

/// `t_k = min + (k − ½)(max − min)/K` for `k = 1..=K`.
pub fn sample_levels(range: (f64, f64), k: usize) -> Vec<f64> {
    let (lo, hi) = range;
    let step = (hi - lo) / k as f64;
    (0..k).map(|i| lo + (i as f64 + 0.5) * step).collect()
}

fn shape_of(domain: &ConvexDomain, m: &LevelMatching) -> RegionShape {
    let curves = m.chords().into_iter().map(|(d, u)| alloc::vec![d, u]).collect();
    RegionShape::new(domain, m.boundary_arcs(), curves)
}

fn same_crossings(a: &CrossingSet, b: &CrossingSet) -> bool {
    a.crossings.len() == b.crossings.len()
        && a.crossings.iter().zip(&b.crossings).all(|(x, y)| x.theta == y.theta && x.direction == y.direction)
}

#[cfg(feature = "parallel")]
fn solve_levels(sets: &[CrossingSet], domain: &ConvexDomain, aniso: Anisotropy) -> Result<Vec<LevelMatching>> {
    use rayon::prelude::*;
    let starts = run_starts(sets);
    let solved: Result<Vec<LevelMatching>> =
        starts.par_iter().map(|&i| min_matching(&sets[i], domain, aniso)).collect();
    Ok(expand_runs(sets, &starts, solved?))
}

#[cfg(not(feature = "parallel"))]
fn solve_levels(sets: &[CrossingSet], domain: &ConvexDomain, aniso: Anisotropy) -> Result<Vec<LevelMatching>> {
    let starts = run_starts(sets);
    let solved: Result<Vec<LevelMatching>> = starts.iter().map(|&i| min_matching(&sets[i], domain, aniso)).collect();
    Ok(expand_runs(sets, &starts, solved?))
}

// First index of every run of identical crossing sets; piecewise-constant data
// produce long runs and each is solved once.
fn run_starts(sets: &[CrossingSet]) -> Vec<usize> {
    (0..sets.len()).filter(|&i| i == 0 || !same_crossings(&sets[i - 1], &sets[i])).collect()
}

fn expand_runs(sets: &[CrossingSet], starts: &[usize], solved: Vec<LevelMatching>) -> Vec<LevelMatching> {
    let mut out = Vec::with_capacity(sets.len());
    let mut run = 0;
    for (i, cs) in sets.iter().enumerate() {
        if run + 1 < starts.len() && starts[run + 1] == i {
            run += 1;
        }
        let mut m = solved[run].clone();
        m.level = cs.level;
        m.crossings.level = cs.level;
        out.push(m);
    }
    out
}

/// Builds the superlevel family of `f` on `domain`.
///
/// Levels are sampled at band midpoints; levels with a near-critical crossing
/// are skipped. Each kept level gets a minimal matching, and a top-down pass
/// restores nesting where ties allow it: with the higher region fixed, the
/// lower level switches to the largest tied matching that contains it.
/// Failures are recorded, not raised.
pub fn sweep(
    f: &BoundaryDatum,
    domain: &ConvexDomain,
    aniso: Anisotropy,
    opts: SweepOptions,
) -> Result<SuperlevelFamily> {
    if opts.levels < 2 {
        return Err(Error::InvalidParameter(alloc::format!("level count {} below 2", opts.levels)));
    }
    if f.is_constant() {
        return Err(Error::ConstantDatum);
    }
    let range = f.range();
    let mut sets = Vec::new();
    let mut skipped = Vec::new();
    for t in sample_levels(range, opts.levels) {
        match f.level_crossings(t) {
            Ok(cs) if !cs.is_empty() => sets.push(cs),
            Ok(_) | Err(Error::NonRegularLevel { .. }) => skipped.push(t),
            Err(e) => return Err(e),
        }
    }
    if sets.is_empty() {
        return Err(Error::NoRegularLevels);
    }
    let matchings = solve_levels(&sets, domain, aniso)?;
    let mut levels: Vec<LevelRegion> = matchings
        .into_iter()
        .map(|m| {
            let shape = shape_of(domain, &m);
            LevelRegion { level: m.level, perimeter: m.cost, shape, matching: m, band: (0.0, 0.0) }
        })
        .collect();
    assign_bands(&mut levels, range, &f.plateau_values());

    let mut violations = Vec::new();
    let mut repaired = Vec::new();
    for i in (1..levels.len()).rev() {
        if levels[i].shape.is_contained_in(&levels[i - 1].shape) {
            continue;
        }
        let lower = &levels[i - 1];
        let mut fixed = None;
        if opts.repair_nesting {
            let set = enumerate_optimal(&lower.matching.crossings, domain, aniso, opts.rel_tol)?;
            fixed = set
                .matchings
                .into_iter()
                .map(|m| {
                    let shape = shape_of(domain, &m);
                    (m, shape)
                })
                .find(|(_, shape)| levels[i].shape.is_contained_in(shape));
        }
        match fixed {
            Some((m, shape)) => {
                repaired.push(m.level);
                let l = &mut levels[i - 1];
                l.perimeter = m.cost;
                l.matching = m;
                l.shape = shape;
            }
            None => violations.push(NestingViolation { lower: levels[i - 1].level, upper: levels[i].level }),
        }
    }
    violations.reverse();
    repaired.reverse();
    Ok(SuperlevelFamily {
        domain: domain.clone(),
        aniso,
        range,
        levels,
        skipped,
        nesting_violations: violations,
        repaired,
    })
}

// Band edges sit halfway between kept levels, except that a datum value lying
// between two levels becomes the edge: step data then reconstruct their plateau
// values exactly.
fn assign_bands(levels: &mut [LevelRegion], range: (f64, f64), plateaus: &[f64]) {
    let n = levels.len();
    let edge = |a: f64, b: f64| {
        let mid = 0.5 * (a + b);
        plateaus
            .iter()
            .copied()
            .filter(|&v| v > a && v < b)
            .min_by(|x, y| crate::math::abs(x - mid).partial_cmp(&crate::math::abs(y - mid)).unwrap())
            .unwrap_or(mid)
    };
    for i in 0..n {
        let lo = if i == 0 { range.0 } else { edge(levels[i - 1].level, levels[i].level) };
        let hi = if i + 1 == n { range.1 } else { edge(levels[i].level, levels[i + 1].level) };
        levels[i].band = (lo, hi);
    }
}

impl SuperlevelFamily {
    pub fn domain(&self) -> &ConvexDomain {
        &self.domain
    }

    pub fn aniso(&self) -> Anisotropy {
        self.aniso
    }

    /// `[min f, max f]` of the datum.
    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    pub fn kept_levels(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.level).collect()
    }

    pub fn is_nested(&self) -> bool {
        self.nesting_violations.is_empty()
    }

    /// `Σ (band width) · P_φ(E_t)`: the co-area total variation of the reconstruction.
    pub fn coarea_tv(&self) -> f64 {
        self.levels.iter().map(|l| (l.band.1 - l.band.0) * l.perimeter).sum()
    }

    /// `∫_Ω u` by the layer-cake formula, using the exact region areas.
    pub fn integral(&self) -> f64 {
        self.range.0 * self.domain.area()
            + self.levels.iter().map(|l| (l.band.1 - l.band.0) * l.matching.enclosed_area).sum::<f64>()
    }

    /// All chords of all levels as `(down, up)` endpoint pairs.
    pub fn chords(&self) -> Vec<(Point, Point)> {
        self.levels.iter().flat_map(|l| l.matching.chords()).collect()
    }

    /// Re-checks nesting of consecutive kept levels.
    pub fn check_nesting(&self) -> Vec<NestingViolation> {
        self.levels
            .windows(2)
            .filter(|w| !w[1].shape.is_contained_in(&w[0].shape))
            .map(|w| NestingViolation { lower: w[0].level, upper: w[1].level })
            .collect()
    }

    /// Replaces chords by other curves with the same endpoints.
    ///
    /// `replace(level index, chord index, down, up)` returns the new polyline
    /// from `down` to `up`, or `None` to keep the chord. Perimeters are
    /// recomputed from the curves and nesting is re-checked.
    pub fn with_curves<F>(&self, mut replace: F) -> Result<SuperlevelFamily>
    where
        F: FnMut(usize, usize, Point, Point) -> Option<Vec<Point>>,
    {
        let mut out = self.clone();
        for (li, level) in out.levels.iter_mut().enumerate() {
            let mut curves = Vec::new();
            for (ci, (d, u)) in level.matching.chords().into_iter().enumerate() {
                let curve = match replace(li, ci, d, u) {
                    Some(c) => {
                        if c.len() < 2 || c[0] != d || *c.last().unwrap() != u {
                            return Err(Error::InvalidParameter(alloc::format!(
                                "replacement curve {ci} at level {} does not join the chord endpoints",
                                level.level
                            )));
                        }
                        c
                    }
                    None => alloc::vec![d, u],
                };
                curves.push(curve);
            }
            level.perimeter = curves.iter().map(|c| polyline_cost(c, self.aniso)).sum::<Result<f64>>()?;
            level.shape = RegionShape::new(&self.domain, level.matching.boundary_arcs(), curves);
        }
        out.nesting_violations = out.check_nesting();
        out.repaired.clear();
        Ok(out)
    }

    // Runs of consecutive levels with identical regions, as (last index of run).
    pub(crate) fn distinct_tops(&self) -> Vec<usize> {
        let n = self.levels.len();
        (0..n).filter(|&i| i + 1 == n || self.levels[i + 1].shape != self.levels[i].shape).collect()
    }

    /// `u(x)`: top of the band of the highest level whose closed region holds `x`,
    /// `min f` if there is none. Assumes nesting (binary search over levels).
    pub fn value_at(&self, x: Point) -> f64 {
        let tops = self.distinct_tops();
        self.value_with_tops(&tops, x)
    }

    pub(crate) fn value_with_tops(&self, tops: &[usize], x: Point) -> f64 {
        // predicate "x ∈ E" is monotone along a nested family
        let (mut lo, mut hi) = (0usize, tops.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.levels[tops[mid]].shape.contains(x) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if lo == 0 {
            self.range.0
        } else {
            self.levels[tops[lo - 1]].band.1
        }
    }

    /// Definition-level evaluation that does not rely on nesting.
    pub fn value_at_scan(&self, x: Point) -> f64 {
        self.levels.iter().rev().find(|l| l.shape.contains(x)).map_or(self.range.0, |l| l.band.1)
    }
}

impl ScalarField for SuperlevelFamily {
    fn value_at(&self, p: Point) -> f64 {
        SuperlevelFamily::value_at(self, p)
    }
}
