//! Boundary-trace discrepancy and total-variation comparisons.

use super::{ScalarField, SolutionField};
use crate::boundary::BoundaryDatum;
use crate::geometry::ConvexDomain;
use crate::math::{self, TAU};
use crate::{Error, Result};

/// Midpoint samples along the offset curve.
pub const TRACE_SAMPLES: usize = 8192;

/// `∫|u(γ_band(θ)) − f(θ)| dθ` where `γ_band` is the boundary pushed inward by `band`.
pub fn trace_check(field: &impl ScalarField, f: &BoundaryDatum, domain: &ConvexDomain, band: f64) -> Result<f64> {
    if !(band > 0.0 && band < domain.inradius_bound()) {
        return Err(Error::InvalidParameter(alloc::format!(
            "band {band} must lie in (0, {})",
            domain.inradius_bound()
        )));
    }
    let h = TAU / TRACE_SAMPLES as f64;
    let sum: f64 = (0..TRACE_SAMPLES)
        .map(|i| {
            let theta = h * (i as f64 + 0.5);
            math::abs(field.value_at(domain.inward_offset(theta, band)) - f.eval(theta))
        })
        .sum();
    Ok(sum * h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvMeasure {
    /// Both fields carry a co-area total (exact φ-lengths of their level curves).
    Coarea,
    /// At least one field is only known on the raster.
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TvComparison {
    pub measure: TvMeasure,
    pub solver_tv: f64,
    pub competitor_tv: f64,
    pub solver_trace: f64,
    pub competitor_trace: f64,
}

impl TvComparison {
    /// The solver's variation does not exceed the competitor's beyond `rel_tol`.
    pub fn solver_not_worse(&self, rel_tol: f64) -> bool {
        self.solver_tv <= self.competitor_tv * (1.0 + rel_tol) + rel_tol
    }

    pub fn relative_gap(&self) -> f64 {
        (self.competitor_tv - self.solver_tv) / self.solver_tv.abs().max(f64::MIN_POSITIVE)
    }
}

/// Compares the φ-total variation of two fields with the same trace.
///
/// Both fields must share a grid, and each must attain `f` to within
/// `trace_tol` on the offset curve at distance `band`; otherwise the
/// comparison is meaningless and [`Error::Incomparable`] is returned.
pub fn compare_competitor(
    field: &SolutionField,
    competitor: &SolutionField,
    f: &BoundaryDatum,
    domain: &ConvexDomain,
    band: f64,
    trace_tol: f64,
) -> Result<TvComparison> {
    if !field.same_grid(competitor) {
        return Err(Error::Incomparable("fields live on different grids".into()));
    }
    let solver_trace = trace_check(field, f, domain, band)?;
    let competitor_trace = trace_check(competitor, f, domain, band)?;
    if solver_trace > trace_tol || competitor_trace > trace_tol {
        return Err(Error::Incomparable(alloc::format!(
            "trace discrepancies {solver_trace:.3e} and {competitor_trace:.3e} exceed {trace_tol:.3e}"
        )));
    }
    let (measure, solver_tv, competitor_tv) = match (field.coarea_tv, competitor.coarea_tv) {
        (Some(a), Some(b)) => (TvMeasure::Coarea, a, b),
        _ => (TvMeasure::Grid, field.grid_tv, competitor.grid_tv),
    };
    Ok(TvComparison { measure, solver_tv, competitor_tv, solver_trace, competitor_trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Anisotropy, Point};
    use crate::solver::{reconstruct, sweep, GridSpec, SweepOptions};

    #[test]
    fn constant_has_zero_discrepancy() {
        let d = ConvexDomain::unit_disk();
        let f = BoundaryDatum::constant(1.5);
        let v = trace_check(&|_: Point| 1.5, &f, &d, 0.01).unwrap();
        assert_eq!(v, 0.0);
        assert!(trace_check(&|_: Point| 1.5, &f, &d, 2.0).is_err());
    }

    #[test]
    fn arc_indicator_trace() {
        let d = ConvexDomain::unit_disk();
        let f = BoundaryDatum::arc_indicator(0.5, 2.5).unwrap();
        let fam = sweep(&f, &d, Anisotropy::isotropic(), SweepOptions::default()).unwrap();
        assert!(trace_check(&fam, &f, &d, 0.01).unwrap() <= 0.1);
    }

    #[test]
    fn self_comparison_is_equal() {
        let d = ConvexDomain::unit_disk();
        let f = BoundaryDatum::brothers(0.0);
        let fam = sweep(&f, &d, Anisotropy::isotropic(), SweepOptions::with_levels(100)).unwrap();
        let u = reconstruct(&fam, 128, 128).unwrap();
        let c = compare_competitor(&u, &u, &f, &d, 0.02, 1.0).unwrap();
        assert_eq!(c.solver_tv, c.competitor_tv);
        assert_eq!(c.measure, TvMeasure::Coarea);
        let other = SolutionField::constant(GridSpec::covering(&d, 64, 64).unwrap(), &d, Anisotropy::isotropic(), 0.0);
        assert!(matches!(compare_competitor(&u, &other, &f, &d, 0.02, 1.0), Err(Error::Incomparable(_))));
    }
}
