//! Rasterized solutions and their discrete total variation.

use alloc::vec::Vec;

use super::SuperlevelFamily;
use crate::geometry::{Anisotropy, ConvexDomain, Point};
use crate::math;
use crate::{Error, Result};

/// Anything that can be evaluated at a point of the closed domain.
pub trait ScalarField {
    fn value_at(&self, p: Point) -> f64;
}

impl<F: Fn(Point) -> f64> ScalarField for F {
    fn value_at(&self, p: Point) -> f64 {
        self(p)
    }
}

/// Uniform `width × height` cell grid over an axis-aligned box; cells are
/// stored row-major from the bottom-left corner.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub width: usize,
    pub height: usize,
    pub min: Point,
    pub max: Point,
}

impl GridSpec {
    /// Grid over the bounding box of `domain`.
    pub fn covering(domain: &ConvexDomain, width: usize, height: usize) -> Result<Self> {
        if width < 2 || height < 2 {
            return Err(Error::InvalidParameter(alloc::format!("grid {width}x{height} too small")));
        }
        let (min, max) = domain.bounding_box();
        Ok(GridSpec { width, height, min, max })
    }

    pub fn cell_size(&self) -> (f64, f64) {
        ((self.max.x - self.min.x) / self.width as f64, (self.max.y - self.min.y) / self.height as f64)
    }

    pub fn cell_center(&self, i: usize, j: usize) -> Point {
        let (hx, hy) = self.cell_size();
        Point::new(self.min.x + (i as f64 + 0.5) * hx, self.min.y + (j as f64 + 0.5) * hy)
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cell containing `p`, clamped to the grid.
    pub fn cell_of(&self, p: Point) -> (usize, usize) {
        let (hx, hy) = self.cell_size();
        let i = math::floor((p.x - self.min.x) / hx).clamp(0.0, (self.width - 1) as f64) as usize;
        let j = math::floor((p.y - self.min.y) / hy).clamp(0.0, (self.height - 1) as f64) as usize;
        (i, j)
    }
}

/// Raster of `u` on the cells whose centers lie in the closed domain.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionField {
    pub grid: GridSpec,
    pub values: Vec<f64>,
    pub mask: Vec<bool>,
    pub aniso: Anisotropy,
    /// Co-area estimate, when the field comes from a superlevel family.
    pub coarea_tv: Option<f64>,
    pub grid_tv: f64,
}

impl SolutionField {
    /// Samples `field` at the in-domain cell centers; other cells hold 0.
    pub fn sample(grid: GridSpec, domain: &ConvexDomain, aniso: Anisotropy, field: &(impl ScalarField + Sync)) -> Self {
        let mask: Vec<bool> =
            (0..grid.len()).map(|k| domain.contains(grid.cell_center(k % grid.width, k / grid.width))).collect();
        let values = raster_rows(grid, &mask, |p| field.value_at(p));
        Self::from_values(grid, values, mask, aniso)
    }

    pub fn from_values(grid: GridSpec, values: Vec<f64>, mask: Vec<bool>, aniso: Anisotropy) -> Self {
        let grid_tv = grid_tv(&grid, &values, &mask, aniso);
        SolutionField { grid, values, mask, aniso, coarea_tv: None, grid_tv }
    }

    pub fn constant(grid: GridSpec, domain: &ConvexDomain, aniso: Anisotropy, value: f64) -> Self {
        Self::sample(grid, domain, aniso, &move |_: Point| value)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.grid.width + i]
    }

    pub fn in_domain(&self, i: usize, j: usize) -> bool {
        self.mask[j * self.grid.width + i]
    }

    /// Values over the in-domain cells.
    pub fn masked_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().zip(&self.mask).filter(|(_, &m)| m).map(|(&v, _)| v)
    }

    pub fn masked_range(&self) -> (f64, f64) {
        self.masked_values().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    /// `∫|u|` with one cell area per in-domain cell.
    pub fn l1_norm(&self) -> f64 {
        let (hx, hy) = self.grid.cell_size();
        self.masked_values().map(math::abs).sum::<f64>() * hx * hy
    }

    pub fn same_grid(&self, other: &SolutionField) -> bool {
        self.grid == other.grid && self.mask == other.mask
    }

    /// Cellwise `∫|u − v|`; the grids must coincide.
    pub fn l1_distance(&self, other: &SolutionField) -> Result<f64> {
        if !self.same_grid(other) {
            return Err(Error::Incomparable("fields live on different grids".into()));
        }
        let (hx, hy) = self.grid.cell_size();
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .map(|((a, b), _)| math::abs(a - b))
            .sum::<f64>()
            * hx
            * hy)
    }

    /// Pointwise map over in-domain cells, recomputing the grid TV.
    pub fn map_with(&self, other: &SolutionField, f: impl Fn(f64, f64) -> f64) -> Result<SolutionField> {
        if !self.same_grid(other) {
            return Err(Error::Incomparable("fields live on different grids".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .zip(&self.mask)
            .map(|((&a, &b), &m)| if m { f(a, b) } else { 0.0 })
            .collect();
        Ok(SolutionField::from_values(self.grid, values, self.mask.clone(), self.aniso))
    }
}

/// Nearest in-grid cell value; cells outside the domain are not consulted
/// specially, so callers should stay inside.
impl ScalarField for SolutionField {
    fn value_at(&self, p: Point) -> f64 {
        let (i, j) = self.grid.cell_of(p);
        self.value(i, j)
    }
}

#[cfg(feature = "parallel")]
fn raster_rows(grid: GridSpec, mask: &[bool], f: impl Fn(Point) -> f64 + Sync) -> Vec<f64> {
    use rayon::prelude::*;
    let rows: Vec<Vec<f64>> = (0..grid.height).into_par_iter().map(|j| row_values(grid, mask, j, &f)).collect();
    rows.concat()
}

#[cfg(not(feature = "parallel"))]
fn raster_rows(grid: GridSpec, mask: &[bool], f: impl Fn(Point) -> f64) -> Vec<f64> {
    (0..grid.height).flat_map(|j| row_values(grid, mask, j, &f)).collect()
}

fn row_values(grid: GridSpec, mask: &[bool], j: usize, f: &impl Fn(Point) -> f64) -> Vec<f64> {
    (0..grid.width).map(|i| if mask[j * grid.width + i] { f(grid.cell_center(i, j)) } else { 0.0 }).collect()
}

/// Discrete φ-total variation: `|Δu|` times edge length over every edge shared
/// by two in-domain cells, weighted by φ of the edge normal.
pub fn grid_tv(grid: &GridSpec, values: &[f64], mask: &[bool], aniso: Anisotropy) -> f64 {
    let (hx, hy) = grid.cell_size();
    let wx = aniso.norm(Point::new(1.0, 0.0));
    let wy = aniso.norm(Point::new(0.0, 1.0));
    let w = grid.width;
    let mut vertical = 0.0;
    let mut horizontal = 0.0;
    for j in 0..grid.height {
        for i in 0..w {
            let k = j * w + i;
            if !mask[k] {
                continue;
            }
            if i + 1 < w && mask[k + 1] {
                vertical += math::abs(values[k + 1] - values[k]);
            }
            if j + 1 < grid.height && mask[k + w] {
                horizontal += math::abs(values[k + w] - values[k]);
            }
        }
    }
    vertical * hy * wx + horizontal * hx * wy
}

fn rasterize(family: &SuperlevelFamily, grid: GridSpec, scan: bool) -> SolutionField {
    let domain = family.domain();
    let mask: Vec<bool> =
        (0..grid.len()).map(|k| domain.contains(grid.cell_center(k % grid.width, k / grid.width))).collect();
    let tops = family.distinct_tops();
    let values = if scan {
        raster_rows(grid, &mask, |p| family.value_at_scan(p))
    } else {
        raster_rows(grid, &mask, |p| family.value_with_tops(&tops, p))
    };
    let mut field = SolutionField::from_values(grid, values, mask, family.aniso());
    field.coarea_tv = Some(family.coarea_tv());
    field
}

/// Rasterizes `u(x) = sup{t : x ∈ E_t}` on `width × height` cells.
/// Families with recorded nesting violations are rejected.
pub fn reconstruct(family: &SuperlevelFamily, width: usize, height: usize) -> Result<SolutionField> {
    if let Some(v) = family.nesting_violations.first() {
        return Err(Error::NestingViolated { lower: v.lower, upper: v.upper });
    }
    let grid = GridSpec::covering(family.domain(), width, height)?;
    Ok(rasterize(family, grid, false))
}

/// Like [`reconstruct`], but evaluates the supremum level by level so that a
/// family with nesting violations still yields a field.
pub fn reconstruct_lenient(family: &SuperlevelFamily, width: usize, height: usize) -> Result<SolutionField> {
    let grid = GridSpec::covering(family.domain(), width, height)?;
    Ok(rasterize(family, grid, !family.is_nested()))
}
