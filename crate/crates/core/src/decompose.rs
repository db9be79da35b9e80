//! Splitting a solution into a continuous part and a jump part.
//!
//! Jump curves of a least gradient function are chords along which many
//! levels coincide. They cut the domain into faces; faces adjacent across a
//! chord are joined by an edge carrying the jump. The graph is a tree, and the
//! jump part on a face is the signed sum of edge weights on the path from the
//! root face.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::geometry::{orient, Anisotropy, Point};
use crate::math;
use crate::solver::{GridSpec, SolutionField, SuperlevelFamily};
use crate::{Error, Result};

/// Endpoint tolerance for calling chords of two levels the same chord.
pub const CHORD_MATCH_TOL: f64 = 1e-9;

/// Default jump threshold as a fraction of the datum's range.
pub const DEFAULT_THRESHOLD_FRACTION: f64 = 1e-3;

/// A jump chord oriented so that the higher side is on its left.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpSurface {
    pub down: Point,
    pub up: Point,
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeEdge {
    /// Face on the low side.
    pub a: usize,
    /// Face on the high side.
    pub b: usize,
    /// `u(b) − u(a)` across the surface.
    pub weight: f64,
    pub surface: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionInfo {
    pub cells: usize,
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionTree {
    pub regions: Vec<RegionInfo>,
    pub edges: Vec<TreeEdge>,
    pub root: usize,
    pub surfaces: Vec<JumpSurface>,
    grid: GridSpec,
    mask: Vec<bool>,
    labels: Vec<usize>,
    aniso: Anisotropy,
    residual_tol: f64,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn check_tree(n: usize, edges: &[TreeEdge]) -> Result<()> {
    if n == 0 {
        return Err(Error::NonTreeAdjacency("no regions".into()));
    }
    let mut uf = UnionFind::new(n);
    for e in edges {
        if e.a >= n || e.b >= n {
            return Err(Error::NonTreeAdjacency(format!("edge {}-{} refers to a missing region", e.a, e.b)));
        }
        if !uf.union(e.a, e.b) {
            return Err(Error::NonTreeAdjacency(format!("edge {}-{} closes a cycle", e.a, e.b)));
        }
    }
    if edges.len() + 1 != n {
        return Err(Error::NonTreeAdjacency(format!("{} regions but {} edges: graph is disconnected", n, edges.len())));
    }
    Ok(())
}

impl RegionTree {
    /// A tree given directly: per-cell labels (ignored outside `mask`), the
    /// edge list and a root. Used for synthetic instances.
    pub fn from_parts(
        grid: GridSpec,
        mask: Vec<bool>,
        labels: Vec<usize>,
        region_count: usize,
        edges: Vec<TreeEdge>,
        root: usize,
        aniso: Anisotropy,
    ) -> Result<Self> {
        if mask.len() != grid.len() || labels.len() != grid.len() {
            return Err(Error::InvalidParameter("label raster does not match the grid".into()));
        }
        if root >= region_count {
            return Err(Error::InvalidParameter(format!("root {root} out of range")));
        }
        check_tree(region_count, &edges)?;
        let (hx, hy) = grid.cell_size();
        let mut regions = alloc::vec![RegionInfo { cells: 0, area: 0.0 }; region_count];
        for (k, &l) in labels.iter().enumerate() {
            if !mask[k] {
                continue;
            }
            if l >= region_count {
                return Err(Error::InvalidParameter(format!("cell label {l} out of range")));
            }
            regions[l].cells += 1;
        }
        for r in &mut regions {
            r.area = r.cells as f64 * hx * hy;
        }
        Ok(RegionTree { regions, edges, root, surfaces: Vec::new(), grid, mask, labels, aniso, residual_tol: 0.0 })
    }

    /// Faces cut out by non-crossing jump chords, labelled on the grid of `like`.
    ///
    /// Faces are told apart by which side of every chord they lie on; each chord
    /// joins the faces just to its right and left. The root is the face with
    /// the most cells.
    pub fn from_surfaces(
        grid: GridSpec,
        mask: Vec<bool>,
        aniso: Anisotropy,
        surfaces: Vec<JumpSurface>,
    ) -> Result<Self> {
        if mask.len() != grid.len() {
            return Err(Error::InvalidParameter("mask does not match the grid".into()));
        }
        let words = surfaces.len().div_ceil(64).max(1);
        let signature = |p: Point, forced: Option<(usize, bool)>| -> Vec<u64> {
            let mut sig = alloc::vec![0u64; words];
            for (s, surf) in surfaces.iter().enumerate() {
                let left = match forced {
                    Some((fs, side)) if fs == s => side,
                    _ => orient(surf.down, surf.up, p) >= 0.0,
                };
                if left {
                    sig[s / 64] |= 1 << (s % 64);
                }
            }
            sig
        };
        let mut ids: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        let intern = |sig: Vec<u64>, ids: &mut BTreeMap<Vec<u64>, usize>| {
            let next = ids.len();
            *ids.entry(sig).or_insert(next)
        };
        let mut labels = alloc::vec![usize::MAX; grid.len()];
        for k in 0..grid.len() {
            if mask[k] {
                let c = grid.cell_center(k % grid.width, k / grid.width);
                labels[k] = intern(signature(c, None), &mut ids);
            }
        }
        let mut edges = Vec::with_capacity(surfaces.len());
        for (s, surf) in surfaces.iter().enumerate() {
            let mid = surf.down.lerp(surf.up, 0.5);
            let a = intern(signature(mid, Some((s, false))), &mut ids);
            let b = intern(signature(mid, Some((s, true))), &mut ids);
            edges.push(TreeEdge { a, b, weight: surf.weight, surface: s });
        }
        let n = ids.len();
        let mut tree = Self::from_parts(grid, mask, labels, n, edges, 0, aniso)?;
        tree.root = largest(&tree.regions);
        tree.surfaces = surfaces;
        Ok(tree)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn residual_tolerance(&self) -> f64 {
        self.residual_tol
    }

    /// Sets the largest mean jump `continuous_part` tolerates across a surface.
    pub fn with_residual_tolerance(mut self, tol: f64) -> Self {
        self.residual_tol = tol;
        self
    }

    pub fn with_root(&self, root: usize) -> Result<Self> {
        if root >= self.regions.len() {
            return Err(Error::InvalidParameter(format!("root {root} out of range")));
        }
        let mut t = self.clone();
        t.root = root;
        Ok(t)
    }

    /// Signed path sums from the root: `+weight` crossing an edge from `a` to
    /// `b`, `−weight` the other way.
    pub fn path_values(&self) -> Vec<f64> {
        let n = self.regions.len();
        let mut adj: Vec<Vec<(usize, f64)>> = alloc::vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.a].push((e.b, e.weight));
            adj[e.b].push((e.a, -e.weight));
        }
        let mut value = alloc::vec![f64::NAN; n];
        value[self.root] = 0.0;
        let mut queue = VecDeque::from([self.root]);
        while let Some(r) = queue.pop_front() {
            for &(s, w) in &adj[r] {
                if value[s].is_nan() {
                    value[s] = value[r] + w;
                    queue.push_back(s);
                }
            }
        }
        value
    }
}

fn largest(regions: &[RegionInfo]) -> usize {
    let mut best = 0;
    for (i, r) in regions.iter().enumerate() {
        if r.cells > regions[best].cells {
            best = i;
        }
    }
    best
}

/// Chords shared by at least two consecutive kept levels, with the summed
/// band widths of the levels sharing them. Identical chords from separate
/// runs are merged.
pub fn detect_jump_surfaces(family: &SuperlevelFamily, threshold: f64) -> Vec<JumpSurface> {
    let same = |p: Point, q: Point| p.distance(q) <= CHORD_MATCH_TOL;
    // (down, up, run length, weight)
    let mut open: Vec<(Point, Point, usize, f64)> = Vec::new();
    let mut finished: Vec<(Point, Point, usize, f64)> = Vec::new();
    for level in &family.levels {
        let width = level.band.1 - level.band.0;
        let chords = level.matching.chords();
        let mut next = Vec::with_capacity(chords.len());
        for (d, u) in chords {
            match open.iter().position(|&(od, ou, _, _)| same(od, d) && same(ou, u)) {
                Some(i) => {
                    let (od, ou, len, w) = open.swap_remove(i);
                    next.push((od, ou, len + 1, w + width));
                }
                None => next.push((d, u, 1, width)),
            }
        }
        finished.append(&mut open);
        open = next;
    }
    finished.append(&mut open);
    let mut merged: Vec<JumpSurface> = Vec::new();
    for (d, u, len, w) in finished {
        if len < 2 {
            continue;
        }
        match merged.iter_mut().find(|s| same(s.down, d) && same(s.up, u)) {
            Some(s) => s.weight += w,
            None => merged.push(JumpSurface { down: d, up: u, weight: w }),
        }
    }
    merged.retain(|s| s.weight >= threshold);
    merged
}

/// Region tree of a reconstructed field. `jump_threshold` defaults (when
/// `None`) to a thousandth of the datum's range.
pub fn build_region_tree(
    field: &SolutionField,
    family: &SuperlevelFamily,
    jump_threshold: Option<f64>,
) -> Result<RegionTree> {
    let (lo, hi) = family.range();
    let threshold = jump_threshold.unwrap_or(DEFAULT_THRESHOLD_FRACTION * (hi - lo));
    if !(threshold > 0.0) {
        return Err(Error::InvalidParameter(format!("jump threshold {threshold} must be positive")));
    }
    let surfaces = detect_jump_surfaces(family, threshold);
    let quantum = family.levels.iter().map(|l| l.band.1 - l.band.0).fold(0.0, f64::max);
    let tree = RegionTree::from_surfaces(field.grid, field.mask.clone(), field.aniso, surfaces)?;
    Ok(tree.with_residual_tolerance(threshold + quantum))
}

/// Piecewise-constant field equal to the root path sum on every face.
pub fn jump_part(tree: &RegionTree) -> SolutionField {
    let values = tree.path_values();
    let raster = tree.labels.iter().zip(&tree.mask).map(|(&l, &m)| if m { values[l] } else { 0.0 }).collect();
    SolutionField::from_values(tree.grid, raster, tree.mask.clone(), tree.aniso)
}

/// `u − u_j`, checked for leftover jumps across every surface.
///
/// For each edge, grid neighbours straddling the surface are compared after
/// removing the slope extrapolated from the next cell on either side; a mean
/// remainder above the tree's residual tolerance means a jump was missed.
pub fn continuous_part(field: &SolutionField, tree: &RegionTree) -> Result<SolutionField> {
    if field.grid != tree.grid || field.mask != tree.mask {
        return Err(Error::Incomparable("field and region tree use different grids".into()));
    }
    let uj = jump_part(tree);
    let uc = field.map_with(&uj, |u, j| u - j)?;
    for (e_idx, e) in tree.edges.iter().enumerate() {
        if let Some(r) = mean_residual(&uc, tree, e) {
            if math::abs(r) > tree.residual_tol {
                return Err(Error::DecompositionIncomplete { surface: e_idx, residual: r });
            }
        }
    }
    Ok(uc)
}

fn mean_residual(uc: &SolutionField, tree: &RegionTree, e: &TreeEdge) -> Option<f64> {
    let g = &tree.grid;
    let (w, h) = (g.width as isize, g.height as isize);
    let label = |i: isize, j: isize| -> Option<usize> {
        if i < 0 || j < 0 || i >= w || j >= h {
            return None;
        }
        let k = (j * w + i) as usize;
        tree.mask[k].then(|| tree.labels[k])
    };
    let val = |i: isize, j: isize| uc.values[(j * w + i) as usize];
    let mut sum = 0.0;
    let mut count = 0usize;
    for j in 0..h {
        for i in 0..w {
            if label(i, j) != Some(e.a) {
                continue;
            }
            for (di, dj) in [(1isize, 0isize), (-1, 0), (0, 1), (0, -1)] {
                let (bi, bj) = (i + di, j + dj);
                if label(bi, bj) != Some(e.b) {
                    continue;
                }
                let (ai2, aj2) = (i - di, j - dj);
                let (bi2, bj2) = (bi + di, bj + dj);
                if label(ai2, aj2) != Some(e.a) || label(bi2, bj2) != Some(e.b) {
                    continue;
                }
                let delta = val(bi, bj) - val(i, j);
                let slope = 0.5 * ((val(i, j) - val(ai2, aj2)) + (val(bi2, bj2) - val(bi, bj)));
                sum += delta - slope;
                count += 1;
            }
        }
    }
    (count > 0).then(|| sum / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{ArcValue, BoundaryDatum};
    use crate::geometry::ConvexDomain;
    use crate::solver::{reconstruct, sweep, SweepOptions};

    fn grid64() -> (GridSpec, Vec<bool>, ConvexDomain) {
        let d = ConvexDomain::unit_disk();
        let g = GridSpec::covering(&d, 64, 64).unwrap();
        let mask = (0..g.len()).map(|k| d.contains(g.cell_center(k % 64, k / 64))).collect();
        (g, mask, d)
    }

    #[test]
    fn chain_path_sums() {
        let (g, mask, _) = grid64();
        let labels: Vec<usize> = (0..g.len()).map(|k| ((k % 64) * 3 / 64).min(2)).collect();
        let edges = alloc::vec![
            TreeEdge { a: 0, b: 1, weight: 1.0, surface: 0 },
            TreeEdge { a: 1, b: 2, weight: 2.0, surface: 1 },
        ];
        let t = RegionTree::from_parts(g, mask, labels, 3, edges, 0, Anisotropy::isotropic()).unwrap();
        assert_eq!(t.path_values(), [0.0, 1.0, 3.0]);
        let re = t.with_root(1).unwrap();
        assert_eq!(re.path_values(), [-1.0, 0.0, 2.0]);
    }

    #[test]
    fn single_region_is_zero() {
        let (g, mask, _) = grid64();
        let t = RegionTree::from_parts(g, mask, alloc::vec![0; g.len()], 1, Vec::new(), 0, Anisotropy::isotropic())
            .unwrap();
        let uj = jump_part(&t);
        assert!(uj.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn cycle_rejected() {
        let (g, mask, _) = grid64();
        let edges = alloc::vec![
            TreeEdge { a: 0, b: 1, weight: 1.0, surface: 0 },
            TreeEdge { a: 1, b: 2, weight: 1.0, surface: 1 },
            TreeEdge { a: 2, b: 0, weight: 1.0, surface: 2 },
        ];
        let r = RegionTree::from_parts(g, mask, alloc::vec![0; g.len()], 3, edges, 0, Anisotropy::isotropic());
        assert!(matches!(r, Err(Error::NonTreeAdjacency(_))));
    }

    #[test]
    fn scaled_chord_indicator() {
        let d = ConvexDomain::unit_disk();
        let f = BoundaryDatum::piecewise_constant(&[ArcValue { from: 0.5, to: 2.5, value: 2.5 }], 0.0).unwrap();
        let fam = sweep(&f, &d, Anisotropy::isotropic(), SweepOptions::default()).unwrap();
        let u = reconstruct(&fam, 96, 96).unwrap();
        let t = build_region_tree(&u, &fam, None).unwrap();
        assert_eq!(t.regions.len(), 2);
        assert_eq!(t.edges.len(), 1);
        assert!((t.edges[0].weight - 2.5).abs() < 1e-12);
        let uc = continuous_part(&u, &t).unwrap();
        let (lo, hi) = uc.masked_range();
        assert!(hi - lo < 1e-12);
    }

    #[test]
    fn staircase_chain() {
        let d = ConvexDomain::unit_disk();
        let f = BoundaryDatum::piecewise_constant(
            &[
                ArcValue { from: 0.2, to: 0.8, value: 1.0 },
                ArcValue { from: 0.8, to: 2.2, value: 3.0 },
                ArcValue { from: 2.2, to: 2.8, value: 1.0 },
            ],
            0.0,
        )
        .unwrap();
        let fam = sweep(&f, &d, Anisotropy::isotropic(), SweepOptions::default()).unwrap();
        let u = reconstruct(&fam, 128, 128).unwrap();
        let t = build_region_tree(&u, &fam, None).unwrap();
        assert_eq!(t.regions.len(), 3);
        let mut w: Vec<f64> = t.edges.iter().map(|e| e.weight).collect();
        w.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((w[0] - 1.0).abs() < 1e-12 && (w[1] - 2.0).abs() < 1e-12, "{w:?}");
        let mut vals = t.path_values();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] - 0.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12 && (vals[2] - 3.0).abs() < 1e-12);
        continuous_part(&u, &t).unwrap();
    }

    #[test]
    fn continuous_solution_has_no_jumps() {
        let d = ConvexDomain::unit_disk();
        let fam = sweep(&BoundaryDatum::brothers(0.0), &d, Anisotropy::isotropic(), SweepOptions::default()).unwrap();
        let u = reconstruct(&fam, 64, 64).unwrap();
        let t = build_region_tree(&u, &fam, None).unwrap();
        assert_eq!(t.regions.len(), 1);
        assert!(t.edges.is_empty());
        let uc = continuous_part(&u, &t).unwrap();
        assert_eq!(uc.values, u.values);
    }

    #[test]
    fn missing_jump_is_reported() {
        let (g, mask, _) = grid64();
        // u jumps by 1 across x = 0 but the tree claims no jump there
        let values: Vec<f64> = (0..g.len()).map(|k| if k % 64 >= 32 { 1.0 } else { 0.0 }).collect();
        let u = SolutionField::from_values(g, values, mask.clone(), Anisotropy::isotropic());
        let labels: Vec<usize> = (0..g.len()).map(|k| usize::from(k % 64 >= 32)).collect();
        let edges = alloc::vec![TreeEdge { a: 0, b: 1, weight: 0.0, surface: 0 }];
        let t = RegionTree::from_parts(g, mask, labels, 2, edges, 0, Anisotropy::isotropic())
            .unwrap()
            .with_residual_tolerance(1e-3);
        assert!(matches!(continuous_part(&u, &t), Err(Error::DecompositionIncomplete { .. })));
    }
}
