//! Minimal non-crossing chord systems for one level.
//!
//! Crossings of a level lie in cyclic order on the boundary, so non-crossing
//! perfect matchings are the balanced parenthesizations of the sequence and an
//! interval dynamic program finds the cheapest one in `O(n³)`. Near-optimal
//! alternatives are enumerated by branch and bound against the same table.

use alloc::vec::Vec;

use crate::boundary::{CrossingSet, Direction};
use crate::geometry::{chord_cost, Anisotropy, ConvexDomain, Point};
use crate::math;
use crate::{Error, Result};

/// Relative cost tolerance under which two matchings count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Default cap on the number of optimal matchings returned per level.
pub const ENUMERATION_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct LevelMatching {
    pub level: f64,
    pub crossings: CrossingSet,
    /// Index pairs `(i, j)` with `i < j`, sorted by `i`.
    pub pairs: Vec<(usize, usize)>,
    pub cost: f64,
    pub enclosed_area: f64,
    /// `γ(θ)` of every crossing.
    pub points: Vec<Point>,
}

impl LevelMatching {
    /// Chords as `(down endpoint, up endpoint)`, the orientation that keeps the
    /// superlevel region on the left.
    pub fn chords(&self) -> Vec<(Point, Point)> {
        self.oriented_pairs().into_iter().map(|(d, u)| (self.points[d], self.points[u])).collect()
    }

    /// Pairs reordered as `(down index, up index)`.
    pub fn oriented_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .map(|&(i, j)| if self.crossings.crossings[i].direction == Direction::Down { (i, j) } else { (j, i) })
            .collect()
    }

    /// Boundary arcs `(θ_up, θ_down)` where `f ≥ t`, counterclockwise.
    pub fn boundary_arcs(&self) -> Vec<(f64, f64)> {
        arcs_of(&self.crossings)
    }
}

/// Optimal matchings of one level, best area first.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimalSet {
    pub matchings: Vec<LevelMatching>,
    /// More optima exist than the cap allowed to return.
    pub overflow: bool,
}

fn arcs_of(cs: &CrossingSet) -> Vec<(f64, f64)> {
    let n = cs.crossings.len();
    (0..n)
        .filter(|&i| cs.crossings[i].direction == Direction::Up)
        .map(|i| (cs.crossings[i].theta, cs.crossings[(i + 1) % n].theta))
        .collect()
}

/// True when no two index pairs interleave.
pub fn is_non_crossing(pairs: &[(usize, usize)]) -> bool {
    let norm = |&(a, b): &(usize, usize)| if a < b { (a, b) } else { (b, a) };
    for (k, p) in pairs.iter().enumerate() {
        let (a, b) = norm(p);
        for q in &pairs[k + 1..] {
            let (c, d) = norm(q);
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return false;
            }
        }
    }
    true
}

/// Sum of chord costs in pair order; every cost reported by this module goes
/// through here so equal matchings give bit-identical totals.
pub fn matching_cost(points: &[Point], pairs: &[(usize, usize)], aniso: Anisotropy) -> f64 {
    let mut sorted: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
    sorted.sort_unstable();
    sorted.iter().map(|&(i, j)| chord_cost(points[i], points[j], aniso)).sum()
}

/// Area of the region bounded by the `f ≥ t` arcs and the matched chords.
pub fn enclosed_area(domain: &ConvexDomain, cs: &CrossingSet, points: &[Point], pairs: &[(usize, usize)]) -> f64 {
    let arcs: f64 = arcs_of(cs).iter().map(|&(u, d)| domain.arc_area_integral(u, d)).sum();
    let chords: f64 = pairs
        .iter()
        .map(|&(i, j)| {
            let (d, u) = if cs.crossings[i].direction == Direction::Down { (i, j) } else { (j, i) };
            0.5 * points[d].cross(points[u])
        })
        .sum();
    arcs + chords
}

struct Problem<'a> {
    cs: &'a CrossingSet,
    domain: &'a ConvexDomain,
    aniso: Anisotropy,
    points: Vec<Point>,
    n: usize,
    cost: Vec<f64>,
    // best[i * (n + 1) + j]: cheapest matching of the half-open index range [i, j)
    best: Vec<f64>,
}

impl<'a> Problem<'a> {
    fn new(cs: &'a CrossingSet, domain: &'a ConvexDomain, aniso: Anisotropy) -> Result<Self> {
        cs.validate()?;
        let n = cs.len();
        let points: Vec<Point> = cs.crossings.iter().map(|c| domain.boundary_point(c.theta)).collect();
        let mut cost = alloc::vec![f64::INFINITY; n * n];
        for i in 0..n {
            for j in (i + 1..n).step_by(2) {
                let c = chord_cost(points[i], points[j], aniso);
                cost[i * n + j] = c;
                cost[j * n + i] = c;
            }
        }
        let w = n + 1;
        let mut best = alloc::vec![f64::INFINITY; w * w];
        for i in 0..=n {
            best[i * w + i] = 0.0;
        }
        for len in (2..=n).step_by(2) {
            for i in 0..=n - len {
                let j = i + len;
                let mut m = f64::INFINITY;
                for k in (i + 1..j).step_by(2) {
                    let c = cost[i * n + k] + best[(i + 1) * w + k] + best[(k + 1) * w + j];
                    if c < m {
                        m = c;
                    }
                }
                best[i * w + j] = m;
            }
        }
        Ok(Problem { cs, domain, aniso, points, n, cost, best })
    }

    fn optimum(&self) -> f64 {
        self.best[self.n]
    }

    fn range_best(&self, i: usize, j: usize) -> f64 {
        self.best[i * (self.n + 1) + j]
    }

    /// All matchings with DP cost ≤ `budget`, stopping once `cap + 1` are found.
    fn enumerate(&self, budget: f64, cap: usize) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        let mut pairs = Vec::with_capacity(self.n / 2);
        let mut stack = alloc::vec![(0usize, self.n)];
        self.dfs(&mut stack, 0.0, budget, &mut pairs, &mut out, cap);
        out
    }

    fn dfs(
        &self,
        stack: &mut Vec<(usize, usize)>,
        spent: f64,
        budget: f64,
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
        cap: usize,
    ) {
        if out.len() > cap {
            return;
        }
        let Some((i, j)) = stack.pop() else {
            let mut p = pairs.clone();
            p.sort_unstable();
            out.push(p);
            return;
        };
        if i == j {
            self.dfs(stack, spent, budget, pairs, out, cap);
            stack.push((i, j));
            return;
        }
        let pending: f64 = stack.iter().map(|&(a, b)| self.range_best(a, b)).sum();
        for k in (i + 1..j).step_by(2) {
            let c = spent + self.cost[i * self.n + k];
            let bound = c + self.range_best(i + 1, k) + self.range_best(k + 1, j) + pending;
            if bound > budget {
                continue;
            }
            pairs.push((i, k));
            stack.push((k + 1, j));
            stack.push((i + 1, k));
            self.dfs(stack, c, budget, pairs, out, cap);
            stack.pop();
            stack.pop();
            pairs.pop();
            if out.len() > cap {
                break;
            }
        }
        stack.push((i, j));
    }

    fn build(&self, pairs: Vec<(usize, usize)>) -> LevelMatching {
        let cost = matching_cost(&self.points, &pairs, self.aniso);
        let enclosed_area = enclosed_area(self.domain, self.cs, &self.points, &pairs);
        LevelMatching {
            level: self.cs.level,
            crossings: self.cs.clone(),
            pairs,
            cost,
            enclosed_area,
            points: self.points.clone(),
        }
    }

    /// Matchings within `rel_tol` of the optimum, largest area first.
    fn optimal_set(&self, rel_tol: f64, cap: usize) -> OptimalSet {
        let opt = self.optimum();
        // absolute slack absorbs summation-order rounding between DP and canonical costs
        let slack = 64.0 * f64::EPSILON * (opt + 1.0) * self.n.max(1) as f64;
        let found = self.enumerate(opt * (1.0 + rel_tol) + slack, cap);
        let mut matchings: Vec<LevelMatching> = found.into_iter().map(|p| self.build(p)).collect();
        let best = matchings.iter().map(|m| m.cost).fold(f64::INFINITY, f64::min);
        matchings.retain(|m| m.cost <= best * (1.0 + rel_tol));
        let overflow = matchings.len() > cap;
        sort_by_area(&mut matchings);
        matchings.truncate(cap);
        OptimalSet { matchings, overflow }
    }
}

fn sort_by_area(ms: &mut [LevelMatching]) {
    ms.sort_by(|a, b| {
        b.enclosed_area
            .partial_cmp(&a.enclosed_area)
            .unwrap()
            .then(a.cost.partial_cmp(&b.cost).unwrap())
            .then_with(|| a.pairs.cmp(&b.pairs))
    });
}

/// Cheapest non-crossing perfect matching; cost ties within [`TIE_TOLERANCE`]
/// go to the largest enclosed area.
pub fn min_matching(cs: &CrossingSet, domain: &ConvexDomain, aniso: Anisotropy) -> Result<LevelMatching> {
    let problem = Problem::new(cs, domain, aniso)?;
    let set = problem.optimal_set(TIE_TOLERANCE, ENUMERATION_CAP);
    Ok(set.matchings.into_iter().next().expect("a perfect matching always exists"))
}

/// Every matching with cost ≤ `(1 + rel_tol)·min`, sorted by enclosed area descending.
pub fn enumerate_optimal(
    cs: &CrossingSet,
    domain: &ConvexDomain,
    aniso: Anisotropy,
    rel_tol: f64,
) -> Result<OptimalSet> {
    enumerate_optimal_capped(cs, domain, aniso, rel_tol, ENUMERATION_CAP)
}

pub fn enumerate_optimal_capped(
    cs: &CrossingSet,
    domain: &ConvexDomain,
    aniso: Anisotropy,
    rel_tol: f64,
    cap: usize,
) -> Result<OptimalSet> {
    if !(rel_tol >= 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("relative tolerance {rel_tol} must be non-negative")));
    }
    if cap == 0 {
        return Err(Error::InvalidParameter("enumeration cap must be positive".into()));
    }
    Ok(Problem::new(cs, domain, aniso)?.optimal_set(rel_tol, cap))
}

/// Whether a non-segment curve of equal φ-length joins `a` and `b`.
pub fn admits_witness(a: Point, b: Point, aniso: Anisotropy) -> bool {
    let d = b - a;
    if aniso.p() == 1.0 {
        d.x != 0.0 && d.y != 0.0
    } else if aniso.is_infinite() {
        math::abs(d.x) != math::abs(d.y)
    } else {
        false
    }
}

fn witness_regime(aniso: Anisotropy) -> Result<()> {
    if aniso.p() == 1.0 || aniso.is_infinite() {
        Ok(())
    } else {
        Err(Error::SegmentsOnly(aniso.p()))
    }
}

/// A `k`-step monotone staircase (`p = 1`) or slope-bounded zigzag (`p = ∞`)
/// from `a` to `b` with the same φ-length as the chord.
pub fn staircase_witness(a: Point, b: Point, aniso: Anisotropy, k: usize) -> Result<Vec<Point>> {
    witness_regime(aniso)?;
    if k == 0 {
        return Err(Error::InvalidParameter("staircase needs at least one step".into()));
    }
    let d = b - a;
    let kf = k as f64;
    let mut pts = Vec::with_capacity(3 * k + 1);
    pts.push(a);
    if aniso.p() == 1.0 {
        for i in 1..=k {
            let x = a.x + d.x * (i as f64 / kf);
            let prev_y = pts.last().unwrap().y;
            pts.push(Point::new(x, prev_y));
            let y = if i == k { b.y } else { a.y + d.y * (i as f64 / kf) };
            pts.push(Point::new(if i == k { b.x } else { x }, y));
        }
        return Ok(pts);
    }
    // Work in (major, minor) coordinates. Each step rises with slope ±1,
    // falls back with slope ∓1 and finishes flat; the φ-length of every piece
    // is its major extent.
    let swap = math::abs(d.y) > math::abs(d.x);
    let (major, minor) = if swap { (d.y, d.x) } else { (d.x, d.y) };
    let big = math::abs(major);
    let small = math::abs(minor);
    let (sj, sn) = (sign(major), sign(minor));
    let fall = (big - small) / (4.0 * kf);
    let rise = fall + small / kf;
    let to_point = |u: f64, v: f64| if swap { a + Point::new(v, u) } else { a + Point::new(u, v) };
    let (mut u, mut v) = (0.0, 0.0);
    for i in 0..k {
        u += sj * rise;
        v += sn * rise;
        pts.push(to_point(u, v));
        u += sj * fall;
        v -= sn * fall;
        pts.push(to_point(u, v));
        if i + 1 == k {
            pts.push(b);
        } else {
            u = major * ((i + 1) as f64 / kf);
            v = minor * ((i + 1) as f64 / kf);
            pts.push(to_point(u, v));
        }
    }
    Ok(pts)
}

fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// A single-bend curve from `a` to `b` of chord φ-length, bending toward the
/// side of the chord containing `toward`: the bounding-box corner for `p = 1`,
/// a slope-one tent for `p = ∞`.
pub fn bend_witness(a: Point, b: Point, aniso: Anisotropy, toward: Point) -> Result<Vec<Point>> {
    witness_regime(aniso)?;
    let side = sign(crate::geometry::orient(a, b, toward));
    let d = b - a;
    let corner = if aniso.p() == 1.0 {
        let c1 = Point::new(b.x, a.y);
        let c2 = Point::new(a.x, b.y);
        if sign(crate::geometry::orient(a, b, c1)) == side {
            c1
        } else {
            c2
        }
    } else {
        let mid = a.lerp(b, 0.5);
        let swap = math::abs(d.y) > math::abs(d.x);
        let lift = 0.5 * (math::abs(if swap { d.y } else { d.x }) - math::abs(if swap { d.x } else { d.y }));
        let offset = if swap { Point::new(lift, 0.0) } else { Point::new(0.0, lift) };
        let c1 = mid + offset;
        if sign(crate::geometry::orient(a, b, c1)) == side {
            c1
        } else {
            mid - offset
        }
    };
    Ok(alloc::vec![a, corner, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryDatum;
    use crate::geometry::polyline_cost;
    use core::f64::consts::{FRAC_PI_6, PI};

    fn all_matchings(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return alloc::vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in (lo + 1..hi).step_by(2) {
            for inner in all_matchings(lo + 1, k) {
                for outer in all_matchings(k + 1, hi) {
                    let mut m = alloc::vec![(lo, k)];
                    m.extend(inner.iter().copied());
                    m.extend(outer.iter().copied());
                    out.push(m);
                }
            }
        }
        out
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(all_matchings(0, 6).len(), 5);
        assert_eq!(all_matchings(0, 10).len(), 42);
    }

    #[test]
    fn two_crossings_single_chord() {
        let cs = CrossingSet::alternating(0.5, &[0.3, 2.0], Direction::Up);
        let m = min_matching(&cs, &ConvexDomain::unit_disk(), Anisotropy::isotropic()).unwrap();
        assert_eq!(m.pairs, [(0, 1)]);
        assert!((m.cost - 2.0 * (0.85f64).sin()).abs() < 1e-15);
        let set = enumerate_optimal(&cs, &ConvexDomain::unit_disk(), Anisotropy::isotropic(), 0.0).unwrap();
        assert_eq!(set.matchings.len(), 1);
    }

    #[test]
    fn brothers_half_level_vertical_chords() {
        let f = BoundaryDatum::brothers(0.0);
        let cs = f.level_crossings(0.5).unwrap();
        let m = min_matching(&cs, &ConvexDomain::unit_disk(), Anisotropy::isotropic()).unwrap();
        assert!((m.cost - 2.0).abs() < 1e-10);
        for (d, u) in m.chords() {
            assert!((d.x - u.x).abs() < 1e-10);
        }
        let thetas: Vec<f64> = cs.crossings.iter().map(|c| c.theta).collect();
        assert!((thetas[0] - FRAC_PI_6).abs() < 1e-11);
        assert!((thetas[3] - (2.0 * PI - FRAC_PI_6)).abs() < 1e-11);
        // region {cos 2θ ≥ 1/2} keeps the two caps near θ = 0 and θ = π
        let cap = FRAC_PI_6 * 2.0 - (2.0 * FRAC_PI_6).sin();
        assert!((m.enclosed_area - cap).abs() < 1e-9, "{}", m.enclosed_area);
    }

    #[test]
    fn dp_matches_brute_force() {
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let domain = ConvexDomain::unit_disk();
        for trial in 0..200 {
            let n = 2 * (1 + trial % 5);
            let mut thetas: Vec<f64> = (0..n).map(|_| next() * 2.0 * PI).collect();
            thetas.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let cs = CrossingSet::alternating(0.0, &thetas, Direction::Up);
            let aniso = Anisotropy::new([1.0, 1.5, 2.0, 3.0, f64::INFINITY][trial % 5]).unwrap();
            let m = min_matching(&cs, &domain, aniso).unwrap();
            let pts: Vec<Point> = thetas.iter().map(|&t| domain.boundary_point(t)).collect();
            let brute = all_matchings(0, n).iter().map(|p| matching_cost(&pts, p, aniso)).fold(f64::INFINITY, f64::min);
            assert_eq!(m.cost, brute, "trial {trial}");
            assert!(is_non_crossing(&m.pairs));
        }
    }

    #[test]
    fn area_of_half_disk() {
        let cs = CrossingSet::alternating(0.0, &[0.0, PI], Direction::Up);
        let m = min_matching(&cs, &ConvexDomain::unit_disk(), Anisotropy::isotropic()).unwrap();
        assert!((m.enclosed_area - PI / 2.0).abs() < 1e-12);
        let flipped = CrossingSet::alternating(0.0, &[0.0, PI], Direction::Down);
        let m2 = min_matching(&flipped, &ConvexDomain::unit_disk(), Anisotropy::isotropic()).unwrap();
        assert!((m2.enclosed_area - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn square_tie_prefers_larger_area() {
        // four crossings at the corners of an inscribed square: both pairings cost 2√2
        let q = PI / 2.0;
        let cs = CrossingSet::alternating(0.0, &[0.25, 0.25 + q, 0.25 + 2.0 * q, 0.25 + 3.0 * q], Direction::Up);
        let d = ConvexDomain::unit_disk();
        let set = enumerate_optimal(&cs, &d, Anisotropy::isotropic(), TIE_TOLERANCE).unwrap();
        assert_eq!(set.matchings.len(), 2);
        assert!(set.matchings[0].enclosed_area > set.matchings[1].enclosed_area);
        let m = min_matching(&cs, &d, Anisotropy::isotropic()).unwrap();
        assert_eq!(m.pairs, set.matchings[0].pairs);
    }

    #[test]
    fn malformed_input_rejected() {
        let cs = CrossingSet::alternating(0.0, &[0.1, 0.2, 0.3], Direction::Up);
        assert!(matches!(
            min_matching(&cs, &ConvexDomain::unit_disk(), Anisotropy::isotropic()),
            Err(Error::MalformedCrossingSet(_))
        ));
    }

    #[test]
    fn enumeration_cap_sets_overflow() {
        // a loose tolerance admits all 132 non-crossing matchings of 12 points
        let thetas: Vec<f64> = (0..12).map(|i| 0.1 + i as f64 * PI / 6.0).collect();
        let cs = CrossingSet::alternating(0.0, &thetas, Direction::Up);
        let all = enumerate_optimal_capped(&cs, &ConvexDomain::unit_disk(), Anisotropy::taxicab(), 1e9, 1000).unwrap();
        let capped = enumerate_optimal_capped(&cs, &ConvexDomain::unit_disk(), Anisotropy::taxicab(), 1e9, 3).unwrap();
        assert_eq!(all.matchings.len(), 132);
        assert!(capped.overflow);
        assert_eq!(capped.matchings.len(), 3);
    }

    #[test]
    fn staircase_examples() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(2.0, 1.0);
        let s1 = staircase_witness(a, b, Anisotropy::taxicab(), 2).unwrap();
        assert_eq!(polyline_cost(&s1, Anisotropy::taxicab()).unwrap(), 3.0);
        let sinf = staircase_witness(a, b, Anisotropy::maximum(), 2).unwrap();
        assert!((polyline_cost(&sinf, Anisotropy::maximum()).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(*sinf.last().unwrap(), b);
        // slopes are ±1 or 0
        for w in sinf.windows(2) {
            let d = w[1] - w[0];
            assert!(d.y.abs() < 1e-15 || (d.y.abs() - d.x.abs()).abs() < 1e-12, "{d:?}");
        }
        assert_eq!(staircase_witness(a, b, Anisotropy::isotropic(), 2), Err(Error::SegmentsOnly(2.0)));
    }

    #[test]
    fn bend_examples() {
        let a = Point::new(1.0, 0.0);
        let b = Point::new(0.0, 1.0);
        let toward = Point::new(0.0, 0.0);
        let l = bend_witness(a, b, Anisotropy::taxicab(), toward).unwrap();
        assert_eq!(l[1], Point::new(0.0, 0.0));
        let a = Point::new(-1.0, 0.2);
        let b = Point::new(1.0, 0.4);
        let t = bend_witness(a, b, Anisotropy::maximum(), toward).unwrap();
        assert!(t[1].y < 0.3);
        assert!((polyline_cost(&t, Anisotropy::maximum()).unwrap() - 2.0).abs() < 1e-12);
        assert!(admits_witness(a, b, Anisotropy::maximum()));
        assert!(!admits_witness(Point::new(0.0, 0.0), Point::new(1.0, -1.0), Anisotropy::maximum()));
        assert!(!admits_witness(a, b, Anisotropy::new(3.0).unwrap()));
    }
}
