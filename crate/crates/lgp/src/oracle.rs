//! Brute-force references and seeded random instances.

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use lgp_core::boundary::{CrossingSet, Direction};
use lgp_core::geometry::chord_cost;
use lgp_core::matching::{matching_cost, min_matching};
use lgp_core::{Anisotropy, BoundaryDatum, ConvexDomain, Point};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const ORACLE_SIZES: [usize; 5] = [2, 4, 6, 8, 10];
pub const ORACLE_EXPONENTS: [f64; 5] = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` sorted angles at least `gap` apart (cyclically).
pub fn random_angles(rng: &mut impl Rng, n: usize, gap: f64) -> Vec<f64> {
    loop {
        let mut t: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        t.sort_by(f64::total_cmp);
        let ok = t.windows(2).all(|w| w[1] - w[0] >= gap) && (n < 2 || t[0] + TAU - t[n - 1] >= gap);
        if ok {
            return t;
        }
    }
}

pub fn random_crossings(rng: &mut impl Rng, n: usize) -> CrossingSet {
    let thetas = random_angles(rng, n, 1e-3);
    let first = if rng.gen_bool(0.5) { Direction::Up } else { Direction::Down };
    CrossingSet::alternating(0.0, &thetas, first)
}

fn segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool {
    let side = |p: Point, q: Point, r: Point| (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    let (d1, d2) = (side(a, b, c), side(a, b, d));
    let (d3, d4) = (side(c, d, a), side(c, d, b));
    d1 * d2 <= 0.0 && d3 * d4 <= 0.0
}

/// Minimum over all perfect matchings of `points` whose chords are pairwise
/// disjoint, by exhaustive search. Costs are summed by [`matching_cost`] so the
/// result is comparable bit for bit.
pub fn brute_force_min(points: &[Point], aniso: Anisotropy) -> Option<(f64, Vec<(usize, usize)>)> {
    fn rec(
        points: &[Point],
        free: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize)>,
        aniso: Anisotropy,
        best: &mut Option<(f64, Vec<(usize, usize)>)>,
    ) {
        if free.is_empty() {
            let c = matching_cost(points, pairs, aniso);
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                *best = Some((c, pairs.clone()));
            }
            return;
        }
        let i = free.remove(0);
        for k in 0..free.len() {
            let j = free[k];
            let clash = pairs.iter().any(|&(p, q)| segments_touch(points[i], points[j], points[p], points[q]));
            if clash {
                continue;
            }
            free.remove(k);
            pairs.push((i.min(j), i.max(j)));
            rec(points, free, pairs, aniso, best);
            pairs.pop();
            free.insert(k, j);
        }
        free.insert(0, i);
    }
    if points.len() % 2 == 1 {
        return None;
    }
    let mut best = None;
    rec(points, &mut (0..points.len()).collect(), &mut Vec::new(), aniso, &mut best);
    best
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleMismatch {
    pub trial: usize,
    pub n: usize,
    pub p: f64,
    pub dp: f64,
    pub brute: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub trials: usize,
    pub mismatches: Vec<OracleMismatch>,
    pub elapsed: Duration,
}

/// Compares the dynamic program against [`brute_force_min`] on random
/// alternating crossing sets on the unit circle, cycling through
/// [`ORACLE_SIZES`] and [`ORACLE_EXPONENTS`].
pub fn run_match_oracle(trials: usize, seed: u64) -> lgp_core::Result<OracleReport> {
    let start = Instant::now();
    let mut rng = rng(seed);
    let domain = ConvexDomain::unit_disk();
    let mut mismatches = Vec::new();
    for trial in 0..trials {
        let n = ORACLE_SIZES[trial % ORACLE_SIZES.len()];
        let p = ORACLE_EXPONENTS[(trial / ORACLE_SIZES.len()) % ORACLE_EXPONENTS.len()];
        let aniso = Anisotropy::new(p)?;
        let cs = random_crossings(&mut rng, n);
        let points: Vec<Point> = cs.crossings.iter().map(|c| domain.boundary_point(c.theta)).collect();
        let dp = min_matching(&cs, &domain, aniso)?;
        let brute = brute_force_min(&points, aniso).map_or(f64::NAN, |b| b.0);
        if dp.cost != brute {
            mismatches.push(OracleMismatch { trial, n, p, dp: dp.cost, brute });
        }
    }
    Ok(OracleReport { trials, mismatches, elapsed: start.elapsed() })
}

/// Random trigonometric polynomial of degree ≤ `degree` with decaying coefficients.
pub fn random_smooth_datum(rng: &mut impl Rng, degree: usize) -> lgp_core::Result<BoundaryDatum> {
    let a: Vec<f64> = (1..=degree).map(|k| rng.gen_range(-1.0..1.0) / k as f64).collect();
    let b: Vec<f64> = (1..=degree).map(|k| rng.gen_range(-1.0..1.0) / k as f64).collect();
    BoundaryDatum::analytic("random trigonometric polynomial", lgp_core::boundary::DEFAULT_RESOLUTION, move |t| {
        a.iter()
            .zip(&b)
            .enumerate()
            .map(|(k, (ak, bk))| {
                let x = (k + 1) as f64 * t;
                ak * x.cos() + bk * x.sin()
            })
            .sum()
    })
}

/// Cheapest route from `a` to `b` through at most `hops − 1` of `via`.
pub fn cheapest_polyline(a: Point, b: Point, via: &[Point], hops: usize, aniso: Anisotropy) -> f64 {
    // best[k]: cheapest cost from a to via[k] so far
    let mut best: Vec<f64> = via.iter().map(|&v| chord_cost(a, v, aniso)).collect();
    let mut answer = chord_cost(a, b, aniso);
    for _ in 1..hops {
        for (k, &v) in via.iter().enumerate() {
            answer = answer.min(best[k] + chord_cost(v, b, aniso));
        }
        let next: Vec<f64> = via
            .iter()
            .map(|&w| via.iter().zip(&best).map(|(&v, &c)| c + chord_cost(v, w, aniso)).fold(f64::INFINITY, f64::min))
            .collect();
        best = next;
    }
    answer
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_counts_catalan() {
        // the square's two sides beat its diagonals, which cross anyway
        let pts = [Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0), Point::new(0.0, -1.0)];
        let (c, pairs) = brute_force_min(&pts, Anisotropy::isotropic()).unwrap();
        assert!((c - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!(pairs == [(0, 1), (2, 3)] || pairs == [(0, 3), (1, 2)]);
        assert!(brute_force_min(&pts[..3], Anisotropy::isotropic()).is_none());
    }

    #[test]
    fn oracle_agrees_on_a_small_run() {
        let r = run_match_oracle(50, 7).unwrap();
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_angles(&mut rng(3), 6, 0.01);
        let b = random_angles(&mut rng(3), 6, 0.01);
        assert_eq!(a, b);
    }

    #[test]
    fn polyline_never_beats_chord() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.5);
        let via: Vec<Point> =
            (0..5).flat_map(|i| (0..5).map(move |j| Point::new(i as f64 * 0.25, j as f64 * 0.2))).collect();
        let aniso = Anisotropy::new(3.0).unwrap();
        assert!(cheapest_polyline(a, b, &via, 4, aniso) >= chord_cost(a, b, aniso) * (1.0 - 1e-15));
    }
}
