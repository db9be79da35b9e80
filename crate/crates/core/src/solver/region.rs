//! Point location and containment for regions bounded by boundary arcs and
//! interior curves.

use alloc::vec::Vec;

use crate::geometry::{
    ccw_angle, point_segment_distance, segments_cross, segments_intersect, signed_angle, ConvexDomain, Point,
};
use crate::math::{self, TAU};

/// Distance under which a point counts as lying on a region's interior boundary.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Outside,
    /// Within [`BOUNDARY_TOL`] of an interior curve; part of the closure.
    Boundary,
}

impl Location {
    pub fn in_closure(self) -> bool {
        self != Location::Outside
    }
}

/// `{f ≥ t}` for one level: counterclockwise boundary arcs `(θ_up, θ_down)`
/// closed up by polylines running from a down crossing to an up crossing.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionShape {
    pub arcs: Vec<(f64, f64)>,
    arc_ends: Vec<(Point, Point)>,
    pub curves: Vec<Vec<Point>>,
    // bounding box of all interior curves, for a cheap boundary-distance reject
    curve_box: (Point, Point),
    // per curve: largest distance of a vertex from the segment joining its ends
    spans: Vec<f64>,
}

fn ends(c: &[Point]) -> (Point, Point) {
    (c[0], c[c.len() - 1])
}

fn segment_distance(a: (Point, Point), b: (Point, Point)) -> f64 {
    if segments_intersect(a.0, a.1, b.0, b.1, 0.0) {
        return 0.0;
    }
    point_segment_distance(a.0, b.0, b.1)
        .min(point_segment_distance(a.1, b.0, b.1))
        .min(point_segment_distance(b.0, a.0, a.1))
        .min(point_segment_distance(b.1, a.0, a.1))
}

impl RegionShape {
    pub fn new(domain: &ConvexDomain, arcs: Vec<(f64, f64)>, curves: Vec<Vec<Point>>) -> Self {
        let arc_ends = arcs.iter().map(|&(u, d)| (domain.boundary_point(u), domain.boundary_point(d))).collect();
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in curves.iter().flatten() {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let spans = curves
            .iter()
            .map(|c| {
                let (a, b) = ends(c);
                c.iter().map(|&p| point_segment_distance(p, a, b)).fold(0.0, f64::max)
            })
            .collect();
        RegionShape { arcs, arc_ends, curves, curve_box: (lo, hi), spans }
    }

    fn near_curve(&self, x: Point) -> bool {
        let (lo, hi) = self.curve_box;
        if x.x < lo.x - BOUNDARY_TOL
            || x.x > hi.x + BOUNDARY_TOL
            || x.y < lo.y - BOUNDARY_TOL
            || x.y > hi.y + BOUNDARY_TOL
        {
            return false;
        }
        self.curves.iter().zip(&self.spans).any(|(c, &span)| {
            let (a, b) = ends(c);
            point_segment_distance(x, a, b) <= span + BOUNDARY_TOL
                && c.windows(2).any(|w| point_segment_distance(x, w[0], w[1]) <= BOUNDARY_TOL)
        })
    }

    /// Winding-number location of a point of the closed domain.
    pub fn locate(&self, x: Point) -> Location {
        if self.near_curve(x) {
            return Location::Boundary;
        }
        let mut total = 0.0;
        for &(a, b) in &self.arc_ends {
            // seen from inside a convex domain the boundary turns monotonically
            total += ccw_angle(a - x, b - x);
        }
        for (c, &span) in self.curves.iter().zip(&self.spans) {
            let (a, b) = ends(c);
            if span == 0.0 || point_segment_distance(x, a, b) > span + BOUNDARY_TOL {
                // curve and chord bound no area around x: same winding
                total += signed_angle(a - x, b - x);
            } else {
                for w in c.windows(2) {
                    total += signed_angle(w[0] - x, w[1] - x);
                }
            }
        }
        if math::round(total / TAU) >= 1.0 {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    pub fn contains(&self, x: Point) -> bool {
        self.locate(x).in_closure()
    }

    /// Whether `self ⊆ other`, assuming `self` is the region of a higher level
    /// of the same datum: no interior curves cross, and no curve of `other`
    /// runs through the interior of `self`.
    pub fn is_contained_in(&self, other: &RegionShape) -> bool {
        for (ca, &sa) in self.curves.iter().zip(&self.spans) {
            for (cb, &sb) in other.curves.iter().zip(&other.spans) {
                if segment_distance(ends(ca), ends(cb)) > sa + sb {
                    continue;
                }
                for w in ca.windows(2) {
                    for v in cb.windows(2) {
                        if segments_cross(w[0], w[1], v[0], v[1]) {
                            return false;
                        }
                    }
                }
            }
        }
        for c in &other.curves {
            for w in c.windows(2) {
                if self.locate(w[0].lerp(w[1], 0.5)) == Location::Inside {
                    return false;
                }
            }
        }
        true
    }
}
