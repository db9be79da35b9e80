//! Planar geometry: strictly convex domains and `l^p` chord costs.

use alloc::format;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{self, TAU};
use crate::{Error, Result};

/// Minimum vertex count for polygonal domains.
pub const MIN_POLYGON_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the planar cross product.
    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        math::hypot(self.x, self.y)
    }

    #[inline]
    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    #[inline]
    pub fn lerp(self, other: Point, s: f64) -> Point {
        Point::new(self.x + (other.x - self.x) * s, self.y + (other.y - self.y) * s)
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// The planar `l^p` norm used as a uniform, x-independent metric integrand.
///
/// `p = f64::INFINITY` selects the maximum norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Anisotropy {
    p: f64,
}

impl Anisotropy {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidAnisotropy(p));
        }
        Ok(Anisotropy { p })
    }

    pub const fn isotropic() -> Self {
        Anisotropy { p: 2.0 }
    }

    pub const fn taxicab() -> Self {
        Anisotropy { p: 1.0 }
    }

    pub const fn maximum() -> Self {
        Anisotropy { p: f64::INFINITY }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_infinite(&self) -> bool {
        self.p == f64::INFINITY
    }

    /// True for `1 < p < ∞`, where minimal curves are segments only.
    pub fn is_smooth(&self) -> bool {
        self.p > 1.0 && self.p < f64::INFINITY
    }

    /// The `l^p` norm of `v`.
    pub fn norm(&self, v: Point) -> f64 {
        let ax = math::abs(v.x);
        let ay = math::abs(v.y);
        if self.p == 1.0 {
            ax + ay
        } else if self.p == 2.0 {
            math::hypot(ax, ay)
        } else if self.p == f64::INFINITY {
            ax.max(ay)
        } else {
            let m = ax.max(ay);
            if m == 0.0 {
                return 0.0;
            }
            let (rx, ry) = (ax / m, ay / m);
            m * math::powf(math::powf(rx, self.p) + math::powf(ry, self.p), 1.0 / self.p)
        }
    }

    /// Ellipticity and boundedness constants `(λ, Γ)` relative to the
    /// Euclidean norm: `λ|v| ≤ ‖v‖_p ≤ Γ|v|`.
    pub fn euclidean_bounds(&self) -> (f64, f64) {
        let inv = if self.is_infinite() { 0.0 } else { 1.0 / self.p };
        let c = math::powf(2.0, inv - 0.5);
        (c.min(1.0), c.max(1.0))
    }
}

impl Default for Anisotropy {
    fn default() -> Self {
        Anisotropy::isotropic()
    }
}

/// φ-length of the segment `a`–`b`; the least φ-perimeter of any curve
/// joining the two points.
pub fn chord_cost(a: Point, b: Point, aniso: Anisotropy) -> f64 {
    aniso.norm(b - a)
}

/// φ-length of a polyline, summed segment by segment.
pub fn polyline_cost(points: &[Point], aniso: Anisotropy) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::DegeneratePolyline);
    }
    Ok(points.windows(2).map(|w| chord_cost(w[0], w[1], aniso)).sum())
}

/// Twice the signed area of triangle `abc` (positive when counterclockwise).
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// Closed-segment intersection test. Points within `slack` count as touching.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point, slack: f64) -> bool {
    if point_segment_distance(a, c, d) <= slack
        || point_segment_distance(b, c, d) <= slack
        || point_segment_distance(c, a, b) <= slack
        || point_segment_distance(d, a, b) <= slack
    {
        return true;
    }
    segments_cross(a, b, c, d)
}

/// Proper crossing: the segments meet at a single point interior to both.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let s = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * s)
}

/// Signed angle in `(-π, π]` turning `u` onto `v`.
#[inline]
pub fn signed_angle(u: Point, v: Point) -> f64 {
    math::atan2(u.cross(v), u.dot(v))
}

/// Counterclockwise angle in `[0, 2π)` turning `u` onto `v`.
#[inline]
pub fn ccw_angle(u: Point, v: Point) -> f64 {
    let a = signed_angle(u, v);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DomainShape {
    Circle {
        center: Point,
        radius: f64,
    },
    Ellipse {
        center: Point,
        semi_axes: (f64, f64),
    },
    /// Counterclockwise vertices, parametrized by normalized arc length.
    Polygon {
        vertices: Vec<Point>,
    },
}

/// A bounded, strictly convex planar domain with a counterclockwise
/// parametrization `γ: [0, 2π) → ∂Ω`.
///
/// Circles and ellipses use the polar angle `θ ↦ c + (a cos θ, b sin θ)`;
/// polygons map `θ` to arc length `θ/2π · perimeter` from vertex 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexDomain {
    shape: DomainShape,
    // cumulative edge lengths for polygons, `cumulative[i]` = arc length at vertex i
    cumulative: Vec<f64>,
}

impl ConvexDomain {
    pub fn unit_disk() -> Self {
        ConvexDomain {
            shape: DomainShape::Circle { center: Point::new(0.0, 0.0), radius: 1.0 },
            cumulative: Vec::new(),
        }
    }

    pub fn circle(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.x.is_finite() || !center.y.is_finite() {
            return Err(Error::InvalidDomain(format!("circle radius {radius} must be positive")));
        }
        Ok(ConvexDomain { shape: DomainShape::Circle { center, radius }, cumulative: Vec::new() })
    }

    pub fn ellipse(center: Point, a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidDomain(format!("ellipse semi-axes ({a}, {b}) must be positive")));
        }
        Ok(ConvexDomain { shape: DomainShape::Ellipse { center, semi_axes: (a, b) }, cumulative: Vec::new() })
    }

    /// Strictly convex counterclockwise polygon with at least
    /// [`MIN_POLYGON_VERTICES`] vertices.
    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < MIN_POLYGON_VERTICES {
            return Err(Error::InvalidDomain(format!(
                "polygon has {n} vertices; at least {MIN_POLYGON_VERTICES} required"
            )));
        }
        if vertices.iter().any(|v| !v.x.is_finite() || !v.y.is_finite()) {
            return Err(Error::InvalidDomain("non-finite polygon vertex".into()));
        }
        let mut turning = 0.0;
        for i in 0..n {
            let e0 = vertices[(i + 1) % n] - vertices[i];
            let e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            let c = e0.cross(e1);
            if !(c > 0.0) || e0.norm() == 0.0 {
                return Err(Error::InvalidDomain(format!(
                    "polygon is not strictly convex and counterclockwise at vertex {}",
                    (i + 1) % n
                )));
            }
            turning += signed_angle(e0, e1);
        }
        if math::abs(turning - TAU) > 1e-9 {
            return Err(Error::InvalidDomain("polygon winds more than once".into()));
        }
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut s = 0.0;
        cumulative.push(0.0);
        for i in 0..n {
            s += vertices[i].distance(vertices[(i + 1) % n]);
            cumulative.push(s);
        }
        Ok(ConvexDomain { shape: DomainShape::Polygon { vertices }, cumulative })
    }

    /// Regular polygon inscribed in a circle, vertex 0 on the positive x-axis.
    pub fn regular_polygon(center: Point, radius: f64, n: usize) -> Result<Self> {
        let vertices = (0..n)
            .map(|i| {
                let t = TAU * i as f64 / n as f64;
                center + Point::new(math::cos(t), math::sin(t)) * radius
            })
            .collect();
        Self::polygon(vertices)
    }

    pub fn shape(&self) -> &DomainShape {
        &self.shape
    }

    /// `γ(θ)`; `θ` is reduced modulo 2π.
    pub fn boundary_point(&self, theta: f64) -> Point {
        let theta = math::wrap_angle(theta);
        match &self.shape {
            DomainShape::Circle { center, radius } => {
                *center + Point::new(math::cos(theta), math::sin(theta)) * *radius
            }
            DomainShape::Ellipse { center, semi_axes: (a, b) } => {
                *center + Point::new(a * math::cos(theta), b * math::sin(theta))
            }
            DomainShape::Polygon { vertices } => {
                let (i, s) = self.polygon_locate(theta);
                let n = vertices.len();
                let len = self.cumulative[i + 1] - self.cumulative[i];
                vertices[i].lerp(vertices[(i + 1) % n], (s - self.cumulative[i]) / len)
            }
        }
    }

    // Edge index and arc-length position for a reduced angle.
    fn polygon_locate(&self, theta: f64) -> (usize, f64) {
        let perimeter = *self.cumulative.last().unwrap();
        let s = theta / TAU * perimeter;
        let n = self.cumulative.len() - 1;
        let i = match self.cumulative.binary_search_by(|c| c.partial_cmp(&s).unwrap()) {
            Ok(i) => i.min(n - 1),
            Err(i) => (i - 1).min(n - 1),
        };
        (i, s)
    }

    /// Unnormalized tangent `γ'(θ)`.
    pub fn tangent(&self, theta: f64) -> Point {
        let theta = math::wrap_angle(theta);
        match &self.shape {
            DomainShape::Circle { radius, .. } => Point::new(-math::sin(theta), math::cos(theta)) * *radius,
            DomainShape::Ellipse { semi_axes: (a, b), .. } => Point::new(-a * math::sin(theta), b * math::cos(theta)),
            DomainShape::Polygon { vertices } => {
                let (i, _) = self.polygon_locate(theta);
                let n = vertices.len();
                let perimeter = *self.cumulative.last().unwrap();
                let e = vertices[(i + 1) % n] - vertices[i];
                e * (perimeter / TAU / e.norm())
            }
        }
    }

    /// Point at distance `band` from `γ(θ)` along the inward normal.
    pub fn inward_offset(&self, theta: f64, band: f64) -> Point {
        let t = self.tangent(theta);
        self.boundary_point(theta) + t.perp() * (band / t.norm())
    }

    /// Closed-domain membership.
    pub fn contains(&self, p: Point) -> bool {
        match &self.shape {
            DomainShape::Circle { center, radius } => (p - *center).norm() <= *radius,
            DomainShape::Ellipse { center, semi_axes: (a, b) } => {
                let d = p - *center;
                (d.x / a) * (d.x / a) + (d.y / b) * (d.y / b) <= 1.0
            }
            DomainShape::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).all(|i| orient(vertices[i], vertices[(i + 1) % n], p) >= 0.0)
            }
        }
    }

    pub fn center(&self) -> Point {
        match &self.shape {
            DomainShape::Circle { center, .. } | DomainShape::Ellipse { center, .. } => *center,
            DomainShape::Polygon { vertices } => {
                let n = vertices.len() as f64;
                let s = vertices.iter().fold(Point::default(), |acc, v| acc + *v);
                s * (1.0 / n)
            }
        }
    }

    /// Lower bound on the inradius (exact for circles and ellipses).
    pub fn inradius_bound(&self) -> f64 {
        match &self.shape {
            DomainShape::Circle { radius, .. } => *radius,
            DomainShape::Ellipse { semi_axes: (a, b), .. } => a.min(*b),
            DomainShape::Polygon { vertices } => {
                let c = self.center();
                let n = vertices.len();
                (0..n)
                    .map(|i| point_segment_distance(c, vertices[i], vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        match &self.shape {
            DomainShape::Circle { center, radius } => {
                (Point::new(center.x - radius, center.y - radius), Point::new(center.x + radius, center.y + radius))
            }
            DomainShape::Ellipse { center, semi_axes: (a, b) } => {
                (Point::new(center.x - a, center.y - b), Point::new(center.x + a, center.y + b))
            }
            DomainShape::Polygon { vertices } => {
                let mut lo = vertices[0];
                let mut hi = vertices[0];
                for v in vertices {
                    lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
                    hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
                }
                (lo, hi)
            }
        }
    }

    pub fn area(&self) -> f64 {
        match &self.shape {
            DomainShape::Circle { radius, .. } => core::f64::consts::PI * radius * radius,
            DomainShape::Ellipse { semi_axes: (a, b), .. } => core::f64::consts::PI * a * b,
            DomainShape::Polygon { vertices } => {
                let n = vertices.len();
                0.5 * (0..n).map(|i| vertices[i].cross(vertices[(i + 1) % n])).sum::<f64>()
            }
        }
    }

    pub fn perimeter(&self) -> f64 {
        match &self.shape {
            DomainShape::Polygon { .. } => *self.cumulative.last().unwrap(),
            _ => self.arc_length(0.0, TAU),
        }
    }

    /// Euclidean length of the counterclockwise arc from `from` to `to`.
    /// `to - from` is taken in `[0, 2π]`; a span of exactly 2π is the full boundary.
    pub fn arc_length(&self, from: f64, to: f64) -> f64 {
        let span = ccw_span(from, to);
        match &self.shape {
            DomainShape::Circle { radius, .. } => radius * span,
            DomainShape::Ellipse { semi_axes: (a, b), .. } => {
                let speed = |t: f64| {
                    let (s, c) = (math::sin(t), math::cos(t));
                    math::sqrt(a * a * s * s + b * b * c * c)
                };
                gauss_legendre(speed, from, from + span, 64)
            }
            DomainShape::Polygon { .. } => span / TAU * self.perimeter(),
        }
    }

    /// `½∮(x dy − y dx)` along the counterclockwise boundary arc from `from` to `to`.
    /// Summed with the matching chord terms this gives exact enclosed areas.
    pub fn arc_area_integral(&self, from: f64, to: f64) -> f64 {
        let span = ccw_span(from, to);
        match &self.shape {
            DomainShape::Circle { center, radius } => {
                ellipse_area_integral(*center, *radius, *radius, from, from + span)
            }
            DomainShape::Ellipse { center, semi_axes: (a, b) } => {
                ellipse_area_integral(*center, *a, *b, from, from + span)
            }
            DomainShape::Polygon { vertices } => {
                let pts = self.polygon_arc_points(vertices, from, span);
                0.5 * pts.windows(2).map(|w| w[0].cross(w[1])).sum::<f64>()
            }
        }
    }

    fn polygon_arc_points(&self, vertices: &[Point], from: f64, span: f64) -> Vec<Point> {
        let perimeter = self.perimeter();
        let n = vertices.len();
        let start = math::wrap_angle(from) / TAU * perimeter;
        let end = start + span / TAU * perimeter;
        let mut pts = Vec::new();
        pts.push(self.boundary_point(from));
        // vertices strictly inside the arc, unrolled over two laps
        for lap in 0..2 {
            for i in 0..n {
                let s = self.cumulative[i] + lap as f64 * perimeter;
                if s > start && s < end {
                    pts.push(vertices[i]);
                }
            }
        }
        pts.push(self.boundary_point(from + span));
        pts
    }

    /// Points along the counterclockwise arc, for rendering.
    pub fn sample_arc(&self, from: f64, to: f64, segments: usize) -> Vec<Point> {
        let span = ccw_span(from, to);
        let segments = segments.max(1);
        (0..=segments).map(|i| self.boundary_point(from + span * i as f64 / segments as f64)).collect()
    }
}

// Counterclockwise span from `from` to `to` in (0, 2π]; equal angles give 2π
// only when the caller passes a full turn explicitly.
fn ccw_span(from: f64, to: f64) -> f64 {
    if to - from >= TAU {
        return TAU;
    }
    let d = math::wrap_angle(to - from);
    if d == 0.0 && to != from {
        TAU
    } else {
        d
    }
}

fn ellipse_area_integral(c: Point, a: f64, b: f64, t0: f64, t1: f64) -> f64 {
    // x y' − y x' = ab + c.x b cos θ + c.y a sin θ
    0.5 * (a * b * (t1 - t0) + c.x * b * (math::sin(t1) - math::sin(t0)) - c.y * a * (math::cos(t1) - math::cos(t0)))
}

fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const NODES: [f64; 5] =
        [0.0, -0.538_469_310_105_683_1, 0.538_469_310_105_683_1, -0.906_179_845_938_664, 0.906_179_845_938_664];
    const WEIGHTS: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_47,
        0.478_628_670_499_366_47,
        0.236_926_885_056_189_08,
        0.236_926_885_056_189_08,
    ];
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for (x, w) in NODES.iter().zip(WEIGHTS.iter()) {
            total += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * total
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn unit_circle_points() {
        let d = ConvexDomain::unit_disk();
        let p = d.boundary_point(0.0);
        assert!(close(p.x, 1.0, 1e-15) && close(p.y, 0.0, 1e-15));
        let p = d.boundary_point(FRAC_PI_2);
        assert!(close(p.x, 0.0, 1e-15) && close(p.y, 1.0, 1e-15));
    }

    #[test]
    fn ellipse_left_vertex() {
        let d = ConvexDomain::ellipse(Point::default(), 2.0, 1.0).unwrap();
        let p = d.boundary_point(PI);
        assert!(close(p.x, -2.0, 1e-15) && close(p.y, 0.0, 1e-15));
    }

    #[test]
    fn angles_outside_range_are_wrapped() {
        let d = ConvexDomain::unit_disk();
        let a = d.boundary_point(-FRAC_PI_2);
        let b = d.boundary_point(3.0 * FRAC_PI_2);
        assert!(close(a.x, b.x, 1e-15) && close(a.y, b.y, 1e-15));
        let c = d.boundary_point(TAU + 0.25);
        let e = d.boundary_point(0.25);
        assert!(close(c.x, e.x, 1e-14) && close(c.y, e.y, 1e-14));
    }

    #[test]
    fn chord_cost_examples() {
        let o = Point::new(0.0, 0.0);
        let q = Point::new(3.0, 4.0);
        assert_eq!(chord_cost(o, q, Anisotropy::isotropic()), 5.0);
        assert_eq!(chord_cost(o, q, Anisotropy::maximum()), 4.0);
        assert_eq!(chord_cost(o, q, Anisotropy::taxicab()), 7.0);
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            assert_eq!(chord_cost(q, q, Anisotropy::new(p).unwrap()), 0.0);
        }
        // (a, b) -> (b, a) costs 2|a - b| under l^1
        let (a, b) = (0.9659, 0.2588);
        let c = chord_cost(Point::new(a, b), Point::new(b, a), Anisotropy::taxicab());
        assert!(close(c, 2.0 * (a - b), 1e-15));
    }

    #[test]
    fn polyline_examples() {
        let l1 = Anisotropy::taxicab();
        let pts = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)];
        assert_eq!(polyline_cost(&pts, l1).unwrap(), 2.0);
        assert_eq!(chord_cost(pts[0], pts[2], l1), 2.0);
        let l2 = polyline_cost(&pts, Anisotropy::isotropic()).unwrap();
        assert_eq!(l2, 2.0);
        assert!(l2 > 2f64.sqrt());
        let col = [Point::new(0.0, 0.0), Point::new(1.0, 0.5), Point::new(2.0, 1.0)];
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let a = Anisotropy::new(p).unwrap();
            assert!(close(polyline_cost(&col, a).unwrap(), chord_cost(col[0], col[2], a), 1e-14));
        }
        assert_eq!(polyline_cost(&pts[..1], l1), Err(Error::DegeneratePolyline));
    }

    #[test]
    fn anisotropy_rejects_small_p() {
        assert!(Anisotropy::new(0.5).is_err());
        assert!(Anisotropy::new(f64::NAN).is_err());
        assert!(Anisotropy::new(f64::INFINITY).is_ok());
    }

    #[test]
    fn polygon_validation() {
        assert!(ConvexDomain::regular_polygon(Point::default(), 1.0, 64).is_ok());
        assert!(ConvexDomain::regular_polygon(Point::default(), 1.0, 16).is_err());
        // clockwise order is rejected
        let mut v: Vec<Point> = (0..64)
            .map(|i| {
                let t = TAU * i as f64 / 64.0;
                Point::new(t.cos(), t.sin())
            })
            .collect();
        v.reverse();
        assert!(ConvexDomain::polygon(v.clone()).is_err());
        // a collinear (degenerate) vertex is rejected
        v.reverse();
        v[1] = v[0].lerp(v[2], 0.5);
        assert!(ConvexDomain::polygon(v).is_err());
    }

    #[test]
    fn arc_integrals_recover_area() {
        let domains = [
            ConvexDomain::circle(Point::new(0.3, -0.2), 1.5).unwrap(),
            ConvexDomain::ellipse(Point::new(-1.0, 0.5), 2.0, 0.7).unwrap(),
            ConvexDomain::regular_polygon(Point::new(0.1, 0.1), 1.0, 96).unwrap(),
        ];
        for d in &domains {
            let whole = d.arc_area_integral(0.0, TAU);
            assert!(close(whole, d.area(), 1e-12), "{whole} vs {}", d.area());
            // two complementary arcs plus a chord in each direction
            let (a, b) = (0.4, 2.9);
            let pa = d.boundary_point(a);
            let pb = d.boundary_point(b);
            let cap1 = d.arc_area_integral(a, b) + 0.5 * pb.cross(pa);
            let cap2 = d.arc_area_integral(b, a) + 0.5 * pa.cross(pb);
            assert!(cap1 > 0.0 && cap2 > 0.0);
            assert!(close(cap1 + cap2, d.area(), 1e-12));
        }
        // circular segment of half angle 1/2 on the unit disk
        let d = ConvexDomain::unit_disk();
        let seg = d.arc_area_integral(0.0, 1.0) + 0.5 * d.boundary_point(1.0).cross(d.boundary_point(0.0));
        assert!(close(seg, 0.5 * (1.0 - 1f64.sin()), 1e-15));
    }

    #[test]
    fn arc_lengths() {
        let d = ConvexDomain::circle(Point::default(), 2.0).unwrap();
        assert!(close(d.arc_length(0.5, 1.5), 2.0, 1e-14));
        assert!(close(d.arc_length(6.0, 0.5), 2.0 * (TAU - 5.5), 1e-13));
        let e = ConvexDomain::ellipse(Point::default(), 1.0, 1.0).unwrap();
        assert!(close(e.perimeter(), TAU, 1e-12));
        let sq = ConvexDomain::regular_polygon(Point::default(), 1.0, 64).unwrap();
        assert!(close(sq.arc_length(0.0, PI), 0.5 * sq.perimeter(), 1e-12));
    }

    #[test]
    fn inward_offsets_stay_inside() {
        let domains = [
            ConvexDomain::unit_disk(),
            ConvexDomain::ellipse(Point::default(), 2.0, 1.0).unwrap(),
            ConvexDomain::regular_polygon(Point::default(), 1.0, 80).unwrap(),
        ];
        for d in &domains {
            for i in 0..100 {
                let t = TAU * (i as f64 + 0.37) / 100.0;
                assert!(d.contains(d.inward_offset(t, 0.01)));
                assert!(!d.contains(d.inward_offset(t, -0.01)));
            }
        }
    }

    #[test]
    fn intersection_predicates() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 1.0);
        let c = Point::new(0.0, 1.0);
        let d = Point::new(1.0, 0.0);
        assert!(segments_cross(a, b, c, d));
        assert!(segments_intersect(a, b, c, d, 0.0));
        let e = Point::new(2.0, 2.0);
        assert!(!segments_cross(b, e, c, d));
        assert!(segments_intersect(a, b, b, e, 1e-12));
        assert!(!segments_intersect(a, c, d, b, 1e-12));
    }
}
