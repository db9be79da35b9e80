use lgp_core::boundary::{mollify, BoundaryDatum, CrossingSet, Direction};
use lgp_core::geometry::{chord_cost, polyline_cost, Anisotropy, ConvexDomain, Point};
use lgp_core::matching::{enumerate_optimal, is_non_crossing, matching_cost, min_matching, staircase_witness};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point> {
    (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(x, y)| Point::new(x, y))
}

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(2.0), Just(f64::INFINITY), 1.0f64..8.0]
}

fn crossings(max_pairs: usize) -> impl Strategy<Value = CrossingSet> {
    (1..=max_pairs, any::<bool>())
        .prop_flat_map(|(pairs, up)| (prop::collection::vec(0.0f64..std::f64::consts::TAU, 2 * pairs), Just(up)))
        .prop_filter_map("distinct angles", |(mut t, up)| {
            t.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if t.windows(2).any(|w| w[1] - w[0] < 1e-6) {
                return None;
            }
            Some(CrossingSet::alternating(0.0, &t, if up { Direction::Up } else { Direction::Down }))
        })
}

// Every non-crossing perfect matching of 0..n, by recursion on the partner of the first point.
fn all_matchings(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (lo + 1..hi).step_by(2) {
        for inner in all_matchings(lo + 1, k) {
            for outer in all_matchings(k + 1, hi) {
                let mut m = vec![(lo, k)];
                m.extend(inner.iter().copied());
                m.extend(outer.iter().copied());
                out.push(m);
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn norm_ordering(v in point()) {
        let o = Point::new(0.0, 0.0);
        let c1 = chord_cost(o, v, Anisotropy::taxicab());
        let c2 = chord_cost(o, v, Anisotropy::isotropic());
        let ci = chord_cost(o, v, Anisotropy::maximum());
        prop_assert!(c1 >= c2 * (1.0 - 1e-15));
        prop_assert!(c2 >= ci * (1.0 - 1e-15));
    }

    #[test]
    fn homogeneity(a in point(), v in point(), t in -5.0f64..5.0, p in exponent()) {
        let aniso = Anisotropy::new(p).unwrap();
        let lhs = chord_cost(a, a + v * t, aniso);
        let rhs = t.abs() * chord_cost(a, a + v, aniso);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs));
    }

    #[test]
    fn triangle_inequality(pts in prop::collection::vec(point(), 2..8), p in exponent()) {
        let aniso = Anisotropy::new(p).unwrap();
        let poly = polyline_cost(&pts, aniso).unwrap();
        let direct = chord_cost(pts[0], *pts.last().unwrap(), aniso);
        prop_assert!(poly >= direct * (1.0 - 1e-12));
    }

    #[test]
    fn strict_off_line(a in point(), b in point(), s in 0.1f64..0.9, off in 0.05f64..2.0, p in 1.1f64..6.0) {
        prop_assume!(a.distance(b) > 0.1);
        let aniso = Anisotropy::new(p).unwrap();
        let m = a.lerp(b, s) + (b - a).perp() * (off / (b - a).norm());
        let poly = polyline_cost(&[a, m, b], aniso).unwrap();
        prop_assert!(poly > chord_cost(a, b, aniso));
    }

    #[test]
    fn euclidean_bounds(v in point(), p in exponent()) {
        let aniso = Anisotropy::new(p).unwrap();
        let (lambda, gamma) = aniso.euclidean_bounds();
        let e = v.norm();
        let c = chord_cost(Point::new(0.0, 0.0), v, aniso);
        prop_assert!(lambda * e <= c * (1.0 + 1e-12));
        prop_assert!(c <= gamma * e * (1.0 + 1e-12));
    }

    #[test]
    fn dp_equals_brute_force(cs in crossings(5), p in exponent()) {
        let aniso = Anisotropy::new(p).unwrap();
        let d = ConvexDomain::unit_disk();
        let m = min_matching(&cs, &d, aniso).unwrap();
        let pts: Vec<Point> = cs.crossings.iter().map(|c| d.boundary_point(c.theta)).collect();
        let brute = all_matchings(0, cs.len())
            .iter()
            .map(|pairs| matching_cost(&pts, pairs, aniso))
            .fold(f64::INFINITY, f64::min);
        prop_assert!(m.cost <= brute * (1.0 + 1e-9));
        prop_assert!(is_non_crossing(&m.pairs));
        let mut seen = vec![false; cs.len()];
        for &(i, j) in &m.pairs {
            prop_assert!(!seen[i] && !seen[j]);
            seen[i] = true;
            seen[j] = true;
            prop_assert_ne!(cs.crossings[i].direction, cs.crossings[j].direction);
        }
        prop_assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn smooth_norms_have_unique_optimum(cs in crossings(4), p in prop_oneof![Just(1.5), Just(2.0), Just(3.0)]) {
        let set = enumerate_optimal(&cs, &ConvexDomain::unit_disk(), Anisotropy::new(p).unwrap(), 0.0).unwrap();
        prop_assert_eq!(set.matchings.len(), 1);
    }

    #[test]
    fn optimal_chords_are_disjoint(cs in crossings(5), p in exponent()) {
        let d = ConvexDomain::ellipse(Point::new(0.3, -0.1), 1.7, 0.9).unwrap();
        let m = min_matching(&cs, &d, Anisotropy::new(p).unwrap()).unwrap();
        let chords = m.chords();
        for i in 0..chords.len() {
            for j in i + 1..chords.len() {
                prop_assert!(!lgp_core::geometry::segments_intersect(chords[i].0, chords[i].1, chords[j].0, chords[j].1, 1e-12));
            }
        }
    }

    #[test]
    fn staircase_cost_equals_chord(a in point(), b in point(), k in 1usize..=16, inf in any::<bool>()) {
        let aniso = if inf { Anisotropy::maximum() } else { Anisotropy::taxicab() };
        let s = staircase_witness(a, b, aniso, k).unwrap();
        prop_assert_eq!(s[0], a);
        prop_assert_eq!(*s.last().unwrap(), b);
        let diff = (polyline_cost(&s, aniso).unwrap() - chord_cost(a, b, aniso)).abs();
        prop_assert!(diff <= 1e-12 * (1.0 + chord_cost(a, b, aniso)), "{}", diff);
    }

    #[test]
    fn crossing_sets_alternate(c1 in -2.0f64..2.0, c2 in -2.0f64..2.0, s in -2.0f64..2.0, t in -0.9f64..0.9) {
        let f = BoundaryDatum::analytic("trig", 2048, move |x| {
            (x.cos() * c1 + (2.0 * x).sin() * c2 + (3.0 * x).cos() * s) / (1.0 + c1.abs() + c2.abs() + s.abs())
        }).unwrap();
        if let Ok(cs) = f.level_crossings(t) {
            cs.validate().unwrap();
        }
    }

    #[test]
    fn mollification_does_not_add_variation(from in 0.0f64..6.0, len in 0.05f64..3.0, k in 3i32..9) {
        let f = BoundaryDatum::arc_indicator(from, from + len).unwrap();
        let m = mollify(&f, 2f64.powi(-k)).unwrap();
        prop_assert!(m.bv_seminorm() <= f.bv_seminorm() + 1e-9);
    }
}
