//! Property tests on random convex polygons and closed-form domains.

use btl::bounds::{BoundVerdict, Provenance, Relation, VerdictStatus};
use btl::convexgeom::ConvexPolygon;
use btl::exact::ExactDomain;
use btl::Point;
use proptest::prelude::*;

fn point_cloud() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((-3.0f64..3.0, -2.0f64..2.0), 3..30)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

fn hull(points: &[Point]) -> Option<ConvexPolygon> {
    let poly = ConvexPolygon::hull(points).ok()?;
    // skip slivers where the inradius LP is ill-conditioned
    (poly.area() > 1e-3 * poly.diameter().powi(2)).then_some(poly)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn radius_chain(points in point_cloud()) {
        let Some(poly) = hull(&points) else { return Ok(()) };
        let s = poly.summary().unwrap();
        let tol = 1e-10 * s.diameter;
        prop_assert!(s.inradius <= s.circumradius + tol);
        prop_assert!(s.circumradius <= s.proximal_radius + tol);
        prop_assert!(s.proximal_radius < s.diameter);
        prop_assert!(s.diameter <= 2.0 * s.circumradius + tol);
        // the Chebyshev center sits on the high ridge at depth r
        prop_assert!((poly.distance_to_boundary(s.chebyshev_center) - s.inradius).abs() <= 1e-8 * s.diameter);
        prop_assert!(poly.contains(s.proximal_center));
        // isoperimetric inequality and the inradius bound r·P ≤ 2A
        prop_assert!(s.perimeter * s.perimeter >= 4.0 * std::f64::consts::PI * s.area);
        prop_assert!(s.inradius * s.perimeter <= 2.0 * s.area * (1.0 + 1e-9));
    }

    #[test]
    fn geometry_scales_covariantly(points in point_cloud(), t in 0.1f64..10.0) {
        let Some(poly) = hull(&points) else { return Ok(()) };
        let a = poly.summary().unwrap();
        let b = poly.scaled(t).unwrap().summary().unwrap();
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-8 * y.abs().max(1e-12);
        prop_assert!(close(b.area, t * t * a.area));
        prop_assert!(close(b.perimeter, t * a.perimeter));
        prop_assert!(close(b.inradius, t * a.inradius));
        prop_assert!(close(b.circumradius, t * a.circumradius));
        prop_assert!(close(b.diameter, t * a.diameter));
        prop_assert!((b.proximal_radius - t * a.proximal_radius).abs() <= 1e-6 * t * a.proximal_radius);
        prop_assert!(close(b.moment_sharp, t.powi(4) * a.moment_sharp) || (b.moment_sharp - t.powi(4) * a.moment_sharp).abs() <= 1e-6 * b.moment_sharp);
    }

    #[test]
    fn rigidity_scaling_law(n in 2u32..6, radius in 0.2f64..3.0, delta in 0.05f64..5.0, t in 0.2f64..5.0) {
        // T(tΩ; δ/t) = t^{N-1} T(Ω; δ) · t, since the form scales as t^{N-2}
        // and the boundary integral as t^{N-1}
        let ball = ExactDomain::Ball { dimension: n, radius };
        let lhs = ball.scaled(t).rigidity(delta / t).unwrap();
        let rhs = t.powi(n as i32) * ball.rigidity(delta).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs);
    }

    #[test]
    fn rigidity_decreases_in_delta(n in 2u32..6, radius in 0.2f64..3.0, d1 in 0.05f64..5.0, d2 in 0.05f64..5.0) {
        prop_assume!((d1 - d2).abs() > 1e-6);
        let ball = ExactDomain::Ball { dimension: n, radius };
        let (lo, hi) = if d1 < d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(ball.rigidity(lo).unwrap() > ball.rigidity(hi).unwrap());
    }

    #[test]
    fn verdict_slack_matches_relation(lhs in -1e3f64..1e3, rhs in -1e3f64..1e3) {
        let v = BoundVerdict::new("x", "x", (lhs, Provenance::Exact), Relation::Le, (rhs, Provenance::Geometry));
        prop_assert_eq!(v.pass, lhs <= rhs + v.tolerance * lhs.abs().max(rhs.abs()));
        prop_assert!(v.status != VerdictStatus::Inconclusive);
        let g = BoundVerdict::new("x", "x", (rhs, Provenance::Fem), Relation::Ge, (lhs, Provenance::Exact));
        prop_assert!((g.slack - v.slack).abs() <= 1e-15);
    }
}

#[test]
fn point_clouds_mostly_yield_polygons() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let kept = (0..200)
        .filter(|_| hull(&point_cloud().new_tree(&mut runner).unwrap().current()).is_some())
        .count();
    assert!(kept > 150, "only {kept} of 200 clouds kept");
}
