use std::f64::consts::PI;

use pedal_core::conics::{conic_features, conic_from_five_points, sample_conic, ConicClass, GeneralConic};
use pedal_core::geom::{Circle, CircleOrLine, InversionCircle, Point, RigidMotion};
use pedal_core::pedal_dual::{dual_of_circle, npc_of_circle, NpcResult};
use pedal_core::poncelet::{tangent_chain, HexagonConfig};
use pedal_core::reuleaux::{check_elementary_properties, verify_focus_theorem, ReuleauxTriangle};
use proptest::prelude::*;

/// Central conic from center, axis angle and signed squared semi-axes.
fn central(cx: f64, cy: f64, theta: f64, a: f64, b2: f64) -> GeneralConic {
    let (s, c) = theta.sin_cos();
    let (ia, ib) = (1.0 / (a * a), 1.0 / b2);
    let qa = c * c * ia + s * s * ib;
    let qb = 2.0 * c * s * (ia - ib);
    let qc = s * s * ia + c * c * ib;
    GeneralConic::new([
        qa,
        qb,
        qc,
        -2.0 * qa * cx - qb * cy,
        -qb * cx - 2.0 * qc * cy,
        qa * cx * cx + qb * cx * cy + qc * cy * cy - 1.0,
    ])
    .unwrap()
}

fn conic_strategy() -> impl Strategy<Value = GeneralConic> {
    (
        -2.0..2.0f64,
        -2.0..2.0f64,
        -PI..PI,
        0.5..2.0f64,
        0.3..1.0f64,
        any::<bool>(),
    )
        .prop_map(|(cx, cy, th, a, ratio, hyper)| {
            let b = a * ratio;
            central(cx, cy, th, a, if hyper { -b * b } else { b * b })
        })
}

fn pose_strategy() -> impl Strategy<Value = RigidMotion> {
    (-PI..PI, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(r, x, y)| RigidMotion::new(r, Point::new(x, y)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn five_point_fit_round_trip(q in conic_strategy(), picks in prop::array::uniform5(0usize..64)) {
        let pts: Vec<Point> = sample_conic(&q, 64, 3.0).unwrap().concat();
        let mut idx: Vec<usize> = picks.iter().map(|i| i * pts.len() / 64).collect();
        idx.sort();
        idx.dedup();
        prop_assume!(idx.len() == 5);
        let chosen: [Point; 5] = std::array::from_fn(|i| pts[idx[i]]);
        prop_assume!((0..5).all(|i| (i + 1..5).all(|j| chosen[i].distance(chosen[j]) > 0.05)));
        let fit = conic_from_five_points(&chosen).unwrap();
        prop_assert!(fit.coefficient_distance(&q) < 1e-8, "{}", fit.coefficient_distance(&q));
    }

    #[test]
    fn focus_directrix_identity(q in conic_strategy()) {
        let f = conic_features(&q).unwrap();
        for (focus, directrix) in f.foci.iter().zip(f.directrices.iter()) {
            for x in sample_conic(&q, 64, 3.0).unwrap().concat() {
                let r = x.distance(*focus) - f.eccentricity * directrix.distance(x);
                prop_assert!(r.abs() < 1e-8 * (1.0 + x.norm()));
            }
        }
    }

    #[test]
    fn features_are_rigid_equivariant(q in conic_strategy(), pose in pose_strategy()) {
        let f = conic_features(&q).unwrap();
        let g = conic_features(&q.transformed(&pose)).unwrap();
        prop_assert_eq!(f.class, g.class);
        prop_assert!((f.eccentricity - g.eccentricity).abs() < 1e-9);
        for focus in &f.foci {
            let moved = pose.apply(*focus);
            prop_assert!(g.foci.iter().any(|h| h.distance(moved) < 1e-8));
        }
    }

    #[test]
    fn fit_is_scale_invariant(q in conic_strategy(), s in 0.01..100.0f64) {
        let pts = sample_conic(&q, 5, 3.0).unwrap()[0].clone();
        let five: [Point; 5] = std::array::from_fn(|i| pts[i]);
        let scaled = five.map(|p| p * s);
        let a = conic_features(&conic_from_five_points(&five).unwrap()).unwrap();
        let b = conic_features(&conic_from_five_points(&scaled).unwrap()).unwrap();
        prop_assert!((a.eccentricity - b.eccentricity).abs() < 1e-8);
        for focus in &a.foci {
            prop_assert!(b.foci.iter().any(|h| h.distance(*focus * s) < 1e-8 * s.max(1.0)));
        }
    }

    #[test]
    fn inversion_is_an_involution(x in -5.0..5.0f64, y in -5.0..5.0f64, k in 0.1..4.0f64) {
        let inv = InversionCircle::new(Point::new(0.3, -0.2), k).unwrap();
        let p = Point::new(x, y);
        prop_assume!(p.distance(inv.center) > 1e-3);
        let back = inv.invert_point(inv.invert_point(p).unwrap()).unwrap();
        prop_assert!(back.distance(p) < 1e-9 * (1.0 + p.norm()));
        let polar = inv.polar_of_point(p).unwrap();
        prop_assert!(inv.pole_of_line(&polar).unwrap().distance(p) < 1e-9 * (1.0 + p.norm()));
    }

    #[test]
    fn npc_equals_dual_of_inverse(cx in -2.0..2.0f64, cy in -2.0..2.0f64, rho in 0.3..2.0f64,
                                  mx in -3.0..3.0f64, my in -3.0..3.0f64, k in 0.2..3.0f64) {
        let g = Circle::new(Point::new(cx, cy), rho).unwrap();
        let m = Point::new(mx, my);
        prop_assume!((m.distance(g.center) - rho).abs() > 0.05);
        let inv = InversionCircle::new(m, k).unwrap();
        let CircleOrLine::Circle(img) = inv.invert_circle(&g) else { unreachable!() };
        let NpcResult::Conic(npc) = npc_of_circle(&g, m) else { unreachable!() };
        let dual = dual_of_circle(&img, &inv).unwrap();
        prop_assert!(dual.coefficient_distance(&npc) < 1e-8);
    }

    #[test]
    fn reuleaux_checks_are_pose_invariant(pose in pose_strategy(), t in 0.02..0.98f64, r in 0.2..5.0f64) {
        let base = ReuleauxTriangle::symmetric(r, &RigidMotion::IDENTITY).unwrap();
        let moved = ReuleauxTriangle::symmetric(r, &pose).unwrap();
        let a = check_elementary_properties(&base, base.pedal_point_at(t).unwrap(), 1e-9).unwrap();
        let b = check_elementary_properties(&moved, moved.pedal_point_at(t).unwrap(), 1e-9).unwrap();
        prop_assert!(a.pass && b.pass, "{:?} {:?}", a.failures(), b.failures());
        for (name, v) in &a.residuals {
            prop_assert!((v - b.residuals[name]).abs() < 1e-9, "{}", name);
        }
        let f = verify_focus_theorem(&moved, moved.pedal_point_at(t).unwrap(), 1e-8).unwrap();
        prop_assert!(f.pass, "{:?}", f.residuals);
    }

    #[test]
    fn chains_close(cx in -3.0..3.0f64, cy in -3.0..3.0f64, rr in 0.1..10.0f64, phase in -PI..PI, a in -PI..PI) {
        let h = HexagonConfig::regular(Point::new(cx, cy), rr, phase).unwrap();
        let chain = tangent_chain(&h, h.circumcircle().point_at(a)).unwrap();
        prop_assert!(chain.closure() < 1e-9 * rr);
        prop_assert!(chain.side_dispersion() < 1e-9 * rr);
    }
}

#[test]
fn generated_conics_have_the_requested_class() {
    assert_eq!(
        conic_features(&central(0.0, 0.0, 0.0, 2.0, 1.0)).unwrap().class,
        ConicClass::Ellipse
    );
    assert_eq!(
        conic_features(&central(0.0, 0.0, 0.0, 2.0, -1.0)).unwrap().class,
        ConicClass::Hyperbola
    );
}
