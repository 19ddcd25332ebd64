use dcurv_core::convergence::{fit_rate, FitOutcome};
use dcurv_core::cross_ratio::{cross_ratio_complex, cross_ratio_quat, sphere_point, Inversion};
use dcurv_core::curve::{
    analyze_edge, circle_through_edge_points, circumcenter_2d, circumcenter_3d, circumsphere, CircleOrLine,
    DiscreteCurve, SphereOrPlane, CIRCLE_FIT_TOL,
};
use dcurv_core::insertion::{edge_point_quad, insert_quat};
use dcurv_core::{plane_to_space, Complex, Extended, Quaternion, Vec3};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

fn complex() -> impl Strategy<Value = Complex> {
    (coord(), coord()).prop_map(|(x, y)| Complex::new(x, y))
}

fn vec3() -> impl Strategy<Value = Vec3> {
    (coord(), coord(), coord()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    (coord(), vec3(), -3.0..3.0f64).prop_map(|(r, v, e)| Quaternion::new(r, v) * 10f64.powf(e))
}

fn separated<P: Copy>(p: &[P], dist: impl Fn(P, P) -> f64, min: f64) -> bool {
    p.iter()
        .enumerate()
        .all(|(i, a)| p[i + 1..].iter().all(|b| dist(*a, *b) > min))
}

fn inversion() -> impl Strategy<Value = Inversion> {
    (vec3(), 0.2..2.0f64).prop_map(|(c, r)| Inversion::new(c * 3.0, r))
}

fn close(a: Vec3, b: Vec3, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn inverse_multiplies_to_one(q in quaternion()) {
        let p = q * q.inverse().unwrap();
        prop_assert!((p.re - 1.0).abs() <= 4.0 * f64::EPSILON);
        prop_assert!(p.im.amax() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn conjugate_product_is_norm_squared(q in quaternion()) {
        let n2 = q.norm_squared();
        for p in [q.conj() * q, q * q.conj()] {
            prop_assert!((p.re - n2).abs() <= 4.0 * f64::EPSILON * n2);
            prop_assert!(p.im.norm() <= 4.0 * f64::EPSILON * n2);
        }
    }

    #[test]
    fn norm_is_multiplicative(p in quaternion(), q in quaternion()) {
        let (lhs, rhs) = ((p * q).norm(), p.norm() * q.norm());
        prop_assert!((lhs - rhs).abs() <= 8.0 * f64::EPSILON * rhs);
    }

    #[test]
    fn polar_round_trip(q in quaternion()) {
        let polar = q.polar().unwrap();
        prop_assert!((0.0..=std::f64::consts::PI).contains(&polar.angle));
        prop_assert!((polar.axis.norm() - 1.0).abs() <= 2.0 * f64::EPSILON);
        let back = polar.to_quaternion();
        prop_assert!((back - q).norm() <= 8.0 * f64::EPSILON * q.norm());
    }

    #[test]
    fn sqrt_squares_back(q in quaternion()) {
        prop_assume!(!q.is_negative_real());
        let s = q.principal_sqrt().unwrap();
        prop_assert!((s * s - q).norm() < 1e-12 * q.norm());
        prop_assert!(s.re >= 0.0);
        prop_assert!(s.im.dot(&q.im) >= 0.0);
    }

    #[test]
    fn complex_embedding_is_a_homomorphism(z in complex(), w in complex()) {
        let lhs = Quaternion::from_complex(z * w);
        let rhs = Quaternion::from_complex(z) * Quaternion::from_complex(w);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(lhs.to_complex(), z * w);
    }

    #[test]
    fn space_point_round_trip(v in vec3()) {
        prop_assert_eq!(Quaternion::from_point(v).im, v);
    }

    #[test]
    fn complex_cross_ratio_symmetry(a in complex(), b in complex(), c in complex(), d in complex()) {
        prop_assume!(separated(&[a, b, c, d], |x, y| (x - y).norm(), 1e-3));
        prop_assert_eq!(cross_ratio_complex(b, a, d, c).unwrap(), cross_ratio_complex(a, b, c, d).unwrap());
    }

    #[test]
    fn cross_ratio_invariants_survive_inversion(
        a in vec3(), b in vec3(), c in vec3(), d in vec3(), inv in inversion(),
    ) {
        let p = [a, b, c, d];
        prop_assume!(separated(&p, |x, y| (x - y).norm(), 0.05));
        prop_assume!(p.iter().all(|x| (x - inv.center).norm() > 0.1));
        let image = p.map(|x| inv.apply(x).finite().unwrap());
        let before = cross_ratio_quat(a, b, c, d).unwrap();
        let after = cross_ratio_quat(image[0], image[1], image[2], image[3]).unwrap();
        let scale = before.value().norm();
        prop_assert!((before.re() - after.re()).abs() <= 1e-9 * scale);
        prop_assert!((before.im().norm() - after.im().norm()).abs() <= 1e-9 * scale);
    }

    #[test]
    fn concyclic_points_have_real_cross_ratio(
        center in vec3(), normal in vec3(), radius in 0.1..5.0f64,
        angles in prop::array::uniform4(0.0..std::f64::consts::TAU),
        kick in vec3(),
    ) {
        prop_assume!(normal.norm() > 0.1);
        let n = normal.normalize();
        let e1 = n.cross(&if n.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() }).normalize();
        let e2 = n.cross(&e1);
        let p = angles.map(|t| center + (e1 * t.cos() + e2 * t.sin()) * radius);
        prop_assume!(separated(&p, |x, y| (x - y).norm(), 0.05 * radius));
        let cr = cross_ratio_quat(p[0], p[1], p[2], p[3]).unwrap();
        prop_assert!(cr.im().norm() < 1e-10 * cr.value().norm());

        prop_assume!(kick.norm() > 0.1);
        let off = cross_ratio_quat(p[0], p[1], p[2], p[3] + kick * (0.1 * radius)).unwrap();
        prop_assert!(!off.is_concyclic());
    }

    #[test]
    fn insertion_solves_defining_equation(a in vec3(), b in vec3(), c in vec3(), d in vec3()) {
        prop_assume!(separated(&[a, b, c, d], |x, y| (x - y).norm(), 0.05));
        let q = cross_ratio_quat(c, a, b, d).unwrap().value();
        prop_assume!(q.re > -0.9 * q.norm());
        let Ok(Extended::Finite(f)) = insert_quat(a, b, c, d) else { return Ok(()) };
        prop_assume!(separated(&[a, b, c, f], |x, y| (x - y).norm(), 1e-3));
        let lhs = cross_ratio_quat(c, a, b, f).unwrap().value();
        let rhs = -q.principal_sqrt().unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-8 * rhs.norm(), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn insertion_is_mobius_equivariant(
        a in vec3(), b in vec3(), c in vec3(), d in vec3(), inv in inversion(),
    ) {
        let p = [a, b, c, d];
        prop_assume!(separated(&p, |x, y| (x - y).norm(), 0.05));
        prop_assume!(p.iter().all(|x| (x - inv.center).norm() > 0.1));
        let q = cross_ratio_quat(c, a, b, d).unwrap().value();
        prop_assume!(q.re > -0.9 * q.norm());
        let Ok(Extended::Finite(f)) = insert_quat(a, b, c, d) else { return Ok(()) };
        prop_assume!((f - inv.center).norm() > 0.1 && f.norm() < 10.0);
        let image = p.map(|x| inv.apply(x).finite().unwrap());
        let Ok(Extended::Finite(g)) = insert_quat(image[0], image[1], image[2], image[3]) else {
            return Err(TestCaseError::fail("image insertion failed"));
        };
        let expected = inv.apply(f).finite().unwrap();
        let scale = image.iter().map(|x| x.norm()).fold(expected.norm(), f64::max);
        prop_assert!((g - expected).norm() < 1e-8 * scale, "{:?} vs {:?}", g, expected);
    }

    #[test]
    fn edge_points_are_harmonic(a in complex(), b in complex(), c in complex(), d in complex()) {
        prop_assume!(separated(&[a, b, c, d], |x, y| (x - y).norm(), 0.05));
        let Some([pab, pbc, pcd, pda]) = edge_point_quad(a, b, c, d).ok().and_then(|e| e.all_finite()) else {
            return Ok(());
        };
        prop_assume!(separated(&[pab, pbc, pcd, pda], |x, y| (x - y).norm(), 1e-4));
        for cr in [
            cross_ratio_complex(pab, pbc, pcd, pda),
            cross_ratio_complex(a, pab, b, pcd),
            cross_ratio_complex(b, pbc, c, pda),
            cross_ratio_complex(c, pcd, d, pab),
            cross_ratio_complex(d, pda, a, pbc),
        ] {
            prop_assert!((cr.unwrap() + 1.0).norm() < 1e-9);
        }
    }

    #[test]
    fn edge_point_circle_separates_the_quadruple(a in complex(), b in complex(), c in complex(), d in complex()) {
        prop_assume!(separated(&[a, b, c, d], |x, y| (x - y).norm(), 0.05));
        let Ok(quad) = edge_point_quad(a, b, c, d) else { return Ok(()) };
        let Ok(CircleOrLine::Circle(k)) = circle_through_edge_points(&quad.map(plane_to_space), true, CIRCLE_FIT_TOL) else {
            return Ok(());
        };
        let side = |z: Complex| (plane_to_space(z) - k.center).norm() - k.radius;
        let s = [a, b, c, d].map(side);
        prop_assume!(s.iter().all(|x| x.abs() > 1e-9 * k.radius));
        prop_assert!(s[0].signum() == s[2].signum());
        prop_assert!(s[1].signum() == s[3].signum());
        prop_assert!(s[0].signum() != s[1].signum());
    }

    #[test]
    fn circumcenters_are_equidistant(a in vec3(), b in vec3(), c in vec3()) {
        prop_assume!((b - a).cross(&(c - a)).norm() > 1e-2);
        let m = circumcenter_3d(a, b, c).unwrap();
        let r = (a - m).norm();
        prop_assert!(((b - m).norm() - r).abs() < 1e-10 * r);
        prop_assert!(((c - m).norm() - r).abs() < 1e-10 * r);
        let (za, zb, zc) = (Complex::new(a.x, a.y), Complex::new(b.x, b.y), Complex::new(c.x, c.y));
        prop_assume!(((zb - za) * (zc - za).conj()).im.abs() > 1e-2);
        let m = circumcenter_2d(za, zb, zc).unwrap();
        let r = (za - m).norm();
        prop_assert!(((zb - m).norm() - r).abs() < 1e-10 * r);
        prop_assert!(((zc - m).norm() - r).abs() < 1e-10 * r);
    }

    #[test]
    fn sphere_points_lie_on_the_circumsphere(
        a in vec3(), b in vec3(), c in vec3(), d in vec3(), lambda in -3.0..3.0f64, mu in -3.0..3.0f64,
    ) {
        prop_assume!(separated(&[a, b, c, d], |x, y| (x - y).norm(), 0.1));
        let Ok(SphereOrPlane::Sphere { center, radius }) = circumsphere(a, b, c, d) else { return Ok(()) };
        prop_assume!(radius < 20.0);
        let Ok(Extended::Finite(f)) = sphere_point(a, b, c, d, lambda, mu) else { return Ok(()) };
        prop_assume!(f.norm() < 1e3);
        prop_assert!(((f - center).norm() - radius).abs() < 1e-8 * radius.max(f.norm()));
    }

    #[test]
    fn frames_are_orthonormal(points in prop::collection::vec(vec3(), 4..12)) {
        prop_assume!(separated(&points, |x, y| (x - y).norm(), 0.05));
        let curve = DiscreteCurve::spatial(points, false).unwrap();
        for i in curve.interior_edges() {
            let Ok(Some(f)) = analyze_edge(&curve, i).map(|a| a.frame) else { continue };
            for v in [f.tangent, f.normal, f.binormal] {
                prop_assert!((v.norm() - 1.0).abs() < 1e-10);
            }
            for (x, y) in [(f.tangent, f.normal), (f.normal, f.binormal), (f.tangent, f.binormal)] {
                prop_assert!(x.dot(&y).abs() < 1e-10);
            }
            prop_assert!(close(f.tangent.cross(&f.normal), f.binormal, 1e-10));
        }
    }

    #[test]
    fn fit_recovers_power_laws(rate in 0.5..4.0f64, c in 1e-6..1e3f64, noise in prop::array::uniform16(-1e-3..1e-3f64)) {
        let pts: Vec<(f64, f64)> = (0..16)
            .map(|k| {
                let e = 0.1 * 1.1f64.powi(-k);
                (e, c * e.powf(rate) * (1.0 + noise[k as usize]))
            })
            .collect();
        let FitOutcome::Fitted { slope, points, .. } = fit_rate(&pts) else {
            return Err(TestCaseError::fail("no fit"));
        };
        prop_assert_eq!(points, 16);
        prop_assert!((slope - rate).abs() < 0.02);
    }
}
