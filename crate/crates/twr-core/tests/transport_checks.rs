//! End-to-end checks of the parallel-transport engines: measured
//! convergence orders against closed forms, agreement between the ambient,
//! intrinsic, and spinor engines, conservation laws, behavior at the chart
//! singularity, and the match between loop holonomy and boost composition.

use std::f64::consts::{FRAC_PI_2, PI};

use twr_core::crosscheck::{
    compare_triangle_vs_algebra, gauss_bonnet_triangle, rotation_deviation,
    spinor_vs_vector_deviation,
};
use twr_core::linalg::{Spinor, Vec3, Vec4};
use twr_core::lorentz::{
    minkowski_dot, pure_boost, twr_of_two_boosts, velocity_of_momentum, Velocity3,
};
use twr_core::shell::ShellGeometry;
use twr_core::transport::{
    circle_holonomy, circle_holonomy_closed_form, holonomy_of_loop, holonomy_of_loop_in_basis,
    precession_holonomy, spinor_propagator, thomas_precession_angle, transport_spinor,
    transport_vector_ambient, transport_vector_intrinsic, HolonomyBasis, PathSegment, ShellPath,
};
use twr_core::{tolerances, Error, FourVector};

fn geom() -> ShellGeometry<f64> {
    ShellGeometry::new(1.0).unwrap()
}

fn vel(x: f64, y: f64, z: f64) -> Velocity3<f64> {
    Velocity3::from_components(x, y, z).unwrap()
}

fn boosted(g: &ShellGeometry<f64>, v: &Velocity3<f64>) -> FourVector<f64> {
    pure_boost(v).apply(&g.rest_momentum())
}

#[test]
fn vector_transport_converges_at_fourth_order() {
    let g = geom();
    let (rho, theta) = (0.75, FRAC_PI_2);
    let (_, exact) = circle_holonomy_closed_form(&g, rho, theta, 2.0 * PI);
    let err = |n: usize| -> f64 {
        circle_holonomy(&g, rho, theta, n)
            .unwrap()
            .so3
            .angle_between(&exact)
    };
    let (e200, e400, e800, e1600) = (err(200), err(400), err(800), err(1600));
    for (coarse, fine) in [(e200, e400), (e400, e800), (e800, e1600)] {
        let ratio = coarse / fine;
        assert!(
            (11.0..22.0).contains(&ratio),
            "expected ~2^4 error reduction per halving, got {ratio} \
             ({e200:.3e} {e400:.3e} {e800:.3e} {e1600:.3e})"
        );
    }
    // The reported convergence estimate tracks the true error closely.
    let run = circle_holonomy(&g, rho, theta, 400).unwrap();
    assert!(run.convergence > 0.5 * e400 && run.convergence < 2.0 * e400);
}

#[test]
fn spinor_transport_converges_at_second_order() {
    let g = geom();
    let (rho, theta) = (0.75, FRAC_PI_2);
    let (exact, _) = circle_holonomy_closed_form(&g, rho, theta, 2.0 * PI);
    let err = |n: usize| -> f64 {
        let path = ShellPath::circle(&g, rho, theta, n).unwrap();
        spinor_propagator(&g, &path).unwrap().max_abs_diff(&exact)
    };
    let (e500, e1000, e2000) = (err(500), err(1000), err(2000));
    for (coarse, fine) in [(e500, e1000), (e1000, e2000)] {
        let ratio = coarse / fine;
        assert!(
            (3.4..4.6).contains(&ratio),
            "expected ~2^2 error reduction per halving, got {ratio} \
             ({e500:.3e} {e1000:.3e} {e2000:.3e})"
        );
    }
}

#[test]
fn spinor_norm_is_preserved() {
    let g = geom();
    let path = ShellPath::circle(&g, 1.3, 1.1, 1000).unwrap();
    let psi0 = Spinor::new(
        num_complex::Complex::new(0.8, -0.1),
        num_complex::Complex::new(0.3, 0.5),
    );
    let psi1 = transport_spinor(&g, &path, &psi0).unwrap();
    assert!((psi1.norm() - psi0.norm()).abs() < tolerances::SPINOR_NORM_DRIFT);
    let u = spinor_propagator(&g, &path).unwrap();
    assert!(u.unitarity_defect() < 1e-12);
    assert!((u.det() - num_complex::Complex::new(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn ambient_transport_preserves_minkowski_products() {
    let g = geom();
    let v1 = vel(0.5, 0.0, 0.0);
    let v2 = vel(0.0, 0.7, 0.0);
    let rest = g.rest_momentum();
    let b2 = pure_boost(&v2);
    let vertices = [rest, b2.apply(&rest), (b2 * pure_boost(&v1)).apply(&rest)];
    let path = ShellPath::triangle(&g, vertices, 600).unwrap();
    // Spatial unit vectors are tangent to the shell at the rest point.
    let xa = Vec4::new(0.0, 0.6, -0.2, 0.4);
    let xb = Vec4::new(0.0, 0.1, 0.9, 0.3);
    let ya = transport_vector_ambient(&g, &path, &xa).unwrap();
    let yb = transport_vector_ambient(&g, &path, &xb).unwrap();
    let drift = tolerances::VECTOR_NORM_DRIFT;
    assert!((minkowski_dot(&ya, &ya) - minkowski_dot(&xa, &xa)).abs() < drift);
    assert!((minkowski_dot(&yb, &yb) - minkowski_dot(&xb, &xb)).abs() < drift);
    assert!((minkowski_dot(&ya, &yb) - minkowski_dot(&xa, &xb)).abs() < drift);
    // Transported vectors stay tangent at the end point.
    assert!(minkowski_dot(&ya, &path.end_point(&g)).abs() < drift);
}

#[test]
fn all_three_engines_agree_on_a_regular_triangle() {
    // A triangle well away from the chart axis, so every engine applies.
    let g = geom();
    let za = twr_core::ChartPointF::new(0.8, 1.2, 0.3).unwrap();
    let zb = twr_core::ChartPointF::new(1.1, 0.9, 1.1).unwrap();
    let zc = twr_core::ChartPointF::new(0.9, 1.6, 2.1).unwrap();
    let vertices = [g.embed(&za), g.embed(&zb), g.embed(&zc)];
    let path = ShellPath::triangle(&g, vertices, 2000).unwrap();
    assert!(path.chart_regular(&g));

    let ambient = holonomy_of_loop_in_basis(&g, &path, HolonomyBasis::OrthonormalFrame).unwrap();
    assert_eq!(ambient.basis, HolonomyBasis::OrthonormalFrame);

    // Intrinsic engine: transport each frame vector's chart components
    // around the loop, then read the result back in the frame at the base
    // point. Column b of the holonomy matrix is the image of frame vector b.
    let frame = g.frame_chart_components(&za);
    let coframe = g.coframe_chart_components(&za);
    let mut h = [[0.0; 3]; 3];
    for (b, eb) in frame.iter().enumerate() {
        let out = transport_vector_intrinsic(&g, &path, eb).unwrap();
        for a in 0..3 {
            h[a][b] = coframe[a].dot(&out);
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            assert!(
                (h[a][b] - ambient.so3.0 .0[a][b]).abs() < tolerances::ENGINE_AGREEMENT,
                "intrinsic vs ambient at ({a},{b}): {} vs {}",
                h[a][b],
                ambient.so3.0 .0[a][b]
            );
        }
    }

    // Spinor engine: its projection to a rotation matches the vector-level
    // holonomy.
    let dev = spinor_vs_vector_deviation(&g, &path).unwrap();
    assert!(dev < 1e-6, "spinor vs vector deviation {dev}");
}

#[test]
fn out_and_back_loops_return_the_identity() {
    let g = geom();

    // Based at the rest point, out to a boosted point and straight back.
    let far = boosted(&g, &vel(0.0, 0.7, 0.0));
    let rest = g.rest_momentum();
    let there = g.geodesic(&rest, &far).unwrap();
    let back = g.geodesic(&far, &rest).unwrap();
    let path = ShellPath::new(
        &g,
        vec![
            (PathSegment::Geodesic(there), 400),
            (PathSegment::Geodesic(back), 400),
        ],
    )
    .unwrap();
    let hol = holonomy_of_loop(&g, &path).unwrap();
    assert_eq!(hol.basis, HolonomyBasis::RestCartesian);
    assert!(hol.angle_axis.angle.abs() < tolerances::ORIGIN_RETURN);
}

#[test]
fn loop_through_chart_singularity_is_handled_by_ambient_engine() {
    // A symmetric out-and-back whose midpoint is exactly the rest momentum,
    // where the spherical chart degenerates. The ambient engine transports
    // through it; the chart-based engines refuse.
    let g = geom();
    let a = boosted(&g, &vel(-0.5, 0.0, 0.0));
    let b = boosted(&g, &vel(0.5, 0.0, 0.0));
    let there = g.geodesic(&a, &b).unwrap();
    let back = g.geodesic(&b, &a).unwrap();
    let mid = there.point(0.5);
    assert!(mid.spatial().norm() == 0.0);
    let path = ShellPath::new(
        &g,
        vec![
            (PathSegment::Geodesic(there), 512),
            (PathSegment::Geodesic(back), 512),
        ],
    )
    .unwrap();
    assert!(!path.chart_regular(&g));

    let hol = holonomy_of_loop(&g, &path).unwrap();
    assert_eq!(hol.basis, HolonomyBasis::RestCartesian);
    assert!(hol.angle_axis.angle.abs() < tolerances::ORIGIN_RETURN);

    match transport_vector_intrinsic(&g, &path, &Vec3::basis(0)) {
        Err(Error::ChartSingular { .. }) => {}
        other => panic!("expected chart singularity error, got {other:?}"),
    }
    match spinor_propagator(&g, &path) {
        Err(Error::ChartSingular { .. }) => {}
        other => panic!("expected chart singularity error, got {other:?}"),
    }
}

#[test]
fn triangle_holonomy_matches_boost_composition_at_fine_resolution() {
    let g = geom();
    let v1 = vel(0.6, 0.0, 0.0);
    let v2 = vel(0.0, 0.6, 0.0);
    let cmp = compare_triangle_vs_algebra(&g, &v1, &v2, 10_000, 1e-5).unwrap();
    assert!(cmp.passed, "{cmp:?}");
    assert!(cmp.angle_deviation < 1e-9, "{}", cmp.angle_deviation);
    assert!(cmp.axis_deviation < 1e-8, "{}", cmp.axis_deviation);

    // A general, non-perpendicular pair compared the same way.
    let w1 = vel(0.3, 0.2, -0.1);
    let w2 = vel(-0.2, 0.55, 0.25);
    let cmp2 = compare_triangle_vs_algebra(&g, &w1, &w2, 3000, 1e-5).unwrap();
    assert!(cmp2.passed, "{cmp2:?}");
    assert!(cmp2.relative_angle < 1e-7, "{}", cmp2.relative_angle);
}

#[test]
fn double_boost_vertex_loop_matches_reordered_composition() {
    // If the triangle is built on the vertices (rest, L(v1)·rest,
    // L(v2)L(v1)·rest), the geodesic from the rest point to L(v1)·rest is
    // the orbit of the *first* boost, so the loop's holonomy is not the
    // rotation for the ordered pair (v1, v2): it equals the composition
    // rotation for (w, v1), where w is the velocity that carries L(v1)·rest
    // to the third vertex as seen from the frame of the first boost. This
    // regression pins that identity down numerically and is the reason the
    // triangle used for the boost-composition comparison has its middle
    // vertex at L(v2)·rest instead.
    let g = geom();
    let v1 = vel(0.6, 0.0, 0.0);
    let v2 = vel(0.0, 0.6, 0.0);
    let rest = g.rest_momentum();
    let b1 = pure_boost(&v1);
    let p_b = b1.apply(&rest);
    let p_c = (pure_boost(&v2) * b1).apply(&rest);
    let path = ShellPath::triangle(&g, [rest, p_b, p_c], 2000).unwrap();
    let hol = holonomy_of_loop_in_basis(&g, &path, HolonomyBasis::RestCartesian).unwrap();

    let w = velocity_of_momentum(&b1.inverse().apply(&p_c)).unwrap();
    let expected = twr_of_two_boosts(&w, &v1).unwrap();
    let expected_aa = twr_core::rotation_to_angle_axis(&expected).unwrap();
    let dev = rotation_deviation(&hol.angle_axis, &expected_aa);
    assert!(dev.relative_angle < 1e-6, "{dev:?}");

    // And it is genuinely different from the ordered-pair rotation.
    let ordered = twr_of_two_boosts(&v1, &v2).unwrap();
    let ordered_angle = twr_core::rotation_to_angle_axis(&ordered).unwrap().angle;
    assert!((hol.angle_axis.angle - ordered_angle).abs() > 0.04);
}

#[test]
fn gauss_bonnet_balances_on_a_boost_triangle() {
    let g = geom();
    let v1 = vel(0.6, 0.0, 0.0);
    let v2 = vel(0.0, 0.6, 0.0);
    let check = gauss_bonnet_triangle(&g, &v1, &v2, 2000, 256, tolerances::GAUSS_BONNET).unwrap();
    assert!(check.passed, "{check:?}");
    assert!((check.holonomy_angle - check.angle_defect).abs() < 1e-7);
    assert!((check.curvature_integral - check.angle_defect).abs() < tolerances::GAUSS_BONNET);
}

#[test]
fn half_turn_holonomy_hits_the_pi_branch() {
    // γ = 1.5 makes the precession angle exactly π, exercising the
    // half-turn branch of the angle-axis extraction.
    let gamma: f64 = 1.5;
    let speed = (1.0 - 1.0 / (gamma * gamma)).sqrt();
    assert!((thomas_precession_angle(speed).unwrap() - PI).abs() < 1e-15);
    let g = geom();
    let hol = precession_holonomy(&g, speed, 3000).unwrap();
    assert!((hol.angle_axis.angle - PI).abs() < 1e-6);
    assert!(hol.angle_axis.axis.0[1].abs() > 1.0 - 1e-6);
}

#[test]
fn f32_circle_holonomy_smoke() {
    let g = ShellGeometry::<f32>::new(1.0).unwrap();
    let hol = circle_holonomy(&g, 0.75f32, std::f32::consts::FRAC_PI_2, 800).unwrap();
    assert!((hol.angle_axis.angle - std::f32::consts::FRAC_PI_2).abs() < 5e-3);
}

#[test]
fn open_paths_are_rejected_for_holonomy() {
    let g = geom();
    let a = g.rest_momentum();
    let b = boosted(&g, &vel(0.4, 0.0, 0.0));
    let c = boosted(&g, &vel(0.0, 0.4, 0.0));
    let path = ShellPath::new(
        &g,
        vec![
            (PathSegment::Geodesic(g.geodesic(&a, &b).unwrap()), 100),
            (PathSegment::Geodesic(g.geodesic(&b, &c).unwrap()), 100),
        ],
    )
    .unwrap();
    assert!(!path.is_closed(&g));
    match holonomy_of_loop(&g, &path) {
        Err(Error::OpenPath { .. }) => {}
        other => panic!("expected open-path error, got {other:?}"),
    }
    // Transport along an open path is still fine.
    assert!(transport_vector_ambient(&g, &path, &Vec4::new(0.0, 0.0, 0.0, 1.0)).is_ok());
}

#[test]
fn polar_circles_are_rejected() {
    let g = geom();
    match ShellPath::circle(&g, 0.75, 0.0, 100) {
        Err(Error::ChartSingular { .. }) => {}
        other => panic!("expected chart singularity error, got {other:?}"),
    }
}
