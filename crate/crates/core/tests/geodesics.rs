use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssfrenet_core::curve::Curve;
use ssfrenet_core::frenet;
use ssfrenet_core::geodesic::*;
use ssfrenet_core::jet::Jet;
use ssfrenet_core::linalg::{self, Vec3};
use ssfrenet_core::manifold::Manifold;

fn models() -> [Manifold; 3] {
    [Manifold::e3(), Manifold::r3m3(), Manifold::h3m1()]
}

fn random_direction(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v: Vec3 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = linalg::norm(&v);
        if n > 0.1 && n <= 1.0 {
            return linalg::scale(1.0 / n, &v);
        }
    }
}

/// Unit-speed state at a random point with a random frame direction.
fn random_unit_state(m: &Manifold, rng: &mut ChaCha8Rng) -> GeodesicState {
    let p = [
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(0.5..2.0),
    ];
    let v = m.frame_to_coordinate(&p, &random_direction(rng)).unwrap();
    GeodesicState::new(p, v)
}

/// `γ″` making `∇̃_T T` vanish, found from the frame route alone: the
/// defect is affine in `γ″`, so three probes pin the linear map.
fn frame_oracle_acceleration(m: &Manifold, st: &GeodesicState) -> Vec3 {
    let d = |a: &Vec3| {
        frenet::acceleration_defect(m, &st.position, &st.velocity, a)
            .unwrap()
            .0
    };
    let d0 = d(&[0.0; 3]);
    let cols: [Vec3; 3] = std::array::from_fn(|k| {
        let mut e = [0.0; 3];
        e[k] = 1.0;
        linalg::sub(&d(&e), &d0)
    });
    let mat: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|k| cols[k][i]));
    linalg::solve3(mat, linalg::scale(-1.0, &d0)).unwrap()
}

#[test]
fn rhs_agrees_with_frame_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in models() {
        for _ in 0..200 {
            // the systems assume g(γ′, γ′) = 1, so only unit states are fair
            let st = random_unit_state(&m, &mut rng);
            let got = ode_rhs(&m, &st).unwrap();
            let want = frame_oracle_acceleration(&m, &st);
            let err = linalg::norm(&linalg::sub(&got, &want));
            assert!(
                err <= 1e-11 * (1.0 + linalg::norm(&want)),
                "{}: {got:?} vs {want:?}",
                m.id()
            );
        }
    }
}

#[test]
fn r3m3_rhs_example_from_frame_oracle() {
    let st = GeodesicState::new([0.0; 3], [0.0, 2.0, 0.0]);
    let m = Manifold::r3m3();
    let want = frame_oracle_acceleration(&m, &st);
    assert!(linalg::norm(&linalg::sub(&want, &[0.0, 0.0, 2.0])) < 1e-14);
    assert!(linalg::norm(&linalg::sub(&ode_rhs(&m, &st).unwrap(), &want)) < 1e-14);
}

#[test]
fn printed_nu_is_detected_as_inconsistent() {
    // ν with −½γ₁′² − ½γ₁′² in place of −½γ₁′² − ½γ₂′²
    let printed_nu = |st: &GeodesicState, a: &Vec3| {
        let [v1, v2, _] = st.velocity;
        a[2] - a[0] * st.position[1] - v1 * v2 - v1 * v1
    };
    let m = Manifold::r3m3();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_printed: f64 = 0.0;
    for _ in 0..50 {
        let st = random_unit_state(&m, &mut rng);
        let a = frame_oracle_acceleration(&m, &st);
        let lmn = r3_lambda_mu_nu(&st, &a);
        assert!(linalg::norm(&lmn) < 1e-12, "{lmn:?}");
        worst_printed = worst_printed.max(printed_nu(&st, &a).abs());
    }
    assert!(worst_printed > 1e-2);
}

#[test]
fn riccati_needs_squared_denominator() {
    let p = R3RiccatiParams { c1: 0.4 };
    let s: f64 = 1.3;
    let f = r3_riccati_f(&p, s);
    let e2s = (2.0 * s).exp();
    let e4c = (4.0 * p.c1).exp();
    let printed = 16.0 * (2.0 * s + 4.0 * p.c1).exp() / (e2s + e4c);
    assert!((printed - (4.0 - f * f)).abs() > 1e-2);
    assert!((r3_horizontal_speed_squared(&p, s) - (4.0 - f * f)).abs() < 1e-13);
}

#[test]
fn unit_speed_is_conserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in models() {
        let bound = if m.id() == ssfrenet_core::ModelId::R3m3 {
            1e-7
        } else {
            1e-8
        };
        for _ in 0..5 {
            let st = random_unit_state(&m, &mut rng);
            let t = integrate(&m, 0.0, st, 4.0, 1e-3, 1e-9).unwrap();
            assert!(t.max_drift <= bound, "{}: drift {}", m.id(), t.max_drift);
            assert!(
                t.max_residual <= 1e-10,
                "{}: residual {}",
                m.id(),
                t.max_residual
            );
        }
    }
}

#[test]
fn e3_closed_form_satisfies_the_system_by_jets() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let c1 = rng.gen_range(-1.0..1.0);
        let p = E3GeodesicParams::from_angle(c1, rng.gen_range(0.0..6.3), 0.3, -0.2, 1.0).unwrap();
        for i in 0..=40 {
            let s = -2.0 + 0.1 * i as f64;
            let g: [Jet<3>; 3] = p.curve().jets(s).unwrap();
            let want = ((2.0 * s).exp() - (2.0 * c1).exp()) / ((2.0 * s).exp() + (2.0 * c1).exp());
            assert!((g[2].deriv(1) - want).abs() <= 1e-10);
            for k in 0..2 {
                assert!((g[k].deriv(2) + g[k].deriv(1) * g[2].deriv(1)).abs() <= 1e-10);
            }
            assert!((g[2].deriv(2) - (1.0 - g[2].deriv(1).powi(2))).abs() <= 1e-10);
        }
    }
}

#[test]
fn e3_integrator_reproduces_closed_form() {
    let p = E3GeodesicParams::new([0.0, 2.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
    let st = GeodesicState::of_curve(&p.curve(), -1.0).unwrap();
    let t = integrate(&Manifold::e3(), -1.0, st, 1.0, 1e-3, 1e-9).unwrap();
    let end = e3_closed_form(&p, 1.0).unwrap().to_array();
    let got = t.last().state.position;
    for k in 0..3 {
        assert!((got[k] - end[k]).abs() <= 1e-7, "{got:?} vs {end:?}");
    }
}

#[test]
fn rk4_is_fourth_order() {
    let p = E3GeodesicParams::from_angle(0.2, 0.7, 0.0, 0.0, 0.0).unwrap();
    let st = GeodesicState::of_curve(&p.curve(), -2.0).unwrap();
    let end = e3_closed_form(&p, 2.0).unwrap().to_array();
    let err = |h: f64| {
        let t = integrate(&Manifold::e3(), -2.0, st, 2.0, h, 1e-9).unwrap();
        linalg::norm(&linalg::sub(&t.last().state.position, &end))
    };
    let ratio = err(0.1) / err(0.05);
    assert!(ratio >= 12.0, "ratio {ratio}");
}

#[test]
fn r3m3_trajectories_follow_riccati() {
    let m = Manifold::r3m3();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        let st = random_unit_state(&m, &mut rng);
        let t = integrate(&m, 0.0, st, 3.0, 1e-3, 1e-9).unwrap();
        let fit = fit_riccati(&t).unwrap();
        assert!(fit.sup_error <= 1e-6, "fit {fit:?}");
        assert!(riccati_defect(&t) <= 1e-6);
    }
    let st = GeodesicState::new([0.0; 3], [0.0, 2.0, 0.0]);
    let t = integrate(&m, 0.0, st, 3.0, 1e-3, 1e-9).unwrap();
    let fit = fit_riccati(&t).unwrap();
    assert!(fit.c1.abs() < 1e-6 && fit.sup_error <= 1e-6, "{fit:?}");
}

#[test]
fn h3_first_integrals_are_constant() {
    let m = Manifold::h3m1();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..5 {
        let st = random_unit_state(&m, &mut rng);
        let t = integrate(&m, 0.0, st, 1.5, 1e-3, 1e-9).unwrap();
        let (a0, b0) = h3_first_integrals(&t.samples[0].state);
        for smp in &t.samples {
            let (a, b) = h3_first_integrals(&smp.state);
            assert!((a - a0).abs() <= 1e-7 * a0.abs().max(1e-3));
            assert!((b - b0).abs() <= 1e-7 * b0.abs().max(1e-3));
        }
    }
}

#[test]
fn h3_closed_form_is_a_unit_speed_geodesic() {
    let m = Manifold::h3m1();
    let p = H3GeodesicParams::new(0.5, 2.0, 0.1, 0.0, 0.0).unwrap();
    let c = p.curve();
    for i in 0..50 {
        let s = -1.0 + 2.0 * i as f64 / 49.0;
        assert!(frenet::residual(&m, &c, s).unwrap() <= 1e-6);
        let st = GeodesicState::of_curve(&c, s).unwrap();
        let (lhs, rhs) = chart_constraint(&m, &st);
        assert!((lhs - rhs).abs() <= 1e-8 * rhs);
    }
}

#[test]
fn h3_closed_form_matches_integration() {
    let m = Manifold::h3m1();
    let p = H3GeodesicParams::new(-0.8, 1.3, 0.4, 0.2, -0.1).unwrap();
    let st = GeodesicState::of_curve(&p.curve(), -1.0).unwrap();
    let t = integrate(&m, -1.0, st, 1.0, 1e-3, 1e-9).unwrap();
    let want = h3_closed_form(&p, 1.0).unwrap().to_array();
    let got = t.last().state.position;
    for k in 0..3 {
        assert!((got[k] - want[k]).abs() <= 1e-8, "{got:?} vs {want:?}");
    }
}

#[test]
fn h3_second_component_is_flat_without_c1() {
    let p = H3GeodesicParams::new(0.0, 1.0, 0.0, 0.0, 0.7).unwrap();
    for &s in &[-1.0, 0.0, 0.5] {
        assert_eq!(h3_closed_form(&p, s).unwrap().y, 0.7);
    }
}

#[test]
fn h3_printed_weighting_fails_unless_c1_is_one() {
    let m = Manifold::h3m1();
    let bent = H3GeodesicParams::new(0.5, 2.0, 0.1, 0.0, 0.0)
        .unwrap()
        .printed_curve();
    let st = GeodesicState::of_curve(&bent, 0.0).unwrap();
    let (lhs, rhs) = chart_constraint(&m, &st);
    assert!((lhs - rhs).abs() > 1e-3 * rhs);
    let one = H3GeodesicParams::new(1.0, 2.0, 0.1, 0.0, 0.0).unwrap();
    for &s in &[-0.7, 0.2] {
        let a = GeodesicState::of_curve(&one.printed_curve(), s).unwrap();
        let b = GeodesicState::of_curve(&one.curve(), s).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn h3_integration_leaving_half_space_is_domain_error() {
    let m = Manifold::h3m1();
    let st = GeodesicState::new([0.0, 0.0, 1.0], [0.0, 0.0, -1.0]);
    // the vertical geodesic z = e^{−s} never reaches zero, but a huge step does
    let r = integrate(&m, 0.0, st, 10.0, 5.0, 1e-9);
    assert!(matches!(r, Err(ssfrenet_core::Error::Domain(_))), "{r:?}");
}
