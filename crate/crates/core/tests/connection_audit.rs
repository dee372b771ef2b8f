//! The transcribed connection tables against quantities rebuilt from the
//! metric and the coordinate frame fields alone.

use proptest::prelude::*;
use ssfrenet_core::jet::Jet;
use ssfrenet_core::linalg::{self, Vec3};
use ssfrenet_core::manifold::{Manifold, ModelId};

fn models() -> [Manifold; 3] {
    [Manifold::e3(), Manifold::r3m3(), Manifold::h3m1()]
}

fn point_strategy() -> impl Strategy<Value = Vec3> {
    // z kept positive so every model accepts the point
    (-3.0..3.0f64, -3.0..3.0f64, 0.2..4.0f64).prop_map(|(x, y, z)| [x, y, z])
}

/// `p + t·dir` as jets in `t` at `t = 0`.
fn line(p: &Vec3, dir: &Vec3) -> [Jet<2>; 3] {
    std::array::from_fn(|k| Jet::from_derivs([p[k], dir[k]]))
}

/// Directional derivative of the coordinate components of frame field `j`
/// along the coordinate vector `dir`.
fn frame_field_derivative(m: &Manifold, p: &Vec3, dir: &Vec3, j: usize) -> Vec3 {
    let f = m.frame_fields(&line(p, dir));
    std::array::from_fn(|k| f[j][k].deriv(1))
}

fn frame_at(m: &Manifold, p: &Vec3) -> [Vec3; 3] {
    m.frame_fields(p)
}

fn unit(k: usize) -> Vec3 {
    let mut e = [0.0; 3];
    e[k] = 1.0;
    e
}

/// `Γ^k_{ab}` from derivatives of the metric components.
fn christoffel(m: &Manifold, p: &Vec3) -> [[[f64; 3]; 3]; 3] {
    let g = |a: usize, b: usize| m.metric(p, &unit(a), &unit(b)).unwrap();
    let dg = |c: usize, a: usize, b: usize| {
        let q = line(p, &unit(c));
        let ea = unit(a).map(Jet::<2>::constant);
        let eb = unit(b).map(Jet::<2>::constant);
        m.metric(&q, &ea, &eb).unwrap().deriv(1)
    };
    let gm: [[f64; 3]; 3] = std::array::from_fn(|a| std::array::from_fn(|b| g(a, b)));
    let mut out = [[[0.0; 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let lowered: Vec3 =
                std::array::from_fn(|l| 0.5 * (dg(a, l, b) + dg(b, l, a) - dg(l, a, b)));
            let up = linalg::solve3(gm, lowered).unwrap();
            for k in 0..3 {
                out[k][a][b] = up[k];
            }
        }
    }
    out
}

fn assert_close(a: &Vec3, b: &Vec3, eps: f64, what: &str) {
    let d = linalg::norm(&linalg::sub(a, b));
    assert!(d <= eps, "{what}: {a:?} vs {b:?} (|diff| = {d:e})");
}

#[test]
fn ss_table_is_levi_civita_plus_correction() {
    for m in models() {
        assert_eq!(m.ss_table(), &m.derived_ss_table(), "{}", m.id());
    }
}

#[test]
fn torsion_identity_holds_for_every_pair() {
    for m in models() {
        for i in 0..3 {
            for j in 0..3 {
                assert!(m.torsion_check(i, j) <= 1e-12, "{} ({i},{j})", m.id());
            }
        }
    }
}

#[test]
fn h3_semi_symmetric_entries() {
    let m = Manifold::h3m1();
    let t = m.ss_table();
    assert_eq!(t[0][0], [0.0, 0.0, -2.0]);
    assert_eq!(t[0][2], [2.0, 0.0, 0.0]);
    assert_eq!(t[2], [[0.0; 3]; 3]);
}

#[test]
fn r3m3_bracket_of_x_and_y_is_twice_xi() {
    assert_eq!(Manifold::r3m3().bracket(0, 1), [0.0, 0.0, 2.0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn frame_is_orthonormal(p in point_strategy()) {
        for m in models() {
            let f = frame_at(&m, &p);
            for i in 0..3 {
                for j in 0..3 {
                    let g = m.metric(&p, &f[i], &f[j]).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((g - want).abs() <= 1e-12, "{} g({i},{j}) = {g}", m.id());
                }
            }
        }
    }

    #[test]
    fn brackets_match_coordinate_frame_fields(p in point_strategy()) {
        for m in models() {
            let f = frame_at(&m, &p);
            for i in 0..3 {
                for j in 0..3 {
                    let coord = linalg::sub(
                        &frame_field_derivative(&m, &p, &f[i], j),
                        &frame_field_derivative(&m, &p, &f[j], i),
                    );
                    let frame = m.coordinate_to_frame(&p, &coord).unwrap();
                    assert_close(&frame, &m.bracket(i, j), 1e-12, &format!("{} [{i},{j}]", m.id()));
                }
            }
        }
    }

    #[test]
    fn levi_civita_table_matches_christoffel_symbols(p in point_strategy()) {
        for m in models() {
            let f = frame_at(&m, &p);
            let gamma = christoffel(&m, &p);
            for i in 0..3 {
                for j in 0..3 {
                    let mut coord = frame_field_derivative(&m, &p, &f[i], j);
                    for (k, c) in coord.iter_mut().enumerate() {
                        for a in 0..3 {
                            for b in 0..3 {
                                *c += gamma[k][a][b] * f[i][a] * f[j][b];
                            }
                        }
                    }
                    let frame = m.coordinate_to_frame(&p, &coord).unwrap();
                    let want = m.levi_civita_table()[i][j];
                    assert_close(&frame, &want, 1e-12, &format!("{} ∇({i},{j})", m.id()));
                }
            }
        }
    }

    #[test]
    fn metric_compatible_along_curves(
        curve in prop::array::uniform3((-1.0..1.0f64, -1.0..1.0f64)),
        v in prop::array::uniform3((-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)),
        w in prop::array::uniform3((-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)),
        s in -2.0..2.0f64,
    ) {
        // γ_k(s) = a_k sin s + b_k s², lifted so z stays in (0.5, 3.5)
        let sj = Jet::<3>::variable(s);
        let mut gamma: [Jet<3>; 3] =
            std::array::from_fn(|k| sj.sin() * curve[k].0 + sj * sj * (curve[k].1 * 0.1));
        gamma[2] = gamma[2] * 0.5 + 2.0;
        let field = |c: &[(f64, f64, f64); 3]| -> [Jet<2>; 3] {
            let sj = Jet::<2>::variable(s);
            std::array::from_fn(|k| sj.cos() * c[k].0 + sj * c[k].1 + c[k].2)
        };
        let (vf, wf) = (field(&v), field(&w));
        for m in models() {
            let state = m.curve_frame_state::<3, 2>(s, &gamma).unwrap();
            let dv: [Jet<1>; 3] = m.covariant_derivative(&state.tangent, &vf);
            let dw: [Jet<1>; 3] = m.covariant_derivative(&state.tangent, &wf);
            let d_inner = (vf[0] * wf[0] + vf[1] * wf[1] + vf[2] * wf[2]).deriv(1);
            let rhs: f64 = (0..3)
                .map(|k| dv[k].value() * wf[k].value() + vf[k].value() * dw[k].value())
                .sum();
            prop_assert!((d_inner - rhs).abs() <= 1e-9, "{}: {d_inner} vs {rhs}", m.id());
        }
    }
}

#[test]
fn model_ids_round_trip() {
    for id in ModelId::ALL {
        assert_eq!(id.as_str().parse::<ModelId>().unwrap(), id);
    }
}
