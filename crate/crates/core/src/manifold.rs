//! The three model 3-manifolds and their semi-symmetric metric connection.
//!
//! Every model carries a g-orthonormal frame `(f1, f2, f3)` whose
//! Levi-Civita connection coefficients are constant in frame components, and
//! a distinguished unit field `U` (also constant in frame components). The
//! semi-symmetric metric connection is
//!
//! ```text
//! ∇̃_A B = ∇_A B + ω(B) A − g(A, B) U,    ω(A) = g(A, U)
//! ```
//!
//! | id     | chart                  | metric                              | frame                           | U   |
//! |--------|------------------------|-------------------------------------|---------------------------------|-----|
//! | `e3`   | R^3                    | dx² + dy² + dz²                     | ∂x, ∂y, ∂z                      | ∂z  |
//! | `r3m3` | R^3                    | ¼(dx² + dy²) + η⊗η, η = ½(dz − y dx) | X = 2∂y, Y = 2(∂x + y∂z), ξ = 2∂z | ξ   |
//! | `h3m1` | z > 0                  | (dx² + dy² + dz²) / z²              | z∂x, z∂y, −z∂z                  | e3  |
//!
//! `r3m3` is the Sasakian space form with structure `(φ, ξ, η, g)`,
//! `φX = Y`, `φξ = 0`. Only the frame and the connection tables enter any
//! computation; `φ` itself is never needed.
//!
//! Connection tables are stored as transcribed constants. The unit tests
//! audit them against the Levi-Civita table plus the correction term, against
//! Lie brackets computed from the coordinate frame fields, and against
//! Christoffel symbols differentiated out of the metric.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::jet::{derivative3, truncate3, values3, Jet, Real};
use crate::linalg::{self, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelId {
    /// Euclidean space, `U = ∂/∂z`.
    E3,
    /// Sasakian `R^3(-3)`, `U = ξ`.
    R3m3,
    /// Poincaré half-space `H^3(-1)`, `U = e3 = -z ∂/∂z`.
    H3m1,
}

impl ModelId {
    pub const ALL: [ModelId; 3] = [ModelId::E3, ModelId::R3m3, ModelId::H3m1];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::E3 => "e3",
            ModelId::R3m3 => "r3m3",
            ModelId::H3m1 => "h3m1",
        }
    }

    /// Names of the frame fields, for display.
    pub fn frame_names(self) -> [&'static str; 3] {
        match self {
            ModelId::R3m3 => ["X", "Y", "xi"],
            _ => ["e1", "e2", "e3"],
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e3" => Ok(ModelId::E3),
            "r3m3" => Ok(ModelId::R3m3),
            "h3m1" => Ok(ModelId::H3m1),
            other => Err(Error::Parameter(alloc::format!(
                "unknown manifold `{other}` (expected e3, r3m3 or h3m1)"
            ))),
        }
    }
}

/// Chart coordinates of a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ChartPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn to_array(self) -> Vec3 {
        [self.x, self.y, self.z]
    }
}

impl From<Vec3> for ChartPoint {
    fn from(v: Vec3) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

/// Components in the model's g-orthonormal frame, so the g-norm is the
/// Euclidean norm of the components.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FrameVector(pub Vec3);

impl FrameVector {
    pub const ZERO: FrameVector = FrameVector([0.0; 3]);

    pub fn new(a1: f64, a2: f64, a3: f64) -> Self {
        Self([a1, a2, a3])
    }

    pub fn a1(&self) -> f64 {
        self.0[0]
    }
    pub fn a2(&self) -> f64 {
        self.0[1]
    }
    pub fn a3(&self) -> f64 {
        self.0[2]
    }

    pub fn dot(&self, other: &FrameVector) -> f64 {
        linalg::dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.0)
    }
}

impl Add for FrameVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(linalg::add(&self.0, &rhs.0))
    }
}

impl Sub for FrameVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(linalg::sub(&self.0, &rhs.0))
    }
}

impl Neg for FrameVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(linalg::scale(-1.0, &self.0))
    }
}

impl Mul<FrameVector> for f64 {
    type Output = FrameVector;
    fn mul(self, rhs: FrameVector) -> FrameVector {
        FrameVector(linalg::scale(self, &rhs.0))
    }
}

/// `table[i][j]` holds the frame components of `∇_{f_i} f_j`.
pub type ConnectionTable = [[Vec3; 3]; 3];

const O: Vec3 = [0.0, 0.0, 0.0];

const E3_LC: ConnectionTable = [[O; 3]; 3];

const E3_SS: ConnectionTable = [
    [[0.0, 0.0, -1.0], O, [1.0, 0.0, 0.0]],
    [O, [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]],
    [O, O, O],
];

// frame order (X, Y, ξ)
const R3M3_LC: ConnectionTable = [
    [O, [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]],
    [[0.0, 0.0, -1.0], O, [1.0, 0.0, 0.0]],
    [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], O],
];

const R3M3_SS: ConnectionTable = [
    [[0.0, 0.0, -1.0], [0.0, 0.0, 1.0], [1.0, -1.0, 0.0]],
    [[0.0, 0.0, -1.0], [0.0, 0.0, -1.0], [1.0, 1.0, 0.0]],
    [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], O],
];

const H3M1_LC: ConnectionTable = [
    [[0.0, 0.0, -1.0], O, [1.0, 0.0, 0.0]],
    [O, [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]],
    [O, O, O],
];

const H3M1_SS: ConnectionTable = [
    [[0.0, 0.0, -2.0], O, [2.0, 0.0, 0.0]],
    [O, [0.0, 0.0, -2.0], [0.0, 2.0, 0.0]],
    [O, O, O],
];

/// One of the three model spaces with its connection data.
#[derive(Clone, Debug, PartialEq)]
pub struct Manifold {
    id: ModelId,
    lc: ConnectionTable,
    ss: ConnectionTable,
    u: Vec3,
}

impl Manifold {
    pub fn new(id: ModelId) -> Self {
        let (lc, ss) = match id {
            ModelId::E3 => (E3_LC, E3_SS),
            ModelId::R3m3 => (R3M3_LC, R3M3_SS),
            ModelId::H3m1 => (H3M1_LC, H3M1_SS),
        };
        Self {
            id,
            lc,
            ss,
            u: [0.0, 0.0, 1.0],
        }
    }

    pub fn e3() -> Self {
        Self::new(ModelId::E3)
    }

    pub fn r3m3() -> Self {
        Self::new(ModelId::R3m3)
    }

    pub fn h3m1() -> Self {
        Self::new(ModelId::H3m1)
    }

    pub fn id(&self) -> ModelId {
        self.id
    }

    pub fn levi_civita_table(&self) -> &ConnectionTable {
        &self.lc
    }

    pub fn ss_table(&self) -> &ConnectionTable {
        &self.ss
    }

    /// The distinguished field `U` in frame components.
    pub fn u_frame(&self) -> FrameVector {
        FrameVector(self.u)
    }

    /// `ω(A) = g(A, U)` for a frame-component vector.
    pub fn omega(&self, a: &Vec3) -> f64 {
        linalg::dot(a, &self.u)
    }

    /// `ω(f_j) f_i − g(f_i, f_j) U` in frame components.
    pub fn ssmc_correction(&self, i: usize, j: usize) -> Vec3 {
        let mut out = [0.0; 3];
        out[i] += self.u[j];
        if i == j {
            out = linalg::sub(&out, &self.u);
        }
        out
    }

    /// Semi-symmetric table rebuilt from the Levi-Civita table.
    pub fn derived_ss_table(&self) -> ConnectionTable {
        let mut t = self.lc;
        for (i, row) in t.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = linalg::add(entry, &self.ssmc_correction(i, j));
            }
        }
        t
    }

    /// `[f_i, f_j] = ∇_{f_i} f_j − ∇_{f_j} f_i` (Levi-Civita is torsion free).
    pub fn bracket(&self, i: usize, j: usize) -> Vec3 {
        linalg::sub(&self.lc[i][j], &self.lc[j][i])
    }

    /// Frame norm of `∇̃_{f_i} f_j − ∇̃_{f_j} f_i − [f_i, f_j] − (ω(f_j) f_i − ω(f_i) f_j)`.
    pub fn torsion_check(&self, i: usize, j: usize) -> f64 {
        let mut expected = [0.0; 3];
        expected[i] += self.u[j];
        expected[j] -= self.u[i];
        let lhs = linalg::sub(
            &linalg::sub(&self.ss[i][j], &self.ss[j][i]),
            &self.bracket(i, j),
        );
        linalg::norm(&linalg::sub(&lhs, &expected))
    }

    pub fn check_domain(&self, p: &Vec3) -> Result<()> {
        if !p.iter().all(|x| x.is_finite()) {
            return Err(Error::domain("point has non-finite coordinates"));
        }
        if self.id == ModelId::H3m1 && !(p[2] > 0.0) {
            return Err(Error::Domain(alloc::format!(
                "H3(-1) requires z > 0, got z = {}",
                p[2]
            )));
        }
        Ok(())
    }

    fn check_domain_generic<R: Real>(&self, p: &[R; 3]) -> Result<()> {
        self.check_domain(&[p[0].value(), p[1].value(), p[2].value()])
    }

    /// `g_p(v, w)` for coordinate vectors.
    pub fn metric<R: Real>(&self, p: &[R; 3], v: &[R; 3], w: &[R; 3]) -> Result<R> {
        self.check_domain_generic(p)?;
        let euclid = v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
        Ok(match self.id {
            ModelId::E3 => euclid,
            ModelId::R3m3 => {
                let y = p[1];
                let eta_v = v[2] - y * v[0];
                let eta_w = w[2] - y * w[0];
                (v[0] * w[0] + v[1] * w[1]) * 0.25 + eta_v * eta_w * 0.25
            }
            ModelId::H3m1 => euclid / (p[2] * p[2]),
        })
    }

    pub fn metric_eval(&self, p: ChartPoint, v: &Vec3, w: &Vec3) -> Result<f64> {
        self.metric(&p.to_array(), v, w)
    }

    /// Coordinate components of the three frame fields at `p`.
    pub fn frame_fields<R: Real>(&self, p: &[R; 3]) -> [[R; 3]; 3] {
        let zero = R::cst(0.0);
        match self.id {
            ModelId::E3 => [
                [R::cst(1.0), zero, zero],
                [zero, R::cst(1.0), zero],
                [zero, zero, R::cst(1.0)],
            ],
            ModelId::R3m3 => [
                [zero, R::cst(2.0), zero],
                [R::cst(2.0), zero, p[1] * 2.0],
                [zero, zero, R::cst(2.0)],
            ],
            ModelId::H3m1 => {
                let z = p[2];
                [[z, zero, zero], [zero, z, zero], [zero, zero, -z]]
            }
        }
    }

    /// Frame components of the coordinate vector `v` at `p`.
    pub fn coordinate_to_frame<R: Real>(&self, p: &[R; 3], v: &[R; 3]) -> Result<[R; 3]> {
        self.check_domain_generic(p)?;
        Ok(match self.id {
            ModelId::E3 => *v,
            ModelId::R3m3 => [v[1] * 0.5, v[0] * 0.5, (v[2] - p[1] * v[0]) * 0.5],
            ModelId::H3m1 => {
                let z = p[2];
                [v[0] / z, v[1] / z, -(v[2] / z)]
            }
        })
    }

    /// Coordinate components of the frame vector `a` at `p`.
    pub fn frame_to_coordinate<R: Real>(&self, p: &[R; 3], a: &[R; 3]) -> Result<[R; 3]> {
        self.check_domain_generic(p)?;
        let f = self.frame_fields(p);
        let mut out = [R::cst(0.0); 3];
        for (k, o) in out.iter_mut().enumerate() {
            *o = a[0] * f[0][k] + a[1] * f[1][k] + a[2] * f[2][k];
        }
        Ok(out)
    }

    /// `Σ_{i,j} t_i v_j ∇̃_{f_i} f_j`: the non-derivative part of `∇̃_T V`.
    pub fn connection_term<R: Real>(&self, tangent: &[R; 3], field: &[R; 3]) -> [R; 3] {
        let mut out = [R::cst(0.0); 3];
        for i in 0..3 {
            for j in 0..3 {
                let entry = &self.ss[i][j];
                if entry == &O {
                    continue;
                }
                let w = tangent[i] * field[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if entry[k] != 0.0 {
                        *o = *o + w * entry[k];
                    }
                }
            }
        }
        out
    }

    /// `∇̃_T V` for `V = Σ v_k f_k` along a curve, given `v_k`, `v_k'` and
    /// the tangent's frame components.
    pub fn ss_derivative_along(&self, v: &Vec3, dv: &Vec3, tangent: &Vec3) -> FrameVector {
        FrameVector(linalg::add(dv, &self.connection_term(tangent, v)))
    }

    /// Jet version of [`Manifold::ss_derivative_along`]: differentiating costs
    /// one order, so the result is shorter than the inputs.
    pub fn covariant_derivative<const N: usize, const M: usize>(
        &self,
        tangent: &[Jet<N>; 3],
        field: &[Jet<N>; 3],
    ) -> [Jet<M>; 3] {
        let dv: [Jet<M>; 3] = derivative3(field);
        let t: [Jet<M>; 3] = truncate3(tangent);
        let v: [Jet<M>; 3] = truncate3(field);
        let c = self.connection_term(&t, &v);
        [dv[0] + c[0], dv[1] + c[1], dv[2] + c[2]]
    }

    /// Frame state of a curve from its coordinate jets. The tangent is one
    /// order shorter than the curve jets (`K < N`).
    pub fn curve_frame_state<const N: usize, const K: usize>(
        &self,
        s: f64,
        gamma: &[Jet<N>; 3],
    ) -> Result<CurveFrameState<K>> {
        let p = values3(gamma);
        self.check_domain(&p)?;
        let pos: [Jet<K>; 3] = truncate3(gamma);
        let vel: [Jet<K>; 3] = derivative3(gamma);
        let tangent = self.coordinate_to_frame(&pos, &vel)?;
        Ok(CurveFrameState {
            s,
            point: ChartPoint::from(p),
            tangent,
        })
    }
}

/// Where a curve is at `s` and its unit tangent, with derivatives of the
/// tangent's frame components carried in the jets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveFrameState<const K: usize> {
    pub s: f64,
    pub point: ChartPoint,
    pub tangent: [Jet<K>; 3],
}

impl<const K: usize> CurveFrameState<K> {
    pub fn tangent_value(&self) -> FrameVector {
        FrameVector(values3(&self.tangent))
    }

    /// `g(T, T)`; equals one for unit-speed curves.
    pub fn speed_squared(&self) -> f64 {
        let t = self.tangent_value();
        t.dot(&t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn models() -> [Manifold; 3] {
        [Manifold::e3(), Manifold::r3m3(), Manifold::h3m1()]
    }

    #[test]
    fn ss_table_is_lc_plus_correction_exactly() {
        for m in models() {
            assert_eq!(&m.derived_ss_table(), m.ss_table(), "{}", m.id());
        }
    }

    #[test]
    fn r3m3_table_entries() {
        let m = Manifold::r3m3();
        let (x, y, xi) = (0, 1, 2);
        assert_eq!(m.ss_table()[x][x], [0.0, 0.0, -1.0]);
        assert_eq!(m.ss_table()[y][xi], [1.0, 1.0, 0.0]);
        assert_eq!(m.ss_table()[xi][xi], [0.0, 0.0, 0.0]);
        assert_eq!(m.ss_table()[x][xi], [1.0, -1.0, 0.0]);
        assert_eq!(m.bracket(x, y), [0.0, 0.0, 2.0]);
    }

    #[test]
    fn h3_table_entries() {
        let m = Manifold::h3m1();
        assert_eq!(m.ss_table()[0][0], [0.0, 0.0, -2.0]);
        assert_eq!(m.ss_table()[0][2], [2.0, 0.0, 0.0]);
        assert!(m.ss_table()[2].iter().all(|e| e == &[0.0; 3]));
    }

    #[test]
    fn torsion_identity_all_pairs() {
        for m in models() {
            for i in 0..3 {
                for j in 0..3 {
                    assert!(m.torsion_check(i, j) <= 1e-12, "{} {i} {j}", m.id());
                }
            }
        }
    }

    #[test]
    fn metric_examples() {
        let e3 = Manifold::e3();
        let p = ChartPoint::new(3.0, -1.0, 7.0);
        assert_eq!(
            e3.metric_eval(p, &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0])
                .unwrap(),
            1.0
        );
        let h = Manifold::h3m1();
        let p = ChartPoint::new(0.0, 0.0, 2.0);
        assert_eq!(
            h.metric_eval(p, &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0])
                .unwrap(),
            0.25
        );
        let r = Manifold::r3m3();
        let p = ChartPoint::new(0.0, 0.0, 0.0);
        assert_eq!(
            r.metric_eval(p, &[0.0, 2.0, 0.0], &[0.0, 2.0, 0.0])
                .unwrap(),
            1.0
        );
    }

    #[test]
    fn h3_domain_is_strict() {
        let h = Manifold::h3m1();
        let v = [1.0, 0.0, 0.0];
        assert!(h
            .metric_eval(ChartPoint::new(0.0, 0.0, 0.0), &v, &v)
            .is_err());
        assert!(h
            .metric_eval(ChartPoint::new(0.0, 0.0, -1.0), &v, &v)
            .is_err());
        assert!(h.coordinate_to_frame(&[0.0, 0.0, 0.0], &v).is_err());
        assert!(h
            .metric_eval(ChartPoint::new(0.0, 0.0, 1e-300), &v, &v)
            .is_ok());
    }

    #[test]
    fn coordinate_to_frame_examples() {
        let r = Manifold::r3m3();
        // gamma(s) = (0, 2s, 1): gamma' = (0, 2, 0) is X
        assert_eq!(
            r.coordinate_to_frame(&[0.0, 1.0, 1.0], &[0.0, 2.0, 0.0])
                .unwrap(),
            [1.0, 0.0, 0.0]
        );
        let h = Manifold::h3m1();
        assert_eq!(
            h.coordinate_to_frame(&[0.4, 0.0, 1.0], &[1.0, 0.0, 0.0])
                .unwrap(),
            [1.0, 0.0, 0.0]
        );
        let e = Manifold::e3();
        assert_eq!(
            e.coordinate_to_frame(&[5.0, 1.0, 2.0], &[0.0, 0.0, 1.0])
                .unwrap(),
            [0.0, 0.0, 1.0]
        );
    }

    #[test]
    fn frame_conversion_round_trip() {
        let p = [0.3, -1.7, 2.2];
        let v = [0.9, -0.4, 1.3];
        for m in models() {
            let a = m.coordinate_to_frame(&p, &v).unwrap();
            let back = m.frame_to_coordinate(&p, &a).unwrap();
            for k in 0..3 {
                assert!((back[k] - v[k]).abs() <= 1e-12);
            }
            let g = m.metric(&p, &v, &v).unwrap();
            assert!((g - linalg::dot(&a, &a)).abs() <= 1e-12);
        }
    }

    #[test]
    fn ss_derivative_of_frame_fields_in_r3m3() {
        // T = ½[γ2' X + γ1' Y + (γ3' − γ1'γ2) ξ]
        let m = Manifold::r3m3();
        let (g1p, g2p, f) = (0.6, -1.1, 0.5);
        let t = [0.5 * g2p, 0.5 * g1p, 0.5 * f];
        let dx = m.ss_derivative_along(&[1.0, 0.0, 0.0], &[0.0; 3], &t);
        let dy = m.ss_derivative_along(&[0.0, 1.0, 0.0], &[0.0; 3], &t);
        let dxi = m.ss_derivative_along(&[0.0, 0.0, 1.0], &[0.0; 3], &t);
        // ∇̃_T X = ½[−(γ1' + γ2') ξ − (γ3' − γ1'γ2) Y]
        assert_eq!(dx, FrameVector::new(0.0, -0.5 * f, -0.5 * (g1p + g2p)));
        // ∇̃_T Y = ½[(γ2' − γ1') ξ + (γ3' − γ1'γ2) X]
        assert_eq!(dy, FrameVector::new(0.5 * f, 0.0, 0.5 * (g2p - g1p)));
        // ∇̃_T ξ = γ2'/2 (X − Y) + γ1'/2 (X + Y) = ½[(γ1' + γ2') X + (γ1' − γ2') Y].
        // The Y coefficient is forced by ∇̃_X ξ = X − Y and ∇̃_Y ξ = X + Y; the
        // sign-flipped (γ2' − γ1') form is inconsistent with those entries.
        assert!((dxi.a1() - 0.5 * (g1p + g2p)).abs() < 1e-15);
        assert!((dxi.a2() - 0.5 * (g1p - g2p)).abs() < 1e-15);
        assert!((dxi.a2() - 0.5 * (g2p - g1p)).abs() > 1.0);
        assert_eq!(dxi.a3(), 0.0);
    }

    #[test]
    fn ss_derivative_of_e3_in_h3() {
        // ∇̃_T e3 = (2γ1'/γ3) e1 + (2γ2'/γ3) e2
        let m = Manifold::h3m1();
        let (g1p, g2p, g3p, g3) = (0.3, 0.2, -0.4, 1.7);
        let t = [g1p / g3, g2p / g3, -g3p / g3];
        let out = m.ss_derivative_along(&[0.0, 0.0, 1.0], &[0.0; 3], &t);
        assert!((out.a1() - 2.0 * g1p / g3).abs() < 1e-15);
        assert!((out.a2() - 2.0 * g2p / g3).abs() < 1e-15);
        assert_eq!(out.a3(), 0.0);
    }

    #[test]
    fn ss_derivative_of_u_in_e3() {
        // ∇̃_T U = T − g(T,U) U; vanishes for T = U
        let m = Manifold::e3();
        let out = m.ss_derivative_along(&[0.0, 0.0, 1.0], &[0.0; 3], &[0.0, 0.0, 1.0]);
        assert_eq!(out, FrameVector::ZERO);
        let out = m.ss_derivative_along(&[0.0, 0.0, 1.0], &[0.0; 3], &[0.6, 0.0, 0.8]);
        assert!((out.0[0] - 0.6).abs() < 1e-15 && out.0[2].abs() < 1e-15);
    }

    #[test]
    fn model_id_strings() {
        for id in ModelId::ALL {
            assert_eq!(id.as_str().parse::<ModelId>().unwrap(), id);
        }
        assert!("s3".parse::<ModelId>().is_err());
    }
}
