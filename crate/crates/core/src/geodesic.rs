//! Semi-symmetric geodesics: the second-order systems, a fixed-step RK4
//! integrator, and the closed-form solution families.
//!
//! Geodesic systems, in chart coordinates:
//!
//! ```text
//! E3:    γ₁″ = −γ₁′γ₃′,  γ₂″ = −γ₂′γ₃′,  γ₃″ = 1 − γ₃′²
//! R3m3:  λ = μ = ν = 0, linear in γ″, solved numerically
//! H3m1:  γ₁″ = 3γ₁′γ₃′/γ₃,  γ₂″ = 3γ₂′γ₃′/γ₃,  γ₃″ = (γ₃′² − 2γ₁′² − 2γ₂′²)/γ₃
//! ```
//!
//! For `R3m3`, with `f = γ₃′ − γ₁′γ₂`:
//!
//! ```text
//! λ = γ₂″ + ½γ₂′f + γ₁′f
//! μ = γ₁″ − γ₂′f + ½γ₁′f
//! ν = γ₃″ − γ₁″γ₂ − γ₁′γ₂′ − ½γ₁′² − ½γ₂′²
//! ```

use alloc::vec::Vec;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::frenet;
use crate::hyp2f1::hyp2f1_jet;
use crate::jet::{values3, Jet};
use crate::linalg::{self, Vec3};
use crate::manifold::{ChartPoint, Manifold, ModelId};

/// Position and coordinate velocity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicState {
    pub position: Vec3,
    pub velocity: Vec3,
}

impl GeodesicState {
    pub fn new(position: Vec3, velocity: Vec3) -> Self {
        Self { position, velocity }
    }

    /// State of a curve at `s`.
    pub fn of_curve<C: Curve>(curve: &C, s: f64) -> Result<Self> {
        let g: [Jet<2>; 3] = curve.jets(s)?;
        Ok(Self {
            position: values3(&g),
            velocity: [g[0].deriv(1), g[1].deriv(1), g[2].deriv(1)],
        })
    }

    fn axpy(&self, h: f64, d: &(Vec3, Vec3)) -> Self {
        Self {
            position: linalg::add(&self.position, &linalg::scale(h, &d.0)),
            velocity: linalg::add(&self.velocity, &linalg::scale(h, &d.1)),
        }
    }
}

/// `g(γ′, γ′)`.
pub fn speed_squared(model: &Manifold, state: &GeodesicState) -> Result<f64> {
    let t = model.coordinate_to_frame(&state.position, &state.velocity)?;
    Ok(linalg::dot(&t, &t))
}

/// `g(γ′, γ′) − 1`: zero on unit-speed states.
pub fn speed_drift(model: &Manifold, state: &GeodesicState) -> Result<f64> {
    Ok(speed_squared(model, state)? - 1.0)
}

/// The unit-speed constraint in chart form, as `(left, right)`:
/// `|v|² = 1`, `v₁² + v₂² + (v₃ − v₁y)² = 4`, `|v|² = z²`.
pub fn chart_constraint(model: &Manifold, state: &GeodesicState) -> (f64, f64) {
    let [v1, v2, v3] = state.velocity;
    let p = state.position;
    match model.id() {
        ModelId::E3 => (v1 * v1 + v2 * v2 + v3 * v3, 1.0),
        ModelId::R3m3 => {
            let w = v3 - v1 * p[1];
            (v1 * v1 + v2 * v2 + w * w, 4.0)
        }
        ModelId::H3m1 => (v1 * v1 + v2 * v2 + v3 * v3, p[2] * p[2]),
    }
}

/// `γ″` demanded by the geodesic system at `state`.
pub fn ode_rhs(model: &Manifold, state: &GeodesicState) -> Result<Vec3> {
    model.check_domain(&state.position)?;
    let [v1, v2, v3] = state.velocity;
    match model.id() {
        ModelId::E3 => Ok([-v1 * v3, -v2 * v3, 1.0 - v3 * v3]),
        ModelId::H3m1 => {
            let z = state.position[2];
            Ok([
                3.0 * v1 * v3 / z,
                3.0 * v2 * v3 / z,
                (v3 * v3 - 2.0 * v1 * v1 - 2.0 * v2 * v2) / z,
            ])
        }
        ModelId::R3m3 => {
            let (m, rest) = r3_system(state);
            linalg::solve3(m, linalg::scale(-1.0, &rest))
        }
    }
}

/// `λ, μ, ν` written as `M γ″ + rest`.
fn r3_system(state: &GeodesicState) -> ([[f64; 3]; 3], Vec3) {
    let y = state.position[1];
    let [v1, v2, v3] = state.velocity;
    let f = v3 - v1 * y;
    let m = [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [-y, 0.0, 1.0]];
    let rest = [
        0.5 * v2 * f + v1 * f,
        -v2 * f + 0.5 * v1 * f,
        -v1 * v2 - 0.5 * v1 * v1 - 0.5 * v2 * v2,
    ];
    (m, rest)
}

/// `(λ, μ, ν)` for `R3m3` at a state with the given `γ″`.
pub fn r3_lambda_mu_nu(state: &GeodesicState, accel: &Vec3) -> Vec3 {
    let (m, rest) = r3_system(state);
    core::array::from_fn(|i| linalg::dot(&m[i], accel) + rest[i])
}

/// `‖∇̃_T T‖` for `T = γ′` at a state, using `γ″` from [`ode_rhs`].
pub fn state_residual(model: &Manifold, state: &GeodesicState) -> Result<f64> {
    let acc = ode_rhs(model, state)?;
    Ok(frenet::acceleration_defect(model, &state.position, &state.velocity, &acc)?.norm())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicSample {
    pub s: f64,
    pub state: GeodesicState,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<GeodesicSample>,
    pub max_residual: f64,
    /// Largest `|g(γ′, γ′) − 1|` along the trajectory.
    pub max_drift: f64,
    /// `g(γ′, γ′) − 1` at the last sample.
    pub final_drift: f64,
}

impl Trajectory {
    pub fn last(&self) -> &GeodesicSample {
        self.samples
            .last()
            .expect("trajectory has at least one sample")
    }
}

fn derivative(model: &Manifold, y: &GeodesicState) -> Result<(Vec3, Vec3)> {
    Ok((y.velocity, ode_rhs(model, y)?))
}

/// One classic RK4 step of size `h` (may be negative).
pub fn rk4_step(model: &Manifold, y: &GeodesicState, h: f64) -> Result<GeodesicState> {
    let k1 = derivative(model, y)?;
    let k2 = derivative(model, &y.axpy(0.5 * h, &k1))?;
    let k3 = derivative(model, &y.axpy(0.5 * h, &k2))?;
    let k4 = derivative(model, &y.axpy(h, &k3))?;
    let comb = |a: &Vec3, b: &Vec3, c: &Vec3, d: &Vec3| -> Vec3 {
        core::array::from_fn(|i| (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) / 6.0)
    };
    let d = (
        comb(&k1.0, &k2.0, &k3.0, &k4.0),
        comb(&k1.1, &k2.1, &k3.1, &k4.1),
    );
    let next = y.axpy(h, &d);
    model.check_domain(&next.position)?;
    Ok(next)
}

/// Fixed-step RK4 from `s0` to `s_end` (either direction). The last step is
/// shortened to land on `s_end`. The initial state must be unit-speed to
/// within `speed_tol`.
pub fn integrate(
    model: &Manifold,
    s0: f64,
    state0: GeodesicState,
    s_end: f64,
    step: f64,
    speed_tol: f64,
) -> Result<Trajectory> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Step(step));
    }
    if !(s0.is_finite() && s_end.is_finite()) {
        return Err(Error::Range("non-finite integration bounds".into()));
    }
    model.check_domain(&state0.position)?;
    let drift0 = speed_drift(model, &state0)?;
    if !(libm::fabs(drift0) <= speed_tol) {
        let speed = libm::sqrt(drift0 + 1.0);
        return Err(Error::NotUnitSpeed {
            s: s0,
            speed,
            min_speed: speed,
            max_speed: speed,
        });
    }

    let dir = if s_end >= s0 { 1.0 } else { -1.0 };
    let span = libm::fabs(s_end - s0);
    let full = libm::floor(span / step + 1e-9) as usize;
    let mut samples = Vec::with_capacity(full + 2);
    let mut y = state0;
    let mut max_drift = libm::fabs(drift0);
    samples.push(GeodesicSample {
        s: s0,
        state: y,
        residual: state_residual(model, &y)?,
    });
    let mut i = 0usize;
    loop {
        let s = samples[samples.len() - 1].s;
        let remaining = span - (i as f64) * step;
        let (h, s_next) = if i < full {
            let s_next = s0 + dir * (i as f64 + 1.0) * step;
            (s_next - s, s_next)
        } else if remaining > 1e-9 * step {
            (s_end - s, s_end)
        } else {
            break;
        };
        y = rk4_step(model, &y, h)?;
        max_drift = max_drift.max(libm::fabs(speed_drift(model, &y)?));
        samples.push(GeodesicSample {
            s: s_next,
            state: y,
            residual: state_residual(model, &y)?,
        });
        i += 1;
        if i > full {
            break;
        }
    }
    if let Some(last) = samples.last_mut() {
        if libm::fabs(last.s - s_end) <= 1e-9 * step {
            last.s = s_end;
        }
    }
    let final_drift = speed_drift(model, &y)?;
    let max_residual = samples.iter().map(|x| x.residual).fold(0.0, f64::max);
    Ok(Trajectory {
        samples,
        max_residual,
        max_drift,
        final_drift,
    })
}

// ---------------------------------------------------------------- E3

/// Constants of the `E3` family; `4e^{2c₁} = c₂² + c₄²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct E3GeodesicParams {
    pub c: [f64; 6],
}

/// Relative slack on the `E3` constraint.
pub const E3_CONSTRAINT_TOL: f64 = 1e-9;

impl E3GeodesicParams {
    pub fn new(c: [f64; 6]) -> Result<Self> {
        if !c.iter().all(|x| x.is_finite()) {
            return Err(Error::Constraint("constants must be finite".into()));
        }
        let lhs = 4.0 * libm::exp(2.0 * c[0]);
        let rhs = c[1] * c[1] + c[3] * c[3];
        if libm::fabs(lhs - rhs) > E3_CONSTRAINT_TOL * lhs {
            return Err(Error::Constraint(alloc::format!(
                "4e^(2c1) = {lhs} but c2^2 + c4^2 = {rhs}"
            )));
        }
        Ok(Self { c })
    }

    /// `c₂ = 2e^{c₁}cos θ`, `c₄ = 2e^{c₁}sin θ`.
    pub fn from_angle(c1: f64, theta: f64, c3: f64, c5: f64, c6: f64) -> Result<Self> {
        let r = 2.0 * libm::exp(c1);
        Self::new([c1, r * libm::cos(theta), c3, r * libm::sin(theta), c5, c6])
    }

    pub fn curve(&self) -> E3ClosedForm {
        E3ClosedForm(*self)
    }
}

/// The `E3` closed-form geodesic as a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct E3ClosedForm(pub E3GeodesicParams);

impl Curve for E3ClosedForm {
    fn jets<const N: usize>(&self, s: f64) -> Result<[Jet<N>; 3]> {
        let [c1, c2, c3, c4, c5, c6] = self.0.c;
        let sj = Jet::<N>::variable(s);
        let ang = (sj - c1).exp().atan();
        let k = libm::exp(-c1);
        let g3 = ((sj * 2.0).exp() + libm::exp(2.0 * c1)).ln()? - sj + c6;
        Ok([ang * (k * c2) + c3, ang * (k * c4) + c5, g3])
    }
}

/// `(e^{−c₁}c₂ atan e^{s−c₁} + c₃, e^{−c₁}c₄ atan e^{s−c₁} + c₅, −s + ln(e^{2s} + e^{2c₁}) + c₆)`.
pub fn e3_closed_form(params: &E3GeodesicParams, s: f64) -> Result<ChartPoint> {
    let j: [Jet<1>; 3] = params.curve().jets(s)?;
    Ok(ChartPoint::from(values3(&j)))
}

// ---------------------------------------------------------------- R3m3

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct R3RiccatiParams {
    pub c1: f64,
}

/// `f(s) = 2(e^{2s} − e^{4c₁})/(e^{2s} + e^{4c₁}) = 2 tanh(s − 2c₁)`.
pub fn r3_riccati_f(params: &R3RiccatiParams, s: f64) -> f64 {
    2.0 * libm::tanh(s - 2.0 * params.c1)
}

pub fn r3_riccati_f_jet<const N: usize>(params: &R3RiccatiParams, s: f64) -> Jet<N> {
    let u = Jet::<N>::variable(s) - 2.0 * params.c1;
    // 2 tanh(u) = 2 − 4/(e^{2u} + 1); odd, so evaluate at |u| to keep e^{2u} finite
    let sign = if u.value() >= 0.0 { 1.0 } else { -1.0 };
    let e = (u * (2.0 * sign)).exp();
    ((Jet::constant(4.0) / (e + 1.0)) * -1.0 + 2.0) * sign
}

/// `γ₁′² + γ₂′² = 16e^{2s+4c₁}/(e^{2s} + e^{4c₁})²`, which equals `4 − f²`.
pub fn r3_horizontal_speed_squared(params: &R3RiccatiParams, s: f64) -> f64 {
    let sech = 1.0 / libm::cosh(s - 2.0 * params.c1);
    4.0 * sech * sech
}

/// `f = γ₃′ − γ₁′γ₂`.
pub fn riccati_value(state: &GeodesicState) -> f64 {
    state.velocity[2] - state.velocity[0] * state.position[1]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiccatiFit {
    pub c1: f64,
    /// `max |f(s) − 2 tanh(s − 2c₁)|` over the fitted samples.
    pub sup_error: f64,
}

/// Least-squares fit of `c₁` to samples `(s, f)`.
pub fn fit_riccati_c1(points: &[(f64, f64)]) -> Result<RiccatiFit> {
    let &(s_pin, f_pin) = points
        .iter()
        .min_by(|a, b| libm::fabs(a.1).total_cmp(&libm::fabs(b.1)))
        .ok_or_else(|| Error::Range("no samples to fit".into()))?;
    let clamp = (f_pin / 2.0).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
    let mut c1 = 0.5 * (s_pin - libm::atanh(clamp));
    for _ in 0..50 {
        let (mut jtj, mut jtr) = (0.0, 0.0);
        for &(s, f) in points {
            let u = s - 2.0 * c1;
            let sech = 1.0 / libm::cosh(u);
            let r = 2.0 * libm::tanh(u) - f;
            let j = -4.0 * sech * sech;
            jtj += j * j;
            jtr += j * r;
        }
        if !(jtj > 0.0) {
            break;
        }
        let delta = jtr / jtj;
        c1 -= delta;
        if libm::fabs(delta) <= 1e-15 * (1.0 + libm::fabs(c1)) {
            break;
        }
    }
    let params = R3RiccatiParams { c1 };
    let sup_error = points
        .iter()
        .map(|&(s, f)| libm::fabs(r3_riccati_f(&params, s) - f))
        .fold(0.0, f64::max);
    Ok(RiccatiFit { c1, sup_error })
}

/// Fit of the Riccati closed form to an integrated `R3m3` trajectory.
pub fn fit_riccati(traj: &Trajectory) -> Result<RiccatiFit> {
    let pts: Vec<(f64, f64)> = traj
        .samples
        .iter()
        .map(|x| (x.s, riccati_value(&x.state)))
        .collect();
    fit_riccati_c1(&pts)
}

/// `max |2f′ − (4 − f²)|` with `f′` from a five-point stencil on the
/// uniformly spaced part of the trajectory.
pub fn riccati_defect(traj: &Trajectory) -> f64 {
    let smp = &traj.samples;
    if smp.len() < 5 {
        return 0.0;
    }
    let h = smp[1].s - smp[0].s;
    let f: Vec<f64> = smp.iter().map(|x| riccati_value(&x.state)).collect();
    let mut worst: f64 = 0.0;
    for i in 2..smp.len() - 2 {
        let uniform =
            (i - 2..i + 2).all(|j| libm::fabs(smp[j + 1].s - smp[j].s - h) <= 1e-9 * libm::fabs(h));
        if !uniform {
            continue;
        }
        let fp = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
        worst = worst.max(libm::fabs(2.0 * fp - (4.0 - f[i] * f[i])));
    }
    worst
}

// ---------------------------------------------------------------- H3m1

/// Constants of the `H3m1` family, `c₂ > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H3GeodesicParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub k1: f64,
    pub l1: f64,
}

impl H3GeodesicParams {
    pub fn new(c1: f64, c2: f64, c3: f64, k1: f64, l1: f64) -> Result<Self> {
        if ![c1, c2, c3, k1, l1].iter().all(|x| x.is_finite()) {
            return Err(Error::Constraint("constants must be finite".into()));
        }
        if !(c2 > 0.0) {
            return Err(Error::Constraint(alloc::format!(
                "c2 must be positive, got {c2}"
            )));
        }
        Ok(Self { c1, c2, c3, k1, l1 })
    }

    /// The solution with `γ₂` weighted by `c₁` relative to `γ₁`.
    pub fn curve(&self) -> H3ClosedForm {
        H3ClosedForm {
            params: *self,
            weighting: H3Weighting::Corrected,
        }
    }

    /// Both horizontal components sharing the `1/√(1 + c₁²)` weight, as the
    /// formula is often printed. Unit-speed only when `c₁ = ±1`.
    pub fn printed_curve(&self) -> H3ClosedForm {
        H3ClosedForm {
            params: *self,
            weighting: H3Weighting::Printed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H3Weighting {
    Corrected,
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H3ClosedForm {
    pub params: H3GeodesicParams,
    pub weighting: H3Weighting,
}

impl Curve for H3ClosedForm {
    fn jets<const N: usize>(&self, s: f64) -> Result<[Jet<N>; 3]> {
        let H3GeodesicParams { c1, c2, c3, k1, l1 } = self.params;
        let sj = Jet::<N>::variable(s);
        let x = (sj * 4.0 + c3).exp();
        let g3 = (sj.exp() * c2).try_div(&(x + 1.0).sqrt()?)?;
        let f = hyp2f1_jet(0.75, 1.5, 1.75, &(x * -1.0))?;
        let w = 2.0 * c2 / (3.0 * libm::sqrt(1.0 + c1 * c1));
        let core = (sj * 3.0 + 0.5 * c3).exp() * f * w;
        let weight2 = match self.weighting {
            H3Weighting::Corrected => c1,
            H3Weighting::Printed => 1.0,
        };
        Ok([core + k1, core * weight2 + l1, g3])
    }
}

pub fn h3_closed_form(params: &H3GeodesicParams, s: f64) -> Result<ChartPoint> {
    let j: [Jet<1>; 3] = params.curve().jets(s)?;
    Ok(ChartPoint::from(values3(&j)))
}

/// `(γ₁′/γ₃³, γ₂′/γ₃³)`, constant along `H3m1` geodesics.
pub fn h3_first_integrals(state: &GeodesicState) -> (f64, f64) {
    let z3 = libm::pow(state.position[2], 3.0);
    (state.velocity[0] / z3, state.velocity[1] / z3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Vec3, b: &Vec3, eps: f64) -> bool {
        (0..3).all(|i| libm::fabs(a[i] - b[i]) <= eps)
    }

    #[test]
    fn rhs_examples() {
        let s = GeodesicState::new([1.0, 2.0, 3.0], [0.0, 0.0, 1.0]);
        assert_eq!(ode_rhs(&Manifold::e3(), &s).unwrap(), [0.0, 0.0, 0.0]);
        let s = GeodesicState::new([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]);
        assert_eq!(ode_rhs(&Manifold::h3m1(), &s).unwrap(), [0.0, 0.0, -2.0]);
        let s = GeodesicState::new([0.0; 3], [0.0, 2.0, 0.0]);
        assert!(close(
            &ode_rhs(&Manifold::r3m3(), &s).unwrap(),
            &[0.0, 0.0, 2.0],
            1e-15
        ));
        let s = GeodesicState::new([0.0, 0.0, -1.0], [1.0, 0.0, 0.0]);
        assert!(matches!(
            ode_rhs(&Manifold::h3m1(), &s),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn vertical_line_integrates_exactly() {
        let s0 = GeodesicState::new([0.0; 3], [0.0, 0.0, 1.0]);
        let t = integrate(&Manifold::e3(), 0.0, s0, 5.0, 0.01, 1e-6).unwrap();
        assert_eq!(t.samples.len(), 501);
        let last = t.last();
        assert_eq!(last.s, 5.0);
        assert!(close(&last.state.position, &[0.0, 0.0, 5.0], 1e-12));
        assert_eq!(t.max_drift, 0.0);
    }

    #[test]
    fn short_last_step_lands_on_end() {
        let s0 = GeodesicState::new([0.0; 3], [0.0, 0.0, 1.0]);
        let t = integrate(&Manifold::e3(), 0.0, s0, 0.25, 0.1, 1e-6).unwrap();
        let s: Vec<f64> = t.samples.iter().map(|x| x.s).collect();
        assert_eq!(s.len(), 4);
        assert_eq!(s[3], 0.25);
        let back = integrate(&Manifold::e3(), 0.0, s0, -0.3, 0.1, 1e-6).unwrap();
        assert_eq!(back.last().s, -0.3);
        assert!(libm::fabs(back.last().state.position[2] + 0.3) < 1e-12);
    }

    #[test]
    fn bad_inputs() {
        let s0 = GeodesicState::new([0.0; 3], [0.0, 0.0, 1.0]);
        let m = Manifold::e3();
        assert!(matches!(
            integrate(&m, 0.0, s0, 1.0, 0.0, 1e-6),
            Err(Error::Step(_))
        ));
        let fast = GeodesicState::new([0.0; 3], [0.0, 0.0, 2.0]);
        assert!(matches!(
            integrate(&m, 0.0, fast, 1.0, 0.1, 1e-6),
            Err(Error::NotUnitSpeed { .. })
        ));
        assert!(E3GeodesicParams::new([0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).is_err());
        assert!(H3GeodesicParams::new(0.0, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn e3_closed_form_values() {
        let p = E3GeodesicParams::new([0.0, 2.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let q = e3_closed_form(&p, 0.0).unwrap();
        assert!(libm::fabs(q.x - core::f64::consts::FRAC_PI_2) < 1e-15);
        assert_eq!(q.y, 0.0);
        assert!(libm::fabs(q.z - core::f64::consts::LN_2) < 1e-15);
        // γ₃ ≈ −s far to the left
        let far = e3_closed_form(&p, -10.0).unwrap();
        assert!(libm::fabs(far.z - 10.0 - libm::log1p(libm::exp(-20.0))) < 1e-8);
    }

    #[test]
    fn riccati_identity_by_jets() {
        let p = R3RiccatiParams { c1: 0.3 };
        for &s in &[-3.0, 0.0, 0.6, 1.0, 4.0] {
            let f: Jet<2> = r3_riccati_f_jet(&p, s);
            assert!(libm::fabs(f.value() - r3_riccati_f(&p, s)) < 1e-15);
            assert!(libm::fabs(2.0 * f.deriv(1) - (4.0 - f.value() * f.value())) < 1e-10);
            let split = r3_horizontal_speed_squared(&p, s);
            assert!(libm::fabs(split - (4.0 - f.value() * f.value())) < 1e-14);
        }
        assert_eq!(r3_riccati_f(&R3RiccatiParams { c1: 0.0 }, 0.0), 0.0);
    }

    #[test]
    fn h3_gamma3_at_origin() {
        let p = H3GeodesicParams::new(0.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        let q = h3_closed_form(&p, 0.0).unwrap();
        assert!(libm::fabs(q.z - core::f64::consts::FRAC_1_SQRT_2) < 1e-15);
        assert_eq!(q.y, 0.0);
    }
}
