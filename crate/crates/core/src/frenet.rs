//! Semi-symmetric Frenet apparatus of unit-speed curves.
//!
//! With `T = γ'` and ∇̃ the semi-symmetric connection:
//!
//! ```text
//! κ̃ = ‖∇̃_T T‖,           N = ∇̃_T T / κ̃
//! τ̃ = ‖∇̃_T N + κ̃ T‖,     B = (∇̃_T N + κ̃ T) / τ̃
//!
//! ∇̃_T T =  κ̃ N
//! ∇̃_T N = −κ̃ T + τ̃ B
//! ∇̃_T B = −τ̃ N
//! ∇̃_T ∇̃_T T = −κ̃² T + κ̃' N + κ̃ τ̃ B
//! ```
//!
//! A curve has order 1 where `κ̃` vanishes (a semi-symmetric geodesic),
//! order 2 where `∇̃_T N` is parallel to `T` (so `τ̃ = 0`), and order 3
//! otherwise.
//!
//! Sign convention: `∇̃_T T = +κ̃ N`, which is what `N = ∇̃_T T / κ̃`
//! forces. Some summaries of these formulas write `−κ̃ N`; that form is not
//! consistent with the second-derivative identity above.
//!
//! Everything is differentiated with jets: the curve is evaluated to fourth
//! order so that `∇̃_T B` can be formed by differentiating `B` itself.

use alloc::vec::Vec;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::grid::SampleGrid;
use crate::jet::{truncate3, values3, Jet};
use crate::manifold::{FrameVector, Manifold};

/// Classification thresholds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// `κ̃` at or below this is treated as zero (order 1).
    pub geo: f64,
    /// `τ̃` at or below this is treated as zero (order 2).
    pub tor: f64,
    /// Relative spread below which `κ̃` or `τ̃` count as constant.
    pub constant: f64,
    /// Allowed `|g(T, T) − 1|`.
    pub speed: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            geo: 1e-7,
            tor: 1e-7,
            constant: 1e-6,
            speed: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    One = 1,
    Two = 2,
    Three = 3,
}

impl Order {
    pub fn as_u8(self) -> u8 {
        self as u8
    }
}

/// Frenet data at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrenetSample {
    pub s: f64,
    pub t: FrameVector,
    pub kappa: f64,
    pub n: Option<FrameVector>,
    pub tau: Option<f64>,
    pub b: Option<FrameVector>,
    pub order: Order,
}

/// A sample plus the covariant derivatives it was built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrenetAnalysis {
    pub sample: FrenetSample,
    /// `∇̃_T T`.
    pub accel: FrameVector,
    /// `∇̃_T ∇̃_T T`, differentiated directly.
    pub second_covariant: FrameVector,
    /// `κ̃'`, defined where `κ̃ > 0`.
    pub kappa_prime: Option<f64>,
    /// `∇̃_T N`, order ≥ 2.
    pub dn: Option<FrameVector>,
    /// `∇̃_T B`, order 3.
    pub db: Option<FrameVector>,
}

/// How well the Frenet identities hold at a sample.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FrenetResiduals {
    /// `‖∇̃_T T − κ̃ N‖` (or `‖∇̃_T T‖` at order 1).
    pub tangent: f64,
    /// `‖∇̃_T N + κ̃ T − τ̃ B‖`, the `τ̃ B` term dropped at order 2.
    pub normal: Option<f64>,
    /// `‖∇̃_T B + τ̃ N‖`.
    pub binormal: Option<f64>,
    /// `‖∇̃_T ∇̃_T T − (−κ̃² T + κ̃' N + κ̃ τ̃ B)‖`.
    pub second_covariant: f64,
    /// `|g(∇̃_T N, T) + κ̃|`.
    pub lambda: Option<f64>,
    /// Largest entry of `|G − I|` for the Gram matrix of the frame.
    pub gram: f64,
}

fn not_unit_speed(s: f64, speed: f64) -> Error {
    Error::NotUnitSpeed {
        s,
        speed,
        min_speed: speed,
        max_speed: speed,
    }
}

fn fv<const N: usize>(v: &[Jet<N>; 3]) -> FrameVector {
    FrameVector(values3(v))
}

/// Full Frenet computation at `s`.
pub fn analyze<C: Curve>(
    model: &Manifold,
    curve: &C,
    s: f64,
    tols: &Tolerances,
) -> Result<FrenetAnalysis> {
    let gamma: [Jet<5>; 3] = curve.jets(s)?;
    let state = model.curve_frame_state::<5, 4>(s, &gamma)?;
    let speed2 = state.speed_squared();
    if !(libm::fabs(speed2 - 1.0) <= tols.speed) {
        return Err(not_unit_speed(s, libm::sqrt(speed2)));
    }

    let t4 = state.tangent;
    let t3: [Jet<3>; 3] = truncate3(&t4);
    let t2: [Jet<2>; 3] = truncate3(&t4);
    let accel: [Jet<3>; 3] = model.covariant_derivative(&t4, &t4);
    let second: [Jet<2>; 3] = model.covariant_derivative(&t3, &accel);

    let t = fv(&t4);
    let kappa = fv(&accel).norm();
    let mut out = FrenetAnalysis {
        sample: FrenetSample {
            s,
            t,
            kappa,
            n: None,
            tau: None,
            b: None,
            order: Order::One,
        },
        accel: fv(&accel),
        second_covariant: fv(&second),
        kappa_prime: None,
        dn: None,
        db: None,
    };
    if kappa <= tols.geo {
        return Ok(out);
    }

    let kappa_jet = Jet::hypot3(&accel)?;
    let n: [Jet<3>; 3] = accel.map(|a| a / kappa_jet);
    let dn: [Jet<2>; 3] = model.covariant_derivative(&t3, &n);
    let k2: Jet<2> = kappa_jet.truncate();
    let w: [Jet<2>; 3] = [dn[0] + k2 * t2[0], dn[1] + k2 * t2[1], dn[2] + k2 * t2[2]];
    let tau = fv(&w).norm();

    out.kappa_prime = Some(kappa_jet.deriv(1));
    out.dn = Some(fv(&dn));
    out.sample.n = Some(fv(&n));
    out.sample.order = Order::Two;
    if tau <= tols.tor {
        return Ok(out);
    }

    let tau_jet = Jet::hypot3(&w)?;
    let b: [Jet<2>; 3] = w.map(|x| x / tau_jet);
    let db: [Jet<1>; 3] = model.covariant_derivative(&t2, &b);
    out.sample.tau = Some(tau);
    out.sample.b = Some(fv(&b));
    out.sample.order = Order::Three;
    out.db = Some(fv(&db));
    Ok(out)
}

/// The Frenet apparatus `(T, κ̃, N, τ̃, B, order)` at `s`.
pub fn apparatus_at<C: Curve>(
    model: &Manifold,
    curve: &C,
    s: f64,
    tols: &Tolerances,
) -> Result<FrenetSample> {
    analyze(model, curve, s, tols).map(|a| a.sample)
}

/// `∇̃_T ∇̃_T T` by differentiating the frame components of `∇̃_T T`.
pub fn second_covariant<C: Curve>(model: &Manifold, curve: &C, s: f64) -> Result<FrameVector> {
    analyze(model, curve, s, &Tolerances::default()).map(|a| a.second_covariant)
}

/// `‖∇̃_T T‖` at `s`: zero exactly on semi-symmetric geodesics.
pub fn residual<C: Curve>(model: &Manifold, curve: &C, s: f64) -> Result<f64> {
    residual_with(model, curve, s, Tolerances::default().speed)
}

pub fn residual_with<C: Curve>(model: &Manifold, curve: &C, s: f64, speed_tol: f64) -> Result<f64> {
    let gamma: [Jet<3>; 3] = curve.jets(s)?;
    let state = model.curve_frame_state::<3, 2>(s, &gamma)?;
    let speed2 = state.speed_squared();
    if !(libm::fabs(speed2 - 1.0) <= speed_tol) {
        return Err(not_unit_speed(s, libm::sqrt(speed2)));
    }
    let accel: [Jet<1>; 3] = model.covariant_derivative(&state.tangent, &state.tangent);
    Ok(fv(&accel).norm())
}

/// `‖∇̃_T T‖` with no unit-speed validation (`T` is just `γ'`).
pub fn raw_defect<C: Curve>(model: &Manifold, curve: &C, s: f64) -> Result<f64> {
    let gamma: [Jet<3>; 3] = curve.jets(s)?;
    let state = model.curve_frame_state::<3, 2>(s, &gamma)?;
    let accel: [Jet<1>; 3] = model.covariant_derivative(&state.tangent, &state.tangent);
    Ok(fv(&accel).norm())
}

/// `∇̃_T T` for a curve through `position` with the given coordinate
/// velocity and acceleration.
pub fn acceleration_defect(
    model: &Manifold,
    position: &[f64; 3],
    velocity: &[f64; 3],
    acceleration: &[f64; 3],
) -> Result<FrameVector> {
    let gamma: [Jet<3>; 3] =
        core::array::from_fn(|k| Jet::from_derivs([position[k], velocity[k], acceleration[k]]));
    let state = model.curve_frame_state::<3, 2>(0.0, &gamma)?;
    let accel: [Jet<1>; 3] = model.covariant_derivative(&state.tangent, &state.tangent);
    Ok(fv(&accel))
}

/// `∇̃_T N` through the quotient rule applied to `N = ∇̃_T T / κ̃`:
/// `(∇̃_T ∇̃_T T) / κ̃ − (κ̃' / κ̃²) ∇̃_T T`.
pub fn dn_by_quotient(a: &FrenetAnalysis) -> Option<FrameVector> {
    let kp = a.kappa_prime?;
    let k = a.sample.kappa;
    Some((1.0 / k) * a.second_covariant - (kp / (k * k)) * a.accel)
}

/// Residuals of the Frenet identities at an analysed sample.
pub fn residuals(a: &FrenetAnalysis) -> FrenetResiduals {
    let smp = &a.sample;
    let (t, k) = (smp.t, smp.kappa);
    let mut r = FrenetResiduals::default();

    let mut frame: Vec<FrameVector> = alloc::vec![t];
    frame.extend(smp.n);
    frame.extend(smp.b);
    for (i, u) in frame.iter().enumerate() {
        for (j, v) in frame.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            r.gram = r.gram.max(libm::fabs(u.dot(v) - want));
        }
    }

    let Some(n) = smp.n else {
        r.tangent = a.accel.norm();
        r.second_covariant = a.second_covariant.norm();
        return r;
    };
    let dn = a.dn.unwrap_or_default();
    let kp = a.kappa_prime.unwrap_or(0.0);
    r.tangent = (a.accel - k * n).norm();
    r.lambda = Some(libm::fabs(dn.dot(&t) + k));
    let tau = smp.tau.unwrap_or(0.0);
    let b = smp.b.unwrap_or_default();
    r.normal = Some((dn + k * t - tau * b).norm());
    let predicted = (-k * k) * t + kp * n + (k * tau) * b;
    r.second_covariant = (a.second_covariant - predicted).norm();
    if let Some(db) = a.db {
        r.binormal = Some((db + tau * n).norm());
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Geodesic,
    Circle,
    Helix,
    GenericOrder2,
    GenericOrder3,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Geodesic => "Geodesic",
            CurveKind::Circle => "Circle",
            CurveKind::Helix => "Helix",
            CurveKind::GenericOrder2 => "GenericOrder2",
            CurveKind::GenericOrder3 => "GenericOrder3",
        }
    }
}

/// Order and type of a curve over a parameter interval.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveClassification {
    pub order: Order,
    pub kind: CurveKind,
    pub kappa_range: (f64, f64),
    pub tau_range: Option<(f64, f64)>,
    /// Grid points where `κ̃` (or, inside an order-3 stretch, `τ̃`) drops to
    /// zero while both neighbours stay above threshold. They are excluded
    /// from the order and ranges.
    pub singular_points: Vec<f64>,
    pub samples: usize,
}

fn is_constant(range: (f64, f64), rel: f64) -> bool {
    range.1 - range.0 <= rel * libm::fabs(range.1)
}

fn range_of(it: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    it.fold(None, |acc, x| match acc {
        None => Some((x, x)),
        Some((lo, hi)) => Some((lo.min(x), hi.max(x))),
    })
}

/// Every sample on the grid, validating unit speed everywhere first.
pub fn sample_grid<C: Curve>(
    model: &Manifold,
    curve: &C,
    grid: &SampleGrid,
    tols: &Tolerances,
) -> Result<Vec<FrenetSample>> {
    let lenient = Tolerances {
        speed: f64::INFINITY,
        ..*tols
    };
    let mut samples = Vec::with_capacity(grid.len());
    let mut bad: Option<f64> = None;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in grid.points() {
        let smp = apparatus_at(model, curve, s, &lenient)?;
        let speed = smp.t.norm();
        lo = lo.min(speed);
        hi = hi.max(speed);
        if bad.is_none() && !(libm::fabs(speed * speed - 1.0) <= tols.speed) {
            bad = Some(s);
        }
        samples.push(smp);
    }
    if let Some(s) = bad {
        let speed = samples[samples.iter().position(|x| x.s == s).unwrap()]
            .t
            .norm();
        return Err(Error::NotUnitSpeed {
            s,
            speed,
            min_speed: lo,
            max_speed: hi,
        });
    }
    Ok(samples)
}

/// Classify the curve over the grid.
pub fn classify_interval<C: Curve>(
    model: &Manifold,
    curve: &C,
    grid: &SampleGrid,
    tols: &Tolerances,
) -> Result<CurveClassification> {
    let samples = sample_grid(model, curve, grid, tols)?;
    Ok(classify_samples(&samples, tols))
}

/// Classification of precomputed samples (in grid order).
pub fn classify_samples(samples: &[FrenetSample], tols: &Tolerances) -> CurveClassification {
    let len = samples.len();
    let isolated = |i: usize, low: &dyn Fn(&FrenetSample) -> bool| {
        if !low(&samples[i]) {
            return false;
        }
        let left = i.checked_sub(1).map(|j| &samples[j]);
        let right = samples.get(i + 1);
        (left.is_some() || right.is_some())
            && left.is_none_or(|x| !low(x))
            && right.is_none_or(|x| !low(x))
    };
    let flat_kappa = |x: &FrenetSample| x.kappa <= tols.geo;
    let order_two_among_threes = |x: &FrenetSample| x.order != Order::Three;

    let mut singular = alloc::vec![false; len];
    for i in 0..len {
        if isolated(i, &flat_kappa) {
            singular[i] = true;
        } else if samples[i].order == Order::Two && isolated(i, &order_two_among_threes) {
            singular[i] = true;
        }
    }
    let regular = || {
        samples
            .iter()
            .zip(&singular)
            .filter(|(_, &s)| !s)
            .map(|(x, _)| x)
    };

    let order = regular().map(|x| x.order).max().unwrap_or(Order::One);
    let kappa_range = range_of(regular().map(|x| x.kappa)).unwrap_or((0.0, 0.0));
    let tau_range = range_of(regular().filter_map(|x| x.tau));
    let uniform = regular().all(|x| x.order == order);

    let kind = match order {
        Order::One => CurveKind::Geodesic,
        Order::Two => {
            if uniform && kappa_range.0 > tols.geo && is_constant(kappa_range, tols.constant) {
                CurveKind::Circle
            } else {
                CurveKind::GenericOrder2
            }
        }
        Order::Three => {
            let tau_const = tau_range.is_some_and(|r| is_constant(r, tols.constant));
            if uniform && is_constant(kappa_range, tols.constant) && tau_const {
                CurveKind::Helix
            } else {
                CurveKind::GenericOrder3
            }
        }
    };

    CurveClassification {
        order,
        kind,
        kappa_range,
        tau_range,
        singular_points: samples
            .iter()
            .zip(&singular)
            .filter(|(_, &s)| s)
            .map(|(x, _)| x.s)
            .collect(),
        samples: len,
    }
}
