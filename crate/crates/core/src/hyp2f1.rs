//! Gauss hypergeometric function `₂F₁(a, b; c; z)` on `z ≤ 0.5`.
//!
//! - `|z| ≤ 0.5`: the defining power series.
//! - `−10³ ≤ z < −0.5`: Pfaff, `(1 − z)^{−a} ₂F₁(a, c − b; c; z/(z − 1))`,
//!   whose argument lies in `(1/3, 1)`.
//! - `z < −10³`: the `1/z` connection formula, a pair of series in `1/z`,
//!   used when `b − a` is not an integer. Pfaff needs millions of terms out
//!   there since its argument crowds against 1.

use crate::error::{Error, Result};
use crate::jet::Jet;

/// Consecutive negligible terms needed before the series is cut.
const QUIET_TERMS: usize = 3;
/// Relative size of a negligible term.
const TERM_EPS: f64 = 1e-17;
const MAX_TERMS: usize = 5_000_000;
/// Below this the `1/z` route takes over from Pfaff.
pub const RECIPROCAL_BELOW: f64 = -1e3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyp2F1Request {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl Hyp2F1Request {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self { a, b, c, z }
    }

    fn validate(&self) -> Result<()> {
        if ![self.a, self.b, self.c].iter().all(|x| x.is_finite()) {
            return Err(Error::Parameter("a, b, c must be finite".into()));
        }
        if is_nonpositive_integer(self.c) {
            return Err(Error::Parameter(alloc::format!(
                "c = {} is a non-positive integer",
                self.c
            )));
        }
        if self.z.is_nan() || self.z > 0.5 {
            return Err(Error::Range(alloc::format!(
                "z = {} (supported: z <= 0.5)",
                self.z
            )));
        }
        Ok(())
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && libm::floor(x) == x
}

fn is_integer(x: f64) -> bool {
    libm::floor(x) == x
}

/// `1/Γ(x)`, zero at the poles.
fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / libm::tgamma(x)
    }
}

/// Partial sums of `Σ (a)ₙ(b)ₙ/((c)ₙ n!) zⁿ` until three terms in a row
/// are below `1e−17` of the running sum.
pub fn series_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if libm::fabs(term) < TERM_EPS * libm::fabs(sum) || term == 0.0 {
            quiet += 1;
            if quiet == QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence(alloc::format!(
        "2F1({a}, {b}; {c}; {z}) series after {MAX_TERMS} terms"
    )))
}

/// Pfaff route for `z < 0`.
pub fn pfaff_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let w = z / (z - 1.0);
    Ok(libm::pow(1.0 - z, -a) * series_2f1(a, c - b, c, w)?)
}

/// Connection formula around `z = ∞` for `z < −1` and non-integer `b − a`.
pub fn reciprocal_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_integer(b - a) {
        return Err(Error::Parameter(
            "1/z route needs b - a to be non-integral".into(),
        ));
    }
    let t = 1.0 / z;
    let gc = libm::tgamma(c);
    let w1 = gc * libm::tgamma(b - a) * rgamma(b) * rgamma(c - a);
    let w2 = gc * libm::tgamma(a - b) * rgamma(a) * rgamma(c - b);
    let mut out = 0.0;
    if w1 != 0.0 {
        out += w1 * libm::pow(-z, -a) * series_2f1(a, a - c + 1.0, a - b + 1.0, t)?;
    }
    if w2 != 0.0 {
        out += w2 * libm::pow(-z, -b) * series_2f1(b, b - c + 1.0, b - a + 1.0, t)?;
    }
    Ok(out)
}

/// `₂F₁(a, b; c; z)` for `z ≤ 0.5`.
pub fn gauss_2f1(req: &Hyp2F1Request) -> Result<f64> {
    req.validate()?;
    let Hyp2F1Request { a, b, c, z } = *req;
    if z == 0.0 {
        return Ok(1.0);
    }
    if z >= -0.5 {
        series_2f1(a, b, c, z)
    } else if z < RECIPROCAL_BELOW && !is_integer(b - a) && z.is_finite() {
        reciprocal_2f1(a, b, c, z)
    } else {
        pfaff_2f1(a, b, c, z)
    }
}

pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    gauss_2f1(&Hyp2F1Request::new(a, b, c, z))
}

/// `₂F₁(a, b; c; z(s))` as a jet, from
/// `dᵏ/dzᵏ ₂F₁ = (a)ₖ(b)ₖ/(c)ₖ · ₂F₁(a + k, b + k; c + k; z)`.
pub fn hyp2f1_jet<const N: usize>(a: f64, b: f64, c: f64, z: &Jet<N>) -> Result<Jet<N>> {
    let z0 = z.value();
    let mut phi = [0.0; N];
    let mut coef = 1.0;
    for (k, p) in phi.iter_mut().enumerate() {
        let kf = k as f64;
        *p = coef * hyp2f1(a + kf, b + kf, c + kf, z0)?;
        coef *= (a + kf) * (b + kf) / (c + kf);
    }
    Ok(z.compose(&phi))
}
