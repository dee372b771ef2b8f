//! Truncated Taylor jets in one variable.
//!
//! A `Jet<N>` carries a scalar function of the arc length together with its
//! first `N - 1` derivatives. Products follow the Leibniz rule and
//! compositions follow Faa di Bruno's formula, both hard-coded up to the
//! fourth derivative, so `N` may be at most 5.
//!
//! [`Jet3`] (value plus three derivatives) is what curve evaluation hands out;
//! deeper and shallower jets appear internally as derivatives are peeled off
//! along the Frenet construction.

use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Highest supported jet length.
pub const MAX_JET: usize = 5;

const BINOMIAL: [[f64; MAX_JET]; MAX_JET] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0, 0.0],
    [1.0, 3.0, 3.0, 1.0, 0.0],
    [1.0, 4.0, 6.0, 4.0, 1.0],
];

/// Value and derivatives `d[k] = f^(k)(s)` for `k < N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    d: [f64; N],
}

/// Value plus first three derivatives.
pub type Jet3 = Jet<4>;

impl<const N: usize> Jet<N> {
    const VALID: () = assert!(N >= 1 && N <= MAX_JET, "jet length must be in 1..=5");

    pub fn from_derivs(d: [f64; N]) -> Self {
        let () = Self::VALID;
        Self { d }
    }

    pub fn constant(c: f64) -> Self {
        let mut d = [0.0; N];
        d[0] = c;
        Self::from_derivs(d)
    }

    /// The independent variable itself, seeded at `s`.
    pub fn variable(s: f64) -> Self {
        let mut d = [0.0; N];
        d[0] = s;
        if N > 1 {
            d[1] = 1.0;
        }
        Self::from_derivs(d)
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.d[0]
    }

    /// k-th derivative.
    #[inline]
    pub fn deriv(&self, k: usize) -> f64 {
        self.d[k]
    }

    pub fn derivs(&self) -> &[f64; N] {
        &self.d
    }

    pub fn v0(&self) -> f64 {
        self.d[0]
    }

    pub fn v1(&self) -> f64 {
        self.d.get(1).copied().unwrap_or(0.0)
    }

    pub fn v2(&self) -> f64 {
        self.d.get(2).copied().unwrap_or(0.0)
    }

    pub fn v3(&self) -> f64 {
        self.d.get(3).copied().unwrap_or(0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.d.iter().all(|x| x.is_finite())
    }

    /// True when every derivative vanishes.
    pub fn is_constant(&self) -> bool {
        self.d[1..].iter().all(|&x| x == 0.0)
    }

    /// d/ds, dropping one order: `M` must be smaller than `N`.
    pub fn derivative<const M: usize>(&self) -> Jet<M> {
        const { assert!(M < N, "derivative must shorten the jet") };
        let mut d = [0.0; M];
        d.copy_from_slice(&self.d[1..=M]);
        Jet::from_derivs(d)
    }

    /// Keep only the first `M` entries.
    pub fn truncate<const M: usize>(&self) -> Jet<M> {
        const { assert!(M <= N, "cannot lengthen a jet by truncation") };
        let mut d = [0.0; M];
        d.copy_from_slice(&self.d[..M]);
        Jet::from_derivs(d)
    }

    /// `phi(self)` given `phi^(k)` evaluated at `self.value()` for `k < N`.
    pub fn compose(&self, phi: &[f64; N]) -> Self {
        let f = &self.d;
        let mut h = [0.0; N];
        h[0] = phi[0];
        if N > 1 {
            h[1] = phi[1] * f[1];
        }
        if N > 2 {
            h[2] = phi[2] * f[1] * f[1] + phi[1] * f[2];
        }
        if N > 3 {
            h[3] = phi[3] * f[1] * f[1] * f[1] + 3.0 * phi[2] * f[1] * f[2] + phi[1] * f[3];
        }
        if N > 4 {
            let f1sq = f[1] * f[1];
            h[4] = phi[4] * f1sq * f1sq
                + 6.0 * phi[3] * f1sq * f[2]
                + phi[2] * (4.0 * f[1] * f[3] + 3.0 * f[2] * f[2])
                + phi[1] * f[4];
        }
        Self::from_derivs(h)
    }

    fn compose_with(&self, derivs: [f64; MAX_JET]) -> Self {
        let mut phi = [0.0; N];
        phi.copy_from_slice(&derivs[..N]);
        self.compose(&phi)
    }

    pub fn sin(&self) -> Self {
        let (s, c) = (libm::sin(self.value()), libm::cos(self.value()));
        self.compose_with([s, c, -s, -c, s])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = (libm::sin(self.value()), libm::cos(self.value()));
        self.compose_with([c, -s, -c, s, c])
    }

    pub fn tan(&self) -> Result<Self> {
        let x = self.value();
        if libm::cos(x) == 0.0 {
            return Err(Error::domain("tan evaluated at a pole"));
        }
        let t = libm::tan(x);
        let sec2 = 1.0 + t * t;
        let out = self.compose_with([
            t,
            sec2,
            2.0 * t * sec2,
            sec2 * (2.0 + 6.0 * t * t),
            sec2 * (16.0 * t + 24.0 * t * t * t),
        ]);
        finite(out, "tan")
    }

    pub fn exp(&self) -> Self {
        let e = libm::exp(self.value());
        self.compose_with([e; MAX_JET])
    }

    pub fn ln(&self) -> Result<Self> {
        let x = self.value();
        if !(x > 0.0) {
            return Err(Error::domain("ln of a non-positive value"));
        }
        let r = 1.0 / x;
        let r2 = r * r;
        Ok(self.compose_with([libm::log(x), r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2]))
    }

    pub fn sqrt(&self) -> Result<Self> {
        let x = self.value();
        if x == 0.0 && self.is_constant() {
            return Ok(Self::constant(0.0));
        }
        if !(x > 0.0) {
            return Err(Error::domain("sqrt of a non-positive value"));
        }
        let r = libm::sqrt(x);
        let inv = 1.0 / x;
        // d^k/dx^k sqrt(x) = r * c_k * x^-k
        Ok(self.compose_with([
            r,
            0.5 * r * inv,
            -0.25 * r * inv * inv,
            0.375 * r * inv * inv * inv,
            -0.9375 * r * inv * inv * inv * inv,
        ]))
    }

    pub fn atan(&self) -> Self {
        let x = self.value();
        let q = 1.0 / (1.0 + x * x);
        let x2 = x * x;
        self.compose_with([
            libm::atan(x),
            q,
            -2.0 * x * q * q,
            (6.0 * x2 - 2.0) * q * q * q,
            (24.0 * x - 24.0 * x2 * x) * q * q * q * q,
        ])
    }

    /// `1 / self`; errors when the value is exactly zero.
    pub fn recip(&self) -> Result<Self> {
        let x = self.value();
        if x == 0.0 {
            return Err(Error::domain("division by zero"));
        }
        Ok(self.recip_unchecked())
    }

    fn recip_unchecked(&self) -> Self {
        let r = 1.0 / self.value();
        let r2 = r * r;
        self.compose_with([r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2, 24.0 * r2 * r2 * r])
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.recip()?)
    }

    /// Integer power by repeated squaring; sign of the base is preserved.
    pub fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { *self };
        let mut k = n.unsigned_abs();
        let mut acc = Self::constant(1.0);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * sq;
            }
            sq = sq * sq;
            k >>= 1;
        }
        finite(acc, "pow")
    }

    /// `self ^ exponent`. Constant integral exponents go through [`Jet::powi`];
    /// anything else requires a positive base and uses `exp(e ln b)`.
    pub fn pow(&self, exponent: &Self) -> Result<Self> {
        let e = exponent.value();
        if exponent.is_constant() && e == libm::trunc(e) && libm::fabs(e) <= i32::MAX as f64 {
            return self.powi(e as i32);
        }
        if !(self.value() > 0.0) {
            return Err(Error::domain("non-integer power requires a positive base"));
        }
        finite((*exponent * self.ln()?).exp(), "pow")
    }

    /// Euclidean-style square root of a sum of squares of jets.
    pub fn hypot3(v: &[Self; 3]) -> Result<Self> {
        (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
    }
}

fn finite<const N: usize>(j: Jet<N>, what: &str) -> Result<Jet<N>> {
    if j.is_finite() {
        Ok(j)
    } else {
        Err(Error::Domain(alloc::format!(
            "{what} produced a non-finite value"
        )))
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a += b;
        }
        Self { d }
    }
}

impl<const N: usize> AddAssign for Jet<N> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a -= b;
        }
        Self { d }
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            d: self.d.map(|x| -x),
        }
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut d = [0.0; N];
        for (k, out) in d.iter_mut().enumerate() {
            *out = (0..=k)
                .map(|j| BINOMIAL[k][j] * self.d[j] * rhs.d[k - j])
                .sum();
        }
        Self { d }
    }
}

/// Unchecked quotient; a zero denominator yields non-finite entries.
/// Use [`Jet::try_div`] when the denominator is not known to be nonzero.
impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip_unchecked()
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(mut self, rhs: f64) -> Self {
        self.d[0] += rhs;
        self
    }
}

impl<const N: usize> Sub<f64> for Jet<N> {
    type Output = Self;
    fn sub(mut self, rhs: f64) -> Self {
        self.d[0] -= rhs;
        self
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self {
            d: self.d.map(|x| x * rhs),
        }
    }
}

impl<const N: usize> Div<f64> for Jet<N> {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        Self {
            d: self.d.map(|x| x / rhs),
        }
    }
}

impl<const N: usize> Mul<Jet<N>> for f64 {
    type Output = Jet<N>;
    fn mul(self, rhs: Jet<N>) -> Jet<N> {
        rhs * self
    }
}

/// Scalars the geometry code is generic over: plain `f64` and jets.
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + Add<f64, Output = Self>
{
    fn cst(c: f64) -> Self;
    fn value(&self) -> f64;
}

impl Real for f64 {
    fn cst(c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
}

impl<const N: usize> Real for Jet<N> {
    fn cst(c: f64) -> Self {
        Jet::constant(c)
    }
    fn value(&self) -> f64 {
        self.d[0]
    }
}

/// Derivative of each entry of a jet triple.
pub fn derivative3<const N: usize, const M: usize>(v: &[Jet<N>; 3]) -> [Jet<M>; 3] {
    [v[0].derivative(), v[1].derivative(), v[2].derivative()]
}

/// Truncation of each entry of a jet triple.
pub fn truncate3<const N: usize, const M: usize>(v: &[Jet<N>; 3]) -> [Jet<M>; 3] {
    [v[0].truncate(), v[1].truncate(), v[2].truncate()]
}

/// Values of a jet triple.
pub fn values3<const N: usize>(v: &[Jet<N>; 3]) -> [f64; 3] {
    [v[0].value(), v[1].value(), v[2].value()]
}
