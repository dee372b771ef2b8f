//! Uniform parameter grids `start:end:step`.

use crate::error::{Error, Result};

/// Slack allowed when deciding whether `(end - start) / step` is integral.
pub const INTEGRAL_SLACK: f64 = 1e-9;

/// Grid starting at `start` with spacing `step`. The end point is included
/// when `(end - start) / step` is an integer to within [`INTEGRAL_SLACK`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleGrid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl SampleGrid {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::Step(step));
        }
        if !(start.is_finite() && end.is_finite()) || !(start < end) {
            return Err(Error::EmptyRange(alloc::format!(
                "need start < end, got {start}:{end}"
            )));
        }
        Ok(Self { start, end, step })
    }

    fn steps(&self) -> (usize, bool) {
        let n = (self.end - self.start) / self.step;
        let r = libm::round(n);
        if libm::fabs(n - r) <= INTEGRAL_SLACK {
            (r as usize, true)
        } else {
            (libm::floor(n) as usize, false)
        }
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.steps().0 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at(&self, i: usize) -> f64 {
        let (n, exact) = self.steps();
        if exact && i == n {
            self.end
        } else {
            self.start + i as f64 * self.step
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.at(i))
    }
}
