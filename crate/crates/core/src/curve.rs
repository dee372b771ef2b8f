//! Anything that can hand out coordinate jets along arc length.

use crate::error::Result;
use crate::expr::CurveExpr;
use crate::jet::Jet;

/// A parametrised curve in chart coordinates.
pub trait Curve {
    /// Coordinate components and their first `N - 1` derivatives at `s`.
    fn jets<const N: usize>(&self, s: f64) -> Result<[Jet<N>; 3]>;
}

impl Curve for CurveExpr {
    fn jets<const N: usize>(&self, s: f64) -> Result<[Jet<N>; 3]> {
        self.eval_jet(s)
    }
}

impl<C: Curve> Curve for &C {
    fn jets<const N: usize>(&self, s: f64) -> Result<[Jet<N>; 3]> {
        (**self).jets(s)
    }
}
