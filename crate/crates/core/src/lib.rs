//! Frenet apparatus and geodesics of curves in three model 3-manifolds
//! (Euclidean `E3`, the Sasakian `R3(-3)`, and the half-space `H3(-1)`),
//! each equipped with the semi-symmetric metric connection
//! `∇̃_X Y = ∇_X Y + ω(Y) X − g(X, Y) U`.
//!
//! The crate is `no_std` with `alloc`. Curves are given as text
//! ([`expr::parse_curve`]) and differentiated exactly with truncated Taylor
//! jets ([`jet::Jet`]); no finite differences are used anywhere in the
//! library.

#![no_std]

extern crate alloc;

pub mod curve;
pub mod error;
pub mod expr;
pub mod frenet;
pub mod geodesic;
pub mod grid;
pub mod hyp2f1;
pub mod jet;
pub mod linalg;
pub mod manifold;

pub use error::{Error, Result};
pub use expr::{parse_curve, CurveExpr};
pub use jet::{Jet, Jet3};
pub use manifold::{ChartPoint, FrameVector, Manifold, ModelId};
