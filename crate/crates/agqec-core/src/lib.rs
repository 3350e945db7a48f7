//! Exact construction and certification of CSS quantum codes built from
//! algebraic-geometry codes on the maximal curves y^q + y = x^m over F_{q^2}.
//!
//! The pipeline is: finite-field arithmetic ([`gf`]), dense linear algebra
//! ([`fflinalg`]), curve places and divisors ([`curve`]), Riemann-Roch bases
//! ([`riemann_roch`]), evaluation codes and their duals ([`agcode`]), nested
//! CSS pairs ([`css`]), exact/bracketed minimum-weight certification
//! ([`minweight`]), subfield expansion ([`expand`]), and asymptotic
//! rate-distance schedules over a recursive tower ([`asymptotics`]).
//! [`tables`] holds the reference parameter fixtures the CLI checks against.

pub mod agcode;
pub mod asymptotics;
pub mod cli;
pub mod css;
pub mod curve;
pub mod error;
pub mod expand;
pub mod fflinalg;
pub mod gf;
pub mod minweight;
pub mod riemann_roch;
pub mod tables;

pub use agcode::LinearCode;
pub use curve::{Curve, Divisor, Place};
pub use error::{Error, Result};
pub use fflinalg::Matrix;
pub use gf::{Field, FieldElement};
