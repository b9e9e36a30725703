//! Group structure of elliptic curves over small finite fields.
//!
//! The crate counts points on short Weierstrass curves `y^2 = x^3 + Ax + B`
//! over `F_{p^r}` (`p >= 5`) by exhaustive enumeration, determines the
//! decomposition `E(F_q) = Z/n1 x Z/n2`, and cross-checks the result against
//! several independent descriptions:
//!
//! - [`census`]: brute-force counts, traces, supersingularity, structure, and
//!   the closed-form orders for the `j = 0` and `j = 1728` families.
//! - [`vladut`]: which group structures a given isogeny class admits.
//! - [`frobenius`]: the quadratic order generated by Frobenius, conductor
//!   estimation, and the conductor-based isomorphism test.
//! - [`survey`]: family surveys grouped into isogeny classes, reproduction of
//!   the reference tables, and text rendering.
//!
//! [`field`] and [`curve`] provide the arithmetic underneath.

pub mod arith;
pub mod census;
pub mod curve;
pub mod field;
pub mod frobenius;
pub mod survey;
pub mod vladut;

pub use census::{CurveCensus, GroupShape};
pub use curve::{Curve, Point};
pub use field::{Fe, Field};
