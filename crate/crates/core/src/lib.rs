//! Exact computations in a Hopf algebra `A` whose right coideal subalgebra
//! generated by `x, y` is the coordinate ring of the nodal cubic
//! `y^2 = x^2 + x^3`.
//!
//! The crate builds `A` at a rational point `(q, p)` of the curve as a
//! confluent rewriting system over the free algebra on `x, y, a, a^-1, b`,
//! and checks the algebraic structure around it:
//!
//! * [`rewrite`]: reduction, ambiguities, diamond check, completion
//! * [`nodal`]: the presentation of `A`, its basis, growth and freeness over `B`
//! * [`hopf`]: coproduct, counit, antipode and their axioms
//! * [`galois`]: the quotient coalgebra `C = A/B⁺A` and its coaction
//!
//! All arithmetic is exact over `Q(r)`, `r` a primitive sixth root of unity.

pub mod cli;
pub mod error;
pub mod freealg;
pub mod galois;
pub mod hopf;
pub(crate) mod linalg;
pub mod nodal;
pub mod report;
pub mod rewrite;
pub mod sample;
pub mod scalar;

pub use error::{Error, ParseError, Result};
pub use freealg::{parse_expr, Letter, NcPoly, TensorPoly, Word};
pub use nodal::{build_algebra, NodalAlgebra};
pub use scalar::{CurvePoint, Rational, Scalar};
