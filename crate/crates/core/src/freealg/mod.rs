//! Words over `{x, y, a, g, b}` (with `g = a^-1`), noncommutative
//! polynomials, tensor polynomials and the expression parser.

mod parse;
mod poly;
mod tensor;
mod word;

pub use parse::parse_expr;
pub use poly::NcPoly;
pub(crate) use poly::write_terms;
pub use tensor::{Legs, TensorPoly};
pub use word::{w, Letter, Word};
