//! Exact arithmetic in `F_p`, in extensions `F_p[x]/(π)`, and in `F_p[t]`.

mod factor;
mod field;
mod parse;
mod poly;

pub use factor::{Factorization, EXHAUSTIVE_LIMIT};
pub use field::{is_prime, Field, FieldElement, GaloisField, PrimeField};
pub use parse::parse_polynomial;
pub use poly::{Degree, Poly, Polynomial};
