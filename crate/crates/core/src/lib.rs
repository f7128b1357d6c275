//! Exact arithmetic of elliptic curves over rational function fields `F_p(t)`.
//!
//! The crate covers the whole chain needed to certify that a Weierstrass
//! curve over `F_p(t)` has trivial Mordell-Weil and Shafarevich-Tate groups:
//!
//! * [`gfpoly`]: prime and extension fields, `F_p[t]`, factorization.
//! * [`funcfield`]: rational functions, places, valuations, residue maps.
//! * [`weierstrass`]: models, invariants, coordinate changes, height, the
//!   formal group.
//! * [`localred`]: Tate's algorithm (all residue characteristics).
//! * [`global`]: bad places, Shioda-Tate rank, conductor, torsion
//!   certificates and the BSD order of Sha.
//! * [`wcgroup`]: small finite abelian groups and linear independence over
//!   `Z/nZ`.

pub mod error;
pub mod funcfield;
pub mod gfpoly;
pub mod global;
pub mod localred;
pub mod wcgroup;
pub mod weierstrass;

pub use error::{Error, Result};
pub use funcfield::{Place, RationalFunction};
pub use gfpoly::{Field, FieldElement, GaloisField, Poly, PrimeField};
pub use global::{analyze, GlobalReport};
pub use localred::{Kodaira, LocalReduction};
pub use weierstrass::WeierstrassModel;

/// Polynomials in `F_p[t]`.
pub type Polynomial = gfpoly::Polynomial;

/// Polynomials over an extension field `F_{p^d}`.
pub type ExtPolynomial = Poly<GaloisField>;
