//! Exact computations in the Weyl algebra `A_n = K<x_1..x_n, d_1..d_n>` over `Q`
//! around Jacobian maps, their Weyl-algebra extensions, Poisson endomorphisms
//! of `P_{2n}` and filtrations of twisted modules.
//!
//! Variable indices in the Rust API are zero-based: `Poly::var(n, 0)` is `x1`.
//! Text input and output use the one-based names `x1..xn` and `d1..dn`.

pub mod endo;
pub mod error;
pub mod gr;
pub mod linalg;
pub mod parse;
pub mod poisson;
pub mod ratpoly;
pub mod twisted;
pub mod weyl;

#[cfg(test)]
pub(crate) mod testutil;

pub use endo::{Derivation, PolyEndo, RelationReport, WeylEndo};
pub use error::{Error, Result};
pub use parse::{parse_poly, parse_weyl};
pub use ratpoly::{rat, ratio, Degree, Monomial, Poly, PolyMatrix, Rational};
pub use weyl::{filtration_basis, filtration_dim, WeylElement, WeylMonomial};
