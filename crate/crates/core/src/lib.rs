//! Finitely presented Hopf algebras over exact Laurent coefficients, with
//! degree-truncated quotient coalgebras, coactions, cotensor products and
//! the canonical maps of coalgebra Galois extensions and coextensions.
//!
//! Everything is generic over the coefficient [`Ring`]; the aliases below
//! fix the three coefficient types in use.

pub mod freealg;
pub mod galois;
pub mod linalg;
pub mod models;
pub mod quotient;
pub mod report;
pub mod ring;
pub mod scalars;
pub mod suite;
pub mod tensoralg;

pub use ring::{Field, Ring};

use num_rational::BigRational;

/// Exact symbolic coefficient.
pub type Scalar = scalars::Laurent;
/// Coefficient after specializing every parameter.
pub type Rational = BigRational;

pub type AlgebraElement = freealg::Element<Scalar>;
pub type TensorElement = tensoralg::Tensor<Scalar>;
pub type SymbolicPresentation = freealg::Presentation<Scalar>;
pub type RationalElement = freealg::Element<Rational>;
pub type RationalPresentation = freealg::Presentation<Rational>;
