//! Exact computation of divisibility, atoms, factorizations and subatomic
//! witnesses (Furstenberg, almost-atomic, quasi-atomic) in additive monoids
//! and in the multiplicative monoids of semidomains.

pub mod budget;
pub mod error;
pub mod exact;
pub mod monoids;
pub mod poly;
pub mod semidomains;
pub mod upoly;
pub mod witness;

pub use budget::SearchBudget;
pub use error::{Error, Result};

/// Arbitrary-precision rational in lowest terms.
pub type Rational = num_rational::BigRational;
pub use exact::QuadExt;
pub use upoly::{DensePoly, IntPoly, RatPoly};

/// Polynomials over ℚ(√d).
pub type QuadPoly = DensePoly<QuadExt>;
