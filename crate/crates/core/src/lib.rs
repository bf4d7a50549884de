//! Exact computations with sortable elements, Cambrian semilattices and
//! Cambrian fans of Coxeter groups.

pub mod cartan;
pub mod catalog;
pub mod coxeter;
pub mod error;
pub mod fan;
pub mod forms;
pub mod groupfile;
pub mod linalg;
pub mod rank_two;
pub mod render;
pub mod scalar;
pub mod sortable;
pub mod verify;
pub mod weak_order;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use scalar::{QuadraticNumber, Scalar};

/// Exact rationals.
pub type Rational = BigRational;
/// A group whose Cartan entries are rational.
pub type RationalGroup = coxeter::CoxeterGroup<Rational>;
/// A group over a quadratic field ℚ(√d).
pub type QuadraticGroup = coxeter::CoxeterGroup<QuadraticNumber>;
