//! Exact scalars, matrices, hyperplanes and flats.

pub mod field;
pub mod flat;
pub mod hyperplane;
pub mod linalg;

pub use field::{Field, FieldKind, PrimeField, Rational, Rationals};
pub use flat::{Flat, Intersection, Trace};
pub use hyperplane::{Degeneracy, Hyperplane};
pub use linalg::{rank_of, rref, Matrix, Rref};
