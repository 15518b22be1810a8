//! Exact computation of intersection semi-lattices and combinatorial
//! invariants of affine hyperplane arrangements over `Q` and `F_p`, together
//! with the induced adjoint arrangement that classifies all one-element
//! extensions `A + H`.

pub mod error;
pub mod exactq;

pub use error::{Error, Result};
pub mod arrangement;
pub mod corpus;
pub mod nbc;
pub mod adjoint;
pub mod extension;
pub mod finitefield;
pub mod restriction;
pub mod cli;
