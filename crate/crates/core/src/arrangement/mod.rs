//! Arrangements, their intersection semi-lattices and classical invariants.

mod invariants;
mod model;
mod ops;
mod poly;
mod semilattice;

pub use invariants::InvariantBundle;
pub use model::{Arrangement, Extended};
pub use ops::{
    char_poly, char_poly_of, essentialize, faces_via_restrictions, locate, localization,
    restriction, whitney_poly_of, whitney_poly_via_restrictions, Essentialization,
};
pub use poly::{BiPoly, Poly};
pub use semilattice::SemiLattice;

use crate::exactq::Field;

pub fn build_semilattice<F: Field>(a: &Arrangement<F>) -> SemiLattice<F> {
    SemiLattice::build(a)
}

pub fn whitney_poly<F: Field>(a: &Arrangement<F>) -> BiPoly {
    whitney_poly_of(&SemiLattice::build(a))
}

pub fn invariants<F: Field>(a: &Arrangement<F>) -> InvariantBundle {
    InvariantBundle::from_lattice(&SemiLattice::build(a))
}
