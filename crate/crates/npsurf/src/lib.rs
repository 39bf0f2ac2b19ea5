//! Exact computation of Koszul cohomology and Betti tables of graded module
//! tables, property-(N_p) checks, and lattice-level decision procedures for
//! property (N_p) on polarized K3, abelian and Enriques surfaces.

pub mod enumerate;
pub mod error;
pub mod exterior;
pub mod fixtures;
pub mod graded;
pub mod koszul;
pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod surface;
pub mod theorems;
pub mod verdict;

pub use error::{Error, Result};
pub use exterior::ExteriorIndex;
pub use graded::GradedModuleTable;
pub use koszul::{betti_table, check_np, koszul_cohomology_dim, koszul_differential, BettiTable};
pub use matrix::RationalMatrix;
pub use rational::Rational;

#[cfg(test)]
mod thread_safety {
    // all values are immutable after construction and safe to share
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_shareable() {
        assert_send_sync::<crate::RationalMatrix>();
        assert_send_sync::<crate::GradedModuleTable>();
        assert_send_sync::<crate::BettiTable>();
        assert_send_sync::<crate::lattice::PicardLattice>();
        assert_send_sync::<crate::lattice::DivisorClass>();
        assert_send_sync::<crate::surface::PolarizedSurface>();
        assert_send_sync::<crate::verdict::Verdict>();
    }
}
