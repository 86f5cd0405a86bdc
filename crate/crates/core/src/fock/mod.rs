//! The relative Lie algebra complex C^ℓ = (Λ^ℓ p* ⊗ P_k)^{SO(n)} in the Fock model.

mod cochain;
mod complex;
mod families;
mod free;
mod kernel;
mod random;

pub use cochain::{
    big_phi, iota_sign, named_cochain, outer_product, phi1, phik, star_phi, Cochain, DiffMode, Involution, Named,
};
pub use complex::{BasisVector, Block, BlockKey, CochainModel, CohomCell, GradedComplex, Level, SparseVec};
pub use families::{build_complex, direct_cohomology_dims, family_rank, pm_basis_vectors};
pub use free::{FreeCoord, FreeModel, Part};
pub use kernel::{invariant_dim, term_block_key, InvariantSpace, KernelModel, Term};
pub use random::{random_cochain, random_invariant_cochain, random_polynomial};


#[cfg(test)]
mod model_tests;
