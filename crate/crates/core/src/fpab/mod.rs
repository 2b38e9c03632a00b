//! Finitely presented abelian groups and their homomorphisms.

mod constructions;
mod group;
mod hom;

pub use constructions::{direct_sum, fiber_product, tensor_z, torsion_part, DirectSum, FiberProduct, Tensor};
pub use group::{FpAbGroup, GroupElement, InvariantFactors};
pub use hom::AbHom;
