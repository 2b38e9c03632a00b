//! The ring `S(Z[t], σ)` with `σ(t) = p t`, arrow objects, and modules over it.

mod arrow;
mod element;
mod module;

pub use arrow::{morphism_check, ArrowMorphism, ArrowObject, Side};
pub use element::{defining_relations, s_mul, SElement, TPoly};
pub use module::{
    arrow_from_module, arrow_morphism_from_hom, arrow_roundtrip, hom_from_arrow_morphism, module_from_arrow,
    module_roundtrip, tensor_over_s, ModuleSplitting, RightSModule, SModule, TruncatedS,
};
