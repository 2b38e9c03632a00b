//! Relative `K_2(W, J)` of a finite commutative ring with a split nilpotent ideal,
//! from symbols `⟨a, b⟩` (one argument in `J`) and three relation families.

mod audit;
mod presentation;

pub use audit::{relation_audit, FamilyAudit, RelationAudit};
pub use presentation::{ms_k2, ms_presentation, product_ideal, MsFamily, MsOptions, MsPresentation, Reading, DEFAULT_MAX_SIZE};
