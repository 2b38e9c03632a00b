//! Adams operations on the ring catalog, the arrow object `Δ(A)`, a bounded
//! universal λ-ring, and transformations defined by symbolic formulas.

mod adams;
mod symbolic;
mod universal;

pub use adams::{adams_catalog, is_p_torsion_free, AdamsData, AdamsRing};
pub use symbolic::{
    check_inverse, check_naturality, check_well_defined, sample_elements, Expr, ExprRing, RelationFamily,
    SymbolicTransformation, WellDefinedReport, Witness,
};
pub use universal::{is_identity_on_generators, Substitution, UniversalTruncation};
