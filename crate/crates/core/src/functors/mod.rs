//! Functors on arrow objects presented by pieces `M/nM`, `N/nN` and relation
//! families, their structure maps, and the two comparison squares.

mod assembly;
mod audit;
mod linear;
mod squares;

pub use linear::{all_functors, Entry, Family, FunctorKind, FunctorValue, LinearFunctor, NatTrans, Piece};
pub use squares::{analyse, square_analysis, SquareKind, SquareReport, StructureMaps};
pub use audit::{additivity_check, cokernel_check, cover_check, representing_module, tensorlike_audit, AuditVerdict, CoverReport};
pub use assembly::{assemble_fp, assemble_tc, cf_kinds, tc_kinds, Assembly, SummandSum};
