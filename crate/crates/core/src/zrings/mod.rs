//! Commutative rings that are finitely generated abelian groups, their ideals
//! and modules of Kähler differentials.

mod ideal;
mod kahler;
mod params;
mod poly;
mod ring;

pub use ideal::{ideal_tensor, IdealData};
pub use kahler::{cross_check, module_tensor_over_w, BalancedTensor, KahlerKind, KahlerModule};
pub use params::{augmentation, make_group_ring_b, quotient_by_ideal_square, AugmentedRing, Params};
pub use poly::{Monomial, Poly};
pub use ring::{ring_product, ring_tensor, Presentation, PresentedRing, RingHom, RingProduct, RingTensor};
