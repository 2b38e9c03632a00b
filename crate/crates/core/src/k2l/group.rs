use num_traits::Zero;

use crate::error::{Error, Result};

use crate::fpab::{tensor_z, AbHom, FpAbGroup, Tensor};
use crate::matrix::{Int, IntMatrix};
use crate::zrings::{module_tensor_over_w, BalancedTensor, IdealData, KahlerModule, PresentedRing, RingHom};

/// `K_{2,L}(W, J) = coker(δ*: J ⊗ J → J ⊗_W Ω_W)` with
/// `δ*(a ⊗ b) = a ⊗ δb + b ⊗ δa`.
#[derive(Clone, Debug)]
pub struct K2LGroup {
    pub ideal: IdealData,
    pub omega: KahlerModule,
    pub balanced: BalancedTensor,
    pub jj: Tensor,
    pub delta_star: AbHom,
    pub group: FpAbGroup,
    pub projection: AbHom,
}

impl K2LGroup {
    pub fn new(ideal: &IdealData) -> Self {
        Self::with_omega(ideal, KahlerModule::new(ideal.ring()))
    }

    pub fn with_omega(ideal: &IdealData, omega: KahlerModule) -> Self {
        let balanced = module_tensor_over_w(ideal, &omega);
        let jg = ideal.group();
        let jj = tensor_z(jg, jg);
        let n = jg.ngens();
        let deltas: Vec<Vec<Int>> = ideal.span().iter().map(|s| omega.delta(s)).collect();
        let mut cols = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let x = balanced.pure(&jg.generator(a), &deltas[b]);
                let y = balanced.pure(&jg.generator(b), &deltas[a]);
                cols.push(x.iter().zip(&y).map(|(u, v)| u + v).collect::<Vec<_>>());
            }
        }
        let m = IntMatrix::from_columns(balanced.group.ngens(), &cols);
        let delta_star = AbHom::new(&jj.group, &balanced.group, m).expect("δ* is well defined on J ⊗ J");
        let (group, projection) = delta_star.cokernel();
        K2LGroup { ideal: ideal.clone(), omega, balanced, jj, delta_star, group, projection }
    }

    pub fn ring(&self) -> &PresentedRing {
        self.ideal.ring()
    }

    /// Class of `j ⊗ ω` for `j ∈ J` (a ring element) and `ω ∈ Ω_W`.
    pub fn class_of(&self, j: &[Int], omega: &[Int]) -> Vec<Int> {
        let coords = self.ideal.coords_of(j).expect("element lies in the ideal");
        self.projection.apply(&self.balanced.pure(&coords, omega))
    }

    /// The map induced by a ring map `f` with `f(J) ⊆ J'`.
    pub fn induced(&self, f: &RingHom, target: &K2LGroup) -> Result<AbHom> {
        let om = self.omega.induced(f, &target.omega)?;
        let mut cols = Vec::with_capacity(self.balanced.group.ngens());
        for j in self.ideal.span() {
            let img = target.ideal.coords_of(&f.apply(j)).ok_or_else(|| {
                Error::ValidationFailed(format!("{} -> {} does not preserve the ideals", f.source(), f.target()))
            })?;
            for g in 0..self.omega.ngens() {
                cols.push(target.balanced.pure(&img, &om.matrix().column(g)));
            }
        }
        let h = AbHom::new(&self.balanced.group, &target.balanced.group, IntMatrix::from_columns(target.balanced.group.ngens(), &cols))?;
        self.delta_star.induced_on_cokernel(&self.group, &target.projection.compose(&h))
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.group.ngens()]
    }
}
