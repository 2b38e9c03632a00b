use crate::error::Result;
use crate::fpab::AbHom;
use crate::functors::{Assembly, FunctorKind, LinearFunctor, SummandSum};
use crate::k2l::group::K2LGroup;
use crate::lambda::AdamsData;
use crate::matrix::{Int, IntMatrix};
use crate::sring::{ArrowMorphism, Side};
use crate::zrings::{
    ideal_tensor, make_group_ring_b, quotient_by_ideal_square, ring_tensor, AugmentedRing, Params, RingHom, RingTensor,
};

/// `f ⊗ g: A₁ ⊗ B₁ → A₂ ⊗ B₂` on the tensor bases.
pub fn tensor_ring_map(f: &RingHom, g: &RingHom, source: &RingTensor, target: &RingTensor) -> Result<RingHom> {
    let (a, b) = (f.source(), g.source());
    let mut cols = vec![Vec::new(); source.ring.dim()];
    for (i, row) in source.index.iter().enumerate() {
        for (j, k) in row.iter().enumerate() {
            if let Some(k) = k {
                cols[*k] = target.pure(&f.apply(&a.basis_elem(i)), &g.apply(&b.basis_elem(j)));
            }
        }
    }
    RingHom::new(&source.ring, &target.ring, IntMatrix::from_columns(target.ring.dim(), &cols))
}

/// `K_{2,L}(A ⊗ R, A ⊗ I)` for `R = B` or `B/I²`, with `z` and `Ω_A → Ω_W`.
#[derive(Clone, Debug)]
pub struct K2LSide {
    pub base: AugmentedRing,
    pub tensor: RingTensor,
    pub k2l: K2LGroup,
    pub z: Vec<Int>,
    /// `a δb ↦ (a ⊗ 1) δ(b ⊗ 1)`
    pub omega_embedding: AbHom,
}

impl K2LSide {
    fn new(data: &AdamsData, base: AugmentedRing) -> Result<Self> {
        let tensor = ring_tensor(data.ring(), &base.ring);
        let k2l = K2LGroup::new(&ideal_tensor(&tensor, &base.ideal));
        let z = tensor.right.apply(&base.z);
        let omega_embedding = data.omega().induced(&tensor.left, &k2l.omega)?;
        Ok(K2LSide { base, tensor, k2l, z, omega_embedding })
    }

    fn zpow(&self, k: usize) -> Vec<Int> {
        self.tensor.ring.pow(&self.z, k as u32)
    }

    /// `[z^k ⊗ α]` for generator `g` of `Ω_A`.
    fn omega_class(&self, k: usize, g: usize) -> Vec<Int> {
        self.k2l.class_of(&self.zpow(k), &self.omega_embedding.matrix().column(g))
    }

    /// `[z^k ⊗ a δz]` for basis element `l` of `A`.
    fn dz_class(&self, k: usize, l: usize) -> Vec<Int> {
        let a = self.tensor.left.apply(&self.tensor.left.source().basis_elem(l));
        self.k2l.class_of(&self.zpow(k), &self.k2l.omega.symbol(&a, &self.z))
    }

    /// The map from a sum of functor values, generator images given per summand and piece.
    fn from_summands(&self, sum: &SummandSum, image: impl Fn(FunctorKind, Side, usize) -> Vec<Int>) -> Result<AbHom> {
        let mut cols = Vec::with_capacity(sum.group().ngens());
        for v in &sum.parts {
            let f = LinearFunctor::new(v.kind, &self.base.params)?;
            for (k, piece) in f.pieces.iter().enumerate() {
                for g in 0..(v.offsets[k + 1] - v.offsets[k]) {
                    cols.push(image(v.kind, piece.side, g));
                }
            }
        }
        AbHom::new(sum.group(), &self.k2l.group, IntMatrix::from_columns(self.k2l.group.ngens(), &cols))
    }
}

/// Both decompositions at one `(A, params)`, with the concrete `p_GL`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub params: Params,
    pub ring: String,
    pub assembly: Assembly,
    pub upper: K2LSide,
    pub lower: K2LSide,
    /// `⊕ CF → K_{2,L}(A ⊗ B, A ⊗ I)`
    pub cf_map: AbHom,
    /// `DF_1 ⊕ DF_2 → K_{2,L}(A ⊗ B/I², A ⊗ Ī)`
    pub df_map: AbHom,
    /// Induced by `B → B/I²`.
    pub p_gl: AbHom,
}

impl Decomposition {
    pub fn new(data: &AdamsData, params: &Params) -> Result<Self> {
        let b = make_group_ring_b(params)?;
        let (bbar, proj) = quotient_by_ideal_square(&b)?;
        let upper = K2LSide::new(data, b)?;
        let lower = K2LSide::new(data, bbar)?;
        let assembly = Assembly::new(&data.arrow_object()?, params)?;
        let q = params.q();
        let cf_map = upper.from_summands(&assembly.cf, |kind, side, g| match (kind, side) {
            (FunctorKind::CfA, _) => upper.omega_class(1, g),
            (FunctorKind::CfB, _) => upper.dz_class(q - 1, g),
            (FunctorKind::CfN(n), Side::N) => upper.omega_class(n, g),
            (FunctorKind::CfN(n), Side::M) => upper.dz_class(n - 1, g),
            _ => unreachable!("not a CF summand"),
        })?;
        let df_map = lower.from_summands(&assembly.df, |kind, _, g| match kind {
            FunctorKind::Df1 => lower.omega_class(1, g),
            FunctorKind::Df2 => lower.dz_class(1, g),
            _ => unreachable!("not a DF summand"),
        })?;
        let down = tensor_ring_map(&RingHom::identity(data.ring()), &proj, &upper.tensor, &lower.tensor)?;
        let p_gl = upper.k2l.induced(&down, &lower.k2l)?;
        Ok(Decomposition { params: *params, ring: data.ring().name().to_string(), assembly, upper, lower, cf_map, df_map, p_gl })
    }

    pub fn cf_is_iso(&self) -> bool {
        self.cf_map.is_iso()
    }

    pub fn df_is_iso(&self) -> bool {
        self.df_map.is_iso()
    }

    /// `p_GL ∘ (⊕CF → K) = (DF → K̄) ∘ (summand p_GL)`, exactly.
    pub fn p_gl_matches_summands(&self) -> bool {
        self.p_gl.compose(&self.cf_map).equals(&self.df_map.compose(&self.assembly.p_gl))
    }

    /// `(1 − t)` on each of `DF_1`, `DF_2`, carried through the `DF` decomposition.
    pub fn chi_on_k2l(&self) -> Result<AbHom> {
        let inverse = inverse_of(&self.df_map)?;
        Ok(self.df_map.compose(&self.assembly.chi).compose(&inverse))
    }
}

/// The inverse of an isomorphism, solved column by column in canonical coordinates.
pub fn inverse_of(f: &AbHom) -> Result<AbHom> {
    f.require_iso("inverse")?;
    let src = f.source();
    let tgt = f.target();
    let fc = f.canonical_matrix();
    let ks = src.moduli();
    let kt = tgt.moduli();
    let mut rows: Vec<Vec<Int>> = fc.transpose().row_vecs();
    for (i, d) in kt.iter().enumerate() {
        if !num_traits::Zero::is_zero(d) {
            let mut v = vec![Int::from(0); kt.len()];
            v[i] = d.clone();
            rows.push(v);
        }
    }
    let basis = IntMatrix::from_rows(kt.len(), rows);
    let mut cols = Vec::with_capacity(tgt.ngens());
    for j in 0..tgt.ngens() {
        let y = tgt.to_canonical().mul_vec(&tgt.generator(j));
        let c = crate::normal_form::solve_rows(&basis, &y).expect("isomorphism is surjective");
        cols.push(src.from_canonical().mul_vec(&c[..ks.len()]));
    }
    AbHom::new(tgt, src, IntMatrix::from_columns(src.ngens(), &cols))
}

/// For a ring map `f: A₁ → A₂` commuting with `ψ`: `K(f ⊗ 1) ∘ C₁ = C₂ ∘ ⊕CF(Δf)`.
pub fn naturality(f: &RingHom, source: &Decomposition, target: &Decomposition, delta_f: &ArrowMorphism) -> Result<bool> {
    let params = &source.params;
    let blocks: Vec<Vec<Option<AbHom>>> = (0..source.assembly.cf.parts.len())
        .map(|i| {
            (0..source.assembly.cf.parts.len())
                .map(|j| {
                    (i == j).then(|| {
                        let (s, t) = (&source.assembly.cf.parts[i], &target.assembly.cf.parts[i]);
                        LinearFunctor::new(s.kind, params)?.apply_morphism(delta_f, s, t)
                    })
                    .transpose()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let cf_f = source.assembly.cf.block(&target.assembly.cf, &blocks)?;
    let bid = RingHom::identity(&source.upper.base.ring);
    let w = tensor_ring_map(f, &bid, &source.upper.tensor, &target.upper.tensor)?;
    let k_f = source.upper.k2l.induced(&w, &target.upper.k2l)?;
    Ok(k_f.compose(&source.cf_map).equals(&target.cf_map.compose(&cf_f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;
    use crate::lambda::{adams_catalog, AdamsRing};

    #[test]
    fn integers_at_three() {
        let params = Params::new(3, 1, 1).unwrap();
        let d = Decomposition::new(&adams_catalog(AdamsRing::Integers, 3).unwrap(), &params).unwrap();
        assert_eq!(d.upper.k2l.group.invariant_factors(), InvariantFactors::new(&[3], 0));
        assert!(d.cf_is_iso() && d.df_is_iso() && d.p_gl_matches_summands());
        assert!(d.lower.k2l.group.is_trivial());
    }

    #[test]
    fn df2_at_two() {
        let params = Params::new(2, 2, 2).unwrap();
        let d = Decomposition::new(&adams_catalog(AdamsRing::Integers, 2).unwrap(), &params).unwrap();
        assert_eq!(d.lower.k2l.group.invariant_factors(), InvariantFactors::new(&[2], 0));
        assert!(d.df_is_iso() && d.cf_is_iso() && d.p_gl_matches_summands());
    }

    #[test]
    fn inverse_round_trip() {
        let params = Params::new(3, 1, 1).unwrap();
        let d = Decomposition::new(&adams_catalog(AdamsRing::TruncatedPoly { n: 2 }, 3).unwrap(), &params).unwrap();
        let inv = inverse_of(&d.cf_map).unwrap();
        assert!(inv.compose(&d.cf_map).equals(&AbHom::identity(d.cf_map.source())));
    }
}
