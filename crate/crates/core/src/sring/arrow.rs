use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::fpab::{direct_sum, AbHom, FpAbGroup};
use crate::matrix::{Int, IntMatrix};
use crate::sring::element::TPoly;

/// The two halves of an arrow object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    M,
    N,
}

/// A crossed map `D: M → N` of `Z[t]`-modules with `D∘t_M = p·t_N∘D`.
#[derive(Clone, Debug)]
pub struct ArrowObject {
    pub name: String,
    p: u32,
    m: FpAbGroup,
    t_m: AbHom,
    n: FpAbGroup,
    t_n: AbHom,
    d: AbHom,
}

impl ArrowObject {
    pub fn new(name: impl Into<String>, p: u32, t_m: AbHom, t_n: AbHom, d: AbHom) -> Result<Self> {
        let m = t_m.source().clone();
        let n = t_n.source().clone();
        if !t_m.target().same_as(&m) || !t_n.target().same_as(&n) {
            return Err(Error::DimensionMismatch("t must be an endomorphism".into()));
        }
        if !d.source().same_as(&m) || !d.target().same_as(&n) {
            return Err(Error::DimensionMismatch("D must map M to N".into()));
        }
        let lhs = d.compose(&t_m);
        let rhs = t_n.compose(&d).scale(&Int::from(p));
        if let Some(j) = (0..m.ngens()).find(|&j| !n.eq_elems(&lhs.matrix().column(j), &rhs.matrix().column(j))) {
            return Err(Error::CrossedConditionFailed(format!("generator {j} of M")));
        }
        Ok(ArrowObject { name: name.into(), p, m, t_m, n, t_n, d })
    }

    /// Builds from integer matrices; the groups come from relation lists.
    pub fn from_matrices(
        name: impl Into<String>,
        p: u32,
        m: &FpAbGroup,
        t_m: IntMatrix,
        n: &FpAbGroup,
        t_n: IntMatrix,
        d: IntMatrix,
    ) -> Result<Self> {
        let t_m = AbHom::new(m, m, t_m)?;
        let t_n = AbHom::new(n, n, t_n)?;
        let d = AbHom::new(m, n, d)?;
        Self::new(name, p, t_m, t_n, d)
    }

    /// `Z[t]/t^d →D→ Z[t]/t^d` with `D(t^i) = p^i t^i`.
    pub fn truncation(p: u32, d: usize) -> Self {
        let g = FpAbGroup::free(d);
        let shift = shift_matrix(d);
        let diag: Vec<Int> = (0..d).map(|i| Pow::pow(Int::from(p), i as u32)).collect();
        Self::from_matrices(format!("T{d}"), p, &g, shift.clone(), &g, shift, IntMatrix::diagonal(&diag))
            .expect("truncation object is crossed")
    }

    /// `0 → Z[t]/t^d`.
    pub fn free_n(p: u32, d: usize) -> Self {
        let g = FpAbGroup::free(d);
        let zero = FpAbGroup::trivial();
        Self::from_matrices(format!("N{d}"), p, &zero, IntMatrix::zeros(0, 0), &g, shift_matrix(d), IntMatrix::zeros(d, 0))
            .expect("object with M = 0 is crossed")
    }

    pub fn zero(p: u32) -> Self {
        let z = FpAbGroup::trivial();
        Self::from_matrices("0", p, &z, IntMatrix::zeros(0, 0), &z, IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
            .expect("zero object")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> &FpAbGroup {
        &self.m
    }

    pub fn n(&self) -> &FpAbGroup {
        &self.n
    }

    pub fn t_m(&self) -> &AbHom {
        &self.t_m
    }

    pub fn t_n(&self) -> &AbHom {
        &self.t_n
    }

    pub fn d(&self) -> &AbHom {
        &self.d
    }

    pub fn side(&self, s: Side) -> &FpAbGroup {
        match s {
            Side::M => &self.m,
            Side::N => &self.n,
        }
    }

    pub fn t(&self, s: Side) -> &AbHom {
        match s {
            Side::M => &self.t_m,
            Side::N => &self.t_n,
        }
    }

    /// `f(t)` acting on one side.
    pub fn t_poly(&self, s: Side, f: &TPoly) -> AbHom {
        crate::sring::module::poly_in(self.t(s), f)
    }

    pub fn direct_sum(&self, other: &ArrowObject) -> ArrowObject {
        self.direct_sum_maps(other).0
    }

    /// `X ⊕ Y` with its two injections.
    pub fn direct_sum_maps(&self, other: &ArrowObject) -> (ArrowObject, ArrowMorphism, ArrowMorphism) {
        assert_eq!(self.p, other.p);
        let ms = direct_sum(&[self.m.clone(), other.m.clone()]);
        let ns = direct_sum(&[self.n.clone(), other.n.clone()]);
        let t_m = IntMatrix::block_diag(&[self.t_m.matrix(), other.t_m.matrix()]);
        let t_n = IntMatrix::block_diag(&[self.t_n.matrix(), other.t_n.matrix()]);
        let d = IntMatrix::block_diag(&[self.d.matrix(), other.d.matrix()]);
        let sum = Self::from_matrices(format!("{} + {}", self.name, other.name), self.p, &ms.group, t_m, &ns.group, t_n, d)
            .expect("direct sum of crossed maps is crossed");
        let inj = |k: usize, x: &ArrowObject| {
            ArrowMorphism::new(x, &sum, ms.injections[k].clone(), ns.injections[k].clone()).expect("summand injection")
        };
        let (i1, i2) = (inj(0, self), inj(1, other));
        (sum, i1, i2)
    }

    /// The quotient by images `a: A → M` and `b: B → N` whose images are
    /// stable under `t` and with `D(im a) ⊆ im b`, with its projection.
    fn quotient(&self, name: String, a: &AbHom, b: &AbHom) -> Result<(ArrowObject, ArrowMorphism)> {
        let (mc, qm) = a.cokernel();
        let (nc, qn) = b.cokernel();
        let t_m = a.induced_on_cokernel(&mc, &qm.compose(&self.t_m))?;
        let t_n = b.induced_on_cokernel(&nc, &qn.compose(&self.t_n))?;
        let d = a.induced_on_cokernel(&mc, &qn.compose(&self.d))?;
        let q = ArrowObject::new(name, self.p, t_m, t_n, d)?;
        let proj = ArrowMorphism::new(self, &q, qm, qn)?;
        Ok((q, proj))
    }

    /// `X / t^d X`.
    pub fn quotient_by_t_power(&self, d: u32) -> ArrowObject {
        self.quotient(format!("{}/t^{d}", self.name), &self.t_m.pow(d), &self.t_n.pow(d))
            .expect("t^d X is a sub-object")
            .0
    }

    /// Cokernel of a morphism with its projection from the target.
    pub fn cokernel(f: &ArrowMorphism) -> (ArrowObject, ArrowMorphism) {
        f.target.quotient(format!("coker({} -> {})", f.source.name, f.target.name), &f.alpha, &f.beta)
            .expect("the image of a morphism is a sub-object")
    }

    pub fn identity(&self) -> ArrowMorphism {
        ArrowMorphism::new(self, self, AbHom::identity(&self.m), AbHom::identity(&self.n)).expect("identity")
    }
}

/// Nilpotent shift `t^i ↦ t^{i+1}` on `Z^d`.
pub(crate) fn shift_matrix(d: usize) -> IntMatrix {
    let mut s = IntMatrix::zeros(d, d);
    for i in 1..d {
        s[(i, i - 1)] = Int::one();
    }
    s
}

/// A pair `(α, β)` commuting with `t` on both sides and with `D`.
#[derive(Clone, Debug)]
pub struct ArrowMorphism {
    pub source: ArrowObject,
    pub target: ArrowObject,
    pub alpha: AbHom,
    pub beta: AbHom,
}

impl ArrowMorphism {
    pub fn new(source: &ArrowObject, target: &ArrowObject, alpha: AbHom, beta: AbHom) -> Result<Self> {
        if !alpha.source().same_as(&source.m) || !alpha.target().same_as(&target.m) {
            return Err(Error::DimensionMismatch("alpha must map M1 to M2".into()));
        }
        if !beta.source().same_as(&source.n) || !beta.target().same_as(&target.n) {
            return Err(Error::DimensionMismatch("beta must map N1 to N2".into()));
        }
        if !alpha.compose(&source.t_m).equals(&target.t_m.compose(&alpha)) {
            return Err(Error::ValidationFailed("alpha does not commute with t".into()));
        }
        if !beta.compose(&source.t_n).equals(&target.t_n.compose(&beta)) {
            return Err(Error::ValidationFailed("beta does not commute with t".into()));
        }
        if !morphism_check(&alpha, &beta, source, target) {
            return Err(Error::ValidationFailed("beta∘D differs from D∘alpha".into()));
        }
        Ok(ArrowMorphism { source: source.clone(), target: target.clone(), alpha, beta })
    }

    pub fn compose(&self, other: &ArrowMorphism) -> ArrowMorphism {
        ArrowMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            alpha: self.alpha.compose(&other.alpha),
            beta: self.beta.compose(&other.beta),
        }
    }

    pub fn is_iso(&self) -> bool {
        self.alpha.is_iso() && self.beta.is_iso()
    }
}

/// Whether `β∘D₁ = D₂∘α`.
pub fn morphism_check(alpha: &AbHom, beta: &AbHom, x1: &ArrowObject, x2: &ArrowObject) -> bool {
    beta.compose(&x1.d).equals(&x2.d.compose(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;

    fn z_id_z(p: u32) -> ArrowObject {
        let z = FpAbGroup::free(1);
        ArrowObject::from_matrices("Z=Z", p, &z, IntMatrix::zeros(1, 1), &z, IntMatrix::zeros(1, 1), IntMatrix::identity(1))
            .unwrap()
    }

    #[test]
    fn crossed_condition_is_enforced() {
        let z = FpAbGroup::free(1);
        let one = IntMatrix::identity(1);
        let err = ArrowObject::from_matrices("bad", 2, &z, one.clone(), &z, one.clone(), one).unwrap_err();
        assert!(matches!(err, Error::CrossedConditionFailed(_)));
        ArrowObject::truncation(3, 4);
    }

    #[test]
    fn truncation_quotients() {
        let t = ArrowObject::truncation(2, 4);
        let q = t.quotient_by_t_power(2);
        assert_eq!(q.m().invariant_factors(), InvariantFactors::new(&[], 2));
        assert_eq!(q.d().matrix().rows(), q.n().ngens());
    }

    #[test]
    fn morphism_verdicts() {
        let x = z_id_z(2);
        assert!(morphism_check(&AbHom::identity(x.m()), &AbHom::identity(x.n()), &x, &x));
        assert!(!morphism_check(&AbHom::identity(x.m()), &AbHom::zero(x.n(), x.n()), &x, &x));
    }

    #[test]
    fn cokernel_of_scalar_morphism() {
        let x = ArrowObject::truncation(3, 2);
        let three = Int::from(3);
        let f = ArrowMorphism::new(&x, &x, AbHom::scalar(x.m(), &three), AbHom::scalar(x.n(), &three)).unwrap();
        let (c, proj) = ArrowObject::cokernel(&f);
        assert_eq!(c.n().invariant_factors(), InvariantFactors::new(&[3, 3], 0));
        assert!(proj.compose(&f).alpha.is_zero());
    }
}
