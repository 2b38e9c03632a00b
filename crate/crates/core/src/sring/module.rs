use num_traits::One;

use crate::error::{Error, Result};
use crate::fpab::{direct_sum, tensor_z, AbHom, FpAbGroup};
use crate::matrix::{Int, IntMatrix};
use crate::sring::arrow::{ArrowMorphism, ArrowObject};
use crate::sring::element::{s_mul, SElement, TPoly};

/// A left `S(Z[t], σ)`-module: a group with the actions of `t`, `u`, `v`.
#[derive(Clone, Debug)]
pub struct SModule {
    pub p: u32,
    pub group: FpAbGroup,
    pub t: AbHom,
    pub u: AbHom,
    pub v: AbHom,
}

/// Which side the ring acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Handedness {
    Left,
    Right,
}

fn check_relations(p: u32, t: &AbHom, u: &AbHom, v: &AbHom, hand: Handedness) -> Result<()> {
    let g = t.source();
    // a right action is a left action of the opposite ring, so products flip
    let prod = |x: &AbHom, y: &AbHom| match hand {
        Handedness::Left => x.compose(y),
        Handedness::Right => y.compose(x),
    };
    let checks = [
        ("u^2=u", prod(u, u).equals(u)),
        ("v^2=0", prod(v, v).is_zero()),
        ("uv=0", prod(u, v).is_zero()),
        ("vu=v", prod(v, u).equals(v)),
        ("ut=tu", prod(u, t).equals(&prod(t, u))),
        ("vt=ptv", prod(v, t).equals(&prod(t, v).scale(&Int::from(p)))),
    ];
    for (name, ok) in checks {
        if !ok {
            return Err(Error::RelationViolation(name.into()));
        }
    }
    for h in [t, u, v] {
        if !h.source().same_as(g) || !h.target().same_as(g) {
            return Err(Error::DimensionMismatch("actions must be endomorphisms of one group".into()));
        }
    }
    Ok(())
}

impl SModule {
    pub fn new(p: u32, t: AbHom, u: AbHom, v: AbHom) -> Result<Self> {
        check_relations(p, &t, &u, &v, Handedness::Left)?;
        Ok(SModule { p, group: t.source().clone(), t, u, v })
    }

    /// Action of a normal-form element `a + b u + c v`.
    pub fn act(&self, s: &SElement) -> AbHom {
        let poly = |f: &TPoly| poly_in(&self.t, f);
        poly(&s.a).add(&poly(&s.b).compose(&self.u)).add(&poly(&s.c).compose(&self.v))
    }

    /// Whether `γ: self → other` commutes with `t`, `u`, `v`.
    pub fn is_hom(&self, other: &SModule, gamma: &AbHom) -> bool {
        [(&self.t, &other.t), (&self.u, &other.u), (&self.v, &other.v)]
            .into_iter()
            .all(|(a, b)| gamma.compose(a).equals(&b.compose(gamma)))
    }
}

/// `f(t)` for an endomorphism `t`.
pub(crate) fn poly_in(t: &AbHom, f: &TPoly) -> AbHom {
    let g = t.source();
    let mut acc = AbHom::zero(g, g);
    let mut power = AbHom::identity(g);
    for (k, c) in f.coeffs().iter().enumerate() {
        if k > 0 {
            power = t.compose(&power);
        }
        acc = acc.add(&power.scale(c));
    }
    acc
}

/// `P = M ⊕ N` with `u(m ⊕ n) = m ⊕ 0`, `v(m ⊕ n) = 0 ⊕ D(m)`.
pub fn module_from_arrow(x: &ArrowObject) -> SModule {
    let s = direct_sum(&[x.m().clone(), x.n().clone()]);
    let (k, l) = (x.m().ngens(), x.n().ngens());
    let g = &s.group;
    let t = AbHom::new(g, g, IntMatrix::block_diag(&[x.t_m().matrix(), x.t_n().matrix()])).expect("t is block diagonal");
    let mut u = IntMatrix::zeros(k + l, k + l);
    u.set_block(0, 0, &IntMatrix::identity(k));
    let mut v = IntMatrix::zeros(k + l, k + l);
    v.set_block(k, 0, x.d().matrix());
    let u = AbHom::new(g, g, u).expect("u is a projection");
    let v = AbHom::new(g, g, v).expect("v is well defined");
    SModule::new(x.p(), t, u, v).expect("an arrow object gives an S-module")
}

/// `M = uP`, `N = (1−u)P`, `D = v|M`, with the structure maps of both images.
#[derive(Clone, Debug)]
pub struct ModuleSplitting {
    pub arrow: ArrowObject,
    pub onto_m: AbHom,
    pub incl_m: AbHom,
    pub onto_n: AbHom,
    pub incl_n: AbHom,
}

pub fn arrow_from_module(pm: &SModule) -> Result<ModuleSplitting> {
    check_relations(pm.p, &pm.t, &pm.u, &pm.v, Handedness::Left)?;
    let one_minus_u = AbHom::identity(&pm.group).sub(&pm.u);
    let (m, onto_m, incl_m) = pm.u.image();
    let (n, onto_n, incl_n) = one_minus_u.image();
    let restrict = |onto: &AbHom, h: &AbHom, incl: &AbHom| onto.compose(h).compose(incl);
    let t_m = AbHom::new(&m, &m, restrict(&onto_m, &pm.t, &incl_m).matrix().clone())?;
    let t_n = AbHom::new(&n, &n, restrict(&onto_n, &pm.t, &incl_n).matrix().clone())?;
    let d = AbHom::new(&m, &n, restrict(&onto_n, &pm.v, &incl_m).matrix().clone())?;
    let arrow = ArrowObject::new("uP -> (1-u)P", pm.p, t_m, t_n, d)?;
    Ok(ModuleSplitting { arrow, onto_m, incl_m, onto_n, incl_n })
}

/// The arrow morphism induced by a module homomorphism `γ: P₁ → P₂`.
pub fn arrow_morphism_from_hom(s1: &ModuleSplitting, s2: &ModuleSplitting, gamma: &AbHom) -> Result<ArrowMorphism> {
    let alpha = s2.onto_m.compose(gamma).compose(&s1.incl_m);
    let beta = s2.onto_n.compose(gamma).compose(&s1.incl_n);
    ArrowMorphism::new(&s1.arrow, &s2.arrow, alpha, beta)
}

/// The module homomorphism `α ⊕ β` induced by an arrow morphism.
pub fn hom_from_arrow_morphism(f: &ArrowMorphism) -> (SModule, SModule, AbHom) {
    let p1 = module_from_arrow(&f.source);
    let p2 = module_from_arrow(&f.target);
    let gamma = IntMatrix::block_diag(&[f.alpha.matrix(), f.beta.matrix()]);
    let gamma = AbHom::new(&p1.group, &p2.group, gamma).expect("block map of a morphism");
    (p1, p2, gamma)
}

/// `X → arrow_from_module(module_from_arrow(X))`; an isomorphism of arrow objects.
pub fn arrow_roundtrip(x: &ArrowObject) -> Result<ArrowMorphism> {
    let pm = module_from_arrow(x);
    let split = arrow_from_module(&pm)?;
    let sum = direct_sum(&[x.m().clone(), x.n().clone()]);
    let (sum_m, sum_n) = (&sum.injections[0], &sum.injections[1]);
    let alpha = split.onto_m.compose(&pm.u).compose(sum_m);
    let one_minus_u = AbHom::identity(&pm.group).sub(&pm.u);
    let beta = split.onto_n.compose(&one_minus_u).compose(sum_n);
    let f = ArrowMorphism::new(x, &split.arrow, alpha, beta)?;
    f.alpha.require_iso("roundtrip on M")?;
    f.beta.require_iso("roundtrip on N")?;
    Ok(f)
}

/// `P → module_from_arrow(arrow_from_module(P))`, `x ↦ ux ⊕ (1−u)x`; an isomorphism of modules.
pub fn module_roundtrip(pm: &SModule) -> Result<(SModule, AbHom)> {
    let split = arrow_from_module(pm)?;
    let back = module_from_arrow(&split.arrow);
    let one_minus_u = AbHom::identity(&pm.group).sub(&pm.u);
    let top = split.onto_m.compose(&pm.u);
    let bottom = split.onto_n.compose(&one_minus_u);
    let gamma = top.matrix().vstack(bottom.matrix());
    let gamma = AbHom::new(&pm.group, &back.group, gamma)?;
    if !pm.is_hom(&back, &gamma) {
        return Err(Error::ValidationFailed("roundtrip map is not S-linear".into()));
    }
    gamma.require_iso("module roundtrip")?;
    Ok((back, gamma))
}

/// A right `S`-module: `x·s` for `s ∈ {t, u, v}`, composed in reverse order.
#[derive(Clone, Debug)]
pub struct RightSModule {
    pub p: u32,
    pub group: FpAbGroup,
    pub t: AbHom,
    pub u: AbHom,
    pub v: AbHom,
}

impl RightSModule {
    pub fn new(p: u32, t: AbHom, u: AbHom, v: AbHom) -> Result<Self> {
        check_relations(p, &t, &u, &v, Handedness::Right)?;
        Ok(RightSModule { p, group: t.source().clone(), t, u, v })
    }
}

/// `S_d = S / t^d S`, free on `t^i, t^i u, t^i v` for `i < d` (in that block order).
#[derive(Clone, Debug)]
pub struct TruncatedS {
    pub p: u32,
    pub d: usize,
}

impl TruncatedS {
    pub fn new(p: u32, d: usize) -> Self {
        TruncatedS { p, d }
    }

    pub fn rank(&self) -> usize {
        3 * self.d
    }

    pub fn group(&self) -> FpAbGroup {
        FpAbGroup::free(self.rank())
    }

    /// Coordinates of a normal-form element, truncated at `t^d`.
    pub fn coords(&self, s: &SElement) -> Vec<Int> {
        let s = s.truncate(self.d);
        let mut out = Vec::with_capacity(self.rank());
        for part in [&s.a, &s.b, &s.c] {
            out.extend((0..self.d).map(|i| part.coeff(i)));
        }
        out
    }

    pub fn basis(&self, k: usize) -> SElement {
        let (block, i) = (k / self.d, k % self.d);
        let mut c = vec![Int::from(0); i + 1];
        c[i] = Int::one();
        let f = TPoly::new(c);
        match block {
            0 => SElement::scalar(f),
            1 => SElement::new(TPoly::zero(), f, TPoly::zero()),
            _ => SElement::new(TPoly::zero(), TPoly::zero(), f),
        }
    }

    fn mult_matrix(&self, s: &SElement, left: bool) -> AbHom {
        let g = self.group();
        let cols: Vec<Vec<Int>> = (0..self.rank())
            .map(|k| {
                let b = self.basis(k);
                let prod = if left { s_mul(s, &b, self.p) } else { s_mul(&b, s, self.p) };
                self.coords(&prod)
            })
            .collect();
        AbHom::new(&g, &g, IntMatrix::from_columns(self.rank(), &cols)).expect("free group")
    }

    pub fn left_multiplication(&self, s: &SElement) -> AbHom {
        self.mult_matrix(s, true)
    }

    pub fn right_multiplication(&self, s: &SElement) -> AbHom {
        self.mult_matrix(s, false)
    }

    pub fn left_module(&self) -> SModule {
        let l = |s: SElement| self.left_multiplication(&s);
        SModule::new(self.p, l(SElement::t()), l(SElement::u()), l(SElement::v())).expect("S_d is a left S-module")
    }

    pub fn right_module(&self) -> RightSModule {
        let r = |s: SElement| self.right_multiplication(&s);
        RightSModule::new(self.p, r(SElement::t()), r(SElement::u()), r(SElement::v())).expect("S_d is a right S-module")
    }
}

/// `(K ⊗_Z P) / (k·s ⊗ x − k ⊗ s·x)` for `s ∈ {t, u, v}`, generators indexed `i * ngens(P) + j`.
pub fn tensor_over_s(k: &RightSModule, pm: &SModule) -> FpAbGroup {
    let t = tensor_z(&k.group, &pm.group);
    let mut rels: Vec<_> = t.group.relations().to_vec();
    for (ks, ps) in [(&k.t, &pm.t), (&k.u, &pm.u), (&k.v, &pm.v)] {
        let kron = ks.matrix().kron(&IntMatrix::identity(pm.group.ngens()))
            .sub(&IntMatrix::identity(k.group.ngens()).kron(ps.matrix()));
        for j in 0..kron.cols() {
            let row = crate::tietze::dense_to_sparse(&kron.column(j));
            if !row.is_empty() {
                rels.push(row);
            }
        }
    }
    FpAbGroup::new(t.group.ngens(), rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;

    #[test]
    fn arrow_to_module_examples() {
        let z = FpAbGroup::free(1);
        let zero = FpAbGroup::trivial();
        let x = ArrowObject::from_matrices("Z", 2, &z, IntMatrix::identity(1), &zero, IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 1))
            .unwrap();
        let pm = module_from_arrow(&x);
        assert!(pm.u.equals(&AbHom::identity(&pm.group)));
        assert!(pm.v.is_zero());

        let y = ArrowObject::from_matrices("Z=Z", 2, &z, IntMatrix::zeros(1, 1), &z, IntMatrix::zeros(1, 1), IntMatrix::identity(1))
            .unwrap();
        let pm = module_from_arrow(&y);
        assert_eq!(pm.v.matrix(), &IntMatrix::from_i64(&[&[0, 0], &[1, 0]]));
        arrow_roundtrip(&y).unwrap();
        module_roundtrip(&pm).unwrap();
    }

    #[test]
    fn zero_v_gives_zero_d() {
        let g = FpAbGroup::cyclic_sum(&[Int::from(4), Int::from(0)]);
        let id = AbHom::identity(&g);
        let u = AbHom::new(&g, &g, IntMatrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        let pm = SModule::new(3, id, u, AbHom::zero(&g, &g)).unwrap();
        let split = arrow_from_module(&pm).unwrap();
        assert!(split.arrow.d().is_zero());
        assert_eq!(split.arrow.m().invariant_factors(), InvariantFactors::new(&[4], 0));
    }

    #[test]
    fn relation_violation_is_reported() {
        let g = FpAbGroup::free(1);
        let id = AbHom::identity(&g);
        let err = SModule::new(2, id.clone(), id.clone(), id).unwrap_err();
        assert!(matches!(err, Error::RelationViolation(_)));
    }

    #[test]
    fn truncated_s_splits_into_two_diagrams() {
        let sd = TruncatedS::new(2, 3);
        let split = arrow_from_module(&sd.left_module()).unwrap();
        assert_eq!(split.arrow.m().invariant_factors(), InvariantFactors::new(&[], 3));
        assert_eq!(split.arrow.n().invariant_factors(), InvariantFactors::new(&[], 6));
        // M ⊕ N ≅ T_3 ⊕ (0 → Z[t]/t^3), seen through ranks of D
        let (dk, _) = split.arrow.d().kernel();
        assert!(dk.is_trivial());
        let (dc, _) = split.arrow.d().cokernel();
        assert_eq!(dc.invariant_factors(), InvariantFactors::new(&[2, 4], 3));
    }

    #[test]
    fn s_tensor_s_is_p() {
        let sd = TruncatedS::new(3, 2);
        let x = ArrowObject::truncation(3, 2);
        let pm = module_from_arrow(&x);
        let g = tensor_over_s(&sd.right_module(), &pm);
        assert!(g.is_isomorphic(&pm.group));
        let zero = module_from_arrow(&ArrowObject::zero(3));
        assert!(tensor_over_s(&sd.right_module(), &zero).is_trivial());
    }
}
