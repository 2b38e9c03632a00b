use crate::error::Result;
use crate::fpab::{direct_sum, AbHom, InvariantFactors};
use crate::functors::linear::LinearFunctor;
use crate::matrix::{Int, IntMatrix};
use crate::sring::{
    arrow_from_module, arrow_morphism_from_hom, arrow_roundtrip, module_from_arrow, tensor_over_s, ArrowMorphism,
    ArrowObject, RightSModule, SElement, TruncatedS,
};

/// `F(X) ⊕ F(Y) → F(X ⊕ Y)` built from the summand injections is an isomorphism.
pub fn additivity_check(f: &LinearFunctor, x: &ArrowObject, y: &ArrowObject) -> Result<bool> {
    let (sum, i1, i2) = x.direct_sum_maps(y);
    let fs = f.apply(&sum);
    let (fx, fy) = (f.apply(x), f.apply(y));
    let parts = direct_sum(&[fx.group.clone(), fy.group.clone()]);
    let a = f.apply_morphism(&i1, &fx, &fs)?;
    let b = f.apply_morphism(&i2, &fy, &fs)?;
    let canon = AbHom::new(&parts.group, &fs.group, a.matrix().hstack(b.matrix()))?;
    Ok(canon.is_iso())
}

/// `coker F(f) → F(coker f)` induced by `F` of the projection is an isomorphism.
pub fn cokernel_check(func: &LinearFunctor, f: &ArrowMorphism) -> Result<bool> {
    let (c, proj) = ArrowObject::cokernel(f);
    let (_, fy, ff) = func.on_morphism(f)?;
    let fc = func.apply(&c);
    let fq = func.apply_morphism(&proj, &fy, &fc)?;
    let (coker, _) = ff.cokernel();
    Ok(ff.induced_on_cokernel(&coker, &fq)?.is_iso())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditVerdict {
    pub functor: String,
    pub morphism: String,
    pub direct_sum: bool,
    pub cokernel: bool,
}

impl AuditVerdict {
    pub fn passed(&self) -> bool {
        self.direct_sum && self.cokernel
    }
}

/// Additivity on `source ⊕ target` and compatibility with the cokernel of `f`.
pub fn tensorlike_audit(func: &LinearFunctor, f: &ArrowMorphism) -> Result<AuditVerdict> {
    Ok(AuditVerdict {
        functor: func.kind.to_string(),
        morphism: format!("{} -> {}", f.source.name, f.target.name),
        direct_sum: additivity_check(func, &f.source, &f.target)?,
        cokernel: cokernel_check(func, f)?,
    })
}

/// `F(S_d)` as a right module, `S_d` acting through right multiplication.
pub fn representing_module(func: &LinearFunctor, sd: &TruncatedS) -> Result<RightSModule> {
    let split = arrow_from_module(&sd.left_module())?;
    let value = func.apply(&split.arrow);
    let act = |s: SElement| -> Result<AbHom> {
        let m = arrow_morphism_from_hom(&split, &split, &sd.right_multiplication(&s))?;
        func.apply_morphism(&m, &value, &value)
    };
    RightSModule::new(sd.p, act(SElement::t())?, act(SElement::u())?, act(SElement::v())?)
}

/// The comparison `F(S_d) ⊗_S P → F(P)` at `P = X / t^d X`.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub functor: String,
    pub object: String,
    pub tensor: InvariantFactors,
    pub direct: InvariantFactors,
    pub mu_is_iso: bool,
    pub roundtrip_is_iso: bool,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.mu_is_iso && self.roundtrip_is_iso && self.tensor == self.direct
    }
}

pub fn cover_check(func: &LinearFunctor, x: &ArrowObject, d: usize) -> Result<CoverReport> {
    let sd = TruncatedS::new(x.p(), d);
    let k = representing_module(func, &sd)?;
    let xbar = x.quotient_by_t_power(d as u32);
    let pm = module_from_arrow(&xbar);
    let split_s = arrow_from_module(&sd.left_module())?;
    let split_p = arrow_from_module(&pm)?;
    let fs = func.apply(&split_s.arrow);
    let fp = func.apply(&split_p.arrow);
    let tensor = tensor_over_s(&k, &pm);

    // μ̄(κ ⊗ x) = F(s ↦ s·x)(κ)
    let np = pm.group.ngens();
    let mut cols = vec![Vec::new(); k.group.ngens() * np];
    for j in 0..np {
        let x_j = pm.group.generator(j);
        let images: Vec<Vec<Int>> = (0..sd.rank()).map(|b| pm.act(&sd.basis(b)).apply(&x_j)).collect();
        let rho = AbHom::new(&sd.group(), &pm.group, IntMatrix::from_columns(np, &images))?;
        let m = arrow_morphism_from_hom(&split_s, &split_p, &rho)?;
        let f_rho = func.apply_morphism(&m, &fs, &fp)?;
        for i in 0..k.group.ngens() {
            cols[i * np + j] = f_rho.matrix().column(i);
        }
    }
    let mu = AbHom::new(&tensor, &fp.group, IntMatrix::from_columns(fp.group.ngens(), &cols))?;
    let rt = arrow_roundtrip(&xbar)?;
    let direct = func.apply(&xbar);
    let rt_f = func.apply_morphism(&rt, &direct, &fp)?;
    Ok(CoverReport {
        functor: func.kind.to_string(),
        object: xbar.name.clone(),
        tensor: tensor.invariant_factors(),
        direct: direct.group.invariant_factors(),
        mu_is_iso: mu.is_iso(),
        roundtrip_is_iso: rt_f.is_iso(),
    })
}
