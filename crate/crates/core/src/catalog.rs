//! Test catalog of arrow objects and morphisms between them, for a fixed prime.

use crate::error::Result;
use crate::fpab::{AbHom, FpAbGroup};
use crate::lambda::{adams_catalog, AdamsData, AdamsRing};
use crate::matrix::{Int, IntMatrix};
use crate::sring::{ArrowMorphism, ArrowObject, Side, TPoly};
use crate::zrings::RingHom;

/// Rings with Adams data used across the catalog.
pub fn catalog_rings(p: u32) -> Vec<AdamsRing> {
    vec![
        AdamsRing::Integers,
        AdamsRing::TruncatedPoly { n: 2 },
        AdamsRing::TruncatedPoly { n: 3 },
        AdamsRing::TruncatedPoly { n: 4 },
        AdamsRing::CyclicGroupRing { r: p as usize },
    ]
}

/// `Z →D→ Z` with `D = 1`, `t_N = 1`, `t_M = p`.
pub fn unit_object(p: u32) -> ArrowObject {
    let z = FpAbGroup::free(1);
    ArrowObject::from_matrices("Z=Z", p, &z, IntMatrix::from_i64(&[&[p as i64]]), &z, IntMatrix::identity(1), IntMatrix::identity(1))
        .expect("t_M = p t_N")
}

/// `Z/p² →D→ Z/p²` with `D = p`, `t_N = 1`, `t_M = p`.
pub fn torsion_object(p: u32) -> ArrowObject {
    let g = FpAbGroup::cyclic((p * p) as i64);
    let pm = IntMatrix::from_i64(&[&[p as i64]]);
    ArrowObject::from_matrices("Z/p²", p, &g, pm.clone(), &g, IntMatrix::identity(1), pm).expect("crossed")
}

pub fn arrow_objects(p: u32) -> Result<Vec<ArrowObject>> {
    let mut v: Vec<ArrowObject> =
        catalog_rings(p).into_iter().map(|r| adams_catalog(r, p)?.arrow_object()).collect::<Result<_>>()?;
    v.extend([
        ArrowObject::truncation(p, 2),
        ArrowObject::truncation(p, 3),
        ArrowObject::free_n(p, 2),
        unit_object(p),
        torsion_object(p),
    ]);
    Ok(v)
}

/// `Δ(f) = (f, Ω(f))` for a ring map commuting with `ψ`.
pub fn delta_of(f: &RingHom, source: &AdamsData, target: &AdamsData) -> Result<ArrowMorphism> {
    let beta = source.omega().induced(f, target.omega())?;
    ArrowMorphism::new(&source.arrow_object()?, &target.arrow_object()?, f.additive(), beta)
}

fn var_map(source: &AdamsData, target: &AdamsData, image: Vec<Int>) -> Result<ArrowMorphism> {
    let f = RingHom::from_var_images(source.ring(), target.ring(), &[image])?;
    delta_of(&f, source, target)
}

fn monomial(data: &AdamsData, k: u32) -> Vec<Int> {
    let r = data.ring();
    r.pow(&r.basis_elem(1), k)
}

/// `(t_M, p t_N)`, an endomorphism of every object.
pub fn t_twist(x: &ArrowObject) -> Result<ArrowMorphism> {
    let beta = x.t_poly(Side::N, &TPoly::from_i64(&[0, x.p() as i64]));
    ArrowMorphism::new(x, x, x.t_m().clone(), beta)
}

pub fn scalar(x: &ArrowObject, n: i64) -> Result<ArrowMorphism> {
    let n = Int::from(n);
    ArrowMorphism::new(x, x, AbHom::scalar(x.m(), &n), AbHom::scalar(x.n(), &n))
}

fn truncation_restriction(p: u32, from: usize, to: usize) -> Result<ArrowMorphism> {
    let (s, t) = (ArrowObject::truncation(p, from), ArrowObject::truncation(p, to));
    let mut m = IntMatrix::zeros(to, from);
    for i in 0..to.min(from) {
        m[(i, i)] = Int::from(1);
    }
    ArrowMorphism::new(&s, &t, AbHom::new(s.m(), t.m(), m.clone())?, AbHom::new(s.n(), t.n(), m)?)
}

/// `t^i ↦ t^{i+1}` on `M` and `t^i ↦ p t^{i+1}` on `N`.
fn truncation_shift(p: u32, from: usize, to: usize) -> Result<ArrowMorphism> {
    let (s, t) = (ArrowObject::truncation(p, from), ArrowObject::truncation(p, to));
    let mut m = IntMatrix::zeros(to, from);
    for i in 0..from {
        if i + 1 < to {
            m[(i + 1, i)] = Int::from(1);
        }
    }
    let b = m.scale(&Int::from(p));
    ArrowMorphism::new(&s, &t, AbHom::new(s.m(), t.m(), m)?, AbHom::new(s.n(), t.n(), b)?)
}

/// `Z[t]/t^d` on the `N` side only, mapped identically into `T_d`.
fn free_into_truncation(p: u32, d: usize) -> Result<ArrowMorphism> {
    let (s, t) = (ArrowObject::free_n(p, d), ArrowObject::truncation(p, d));
    ArrowMorphism::new(&s, &t, AbHom::zero(s.m(), t.m()), AbHom::identity(t.n()))
}

pub fn morphisms(p: u32) -> Result<Vec<ArrowMorphism>> {
    let z = adams_catalog(AdamsRing::Integers, p)?;
    let x2 = adams_catalog(AdamsRing::TruncatedPoly { n: 2 }, p)?;
    let x3 = adams_catalog(AdamsRing::TruncatedPoly { n: 3 }, p)?;
    let x4 = adams_catalog(AdamsRing::TruncatedPoly { n: 4 }, p)?;
    let cyc = adams_catalog(AdamsRing::CyclicGroupRing { r: p as usize }, p)?;
    let t2 = ArrowObject::truncation(p, 2);
    let t3 = ArrowObject::truncation(p, 3);
    let dx2 = x2.arrow_object()?;
    Ok(vec![
        var_map(&x2, &z, z.ring().zero())?,
        var_map(&x4, &x2, monomial(&x2, 1))?,
        var_map(&x2, &x4, monomial(&x4, 2))?,
        var_map(&x4, &x4, monomial(&x4, 3))?,
        var_map(&cyc, &z, z.ring().one())?,
        var_map(&cyc, &cyc, monomial(&cyc, 2))?,
        delta_of(&RingHom::from_var_images(z.ring(), x3.ring(), &[])?, &z, &x3)?,
        scalar(&t3, p as i64)?,
        t_twist(&x3.arrow_object()?)?,
        t_twist(&t3)?,
        truncation_restriction(p, 3, 2)?,
        truncation_shift(p, 2, 3)?,
        free_into_truncation(p, 2)?,
        ArrowMorphism::new(&dx2, &t2, AbHom::zero(dx2.m(), t2.m()), AbHom::zero(dx2.n(), t2.n()))?,
        scalar(&torsion_object(p), 2)?,
    ])
}
