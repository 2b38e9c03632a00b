use num_traits::Zero;

use crate::error::Result;
use crate::fpab::{direct_sum, fiber_product, torsion_part, AbHom, DirectSum, FiberProduct, InvariantFactors};
use crate::functors::linear::{constant, FunctorKind, FunctorValue, LinearFunctor, NatTrans};
use crate::functors::squares::{SquareKind, StructureMaps};
use crate::lambda::AdamsData;
use crate::matrix::Int;
use crate::sring::{ArrowObject, Side};
use crate::zrings::Params;

/// A direct sum of functor values, in a fixed summand order.
#[derive(Clone, Debug)]
pub struct SummandSum {
    pub parts: Vec<FunctorValue>,
    pub sum: DirectSum,
}

impl SummandSum {
    fn new(parts: Vec<FunctorValue>) -> Self {
        let sum = direct_sum(&parts.iter().map(|v| v.group.clone()).collect::<Vec<_>>());
        SummandSum { parts, sum }
    }

    pub fn group(&self) -> &crate::fpab::FpAbGroup {
        &self.sum.group
    }

    pub fn labels(&self) -> Vec<String> {
        self.parts.iter().map(|v| v.kind.to_string()).collect()
    }

    pub(crate) fn block(&self, target: &SummandSum, blocks: &[Vec<Option<AbHom>>]) -> Result<AbHom> {
        AbHom::new(&self.sum.group, &target.sum.group, DirectSum::block_map(&self.sum, &target.sum, blocks))
    }
}

fn values(kinds: &[FunctorKind], params: &Params, x: &ArrowObject) -> Result<Vec<FunctorValue>> {
    kinds.iter().map(|k| Ok(LinearFunctor::new(*k, params)?.apply(x))).collect()
}

/// Summands of the target side: `EF_1, CF_b`, then `CF_2` or `EF_2`, then `CF_n` for `3 ≤ n < q`.
pub fn tc_kinds(params: &Params) -> Vec<FunctorKind> {
    let mut k = vec![FunctorKind::Ef1, FunctorKind::CfB];
    k.push(if params.p == 2 { FunctorKind::Ef2 } else { FunctorKind::CfN(2) });
    k.extend((3..params.q()).map(FunctorKind::CfN));
    k
}

/// `CF_a, CF_b, CF_2, …, CF_{q−1}`.
pub fn cf_kinds(params: &Params) -> Vec<FunctorKind> {
    let mut k = vec![FunctorKind::CfA, FunctorKind::CfB];
    k.extend((2..params.q()).map(FunctorKind::CfN));
    k
}

pub fn assemble_tc(data: &AdamsData, params: &Params) -> Result<SummandSum> {
    Ok(SummandSum::new(values(&tc_kinds(params), params, &data.arrow_object()?)?))
}

pub fn assemble_fp(data: &AdamsData, params: &Params) -> Result<FiberProduct> {
    Ok(Assembly::new(&data.arrow_object()?, params)?.fp)
}

/// Both sides at one arrow object and the canonical comparison between them.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub params: Params,
    pub object: String,
    pub tc: SummandSum,
    pub cf: SummandSum,
    pub df: SummandSum,
    /// `⊕ CF → DF_1 ⊕ DF_2`
    pub p_gl: AbHom,
    /// `(1 − t) ⊕ (1 − t)` on `DF_1 ⊕ DF_2`
    pub chi: AbHom,
    pub fp: FiberProduct,
    pub comparison: AbHom,
    pub kernel: InvariantFactors,
    pub cokernel: InvariantFactors,
    /// Product of the torsion orders bounding the two square kernels.
    pub torsion_order: Int,
}

impl Assembly {
    pub fn new(x: &ArrowObject, params: &Params) -> Result<Self> {
        let q = params.q();
        let sq1 = StructureMaps::new(SquareKind::Ef1, params)?;
        let sq2 = if params.p == 2 { Some(StructureMaps::new(SquareKind::Ef2, params)?) } else { None };

        let tc = SummandSum::new(values(&tc_kinds(params), params, x)?);
        let cf = SummandSum::new(values(&cf_kinds(params), params, x)?);
        let df = SummandSum::new(values(&[FunctorKind::Df1, FunctorKind::Df2], params, x)?);
        let (cfv, dfv, tcv) = (&cf.parts, &df.parts, &tc.parts);

        let second = NatTrans {
            name: "pi_2".into(),
            source: LinearFunctor::new(FunctorKind::CfN(2), params)?,
            target: LinearFunctor::new(FunctorKind::Df2, params)?,
            grid: vec![vec![None, constant(1)]],
        };
        let mut gl: Vec<Vec<Option<AbHom>>> = vec![vec![None; cfv.len()]; 2];
        gl[0][0] = Some(sq1.pi.at(x, &cfv[0], &dfv[0])?);
        gl[1][2] = Some(second.at(x, &cfv[2], &dfv[1])?);
        let p_gl = cf.block(&df, &gl)?;

        let chi2 = NatTrans { name: "chi_2".into(), source: second.target.clone(), target: second.target.clone(), grid: sq1.chi.grid.clone() };
        let chi = df.block(
            &df,
            &[vec![Some(sq1.chi.at(x, &dfv[0], &dfv[0])?), None], vec![None, Some(chi2.at(x, &dfv[1], &dfv[1])?)]],
        )?;

        // TC → ⊕CF and TC → DF_1 ⊕ DF_2
        let mut to_cf: Vec<Vec<Option<AbHom>>> = vec![vec![None; tcv.len()]; cfv.len()];
        let mut to_df: Vec<Vec<Option<AbHom>>> = vec![vec![None; tcv.len()]; 2];
        to_cf[0][0] = Some(sq1.chi_star.at(x, &tcv[0], &cfv[0])?);
        to_df[0][0] = Some(sq1.pi_star.at(x, &tcv[0], &dfv[0])?);
        to_cf[1][1] = Some(AbHom::identity(&tcv[1].group));
        match &sq2 {
            Some(sq2) => {
                to_cf[2][2] = Some(sq2.chi_star.at(x, &tcv[2], &cfv[2])?);
                to_df[1][2] = Some(sq2.pi_star.at(x, &tcv[2], &dfv[1])?);
            }
            None => to_cf[2][2] = Some(AbHom::identity(&tcv[2].group)),
        }
        for n in 3..q {
            to_cf[n][n] = Some(AbHom::identity(&tcv[n].group));
        }
        let q1 = tc.block(&cf, &to_cf)?;
        let q2 = tc.block(&df, &to_df)?;

        let fp = fiber_product(&p_gl, &chi)?;
        let comparison = fp.mediate(&q1, &q2)?;
        let kernel = comparison.kernel().0.invariant_factors();
        let cokernel = comparison.cokernel().0.invariant_factors();
        let mut torsion_order = torsion_part(x.side(Side::N), &params.pe()).0.invariant_factors().order().unwrap_or_default();
        if params.p == 2 {
            torsion_order *= torsion_part(x.side(Side::M), &Int::from(2)).0.invariant_factors().order().unwrap_or_default();
        }
        Ok(Assembly {
            params: *params,
            object: x.name.clone(),
            tc,
            cf,
            df,
            p_gl,
            chi,
            fp,
            comparison,
            kernel,
            cokernel,
            torsion_order,
        })
    }

    pub fn is_iso(&self) -> bool {
        self.kernel.is_trivial() && self.cokernel.is_trivial()
    }

    /// Surjective, with kernel exponent dividing `p^e` and order dividing the torsion order.
    pub fn torsion_bounded(&self) -> bool {
        let (Some(exp), Some(order)) = (self.kernel.exponent(), self.kernel.order()) else { return false };
        self.cokernel.is_trivial()
            && (self.params.pe() % exp).is_zero()
            && !self.torsion_order.is_zero()
            && (&self.torsion_order % order).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{adams_catalog, AdamsRing};

    #[test]
    fn integers_at_three() {
        let params = Params::new(3, 1, 1).unwrap();
        let data = adams_catalog(AdamsRing::Integers, 3).unwrap();
        let tc = assemble_tc(&data, &params).unwrap();
        assert_eq!(tc.labels(), ["EF_1", "CF_b", "CF_2"]);
        assert_eq!(tc.group().invariant_factors(), InvariantFactors::new(&[3], 0));
        assert_eq!(assemble_fp(&data, &params).unwrap().group.invariant_factors(), InvariantFactors::new(&[3], 0));
        assert!(Assembly::new(&data.arrow_object().unwrap(), &params).unwrap().is_iso());
    }

    #[test]
    fn integers_at_two() {
        let params = Params::new(2, 2, 2).unwrap();
        let data = adams_catalog(AdamsRing::Integers, 2).unwrap();
        let tc = assemble_tc(&data, &params).unwrap();
        assert_eq!(tc.labels(), ["EF_1", "CF_b", "EF_2", "CF_3"]);
        let a = Assembly::new(&data.arrow_object().unwrap(), &params).unwrap();
        assert!(a.is_iso(), "{:?} {:?}", a.kernel, a.cokernel);
    }

    #[test]
    fn dual_numbers_kernel_is_bounded() {
        let params = Params::new(2, 2, 2).unwrap();
        let data = adams_catalog(AdamsRing::TruncatedPoly { n: 2 }, 2).unwrap();
        let a = Assembly::new(&data.arrow_object().unwrap(), &params).unwrap();
        assert!(a.torsion_bounded());
        assert!(a.kernel.order().unwrap() <= Int::from(2));
    }
}
