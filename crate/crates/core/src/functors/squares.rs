use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpab::{fiber_product, torsion_part, AbHom, InvariantFactors};
use crate::functors::linear::{constant, one_minus_t_entry, FunctorKind, FunctorValue, LinearFunctor, NatTrans};
use crate::matrix::Int;
use crate::sring::{ArrowObject, Side};
use crate::zrings::Params;

/// Which of the two squares `EF → DF`, `EF → CF` over `CF → DF ← DF`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SquareKind {
    Ef1,
    Ef2,
}

/// `π: CF → DF`, `χ: DF → DF`, `π*: EF → DF`, `χ*: EF → CF`.
#[derive(Clone, Debug)]
pub struct StructureMaps {
    pub kind: SquareKind,
    pub pi: NatTrans,
    pub chi: NatTrans,
    pub pi_star: NatTrans,
    pub chi_star: NatTrans,
}

fn lf(kind: FunctorKind, params: &Params) -> Result<LinearFunctor> {
    LinearFunctor::new(kind, params)
}

fn nat(name: &str, source: LinearFunctor, target: LinearFunctor, grid: Vec<Vec<Option<crate::sring::TPoly>>>) -> NatTrans {
    NatTrans { name: name.into(), source, target, grid }
}

impl StructureMaps {
    pub fn new(kind: SquareKind, params: &Params) -> Result<Self> {
        Ok(match kind {
            SquareKind::Ef1 => {
                let (cf, df, ef) = (lf(FunctorKind::CfA, params)?, lf(FunctorKind::Df1, params)?, lf(FunctorKind::Ef1, params)?);
                StructureMaps {
                    kind,
                    pi: nat("pi", cf.clone(), df.clone(), vec![vec![constant(1)]]),
                    chi: nat("chi", df.clone(), df.clone(), vec![vec![one_minus_t_entry()]]),
                    pi_star: nat("pi*", ef.clone(), df, vec![vec![constant(1), None]]),
                    chi_star: nat("chi*", ef, cf, vec![vec![one_minus_t_entry(), constant(params.pe())]]),
                }
            }
            SquareKind::Ef2 => {
                if params.p != 2 {
                    return Err(Error::WrongPrime(params.p));
                }
                let (cf, df, ef) = (lf(FunctorKind::CfN(2), params)?, lf(FunctorKind::Df2, params)?, lf(FunctorKind::Ef2, params)?);
                StructureMaps {
                    kind,
                    pi: nat("pi", cf.clone(), df.clone(), vec![vec![None, constant(1)]]),
                    chi: nat("chi", df.clone(), df.clone(), vec![vec![one_minus_t_entry()]]),
                    pi_star: nat("pi*", ef.clone(), df, vec![vec![None, constant(1), None]]),
                    chi_star: nat(
                        "chi*",
                        ef,
                        cf,
                        vec![vec![constant(1), None, None], vec![None, one_minus_t_entry(), constant(2)]],
                    ),
                }
            }
        })
    }

    /// `χ*` with the sign of its `1 − t` entry flipped.
    pub fn with_corrupted_chi_star(mut self) -> Self {
        let (i, j) = match self.kind {
            SquareKind::Ef1 => (0, 0),
            SquareKind::Ef2 => (1, 1),
        };
        if let Some(f) = &self.chi_star.grid[i][j] {
            self.chi_star.grid[i][j] = Some(f.neg());
        }
        self.chi_star.name = "chi*-corrupted".into();
        self
    }
}

/// The square at one object: the four maps, the comparison into the fiber
/// product, and its kernel and cokernel.
#[derive(Clone, Debug)]
pub struct SquareReport {
    pub kind: SquareKind,
    pub object: String,
    pub ef: FunctorValue,
    pub cf: FunctorValue,
    pub df: FunctorValue,
    pub pi: AbHom,
    pub chi: AbHom,
    pub pi_star: AbHom,
    pub chi_star: AbHom,
    pub commutes: bool,
    pub fiber: InvariantFactors,
    /// `EF → CF ×_DF DF`
    pub comparison: Option<AbHom>,
    pub kernel: InvariantFactors,
    pub cokernel: InvariantFactors,
    /// `p^e`-torsion of `N` (`EF_1`) or `2`-torsion of `M` (`EF_2`).
    pub torsion: InvariantFactors,
    pub torsion_bound: Int,
}

impl SquareReport {
    pub fn surjective(&self) -> bool {
        self.comparison.is_some() && self.cokernel.is_trivial()
    }

    pub fn injective(&self) -> bool {
        self.comparison.is_some() && self.kernel.is_trivial()
    }

    /// Exponent of the kernel divides the bound, its order divides the torsion order,
    /// and it vanishes when the torsion does.
    pub fn kernel_bounded(&self) -> bool {
        let Some(exp) = self.kernel.exponent() else { return false };
        let Some(order) = self.kernel.order() else { return false };
        let Some(tor) = self.torsion.order() else { return false };
        (&self.torsion_bound % exp).is_zero()
            && (tor % order).is_zero()
            && (!self.torsion.is_trivial() || self.kernel.is_trivial())
    }

    /// Surjective onto the fiber product, commuting, kernel within the torsion bound.
    pub fn passes(&self) -> bool {
        self.commutes && self.surjective() && self.kernel_bounded()
    }
}

pub fn square_analysis(x: &ArrowObject, params: &Params, kind: SquareKind) -> Result<SquareReport> {
    analyse(x, params, &StructureMaps::new(kind, params)?)
}

/// The square for given structure maps (a corrupted `χ*` shows up here).
pub fn analyse(x: &ArrowObject, params: &Params, maps: &StructureMaps) -> Result<SquareReport> {
    let (cf, df, pi) = maps.pi.evaluate(x)?;
    let chi = maps.chi.at(x, &df, &df)?;
    let ef = maps.pi_star.source.apply(x);
    let pi_star = maps.pi_star.at(x, &ef, &df)?;
    let chi_star = maps.chi_star.at(x, &ef, &cf)?;
    let commutes = pi.compose(&chi_star).equals(&chi.compose(&pi_star));
    let fp = fiber_product(&pi, &chi)?;
    let (comparison, kernel, cokernel) = if commutes {
        let c = fp.mediate(&chi_star, &pi_star)?;
        let k = c.kernel().0.invariant_factors();
        let q = c.cokernel().0.invariant_factors();
        (Some(c), k, q)
    } else {
        (None, InvariantFactors::trivial(), InvariantFactors::trivial())
    };
    let (side, bound) = match maps.kind {
        SquareKind::Ef1 => (Side::N, params.pe()),
        SquareKind::Ef2 => (Side::M, Int::from(2)),
    };
    let torsion = torsion_part(x.side(side), &bound).0.invariant_factors();
    Ok(SquareReport {
        kind: maps.kind,
        object: x.name.clone(),
        fiber: fp.group.invariant_factors(),
        ef,
        cf,
        df,
        pi,
        chi,
        pi_star,
        chi_star,
        commutes,
        comparison,
        kernel,
        cokernel,
        torsion,
        torsion_bound: bound,
    })
}
