use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpab::{AbHom, FpAbGroup};
use crate::matrix::{Int, IntMatrix};
use crate::sring::{ArrowMorphism, ArrowObject, Side, TPoly};
use crate::tietze::SparseRow;
use crate::zrings::Params;

/// The functors on arrow objects built from `M`, `N`, `D` and `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctorKind {
    CfA,
    CfB,
    CfN(usize),
    Df1,
    Df2,
    Ef1,
    Ef2,
}

impl fmt::Display for FunctorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorKind::CfA => write!(f, "CF_a"),
            FunctorKind::CfB => write!(f, "CF_b"),
            FunctorKind::CfN(n) => write!(f, "CF_{n}"),
            FunctorKind::Df1 => write!(f, "DF_1"),
            FunctorKind::Df2 => write!(f, "DF_2"),
            FunctorKind::Ef1 => write!(f, "EF_1"),
            FunctorKind::Ef2 => write!(f, "EF_2"),
        }
    }
}

/// One summand `X/nX` of the presentation, `X ∈ {M, N}` (`n = 0` keeps `X`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub side: Side,
    pub modulus: Int,
}

/// `f(t)`, optionally after `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub poly: TPoly,
    pub via_d: bool,
}

impl Entry {
    pub fn t(poly: TPoly) -> Self {
        Entry { poly, via_d: false }
    }

    pub fn scalar(c: Int) -> Self {
        Self::t(TPoly::new(vec![c]))
    }

    pub fn d(c: Int) -> Self {
        Entry { poly: TPoly::new(vec![c]), via_d: true }
    }
}

/// Relations `(e_1(x), …, e_k(x))` for `x` running over generators of `side`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub side: Side,
    pub entries: Vec<Option<Entry>>,
}

/// A functor of the form `(⊕ X_k / n_k X_k) / (relation families)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFunctor {
    pub kind: FunctorKind,
    pub params: Params,
    pub pieces: Vec<Piece>,
    pub families: Vec<Family>,
}

fn one_minus_t() -> TPoly {
    TPoly::from_i64(&[1, -1])
}

impl LinearFunctor {
    pub fn new(kind: FunctorKind, params: &Params) -> Result<Self> {
        let pp = |k: u32| params.ppow(k);
        let (e, m) = (params.e, params.m);
        let piece = |side, modulus| Piece { side, modulus };
        let (pieces, families) = match kind {
            FunctorKind::CfA => (
                vec![piece(Side::N, pp(m + e))],
                vec![Family { side: Side::M, entries: vec![Some(Entry::d(pp(e)))] }],
            ),
            FunctorKind::CfB => (vec![piece(Side::M, pp(e))], vec![]),
            FunctorKind::CfN(n) => {
                let eps = params.epsilon(n)?;
                if n < 2 {
                    return Err(Error::OutOfRange(format!("CF_n needs 2 <= n <= {}, got {n}", params.q() - 1)));
                }
                (
                    vec![piece(Side::N, pp(eps)), piece(Side::M, pp(e))],
                    vec![Family { side: Side::M, entries: vec![Some(Entry::d(Int::one())), Some(Entry::scalar(Int::from(n)))] }],
                )
            }
            FunctorKind::Df1 => (vec![piece(Side::N, pp(e))], vec![]),
            FunctorKind::Df2 => (vec![piece(Side::M, pp(e).gcd(&Int::from(2)))], vec![]),
            FunctorKind::Ef1 => (
                vec![piece(Side::N, pp(m + e)), piece(Side::N, pp(m))],
                vec![
                    Family {
                        side: Side::N,
                        entries: vec![Some(Entry::scalar(pp(e))), Some(Entry::t(one_minus_t().neg()))],
                    },
                    Family { side: Side::M, entries: vec![None, Some(Entry::d(Int::one()))] },
                ],
            ),
            FunctorKind::Ef2 => {
                if params.p != 2 {
                    return Err(Error::WrongPrime(params.p));
                }
                (
                    vec![piece(Side::N, pp(m + e - 1)), piece(Side::M, pp(e)), piece(Side::M, pp(e - 1))],
                    vec![
                        // c ranges over M
                        Family { side: Side::M, entries: vec![Some(Entry::d(Int::one())), None, Some(Entry::scalar(Int::one()))] },
                        // h ranges over M
                        Family {
                            side: Side::M,
                            entries: vec![None, Some(Entry::scalar(Int::from(2))), Some(Entry::t(one_minus_t().neg()))],
                        },
                    ],
                )
            }
        };
        Ok(LinearFunctor { kind, params: *params, pieces, families })
    }

    /// Generator offsets of each piece for `x`.
    fn offsets(&self, x: &ArrowObject) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.pieces.len());
        let mut off = 0;
        for pc in &self.pieces {
            out.push(off);
            off += x.side(pc.side).ngens();
        }
        out.push(off);
        out
    }

    fn entry_matrix(x: &ArrowObject, e: &Entry, family: Side, piece: Side) -> IntMatrix {
        if e.via_d {
            assert!(family == Side::M && piece == Side::N, "D maps M to N");
            x.t_poly(Side::N, &e.poly).compose(x.d()).matrix().clone()
        } else {
            assert_eq!(family, piece, "entry without D stays on one side");
            x.t_poly(piece, &e.poly).matrix().clone()
        }
    }

    pub fn apply(&self, x: &ArrowObject) -> FunctorValue {
        let offsets = self.offsets(x);
        let ngens = *offsets.last().unwrap();
        let mut rels: Vec<SparseRow> = Vec::new();
        for (pc, &off) in self.pieces.iter().zip(&offsets) {
            let g = x.side(pc.side);
            for r in g.relations() {
                rels.push(r.iter().map(|(c, v)| (c + off, v.clone())).collect());
            }
            if !pc.modulus.is_zero() {
                rels.extend((0..g.ngens()).map(|i| vec![(off + i, pc.modulus.clone())]));
            }
        }
        for fam in &self.families {
            let src = x.side(fam.side).ngens();
            let mut block = IntMatrix::zeros(ngens, src);
            for ((pc, &off), e) in self.pieces.iter().zip(&offsets).zip(&fam.entries) {
                if let Some(e) = e {
                    block.set_block(off, 0, &Self::entry_matrix(x, e, fam.side, pc.side));
                }
            }
            for j in 0..src {
                let row = crate::tietze::dense_to_sparse(&block.column(j));
                if !row.is_empty() {
                    rels.push(row);
                }
            }
        }
        FunctorValue { kind: self.kind, object: x.name.clone(), group: FpAbGroup::new(ngens, rels), offsets }
    }

    /// `F(f)`, block diagonal in `α` and `β`.
    pub fn apply_morphism(&self, f: &ArrowMorphism, source: &FunctorValue, target: &FunctorValue) -> Result<AbHom> {
        let blocks: Vec<&IntMatrix> = self
            .pieces
            .iter()
            .map(|pc| match pc.side {
                Side::M => f.alpha.matrix(),
                Side::N => f.beta.matrix(),
            })
            .collect();
        AbHom::new(&source.group, &target.group, IntMatrix::block_diag(&blocks))
    }

    /// Applies to a morphism, building both values.
    pub fn on_morphism(&self, f: &ArrowMorphism) -> Result<(FunctorValue, FunctorValue, AbHom)> {
        let s = self.apply(&f.source);
        let t = self.apply(&f.target);
        let h = self.apply_morphism(f, &s, &t)?;
        Ok((s, t, h))
    }
}

/// `F(X)` with the generator offsets of its pieces.
#[derive(Clone, Debug)]
pub struct FunctorValue {
    pub kind: FunctorKind,
    pub object: String,
    pub group: FpAbGroup,
    pub offsets: Vec<usize>,
}

impl FunctorValue {
    /// The element given by coordinates on piece `k`.
    pub fn from_piece(&self, k: usize, coords: &[Int]) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.group.ngens()];
        assert_eq!(coords.len(), self.offsets[k + 1] - self.offsets[k]);
        v[self.offsets[k]..self.offsets[k + 1]].clone_from_slice(coords);
        v
    }
}

/// A natural transformation given by a grid of `f(t)` entries, `grid[target piece][source piece]`.
#[derive(Clone, Debug)]
pub struct NatTrans {
    pub name: String,
    pub source: LinearFunctor,
    pub target: LinearFunctor,
    pub grid: Vec<Vec<Option<TPoly>>>,
}

impl NatTrans {
    pub fn at(&self, x: &ArrowObject, source: &FunctorValue, target: &FunctorValue) -> Result<AbHom> {
        let mut m = IntMatrix::zeros(target.group.ngens(), source.group.ngens());
        for (i, row) in self.grid.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if let Some(f) = e {
                    let side = self.target.pieces[i].side;
                    if side != self.source.pieces[j].side {
                        return Err(Error::DimensionMismatch(format!("{}: entry ({i}, {j}) changes side", self.name)));
                    }
                    m.set_block(target.offsets[i], source.offsets[j], x.t_poly(side, f).matrix());
                }
            }
        }
        AbHom::new(&source.group, &target.group, m)
    }

    /// Evaluates at `x`, building both functor values.
    pub fn evaluate(&self, x: &ArrowObject) -> Result<(FunctorValue, FunctorValue, AbHom)> {
        let s = self.source.apply(x);
        let t = self.target.apply(x);
        let h = self.at(x, &s, &t)?;
        Ok((s, t, h))
    }
}

pub(crate) fn constant(c: impl Into<Int>) -> Option<TPoly> {
    Some(TPoly::new(vec![c.into()]))
}

pub(crate) fn one_minus_t_entry() -> Option<TPoly> {
    Some(one_minus_t())
}

/// Every functor defined for `params`, with `CF_n` for `2 ≤ n < q`.
pub fn all_functors(params: &Params) -> Vec<LinearFunctor> {
    let mut kinds = vec![FunctorKind::CfA, FunctorKind::CfB];
    kinds.extend((2..params.q()).map(FunctorKind::CfN));
    kinds.extend([FunctorKind::Df1, FunctorKind::Df2, FunctorKind::Ef1]);
    if params.p == 2 {
        kinds.push(FunctorKind::Ef2);
    }
    kinds.into_iter().map(|k| LinearFunctor::new(k, params).expect("kind valid for params")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;
    use crate::lambda::{adams_catalog, AdamsRing};

    fn obj(m: &FpAbGroup, tm: &[&[i64]], n: &FpAbGroup, tn: &[&[i64]], d: IntMatrix, p: u32) -> ArrowObject {
        ArrowObject::from_matrices("x", p, m, IntMatrix::from_i64(tm), n, IntMatrix::from_i64(tn), d).unwrap()
    }

    fn value(kind: FunctorKind, params: &Params, x: &ArrowObject) -> InvariantFactors {
        LinearFunctor::new(kind, params).unwrap().apply(x).group.invariant_factors()
    }

    #[test]
    fn cf_examples() {
        let p222 = Params::new(2, 2, 2).unwrap();
        let p311 = Params::new(3, 1, 1).unwrap();
        let dz3 = adams_catalog(AdamsRing::Integers, 3).unwrap().arrow_object().unwrap();
        let dz2 = adams_catalog(AdamsRing::Integers, 2).unwrap().arrow_object().unwrap();
        let dual = adams_catalog(AdamsRing::TruncatedPoly { n: 2 }, 2).unwrap().arrow_object().unwrap();
        assert!(value(FunctorKind::CfA, &p311, &dz3).is_trivial());
        assert_eq!(value(FunctorKind::CfA, &p222, &dual), InvariantFactors::new(&[2, 4], 0));
        let z = FpAbGroup::free(1);
        // t_M = p t_N is forced by D = 1
        for c in [0, 1, 5] {
            let id = obj(&z, &[&[2 * c]], &z, &[&[c]], IntMatrix::identity(1), 2);
            assert_eq!(value(FunctorKind::CfA, &p222, &id), InvariantFactors::new(&[4], 0));
        }

        assert_eq!(value(FunctorKind::CfB, &p311, &dz3), InvariantFactors::new(&[3], 0));
        assert_eq!(value(FunctorKind::CfB, &p222, &dual), InvariantFactors::new(&[4, 4], 0));
        assert!(value(FunctorKind::CfB, &p222, &ArrowObject::free_n(2, 2)).is_trivial());

        assert!(value(FunctorKind::CfN(2), &p311, &dz3).is_trivial());
        assert_eq!(value(FunctorKind::CfN(2), &p222, &dz2), InvariantFactors::new(&[2], 0));
        let n_only = ArrowObject::free_n(2, 1);
        assert_eq!(value(FunctorKind::CfN(2), &p222, &n_only), InvariantFactors::new(&[8], 0));
        assert!(LinearFunctor::new(FunctorKind::CfN(4), &p222).is_err());
    }

    #[test]
    fn df_and_ef_examples() {
        let p222 = Params::new(2, 2, 2).unwrap();
        let p311 = Params::new(3, 1, 1).unwrap();
        let dual = adams_catalog(AdamsRing::TruncatedPoly { n: 2 }, 2).unwrap().arrow_object().unwrap();
        let dz2 = adams_catalog(AdamsRing::Integers, 2).unwrap().arrow_object().unwrap();
        let dz3 = adams_catalog(AdamsRing::Integers, 3).unwrap().arrow_object().unwrap();
        assert!(value(FunctorKind::Df2, &p311, &dz3).is_trivial());
        assert_eq!(value(FunctorKind::Df2, &p222, &dz2), InvariantFactors::new(&[2], 0));
        assert_eq!(value(FunctorKind::Df1, &p222, &dual), InvariantFactors::new(&[2, 4], 0));

        assert!(value(FunctorKind::Ef1, &p222, &dz2).is_trivial());
        assert_eq!(value(FunctorKind::Ef1, &p222, &ArrowObject::free_n(2, 1)), InvariantFactors::new(&[16], 0));
        let z = FpAbGroup::free(1);
        let id = obj(&z, &[&[2]], &z, &[&[1]], IntMatrix::identity(1), 2);
        assert_eq!(value(FunctorKind::Ef1, &p222, &id), InvariantFactors::new(&[4], 0));

        assert_eq!(value(FunctorKind::Ef2, &p222, &ArrowObject::free_n(2, 1)), InvariantFactors::new(&[8], 0));
        assert_eq!(value(FunctorKind::Ef2, &p222, &dz2), InvariantFactors::new(&[2], 0));
        assert_eq!(LinearFunctor::new(FunctorKind::Ef2, &p311).unwrap_err(), Error::WrongPrime(3));
    }
}
