use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fpab::group::FpAbGroup;
use crate::fpab::hom::AbHom;
use crate::matrix::{Int, IntMatrix};
use crate::tietze::SparseRow;

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FpAbGroup,
    pub summands: Vec<FpAbGroup>,
    pub injections: Vec<AbHom>,
    pub projections: Vec<AbHom>,
    pub offsets: Vec<usize>,
}

impl DirectSum {
    /// Places per-summand coordinates side by side.
    pub fn join(&self, parts: &[Vec<Int>]) -> Vec<Int> {
        assert_eq!(parts.len(), self.summands.len());
        parts.iter().flatten().cloned().collect()
    }

    /// Block map `⊕ X_i → ⊕ Y_j` from a grid of component maps (`None` = 0).
    pub fn block_map(source: &DirectSum, target: &DirectSum, blocks: &[Vec<Option<AbHom>>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(target.group.ngens(), source.group.ngens());
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if let Some(b) = b {
                    m.set_block(target.offsets[i], source.offsets[j], b.matrix());
                }
            }
        }
        m
    }
}

pub fn direct_sum(groups: &[FpAbGroup]) -> DirectSum {
    let n: usize = groups.iter().map(|g| g.ngens()).sum();
    let mut rels: Vec<SparseRow> = Vec::new();
    let mut offsets = Vec::with_capacity(groups.len());
    let mut off = 0;
    for g in groups {
        offsets.push(off);
        for r in g.relations() {
            rels.push(r.iter().map(|(c, v)| (c + off, v.clone())).collect());
        }
        off += g.ngens();
    }
    let sum = FpAbGroup::new(n, rels);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (g, &o) in groups.iter().zip(&offsets) {
        let mut inj = IntMatrix::zeros(n, g.ngens());
        let mut proj = IntMatrix::zeros(g.ngens(), n);
        for i in 0..g.ngens() {
            inj[(o + i, i)] = Int::from(1);
            proj[(i, o + i)] = Int::from(1);
        }
        injections.push(AbHom::new_unchecked(g, &sum, inj));
        projections.push(AbHom::new_unchecked(&sum, g, proj));
    }
    DirectSum { group: sum, summands: groups.to_vec(), injections, projections, offsets }
}

/// `G ⊗_Z H` presented on pairs of generators.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub group: FpAbGroup,
    pub left: FpAbGroup,
    pub right: FpAbGroup,
}

impl Tensor {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right.ngens() + j
    }

    /// Coordinates of the pure tensor `x ⊗ y`.
    pub fn pure(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.group.ngens()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    v[self.index(i, j)] += a * b;
                }
            }
        }
        v
    }

    /// `f ⊗ g` between two tensor presentations.
    pub fn map(&self, target: &Tensor, f: &AbHom, g: &AbHom) -> AbHom {
        AbHom::new_unchecked(&self.group, &target.group, f.matrix().kron(g.matrix()))
    }
}

pub fn tensor_z(g: &FpAbGroup, h: &FpAbGroup) -> Tensor {
    let (n, m) = (g.ngens(), h.ngens());
    let mut rels: Vec<SparseRow> = Vec::new();
    for r in g.relations() {
        for j in 0..m {
            rels.push(r.iter().map(|(c, v)| (c * m + j, v.clone())).collect());
        }
    }
    for s in h.relations() {
        for i in 0..n {
            rels.push(s.iter().map(|(c, v)| (i * m + c, v.clone())).collect());
        }
    }
    Tensor { group: FpAbGroup::new(n * m, rels), left: g.clone(), right: h.clone() }
}

/// Pullback `P = {(x, y) : f(x) = g(y)}` of `f: X → Z` and `g: Y → Z`.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub group: FpAbGroup,
    pub p1: AbHom,
    pub p2: AbHom,
    /// `P → X ⊕ Y`
    pub inclusion: AbHom,
    pub sum: DirectSum,
}

impl FiberProduct {
    /// The map `W → P` induced by a cone `(q1: W → X, q2: W → Y)` with `f q1 = g q2`.
    pub fn mediate(&self, q1: &AbHom, q2: &AbHom) -> Result<AbHom> {
        let w = q1.source();
        let into_sum = self.sum.injections[0].compose(q1).add(&self.sum.injections[1].compose(q2));
        // express each generator image in the kernel generators of P
        let (ig, incl) = (&self.group, &self.inclusion);
        let to_can = self.sum.group.to_canonical();
        let moduli = self.sum.group.moduli();
        let basis_can = to_can.mul(incl.matrix());
        let mut cols = Vec::new();
        for j in 0..w.ngens() {
            let target = to_can.mul_vec(&into_sum.matrix().column(j));
            let mut rows: Vec<Vec<Int>> = basis_can.transpose().row_vecs();
            for (i, d) in moduli.iter().enumerate() {
                if !d.is_zero() {
                    let mut v = vec![Int::zero(); moduli.len()];
                    v[i] = d.clone();
                    rows.push(v);
                }
            }
            let basis = IntMatrix::from_rows(moduli.len(), rows);
            let c = crate::normal_form::solve_rows(&basis, &target)
                .ok_or(Error::NotWellDefined { relation: j })?;
            cols.push(c[..ig.ngens()].to_vec());
        }
        AbHom::new(w, ig, IntMatrix::from_columns(ig.ngens(), &cols))
    }
}

pub fn fiber_product(f: &AbHom, g: &AbHom) -> Result<FiberProduct> {
    if !f.target().same_as(g.target()) {
        return Err(Error::DimensionMismatch("fiber product needs a common target".into()));
    }
    let sum = direct_sum(&[f.source().clone(), g.source().clone()]);
    let diff = f.compose(&sum.projections[0]).sub(&g.compose(&sum.projections[1]));
    let (p, incl) = diff.kernel();
    let p1 = sum.projections[0].compose(&incl);
    let p2 = sum.projections[1].compose(&incl);
    Ok(FiberProduct { group: p, p1, p2, inclusion: incl, sum })
}

/// The subgroup `{x : n x = 0}` and its inclusion.
pub fn torsion_part(g: &FpAbGroup, n: &Int) -> (FpAbGroup, AbHom) {
    assert!(*n >= Int::from(1), "torsion_part needs n >= 1");
    AbHom::scalar(g, n).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;
    use crate::matrix::int;

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&[FpAbGroup::free(1), FpAbGroup::cyclic(2)]);
        assert_eq!(s.group.invariant_factors(), InvariantFactors::new(&[2], 1));
        assert!(direct_sum(&[]).group.is_trivial());
        let s = direct_sum(&[FpAbGroup::cyclic(2), FpAbGroup::cyclic(3)]);
        assert_eq!(s.group.invariant_factors(), InvariantFactors::new(&[6], 0));
    }

    #[test]
    fn tensor_examples() {
        assert!(tensor_z(&FpAbGroup::cyclic(2), &FpAbGroup::cyclic(3)).group.is_trivial());
        let g = FpAbGroup::cyclic_sum(&[int(4), int(0)]);
        assert!(tensor_z(&FpAbGroup::free(1), &g).group.is_isomorphic(&g));
        let t = tensor_z(&FpAbGroup::cyclic(4), &FpAbGroup::cyclic(6));
        assert_eq!(t.group.invariant_factors(), InvariantFactors::new(&[2], 0));
    }

    #[test]
    fn fiber_product_examples() {
        let z = FpAbGroup::free(1);
        let z2 = FpAbGroup::cyclic(2);
        let red = AbHom::new(&z, &z2, IntMatrix::from_i64(&[&[1]])).unwrap();
        let fp = fiber_product(&red, &red).unwrap();
        assert_eq!(fp.group.invariant_factors(), InvariantFactors::new(&[], 2));
        assert!(red.compose(&fp.p1).equals(&red.compose(&fp.p2)));

        let x = FpAbGroup::cyclic(6);
        let y = FpAbGroup::free(2);
        let zero1 = AbHom::zero(&x, &z2);
        let zero2 = AbHom::zero(&y, &z2);
        let fp = fiber_product(&zero1, &zero2).unwrap();
        assert_eq!(fp.group.invariant_factors(), InvariantFactors::new(&[6], 2));

        // pullback along an isomorphism
        let iso = AbHom::identity(&z2);
        let f = AbHom::new(&x, &z2, IntMatrix::from_i64(&[&[1]])).unwrap();
        let fp = fiber_product(&f, &iso).unwrap();
        assert!(fp.p1.is_iso());
    }

    #[test]
    fn mediating_map_exists_for_cones() {
        let z = FpAbGroup::free(1);
        let z2 = FpAbGroup::cyclic(2);
        let red = AbHom::new(&z, &z2, IntMatrix::from_i64(&[&[1]])).unwrap();
        let fp = fiber_product(&red, &red).unwrap();
        let w = FpAbGroup::free(2);
        let q1 = AbHom::new(&w, &z, IntMatrix::from_i64(&[&[1, 2]])).unwrap();
        let q2 = AbHom::new(&w, &z, IntMatrix::from_i64(&[&[3, 0]])).unwrap();
        let med = fp.mediate(&q1, &q2).unwrap();
        assert!(fp.p1.compose(&med).equals(&q1));
        assert!(fp.p2.compose(&med).equals(&q2));
    }

    #[test]
    fn torsion_examples() {
        assert!(torsion_part(&FpAbGroup::free(1), &int(3)).0.is_trivial());
        let z4 = FpAbGroup::cyclic(4);
        assert_eq!(torsion_part(&z4, &int(2)).0.invariant_factors(), InvariantFactors::new(&[2], 0));
        assert_eq!(torsion_part(&z4, &int(4)).0.invariant_factors(), InvariantFactors::new(&[4], 0));
    }
}
