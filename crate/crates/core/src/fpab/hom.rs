use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fpab::group::FpAbGroup;
use crate::matrix::{int, Int, IntMatrix};
use crate::normal_form::{kernel_basis, solve_rows, Lattice};

/// A homomorphism of presented groups, given on generators.
///
/// `matrix` is `target.ngens() x source.ngens()`; column `j` is the image of
/// source generator `j`.
#[derive(Clone)]
pub struct AbHom {
    source: FpAbGroup,
    target: FpAbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    /// Builds the map, checking that every source relation lands in the target relation lattice.
    pub fn new(source: &FpAbGroup, target: &FpAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        for (idx, rel) in source.relations().iter().enumerate() {
            let mut img = vec![Int::zero(); target.ngens()];
            for (c, v) in rel {
                for (i, o) in img.iter_mut().enumerate() {
                    let m = &matrix[(i, *c)];
                    if !m.is_zero() {
                        *o += m * v;
                    }
                }
            }
            if !target.is_zero(&img) {
                return Err(Error::NotWellDefined { relation: idx });
            }
        }
        Ok(AbHom { source: source.clone(), target: target.clone(), matrix })
    }

    pub(crate) fn new_unchecked(source: &FpAbGroup, target: &FpAbGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.ngens(), source.ngens()));
        AbHom { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn identity(g: &FpAbGroup) -> Self {
        Self::new_unchecked(g, g, IntMatrix::identity(g.ngens()))
    }

    pub fn zero(source: &FpAbGroup, target: &FpAbGroup) -> Self {
        Self::new_unchecked(source, target, IntMatrix::zeros(target.ngens(), source.ngens()))
    }

    pub fn scalar(g: &FpAbGroup, n: &Int) -> Self {
        Self::new_unchecked(g, g, IntMatrix::scalar(g.ngens(), n))
    }

    pub fn source(&self) -> &FpAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FpAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AbHom) -> AbHom {
        assert!(other.target.same_as(&self.source), "composition of incompatible maps");
        Self::new_unchecked(&other.source, &self.target, self.matrix.mul(&other.matrix))
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        self.check_parallel(other);
        Self::new_unchecked(&self.source, &self.target, self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        self.check_parallel(other);
        Self::new_unchecked(&self.source, &self.target, self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, n: &Int) -> AbHom {
        Self::new_unchecked(&self.source, &self.target, self.matrix.scale(n))
    }

    fn check_parallel(&self, other: &AbHom) {
        assert!(self.source.same_as(&other.source) && self.target.same_as(&other.target), "maps are not parallel");
    }

    /// Whether the map sends every generator to zero.
    pub fn is_zero(&self) -> bool {
        (0..self.source.ngens()).all(|j| self.target.is_zero(&self.matrix.column(j)))
    }

    /// Equality as homomorphisms (difference is the zero map).
    pub fn equals(&self, other: &AbHom) -> bool {
        self.sub(other).is_zero()
    }

    /// The map in Smith coordinates: `k_target x k_source`.
    pub(crate) fn canonical_matrix(&self) -> IntMatrix {
        self.target.to_canonical().mul(&self.matrix).mul(self.source.from_canonical())
    }

    /// Kernel as a presented group together with its inclusion into the source.
    pub fn kernel(&self) -> (FpAbGroup, AbHom) {
        let h = self.canonical_matrix();
        let ks = self.source.moduli().to_vec();
        let kt = self.target.moduli().to_vec();
        let torsion_t: Vec<usize> = (0..kt.len()).filter(|&i| !kt[i].is_zero()).collect();
        let mut slack = IntMatrix::zeros(kt.len(), torsion_t.len());
        for (c, &i) in torsion_t.iter().enumerate() {
            slack[(i, c)] = -kt[i].clone();
        }
        let c = h.hstack(&slack);
        let kb = kernel_basis(&c);
        let n = ks.len();
        let mut rows: Vec<Vec<Int>> = (0..kb.cols()).map(|j| kb.column(j)[..n].to_vec()).collect();
        for (i, d) in ks.iter().enumerate() {
            if !d.is_zero() {
                let mut v = vec![Int::zero(); n];
                v[i] = d.clone();
                rows.push(v);
            }
        }
        let lat = Lattice::from_rows(n, rows);
        let basis = lat.basis();
        let mut rels = Vec::new();
        for (i, d) in ks.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let mut t = vec![Int::zero(); n];
            t[i] = d.clone();
            let coeffs = solve_rows(&basis, &t).expect("source relations lie in the kernel lattice");
            rels.push(crate::tietze::dense_to_sparse(&coeffs));
        }
        let kgroup = FpAbGroup::new(basis.rows(), rels);
        let incl = self.source.from_canonical().mul(&basis.transpose());
        let incl = AbHom::new_unchecked(&kgroup, &self.source, incl);
        (kgroup, incl)
    }

    /// Cokernel with its projection from the target.
    pub fn cokernel(&self) -> (FpAbGroup, AbHom) {
        let h = self.canonical_matrix();
        let kt = self.target.moduli();
        let mut rels = Vec::new();
        for (i, d) in kt.iter().enumerate() {
            if !d.is_zero() {
                rels.push(vec![(i, d.clone())]);
            }
        }
        for j in 0..h.cols() {
            let col = crate::tietze::dense_to_sparse(&h.column(j));
            if !col.is_empty() {
                rels.push(col);
            }
        }
        let g = FpAbGroup::new(kt.len(), rels);
        let proj = AbHom::new_unchecked(&self.target, &g, self.target.to_canonical().clone());
        (g, proj)
    }

    /// Image, with the corestriction `source → image` and the inclusion `image → target`.
    pub fn image(&self) -> (FpAbGroup, AbHom, AbHom) {
        let (kgroup, kincl) = self.kernel();
        let ks = self.source.moduli();
        let to_can = self.source.to_canonical();
        let mut rels = Vec::new();
        for (i, d) in ks.iter().enumerate() {
            if !d.is_zero() {
                rels.push(vec![(i, d.clone())]);
            }
        }
        for j in 0..kgroup.ngens() {
            let v = to_can.mul_vec(&kincl.matrix.column(j));
            rels.push(crate::tietze::dense_to_sparse(&v));
        }
        let img = FpAbGroup::new(ks.len(), rels);
        let onto = AbHom::new_unchecked(&self.source, &img, to_can.clone());
        let incl = AbHom::new_unchecked(&img, &self.target, self.matrix.mul(self.source.from_canonical()));
        (img, onto, incl)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Fails with `NotIso` unless kernel and cokernel vanish.
    pub fn require_iso(&self, what: &str) -> Result<()> {
        let k = self.kernel().0.invariant_factors();
        let c = self.cokernel().0.invariant_factors();
        if k.is_trivial() && c.is_trivial() {
            Ok(())
        } else {
            Err(Error::NotIso(format!("{what}: kernel {k}, cokernel {c}")))
        }
    }

    /// `self^k` for an endomorphism.
    pub fn pow(&self, k: u32) -> AbHom {
        assert!(self.source.same_as(&self.target), "power of a non-endomorphism");
        let mut m = IntMatrix::identity(self.source.ngens());
        for _ in 0..k {
            m = self.matrix.mul(&m);
        }
        Self::new_unchecked(&self.source, &self.target, m)
    }

    /// The map `coker(self) → Z` induced by `q: target → Z` with `q ∘ self = 0`;
    /// `coker` must be the group returned by [`AbHom::cokernel`].
    pub fn induced_on_cokernel(&self, coker: &FpAbGroup, q: &AbHom) -> Result<AbHom> {
        assert!(q.source.same_as(&self.target));
        AbHom::new(coker, &q.target, q.matrix.mul(self.target.from_canonical()))
    }

    pub fn negate(&self) -> AbHom {
        self.scale(&int(-1))
    }
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({} -> {}) {:?}", self.source, self.target, self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_ill_defined_maps() {
        let z = FpAbGroup::free(1);
        let id = AbHom::new(&z, &z, IntMatrix::identity(1)).unwrap();
        assert!(id.is_iso());

        let z2 = FpAbGroup::cyclic(2);
        let z4 = FpAbGroup::cyclic(4);
        assert_eq!(
            AbHom::new(&z2, &z4, IntMatrix::from_i64(&[&[1]])).unwrap_err(),
            Error::NotWellDefined { relation: 0 }
        );
        let inj = AbHom::new(&z2, &z4, IntMatrix::from_i64(&[&[2]])).unwrap();
        assert!(inj.is_injective());
        assert!(!inj.is_surjective());
    }

    #[test]
    fn kernel_and_cokernel_of_scalars() {
        let z = FpAbGroup::free(1);
        let two = AbHom::scalar(&z, &int(2));
        assert!(two.kernel().0.is_trivial());
        assert_eq!(two.cokernel().0.invariant_factors().torsion, vec![int(2)]);

        let zero = AbHom::zero(&z, &z);
        assert_eq!(zero.kernel().0.invariant_factors().free, 1);
        assert_eq!(zero.cokernel().0.invariant_factors().free, 1);
    }

    #[test]
    fn image_of_linear_form() {
        // (a, b) -> 2a + 4b
        let src = FpAbGroup::free(2);
        let tgt = FpAbGroup::free(1);
        let h = AbHom::new(&src, &tgt, IntMatrix::from_i64(&[&[2, 4]])).unwrap();
        let (img, onto, incl) = h.image();
        assert_eq!(img.invariant_factors().free, 1);
        assert!(img.invariant_factors().torsion.is_empty());
        assert!(incl.compose(&onto).equals(&h));
        assert_eq!(h.cokernel().0.invariant_factors().torsion, vec![int(2)]);
        let (k, kincl) = h.kernel();
        assert_eq!(k.invariant_factors().free, 1);
        assert!(h.compose(&kincl).is_zero());
    }

    #[test]
    fn kernel_inclusion_is_injective_on_torsion() {
        // Z/12 -> Z/12, x -> 4x; kernel is Z/4
        let g = FpAbGroup::cyclic(12);
        let h = AbHom::scalar(&g, &int(4));
        let (k, incl) = h.kernel();
        assert_eq!(k.invariant_factors().torsion, vec![int(4)]);
        assert!(incl.is_injective());
    }
}
