use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fpab::{AbHom, FpAbGroup};
use crate::matrix::{Int, IntMatrix};
use crate::normal_form::{solve_rows, Lattice};
use crate::tietze::dense_to_sparse;
use crate::zrings::ring::{PresentedRing, RingTensor};

/// An ideal `J ⊆ W` as an abelian group presented on a spanning set of ring elements.
#[derive(Clone, Debug)]
pub struct IdealData {
    ring: PresentedRing,
    span: Vec<Vec<Int>>,
    group: FpAbGroup,
}

impl IdealData {
    /// The ideal generated by `gens`.
    pub fn generated_by(ring: &PresentedRing, gens: &[Vec<Int>]) -> Self {
        let n = ring.dim();
        let mut lat = Lattice::new(n);
        for g in gens {
            for k in 0..n {
                lat.insert(ring.mul(g, &ring.basis_elem(k)));
            }
        }
        lat.canonicalize();
        let span: Vec<Vec<Int>> =
            lat.basis().row_vecs().into_iter().map(|r| ring.reduce(&r)).filter(|r| !ring.is_zero(r)).collect();
        Self::from_span(ring, span)
    }

    /// The ideal spanned additively by the given basis elements.
    pub fn from_basis_subset(ring: &PresentedRing, idx: &[usize]) -> Result<Self> {
        let span: Vec<Vec<Int>> = idx.iter().map(|&i| ring.basis_elem(i)).collect();
        let j = Self::from_span(ring, span);
        j.check_closed()?;
        Ok(j)
    }

    pub fn zero(ring: &PresentedRing) -> Self {
        Self::from_span(ring, vec![])
    }

    fn from_span(ring: &PresentedRing, span: Vec<Vec<Int>>) -> Self {
        let r = span.len();
        let free = FpAbGroup::free(r);
        let m = IntMatrix::from_columns(ring.dim(), &span);
        let h = AbHom::new(&free, ring.additive_group(), m).expect("free source");
        let (_, incl) = h.kernel();
        let rels = (0..incl.source().ngens()).map(|j| dense_to_sparse(&incl.matrix().column(j))).collect();
        IdealData { ring: ring.clone(), span, group: FpAbGroup::new(r, rels) }
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    /// Ring elements corresponding to the generators of `group()`.
    pub fn span(&self) -> &[Vec<Int>] {
        &self.span
    }

    pub fn group(&self) -> &FpAbGroup {
        &self.group
    }

    /// The inclusion `J → W` of additive groups.
    pub fn inclusion(&self) -> AbHom {
        let m = IntMatrix::from_columns(self.ring.dim(), &self.span);
        AbHom::new(&self.group, self.ring.additive_group(), m).expect("span relations hold in W")
    }

    /// Coordinates of `w` in the spanning set, if `w ∈ J`.
    pub fn coords_of(&self, w: &[Int]) -> Option<Vec<Int>> {
        let n = self.ring.dim();
        let mut rows = self.span.clone();
        for (i, o) in self.ring.orders().iter().enumerate() {
            if !o.is_zero() {
                let mut v = vec![Int::zero(); n];
                v[i] = o.clone();
                rows.push(v);
            }
        }
        let basis = IntMatrix::from_rows(n, rows);
        solve_rows(&basis, w).map(|c| c[..self.span.len()].to_vec())
    }

    pub fn contains(&self, w: &[Int]) -> bool {
        self.coords_of(w).is_some()
    }

    /// Checks `J · W ⊆ J` on the spanning set and the ring basis.
    pub fn check_closed(&self) -> Result<()> {
        for (a, s) in self.span.iter().enumerate() {
            for k in 0..self.ring.dim() {
                if !self.contains(&self.ring.mul(s, &self.ring.basis_elem(k))) {
                    return Err(Error::ValidationFailed(format!(
                        "ideal not closed: generator {a} times {}",
                        self.ring.labels()[k]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Matrix of `j ↦ w·j` on the spanning set.
    pub fn action(&self, w: &[Int]) -> IntMatrix {
        let cols: Vec<Vec<Int>> = self
            .span
            .iter()
            .map(|s| self.coords_of(&self.ring.mul(w, s)).expect("ideal is closed under multiplication"))
            .collect();
        IntMatrix::from_columns(self.span.len(), &cols)
    }

    /// Whether some power of `J` vanishes.
    pub fn is_nilpotent(&self) -> bool {
        let mut power = self.span.clone();
        for _ in 0..=self.ring.dim() + 64 {
            if power.iter().all(|x| self.ring.is_zero(x)) {
                return true;
            }
            let mut lat = Lattice::new(self.ring.dim());
            for x in &power {
                for s in &self.span {
                    lat.insert(self.ring.mul(x, s));
                }
            }
            for (i, o) in self.ring.orders().iter().enumerate() {
                if !o.is_zero() {
                    let mut v = vec![Int::zero(); self.ring.dim()];
                    v[i] = o.clone();
                    lat.insert(v);
                }
            }
            lat.canonicalize();
            let next: Vec<Vec<Int>> = lat.basis().row_vecs().into_iter().filter(|r| !self.ring.is_zero(r)).collect();
            if next == power {
                return false;
            }
            power = next;
        }
        false
    }
}

/// `A ⊗ I` inside `A ⊗ B`, spanned by `a_l ⊗ s` over the basis of `A` and the span of `I`.
pub fn ideal_tensor(t: &RingTensor, ideal: &IdealData) -> IdealData {
    assert!(t.right.source().same_as(ideal.ring()));
    let a = t.left.source();
    let mut span = Vec::new();
    for l in 0..a.dim() {
        for s in ideal.span() {
            let w = t.pure(&a.basis_elem(l), s);
            if !t.ring.is_zero(&w) {
                span.push(w);
            }
        }
    }
    IdealData::from_span(&t.ring, span)
}
