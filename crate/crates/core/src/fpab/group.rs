use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::{reduce_mod, Int, IntMatrix};
use crate::normal_form::{smith, Lattice};
use crate::tietze::{self, dense_to_sparse, SparseRow};

/// Isomorphism invariant of a finitely generated abelian group:
/// `Z/d_1 ⊕ ... ⊕ Z/d_k ⊕ Z^free` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantFactors {
    #[serde(with = "crate::json::int_vec")]
    pub torsion: Vec<Int>,
    pub free: usize,
}

impl InvariantFactors {
    pub fn trivial() -> Self {
        InvariantFactors { torsion: Vec::new(), free: 0 }
    }

    pub fn new(torsion: &[i64], free: usize) -> Self {
        InvariantFactors { torsion: torsion.iter().map(|&d| Int::from(d)).collect(), free }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free == 0
    }

    pub fn order(&self) -> Option<Int> {
        (self.free == 0).then(|| self.torsion.iter().product())
    }

    /// Least common multiple of element orders, for finite groups.
    pub fn exponent(&self) -> Option<Int> {
        (self.free == 0).then(|| self.torsion.last().cloned().unwrap_or_else(Int::one))
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Derived data computed once per group.
#[derive(Debug)]
pub(crate) struct Structure {
    pub phi: IntMatrix,
    pub lattice: Lattice,
    pub factors: InvariantFactors,
    /// One modulus per canonical coordinate, 0 for free coordinates.
    pub moduli: Vec<Int>,
    pub to_can: IntMatrix,
    pub from_can: IntMatrix,
}

struct GroupInner {
    ngens: usize,
    relations: Vec<SparseRow>,
    structure: OnceLock<Structure>,
}

/// A finitely presented abelian group `Z^ngens / ⟨relations⟩`.
///
/// Cloning is cheap; clones share the cached normal forms.
#[derive(Clone)]
pub struct FpAbGroup(Arc<GroupInner>);

impl FpAbGroup {
    pub fn new(ngens: usize, relations: Vec<SparseRow>) -> Self {
        for r in &relations {
            assert!(r.iter().all(|(c, _)| *c < ngens), "relation references generator out of range");
        }
        FpAbGroup(Arc::new(GroupInner { ngens, relations, structure: OnceLock::new() }))
    }

    pub fn from_matrix(ngens: usize, relations: &IntMatrix) -> Self {
        assert!(relations.rows() == 0 || relations.cols() == ngens);
        Self::new(ngens, (0..relations.rows()).map(|i| dense_to_sparse(relations.row(i))).collect())
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, Vec::new())
    }

    pub fn trivial() -> Self {
        Self::new(0, Vec::new())
    }

    /// `Z/d_1 ⊕ ... ⊕ Z/d_k` (a modulus of 0 gives a free summand).
    pub fn cyclic_sum(moduli: &[Int]) -> Self {
        let rels = moduli
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| vec![(i, d.clone())])
            .collect();
        Self::new(moduli.len(), rels)
    }

    pub fn cyclic(d: i64) -> Self {
        Self::cyclic_sum(&[Int::from(d)])
    }

    /// Same generators with additional relations.
    pub fn quotient(&self, extra: Vec<SparseRow>) -> Self {
        let mut rels = self.0.relations.clone();
        rels.extend(extra);
        Self::new(self.ngens(), rels)
    }

    /// Quotient by `n` times the whole group.
    pub fn mod_multiple(&self, n: &Int) -> Self {
        if n.is_zero() {
            return self.clone();
        }
        self.quotient((0..self.ngens()).map(|i| vec![(i, n.clone())]).collect())
    }

    pub fn ngens(&self) -> usize {
        self.0.ngens
    }

    pub fn relations(&self) -> &[SparseRow] {
        &self.0.relations
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.0.relations.len(), self.ngens());
        for (i, r) in self.0.relations.iter().enumerate() {
            for (c, v) in r {
                m[(i, *c)] += v;
            }
        }
        m
    }

    pub fn same_as(&self, other: &FpAbGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.ngens() == other.ngens() && self.0.relations == other.0.relations)
    }

    pub(crate) fn structure(&self) -> &Structure {
        self.0.structure.get_or_init(|| compute_structure(self.0.ngens, &self.0.relations))
    }

    pub fn invariant_factors(&self) -> InvariantFactors {
        self.structure().factors.clone()
    }

    pub fn is_trivial(&self) -> bool {
        self.structure().factors.is_trivial()
    }

    pub fn order(&self) -> Option<Int> {
        self.structure().factors.order()
    }

    pub fn is_isomorphic(&self, other: &FpAbGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    /// Whether the coordinate vector is zero in the group (Hermite membership test).
    pub fn is_zero(&self, x: &[Int]) -> bool {
        assert_eq!(x.len(), self.ngens(), "element has wrong number of coordinates");
        let st = self.structure();
        let y = st.phi.mul_vec(x);
        st.lattice.contains(&y)
    }

    pub fn eq_elems(&self, x: &[Int], y: &[Int]) -> bool {
        let d: Vec<Int> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    /// Coordinates in the Smith basis, reduced modulo the invariant factors.
    pub fn canonical_coords(&self, x: &[Int]) -> Vec<Int> {
        let st = self.structure();
        st.to_can.mul_vec(x).iter().zip(&st.moduli).map(|(c, d)| reduce_mod(c, d)).collect()
    }

    pub(crate) fn moduli(&self) -> &[Int] {
        &self.structure().moduli
    }

    /// `k x ngens` map to Smith coordinates.
    pub(crate) fn to_canonical(&self) -> &IntMatrix {
        &self.structure().to_can
    }

    /// `ngens x k`: representatives of the Smith generators.
    pub(crate) fn from_canonical(&self) -> &IntMatrix {
        &self.structure().from_can
    }

    pub fn generator(&self, i: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.ngens()];
        v[i] = Int::one();
        v
    }

    pub fn zero_vec(&self) -> Vec<Int> {
        vec![Int::zero(); self.ngens()]
    }

    pub fn element(&self, coords: Vec<Int>) -> GroupElement {
        assert_eq!(coords.len(), self.ngens());
        GroupElement { group: self.clone(), coords }
    }

    /// Order of the element, `None` when infinite.
    pub fn element_order(&self, x: &[Int]) -> Option<Int> {
        let st = self.structure();
        let c = self.canonical_coords(x);
        let mut ord = Int::one();
        for (ci, d) in c.iter().zip(&st.moduli) {
            if ci.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            let g = num_integer::Integer::gcd(ci, d);
            ord = num_integer::Integer::lcm(&ord, &(d / g));
        }
        Some(ord)
    }
}

fn compute_structure(ngens: usize, relations: &[SparseRow]) -> Structure {
    let red = tietze::simplify(ngens, relations);
    let s = red.survivors.len();
    let lattice = Lattice::from_rows(s, red.relations);
    let basis = lattice.basis();
    let rank = basis.rows();
    let sm = smith(&basis, false);
    let diag = sm.diagonal();

    let mut keep = Vec::new();
    let mut moduli = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..s {
        let d = if i < rank { diag[i].clone() } else { Int::zero() };
        if d.is_one() {
            continue;
        }
        if !d.is_zero() {
            torsion.push(d.clone());
        }
        keep.push(i);
        moduli.push(d);
    }
    let free = s - rank;
    // c = V^T y with y = phi x
    let vt = sm.v.transpose().select_rows(&keep);
    let to_can = vt.mul(&red.phi);
    let mut from_can = IntMatrix::zeros(ngens, keep.len());
    for (col, &i) in keep.iter().enumerate() {
        for (k, &orig) in red.survivors.iter().enumerate() {
            from_can[(orig, col)] = sm.v_inv[(i, k)].clone();
        }
    }
    Structure {
        phi: red.phi,
        lattice,
        factors: InvariantFactors { torsion, free },
        moduli,
        to_can,
        from_can,
    }
}

impl fmt::Debug for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpAbGroup(gens={}, rels={})", self.ngens(), self.0.relations.len())
    }
}

impl fmt::Display for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant_factors())
    }
}

/// An element of a presented group, compared modulo the relation lattice.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub group: FpAbGroup,
    pub coords: Vec<Int>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.group.is_zero(&self.coords)
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        assert!(self.group.same_as(&other.group));
        GroupElement { group: self.group.clone(), coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement { group: self.group.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, n: &Int) -> GroupElement {
        GroupElement { group: self.group.clone(), coords: self.coords.iter().map(|a| a * n).collect() }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.group.eq_elems(&self.coords, &other.coords)
    }
}
