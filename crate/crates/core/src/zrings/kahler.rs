use num_traits::Zero;

use crate::error::Result;
use crate::fpab::{tensor_z, AbHom, FpAbGroup};
use crate::matrix::{Int, IntMatrix};
use crate::tietze::SparseRow;
use crate::zrings::ideal::IdealData;
use crate::zrings::ring::{PresentedRing, RingHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KahlerKind {
    /// Generators `b_l dx_i`, relations `b_l · d(relator)`.
    Variables,
    /// Generators `⌊b_l, b_k⌋ = b_l δb_k`, bilinear with the Leibniz relation.
    Symbols,
}

/// `Ω_W` as an abelian group with its `W`-action and the differential `δ`.
#[derive(Clone, Debug)]
pub struct KahlerModule {
    ring: PresentedRing,
    kind: KahlerKind,
    group: FpAbGroup,
    /// `(a, b)` with generator `g = a δb`.
    gen_symbols: Vec<(Vec<Int>, Vec<Int>)>,
    action: Vec<IntMatrix>,
    delta: IntMatrix,
}

impl KahlerModule {
    /// Uses the variable presentation when the ring has one.
    pub fn new(ring: &PresentedRing) -> Self {
        if ring.presentation().is_some() {
            Self::from_variables(ring)
        } else {
            Self::from_symbols(ring)
        }
    }

    pub fn from_variables(ring: &PresentedRing) -> Self {
        let pres = ring.presentation().expect("ring has a presentation");
        let (n, k) = (ring.dim(), pres.variables.len());
        let gen = |l: usize, i: usize| i * n + l;
        let ngens = n * k;
        let mut rels: Vec<SparseRow> = Vec::new();
        for i in 0..k {
            for (l, o) in ring.orders().iter().enumerate() {
                if !o.is_zero() {
                    rels.push(vec![(gen(l, i), o.clone())]);
                }
            }
        }
        // b_l · df for every relator f
        for f in &pres.relators {
            let partials: Vec<Vec<Int>> = (0..k).map(|i| ring.eval_poly(&f.derivative(i), &pres.var_elems)).collect();
            for l in 0..n {
                let bl = ring.basis_elem(l);
                let mut row = Vec::new();
                for (i, d) in partials.iter().enumerate() {
                    for (r, c) in ring.mul(&bl, d).into_iter().enumerate() {
                        if !c.is_zero() {
                            row.push((gen(r, i), c));
                        }
                    }
                }
                if !row.is_empty() {
                    rels.push(row);
                }
            }
        }
        let group = FpAbGroup::new(ngens, rels);
        let action = (0..n)
            .map(|m| {
                let mut a = IntMatrix::zeros(ngens, ngens);
                for l in 0..n {
                    let prod = &ring.table()[m][l];
                    for i in 0..k {
                        for (r, c) in prod.iter().enumerate() {
                            a[(gen(r, i), gen(l, i))] = c.clone();
                        }
                    }
                }
                a
            })
            .collect();
        let mut delta = IntMatrix::zeros(ngens, n);
        for (l, mono) in pres.monomials.iter().enumerate() {
            for i in 0..k {
                if mono[i] == 0 {
                    continue;
                }
                let mut rest = mono.clone();
                rest[i] -= 1;
                let mut v = ring.from_int(&Int::from(mono[i]));
                for (j, &e) in rest.iter().enumerate() {
                    v = ring.mul(&v, &ring.pow(&pres.var_elems[j], e));
                }
                for (r, c) in v.into_iter().enumerate() {
                    delta[(gen(r, i), l)] += c;
                }
            }
        }
        let mut gen_symbols = vec![(Vec::new(), Vec::new()); ngens];
        for i in 0..k {
            for l in 0..n {
                gen_symbols[gen(l, i)] = (ring.basis_elem(l), pres.var_elems[i].clone());
            }
        }
        KahlerModule { ring: ring.clone(), kind: KahlerKind::Variables, group, gen_symbols, action, delta }
    }

    pub fn from_symbols(ring: &PresentedRing) -> Self {
        let n = ring.dim();
        let gen = |l: usize, k: usize| l * n + k;
        let ngens = n * n;
        let mut rels: Vec<SparseRow> = Vec::new();
        for l in 0..n {
            for k in 0..n {
                for o in [&ring.orders()[l], &ring.orders()[k]] {
                    if !o.is_zero() {
                        rels.push(vec![(gen(l, k), o.clone())]);
                    }
                }
            }
        }
        // ⌊a, bc⌋ - ⌊ab, c⌋ - ⌊ac, b⌋ on basis triples (symmetric in b, c)
        let table = ring.table();
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    let mut row = Vec::new();
                    for (r, x) in table[b][c].iter().enumerate() {
                        row.push((gen(a, r), x.clone()));
                    }
                    for (r, x) in table[a][b].iter().enumerate() {
                        row.push((gen(r, c), -x));
                    }
                    for (r, x) in table[a][c].iter().enumerate() {
                        row.push((gen(r, b), -x));
                    }
                    let row = crate::tietze::normalize(row);
                    if !row.is_empty() {
                        rels.push(row);
                    }
                }
            }
        }
        let group = FpAbGroup::new(ngens, rels);
        let action = (0..n)
            .map(|m| {
                let mut a = IntMatrix::zeros(ngens, ngens);
                for l in 0..n {
                    for k in 0..n {
                        for (r, c) in table[m][l].iter().enumerate() {
                            a[(gen(r, k), gen(l, k))] = c.clone();
                        }
                    }
                }
                a
            })
            .collect();
        let one = ring.one();
        let mut delta = IntMatrix::zeros(ngens, n);
        for k in 0..n {
            for (r, c) in one.iter().enumerate() {
                delta[(gen(r, k), k)] = c.clone();
            }
        }
        let mut gen_symbols = Vec::with_capacity(ngens);
        for l in 0..n {
            for k in 0..n {
                gen_symbols.push((ring.basis_elem(l), ring.basis_elem(k)));
            }
        }
        KahlerModule { ring: ring.clone(), kind: KahlerKind::Symbols, group, gen_symbols, action, delta }
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn kind(&self) -> KahlerKind {
        self.kind
    }

    pub fn group(&self) -> &FpAbGroup {
        &self.group
    }

    pub fn ngens(&self) -> usize {
        self.group.ngens()
    }

    /// Each generator written as `a δb`.
    pub fn gen_symbols(&self) -> &[(Vec<Int>, Vec<Int>)] {
        &self.gen_symbols
    }

    /// Matrix of `δ: W → Ω_W`.
    pub fn delta_matrix(&self) -> &IntMatrix {
        &self.delta
    }

    pub fn delta(&self, x: &[Int]) -> Vec<Int> {
        self.delta.mul_vec(x)
    }

    /// Matrix of multiplication by `w` on `Ω_W`.
    pub fn act(&self, w: &[Int]) -> IntMatrix {
        let g = self.ngens();
        let mut out = IntMatrix::zeros(g, g);
        for (k, c) in w.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[k].scale(c));
            }
        }
        out
    }

    /// `a δb`
    pub fn symbol(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.act(a).mul_vec(&self.delta(b))
    }

    /// `δ` as a homomorphism of additive groups.
    pub fn delta_hom(&self) -> AbHom {
        AbHom::new(self.ring.additive_group(), &self.group, self.delta.clone()).expect("δ respects additive orders")
    }

    /// Multiplication by `w` as a group endomorphism.
    pub fn action_hom(&self, w: &[Int]) -> AbHom {
        AbHom::new(&self.group, &self.group, self.act(w)).expect("W acts on Ω_W")
    }

    /// `δ(b_i b_j) = b_i δb_j + b_j δb_i` on all basis pairs.
    pub fn check_leibniz(&self) -> Result<()> {
        let r = &self.ring;
        for i in 0..r.dim() {
            for j in i..r.dim() {
                let (bi, bj) = (r.basis_elem(i), r.basis_elem(j));
                let lhs = self.delta(&r.mul(&bi, &bj));
                let rhs: Vec<Int> =
                    self.symbol(&bi, &bj).iter().zip(self.symbol(&bj, &bi)).map(|(x, y)| x + y).collect();
                if !self.group.eq_elems(&lhs, &rhs) {
                    return Err(crate::error::Error::ValidationFailed(format!(
                        "Leibniz fails on ({}, {}) in Ω of {}",
                        r.labels()[i],
                        r.labels()[j],
                        r.name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// The map `Ω_A → Ω_B` induced by a ring map, `a δb ↦ f(a) δf(b)`.
    pub fn induced(&self, f: &RingHom, target: &KahlerModule) -> Result<AbHom> {
        let cols: Vec<Vec<Int>> =
            self.gen_symbols.iter().map(|(a, b)| target.symbol(&f.apply(a), &f.apply(b))).collect();
        AbHom::new(&self.group, &target.group, IntMatrix::from_columns(target.ngens(), &cols))
    }
}

/// The comparison `⌊b_l, b_k⌋ ↦ b_l δb_k` from the symbol presentation to the
/// variable presentation; fails unless it is a well-defined isomorphism.
pub fn cross_check(ring: &PresentedRing) -> Result<AbHom> {
    let sym = KahlerModule::from_symbols(ring);
    let var = KahlerModule::from_variables(ring);
    let h = sym.induced(&RingHom::identity(ring), &var)?;
    h.require_iso(&format!("symbol vs variable presentation of Ω({})", ring.name()))?;
    Ok(h)
}

/// `J ⊗_W Ω` as a quotient of `J ⊗_Z Ω`.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    pub group: FpAbGroup,
    pub left_gens: usize,
    pub right_gens: usize,
}

impl BalancedTensor {
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.right_gens + b
    }

    /// Coordinates of `j ⊗ ω`.
    pub fn pure(&self, j: &[Int], w: &[Int]) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.group.ngens()];
        for (a, x) in j.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in w.iter().enumerate() {
                if !y.is_zero() {
                    v[self.index(a, b)] += x * y;
                }
            }
        }
        v
    }
}

pub fn module_tensor_over_w(j: &IdealData, omega: &KahlerModule) -> BalancedTensor {
    let ring = j.ring();
    assert!(ring.same_as(omega.ring()), "ideal and differentials over different rings");
    let t = tensor_z(j.group(), omega.group());
    let (nj, nw) = (j.group().ngens(), omega.ngens());
    let ring_gens: Vec<Vec<Int>> = match ring.presentation() {
        Some(p) => p.var_elems.clone(),
        None => (0..ring.dim()).map(|k| ring.basis_elem(k)).collect(),
    };
    let mut extra: Vec<SparseRow> = Vec::new();
    for w in &ring_gens {
        let ja = j.action(w);
        let wa = omega.act(w);
        for a in 0..nj {
            for b in 0..nw {
                let mut row = Vec::new();
                for c in 0..nj {
                    if !ja[(c, a)].is_zero() {
                        row.push((t.index(c, b), ja[(c, a)].clone()));
                    }
                }
                for d in 0..nw {
                    if !wa[(d, b)].is_zero() {
                        row.push((t.index(a, d), -wa[(d, b)].clone()));
                    }
                }
                let row = crate::tietze::normalize(row);
                if !row.is_empty() {
                    extra.push(row);
                }
            }
        }
    }
    BalancedTensor { group: t.group.quotient(extra), left_gens: nj, right_gens: nw }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;
    use crate::zrings::params::{make_group_ring_b, Params};

    #[test]
    fn omega_examples() {
        assert!(KahlerModule::new(&PresentedRing::integers()).group().is_trivial());
        let om = KahlerModule::new(&PresentedRing::truncated_poly(2));
        assert_eq!(om.group().invariant_factors(), InvariantFactors::new(&[2], 1));
        // s is a unit, so Ω = A/pA
        let om = KahlerModule::new(&PresentedRing::cyclic_group_ring(3));
        assert_eq!(om.group().invariant_factors(), InvariantFactors::new(&[3, 3, 3], 0));
        om.check_leibniz().unwrap();
    }

    #[test]
    fn presentations_agree() {
        for r in [
            PresentedRing::truncated_poly(3),
            PresentedRing::cyclic_group_ring(2),
            PresentedRing::truncated_poly_mod(2, 2),
            make_group_ring_b(&Params::new(3, 1, 1).unwrap()).unwrap().ring,
        ] {
            cross_check(&r).unwrap();
            KahlerModule::from_symbols(&r).check_leibniz().unwrap();
        }
    }

    #[test]
    fn balanced_tensor_degenerate_cases() {
        let r = PresentedRing::truncated_poly(2);
        let om = KahlerModule::new(&r);
        assert!(module_tensor_over_w(&IdealData::zero(&r), &om).group.is_trivial());
        let z = PresentedRing::integers();
        let unit = IdealData::generated_by(&z, &[z.one()]);
        assert!(module_tensor_over_w(&unit, &KahlerModule::new(&z)).group.is_trivial());
    }

    #[test]
    fn augmentation_ideal_tensor_is_finite() {
        let b = make_group_ring_b(&Params::new(3, 1, 1).unwrap()).unwrap();
        let om = KahlerModule::new(&b.ring);
        let t = module_tensor_over_w(&b.ideal, &om);
        assert!(t.group.order().is_some());
    }
}
