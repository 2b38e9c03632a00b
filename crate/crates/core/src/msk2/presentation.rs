use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpab::FpAbGroup;
use crate::matrix::Int;
use crate::tietze::{normalize, SparseRow};
use crate::zrings::{IdealData, PresentedRing, RingProduct};

pub const DEFAULT_MAX_SIZE: u64 = 64;

/// Range of the additivity family `⟨a,b⟩ + ⟨a,c⟩ − ⟨a, b+c−abc⟩`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    /// Every triple whose three symbols are defined.
    #[default]
    Maximal,
    /// Only `b, c ∈ J`.
    Restricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MsOptions {
    pub max_size: u64,
    pub reading: Reading,
}

impl Default for MsOptions {
    fn default() -> Self {
        MsOptions { max_size: DEFAULT_MAX_SIZE, reading: Reading::Maximal }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MsFamily {
    /// `⟨a,b⟩ + ⟨b,a⟩`
    Symmetry,
    /// `⟨a,b⟩ + ⟨a,c⟩ − ⟨a, b+c−abc⟩`
    Additivity,
    /// `⟨a,bc⟩ − ⟨ab,c⟩ − ⟨ac,b⟩`
    Leibniz,
}

impl MsFamily {
    pub const ALL: [MsFamily; 3] = [MsFamily::Symmetry, MsFamily::Additivity, MsFamily::Leibniz];
}

/// Index tables for a finite ring and an ideal in it.
#[derive(Clone, Debug)]
pub(crate) struct ElementTables {
    pub elements: Vec<Vec<Int>>,
    pub in_ideal: Vec<bool>,
    radix: Vec<u64>,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
    pub neg: Vec<usize>,
}

impl ElementTables {
    pub fn new(w: &PresentedRing, j: &IdealData, bound: u64) -> Result<Self> {
        let elements = w.elements(bound)?;
        let radix: Vec<u64> = w.orders().iter().map(|o| o.to_u64().expect("finite order")).collect();
        let n = elements.len();
        let mut t = ElementTables { in_ideal: Vec::new(), elements, radix, add: vec![0; n * n], mul: vec![0; n * n], neg: vec![0; n] };
        t.in_ideal = t.elements.iter().map(|x| j.contains(x)).collect();
        for a in 0..n {
            t.neg[a] = t.index(&w.neg(&t.elements[a]));
            for b in 0..n {
                t.add[a * n + b] = t.index(&w.add(&t.elements[a], &t.elements[b]));
                t.mul[a * n + b] = t.index(&w.mul(&t.elements[a], &t.elements[b]));
            }
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Mixed-radix position of a coordinate vector, after reduction.
    pub fn index(&self, v: &[Int]) -> usize {
        let mut k = 0u64;
        let mut scale = 1u64;
        for (c, &r) in v.iter().zip(&self.radix) {
            let r_int = Int::from(r);
            let d = ((c % &r_int) + &r_int) % &r_int;
            k += d.to_u64().expect("reduced") * scale;
            scale *= r;
        }
        k as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    pub fn defined(&self, a: usize, b: usize) -> bool {
        self.in_ideal[a] || self.in_ideal[b]
    }
}

/// The presentation: generators `⟨a,b⟩` indexed by element pairs, and tagged relation rows.
#[derive(Clone, Debug)]
pub struct MsPresentation {
    pub ring: PresentedRing,
    pub ideal: IdealData,
    pub options: MsOptions,
    pub elements: Vec<Vec<Int>>,
    pub generators: Vec<(usize, usize)>,
    pub relations: Vec<(MsFamily, SparseRow)>,
    pub group: FpAbGroup,
}

impl MsPresentation {
    pub fn relation_count(&self, family: MsFamily) -> usize {
        self.relations.iter().filter(|(f, _)| *f == family).count()
    }
}

/// Fails with `NotSplit` unless the span of the basis elements outside `J` is a
/// subring meeting `J` trivially and complementing it.
pub(crate) fn check_split(w: &PresentedRing, j: &IdealData, t: &ElementTables) -> Result<()> {
    let outside: Vec<usize> = (0..w.dim()).filter(|&i| !j.contains(&w.basis_elem(i))).collect();
    let in_c = |v: &[Int]| (0..w.dim()).all(|i| outside.contains(&i) || w.reduce(v)[i].is_zero());
    let c_size: Int = outside.iter().map(|&i| w.orders()[i].clone()).product();
    let j_size = t.in_ideal.iter().filter(|x| **x).count();
    if c_size * Int::from(j_size) != Int::from(t.len()) {
        return Err(Error::NotSplit(format!("|W| != |C|·|J| for the complement of J in {w}")));
    }
    if t.elements.iter().zip(&t.in_ideal).any(|(x, &inj)| inj && !w.is_zero(x) && in_c(x)) {
        return Err(Error::NotSplit(format!("complement meets J in {w}")));
    }
    if !in_c(&w.one()) {
        return Err(Error::NotSplit(format!("complement of J in {w} misses 1")));
    }
    for &a in &outside {
        for &b in &outside {
            if !in_c(&w.mul(&w.basis_elem(a), &w.basis_elem(b))) {
                return Err(Error::NotSplit(format!("complement of J in {w} is not a subring")));
            }
        }
    }
    Ok(())
}

pub fn ms_k2(w: &PresentedRing, j: &IdealData) -> Result<FpAbGroup> {
    Ok(ms_presentation(w, j, &MsOptions::default())?.group)
}

pub fn ms_presentation(w: &PresentedRing, j: &IdealData, options: &MsOptions) -> Result<MsPresentation> {
    assert!(j.ring().same_as(w), "ideal lives in another ring");
    let t = ElementTables::new(w, j, options.max_size)?;
    if !j.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    check_split(w, j, &t)?;
    let n = t.len();
    let mut generators = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if t.defined(a, b) {
                index.insert((a, b), generators.len());
                generators.push((a, b));
            }
        }
    }
    let g = |a: usize, b: usize| index[&(a, b)];
    let mut relations: Vec<(MsFamily, SparseRow)> = Vec::new();
    let mut push = |f: MsFamily, row: SparseRow| {
        let row = normalize(row);
        if !row.is_empty() {
            relations.push((f, row));
        }
    };
    let one = Int::from(1);
    let minus = Int::from(-1);
    for &(a, b) in &generators {
        push(MsFamily::Symmetry, vec![(g(a, b), one.clone()), (g(b, a), one.clone())]);
    }
    for a in 0..n {
        for b in 0..n {
            let ab = t.mul(a, b);
            for c in 0..n {
                let s = t.sub(t.add(b, c), t.mul(ab, c));
                let restricted_ok = options.reading == Reading::Maximal || (t.in_ideal[b] && t.in_ideal[c]);
                if restricted_ok && t.defined(a, b) && t.defined(a, c) && t.defined(a, s) {
                    push(MsFamily::Additivity, vec![(g(a, b), one.clone()), (g(a, c), one.clone()), (g(a, s), minus.clone())]);
                }
                let (bc, ac) = (t.mul(b, c), t.mul(a, c));
                if t.defined(a, bc) && t.defined(ab, c) && t.defined(ac, b) {
                    push(MsFamily::Leibniz, vec![(g(a, bc), one.clone()), (g(ab, c), minus.clone()), (g(ac, b), minus.clone())]);
                }
            }
        }
    }
    let group = FpAbGroup::new(generators.len(), relations.iter().map(|(_, r)| r.clone()).collect());
    Ok(MsPresentation {
        ring: w.clone(),
        ideal: j.clone(),
        options: *options,
        elements: t.elements,
        generators,
        relations,
        group,
    })
}

/// `J₁ × J₂` inside `W₁ × W₂`.
pub fn product_ideal(prod: &RingProduct, j1: &IdealData, j2: &IdealData) -> IdealData {
    let z1 = prod.first.target().zero();
    let z2 = prod.second.target().zero();
    let mut gens: Vec<Vec<Int>> = j1.span().iter().map(|x| prod.pair(x, &z2)).collect();
    gens.extend(j2.span().iter().map(|y| prod.pair(&z1, y)));
    IdealData::generated_by(&prod.ring, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;
    use crate::zrings::ring_product;

    fn dual_f2() -> (PresentedRing, IdealData) {
        let w = PresentedRing::truncated_poly_mod(2, 2);
        let e = w.basis_elem(1);
        let j = IdealData::generated_by(&w, &[e]);
        (w, j)
    }

    #[test]
    fn zero_ideal_gives_zero() {
        let (w, _) = dual_f2();
        assert!(ms_k2(&w, &IdealData::zero(&w)).unwrap().is_trivial());
    }

    #[test]
    fn dual_numbers_over_f2() {
        let (w, j) = dual_f2();
        let pres = ms_presentation(&w, &j, &MsOptions::default()).unwrap();
        assert_eq!(pres.generators.len(), 12);
        assert!(pres.group.is_trivial());
        let alt = ms_presentation(&w, &j, &MsOptions { reading: Reading::Restricted, ..MsOptions::default() }).unwrap();
        assert!(!alt.group.is_trivial());
    }

    #[test]
    fn gates() {
        let z4 = PresentedRing::integers_mod(4);
        let j = IdealData::generated_by(&z4, &[z4.from_int(&Int::from(2))]);
        assert!(matches!(ms_k2(&z4, &j), Err(Error::NotSplit(_))));
        let f2 = PresentedRing::integers_mod(2);
        let whole = IdealData::generated_by(&f2, &[f2.one()]);
        assert_eq!(ms_k2(&f2, &whole).unwrap_err(), Error::NotNilpotent);
        let big = PresentedRing::truncated_poly_mod(4, 3);
        let j = IdealData::generated_by(&big, &[big.basis_elem(1)]);
        assert!(matches!(ms_k2(&big, &j), Err(Error::TooLarge { bound: 64, .. })));
    }

    #[test]
    fn dual_numbers_over_z4() {
        let w = PresentedRing::truncated_poly_mod(2, 4);
        let j = IdealData::generated_by(&w, &[w.basis_elem(1)]);
        assert_eq!(ms_k2(&w, &j).unwrap().invariant_factors(), InvariantFactors::new(&[2], 0));
        let f2 = PresentedRing::integers_mod(2);
        let prod = ring_product(&w, &f2);
        let jj = product_ideal(&prod, &j, &IdealData::zero(&f2));
        assert_eq!(ms_k2(&prod.ring, &jj).unwrap().invariant_factors(), InvariantFactors::new(&[2], 0));
    }
}
