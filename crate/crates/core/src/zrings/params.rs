use num_integer::binomial;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Int;
use crate::zrings::ideal::IdealData;
use crate::zrings::ring::{PresentedRing, RingHom};

/// The prime `p`, exponent `e` (so `q = p^e`) and level `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: u32,
    pub e: u32,
    pub m: u32,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Params {
    /// Requires `p` prime, `e ≥ 1`, `m ≥ e` and `q > 2`.
    pub fn new(p: u32, e: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("p={p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidParams("e>=1 required".into()));
        }
        if m < e {
            return Err(Error::InvalidParams(format!("m>=e required (m={m}, e={e})")));
        }
        let q = (p as u64).checked_pow(e).ok_or_else(|| Error::InvalidParams("q overflows".into()))?;
        if q <= 2 {
            return Err(Error::InvalidParams(format!("q>2 required (p={p}, e={e} gives q={q})")));
        }
        Ok(Params { p, e, m })
    }

    pub fn q(&self) -> usize {
        (self.p as usize).pow(self.e)
    }

    pub fn p_int(&self) -> Int {
        Int::from(self.p)
    }

    /// `p^k`
    pub fn ppow(&self, k: u32) -> Int {
        Pow::pow(Int::from(self.p), k)
    }

    /// `p^e`
    pub fn pe(&self) -> Int {
        self.ppow(self.e)
    }

    /// `m + e - i` for the `i` with `p^i ≤ n < p^(i+1)`.
    pub fn epsilon(&self, n: usize) -> Result<u32> {
        if n == 0 || n >= self.q() {
            return Err(Error::OutOfRange(format!("epsilon needs 1 <= n <= {}, got {n}", self.q() - 1)));
        }
        let mut i = 0;
        let mut bound = self.p as usize;
        while bound <= n {
            i += 1;
            bound *= self.p as usize;
        }
        Ok(self.m + self.e - i)
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(p={}, e={}, m={})", self.p, self.e, self.m)
    }
}

/// A ring with a distinguished element `z` generating the ideal of interest.
#[derive(Clone, Debug)]
pub struct AugmentedRing {
    pub params: Params,
    pub ring: PresentedRing,
    pub z: Vec<Int>,
    pub ideal: IdealData,
}

fn group_ring_relator(q: usize) -> Vec<Int> {
    // (1+z)^q - 1
    let mut f: Vec<Int> = (0..=q).map(|k| binomial(Int::from(q), Int::from(k))).collect();
    f[0] = Int::zero();
    f
}

fn z_power_relators(params: &Params) -> Result<Vec<Vec<Int>>> {
    (1..params.q())
        .map(|i| {
            let mut g = vec![Int::zero(); i + 1];
            g[i] = params.ppow(params.epsilon(i)?);
            Ok(g)
        })
        .collect()
}

/// `B = Z[z]/((1+z)^q - 1, p^ε(i) z^i)`, validated against the additive orders
/// `ord(z^i) = p^ε(i)` and a free part of rank one.
pub fn make_group_ring_b(params: &Params) -> Result<AugmentedRing> {
    let q = params.q();
    let name = format!("B{params}");
    let ring = PresentedRing::univariate(&name, "z", &group_ring_relator(q), &z_power_relators(params)?)?;
    let z = ring.presentation().expect("univariate").var_elems[0].clone();
    if ring.dim() != q {
        return Err(Error::ValidationFailed(format!("{name}: expected rank {q} basis, got {}", ring.dim())));
    }
    let add = ring.additive_group();
    for i in 1..q {
        let zi = ring.pow(&z, i as u32);
        let expect = params.ppow(params.epsilon(i)?);
        let got = add.element_order(&zi).unwrap_or_else(Int::zero);
        if got != expect {
            return Err(Error::ValidationFailed(format!("{name}: z^{i} has order {got}, expected {expect}")));
        }
    }
    if add.invariant_factors().free != 1 || add.element_order(&ring.one()).is_some() {
        return Err(Error::ValidationFailed(format!("{name}: free part is not Z·1")));
    }
    let ideal = IdealData::generated_by(&ring, std::slice::from_ref(&z));
    Ok(AugmentedRing { params: *params, ring, z, ideal })
}

/// `B/I²` with the projection from `B`; validated by `ord(z) = p^e` and `z² = 0`.
pub fn quotient_by_ideal_square(b: &AugmentedRing) -> Result<(AugmentedRing, RingHom)> {
    let params = b.params;
    let q = params.q();
    let mut extra = z_power_relators(&params)?;
    extra.push(vec![Int::zero(), Int::zero(), Int::one()]);
    let name = format!("B{params}/I^2");
    let ring = PresentedRing::univariate(&name, "z", &group_ring_relator(q), &extra)?;
    let z = ring.presentation().expect("univariate").var_elems[0].clone();
    let order = ring.additive_group().element_order(&z).unwrap_or_else(Int::zero);
    if order != params.pe() {
        return Err(Error::ValidationFailed(format!("{name}: z has order {order}, expected {}", params.pe())));
    }
    if !ring.is_zero(&ring.mul(&z, &z)) {
        return Err(Error::ValidationFailed(format!("{name}: z^2 != 0")));
    }
    let proj = RingHom::from_var_images(&b.ring, &ring, std::slice::from_ref(&z))?;
    let ideal = IdealData::generated_by(&ring, std::slice::from_ref(&z));
    Ok((AugmentedRing { params, ring, z, ideal }, proj))
}

/// The augmentation `B → Z`, `z ↦ 0`.
pub fn augmentation(b: &AugmentedRing) -> Result<RingHom> {
    let zring = PresentedRing::integers();
    RingHom::from_var_images(&b.ring, &zring, &[zring.zero()])
}

impl AugmentedRing {
    /// `z^k`
    pub fn zpow(&self, k: usize) -> Vec<Int> {
        if k == 0 {
            return self.ring.one();
        }
        self.ring.pow(&self.z, k as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;
    use crate::matrix::int;

    #[test]
    fn epsilon_values() {
        let a = Params::new(2, 2, 2).unwrap();
        assert_eq!((1..4).map(|n| a.epsilon(n).unwrap()).collect::<Vec<_>>(), vec![4, 3, 3]);
        let b = Params::new(3, 1, 1).unwrap();
        assert_eq!((1..3).map(|n| b.epsilon(n).unwrap()).collect::<Vec<_>>(), vec![2, 2]);
        assert!(b.epsilon(3).is_err());
        assert!(b.epsilon(0).is_err());
    }

    #[test]
    fn invalid_params() {
        assert!(matches!(Params::new(2, 1, 1), Err(Error::InvalidParams(s)) if s.contains("q>2 required")));
        assert!(Params::new(3, 2, 1).is_err());
        assert!(Params::new(4, 1, 1).is_err());
    }

    #[test]
    fn group_ring_b_structure() {
        let b = make_group_ring_b(&Params::new(3, 1, 1).unwrap()).unwrap();
        assert_eq!(b.ring.additive_group().invariant_factors(), InvariantFactors::new(&[9, 9], 1));
        let b = make_group_ring_b(&Params::new(2, 2, 2).unwrap()).unwrap();
        assert_eq!(b.ring.orders(), &[int(0), int(16), int(8), int(8)]);
        let aug = augmentation(&b).unwrap();
        assert!(aug.apply(&b.z).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn b_mod_i_squared() {
        let b = make_group_ring_b(&Params::new(3, 1, 1).unwrap()).unwrap();
        let (b2, proj) = quotient_by_ideal_square(&b).unwrap();
        assert_eq!(b2.ring.orders(), &[int(0), int(3)]);
        assert_eq!(proj.apply(&b.z), b2.z);
        let b = make_group_ring_b(&Params::new(2, 2, 2).unwrap()).unwrap();
        assert_eq!(quotient_by_ideal_square(&b).unwrap().0.ring.orders(), &[int(0), int(4)]);
    }
}
