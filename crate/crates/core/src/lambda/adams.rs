use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fpab::AbHom;
use crate::matrix::{Int, IntMatrix};
use crate::sring::ArrowObject;
use crate::zrings::{KahlerModule, PresentedRing, RingHom};

/// `ψ^p`, `θ^p`, `δ` and `φ^p` on a torsion-free ring whose presentation
/// variables are line elements (`ψ^k(x) = x^k`).
#[derive(Clone, Debug)]
pub struct AdamsData {
    ring: PresentedRing,
    p: u32,
    psi: RingHom,
    omega: KahlerModule,
    phi: AbHom,
}

impl AdamsData {
    pub fn new(ring: &PresentedRing, p: u32) -> Result<Self> {
        if !ring.is_torsion_free() {
            return Err(Error::InvalidParams(format!("{ring} has additive torsion")));
        }
        let psi = psi_power(ring, p)?;
        let omega = KahlerModule::from_variables(ring);
        let mut data = AdamsData { ring: ring.clone(), p, psi, phi: AbHom::identity(omega.group()), omega };
        let cols = data
            .omega
            .gen_symbols()
            .iter()
            .map(|(a, b)| data.phi_symbol(a, b))
            .collect::<Result<Vec<_>>>()?;
        data.phi = AbHom::new(data.omega.group(), data.omega.group(), IntMatrix::from_columns(data.omega.ngens(), &cols))?;
        data.verify()?;
        Ok(data)
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn psi(&self) -> &RingHom {
        &self.psi
    }

    pub fn omega(&self) -> &KahlerModule {
        &self.omega
    }

    pub fn phi(&self) -> &AbHom {
        &self.phi
    }

    /// `ψ^k`, sending each variable `x` to `x^k`.
    pub fn psi_k(&self, k: u32) -> Result<RingHom> {
        psi_power(&self.ring, k)
    }

    /// `θ(a) = (a^p − ψ(a)) / p`.
    pub fn theta(&self, a: &[Int]) -> Result<Vec<Int>> {
        let diff = self.ring.sub(&self.ring.pow(a, self.p), &self.psi.apply(a));
        exact_div_vec(&diff, &Int::from(self.p))
            .ok_or_else(|| Error::ExactDivisionFailed(format!("θ of {} in {}", self.ring.format_elem(a), self.ring)))
    }

    /// `φ(a δb) = ψ(a)(b^{p−1} δb − δθ(b))`.
    pub fn phi_symbol(&self, a: &[Int], b: &[Int]) -> Result<Vec<Int>> {
        let r = &self.ring;
        let om = &self.omega;
        let first = om.symbol(&r.pow(b, self.p - 1), b);
        let second = om.delta(&self.theta(b)?);
        let inner: Vec<Int> = first.iter().zip(&second).map(|(x, y)| x - y).collect();
        Ok(om.act(&self.psi.apply(a)).mul_vec(&inner))
    }

    /// `δψ(a) = p φ(δa)` on every basis element.
    pub fn verify(&self) -> Result<()> {
        let r = &self.ring;
        let p = Int::from(self.p);
        for i in 0..r.dim() {
            let a = r.basis_elem(i);
            self.theta(&a)?;
            let lhs = self.omega.delta(&self.psi.apply(&a));
            let rhs: Vec<Int> = self.phi.apply(&self.omega.delta(&a)).iter().map(|c| c * &p).collect();
            if !self.omega.group().eq_elems(&lhs, &rhs) {
                return Err(Error::ValidationFailed(format!("δψ ≠ pφδ on {} in {}", r.labels()[i], r)));
            }
        }
        Ok(())
    }

    /// `Δ(A)`: `ψ` on `A`, `φ` on `Ω_A`, crossed map `δ`.
    pub fn arrow_object(&self) -> Result<ArrowObject> {
        ArrowObject::new(
            format!("Δ({})", self.ring.name()),
            self.p,
            self.psi.additive(),
            self.phi.clone(),
            self.omega.delta_hom(),
        )
    }

    /// `λ_0(x), …, λ_n(x)` from `k λ_k = Σ_{i=1..k} (−1)^{i−1} λ_{k−i} ψ^i(x)`.
    pub fn lambdas(&self, x: &[Int], n: usize) -> Result<Vec<Vec<Int>>> {
        let r = &self.ring;
        let powers: Vec<Vec<Int>> =
            (1..=n as u32).map(|k| self.psi_k(k).map(|h| h.apply(x))).collect::<Result<_>>()?;
        let mut lam = vec![r.one()];
        for k in 1..=n {
            let mut acc = r.zero();
            for i in 1..=k {
                let term = r.mul(&lam[k - i], &powers[i - 1]);
                acc = if i % 2 == 1 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
            }
            let next = exact_div_vec(&acc, &Int::from(k))
                .ok_or_else(|| Error::ExactDivisionFailed(format!("λ_{k} of {} in {}", r.format_elem(x), r)))?;
            lam.push(next);
        }
        Ok(lam)
    }
}

fn psi_power(ring: &PresentedRing, k: u32) -> Result<RingHom> {
    let pres = ring
        .presentation()
        .ok_or_else(|| Error::InvalidParams(format!("{ring} has no presentation")))?;
    let images: Vec<Vec<Int>> = pres.var_elems.iter().map(|x| ring.pow(x, k)).collect();
    RingHom::from_var_images(ring, ring, &images)
}

fn exact_div_vec(v: &[Int], d: &Int) -> Option<Vec<Int>> {
    v.iter()
        .map(|c| {
            let (q, r) = c.div_rem(d);
            r.is_zero().then_some(q)
        })
        .collect()
}

/// Catalog entries with Adams data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AdamsRing {
    Integers,
    TruncatedPoly { n: usize },
    CyclicGroupRing { r: usize },
}

impl AdamsRing {
    pub fn ring(&self) -> PresentedRing {
        match *self {
            AdamsRing::Integers => PresentedRing::integers(),
            AdamsRing::TruncatedPoly { n } => PresentedRing::truncated_poly(n),
            AdamsRing::CyclicGroupRing { r } => PresentedRing::cyclic_group_ring(r),
        }
    }

    pub fn label(&self) -> String {
        self.ring().name().to_string()
    }
}

pub fn adams_catalog(entry: AdamsRing, p: u32) -> Result<AdamsData> {
    AdamsData::new(&entry.ring(), p)
}

/// Whether `Ω_A` has no `p`-torsion (`A` itself is torsion-free here).
pub fn is_p_torsion_free(data: &AdamsData) -> bool {
    let g = data.omega().group();
    crate::fpab::torsion_part(g, &Int::from(data.p())).0.is_trivial()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;
    use crate::matrix::int;

    #[test]
    fn integers() {
        let d = adams_catalog(AdamsRing::Integers, 3).unwrap();
        assert_eq!(d.theta(&[int(2)]).unwrap(), vec![int(2)]);
        assert!(d.omega().group().is_trivial());
        let x = d.arrow_object().unwrap();
        assert_eq!(x.m().invariant_factors(), InvariantFactors::new(&[], 1));
        assert!(x.t_m().equals(&AbHom::identity(x.m())));
    }

    #[test]
    fn truncated_poly_phi() {
        let d = adams_catalog(AdamsRing::TruncatedPoly { n: 4 }, 2).unwrap();
        let r = d.ring();
        let x = r.basis_elem(1);
        assert_eq!(d.psi().apply(&x), r.basis_elem(2));
        assert!(r.is_zero(&d.theta(&x).unwrap()));
        let om = d.omega();
        let dx = om.delta(&x);
        assert!(om.group().eq_elems(&d.phi().apply(&dx), &om.symbol(&x, &x)));
        // δψ(x) = 2x dx = 2 φ(δx)
        let lhs = om.delta(&d.psi().apply(&x));
        let rhs: Vec<Int> = om.symbol(&x, &x).iter().map(|c| c * 2).collect();
        assert!(om.group().eq_elems(&lhs, &rhs));
    }

    #[test]
    fn cyclic_group_ring_phi() {
        let d = adams_catalog(AdamsRing::CyclicGroupRing { r: 3 }, 3).unwrap();
        let r = d.ring();
        let s = r.basis_elem(1);
        assert_eq!(d.psi().apply(&s), r.one());
        assert!(r.is_zero(&d.theta(&s).unwrap()));
        let om = d.omega();
        let s2 = r.pow(&s, 2);
        assert!(om.group().eq_elems(&d.phi().apply(&om.delta(&s)), &om.symbol(&s2, &s)));
        assert!(!is_p_torsion_free(&d));
    }

    #[test]
    fn dual_numbers_arrow_object() {
        let d = adams_catalog(AdamsRing::TruncatedPoly { n: 2 }, 2).unwrap();
        let x = d.arrow_object().unwrap();
        assert_eq!(x.n().invariant_factors(), InvariantFactors::new(&[2], 1));
        // D(a + b x) = b dx
        let r = d.ring();
        let om = d.omega();
        let img = x.d().apply(&r.add(&r.from_int(&int(5)), &r.scale(&r.basis_elem(1), &int(3))));
        assert!(om.group().eq_elems(&img, &om.delta(&r.scale(&r.basis_elem(1), &int(3)))));
        // t_N(dx) = x dx
        let dx = om.delta(&r.basis_elem(1));
        assert!(om.group().eq_elems(&x.t_n().apply(&dx), &om.symbol(&r.basis_elem(1), &r.basis_elem(1))));
    }

    #[test]
    fn lambda_operations() {
        let z = adams_catalog(AdamsRing::Integers, 2).unwrap();
        let l = z.lambdas(&[int(1)], 3).unwrap();
        assert_eq!(l, vec![vec![int(1)], vec![int(1)], vec![int(0)], vec![int(0)]]);
        assert_eq!(z.lambdas(&[int(5)], 2).unwrap()[2], vec![int(10)]);
        let d = adams_catalog(AdamsRing::TruncatedPoly { n: 4 }, 2).unwrap();
        let x = d.ring().basis_elem(1);
        assert!(d.ring().is_zero(&d.lambdas(&x, 2).unwrap()[2]));
    }
}
