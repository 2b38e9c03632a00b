use num_traits::{One, Pow, Zero};

use crate::matrix::Int;

/// A polynomial in `t`, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TPoly(Vec<Int>);

impl TPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero() -> Self {
        TPoly(Vec::new())
    }

    pub fn one() -> Self {
        TPoly(vec![Int::one()])
    }

    /// `t`
    pub fn t() -> Self {
        TPoly(vec![Int::zero(), Int::one()])
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Int {
        self.0.get(k).cloned().unwrap_or_else(Int::zero)
    }

    pub fn add(&self, o: &TPoly) -> TPoly {
        let n = self.0.len().max(o.0.len());
        TPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn neg(&self) -> TPoly {
        TPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &TPoly) -> TPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Int) -> TPoly {
        TPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &TPoly) -> TPoly {
        if self.is_zero() || o.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![Int::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }

    /// `σ(f)(t) = f(p t)`
    pub fn sigma(&self, p: u32) -> TPoly {
        TPoly::new(self.0.iter().enumerate().map(|(k, c)| c * Pow::pow(Int::from(p), k as u32)).collect())
    }

    /// Drops all terms of degree `≥ d`.
    pub fn truncate(&self, d: usize) -> TPoly {
        TPoly::new(self.0.iter().take(d).cloned().collect())
    }
}

/// `a + b u + c v` in `S(Z[t], σ)` with `σ(t) = p t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SElement {
    pub a: TPoly,
    pub b: TPoly,
    pub c: TPoly,
}

impl SElement {
    pub fn new(a: TPoly, b: TPoly, c: TPoly) -> Self {
        SElement { a, b, c }
    }

    pub fn zero() -> Self {
        Self::new(TPoly::zero(), TPoly::zero(), TPoly::zero())
    }

    pub fn one() -> Self {
        Self::scalar(TPoly::one())
    }

    pub fn scalar(r: TPoly) -> Self {
        Self::new(r, TPoly::zero(), TPoly::zero())
    }

    pub fn u() -> Self {
        Self::new(TPoly::zero(), TPoly::one(), TPoly::zero())
    }

    pub fn v() -> Self {
        Self::new(TPoly::zero(), TPoly::zero(), TPoly::one())
    }

    pub fn t() -> Self {
        Self::scalar(TPoly::t())
    }

    pub fn add(&self, o: &SElement) -> SElement {
        SElement::new(self.a.add(&o.a), self.b.add(&o.b), self.c.add(&o.c))
    }

    pub fn sub(&self, o: &SElement) -> SElement {
        SElement::new(self.a.sub(&o.a), self.b.sub(&o.b), self.c.sub(&o.c))
    }

    pub fn truncate(&self, d: usize) -> SElement {
        SElement::new(self.a.truncate(d), self.b.truncate(d), self.c.truncate(d))
    }
}

/// Product in normal form:
/// `(a₁a₂, a₁b₂ + b₁a₂ + b₁b₂, a₁c₂ + c₁σ(a₂) + c₁σ(b₂))`.
pub fn s_mul(x: &SElement, y: &SElement, p: u32) -> SElement {
    let a = x.a.mul(&y.a);
    let b = x.a.mul(&y.b).add(&x.b.mul(&y.a)).add(&x.b.mul(&y.b));
    let c = x.a.mul(&y.c).add(&x.c.mul(&y.a.sigma(p))).add(&x.c.mul(&y.b.sigma(p)));
    SElement::new(a, b, c)
}

/// The six defining relations `uv = 0, v² = 0, vu = v, u² = u, ur = ru, vr = σ(r)v`
/// for a given `r`; returns the names of those that fail.
pub fn defining_relations(r: &TPoly, p: u32) -> Vec<&'static str> {
    let (u, v, rs) = (SElement::u(), SElement::v(), SElement::scalar(r.clone()));
    let mut bad = Vec::new();
    if s_mul(&u, &v, p) != SElement::zero() {
        bad.push("uv=0");
    }
    if s_mul(&v, &v, p) != SElement::zero() {
        bad.push("v^2=0");
    }
    if s_mul(&v, &u, p) != v {
        bad.push("vu=v");
    }
    if s_mul(&u, &u, p) != u {
        bad.push("u^2=u");
    }
    if s_mul(&u, &rs, p) != s_mul(&rs, &u, p) {
        bad.push("ur=ru");
    }
    if s_mul(&v, &rs, p) != s_mul(&SElement::scalar(r.sigma(p)), &v, p) {
        bad.push("vr=σ(r)v");
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_products() {
        let p = 3;
        assert_eq!(s_mul(&SElement::u(), &SElement::v(), p), SElement::zero());
        assert_eq!(s_mul(&SElement::v(), &SElement::u(), p), SElement::v());
        let vt = s_mul(&SElement::v(), &SElement::t(), p);
        assert_eq!(vt, SElement::new(TPoly::zero(), TPoly::zero(), TPoly::from_i64(&[0, 3])));
        assert!(defining_relations(&TPoly::from_i64(&[1, -2, 5]), p).is_empty());
    }

    #[test]
    fn sigma_scales_coefficients() {
        assert_eq!(TPoly::from_i64(&[1, 1, 1]).sigma(2), TPoly::from_i64(&[1, 2, 4]));
    }
}
