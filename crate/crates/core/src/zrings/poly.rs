//! Sparse multivariate polynomials over the integers.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Int;

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Int>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Int) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Int::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Int::one())
    }

    pub fn monomial(exps: Monomial, c: Int) -> Self {
        let mut p = Poly::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Univariate polynomial from coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: &[Int]) -> Self {
        let mut p = Poly::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(vec![k as u32], c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Int {
        self.terms.get(m).cloned().unwrap_or_else(Int::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Int) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Int::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &Int) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut acc: BTreeMap<Monomial, Int> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(Int::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { nvars: self.nvars, terms: acc }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut e = m.clone();
                e[i] -= 1;
                out.add_term(e, c * Int::from(m[i]));
            }
        }
        out
    }

    /// Divides every coefficient by `d`, failing unless all divisions are exact.
    pub fn exact_div(&self, d: &Int) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::ExactDivisionFailed(format!("coefficient {c} of {self} by {d}")));
            }
            terms.insert(m.clone(), q);
        }
        Ok(Poly { nvars: self.nvars, terms })
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Degree in the variables with indices in `vars`.
    pub fn degree_in(&self, vars: std::ops::Range<usize>) -> u32 {
        self.terms.keys().map(|m| m[vars.clone()].iter().sum()).max().unwrap_or(0)
    }

    /// Largest monomial in lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Int)> {
        self.terms.iter().next_back()
    }

    /// Replaces every variable `x_i` by `x_i^k`.
    pub fn frobenius(&self, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.iter().map(|e| e * k).collect(), c.clone())).collect(),
        }
    }

    /// Evaluates with caller-supplied ring operations.
    pub fn eval<T: Clone>(
        &self,
        values: &[T],
        zero: T,
        one: T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
        scale: impl Fn(&T, &Int) -> T,
    ) -> T {
        assert_eq!(values.len(), self.nvars);
        let mut powers: Vec<Vec<T>> = values.iter().map(|v| vec![one.clone(), v.clone()]).collect();
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut term = one.clone();
            for (i, &e) in m.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = mul(powers[i].last().unwrap(), &values[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = mul(&term, &powers[i][e as usize]);
                }
            }
            acc = add(&acc, &scale(&term, c));
        }
        acc
    }

    /// Embeds into a ring with more variables, variable `i` going to `offset + i`.
    pub fn shift(&self, nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            e[offset..offset + self.nvars].copy_from_slice(m);
            out.terms.insert(e, c.clone());
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn arithmetic_and_derivative() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = x.add(&y).pow(3);
        assert_eq!(f.coeff(&[2, 1]), int(3));
        assert_eq!(f.derivative(0).coeff(&[1, 1]), int(6));
        assert_eq!(f.degree(), 3);
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn exact_division_reports_failure() {
        let f = Poly::from_coeffs(&[int(2), int(4)]);
        assert_eq!(f.exact_div(&int(2)).unwrap(), Poly::from_coeffs(&[int(1), int(2)]));
        assert!(f.exact_div(&int(4)).is_err());
    }

    #[test]
    fn evaluation_with_integers() {
        let f = Poly::from_coeffs(&[int(1), int(0), int(3)]);
        let v = f.eval(&[int(2)], int(0), int(1), |a, b| a + b, |a, b| a * b, |a, k| a * k);
        assert_eq!(v, int(13));
    }
}
