use std::collections::HashMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lambda::adams::AdamsData;
use crate::matrix::Int;
use crate::zrings::{Monomial, Poly};

/// Bounded model of the universal λ-ring on `d` generators.
///
/// Each `u_j` is a sum of `width` line elements `y_{j,1}, …, y_{j,width}`, so
/// `λ_i(u_j) = e_i(y_j)` and `ψ^k` replaces every `y` by `y^k`. A polynomial of
/// degree at most `width` in each block has a unique expression in the `λ_i(u_j)`.
#[derive(Clone, Debug)]
pub struct UniversalTruncation {
    blocks: usize,
    width: usize,
    p: u32,
}

impl UniversalTruncation {
    pub fn new(blocks: usize, width: usize, p: u32) -> Self {
        UniversalTruncation { blocks, width, p }
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.blocks * self.width
    }

    fn y(&self, j: usize, i: usize) -> Poly {
        Poly::var(self.nvars(), j * self.width + i)
    }

    /// `u_j`
    pub fn u(&self, j: usize) -> Poly {
        (0..self.width).fold(Poly::zero(self.nvars()), |acc, i| acc.add(&self.y(j, i)))
    }

    /// `λ_i(u_j) = e_i(y_{j,·})`, with `λ_0 = 1`.
    pub fn lambda(&self, j: usize, i: usize) -> Poly {
        let mut e = vec![Poly::one(self.nvars())];
        for k in 0..self.width {
            let y = self.y(j, k);
            let mut next = e.clone();
            next.push(Poly::zero(self.nvars()));
            for l in 1..next.len() {
                next[l] = e.get(l).cloned().unwrap_or_else(|| Poly::zero(self.nvars())).add(&e[l - 1].mul(&y));
            }
            e = next;
        }
        e.get(i).cloned().unwrap_or_else(|| Poly::zero(self.nvars()))
    }

    pub fn psi(&self, k: u32, f: &Poly) -> Poly {
        f.frobenius(k)
    }

    pub fn theta(&self, f: &Poly) -> Result<Poly> {
        f.pow(self.p).sub(&f.frobenius(self.p)).exact_div(&Int::from(self.p))
    }

    /// Rewrites a block-symmetric polynomial in the `λ_i(u_j)`; variable
    /// `j * width + (i − 1)` of the result stands for `λ_i(u_j)`.
    pub fn to_lambda_poly(&self, f: &Poly) -> Result<Poly> {
        for j in 0..self.blocks {
            let deg = f.degree_in(j * self.width..(j + 1) * self.width) as usize;
            if deg > self.width {
                return Err(Error::DegreeBound(format!("degree {deg} in block {j} exceeds width {}", self.width)));
            }
        }
        let elementary: Vec<Poly> =
            (0..self.nvars()).map(|v| self.lambda(v / self.width, v % self.width + 1)).collect();
        let mut cache: HashMap<Monomial, Poly> = HashMap::new();
        let mut rest = f.clone();
        let mut out = Poly::zero(self.nvars());
        while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let mut e_exps = vec![0u32; self.nvars()];
            for j in 0..self.blocks {
                let blk = &m[j * self.width..(j + 1) * self.width];
                for i in 0..self.width {
                    let next = blk.get(i + 1).copied().unwrap_or(0);
                    if blk[i] < next {
                        return Err(Error::ValidationFailed(format!("polynomial is not symmetric in block {j}")));
                    }
                    e_exps[j * self.width + i] = blk[i] - next;
                }
            }
            let prod = cache
                .entry(e_exps.clone())
                .or_insert_with(|| {
                    e_exps.iter().enumerate().fold(Poly::one(self.nvars()), |acc, (v, &k)| {
                        if k == 0 {
                            acc
                        } else {
                            acc.mul(&elementary[v].pow(k))
                        }
                    })
                })
                .clone();
            rest = rest.sub(&prod.scale(&c));
            out = out.add(&Poly::monomial(e_exps, c));
        }
        Ok(out)
    }

    /// `j_x`, sending `u_j` to `x_j` in a ring with Adams data.
    pub fn substitution<'a>(&self, data: &'a AdamsData, targets: &[Vec<Int>]) -> Result<Substitution<'a>> {
        if targets.len() != self.blocks {
            return Err(Error::DimensionMismatch(format!("{} targets for {} generators", targets.len(), self.blocks)));
        }
        let mut values = Vec::with_capacity(self.nvars());
        for x in targets {
            let lam = data.lambdas(x, self.width)?;
            values.extend(lam.into_iter().skip(1));
        }
        Ok(Substitution { universe: self.clone(), data, values })
    }
}

/// The λ-ring map `j_x: U → A`.
#[derive(Clone, Debug)]
pub struct Substitution<'a> {
    universe: UniversalTruncation,
    data: &'a AdamsData,
    values: Vec<Vec<Int>>,
}

impl Substitution<'_> {
    pub fn apply(&self, f: &Poly) -> Result<Vec<Int>> {
        let g = self.universe.to_lambda_poly(f)?;
        Ok(self.data.ring().eval_poly(&g, &self.values))
    }

    /// Multiplicativity on the pairs and `ψ^p`-equivariance on the elements given.
    pub fn check(&self, samples: &[Poly]) -> Result<()> {
        let r = self.data.ring();
        for (i, f) in samples.iter().enumerate() {
            let jf = self.apply(f)?;
            let psi_first = self.apply(&self.universe.psi(self.universe.p, f))?;
            if !r.eq(&psi_first, &self.data.psi().apply(&jf)) {
                return Err(Error::ValidationFailed(format!("j does not commute with ψ on sample {i}")));
            }
            for g in &samples[i..] {
                if !r.eq(&self.apply(&f.mul(g))?, &r.mul(&jf, &self.apply(g)?)) {
                    return Err(Error::ValidationFailed(format!("j is not multiplicative on sample {i}")));
                }
            }
        }
        if !r.eq(&self.apply(&Poly::one(self.universe.nvars()))?, &r.one()) {
            return Err(Error::ValidationFailed("j(1) ≠ 1".into()));
        }
        Ok(())
    }
}

/// `λ`-expression of `u_j` itself, for the identity substitution.
pub fn is_identity_on_generators(u: &UniversalTruncation) -> Result<bool> {
    for j in 0..u.blocks() {
        let g = u.to_lambda_poly(&u.u(j))?;
        let mut e = vec![0; u.nvars()];
        e[j * u.width()] = 1;
        if g != Poly::monomial(e, Int::one()) {
            return Ok(false);
        }
    }
    Ok(true)
}
