use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fpab::FpAbGroup;
use crate::matrix::{reduce_mod, Int, IntMatrix};
use crate::normal_form::Lattice;
use crate::zrings::poly::{Monomial, Poly};

/// Variables, relators and the monomial behind each basis element.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub variables: Vec<String>,
    pub relators: Vec<Poly>,
    pub monomials: Vec<Monomial>,
    /// Coordinates of each variable in the additive basis.
    pub var_elems: Vec<Vec<Int>>,
}

struct RingInner {
    name: String,
    labels: Vec<String>,
    orders: Vec<Int>,
    table: Vec<Vec<Vec<Int>>>,
    one: Vec<Int>,
    presentation: Option<Presentation>,
    additive: FpAbGroup,
}

/// A commutative ring that is finitely generated as an abelian group, given by
/// an additive basis `b_0, …, b_{n-1}` with `b_i` of order `orders[i]` (0 = free)
/// and the multiplication table of the basis.
#[derive(Clone)]
pub struct PresentedRing(Arc<RingInner>);

impl PresentedRing {
    /// Builds a ring from its table and checks the ring axioms on all basis triples.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        orders: Vec<Int>,
        table: Vec<Vec<Vec<Int>>>,
        one: Vec<Int>,
        presentation: Option<Presentation>,
    ) -> Result<Self> {
        let n = orders.len();
        if labels.len() != n || table.len() != n || table.iter().any(|r| r.len() != n) || one.len() != n {
            return Err(Error::DimensionMismatch("ring table shape".into()));
        }
        let additive = FpAbGroup::cyclic_sum(&orders);
        let ring = PresentedRing(Arc::new(RingInner { name: name.into(), labels, orders, table, one, presentation, additive }));
        ring.check_axioms()?;
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim();
        let fail = |what: String| Err(Error::ValidationFailed(format!("{}: {what}", self.name())));
        for i in 0..n {
            let bi = self.basis_elem(i);
            if !self.eq(&self.mul(&self.one(), &bi), &bi) {
                return fail(format!("1 is not a unit on {}", self.0.labels[i]));
            }
            for j in 0..n {
                let p = &self.0.table[i][j];
                if !self.is_zero(&p.iter().map(|c| c * &self.0.orders[i]).collect::<Vec<_>>()) {
                    return fail(format!("table entry ({i},{j}) ignores the order of {}", self.0.labels[i]));
                }
                if !self.eq(p, &self.0.table[j][i]) {
                    return fail(format!("not commutative on ({i},{j})"));
                }
                for k in 0..n {
                    let l = self.mul(&self.mul(&bi, &self.basis_elem(j)), &self.basis_elem(k));
                    let r = self.mul(&bi, &self.mul(&self.basis_elem(j), &self.basis_elem(k)));
                    if !self.eq(&l, &r) {
                        return fail(format!("not associative on ({i},{j},{k})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn integers() -> Self {
        Self::integers_mod(0)
    }

    /// `Z/n` (`n = 0` gives `Z`).
    pub fn integers_mod(n: i64) -> Self {
        let name = if n == 0 { "Z".to_string() } else { format!("Z/{n}") };
        let pres = Presentation {
            variables: vec![],
            relators: if n == 0 { vec![] } else { vec![Poly::constant(0, Int::from(n))] },
            monomials: vec![vec![]],
            var_elems: vec![],
        };
        Self::from_table(name, vec!["1".into()], vec![Int::from(n)], vec![vec![vec![Int::one()]]], vec![Int::one()], Some(pres))
            .expect("integers form a ring")
    }

    /// `Z[x]/(x^n)`.
    pub fn truncated_poly(n: usize) -> Self {
        let mut f = vec![Int::zero(); n + 1];
        f[n] = Int::one();
        Self::univariate(&format!("Z[x]/(x^{n})"), "x", &f, &[]).expect("monic quotient")
    }

    /// `Z[s]/(s^r - 1)`, the group ring of a cyclic group of order `r`.
    pub fn cyclic_group_ring(r: usize) -> Self {
        let mut f = vec![Int::zero(); r + 1];
        f[0] = Int::from(-1);
        f[r] = Int::one();
        Self::univariate(&format!("Z[s]/(s^{r}-1)"), "s", &f, &[]).expect("monic quotient")
    }

    /// `(Z/k)[x]/(x^n)`.
    pub fn truncated_poly_mod(n: usize, k: i64) -> Self {
        let mut f = vec![Int::zero(); n + 1];
        f[n] = Int::one();
        let var = if n == 2 { "e" } else { "x" };
        Self::univariate(&format!("(Z/{k})[{var}]/({var}^{n})"), var, &f, &[vec![Int::from(k)]]).expect("finite quotient")
    }

    /// `Z[x]/(f, g_1, …)` with `f` monic (coefficients lowest degree first).
    ///
    /// The additive group is `Z^deg f` modulo the span of the `x^j g_k mod f`; that
    /// lattice must be diagonal in the monomial basis, which holds for every ring in
    /// the catalog. Monomials of order 1 are dropped from the basis.
    pub fn univariate(name: &str, var: &str, monic: &[Int], extra: &[Vec<Int>]) -> Result<Self> {
        let n = monic.len().checked_sub(1).ok_or_else(|| Error::InvalidParams("empty monic polynomial".into()))?;
        if !monic[n].is_one() {
            return Err(Error::InvalidParams(format!("{name}: leading coefficient must be 1")));
        }
        let reduce_f = |coeffs: &[Int]| -> Vec<Int> {
            let mut c = coeffs.to_vec();
            for k in (n..c.len()).rev() {
                let lead = std::mem::take(&mut c[k]);
                if lead.is_zero() {
                    continue;
                }
                for (j, fj) in monic[..n].iter().enumerate() {
                    c[k - n + j] -= &lead * fj;
                }
            }
            c.resize(n, Int::zero());
            c
        };
        let shifted = |g: &[Int], j: usize| -> Vec<Int> {
            let mut v = vec![Int::zero(); j];
            v.extend_from_slice(g);
            reduce_f(&v)
        };
        let lattice_upto = |bound: usize| -> Lattice {
            let mut lat = Lattice::new(n);
            for g in extra {
                for j in 0..bound {
                    lat.insert(shifted(g, j));
                }
            }
            lat.canonicalize();
            lat
        };
        let lat = lattice_upto(n.max(1));
        if lat.basis() != lattice_upto(2 * n.max(1)).basis() {
            return Err(Error::ValidationFailed(format!("{name}: relator lattice not stable under the degree bound")));
        }
        let mut orders = vec![Int::zero(); n];
        for r in lat.basis().row_vecs() {
            let nz: Vec<usize> = (0..n).filter(|&i| !r[i].is_zero()).collect();
            if nz.len() != 1 {
                return Err(Error::ValidationFailed(format!("{name}: additive lattice is not diagonal in the monomial basis")));
            }
            orders[nz[0]] = r[nz[0]].abs();
        }
        let kept: Vec<usize> = (0..n).filter(|&i| !orders[i].is_one()).collect();
        let restrict = |v: Vec<Int>| -> Vec<Int> { kept.iter().map(|&i| reduce_mod(&v[i], &orders[i])).collect() };
        let mono = |k: usize| -> Vec<Int> {
            let mut v = vec![Int::zero(); k + 1];
            v[k] = Int::one();
            reduce_f(&v)
        };
        let table: Vec<Vec<Vec<Int>>> =
            kept.iter().map(|&i| kept.iter().map(|&j| restrict(mono(i + j))).collect()).collect();
        let one = restrict(mono(0));
        let x = restrict(mono(1));
        let labels: Vec<String> = kept
            .iter()
            .map(|&i| match i {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            })
            .collect();
        let mut relators = vec![Poly::from_coeffs(monic)];
        relators.extend(extra.iter().map(|g| Poly::from_coeffs(g)));
        let pres = Presentation {
            variables: vec![var.to_string()],
            relators,
            monomials: kept.iter().map(|&i| vec![i as u32]).collect(),
            var_elems: vec![x],
        };
        let orders = kept.iter().map(|&i| orders[i].clone()).collect();
        Self::from_table(name, labels, orders, table, one, Some(pres))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn dim(&self) -> usize {
        self.0.orders.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn orders(&self) -> &[Int] {
        &self.0.orders
    }

    pub fn table(&self) -> &[Vec<Vec<Int>>] {
        &self.0.table
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.0.presentation.as_ref()
    }

    /// The additive group `⊕ Z/orders[i]`.
    pub fn additive_group(&self) -> &FpAbGroup {
        &self.0.additive
    }

    pub fn same_as(&self, other: &PresentedRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.0.orders.iter().all(|o| o.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        self.0.orders.iter().all(|o| !o.is_zero())
    }

    /// Number of elements, `None` when infinite.
    pub fn size(&self) -> Option<Int> {
        self.is_finite().then(|| self.0.orders.iter().product())
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.dim()]
    }

    pub fn one(&self) -> Vec<Int> {
        self.0.one.clone()
    }

    pub fn basis_elem(&self, i: usize) -> Vec<Int> {
        let mut v = self.zero();
        v[i] = Int::one();
        v
    }

    pub fn from_int(&self, k: &Int) -> Vec<Int> {
        self.scale(&self.0.one, k)
    }

    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        v.iter().zip(&self.0.orders).map(|(x, o)| reduce_mod(x, o)).collect()
    }

    pub fn is_zero(&self, v: &[Int]) -> bool {
        v.iter().zip(&self.0.orders).all(|(x, o)| reduce_mod(x, o).is_zero())
    }

    pub fn eq(&self, a: &[Int], b: &[Int]) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    pub fn scale(&self, a: &[Int], k: &Int) -> Vec<Int> {
        self.reduce(&a.iter().map(|x| x * k).collect::<Vec<_>>())
    }

    pub fn mul(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        let n = self.dim();
        let mut out = vec![Int::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for (o, t) in out.iter_mut().zip(&self.0.table[i][j]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        self.reduce(&out)
    }

    pub fn pow(&self, a: &[Int], k: u32) -> Vec<Int> {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// Matrix of `y ↦ x·y` on basis coordinates.
    pub fn mul_matrix(&self, x: &[Int]) -> IntMatrix {
        let cols: Vec<Vec<Int>> = (0..self.dim()).map(|j| self.mul(x, &self.basis_elem(j))).collect();
        IntMatrix::from_columns(self.dim(), &cols)
    }

    /// Evaluates a polynomial at ring elements.
    pub fn eval_poly(&self, f: &Poly, values: &[Vec<Int>]) -> Vec<Int> {
        f.eval(values, self.zero(), self.one(), |a, b| self.add(a, b), |a, b| self.mul(a, b), |a, k| self.scale(a, k))
    }

    /// All elements of a finite ring, in mixed-radix order.
    pub fn elements(&self, bound: u64) -> Result<Vec<Vec<Int>>> {
        let size = self.size().ok_or_else(|| Error::TooLarge { size: "infinite".into(), bound })?;
        if size > Int::from(bound) {
            return Err(Error::TooLarge { size: size.to_string(), bound });
        }
        let radix: Vec<u64> = self.0.orders.iter().map(|o| o.to_u64().expect("bounded order")).collect();
        let total = size.to_u64().expect("bounded size");
        Ok((0..total)
            .map(|mut k| {
                radix
                    .iter()
                    .map(|&r| {
                        let d = k % r;
                        k /= r;
                        Int::from(d)
                    })
                    .collect()
            })
            .collect())
    }

    /// Human-readable form of an element.
    pub fn format_elem(&self, v: &[Int]) -> String {
        let v = self.reduce(v);
        let parts: Vec<String> = v
            .iter()
            .zip(&self.0.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| match (c.is_one(), l.as_str()) {
                (_, "1") => c.to_string(),
                (true, _) => l.clone(),
                _ => format!("{c}{l}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresentedRing({})", self.0.name)
    }
}

impl fmt::Display for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.name)
    }
}

/// A ring homomorphism given on basis coordinates (`target.dim() x source.dim()`).
#[derive(Clone, Debug)]
pub struct RingHom {
    source: PresentedRing,
    target: PresentedRing,
    matrix: IntMatrix,
}

impl RingHom {
    /// Checks additivity against the orders, the unit and multiplicativity on basis pairs.
    pub fn new(source: &PresentedRing, target: &PresentedRing, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch("ring map matrix shape".into()));
        }
        let h = RingHom { source: source.clone(), target: target.clone(), matrix };
        for (j, o) in source.orders().iter().enumerate() {
            if !target.is_zero(&h.matrix.column(j).iter().map(|c| c * o).collect::<Vec<_>>()) {
                return Err(Error::NotWellDefined { relation: j });
            }
        }
        if !target.eq(&h.apply(&source.one()), &target.one()) {
            return Err(Error::ValidationFailed(format!("{source} -> {target} does not preserve 1")));
        }
        for i in 0..source.dim() {
            for j in i..source.dim() {
                let (bi, bj) = (source.basis_elem(i), source.basis_elem(j));
                let l = h.apply(&source.mul(&bi, &bj));
                let r = target.mul(&h.apply(&bi), &h.apply(&bj));
                if !target.eq(&l, &r) {
                    return Err(Error::ValidationFailed(format!(
                        "{source} -> {target} is not multiplicative on ({}, {})",
                        source.labels()[i],
                        source.labels()[j]
                    )));
                }
            }
        }
        Ok(h)
    }

    /// The map sending the presentation variables of `source` to `images`.
    pub fn from_var_images(source: &PresentedRing, target: &PresentedRing, images: &[Vec<Int>]) -> Result<Self> {
        let pres = source
            .presentation()
            .ok_or_else(|| Error::InvalidParams(format!("{source} has no presentation")))?;
        if images.len() != pres.variables.len() {
            return Err(Error::DimensionMismatch("one image per variable".into()));
        }
        let cols: Vec<Vec<Int>> = pres
            .monomials
            .iter()
            .map(|m| {
                let mut v = target.one();
                for (img, &e) in images.iter().zip(m) {
                    v = target.mul(&v, &target.pow(img, e));
                }
                v
            })
            .collect();
        Self::new(source, target, IntMatrix::from_columns(target.dim(), &cols))
    }

    pub fn identity(r: &PresentedRing) -> Self {
        RingHom { source: r.clone(), target: r.clone(), matrix: IntMatrix::identity(r.dim()) }
    }

    pub fn source(&self) -> &PresentedRing {
        &self.source
    }

    pub fn target(&self) -> &PresentedRing {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &RingHom) -> RingHom {
        assert!(other.target.same_as(&self.source));
        RingHom { source: other.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&other.matrix) }
    }

    /// The additive map underlying the ring map.
    pub fn additive(&self) -> crate::fpab::AbHom {
        crate::fpab::AbHom::new(self.source.additive_group(), self.target.additive_group(), self.matrix.clone())
            .expect("ring maps respect additive orders")
    }
}

/// `A ⊗_Z B` with its two structure maps.
#[derive(Clone, Debug)]
pub struct RingTensor {
    pub ring: PresentedRing,
    pub left: RingHom,
    pub right: RingHom,
    /// `index[i][j]`: basis position of `a_i ⊗ b_j`, if it survives.
    pub index: Vec<Vec<Option<usize>>>,
}

impl RingTensor {
    /// Coordinates of `x ⊗ y`.
    pub fn pure(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let mut v = self.ring.zero();
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                if let Some(k) = self.index[i][j] {
                    v[k] += a * b;
                }
            }
        }
        self.ring.reduce(&v)
    }
}

pub fn ring_tensor(a: &PresentedRing, b: &PresentedRing) -> RingTensor {
    let (na, nb) = (a.dim(), b.dim());
    let mut index = vec![vec![None; nb]; na];
    let mut pairs = Vec::new();
    let mut orders = Vec::new();
    for i in 0..na {
        for j in 0..nb {
            let o = crate::matrix::gcd(&a.orders()[i], &b.orders()[j]);
            if !o.is_one() {
                index[i][j] = Some(pairs.len());
                pairs.push((i, j));
                orders.push(o);
            }
        }
    }
    let n = pairs.len();
    let place = |x: &[Int], y: &[Int]| -> Vec<Int> {
        let mut v = vec![Int::zero(); n];
        for (i, p) in x.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in y.iter().enumerate() {
                if let Some(k) = index[i][j] {
                    v[k] += p * q;
                }
            }
        }
        v.iter().zip(&orders).map(|(c, o)| reduce_mod(c, o)).collect()
    };
    let table: Vec<Vec<Vec<Int>>> = pairs
        .iter()
        .map(|&(i, j)| pairs.iter().map(|&(k, l)| place(&a.table()[i][k], &b.table()[j][l])).collect())
        .collect();
    let labels: Vec<String> = pairs
        .iter()
        .map(|&(i, j)| match (a.labels()[i].as_str(), b.labels()[j].as_str()) {
            ("1", "1") => "1".to_string(),
            ("1", l) | (l, "1") => l.to_string(),
            (l, r) => format!("{l}*{r}"),
        })
        .collect();
    let one = place(&a.one(), &b.one());
    let presentation = match (a.presentation(), b.presentation()) {
        (Some(pa), Some(pb)) => {
            let (ka, kb) = (pa.variables.len(), pb.variables.len());
            let nv = ka + kb;
            let mut variables = pa.variables.clone();
            variables.extend(pb.variables.iter().cloned());
            let mut relators: Vec<Poly> = pa.relators.iter().map(|f| f.shift(nv, 0)).collect();
            relators.extend(pb.relators.iter().map(|f| f.shift(nv, ka)));
            let monomials = pairs
                .iter()
                .map(|&(i, j)| {
                    let mut m = pa.monomials[i].clone();
                    m.extend_from_slice(&pb.monomials[j]);
                    m
                })
                .collect();
            let mut var_elems: Vec<Vec<Int>> = pa.var_elems.iter().map(|x| place(x, &b.one())).collect();
            var_elems.extend(pb.var_elems.iter().map(|y| place(&a.one(), y)));
            Some(Presentation { variables, relators, monomials, var_elems })
        }
        _ => None,
    };
    let name = format!("{} ⊗ {}", a.name(), b.name());
    let ring = PresentedRing::from_table(name, labels, orders.clone(), table, one, presentation).expect("tensor of rings is a ring");
    let left_cols: Vec<Vec<Int>> = (0..na).map(|i| place(&a.basis_elem(i), &b.one())).collect();
    let right_cols: Vec<Vec<Int>> = (0..nb).map(|j| place(&a.one(), &b.basis_elem(j))).collect();
    let left = RingHom::new(a, &ring, IntMatrix::from_columns(n, &left_cols)).expect("a -> a ⊗ 1");
    let right = RingHom::new(b, &ring, IntMatrix::from_columns(n, &right_cols)).expect("b -> 1 ⊗ b");
    RingTensor { ring, left, right, index }
}

/// `A × B` with its projections.
#[derive(Clone, Debug)]
pub struct RingProduct {
    pub ring: PresentedRing,
    pub offset: usize,
    pub first: RingHom,
    pub second: RingHom,
}

impl RingProduct {
    pub fn pair(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let mut v = x.to_vec();
        v.extend_from_slice(y);
        v
    }
}

pub fn ring_product(a: &PresentedRing, b: &PresentedRing) -> RingProduct {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut table = vec![vec![vec![Int::zero(); n]; n]; n];
    for i in 0..na {
        for k in 0..na {
            table[i][k][..na].clone_from_slice(&a.table()[i][k]);
        }
    }
    for j in 0..nb {
        for l in 0..nb {
            table[na + j][na + l][na..].clone_from_slice(&b.table()[j][l]);
        }
    }
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("({l},0)")).collect();
    labels.extend(b.labels().iter().map(|l| format!("(0,{l})")));
    let mut orders = a.orders().to_vec();
    orders.extend_from_slice(b.orders());
    let mut one = a.one();
    one.extend(b.one());
    let name = format!("{} × {}", a.name(), b.name());
    let ring = PresentedRing::from_table(name, labels, orders, table, one, None).expect("product of rings is a ring");
    let mut p1 = IntMatrix::zeros(na, n);
    let mut p2 = IntMatrix::zeros(nb, n);
    for i in 0..na {
        p1[(i, i)] = Int::one();
    }
    for j in 0..nb {
        p2[(j, na + j)] = Int::one();
    }
    let first = RingHom::new(&ring, a, p1).expect("first projection");
    let second = RingHom::new(&ring, b, p2).expect("second projection");
    RingProduct { ring, offset: na, first, second }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpab::InvariantFactors;
    use crate::matrix::int;

    #[test]
    fn catalog_rings_satisfy_the_axioms() {
        let r = PresentedRing::truncated_poly(3);
        assert_eq!(r.dim(), 3);
        let x = r.basis_elem(1);
        assert!(r.is_zero(&r.pow(&x, 3)));
        let s = PresentedRing::cyclic_group_ring(3);
        let g = s.basis_elem(1);
        assert!(s.eq(&s.pow(&g, 3), &s.one()));
    }

    #[test]
    fn finite_rings_enumerate() {
        let e = PresentedRing::truncated_poly_mod(2, 2);
        assert_eq!(e.orders(), &[int(2), int(2)]);
        assert_eq!(e.elements(64).unwrap().len(), 4);
        assert!(PresentedRing::integers().elements(64).is_err());
        let big = PresentedRing::truncated_poly_mod(4, 3);
        assert_eq!(big.elements(64).unwrap_err(), Error::TooLarge { size: "81".into(), bound: 64 });
    }

    #[test]
    fn non_diagonal_lattices_are_rejected() {
        // Z[x]/(x^2, x + 2): the relation x = -2 mixes basis monomials
        let err = PresentedRing::univariate("bad", "x", &[int(0), int(0), int(1)], &[vec![int(2), int(1)]]);
        assert!(matches!(err, Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn tensor_basis_and_orders() {
        let a = PresentedRing::truncated_poly(2);
        let t = ring_tensor(&a, &a);
        assert_eq!(t.ring.dim(), 4);
        assert_eq!(t.ring.labels(), &["1", "x", "x", "x*x"]);
        let z4 = PresentedRing::integers_mod(4);
        let z6 = PresentedRing::integers_mod(6);
        let t = ring_tensor(&z4, &z6);
        assert_eq!(t.ring.additive_group().invariant_factors(), InvariantFactors::new(&[2], 0));
        let zt = ring_tensor(&PresentedRing::integers(), &a);
        assert_eq!(zt.ring.dim(), 2);
        assert!(zt.right.additive().is_iso());
    }

    #[test]
    fn ring_maps() {
        let a = PresentedRing::truncated_poly(2);
        let z = PresentedRing::integers();
        let aug = RingHom::from_var_images(&a, &z, &[z.zero()]).unwrap();
        assert_eq!(aug.apply(&[int(3), int(5)]), vec![int(3)]);
        // x ↦ 1 does not respect x^2 = 0
        assert!(RingHom::from_var_images(&a, &z, &[z.one()]).is_err());
        let s = PresentedRing::cyclic_group_ring(3);
        let sq = RingHom::from_var_images(&s, &s, &[s.basis_elem(2)]).unwrap();
        assert_eq!(sq.apply(&s.basis_elem(2)), s.basis_elem(1));
    }

    #[test]
    fn products_split() {
        let e = PresentedRing::truncated_poly_mod(2, 2);
        let p = ring_product(&e, &PresentedRing::integers_mod(3));
        assert_eq!(p.ring.size(), Some(int(12)));
        assert_eq!(p.first.apply(&p.ring.one()), e.one());
    }
}
