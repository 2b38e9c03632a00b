use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::error::Result;
use crate::lambda::adams::AdamsData;
use crate::lambda::universal::UniversalTruncation;
use crate::matrix::Int;
use crate::zrings::{Poly, RingHom};

/// A term built from the inputs `u_1, …, u_d` with ring operations, `ψ^p` and `θ^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Const(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Psi(Box<Expr>),
    Theta(Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn add(self, o: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(o))
    }

    pub fn sub(self, o: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(o))
    }

    pub fn mul(self, o: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(o))
    }

    pub fn pow(self, k: u32) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn psi(self) -> Expr {
        Expr::Psi(Box::new(self))
    }

    pub fn theta(self) -> Expr {
        Expr::Theta(Box::new(self))
    }

    /// Degree in each input, counting `ψ^p` and `θ^p` as `p`-fold.
    pub fn weight(&self, arity: usize, p: u32) -> Vec<u32> {
        match self {
            Expr::Var(i) => {
                let mut w = vec![0; arity];
                w[*i] = 1;
                w
            }
            Expr::Const(_) => vec![0; arity],
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.weight(arity, p).into_iter().zip(b.weight(arity, p)).map(|(x, y)| x.max(y)).collect()
            }
            Expr::Mul(a, b) => a.weight(arity, p).into_iter().zip(b.weight(arity, p)).map(|(x, y)| x + y).collect(),
            Expr::Pow(a, k) => a.weight(arity, p).into_iter().map(|x| x * k).collect(),
            Expr::Psi(a) | Expr::Theta(a) => a.weight(arity, p).into_iter().map(|x| x * p).collect(),
        }
    }

    pub fn eval<R: ExprRing>(&self, ring: &R, args: &[R::Elem]) -> Result<R::Elem> {
        Ok(match self {
            Expr::Var(i) => args[*i].clone(),
            Expr::Const(c) => ring.constant(&Int::from(*c)),
            Expr::Add(a, b) => ring.add(&a.eval(ring, args)?, &b.eval(ring, args)?),
            Expr::Sub(a, b) => ring.sub(&a.eval(ring, args)?, &b.eval(ring, args)?),
            Expr::Mul(a, b) => ring.mul(&a.eval(ring, args)?, &b.eval(ring, args)?),
            Expr::Pow(a, k) => {
                let x = a.eval(ring, args)?;
                (0..*k).fold(ring.constant(&Int::from(1)), |acc, _| ring.mul(&acc, &x))
            }
            Expr::Psi(a) => ring.psi(&a.eval(ring, args)?),
            Expr::Theta(a) => ring.theta(&a.eval(ring, args)?)?,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(i) => write!(f, "u{}", i + 1),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Pow(a, k) => write!(f, "{a}^{k}"),
            Expr::Psi(a) => write!(f, "ψ({a})"),
            Expr::Theta(a) => write!(f, "θ({a})"),
        }
    }
}

/// Where expressions can be evaluated.
pub trait ExprRing {
    type Elem: Clone;
    fn constant(&self, c: &Int) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn psi(&self, a: &Self::Elem) -> Self::Elem;
    fn theta(&self, a: &Self::Elem) -> Result<Self::Elem>;
}

impl ExprRing for AdamsData {
    type Elem = Vec<Int>;

    fn constant(&self, c: &Int) -> Vec<Int> {
        self.ring().from_int(c)
    }

    fn add(&self, a: &Vec<Int>, b: &Vec<Int>) -> Vec<Int> {
        self.ring().add(a, b)
    }

    fn sub(&self, a: &Vec<Int>, b: &Vec<Int>) -> Vec<Int> {
        self.ring().sub(a, b)
    }

    fn mul(&self, a: &Vec<Int>, b: &Vec<Int>) -> Vec<Int> {
        self.ring().mul(a, b)
    }

    fn psi(&self, a: &Vec<Int>) -> Vec<Int> {
        self.psi().apply(a)
    }

    fn theta(&self, a: &Vec<Int>) -> Result<Vec<Int>> {
        AdamsData::theta(self, a)
    }
}

impl ExprRing for UniversalTruncation {
    type Elem = Poly;

    fn constant(&self, c: &Int) -> Poly {
        Poly::constant(self.nvars(), c.clone())
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }

    fn psi(&self, a: &Poly) -> Poly {
        UniversalTruncation::psi(self, self.p(), a)
    }

    fn theta(&self, a: &Poly) -> Result<Poly> {
        UniversalTruncation::theta(self, a)
    }
}

/// `Σ c ⌊v, w⌋`: a transformation into `Ω`, given by its value on `⌊u_1, u_2⌋`
/// (or on `d` inputs in general).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTransformation {
    pub name: String,
    pub arity: usize,
    pub terms: Vec<(i64, Expr, Expr)>,
}

impl SymbolicTransformation {
    /// `⌊u_1, u_2⌋`
    pub fn identity() -> Self {
        Self::binary("id", vec![(1, Expr::var(0), Expr::var(1))])
    }

    pub fn binary(name: &str, terms: Vec<(i64, Expr, Expr)>) -> Self {
        SymbolicTransformation { name: name.into(), arity: 2, terms }
    }

    /// `⌊ψ(u_1) u_2^{p−1}, u_2⌋ − ⌊ψ(u_1), θ(u_2)⌋`
    pub fn phi(p: u32) -> Self {
        let psi_a = Expr::var(0).psi();
        Self::binary(
            "phi",
            vec![
                (1, psi_a.clone().mul(Expr::var(1).pow(p - 1)), Expr::var(1)),
                (-1, psi_a, Expr::var(1).theta()),
            ],
        )
    }

    /// `φ` with the sign of the `θ` term flipped; not well defined in general.
    pub fn phi_sign_flipped(p: u32) -> Self {
        let mut t = Self::phi(p);
        t.name = "phi-sign-flipped".into();
        t.terms[1].0 = 1;
        t
    }

    /// `⌊1, u_1 u_2⌋ − ⌊u_2, u_1⌋`, equal to `⌊u_1, u_2⌋`.
    pub fn rewritten_identity() -> Self {
        Self::binary(
            "rewritten-id",
            vec![(1, Expr::Const(1), Expr::var(0).mul(Expr::var(1))), (-1, Expr::var(1), Expr::var(0))],
        )
    }

    pub fn negation() -> Self {
        Self::binary("neg", vec![(-1, Expr::var(0), Expr::var(1))])
    }

    /// Per-input width of the universal truncation that represents all arguments.
    pub fn width(&self, p: u32) -> usize {
        self.terms
            .iter()
            .flat_map(|(_, v, w)| v.weight(self.arity, p).into_iter().chain(w.weight(self.arity, p)))
            .max()
            .unwrap_or(0)
            .max(1) as usize
    }

    /// Direct evaluation `Σ c v(args) δ w(args)` in `Ω_A`.
    pub fn evaluate(&self, data: &AdamsData, args: &[Vec<Int>]) -> Result<Vec<Int>> {
        let om = data.omega();
        let mut acc = vec![Int::from(0); om.ngens()];
        for (c, v, w) in &self.terms {
            let s = om.symbol(&v.eval(data, args)?, &w.eval(data, args)?);
            for (a, b) in acc.iter_mut().zip(s) {
                *a += b * c;
            }
        }
        Ok(acc)
    }

    /// Evaluation through `j_{args}` applied to the universal value.
    pub fn extend(&self, data: &AdamsData, args: &[Vec<Int>]) -> Result<Vec<Int>> {
        let u = UniversalTruncation::new(self.arity, self.width(data.p()), data.p());
        let gens: Vec<Poly> = (0..self.arity).map(|j| u.u(j)).collect();
        let j = u.substitution(data, args)?;
        let om = data.omega();
        let mut acc = vec![Int::from(0); om.ngens()];
        for (c, v, w) in &self.terms {
            let s = om.symbol(&j.apply(&v.eval(&u, &gens)?)?, &j.apply(&w.eval(&u, &gens)?)?);
            for (a, b) in acc.iter_mut().zip(s) {
                *a += b * c;
            }
        }
        Ok(acc)
    }

    /// `S ∘ T` at evaluation level: `S` applied to each symbol of `T(args)`.
    pub fn compose_eval(&self, inner: &SymbolicTransformation, data: &AdamsData, args: &[Vec<Int>]) -> Result<Vec<Int>> {
        let om = data.omega();
        let mut acc = vec![Int::from(0); om.ngens()];
        for (c, v, w) in &inner.terms {
            let x = [v.eval(data, args)?, w.eval(data, args)?];
            for (a, b) in acc.iter_mut().zip(self.evaluate(data, &x)?) {
                *a += b * c;
            }
        }
        Ok(acc)
    }
}

/// The relation families of the symbol presentation of `Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationFamily {
    /// `⌊a,b⌋ + ⌊a,c⌋ − ⌊a,b+c⌋`
    AdditiveSecond,
    /// `⌊a,c⌋ + ⌊b,c⌋ − ⌊a+b,c⌋`
    AdditiveFirst,
    /// `⌊a,bc⌋ − ⌊ab,c⌋ − ⌊ac,b⌋`
    Leibniz,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 3] = [Self::AdditiveSecond, Self::AdditiveFirst, Self::Leibniz];

    /// The relation as `(coefficient, first argument, second argument)` on inputs `(a, b, c)`.
    fn instance(&self, data: &AdamsData, a: &[Int], b: &[Int], c: &[Int]) -> Vec<(i64, Vec<Int>, Vec<Int>)> {
        let r = data.ring();
        match self {
            Self::AdditiveSecond => {
                vec![(1, a.to_vec(), b.to_vec()), (1, a.to_vec(), c.to_vec()), (-1, a.to_vec(), r.add(b, c))]
            }
            Self::AdditiveFirst => {
                vec![(1, a.to_vec(), c.to_vec()), (1, b.to_vec(), c.to_vec()), (-1, r.add(a, b), c.to_vec())]
            }
            Self::Leibniz => vec![(1, a.to_vec(), r.mul(b, c)), (-1, r.mul(a, b), c.to_vec()), (-1, r.mul(a, c), b.to_vec())],
        }
    }
}

/// A relation instance whose image is not zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub family: RelationFamily,
    pub args: [Vec<Int>; 3],
    pub image: Vec<Int>,
}

#[derive(Clone, Debug, Default)]
pub struct WellDefinedReport {
    pub instances: usize,
    pub witnesses: Vec<Witness>,
}

impl WellDefinedReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Sample elements: the basis, `1`, and seeded small combinations.
pub fn sample_elements(data: &AdamsData, count: usize, seed: u64) -> Vec<Vec<Int>> {
    let r = data.ring();
    let mut out: Vec<Vec<Int>> = (0..r.dim()).map(|i| r.basis_elem(i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        out.push((0..r.dim()).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect());
    }
    out
}

/// Evaluates every relation instance over the sample triples and records nonzero images.
pub fn check_well_defined(
    t: &SymbolicTransformation,
    family: RelationFamily,
    data: &AdamsData,
    samples: &[Vec<Int>],
) -> Result<WellDefinedReport> {
    let g = data.omega().group();
    let mut report = WellDefinedReport::default();
    for a in samples {
        for b in samples {
            for c in samples {
                let mut acc = vec![Int::from(0); g.ngens()];
                for (k, x, y) in family.instance(data, a, b, c) {
                    for (s, v) in acc.iter_mut().zip(t.evaluate(data, &[x, y])?) {
                        *s += v * k;
                    }
                }
                report.instances += 1;
                if !g.is_zero(&acc) {
                    report.witnesses.push(Witness { family, args: [a.clone(), b.clone(), c.clone()], image: acc });
                }
            }
        }
    }
    Ok(report)
}

/// `Ω(f) T_{A₁}(a, b) = T_{A₂}(f a, f b)` on the sample pairs.
pub fn check_naturality(
    t: &SymbolicTransformation,
    f: &RingHom,
    source: &AdamsData,
    target: &AdamsData,
    samples: &[Vec<Int>],
) -> Result<bool> {
    let omega_f = source.omega().induced(f, target.omega())?;
    for a in samples {
        for b in samples {
            let lhs = omega_f.apply(&t.evaluate(source, &[a.clone(), b.clone()])?);
            let rhs = t.evaluate(target, &[f.apply(a), f.apply(b)])?;
            if !target.omega().group().eq_elems(&lhs, &rhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `S ∘ T` is the identity on the symbols `⌊a, b⌋` for the sample pairs.
pub fn check_inverse(
    s: &SymbolicTransformation,
    t: &SymbolicTransformation,
    data: &AdamsData,
    samples: &[Vec<Int>],
) -> Result<bool> {
    let om = data.omega();
    for a in samples {
        for b in samples {
            let st = s.compose_eval(t, data, &[a.clone(), b.clone()])?;
            if !om.group().eq_elems(&st, &om.symbol(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
