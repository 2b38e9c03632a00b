use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{arrow_objects, morphisms};
use crate::cli::config::{RunConfig, Suite};
use crate::error::{Error, Result};
use crate::fpab::{fiber_product, AbHom, FpAbGroup};
use crate::functors::{additivity_check, all_functors, analyse, cover_check, square_analysis, tensorlike_audit, Assembly, SquareKind, StructureMaps};
use crate::k2l::Decomposition;
use crate::lambda::{adams_catalog, check_inverse, check_well_defined, is_p_torsion_free, sample_elements, RelationFamily, SymbolicTransformation, UniversalTruncation};
use crate::matrix::{Int, IntMatrix};
use crate::msk2::{ms_presentation, product_ideal, relation_audit, MsOptions};
use crate::normal_form::smith_normal_form;
use crate::sring::{arrow_roundtrip, defining_relations, module_from_arrow, module_roundtrip, s_mul, ArrowObject, SElement, TPoly};
use crate::zrings::{make_group_ring_b, quotient_by_ideal_square, ring_product, IdealData, Params, PresentedRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    /// Failure witness or skip reason.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail).count()
    }
}

/// A check body returns `Ok(Err(witness))` for a failed assertion.
type Verdict = Result<std::result::Result<(), String>>;

#[derive(Default)]
struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn run(&mut self, name: impl Into<String>, body: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let (outcome, detail) = match body() {
            Ok(Ok(())) => (Outcome::Pass, None),
            Ok(Err(w)) => (Outcome::Fail, Some(w)),
            Err(e) => (Outcome::Fail, Some(format!("error: {e}"))),
        };
        self.checks.push(Check { name: name.into(), outcome, detail, elapsed: start.elapsed() });
    }

    fn skip(&mut self, name: impl Into<String>, reason: String) {
        self.checks.push(Check { name: name.into(), outcome: Outcome::Skip, detail: Some(reason), elapsed: Duration::ZERO });
    }
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> SuiteResult {
    let start = Instant::now();
    let mut r = Runner::default();
    match suite {
        Suite::FpabCore => fpab_core(&mut r, cfg),
        Suite::SringEquivalence => sring_equivalence(&mut r, cfg),
        Suite::LambdaTransformations => lambda_transformations(&mut r, cfg),
        Suite::FunctorTensorlike => functor_tensorlike(&mut r, cfg),
        Suite::Squares => squares(&mut r, cfg),
        Suite::K2lDecomposition => k2l_decomposition(&mut r, cfg),
        Suite::MsK2 => ms_k2_suite(&mut r, cfg),
        Suite::NegativeControl => negative_control(&mut r, cfg),
    }
    SuiteResult { suite, checks: r.checks, elapsed: start.elapsed() }
}

fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    let rows = (0..r).map(|_| (0..c).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect()).collect();
    IntMatrix::from_rows(c, rows)
}

/// `u m v = s`, `s` diagonal with a divisibility chain, `u` and `v` unimodular.
pub fn smith_witness(m: &IntMatrix) -> std::result::Result<(), String> {
    let (u, s, v) = smith_normal_form(m);
    if u.mul(m).mul(&v) != s {
        return Err(format!("U*M*V != S for {m:?}"));
    }
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if i != j && !s[(i, j)].is_zero() {
                return Err(format!("S has an off-diagonal entry at ({i}, {j}) for {m:?}"));
            }
        }
    }
    let d: Vec<Int> = (0..s.rows().min(s.cols())).map(|i| s[(i, i)].clone()).collect();
    for w in d.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        if !ok || w[0].is_negative() {
            return Err(format!("diagonal {d:?} is not a divisibility chain"));
        }
    }
    if u.determinant().abs() != Int::from(1) || v.determinant().abs() != Int::from(1) {
        return Err(format!("transforms are not unimodular for {m:?}"));
    }
    Ok(())
}

fn fpab_core(r: &mut Runner, cfg: &RunConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mats: Vec<IntMatrix> = (0..200).map(|_| random_matrix(&mut rng, 6, 20)).collect();
    r.run("smith form on 200 seeded matrices", || Ok(mats.iter().try_for_each(smith_witness)));

    let maps: Vec<(IntMatrix, IntMatrix)> = (0..40)
        .map(|_| {
            let rel = random_matrix(&mut rng, 3, 6);
            let (a, b) = (rng.gen_range(1..=3), rel.cols());
            let f = IntMatrix::from_rows(a, (0..b).map(|_| (0..a).map(|_| Int::from(rng.gen_range(-4..=4))).collect()).collect());
            (rel, f)
        })
        .collect();
    r.run("kernel and cokernel exactness on 40 seeded maps", || {
        for (rel, f) in &maps {
            let tgt = FpAbGroup::from_matrix(rel.cols(), rel);
            let h = AbHom::new(&FpAbGroup::free(f.cols()), &tgt, f.clone())?;
            let (_, incl) = h.kernel();
            let (_, proj) = h.cokernel();
            if !h.compose(&incl).is_zero() || !proj.compose(&h).is_zero() {
                return Ok(Err(format!("composite through kernel or cokernel is nonzero for {f:?}")));
            }
            let (_, onto, into) = h.image();
            if !into.compose(&onto).equals(&h) || !onto.is_surjective() || !into.is_injective() {
                return Ok(Err(format!("image factorisation fails for {f:?}")));
            }
        }
        Ok(Ok(()))
    });
    r.run("fiber product mediates its own projections", || {
        for (rel, f) in maps.iter().take(10) {
            let tgt = FpAbGroup::from_matrix(rel.cols(), rel);
            let h = AbHom::new(&FpAbGroup::free(f.cols()), &tgt, f.clone())?;
            let fp = fiber_product(&h, &h)?;
            let med = fp.mediate(&fp.p1, &fp.p2)?;
            if !med.equals(&AbHom::identity(&fp.group)) {
                return Ok(Err(format!("mediating map is not the identity for {f:?}")));
            }
        }
        Ok(Ok(()))
    });
}

fn random_tpoly(rng: &mut ChaCha8Rng) -> TPoly {
    let n = rng.gen_range(0..=3);
    TPoly::new((0..n).map(|_| Int::from(rng.gen_range(-5i64..=5))).collect())
}

fn random_selement(rng: &mut ChaCha8Rng) -> SElement {
    SElement::new(random_tpoly(rng), random_tpoly(rng), random_tpoly(rng))
}

fn sring_equivalence(r: &mut Runner, cfg: &RunConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5);
    for p in cfg.primes() {
        let triples: Vec<_> = (0..200).map(|_| (random_selement(&mut rng), random_selement(&mut rng), random_selement(&mut rng))).collect();
        r.run(format!("S-ring relations and associativity, p={p}"), || {
            for (x, y, z) in &triples {
                let bad = defining_relations(&x.a, p);
                if !bad.is_empty() {
                    return Ok(Err(format!("{bad:?} fail for r = {:?}", x.a)));
                }
                if s_mul(&s_mul(x, y, p), z, p) != s_mul(x, &s_mul(y, z, p), p) {
                    return Ok(Err(format!("(xy)z != x(yz) for {x:?}, {y:?}, {z:?}")));
                }
            }
            Ok(Ok(()))
        });
        let objects = match arrow_objects(p) {
            Ok(o) => o,
            Err(e) => {
                r.run(format!("arrow catalog, p={p}"), || Err(e));
                continue;
            }
        };
        for x in objects {
            r.run(format!("arrow/module roundtrip on {}, p={p}", x.name), || {
                arrow_roundtrip(&x)?;
                module_roundtrip(&module_from_arrow(&x))?;
                Ok(Ok(()))
            });
        }
    }
}

fn lambda_transformations(r: &mut Runner, cfg: &RunConfig) {
    for p in cfg.primes() {
        for entry in &cfg.rings {
            let ring = entry.resolve(p);
            r.run(format!("Adams data and phi on {}, p={p}", ring.label()), || {
                let d = adams_catalog(ring, p)?;
                d.verify()?;
                let samples = sample_elements(&d, 5, cfg.seed);
                for fam in RelationFamily::ALL {
                    let rep = check_well_defined(&SymbolicTransformation::phi(p), fam, &d, &samples)?;
                    if let Some(w) = rep.witnesses.first() {
                        return Ok(Err(format!("phi violates {fam:?} at {:?}", w.args)));
                    }
                }
                let neg = SymbolicTransformation::negation();
                if !check_inverse(&neg, &neg, &d, &samples)? {
                    return Ok(Err("negation is not an involution".into()));
                }
                let u = UniversalTruncation::new(1, 2 * p as usize, p);
                let sub = u.substitution(&d, &[d.ring().basis_elem(d.ring().dim() - 1)])?;
                sub.check(&[u.u(0), u.u(0).pow(2)])?;
                Ok(Ok(()))
            });
        }
    }
}

fn functor_tensorlike(r: &mut Runner, cfg: &RunConfig) {
    for params in &cfg.params {
        let p = params.p;
        let (morphs, objects) = match (morphisms(p), arrow_objects(p)) {
            (Ok(m), Ok(o)) => (m, o),
            (Err(e), _) | (_, Err(e)) => {
                r.run(format!("catalog {params}"), || Err(e));
                continue;
            }
        };
        for func in all_functors(params) {
            r.run(format!("{} commutes with sums and cokernels {params}", func.kind), || {
                for f in &morphs {
                    let v = tensorlike_audit(&func, f)?;
                    if !v.passed() {
                        return Ok(Err(format!("{v:?}")));
                    }
                }
                for pair in objects.windows(2) {
                    if !additivity_check(&func, &pair[0], &pair[1])? {
                        return Ok(Err(format!("not additive on {} + {}", pair[0].name, pair[1].name)));
                    }
                }
                Ok(Ok(()))
            });
            r.run(format!("{} cover on T3/t^2 {params}", func.kind), || {
                let rep = cover_check(&func, &ArrowObject::truncation(p, 3), 2)?;
                Ok(ensure(rep.passed(), || format!("{rep:?}")))
            });
        }
    }
}

fn square_kinds(params: &Params) -> Vec<SquareKind> {
    if params.p == 2 {
        vec![SquareKind::Ef1, SquareKind::Ef2]
    } else {
        vec![SquareKind::Ef1]
    }
}

fn squares(r: &mut Runner, cfg: &RunConfig) {
    for params in &cfg.params {
        let objects = match arrow_objects(params.p) {
            Ok(o) => o,
            Err(e) => {
                r.run(format!("arrow catalog {params}"), || Err(e));
                continue;
            }
        };
        for kind in square_kinds(params) {
            for x in &objects {
                r.run(format!("{kind:?} square on {} {params}", x.name), || {
                    let rep = square_analysis(x, params, kind)?;
                    let torsion_free = x.m().invariant_factors().torsion.is_empty() && x.n().invariant_factors().torsion.is_empty();
                    Ok(ensure(rep.passes() && (!torsion_free || rep.injective()), || {
                        format!(
                            "commutes={} kernel={} cokernel={} torsion={}",
                            rep.commutes, rep.kernel, rep.cokernel, rep.torsion
                        )
                    }))
                });
            }
        }
        for entry in &cfg.rings {
            let ring = entry.resolve(params.p);
            r.run(format!("TC -> FP on {} {params}", ring.label()), || {
                let d = adams_catalog(ring, params.p)?;
                let a = Assembly::new(&d.arrow_object()?, params)?;
                let ok = if is_p_torsion_free(&d) { a.is_iso() } else { a.torsion_bounded() };
                Ok(ensure(ok, || format!("kernel={} cokernel={}", a.kernel, a.cokernel)))
            });
        }
    }
}

fn k2l_decomposition(r: &mut Runner, cfg: &RunConfig) {
    for params in &cfg.params {
        r.run(format!("B and B/I^2 orders {params}"), || {
            let b = make_group_ring_b(params)?;
            quotient_by_ideal_square(&b)?;
            Ok(Ok(()))
        });
        for entry in &cfg.rings {
            let ring = entry.resolve(params.p);
            r.run(format!("K2L decompositions of {} {params}", ring.label()), || {
                let d = adams_catalog(ring, params.p)?;
                let dec = Decomposition::new(&d, params)?;
                Ok(ensure(dec.cf_is_iso() && dec.df_is_iso() && dec.p_gl_matches_summands(), || {
                    format!(
                        "cf iso={} df iso={} p_GL law={}",
                        dec.cf_is_iso(),
                        dec.df_is_iso(),
                        dec.p_gl_matches_summands()
                    )
                }))
            });
        }
    }
}

/// `(Z/k)[ε]` with `J = (ε)`.
fn dual_numbers(k: i64) -> (PresentedRing, IdealData) {
    let w = PresentedRing::truncated_poly_mod(2, k);
    let j = IdealData::generated_by(&w, &[w.basis_elem(1)]);
    (w, j)
}

fn ms_k2_suite(r: &mut Runner, cfg: &RunConfig) {
    let opts = MsOptions { max_size: cfg.max_ring_size, reading: cfg.ms_reading };
    let fits = |w: &PresentedRing| w.size().is_some_and(|s| s <= Int::from(cfg.max_ring_size));
    let k2 = |w: &PresentedRing, j: &IdealData| ms_presentation(w, j, &opts).map(|pr| pr.group.invariant_factors());

    let (f2e, jf2e) = dual_numbers(2);
    r.run("K2(W, 0) = 0 for W = F2[e]", || {
        let g = k2(&f2e, &IdealData::zero(&f2e))?;
        Ok(ensure(g.is_trivial(), || format!("got {g}")))
    });
    let singles: [(i64, &str); 3] = [(2, "0"), (3, "0"), (4, "Z/2")];
    for (k, expect) in singles {
        let (w, j) = dual_numbers(k);
        let name = format!("K2({}, (e)) = {expect}", w.name());
        if !fits(&w) {
            r.skip(name, format!("ring larger than max ring size {}", cfg.max_ring_size));
            continue;
        }
        r.run(name, || {
            let g = k2(&w, &j)?;
            Ok(ensure(g.to_string() == expect, || format!("got {g}")))
        });
    }
    r.run("relation audit on F2[e]", || {
        let a = relation_audit(&f2e, &jf2e, &opts)?;
        Ok(ensure(a.passed(), || format!("{a:?}")))
    });

    let f2 = PresentedRing::integers_mod(2);
    let pairs = [(dual_numbers(2), dual_numbers(2)), (dual_numbers(4), (f2.clone(), IdealData::zero(&f2))), (dual_numbers(3), dual_numbers(2))];
    for ((w1, j1), (w2, j2)) in pairs {
        let prod = ring_product(&w1, &w2);
        let name = format!("K2 splits over {}", prod.ring.name());
        if !fits(&prod.ring) {
            r.skip(name, format!("ring larger than max ring size {}", cfg.max_ring_size));
            continue;
        }
        r.run(name, || {
            let jj = product_ideal(&prod, &j1, &j2);
            let whole = ms_presentation(&prod.ring, &jj, &opts)?.group;
            let g1 = ms_presentation(&w1, &j1, &opts)?.group;
            let g2 = ms_presentation(&w2, &j2, &opts)?.group;
            let sum = crate::fpab::direct_sum(&[g1, g2]).group;
            Ok(ensure(whole.is_isomorphic(&sum), || {
                format!("{} vs {}", whole.invariant_factors(), sum.invariant_factors())
            }))
        });
    }
    r.run("non-split projection is rejected", || {
        let z4 = PresentedRing::integers_mod(4);
        let j = IdealData::generated_by(&z4, &[z4.from_int(&Int::from(2))]);
        Ok(match ms_presentation(&z4, &j, &opts) {
            Err(Error::NotSplit(_)) => Ok(()),
            other => Err(format!("expected NotSplit, got {:?}", other.map(|p| p.group.invariant_factors()))),
        })
    });
}

/// Runs the square checks with a sign-flipped `χ*` and the `φ` formula with a
/// flipped sign; every check here is expected to fail with a witness.
fn negative_control(r: &mut Runner, cfg: &RunConfig) {
    for params in &cfg.params {
        let objects = match arrow_objects(params.p) {
            Ok(o) => o,
            Err(e) => {
                r.run(format!("arrow catalog {params}"), || Err(e));
                continue;
            }
        };
        r.run(format!("corrupted chi* square {params}"), || {
            let maps = StructureMaps::new(SquareKind::Ef1, params)?.with_corrupted_chi_star();
            for x in &objects {
                let rep = analyse(x, params, &maps)?;
                if !rep.passes() {
                    return Ok(Err(format!(
                        "{} at {}: commutes={} kernel={} cokernel={}",
                        maps.chi_star.name, x.name, rep.commutes, rep.kernel, rep.cokernel
                    )));
                }
            }
            Ok(Ok(()))
        });
    }
    for p in cfg.primes() {
        let ring = cfg.rings.iter().map(|e| e.resolve(p)).find(|r| r.ring().dim() > 1);
        let Some(ring) = ring else { continue };
        r.run(format!("sign-flipped phi on {}, p={p}", ring.label()), || {
            let d = adams_catalog(ring, p)?;
            let samples = sample_elements(&d, 5, cfg.seed);
            let rep = check_well_defined(&SymbolicTransformation::phi_sign_flipped(p), RelationFamily::AdditiveSecond, &d, &samples)?;
            Ok(match rep.witnesses.first() {
                Some(w) => Err(format!("relation {:?} at {:?} maps to {:?}", w.family, w.args, w.image)),
                None => Ok(()),
            })
        });
    }
}
