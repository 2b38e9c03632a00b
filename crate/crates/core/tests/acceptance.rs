//! Acceptance criteria, one line each. Built with `harness = false` so the
//! verdict lines are always printed; the process exits non-zero on any failure.

use std::time::{Duration, Instant};

use k2lambda::catalog::{arrow_objects, catalog_rings, morphisms, torsion_object};
use k2lambda::cli::{default_params, smith_witness};
use k2lambda::fpab::{direct_sum, InvariantFactors};
use k2lambda::functors::{additivity_check, all_functors, cover_check, square_analysis, tensorlike_audit, Assembly, SquareKind};
use k2lambda::k2l::Decomposition;
use k2lambda::lambda::{adams_catalog, is_p_torsion_free, AdamsRing};
use k2lambda::matrix::{Int, IntMatrix};
use k2lambda::msk2::{ms_k2, product_ideal};
use k2lambda::normal_form::smith_normal_form;
use k2lambda::sring::{
    arrow_from_module, arrow_morphism_from_hom, arrow_roundtrip, defining_relations, hom_from_arrow_morphism, module_from_arrow,
    module_roundtrip, s_mul, ArrowObject, SElement, TPoly,
};
use k2lambda::zrings::{make_group_ring_b, quotient_by_ideal_square, ring_product, IdealData, Params, PresentedRing};
use num_traits::{Pow, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

// ---------------------------------------------------------------- oracles

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k = D_k / D_{k-1}` with `D_k` the gcd of the `k x k` minors.
fn minor_gcd_factors(m: &[Vec<i128>]) -> Vec<i128> {
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, bareiss_det(sub));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(0, r.min(c) - k + 1));
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// `ε(i) = m + e − ⌊log_p i⌋`.
fn epsilon_oracle(p: u32, e: u32, m: u32, i: usize) -> u32 {
    let mut k = 0;
    let mut x = i;
    while x >= p as usize {
        x /= p as usize;
        k += 1;
    }
    m + e - k
}

/// Invariant factors of `Z^n / rows` by plain integer elimination (i128, checked).
fn oracle_invariant_factors(n: usize, rows: Vec<Vec<i128>>) -> (Vec<i128>, usize) {
    let mut diag = Vec::new();
    let mut col = 0;
    let mut a = rows;
    let ncols = n;
    while col < ncols {
        a.retain(|r| r.iter().any(|&x| x != 0));
        // pick the smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, r) in a.iter().enumerate() {
            for (j, &x) in r.iter().enumerate().skip(col) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(0, pi);
        for r in a.iter_mut() {
            r.swap(col, pj);
        }
        loop {
            let piv = a[0][col];
            let mut dirty = false;
            for i in 1..a.len() {
                let q = a[i][col] / piv;
                if q != 0 {
                    for j in col..ncols {
                        a[i][j] = a[i][j].checked_sub(q.checked_mul(a[0][j]).expect("overflow")).expect("overflow");
                    }
                }
                dirty |= a[i][col] != 0;
            }
            for j in col + 1..ncols {
                let q = a[0][j] / piv;
                if q != 0 {
                    for r in a.iter_mut() {
                        r[j] = r[j].checked_sub(q.checked_mul(r[col]).expect("overflow")).expect("overflow");
                    }
                }
                dirty |= a[0][j] != 0;
            }
            if !dirty {
                break;
            }
            // move the smallest nonzero entry of row 0 / column col to the pivot
            let mut best = (0usize, col);
            for i in 0..a.len() {
                if a[i][col] != 0 && a[i][col].abs() < a[best.0][best.1].abs() {
                    best = (i, col);
                }
            }
            for j in col..ncols {
                if a[0][j] != 0 && a[0][j].abs() < a[best.0][best.1].abs() {
                    best = (0, j);
                }
            }
            a.swap(0, best.0);
            for r in a.iter_mut() {
                r.swap(col, best.1);
            }
        }
        diag.push(a[0][col].abs());
        a.remove(0);
        col += 1;
        if a.is_empty() {
            break;
        }
    }
    let free = n - diag.len();
    // normalise to a divisibility chain
    let mut d: Vec<i128> = diag;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = gcd(d[i], d[j]);
            let l = d[i] / g * d[j];
            (d[i], d[j]) = (g, l);
        }
    }
    (d.into_iter().filter(|&x| x != 1).collect(), free)
}

/// Relative K₂ of `(Z/k)[ε]` at `(ε)` by direct enumeration of symbols and
/// the three relation families, every instance whose symbols are defined.
fn dual_numbers_oracle(k: i128) -> (Vec<i128>, usize) {
    let elems: Vec<(i128, i128)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
    let idx = |x: (i128, i128)| (x.0.rem_euclid(k) * k + x.1.rem_euclid(k)) as usize;
    let in_j = |x: (i128, i128)| x.0.rem_euclid(k) == 0;
    let mul = |x: (i128, i128), y: (i128, i128)| (x.0 * y.0, x.0 * y.1 + x.1 * y.0);
    let add = |x: (i128, i128), y: (i128, i128)| (x.0 + y.0, x.1 + y.1);
    let sub = |x: (i128, i128), y: (i128, i128)| (x.0 - y.0, x.1 - y.1);
    let n = elems.len();
    let mut gen = vec![usize::MAX; n * n];
    let mut ngens = 0;
    for &a in &elems {
        for &b in &elems {
            if in_j(a) || in_j(b) {
                gen[idx(a) * n + idx(b)] = ngens;
                ngens += 1;
            }
        }
    }
    let sym = |a: (i128, i128), b: (i128, i128)| {
        let g = gen[idx(a) * n + idx(b)];
        (g != usize::MAX).then_some(g)
    };
    let mut rows = Vec::new();
    let mut push = |terms: &[(i128, Option<usize>)]| {
        if terms.iter().any(|t| t.1.is_none()) {
            return;
        }
        let mut r = vec![0i128; ngens];
        for &(c, g) in terms {
            r[g.unwrap()] += c;
        }
        rows.push(r);
    };
    for &a in &elems {
        for &b in &elems {
            push(&[(1, sym(a, b)), (1, sym(b, a))]);
            for &c in &elems {
                let s = sub(add(b, c), mul(mul(a, b), c));
                push(&[(1, sym(a, b)), (1, sym(a, c)), (-1, sym(a, s))]);
                push(&[(1, sym(a, mul(b, c))), (-1, sym(mul(a, b), c)), (-1, sym(mul(a, c), b))]);
            }
        }
    }
    rows.sort();
    rows.dedup();
    oracle_invariant_factors(ngens, rows)
}

fn factors_i128(f: &InvariantFactors) -> (Vec<i128>, usize) {
    (f.torsion.iter().map(|d| d.to_i128().unwrap()).collect(), f.free)
}

// ---------------------------------------------------------------- criteria

fn snf_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..500 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let raw: Vec<Vec<i128>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let m = IntMatrix::from_rows(c, raw.iter().map(|row| row.iter().map(|&x| Int::from(x)).collect()).collect());
        smith_witness(&m).map_err(|w| format!("case {case}: {w}"))?;
        let (_, s, _) = smith_normal_form(&m);
        let got: Vec<i128> = (0..r.min(c)).map(|i| s[(i, i)].abs().to_i128().unwrap()).collect();
        let expect = minor_gcd_factors(&raw);
        check(got == expect, || format!("case {case}: diagonal {got:?}, minor gcds give {expect:?}"))?;
    }
    Ok("500 matrices up to 8x8".into())
}

fn random_tpoly(rng: &mut ChaCha8Rng) -> TPoly {
    let n = rng.gen_range(0..=4);
    TPoly::new((0..n).map(|_| Int::from(rng.gen_range(-9i64..=9))).collect())
}

fn s_ring() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..1000 {
        let p = [2, 3, 5][case % 3];
        let mut el = || SElement::new(random_tpoly(&mut rng), random_tpoly(&mut rng), random_tpoly(&mut rng));
        let (x, y, z) = (el(), el(), el());
        let bad = defining_relations(&x.a, p);
        check(bad.is_empty(), || format!("case {case}: {bad:?} fail"))?;
        check(s_mul(&s_mul(&x, &y, p), &z, p) == s_mul(&x, &s_mul(&y, &z, p), p), || format!("case {case}: not associative"))?;
        let (one, sum) = (SElement::one(), y.add(&z));
        check(s_mul(&one, &x, p) == x && s_mul(&x, &one, p) == x, || format!("case {case}: 1 is not a unit"))?;
        check(s_mul(&x, &sum, p) == s_mul(&x, &y, p).add(&s_mul(&x, &z, p)), || format!("case {case}: not distributive"))?;
    }
    Ok("1000 triples, p in {2,3,5}".into())
}

fn fm_equivalence() -> Outcome {
    let mut objects = 0;
    let mut natural = 0;
    for p in [2, 3] {
        let objs = arrow_objects(p).map_err(|e| e.to_string())?;
        check(objs.len() >= 8, || format!("only {} objects", objs.len()))?;
        for want in ["Δ(Z)", "Δ(Z[x]/(x^2))", "Δ(Z[x]/(x^4))", "T2", "T3"] {
            check(objs.iter().any(|x| x.name == want), || format!("{want} missing from catalog"))?;
        }
        check(objs.iter().any(|x| x.name.starts_with("Δ(Z[s]")), || "group ring object missing".into())?;
        for x in &objs {
            arrow_roundtrip(x).map_err(|e| format!("{}: {e}", x.name))?;
            module_roundtrip(&module_from_arrow(x)).map_err(|e| format!("{}: {e}", x.name))?;
            objects += 1;
        }
        for f in morphisms(p).map_err(|e| e.to_string())? {
            let rt_x = arrow_roundtrip(&f.source).map_err(|e| e.to_string())?;
            let rt_y = arrow_roundtrip(&f.target).map_err(|e| e.to_string())?;
            let sx = arrow_from_module(&module_from_arrow(&f.source)).map_err(|e| e.to_string())?;
            let sy = arrow_from_module(&module_from_arrow(&f.target)).map_err(|e| e.to_string())?;
            let (_, _, gamma) = hom_from_arrow_morphism(&f);
            let ff = arrow_morphism_from_hom(&sx, &sy, &gamma).map_err(|e| e.to_string())?;
            let (lhs, rhs) = (rt_y.compose(&f), ff.compose(&rt_x));
            check(lhs.alpha.equals(&rhs.alpha) && lhs.beta.equals(&rhs.beta), || {
                format!("roundtrip not natural along {} -> {}", f.source.name, f.target.name)
            })?;
            natural += 1;
        }
    }
    Ok(format!("{objects} objects, {natural} naturality squares"))
}

fn tensorlike() -> Outcome {
    let (mut audits, mut covers) = (0, 0);
    for params in default_params() {
        let p = params.p;
        let morphs = morphisms(p).map_err(|e| e.to_string())?;
        check(morphs.len() >= 10, || "fewer than 10 morphisms".into())?;
        let objs = arrow_objects(p).map_err(|e| e.to_string())?;
        for func in all_functors(&params) {
            for f in &morphs {
                let v = tensorlike_audit(&func, f).map_err(|e| e.to_string())?;
                check(v.passed(), || format!("{params}: {v:?}"))?;
                audits += 1;
            }
            for pair in objs.windows(2) {
                check(additivity_check(&func, &pair[0], &pair[1]).map_err(|e| e.to_string())?, || {
                    format!("{} {params} not additive on {} + {}", func.kind, pair[0].name, pair[1].name)
                })?;
            }
            let cover_objects = [ArrowObject::truncation(p, 3), objs[1].clone(), k2lambda::catalog::unit_object(p)];
            for x in &cover_objects {
                let rep = cover_check(&func, x, 2).map_err(|e| e.to_string())?;
                check(rep.passed(), || format!("{params}: {rep:?}"))?;
                covers += 1;
            }
        }
    }
    Ok(format!("{audits} functor/morphism audits, {covers} cover checks"))
}

fn ef_squares() -> Outcome {
    let mut n = 0;
    let mut nonzero_kernels = 0;
    for params in default_params() {
        let kinds: &[SquareKind] = if params.p == 2 { &[SquareKind::Ef1, SquareKind::Ef2] } else { &[SquareKind::Ef1] };
        for x in arrow_objects(params.p).map_err(|e| e.to_string())? {
            let torsion_free = x.m().invariant_factors().torsion.is_empty() && x.n().invariant_factors().torsion.is_empty();
            for &kind in kinds {
                let r = square_analysis(&x, &params, kind).map_err(|e| e.to_string())?;
                check(r.commutes && r.surjective(), || format!("{kind:?} {params} {}: not surjective", x.name))?;
                check(!torsion_free || r.injective(), || format!("{kind:?} {params} {}: kernel {}", x.name, r.kernel))?;
                check(r.kernel_bounded(), || format!("{kind:?} {params} {}: kernel {} vs torsion {}", x.name, r.kernel, r.torsion))?;
                nonzero_kernels += usize::from(!r.kernel.is_trivial());
                n += 1;
            }
        }
    }
    Ok(format!("{n} squares, {nonzero_kernels} with nonzero bounded kernel"))
}

fn criterion_rings(p: u32) -> [AdamsRing; 3] {
    [AdamsRing::Integers, AdamsRing::TruncatedPoly { n: 2 }, AdamsRing::CyclicGroupRing { r: p as usize }]
}

fn decompositions() -> Result<Vec<(Params, String, Decomposition)>, String> {
    let mut out = Vec::new();
    for params in default_params() {
        for ring in criterion_rings(params.p) {
            let d = adams_catalog(ring, params.p).map_err(|e| e.to_string())?;
            let dec = Decomposition::new(&d, &params).map_err(|e| format!("{} {params}: {e}", ring.label()))?;
            out.push((params, ring.label(), dec));
        }
    }
    Ok(out)
}

fn k2l_decompositions(decs: &[(Params, String, Decomposition)]) -> Outcome {
    for (params, ring, dec) in decs {
        check(dec.cf_is_iso(), || format!("{ring} {params}: CF decomposition is not an isomorphism"))?;
        check(dec.df_is_iso(), || format!("{ring} {params}: DF decomposition is not an isomorphism"))?;
    }
    Ok(format!("{} (ring, params) cases", decs.len()))
}

fn p_gl_law(decs: &[(Params, String, Decomposition)]) -> Outcome {
    for (params, ring, dec) in decs {
        check(dec.p_gl_matches_summands(), || format!("{ring} {params}: conjugated p_GL differs from the summand map"))?;
    }
    Ok(format!("{} cases", decs.len()))
}

fn tc_vs_fp() -> Outcome {
    let (mut iso, mut bounded) = (0, 0);
    for params in default_params() {
        for ring in catalog_rings(params.p) {
            let d = adams_catalog(ring, params.p).map_err(|e| e.to_string())?;
            let a = Assembly::new(&d.arrow_object().map_err(|e| e.to_string())?, &params).map_err(|e| e.to_string())?;
            if is_p_torsion_free(&d) {
                check(a.is_iso(), || format!("{} {params}: kernel {} cokernel {}", ring.label(), a.kernel, a.cokernel))?;
                iso += 1;
            } else {
                check(a.torsion_bounded(), || format!("{} {params}: kernel {} cokernel {}", ring.label(), a.kernel, a.cokernel))?;
                bounded += 1;
            }
        }
        let a = Assembly::new(&torsion_object(params.p), &params).map_err(|e| e.to_string())?;
        check(a.torsion_bounded(), || format!("Z/p² {params}: kernel {} cokernel {}", a.kernel, a.cokernel))?;
        bounded += 1;
    }
    Ok(format!("{iso} isomorphisms, {bounded} torsion-bounded surjections"))
}

fn b_gate() -> Outcome {
    for params in default_params() {
        let b = make_group_ring_b(&params).map_err(|e| e.to_string())?;
        let add = b.ring.additive_group();
        for i in 1..params.q() {
            let zi = b.zpow(i);
            let expect: Int = Pow::pow(Int::from(params.p), epsilon_oracle(params.p, params.e, params.m, i));
            let got = add.element_order(&zi);
            check(got.as_ref() == Some(&expect), || format!("{params}: ord(z^{i}) = {got:?}, expected {expect}"))?;
        }
        let (bq, _) = quotient_by_ideal_square(&b).map_err(|e| e.to_string())?;
        let got = bq.ring.additive_group().element_order(&bq.z);
        check(got == Some(params.pe()), || format!("{params}: ord(z) in B/I² = {got:?}"))?;
    }
    Ok("all params".into())
}

fn dual(k: i64) -> (PresentedRing, IdealData) {
    let w = PresentedRing::truncated_poly_mod(2, k);
    let j = IdealData::generated_by(&w, &[w.basis_elem(1)]);
    (w, j)
}

fn ms_k2_engine() -> Outcome {
    for w in [PresentedRing::integers_mod(2), dual(2).0, dual(3).0, PresentedRing::truncated_poly_mod(3, 2)] {
        let g = ms_k2(&w, &IdealData::zero(&w)).map_err(|e| e.to_string())?;
        check(g.is_trivial(), || format!("K2({}, 0) = {}", w.name(), g.invariant_factors()))?;
    }
    let f2 = PresentedRing::integers_mod(2);
    let pairs = [(dual(2), dual(2)), (dual(4), (f2.clone(), IdealData::zero(&f2))), (dual(3), dual(2))];
    for ((w1, j1), (w2, j2)) in &pairs {
        let prod = ring_product(w1, w2);
        let whole = ms_k2(&prod.ring, &product_ideal(&prod, j1, j2)).map_err(|e| e.to_string())?;
        let sum = direct_sum(&[ms_k2(w1, j1).map_err(|e| e.to_string())?, ms_k2(w2, j2).map_err(|e| e.to_string())?]).group;
        check(whole.is_isomorphic(&sum), || {
            format!("{}: {} vs {}", prod.ring.name(), whole.invariant_factors(), sum.invariant_factors())
        })?;
    }
    let mut seen = Vec::new();
    for k in [2i64, 3, 4] {
        let (w, j) = dual(k);
        let engine = factors_i128(&ms_k2(&w, &j).map_err(|e| e.to_string())?.invariant_factors());
        let oracle = dual_numbers_oracle(k as i128);
        check(engine == oracle, || format!("{}: engine {engine:?}, oracle {oracle:?}", w.name()))?;
        seen.push(format!("{}={:?}", w.name(), engine.0));
    }
    Ok(format!("zero ideals, 3 product pairs, oracle agrees: {}", seen.join(" ")))
}

fn main() {
    let mut failures = 0;
    let mut report = |n: usize, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let verdict = match (&res, limit) {
            (Err(_), _) => "FAIL",
            (Ok(_), Some(l)) if took > l => "FAIL",
            _ => "PASS",
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        let detail = match res {
            Ok(s) => s,
            Err(s) => s,
        };
        let over = limit.filter(|&l| took > l).map(|l| format!(" (over {l:?} limit)")).unwrap_or_default();
        println!("criterion {n:>2} {verdict}  {name}: {detail} [{took:.2?}{over}]");
    };
    report(1, "SNF kernel", Some(Duration::from_secs(10)), &mut snf_kernel);
    report(2, "S-ring algebra", Some(Duration::from_secs(5)), &mut s_ring);
    report(3, "arrow/module equivalence", Some(Duration::from_secs(10)), &mut fm_equivalence);
    report(4, "tensorlike functors", Some(Duration::from_secs(60)), &mut tensorlike);
    report(5, "EF squares", Some(Duration::from_secs(60)), &mut ef_squares);
    let mut decs = Err("not built".to_string());
    report(6, "K2L decompositions", Some(Duration::from_secs(300)), &mut || {
        decs = decompositions();
        decs.as_ref().map_err(Clone::clone).and_then(|d| k2l_decompositions(d))
    });
    report(7, "p_GL summand law", None, &mut || decs.as_ref().map_err(Clone::clone).and_then(|d| p_gl_law(d)));
    report(8, "TC vs FP", None, &mut tc_vs_fp);
    report(9, "B construction gate", None, &mut b_gate);
    report(10, "MS-K2 engine", Some(Duration::from_secs(60)), &mut ms_k2_engine);
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
