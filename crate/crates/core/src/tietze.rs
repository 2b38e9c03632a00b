//! Presentation simplification by eliminating generators through unit relations.
//!
//! A relation `±g_c + Σ r_j g_j = 0` lets `g_c` be rewritten in terms of the
//! other generators. Repeating this on sparse relation rows shrinks the
//! presentations produced by tensor products and symbol enumerations to a
//! small dense core before any Hermite/Smith work happens.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::matrix::{Int, IntMatrix};

pub type SparseRow = Vec<(usize, Int)>;

/// Normalizes a sparse row: sorted by column, merged, zeros dropped.
pub fn normalize(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

pub fn dense_to_sparse(v: &[Int]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Outcome of simplification.
#[derive(Clone, Debug)]
pub struct Reduced {
    /// Original generator indices that survive.
    pub survivors: Vec<usize>,
    /// `survivors.len() x ngens`: coordinates of each original generator in the surviving ones.
    pub phi: IntMatrix,
    /// Remaining relations, over the surviving generators.
    pub relations: Vec<Vec<Int>>,
}

pub fn simplify(ngens: usize, rows: &[SparseRow]) -> Reduced {
    let mut rows: Vec<Option<SparseRow>> = {
        let mut seen = HashSet::new();
        rows.iter()
            .map(|r| normalize(r.clone()))
            .filter(|r| !r.is_empty() && seen.insert(r.clone()))
            .map(Some)
            .collect()
    };
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ngens];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r.as_ref().unwrap() {
            col_rows[*c].push(i);
        }
    }
    let mut eliminated: Vec<Option<SparseRow>> = vec![None; ngens];
    let mut order: Vec<usize> = Vec::new();

    loop {
        let mut candidates: Vec<usize> = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().filter(|r| r.iter().any(|(_, v)| v.abs().is_one())).map(|_| i))
            .collect();
        if candidates.is_empty() {
            break;
        }
        candidates.sort_by_key(|&i| rows[i].as_ref().map_or(0, |r| r.len()));
        let mut progress = false;
        for i in candidates {
            let Some(row) = rows[i].as_ref() else { continue };
            // choose the unit column touching the fewest rows
            let pick = row
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .map(|(c, v)| {
                    let live = col_rows[*c].iter().filter(|&&k| rows[k].is_some()).count();
                    (live, *c, v.clone())
                })
                .min_by_key(|(live, c, _)| (*live, *c));
            let Some((_, col, unit)) = pick else { continue };
            let row = rows[i].take().expect("row present");
            // g_col = -unit * Σ_{j != col} r_j g_j
            let expr: SparseRow = row.iter().filter(|(c, _)| *c != col).map(|(c, v)| (*c, -(v * &unit))).collect();
            let touching: Vec<usize> = std::mem::take(&mut col_rows[col]);
            for k in touching {
                let Some(target) = rows[k].as_mut() else { continue };
                let Some(coef) = target.iter().find(|(c, _)| *c == col).map(|(_, v)| v.clone()) else {
                    continue;
                };
                let mut merged: SparseRow = target.iter().filter(|(c, _)| *c != col).cloned().collect();
                for (c, v) in &expr {
                    merged.push((*c, &coef * v));
                }
                let merged = normalize(merged);
                for (c, _) in &merged {
                    if !target.iter().any(|(tc, _)| tc == c) {
                        col_rows[*c].push(k);
                    }
                }
                if merged.is_empty() {
                    rows[k] = None;
                } else {
                    *target = merged;
                }
            }
            eliminated[col] = Some(expr);
            order.push(col);
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let survivors: Vec<usize> = (0..ngens).filter(|c| eliminated[*c].is_none()).collect();
    let mut pos = vec![usize::MAX; ngens];
    for (k, &s) in survivors.iter().enumerate() {
        pos[s] = k;
    }
    let s = survivors.len();
    // resolve eliminated generators, latest first
    let mut resolved: Vec<Option<Vec<Int>>> = vec![None; ngens];
    for &c in &survivors {
        let mut v = vec![Int::zero(); s];
        v[pos[c]] = Int::one();
        resolved[c] = Some(v);
    }
    for &c in order.iter().rev() {
        let mut v = vec![Int::zero(); s];
        for (j, coef) in eliminated[c].as_ref().unwrap() {
            let rj = resolved[*j].as_ref().expect("later generator resolved first");
            for (a, b) in v.iter_mut().zip(rj) {
                if !b.is_zero() {
                    *a += coef * b;
                }
            }
        }
        resolved[c] = Some(v);
    }
    let mut phi = IntMatrix::zeros(s, ngens);
    for (c, col) in resolved.iter().enumerate() {
        for (k, v) in col.as_ref().unwrap().iter().enumerate() {
            phi[(k, c)] = v.clone();
        }
    }
    let relations = rows
        .into_iter()
        .flatten()
        .map(|r| {
            let mut d = vec![Int::zero(); s];
            for (c, v) in r {
                d[pos[c]] = v;
            }
            d
        })
        .collect();
    Reduced { survivors, phi, relations }
}
