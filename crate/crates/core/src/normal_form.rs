//! Hermite and Smith normal forms over the integers.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{xgcd, Int, IntMatrix};

/// A sublattice of `Z^dim` kept in row-echelon (Hermite) form.
///
/// Pivot entries are positive; entries above each pivot are reduced into
/// `[0, pivot)` by [`Lattice::canonicalize`], which the constructors call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: BTreeMap<usize, Vec<Int>>,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, rows: BTreeMap::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<Int>>>(dim: usize, rows: I) -> Self {
        let mut l = Lattice::new(dim);
        for r in rows {
            l.insert(r);
        }
        l.canonicalize();
        l
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        Self::from_rows(m.cols(), m.row_vecs())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = (usize, &Int)> {
        self.rows.iter().map(|(&c, r)| (c, &r[c]))
    }

    /// Basis rows in echelon order.
    pub fn basis(&self) -> IntMatrix {
        IntMatrix::from_rows(self.dim, self.rows.values().cloned().collect())
    }

    /// Adds `v` to the generating set. Returns whether the lattice grew.
    pub fn insert(&mut self, mut v: Vec<Int>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length does not match lattice dimension");
        let mut j = 0;
        loop {
            while j < self.dim && v[j].is_zero() {
                j += 1;
            }
            if j == self.dim {
                return false;
            }
            match self.rows.get_mut(&j) {
                None => {
                    if v[j].is_negative() {
                        for x in v.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.reduce_tail(&mut v, j);
                    self.rows.insert(j, v);
                    return true;
                }
                Some(h) => {
                    let (q, r) = v[j].div_rem(&h[j]);
                    if r.is_zero() {
                        sub_multiple(&mut v, h, &q, j);
                    } else {
                        let (g, x, y) = xgcd(&h[j], &v[j]);
                        let hj = &h[j] / &g;
                        let vj = &v[j] / &g;
                        let mut new_h = vec![Int::zero(); self.dim];
                        let mut new_v = vec![Int::zero(); self.dim];
                        for k in j..self.dim {
                            if h[k].is_zero() && v[k].is_zero() {
                                continue;
                            }
                            new_h[k] = &x * &h[k] + &y * &v[k];
                            new_v[k] = &hj * &v[k] - &vj * &h[k];
                        }
                        *h = new_h;
                        v = new_v;
                        let mut h = self.rows.remove(&j).expect("pivot row");
                        self.reduce_tail(&mut h, j);
                        self.rows.insert(j, h);
                        // the pivot changed, so the lattice grew
                        self.insert(v);
                        return true;
                    }
                }
            }
            j += 1;
        }
    }

    /// Reduce entries of `v` strictly right of `from` at pivot columns.
    fn reduce_tail(&self, v: &mut [Int], from: usize) {
        for (&c, h) in self.rows.range(from + 1..) {
            if !v[c].is_zero() {
                let q = v[c].div_floor(&h[c]);
                if !q.is_zero() {
                    sub_multiple(v, h, &q, c);
                }
            }
        }
    }

    /// Brings the basis to the unique reduced Hermite form.
    pub fn canonicalize(&mut self) {
        let cols: Vec<usize> = self.rows.keys().copied().collect();
        for (idx, &c) in cols.iter().enumerate().rev() {
            let pivot_row = self.rows[&c].clone();
            for &upper in &cols[..idx] {
                let row = self.rows.get_mut(&upper).expect("row");
                if !row[c].is_zero() {
                    let q = row[c].div_floor(&pivot_row[c]);
                    if !q.is_zero() {
                        sub_multiple(row, &pivot_row, &q, c);
                    }
                }
            }
        }
    }

    /// Remainder of `v` after reduction against the basis. Zero iff `v` is in the lattice.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut v = v.to_vec();
        for (&c, h) in &self.rows {
            if !v[c].is_zero() {
                let q = v[c].div_floor(&h[c]);
                if !q.is_zero() {
                    sub_multiple(&mut v, h, &q, c);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        let mut j = 0;
        while j < self.dim {
            if !v[j].is_zero() {
                match self.rows.get(&j) {
                    None => return false,
                    Some(h) => {
                        let (q, r) = v[j].div_rem(&h[j]);
                        if !r.is_zero() {
                            return false;
                        }
                        sub_multiple(&mut v, h, &q, j);
                    }
                }
            }
            j += 1;
        }
        true
    }

    /// Index of the lattice in `Z^dim` when of full rank.
    pub fn index(&self) -> Option<Int> {
        (self.rank() == self.dim).then(|| self.pivots().fold(Int::one(), |acc, (_, p)| acc * p))
    }
}

fn sub_multiple(v: &mut [Int], h: &[Int], q: &Int, from: usize) {
    for k in from..v.len() {
        if !h[k].is_zero() {
            v[k] -= q * &h[k];
        }
    }
}

/// Result of a Smith normal form computation: `u * m * v = s`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Option<IntMatrix>,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form `(u, s, v)` with `u * m * v = s`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let sm = smith(m, true);
    (sm.u.expect("u tracked"), sm.s, sm.v)
}

/// Smith normal form with minimal-absolute-value pivoting. The left
/// transform is only accumulated when `track_u` is set.
pub fn smith(m: &IntMatrix, track_u: bool) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = track_u.then(|| IntMatrix::identity(r));
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    let col_add = |a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst: usize, src: usize, q: &Int| {
        a.add_col_multiple(dst, src, q);
        v.add_col_multiple(dst, src, q);
        vi.add_row_multiple(src, dst, &-q);
    };

    for k in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_abs_nonzero(&a, k) else {
                return Smith { u, s: a, v, v_inv };
            };
            a.swap_rows(k, pi);
            if let Some(u) = u.as_mut() {
                u.swap_rows(k, pi);
            }
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);

            let pivot = a[(k, k)].clone();
            let mut dirty = false;
            for i in k + 1..r {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = a[(i, k)].div_floor(&pivot);
                let nq = -q;
                a.add_row_multiple(i, k, &nq);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, k, &nq);
                }
                if !a[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..c {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = a[(k, j)].div_floor(&pivot);
                col_add(&mut a, &mut v, &mut v_inv, j, k, &-q);
                if !a[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (k + 1..r).find(|&i| (k + 1..c).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    a.add_row_multiple(k, i, &Int::one());
                    if let Some(u) = u.as_mut() {
                        u.add_row_multiple(k, i, &Int::one());
                    }
                }
                None => break,
            }
        }
        if a[(k, k)].is_negative() {
            a.negate_row(k);
            if let Some(u) = u.as_mut() {
                u.negate_row(k);
            }
        }
    }
    Smith { u, s: a, v, v_inv }
}

fn min_abs_nonzero(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                let unit = ax.is_one();
                best = Some((i, j, ax));
                if unit {
                    let (i, j, _) = best.unwrap();
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Basis (as columns of the returned matrix) of the integer kernel `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (r, c) = (m.rows(), m.cols());
    // Echelonize the rows of [m^T | I]; rows with vanishing m^T part span the kernel.
    let mt = m.transpose();
    let aug = mt.hstack(&IntMatrix::identity(c));
    let lat = Lattice::from_matrix(&aug);
    let kernel_rows: Vec<Vec<Int>> = lat
        .rows
        .iter()
        .filter(|(&pc, _)| pc >= r)
        .map(|(_, row)| row[r..].to_vec())
        .collect();
    IntMatrix::from_columns(c, &kernel_rows)
}

/// Solves `coeffs * basis = target` for an integer row vector `coeffs`,
/// where `basis` holds generating rows (not necessarily independent).
pub fn solve_rows(basis: &IntMatrix, target: &[Int]) -> Option<Vec<Int>> {
    let k = basis.rows();
    let n = basis.cols();
    assert_eq!(target.len(), n);
    let aug = basis.hstack(&IntMatrix::identity(k));
    let lat = Lattice::from_matrix(&aug);
    let mut t = target.to_vec();
    t.extend(std::iter::repeat_n(Int::zero(), k));
    let mut j = 0;
    while j < n {
        if !t[j].is_zero() {
            let h = lat.rows.get(&j)?;
            let (q, rem) = t[j].div_rem(&h[j]);
            if !rem.is_zero() {
                return None;
            }
            sub_multiple(&mut t, h, &q, j);
        }
        j += 1;
    }
    Some(t[n..].iter().map(|x| -x).collect())
}
