//! Staircase combinatorics and linear algebra in zero-dimensional quotients.

use std::collections::{HashMap, VecDeque};

use crate::numeric::Rational;
use crate::poly::{Monomial, UniPoly};

/// Krull dimension of `k[x]/(leading monomials)`, or -1 if a constant is among them.
pub(crate) fn staircase_dim(lms: &[Monomial], nvars: usize) -> i64 {
    if lms.iter().any(Monomial::is_one) {
        return -1;
    }
    if lms.is_empty() {
        return nvars as i64;
    }
    // dim = nvars - minimum hitting set of the supports
    let mut sets: Vec<u128> = lms
        .iter()
        .map(|m| m.support().fold(0u128, |acc, i| acc | (1u128 << i)))
        .collect();
    sets.sort_by_key(|s| s.count_ones());
    // supersets are implied by their subsets
    let mut minimal: Vec<u128> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }
    let mut best = nvars;
    hitting(&minimal, 0u128, 0, &mut best);
    nvars as i64 - best as i64
}

fn hitting(sets: &[u128], chosen: u128, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let Some(&open) = sets.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones()) else {
        *best = size;
        return;
    };
    let mut bits = open;
    while bits != 0 {
        let i = bits.trailing_zeros();
        bits &= bits - 1;
        hitting(sets, chosen | (1u128 << i), size + 1, best);
    }
}

/// Standard monomials of a zero-dimensional staircase in increasing BFS order,
/// starting with `1`. `None` if there are more than `cap`.
pub(crate) fn standard_monomials(lms: &[Monomial], nvars: usize, cap: usize) -> Option<Vec<Monomial>> {
    let divisible = |m: &Monomial| lms.iter().any(|l| l.divides(m));
    let one = Monomial::one(nvars);
    if divisible(&one) {
        return Some(vec![]);
    }
    let mut out = vec![one.clone()];
    let mut seen: HashMap<Monomial, ()> = HashMap::new();
    seen.insert(one.clone(), ());
    let mut queue = VecDeque::from([one]);
    while let Some(m) = queue.pop_front() {
        for i in 0..nvars {
            let mut next = m.clone();
            next.set_exp(i, m.exp(i) + 1);
            if seen.contains_key(&next) || divisible(&next) {
                continue;
            }
            seen.insert(next.clone(), ());
            out.push(next.clone());
            if out.len() > cap {
                return None;
            }
            queue.push_back(next);
        }
    }
    Some(out)
}

/// Dense square matrix over Q acting on column vectors.
#[derive(Clone, Debug)]
pub(crate) struct QMatrix {
    pub n: usize,
    /// column-major: `cols[j]` is the image of basis vector `j`
    pub cols: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, c) in self.cols[j].iter().enumerate() {
                if !c.is_zero() {
                    out[i] += &(c * vj);
                }
            }
        }
        out
    }

    pub fn lin_comb(mats: &[&QMatrix], coeffs: &[Rational]) -> QMatrix {
        let n = mats[0].n;
        let mut cols = vec![vec![Rational::zero(); n]; n];
        for (m, c) in mats.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                for i in 0..n {
                    let v = &m.cols[j][i];
                    if !v.is_zero() {
                        cols[j][i] += &(v * c);
                    }
                }
            }
        }
        QMatrix { n, cols }
    }
}

/// Incremental echelon form for detecting the first linear dependency.
pub(crate) struct Echelon {
    /// reduced rows: (pivot index, vector, combination of the original vectors)
    rows: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
    count: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), count: 0 }
    }

    /// Add the next vector. Returns `Some(c)` with `v_k = Σ c_i v_i` if it is dependent.
    pub fn push(&mut self, v: &[Rational], cap: usize) -> Option<Vec<Rational>> {
        let k = self.count;
        let mut w = v.to_vec();
        // combination expressing w in terms of originals: start with e_k
        let mut comb = vec![Rational::zero(); cap];
        comb[k] = Rational::one();
        for (p, row, rc) in &self.rows {
            let f = w[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in w.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &(b * &f);
                }
            }
            for (a, b) in comb.iter_mut().zip(rc) {
                if !b.is_zero() {
                    *a -= &(b * &f);
                }
            }
        }
        match w.iter().position(|c| !c.is_zero()) {
            None => {
                // 0 = v_k - Σ (-comb_i) v_i
                Some(comb[..k].iter().map(|c| -c).collect())
            }
            Some(p) => {
                let inv = w[p].recip().unwrap();
                for a in &mut w {
                    *a *= &inv;
                }
                for a in &mut comb {
                    *a *= &inv;
                }
                // keep rows reduced at the new pivot
                for (_, row, rc) in &mut self.rows {
                    let f = row[p].clone();
                    if f.is_zero() {
                        continue;
                    }
                    for (a, b) in row.iter_mut().zip(&w) {
                        if !b.is_zero() {
                            *a -= &(b * &f);
                        }
                    }
                    for (a, b) in rc.iter_mut().zip(&comb) {
                        if !b.is_zero() {
                            *a -= &(b * &f);
                        }
                    }
                }
                self.rows.push((p, w, comb));
                self.count += 1;
                None
            }
        }
    }
}

/// Minimal polynomial of `mat` relative to the start vector `v0`, plus the Krylov vectors.
pub(crate) fn krylov_minpoly(mat: &QMatrix, v0: &[Rational]) -> (UniPoly, Vec<Vec<Rational>>) {
    let n = mat.n;
    let mut ech = Echelon::new();
    let mut vecs: Vec<Vec<Rational>> = Vec::new();
    let mut v = v0.to_vec();
    loop {
        if let Some(c) = ech.push(&v, n + 1) {
            // t^k - Σ c_i t^i
            let k = vecs.len();
            let mut coeffs: Vec<Rational> = c.iter().map(|x| -x).collect();
            coeffs.resize(k, Rational::zero());
            coeffs.push(Rational::one());
            return (UniPoly::new(coeffs), vecs);
        }
        let next = mat.apply(&v);
        vecs.push(v);
        v = next;
    }
}

/// Solve `K c = b` where the columns of `K` are `cols` (square, invertible).
pub(crate) fn solve_columns(cols: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = cols.len();
    // augmented row-major matrix
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        let inv = a[k][k].recip().unwrap();
        for x in a[k][k..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            let (rk, ri) = if i < k {
                let (lo, hi) = a.split_at_mut(k);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = a.split_at_mut(i);
                (&lo[k], &mut hi[0])
            };
            for j in k..=n {
                if !rk[j].is_zero() {
                    let t = &rk[j] * &f;
                    ri[j] -= &t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}
