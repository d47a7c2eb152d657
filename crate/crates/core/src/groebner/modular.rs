//! Multimodular parametrizations: images modulo word-sized primes, Chinese
//! remaindering, rational reconstruction and an exact check over Q.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::buchberger;
use super::fpoly::{add_mod, int_mod, inv_mod, mul_mod, primes, sub_mod, FpPoly};
use super::ipoly::{GbPoly, Reducer};
use super::quotient::{staircase_dim, standard_monomials};
use super::ratpar::{LAMBDA_BOUND, LAMBDA_TRIES};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::param::RationalParametrization;
use crate::poly::{Monomial, MonomialOrder, MultiPoly, UniPoly};

/// Primes tried before giving up.
pub const MAX_PRIMES: usize = 200;
/// Agreeing primes required to accept an empty or positive-dimensional answer.
const AGREEMENT: usize = 3;

const ORDER: MonomialOrder = MonomialOrder::DegRevLex;

/// Reduced Gröbner basis modulo `p`, or `None` if `p` divides a denominator.
pub(crate) fn groebner_mod(polys: &[MultiPoly], p: u64, order: MonomialOrder) -> Option<Vec<FpPoly>> {
    let input = polys.iter().map(|f| FpPoly::from_multi(f, p, order)).collect::<Option<Vec<_>>>()?;
    Some(buchberger::compute(input, order))
}

fn lms(gb: &[FpPoly]) -> Vec<Monomial> {
    gb.iter().map(|g| g.lm().clone()).collect()
}

fn is_unit(gb: &[FpPoly]) -> bool {
    gb.len() == 1 && gb[0].is_constant()
}

// univariate helpers, coefficients from low to high degree

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn uni_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), inv, p);
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = sub_mod(r[k + i], mul_mod(c, bi, p), p);
        }
        trim(&mut r);
    }
    r
}

fn uni_quo(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![];
    }
    let inv = inv_mod(b[db], p);
    let mut q = vec![0; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), inv, p);
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = sub_mod(r[k + i], mul_mod(c, bi, p), p);
        }
        trim(&mut r);
    }
    q
}

fn uni_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = uni_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for c in &mut a {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn uni_derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut d: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect();
    trim(&mut d);
    d
}

/// Squarefree part; the degree drops iff the input has a repeated factor.
fn uni_squarefree(a: &[u64], p: u64) -> Vec<u64> {
    let g = uni_gcd(a, &uni_derivative(a, p), p);
    if g.len() <= 1 {
        return a.to_vec();
    }
    uni_quo(a, &g, p)
}

/// `Z_p[x]/I` in the standard-monomial basis.
struct ModQuotient<'a> {
    p: u64,
    nv: usize,
    gb: &'a [FpPoly],
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mults: Vec<Option<Vec<Vec<u64>>>>,
}

impl<'a> ModQuotient<'a> {
    fn new(gb: &'a [FpPoly], nv: usize, p: u64) -> Self {
        let basis = standard_monomials(&lms(gb), nv, usize::MAX).expect("no cap");
        let index = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        ModQuotient { p, nv, gb, basis, index, mults: vec![None; nv] }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn unit(&self, k: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        v[k] = 1;
        v
    }

    fn coords(&self, m: &Monomial) -> Vec<u64> {
        if let Some(&k) = self.index.get(m) {
            return self.unit(k);
        }
        let reducers: Vec<Reducer<'_, FpPoly>> =
            self.gb.iter().map(|g| Reducer { poly: g, mask: g.lm().divmask() }).collect();
        let f = FpPoly { p: self.p, terms: vec![(m.clone(), 1)] };
        let mut v = vec![0; self.dim()];
        for (mono, c) in f.reduce(&reducers, ORDER, true).terms {
            v[self.index[&mono]] = c;
        }
        v
    }

    fn mult(&mut self, i: usize) -> &Vec<Vec<u64>> {
        if self.mults[i].is_none() {
            let xi = Monomial::var(self.nv, i);
            let cols = self.basis.iter().map(|b| self.coords(&b.mul(&xi))).collect();
            self.mults[i] = Some(cols);
        }
        self.mults[i].as_ref().unwrap()
    }
}

fn apply(cols: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    let n = v.len();
    let mut out = vec![0u128; n];
    let pp = p as u128;
    for (j, &vj) in v.iter().enumerate() {
        if vj == 0 {
            continue;
        }
        for (o, &c) in out.iter_mut().zip(&cols[j]) {
            if c != 0 {
                *o = (*o + c as u128 * vj as u128) % pp;
            }
        }
    }
    out.into_iter().map(|x| x as u64).collect()
}

/// Minimal polynomial (monic, low to high) of `cols` relative to `v0`, and the Krylov vectors.
fn krylov_minpoly(cols: &[Vec<u64>], v0: &[u64], p: u64) -> (Vec<u64>, Vec<Vec<u64>>) {
    let n = v0.len();
    // reduced rows: (pivot, vector, combination of Krylov vectors)
    let mut rows: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut vecs: Vec<Vec<u64>> = Vec::new();
    let mut v = v0.to_vec();
    loop {
        let k = vecs.len();
        let mut w = v.clone();
        let mut comb = vec![0u64; n + 1];
        comb[k] = 1;
        for (piv, row, rc) in &rows {
            let f = w[*piv];
            if f == 0 {
                continue;
            }
            for (a, &b) in w.iter_mut().zip(row) {
                *a = sub_mod(*a, mul_mod(b, f, p), p);
            }
            for (a, &b) in comb.iter_mut().zip(rc) {
                *a = sub_mod(*a, mul_mod(b, f, p), p);
            }
        }
        match w.iter().position(|&c| c != 0) {
            None => {
                // comb·(v_0..v_k) = 0 with comb[k] = 1
                comb.truncate(k + 1);
                return (comb, vecs);
            }
            Some(piv) => {
                let inv = inv_mod(w[piv], p);
                for a in w.iter_mut().chain(comb.iter_mut()) {
                    *a = mul_mod(*a, inv, p);
                }
                for (_, row, rc) in &mut rows {
                    let f = row[piv];
                    if f == 0 {
                        continue;
                    }
                    for (a, &b) in row.iter_mut().zip(&w) {
                        *a = sub_mod(*a, mul_mod(b, f, p), p);
                    }
                    for (a, &b) in rc.iter_mut().zip(&comb) {
                        *a = sub_mod(*a, mul_mod(b, f, p), p);
                    }
                }
                rows.push((piv, w, comb));
            }
        }
        let next = apply(cols, &v, p);
        vecs.push(v);
        v = next;
    }
}

/// Solve `K c = b` for several right-hand sides; `K` has columns `cols`.
fn solve_many(cols: &[Vec<u64>], rhs: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = cols.len();
    let r = rhs.len();
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| cols.iter().map(|c| c[i]).chain(rhs.iter().map(|b| b[i])).collect())
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&i| a[i][k] != 0)?;
        a.swap(piv, k);
        let inv = inv_mod(a[k][k], p);
        for x in a[k][k..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let rk = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let f = row[k];
            if i == k || f == 0 {
                continue;
            }
            for j in k..n + r {
                if rk[j] != 0 {
                    row[j] = sub_mod(row[j], mul_mod(rk[j], f, p), p);
                }
            }
        }
    }
    Some((0..r).map(|j| a.iter().map(|row| row[n + j]).collect()).collect())
}

/// What one prime says about the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Signature {
    Empty,
    PositiveDimensional(i64),
    NoSeparatingForm,
    /// Leading monomials of the (radical) basis and the index of the separating form.
    Shape(Vec<Monomial>, usize),
}

struct ShapeImage {
    mu: Vec<u64>,
    q: Vec<Vec<u64>>,
}

/// `None` when no form separates or the quotient is not reduced.
fn shape_mod(q: &mut ModQuotient<'_>, lambdas: &[Vec<i64>]) -> Option<(usize, ShapeImage)> {
    let p = q.p;
    let dim = q.dim();
    let e0 = q.unit(0);
    let xs: Vec<Vec<u64>> = (0..q.nv).map(|i| q.coords(&Monomial::var(q.nv, i))).collect();
    for (k, lambda) in lambdas.iter().enumerate() {
        let mut t = vec![vec![0u64; dim]; dim];
        for (i, &l) in lambda.iter().enumerate() {
            if l == 0 {
                continue;
            }
            let c = (l.rem_euclid(p as i64)) as u64;
            let m = q.mult(i);
            for (tc, mc) in t.iter_mut().zip(m) {
                for (a, &b) in tc.iter_mut().zip(mc) {
                    *a = add_mod(*a, mul_mod(b, c, p), p);
                }
            }
        }
        let (mu, krylov) = krylov_minpoly(&t, &e0, p);
        if mu.len() - 1 != dim {
            continue;
        }
        if uni_squarefree(&mu, p).len() < mu.len() {
            return None;
        }
        let coords = solve_many(&krylov, &xs, p).expect("Krylov basis is invertible");
        return Some((k, ShapeImage { mu, q: coords }));
    }
    None
}

/// Image of the parametrization modulo `p`; `None` for a prime dividing a denominator.
fn image_mod(polys: &[MultiPoly], nv: usize, p: u64, lambdas: &[Vec<i64>]) -> Option<(Signature, Option<ShapeImage>)> {
    let mut gb = groebner_mod(polys, p, ORDER)?;
    if is_unit(&gb) {
        return Some((Signature::Empty, None));
    }
    let d = staircase_dim(&lms(&gb), nv);
    if d > 0 {
        return Some((Signature::PositiveDimensional(d), None));
    }
    for round in 0..2 {
        let mut q = ModQuotient::new(&gb, nv, p);
        if let Some((k, img)) = shape_mod(&mut q, lambdas) {
            return Some((Signature::Shape(lms(&gb), k), Some(img)));
        }
        if round == 1 {
            break;
        }
        // add the squarefree parts of the eliminants
        let e0 = q.unit(0);
        let mut extra = Vec::new();
        for i in 0..nv {
            let (mu, _) = krylov_minpoly(q.mult(i), &e0, p);
            let sf = uni_squarefree(&mu, p);
            if sf.len() < mu.len() {
                let terms = sf
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(e, &c)| {
                        let mut m = Monomial::one(nv);
                        m.set_exp(i, e as u16);
                        (m, c)
                    })
                    .collect();
                extra.push(FpPoly { p, terms });
            }
        }
        if extra.is_empty() {
            break;
        }
        let mut gens = gb.clone();
        gens.extend(extra);
        gb = buchberger::compute(gens, ORDER);
    }
    Some((Signature::NoSeparatingForm, None))
}

/// Chinese remaindering of residues, kept symmetric in `(-M/2, M/2]`.
struct Accumulator {
    count: usize,
    modulus: BigInt,
    mu: Vec<BigInt>,
    q: Vec<Vec<BigInt>>,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator { count: 0, modulus: BigInt::one(), mu: vec![], q: vec![] }
    }

    fn add(&mut self, img: &ShapeImage, p: u64) {
        if self.count == 0 {
            self.mu = img.mu.iter().map(|&c| BigInt::from(c)).collect();
            self.q = img.q.iter().map(|v| v.iter().map(|&c| BigInt::from(c)).collect()).collect();
            self.modulus = BigInt::from(p);
            self.count = 1;
            return;
        }
        let m = &self.modulus;
        let pb = BigInt::from(p);
        // x ≡ a (mod m), x ≡ b (mod p): x = a + m·((b - a)·m^{-1} mod p)
        let minv = inv_mod(int_mod(m, p), p);
        let crt = |a: &mut BigInt, b: u64| {
            let diff = sub_mod(b, int_mod(a, p), p);
            let k = mul_mod(diff, minv, p);
            *a += m * BigInt::from(k);
        };
        for (a, &b) in self.mu.iter_mut().zip(&img.mu) {
            crt(a, b);
        }
        for (va, vb) in self.q.iter_mut().zip(&img.q) {
            for (a, &b) in va.iter_mut().zip(vb) {
                crt(a, b);
            }
        }
        self.modulus = &self.modulus * &pb;
        self.count += 1;
    }

    fn reconstruct(&self) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
        let mu = self.mu.iter().map(|a| rational_reconstruction(a, &self.modulus)).collect::<Option<Vec<_>>>()?;
        let q = self
            .q
            .iter()
            .map(|v| v.iter().map(|a| rational_reconstruction(a, &self.modulus)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some((mu, q))
    }
}

/// The fraction `r/s ≡ a (mod m)` with `|r|, s ≤ sqrt(m/2)`, if there is one.
pub(crate) fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let a = a.mod_floor(m);
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Rational::new(r1, s1).ok()
}

type IntPoly = Vec<BigInt>;

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// True iff `qlast` divides `a`, by pseudo-division with content removal.
fn int_divisible(a: &mut IntPoly, qlast: &[BigInt]) -> bool {
    let dq = qlast.len() - 1;
    let lead = &qlast[dq];
    loop {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        if a.len() <= dq {
            return a.is_empty();
        }
        let k = a.len() - 1 - dq;
        let c = a.last().unwrap().clone();
        let g = c.gcd(lead);
        let (fa, fq) = (lead / &g, c / &g);
        for x in a.iter_mut() {
            *x *= &fa;
        }
        for (i, y) in qlast.iter().enumerate() {
            a[k + i] -= &fq * y;
        }
        a.pop();
        let content = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !content.is_zero() && !content.is_one() {
            for x in a.iter_mut() {
                *x /= &content;
            }
        }
    }
}

/// True iff every polynomial vanishes on the points encoded by `rp` (with `q0 = 1`).
///
/// With `q_i = Q_i/d` over the integers, checks that `qlast` divides
/// `d^deg(g) g(Q/d)` for every `g`.
pub(crate) fn vanishes_on(polys: &[MultiPoly], rp: &RationalParametrization) -> Result<bool> {
    if rp.is_empty() {
        return Ok(true);
    }
    debug_assert!(rp.q0().is_constant());
    let qlast = rp.qlast().primitive_integer_coeffs();
    let d = crate::numeric::lcm_denoms(rp.q().iter().flat_map(|q| q.coeffs()));
    let big_q: Vec<IntPoly> = rp
        .q()
        .iter()
        .map(|q| q.coeffs().iter().map(|c| c.numer() * (&d / c.denom())).collect())
        .collect();
    let mut powers: Vec<Vec<IntPoly>> = big_q.iter().map(|_| vec![vec![BigInt::one()]]).collect();
    let mut dpow: Vec<BigInt> = vec![BigInt::one()];
    for g in polys {
        let deg = g.total_degree().max(0) as usize;
        let l = crate::numeric::lcm_denoms(g.terms().map(|(_, c)| c));
        let mut acc: IntPoly = vec![];
        for (m, c) in g.terms() {
            let mut t: IntPoly = vec![c.numer() * (&l / c.denom())];
            for (i, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = int_mul(powers[i].last().unwrap(), &big_q[i]);
                    powers[i].push(next);
                }
                t = int_mul(&t, &powers[i][e]);
            }
            let k = deg - m.degree() as usize;
            while dpow.len() <= k {
                let next = dpow.last().unwrap() * &d;
                dpow.push(next);
            }
            if acc.len() < t.len() {
                acc.resize(t.len(), BigInt::zero());
            }
            for (a, x) in acc.iter_mut().zip(&t) {
                *a += x * &dpow[k];
            }
        }
        if !int_divisible(&mut acc, &qlast) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn lambda_list(nv: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![(0..nv).map(|i| i64::from(i == 0)).collect::<Vec<_>>()];
    while out.len() < LAMBDA_TRIES {
        let l: Vec<i64> = (0..nv).map(|_| rng.gen_range(-LAMBDA_BOUND..=LAMBDA_BOUND)).collect();
        if l.iter().any(|&c| c != 0) {
            out.push(l);
        }
    }
    out
}

/// Parametrization of the solutions of `polys` computed modulo primes and
/// accepted only once it vanishes exactly on every input polynomial.
///
/// Empty and positive-dimensional answers are accepted when enough primes agree.
pub fn rat_par_modular(polys: &[MultiPoly], seed: u64) -> Result<RationalParametrization> {
    let Some(first) = polys.first() else {
        return Err(Error::InvalidInput("cannot infer the ring of an empty system".into()));
    };
    let ring = first.ring().clone();
    let polys = polys.iter().map(|f| f.with_ring(&ring)).collect::<Result<Vec<_>>>()?;
    let nv = ring.nvars();
    let lambdas = lambda_list(nv, seed);
    let mut votes: HashMap<Signature, Accumulator> = HashMap::new();
    for p in primes().take(MAX_PRIMES) {
        let Some((sig, img)) = image_mod(&polys, nv, p, &lambdas) else { continue };
        let acc = votes.entry(sig.clone()).or_insert_with(Accumulator::new);
        match (&sig, img) {
            (Signature::Shape(_, k), Some(img)) => {
                acc.add(&img, p);
                let Some((mu, mut q)) = acc.reconstruct() else { continue };
                let mut qs: Vec<UniPoly> = q.drain(..).map(UniPoly::new).collect();
                if *k == 0 {
                    qs[0] = UniPoly::t();
                }
                let Ok(rp) = RationalParametrization::new(UniPoly::one(), qs, UniPoly::new(mu)) else { continue };
                if vanishes_on(&polys, &rp)? {
                    return Ok(rp);
                }
            }
            _ => {
                acc.count += 1;
                if acc.count >= AGREEMENT {
                    return match sig {
                        Signature::Empty => Ok(RationalParametrization::empty(nv)),
                        Signature::PositiveDimensional(d) => Err(Error::PositiveDimensional(d)),
                        _ => Err(Error::Genericity("no separating linear form found".into())),
                    };
                }
            }
        }
    }
    Err(Error::Reconstruction(MAX_PRIMES))
}

/// Whether the polynomials generate the unit ideal, decided modulo primes:
/// the answer is returned once `AGREEMENT` consecutive primes agree on it.
pub fn unit_ideal_modular(polys: &[MultiPoly]) -> Result<bool> {
    let mut last: Option<bool> = None;
    let mut run = 0;
    for p in primes().take(MAX_PRIMES) {
        let Some(gb) = groebner_mod(polys, p, ORDER) else { continue };
        let unit = is_unit(&gb);
        if last == Some(unit) {
            run += 1;
        } else {
            last = Some(unit);
            run = 1;
        }
        if run == AGREEMENT {
            return Ok(unit);
        }
    }
    Err(Error::Reconstruction(MAX_PRIMES))
}
