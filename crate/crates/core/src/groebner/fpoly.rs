//! Arithmetic modulo word-sized primes and polynomials over `F_p`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ipoly::{find_reducer, GbPoly, Reducer};
use crate::numeric::Rational;
use crate::poly::{Monomial, MonomialOrder, MultiPoly};

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62` in decreasing order.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) + 1;
    std::iter::from_fn(move || loop {
        n -= 2;
        if is_prime(n) {
            return Some(n);
        }
    })
}

pub(crate) fn int_mod(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// `r mod p`, or `None` if `p` divides the denominator.
pub(crate) fn rat_mod(r: &Rational, p: u64) -> Option<u64> {
    let d = int_mod(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(int_mod(r.numer(), p), inv_mod(d, p), p))
}

/// Polynomial over `F_p` with terms sorted decreasingly; monic once normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FpPoly {
    pub p: u64,
    pub terms: Vec<(Monomial, u64)>,
}

impl FpPoly {
    /// Image of `f`, or `None` if `p` divides a denominator.
    pub fn from_multi(f: &MultiPoly, p: u64, order: MonomialOrder) -> Option<FpPoly> {
        let mut terms = Vec::with_capacity(f.nterms());
        for (m, c) in f.terms() {
            let c = rat_mod(c, p)?;
            if c != 0 {
                terms.push((m.clone(), c));
            }
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Some(FpPoly { p, terms })
    }

    pub fn lc(&self) -> u64 {
        self.terms[0].1
    }
}

/// `rest - c·mono·q`.
fn sub_mul(
    rest: &[(Monomial, u64)],
    q: &[(Monomial, u64)],
    c: u64,
    mono: &Monomial,
    order: MonomialOrder,
    p: u64,
) -> Vec<(Monomial, u64)> {
    let mut out = Vec::with_capacity(rest.len() + q.len());
    let mut i = 0;
    let mut j = 0;
    let mut shifted = q.iter().map(|(m, k)| (m.mul(mono), mul_mod(*k, c, p)));
    let mut cur = shifted.next();
    while i < rest.len() || cur.is_some() {
        let ord = match &cur {
            None => Ordering::Greater,
            Some(_) if i == rest.len() => Ordering::Less,
            Some((m, _)) => order.cmp(&rest[i].0, m),
        };
        match ord {
            Ordering::Greater => {
                out.push(rest[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, k) = cur.take().unwrap();
                out.push((m, sub_mod(0, k, p)));
                cur = shifted.next();
                j += 1;
            }
            Ordering::Equal => {
                let (m, k) = cur.take().unwrap();
                let v = sub_mod(rest[i].1, k, p);
                if v != 0 {
                    out.push((m, v));
                }
                i += 1;
                cur = shifted.next();
                j += 1;
            }
        }
    }
    debug_assert_eq!(j, q.len());
    out
}

impl GbPoly for FpPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn len(&self) -> usize {
        self.terms.len()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    fn one_like(&self) -> Self {
        FpPoly { p: self.p, terms: vec![(Monomial::one(self.lm().nvars()), 1)] }
    }

    fn normalize(&mut self) {
        if self.terms.is_empty() || self.lc() == 1 {
            return;
        }
        let inv = inv_mod(self.lc(), self.p);
        for t in &mut self.terms {
            t.1 = mul_mod(t.1, inv, self.p);
        }
    }

    fn spoly(f: &Self, g: &Self, lcm: &Monomial, order: MonomialOrder) -> Self {
        let p = f.p;
        let mf = f.lm().quotient_of(lcm);
        let mg = g.lm().quotient_of(lcm);
        // lc(g)·mf·f - lc(f)·mg·g
        let left: Vec<_> = f.terms.iter().map(|(m, c)| (m.mul(&mf), mul_mod(*c, g.lc(), p))).collect();
        FpPoly { p, terms: sub_mul(&left, &g.terms, f.lc(), &mg, order, p) }
    }

    fn reduce(&self, reducers: &[Reducer<'_, Self>], order: MonomialOrder, full: bool) -> Self {
        let p = self.p;
        let mut done: Vec<(Monomial, u64)> = Vec::new();
        let mut rest = self.terms.clone();
        let mut start = 0usize;
        while start < rest.len() {
            let m = &rest[start].0;
            match find_reducer(reducers, m) {
                None => {
                    if !full {
                        break;
                    }
                    done.push(rest[start].clone());
                    start += 1;
                }
                Some(g) => {
                    // reducers are monic
                    let c = mul_mod(rest[start].1, inv_mod(g.lc(), p), p);
                    let mono = g.lm().quotient_of(m);
                    rest = sub_mul(&rest[start..], &g.terms, c, &mono, order, p);
                    start = 0;
                }
            }
        }
        done.extend(rest.drain(start..));
        FpPoly { p, terms: done }
    }
}
