//! Integer-coefficient polynomials kept sorted by a monomial order, used
//! inside the Gröbner engine.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::{gcd_all, lcm_denoms, Rational};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Ring};

/// Terms sorted decreasingly; primitive with positive leading coefficient
/// once normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// Clear denominators; returns the polynomial and the positive factor it was multiplied by.
    pub fn from_multi(p: &MultiPoly, order: MonomialOrder) -> (IPoly, BigInt) {
        let coeffs: Vec<&Rational> = p.terms().map(|(_, c)| c).collect();
        let l = lcm_denoms(coeffs.iter().copied());
        let mut terms: Vec<(Monomial, BigInt)> =
            p.terms().map(|(m, c)| (m.clone(), c.numer() * (&l / c.denom()))).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        (IPoly { terms }, l)
    }

    /// Monic version over Q.
    pub fn to_monic_multi(&self, ring: &Arc<Ring>) -> MultiPoly {
        let lc = Rational::from(self.lc().clone());
        let inv = lc.recip().unwrap();
        MultiPoly::from_terms(ring, self.terms.iter().map(|(m, c)| (m.clone(), &Rational::from(c.clone()) * &inv)))
            .unwrap()
    }

    pub fn content(&self) -> BigInt {
        gcd_all(self.terms.iter().map(|t| &t.1))
    }

    /// Divide by the content and make the leading coefficient positive.
    /// Returns the signed divisor.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
        g
    }
}

/// `a·p - b·(mono·q)`, where the leading terms cancel.
pub(crate) fn combine(
    p: &[(Monomial, BigInt)],
    a: &BigInt,
    q: &[(Monomial, BigInt)],
    b: &BigInt,
    mono: &Monomial,
    order: MonomialOrder,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let mut i = 0;
    let mut j = 0;
    let a_one = a.is_one();
    let shifted: Vec<Monomial> = q.iter().map(|(m, _)| m.mul(mono)).collect();
    while i < p.len() || j < q.len() {
        let ord = if i == p.len() {
            Ordering::Less
        } else if j == q.len() {
            Ordering::Greater
        } else {
            order.cmp(&p[i].0, &shifted[j])
        };
        match ord {
            Ordering::Greater => {
                let c = if a_one { p[i].1.clone() } else { &p[i].1 * a };
                out.push((p[i].0.clone(), c));
                i += 1;
            }
            Ordering::Less => {
                out.push((shifted[j].clone(), -(&q[j].1 * b)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if a_one { p[i].1.clone() } else { &p[i].1 * a } - &q[j].1 * b;
                if !c.is_zero() {
                    out.push((p[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Polynomial types the Buchberger engine can work with.
pub(crate) trait GbPoly: Clone + Sized {
    fn lm(&self) -> &Monomial;
    fn len(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn is_constant(&self) -> bool;
    fn max_degree(&self) -> u32;
    /// The constant `1` with the same ambient data.
    fn one_like(&self) -> Self;
    /// Primitive or monic representative.
    fn normalize(&mut self);
    fn spoly(f: &Self, g: &Self, lcm: &Monomial, order: MonomialOrder) -> Self;
    /// Full reduction, or top reduction only when `full` is false.
    fn reduce(&self, reducers: &[Reducer<'_, Self>], order: MonomialOrder, full: bool) -> Self;
}

/// A reducer with its leading-monomial divisibility mask.
pub(crate) struct Reducer<'a, P = IPoly> {
    pub poly: &'a P,
    pub mask: u64,
}

pub(crate) fn find_reducer<'a, P: GbPoly>(reducers: &[Reducer<'a, P>], m: &Monomial) -> Option<&'a P> {
    let mm = m.divmask();
    reducers
        .iter()
        .filter(|r| r.mask & !mm == 0 && r.poly.lm().divides(m))
        // shortest reducer first keeps intermediate swell down
        .min_by_key(|r| r.poly.len())
        .map(|r| r.poly)
}

impl GbPoly for IPoly {
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
        IPoly { terms: vec![(Monomial::one(self.lm().nvars()), BigInt::one())] }
    }

    fn normalize(&mut self) {
        self.make_primitive();
    }

    fn spoly(f: &Self, g: &Self, lcm: &Monomial, order: MonomialOrder) -> Self {
        let mf = f.lm().quotient_of(lcm);
        let mg = g.lm().quotient_of(lcm);
        let l = f.lc().lcm(g.lc());
        let a = &l / f.lc();
        let b = &l / g.lc();
        // a·mf·f - b·mg·g
        let left: Vec<_> = f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
        IPoly { terms: combine(&left, &a, &g.terms, &b, &mg, order) }
    }

    fn reduce(&self, reducers: &[Reducer<'_, Self>], order: MonomialOrder, full: bool) -> Self {
        if full {
            reduce_full(self, reducers, order).0
        } else {
            reduce_top(self, reducers, order)
        }
    }
}

/// Full reduction over the integers.
///
/// Returns `(r, num, den)` with `p ≡ (num/den)·r` modulo the reducers' ideal,
/// no term of `r` divisible by a reducer's leading monomial.
pub(crate) fn reduce_full(
    p: &IPoly,
    reducers: &[Reducer<'_>],
    order: MonomialOrder,
) -> (IPoly, BigInt, BigInt) {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut done: Vec<(Monomial, BigInt)> = Vec::new();
    let mut rest = p.terms.clone();
    let mut steps = 0usize;
    // `rest` holds the unprocessed tail in order; its head is the next term to look at
    let mut start = 0usize;
    while start < rest.len() {
        let (m, c) = (&rest[start].0, &rest[start].1);
        match find_reducer(reducers, m) {
            None => {
                done.push(rest[start].clone());
                start += 1;
            }
            Some(g) => {
                let g0 = c.gcd(g.lc());
                let a = g.lc() / &g0;
                let b = c / &g0;
                let mono = g.lm().quotient_of(m);
                let next = combine(&rest[start..], &a, &g.terms, &b, &mono, order);
                if !a.is_one() {
                    for t in &mut done {
                        t.1 *= &a;
                    }
                    den *= &a;
                }
                rest = next;
                start = 0;
                steps += 1;
                if steps % 8 == 0 {
                    let g = gcd_all(done.iter().chain(rest.iter()).map(|t| &t.1));
                    if !g.is_zero() && !g.is_one() {
                        for t in done.iter_mut().chain(rest.iter_mut()) {
                            t.1 = &t.1 / &g;
                        }
                        num *= g;
                    }
                }
            }
        }
    }
    let mut r = IPoly { terms: done };
    if !r.is_zero() {
        let g = r.make_primitive();
        num *= g;
    }
    (r, num, den)
}

/// Reduce only until the leading monomial is irreducible.
pub(crate) fn reduce_top(p: &IPoly, reducers: &[Reducer<'_>], order: MonomialOrder) -> IPoly {
    let mut rest = p.terms.clone();
    let mut steps = 0usize;
    while let Some((m, c)) = rest.first() {
        let Some(g) = find_reducer(reducers, m) else { break };
        let g0 = c.gcd(g.lc());
        let a = g.lc() / &g0;
        let b = c / &g0;
        let mono = g.lm().quotient_of(m);
        rest = combine(&rest, &a, &g.terms, &b, &mono, order);
        steps += 1;
        if steps % 8 == 0 {
            let mut t = IPoly { terms: std::mem::take(&mut rest) };
            t.make_primitive();
            rest = t.terms;
        }
    }
    let mut r = IPoly { terms: rest };
    r.make_primitive();
    r
}

/// Exact normal form over Q of a rational polynomial.
pub(crate) fn normal_form_q(p: &MultiPoly, reducers: &[Reducer<'_>], order: MonomialOrder) -> Vec<(Monomial, Rational)> {
    let (ip, l) = IPoly::from_multi(p, order);
    if ip.is_zero() {
        return vec![];
    }
    let (r, num, den) = reduce_full(&ip, reducers, order);
    let f = Rational::new(num, den * l).unwrap();
    r.terms.into_iter().map(|(m, c)| (m, &Rational::from(c) * &f)).collect()
}
