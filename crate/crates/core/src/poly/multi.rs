use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::poly::monomial::{Monomial, MonomialOrder};
use crate::poly::uni::UniPoly;

/// Ordered roster of variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Ring> {
        Arc::new(Ring { names: names.into_iter().map(Into::into).collect() })
    }

    /// Ring with variables `prefix1 .. prefixN`.
    pub fn indexed(prefix: &str, n: usize) -> Arc<Ring> {
        Ring::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.names.join(","))
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        same_ring(&self.ring, &o.ring) && self.terms == o.terms
    }
}

impl Eq for MultiPoly {}

/// Value substituted for a variable.
#[derive(Clone, Debug)]
pub enum Subst {
    Value(Rational),
    Poly(MultiPoly),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index {i} out of range");
        let mut p = Self::zero(ring);
        p.terms.insert(Monomial::var(ring.nvars(), i), Rational::one());
        p
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(Error::RingMismatch(format!(
                    "monomial with {} exponents in a ring of {} variables",
                    m.nvars(),
                    ring.nvars()
                )));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.nvars())).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms.keys().map(|m| m.exp(var) as i64).max().unwrap_or(-1)
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    fn check_ring(&self, o: &MultiPoly) -> Result<()> {
        if same_ring(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{:?} vs {:?}", self.ring, o.ring)))
        }
    }

    pub fn checked_add(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), &-c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(o)?;
        let mut r = MultiPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut r = MultiPoly::one(&self.ring);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.set_exp(var, e - 1);
            r.add_term(m2, &(c * &Rational::from(e as i64)));
        }
        r
    }

    /// Replace the assigned variables in place; unassigned variables stay.
    /// Polynomial images must live in this polynomial's ring.
    pub fn substitute(&self, assignments: &[(usize, Subst)]) -> Result<MultiPoly> {
        let images: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| MultiPoly::var(&self.ring, i))
            .collect();
        let mut images = images;
        for (i, s) in assignments {
            if *i >= self.nvars() {
                return Err(Error::InvalidInput(format!("variable index {i} out of range")));
            }
            images[*i] = match s {
                Subst::Value(v) => MultiPoly::constant(&self.ring, v.clone()),
                Subst::Poly(p) => {
                    self.check_ring(p)?;
                    p.clone()
                }
            };
        }
        self.compose(&self.ring, &images)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`, all in `target`.
    pub fn compose(&self, target: &Arc<Ring>, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        for im in images {
            if !same_ring(im.ring(), target) {
                return Err(Error::RingMismatch("substitution image outside the target ring".into()));
            }
        }
        // cache powers per variable
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(target), p.clone()]).collect();
        let mut r = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (m2, c2) in t.terms {
                r.add_term(m2, &c2);
            }
        }
        Ok(r)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= &point[i].pow(e as u32);
                }
            }
            s += &t;
        }
        Ok(s)
    }

    /// Coefficients with respect to `var`: `self = Σ_k out[k] · var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var);
        if d < 0 {
            return vec![];
        }
        let mut out = vec![MultiPoly::zero(&self.ring); d as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            let mut m2 = m.clone();
            m2.set_exp(var, 0);
            out[e].add_term(m2, c);
        }
        out
    }

    /// Univariate view when only `var` occurs.
    pub fn to_unipoly(&self, var: usize) -> Result<UniPoly> {
        let mut coeffs = vec![Rational::zero(); (self.degree_in(var).max(0) + 1) as usize];
        for (m, c) in &self.terms {
            if m.support().any(|i| i != var) {
                return Err(Error::InvalidInput("polynomial is not univariate".into()));
            }
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn from_unipoly(ring: &Arc<Ring>, var: usize, p: &UniPoly) -> MultiPoly {
        let mut r = MultiPoly::zero(ring);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = Monomial::one(ring.nvars());
            m.set_exp(var, k as u16);
            r.add_term(m, c);
        }
        r
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_ring(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = MonomialOrder::Lex;
        let (lm, lc) = d.leading(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(&self.ring);
        while let Some((m, c)) = rem.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(&m);
            let qc = c.checked_div(&lc)?;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            q.add_term(qm, &qc);
        }
        Ok(Some(q))
    }

    /// Re-embed into a ring with the same variable count (e.g. renamed variables).
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Result<MultiPoly> {
        if ring.nvars() != self.nvars() {
            return Err(Error::RingMismatch("variable count differs".into()));
        }
        Ok(MultiPoly { ring: ring.clone(), terms: self.terms.clone() })
    }
}

pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    match op {
        PolyOp::Add => p.checked_add(q),
        PolyOp::Sub => p.checked_sub(q),
        PolyOp::Mul => p.checked_mul(q),
    }
}

pub fn partial_derivative(p: &MultiPoly, var: usize) -> MultiPoly {
    p.partial_derivative(var)
}

// Operator sugar for internal code; panics on ring mismatch.
impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.checked_add(o).expect("ring mismatch")
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.checked_sub(o).expect("ring mismatch")
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.checked_mul(o).expect("ring mismatch")
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.sign() < 0;
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.names[i].clone()
                    } else {
                        format!("{}^{}", self.ring.names[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Arc<Ring> {
        Ring::indexed("x", 2)
    }

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring2();
        let x1 = MultiPoly::var(&r, 0);
        let x2 = MultiPoly::var(&r, 1);
        let one = MultiPoly::one(&r);
        let p = poly_arith(&(&x1 + &one), &(&x1 - &one), PolyOp::Mul).unwrap();
        assert_eq!(p, &(&x1 * &x1) - &one);
        assert_eq!(poly_arith(&p, &MultiPoly::zero(&r), PolyOp::Add).unwrap(), p);
        let d = poly_arith(&(&x1 * &x2), &x2, PolyOp::Sub).unwrap();
        assert_eq!(d.to_string(), "x1*x2 - x2");
        let other = Ring::indexed("y", 2);
        assert!(poly_arith(&x1, &MultiPoly::var(&other, 0), PolyOp::Add).is_err());
    }

    #[test]
    fn derivative_examples() {
        let r = ring2();
        let x1 = MultiPoly::var(&r, 0);
        let x2 = MultiPoly::var(&r, 1);
        let p = &(&x1 * &x1) * &x2;
        assert_eq!(partial_derivative(&p, 0), (&x1 * &x2).scale(&q(2)));
        assert!(partial_derivative(&MultiPoly::constant(&r, q(7)), 1).is_zero());
        assert_eq!(partial_derivative(&(&x1 + &(&x2 * &x2)), 1), x2.scale(&q(2)));
    }

    #[test]
    fn substitute_examples() {
        let r = ring2();
        let x1 = MultiPoly::var(&r, 0);
        let x2 = MultiPoly::var(&r, 1);
        let p = &(&x1 * &x1) + &x2;
        let s = p.substitute(&[(0, Subst::Value(q(3)))]).unwrap();
        assert_eq!(s, &MultiPoly::constant(&r, q(9)) + &x2);
        let s = x1.substitute(&[(0, Subst::Poly(&x1 + &x2))]).unwrap();
        assert_eq!(s, &x1 + &x2);
        let circle = &(&MultiPoly::one(&r) - &(&x1 * &x1)) - &(&x2 * &x2);
        let s = circle.substitute(&[(1, Subst::Value(q(0)))]).unwrap();
        assert_eq!(s, &MultiPoly::one(&r) - &(&x1 * &x1));
    }

    #[test]
    fn exact_division() {
        let r = ring2();
        let x1 = MultiPoly::var(&r, 0);
        let x2 = MultiPoly::var(&r, 1);
        let a = &x1 + &x2;
        let b = &x1 - &x2.scale(&q(3));
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), Some(b.clone()));
        assert_eq!((&p + &MultiPoly::one(&r)).div_exact(&a).unwrap(), None);
    }
}
