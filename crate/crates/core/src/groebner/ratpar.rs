//! Shape-position parametrizations of zero-dimensional ideals.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ipoly::normal_form_q;
use super::quotient::{krylov_minpoly, solve_columns, QMatrix};
use super::{groebner_in, is_trivial, staircase_dimension, standard_monomials, GroebnerBasis};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::param::RationalParametrization;
use crate::poly::{Monomial, MonomialOrder, MultiPoly, UniPoly};

pub(crate) const LAMBDA_TRIES: usize = 12;
pub(crate) const LAMBDA_BOUND: i64 = 16;

/// Parametrization of the solutions of `polys` (zero-dimensional or inconsistent).
pub fn rat_par(polys: &[MultiPoly], seed: u64) -> Result<RationalParametrization> {
    let gb = super::groebner(polys, MonomialOrder::DegRevLex)?;
    rat_par_with(&gb, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// As [`rat_par`], starting from a Gröbner basis in any order.
pub fn rat_par_with<R: Rng>(gb: &GroebnerBasis, rng: &mut R) -> Result<RationalParametrization> {
    let nv = gb.ring().nvars();
    if is_trivial(gb) {
        return Ok(RationalParametrization::empty(nv));
    }
    let d = staircase_dimension(gb);
    if d > 0 {
        return Err(Error::PositiveDimensional(d));
    }
    let mut q = Quotient::new(gb);
    if let Some(rp) = q.shape(rng)? {
        return Ok(rp);
    }
    // not radical: add the squarefree parts of the eliminants in each variable
    let ring = gb.ring().clone();
    let mut gens = gb.gens().to_vec();
    let e0 = q.unit(0);
    for i in 0..nv {
        let (mu, _) = krylov_minpoly(q.mult(i), &e0);
        let sf = mu.squarefree_part()?;
        gens.push(MultiPoly::from_unipoly(&ring, i, &sf));
    }
    let radical = groebner_in(&ring, &gens, gb.order())?;
    let mut q = Quotient::new(&radical);
    q.shape(rng)?.ok_or_else(|| Error::Genericity("no separating linear form found".into()))
}

/// `Q[x]/I` with the standard-monomial basis.
struct Quotient<'a> {
    gb: &'a GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mults: Vec<Option<QMatrix>>,
}

impl<'a> Quotient<'a> {
    fn new(gb: &'a GroebnerBasis) -> Self {
        let basis = standard_monomials(gb);
        let index = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let nv = gb.ring().nvars();
        Quotient { gb, basis, index, mults: vec![None; nv] }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn unit(&self, k: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[k] = Rational::one();
        v
    }

    fn coords_of_monomial(&self, m: &Monomial) -> Vec<Rational> {
        if let Some(&k) = self.index.get(m) {
            return self.unit(k);
        }
        let p = MultiPoly::from_terms(self.gb.ring(), [(m.clone(), Rational::one())]).unwrap();
        let mut v = vec![Rational::zero(); self.dim()];
        for (mono, c) in normal_form_q(&p, &self.gb.reducers(), self.gb.order()) {
            v[self.index[&mono]] = c;
        }
        v
    }

    /// Multiplication by `x_i`.
    fn mult(&mut self, i: usize) -> &QMatrix {
        if self.mults[i].is_none() {
            let nv = self.gb.ring().nvars();
            let xi = Monomial::var(nv, i);
            let cols = self.basis.iter().map(|b| self.coords_of_monomial(&b.mul(&xi))).collect();
            self.mults[i] = Some(QMatrix { n: self.dim(), cols });
        }
        self.mults[i].as_ref().unwrap()
    }

    /// Try `t = x1` and then random linear forms. `None` if the ideal is not radical.
    fn shape<R: Rng>(&mut self, rng: &mut R) -> Result<Option<RationalParametrization>> {
        let nv = self.gb.ring().nvars();
        let dim = self.dim();
        let xs: Vec<Vec<Rational>> = (0..nv).map(|i| self.coords_of_monomial(&Monomial::var(nv, i))).collect();
        for attempt in 0..LAMBDA_TRIES {
            let lambda: Vec<Rational> = if attempt == 0 {
                (0..nv).map(|i| Rational::from(i64::from(i == 0))).collect()
            } else {
                (0..nv).map(|_| Rational::from(rng.gen_range(-LAMBDA_BOUND..=LAMBDA_BOUND))).collect()
            };
            let mut mats = Vec::new();
            let mut coeffs = Vec::new();
            for (i, l) in lambda.iter().enumerate() {
                if !l.is_zero() {
                    self.mult(i);
                    coeffs.push(l.clone());
                    mats.push(i);
                }
            }
            if mats.is_empty() {
                continue;
            }
            let refs: Vec<&QMatrix> = mats.iter().map(|&i| self.mults[i].as_ref().unwrap()).collect();
            let t = QMatrix::lin_comb(&refs, &coeffs);
            let (mu, krylov) = krylov_minpoly(&t, &self.unit(0));
            if mu.degree() as usize != dim {
                continue;
            }
            if !mu.is_squarefree() {
                return Ok(None);
            }
            let mut q = Vec::with_capacity(nv);
            for (i, x) in xs.iter().enumerate() {
                if attempt == 0 && i == 0 {
                    q.push(UniPoly::t());
                    continue;
                }
                let c = solve_columns(&krylov, x).expect("Krylov basis is invertible");
                q.push(UniPoly::new(c));
            }
            return RationalParametrization::new(UniPoly::one(), q, mu).map(Some);
        }
        // deg mu < dim for every form: either unlucky or not radical
        let e0 = self.unit(0);
        let mut radical = true;
        for i in 0..nv {
            radical &= krylov_minpoly(self.mult(i), &e0).0.is_squarefree();
        }
        if radical {
            Err(Error::Genericity("no separating linear form found".into()))
        } else {
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;
    use std::sync::Arc;

    fn poly(ring: &Arc<Ring>, terms: &[(&[u16], i64)]) -> MultiPoly {
        MultiPoly::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::from_exps(e), Rational::from(*c)))).unwrap()
    }

    /// Numerator of `g(q/q0)` is divisible by `qlast`.
    fn roundtrip(g: &MultiPoly, rp: &RationalParametrization) -> bool {
        let d = g.total_degree().max(0) as u32;
        let mut acc = UniPoly::zero();
        for (m, c) in g.terms() {
            let mut t = UniPoly::constant(c.clone()).mul(&rp.q0().pow(d - m.degree()));
            for (i, &e) in m.exps().iter().enumerate() {
                t = t.mul(&rp.q()[i].pow(e as u32));
            }
            acc = acc.add(&t);
        }
        acc.rem(rp.qlast()).unwrap().is_zero()
    }

    #[test]
    fn rational_point() {
        let r = Ring::indexed("x", 2);
        let f = [poly(&r, &[(&[1, 0], 1), (&[0, 0], -1)]), poly(&r, &[(&[0, 1], 1), (&[0, 0], 2)])];
        let rp = rat_par(&f, 0).unwrap();
        assert_eq!(rp.q0(), &UniPoly::one());
        assert_eq!(rp.q()[0], UniPoly::t());
        assert_eq!(rp.q()[1], UniPoly::from_ints(&[-2]));
        assert_eq!(rp.qlast(), &UniPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn sqrt2_diagonal() {
        let r = Ring::indexed("x", 2);
        let f = [poly(&r, &[(&[2, 0], 1), (&[0, 0], -2)]), poly(&r, &[(&[0, 1], 1), (&[1, 0], -1)])];
        let rp = rat_par(&f, 0).unwrap();
        assert_eq!(rp.qlast(), &UniPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(rp.q(), &[UniPoly::t(), UniPoly::t()]);
        for g in &f {
            assert!(roundtrip(g, &rp));
        }
    }

    #[test]
    fn inconsistent_is_empty() {
        let r = Ring::indexed("x", 1);
        let rp = rat_par(&[poly(&r, &[(&[0], 1)])], 0).unwrap();
        assert!(rp.is_empty());
        assert!(matches!(rat_par(&[poly(&Ring::indexed("x", 2), &[(&[1, 0], 1)])], 0), Err(Error::PositiveDimensional(1))));
    }

    #[test]
    fn non_separating_first_coordinate() {
        // x1^2 - 1, x2^2 - 1: four points, x1 alone does not separate
        let r = Ring::indexed("x", 2);
        let f = [poly(&r, &[(&[2, 0], 1), (&[0, 0], -1)]), poly(&r, &[(&[0, 2], 1), (&[0, 0], -1)])];
        let rp = rat_par(&f, 3).unwrap();
        assert_eq!(rp.degree(), 4);
        for g in &f {
            assert!(roundtrip(g, &rp));
        }
        assert_eq!(rp.extract_real_points(4).unwrap().len(), 4);
    }

    #[test]
    fn non_radical() {
        // x1^2, x2 - x1 - 1: one point (0, 1) with multiplicity two
        let r = Ring::indexed("x", 2);
        let f = [poly(&r, &[(&[2, 0], 1)]), poly(&r, &[(&[0, 1], 1), (&[1, 0], -1), (&[0, 0], -1)])];
        let rp = rat_par(&f, 0).unwrap();
        assert_eq!(rp.degree(), 1);
        for g in &f {
            assert!(roundtrip(g, &rp));
        }
        let pts = rp.extract_real_points(6).unwrap();
        assert!(pts[0].contains(&[Rational::zero(), Rational::one()]));
    }
}
