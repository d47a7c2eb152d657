//! Gröbner bases over Q, dimension and degree of the solution set, and
//! rational parametrizations of zero-dimensional ideals.

mod buchberger;
mod fpoly;
mod ipoly;
mod modular;
mod quotient;
mod ratpar;

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Ring};

pub use modular::{rat_par_modular, unit_ideal_modular, MAX_PRIMES};
pub use ratpar::{rat_par, rat_par_with};

use ipoly::{normal_form_q, GbPoly, IPoly, Reducer};

static SELF_CHECK: AtomicBool = AtomicBool::new(false);
static CHECKED: AtomicUsize = AtomicUsize::new(0);
static FAILED: AtomicUsize = AtomicUsize::new(0);

/// When enabled, every basis produced is checked with Buchberger's criterion.
pub fn set_self_check(on: bool) {
    SELF_CHECK.store(on, Ordering::SeqCst);
}

/// `(bases checked, bases that failed)` since the process started.
pub fn self_check_stats() -> (usize, usize) {
    (CHECKED.load(Ordering::SeqCst), FAILED.load(Ordering::SeqCst))
}

/// Reduced Gröbner basis; generators are monic and sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    ring: Arc<Ring>,
    gens: Vec<MultiPoly>,
    inner: Vec<IPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.inner.iter().map(|p| p.lm().clone()).collect()
    }

    /// Buchberger's criterion, recomputed from scratch.
    pub fn is_groebner(&self) -> bool {
        buchberger::is_groebner(&self.inner, self.order)
    }

    pub(crate) fn reducers(&self) -> Vec<Reducer<'_>> {
        self.inner.iter().map(|p| Reducer { poly: p, mask: p.lm().divmask() }).collect()
    }

    /// Exact normal form of `p` modulo the basis.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let p = p.with_ring(&self.ring)?;
        let nf = normal_form_q(&p, &self.reducers(), self.order);
        MultiPoly::from_terms(&self.ring, nf)
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

/// Reduced Gröbner basis of the ideal generated by `polys`.
pub fn groebner(polys: &[MultiPoly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let Some(first) = polys.first() else {
        return Err(Error::InvalidInput("cannot infer the ring of an empty system".into()));
    };
    let ring = first.ring().clone();
    groebner_in(&ring, polys, order)
}

/// As [`groebner`], with an explicit ring (allows an empty generator list).
pub fn groebner_in(ring: &Arc<Ring>, polys: &[MultiPoly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let mut input = Vec::with_capacity(polys.len());
    for p in polys {
        let p = p.with_ring(ring)?;
        input.push(IPoly::from_multi(&p, order).0);
    }
    let inner = buchberger::compute(input, order);
    if SELF_CHECK.load(Ordering::Relaxed) {
        CHECKED.fetch_add(1, Ordering::SeqCst);
        if !buchberger::is_groebner(&inner, order) {
            FAILED.fetch_add(1, Ordering::SeqCst);
        }
    }
    let gens = inner.iter().map(|p| p.to_monic_multi(ring)).collect();
    Ok(GroebnerBasis { order, ring: ring.clone(), gens, inner })
}

/// True iff the basis is `{1}`.
pub fn is_trivial(gb: &GroebnerBasis) -> bool {
    gb.inner.len() == 1 && gb.inner[0].is_constant()
}

/// Dimension of the solution set; -1 when it is empty.
pub fn staircase_dimension(gb: &GroebnerBasis) -> i64 {
    quotient::staircase_dim(&gb.leading_monomials(), gb.ring.nvars())
}

/// Number of standard monomials of a zero-dimensional ideal.
pub fn zero_dim_degree(gb: &GroebnerBasis) -> Result<usize> {
    let d = staircase_dimension(gb);
    if d > 0 {
        return Err(Error::PositiveDimensional(d));
    }
    if d < 0 {
        return Ok(0);
    }
    Ok(standard_monomials(gb).len())
}

pub(crate) fn standard_monomials(gb: &GroebnerBasis) -> Vec<Monomial> {
    quotient::standard_monomials(&gb.leading_monomials(), gb.ring.nvars(), usize::MAX).expect("no cap")
}

const SLICING_ATTEMPTS: usize = 8;

/// Dimension and degree of the variety of `polys`, the degree obtained by
/// cutting with random affine hyperplanes.
pub fn dim_degree_via_slicing(polys: &[MultiPoly], seed: u64) -> Result<(i64, usize)> {
    let gb = groebner(polys, MonomialOrder::DegRevLex)?;
    let d = staircase_dimension(&gb);
    if d < 0 {
        return Err(Error::InvalidInput("the ideal is trivial".into()));
    }
    if d == 0 {
        return Ok((0, zero_dim_degree(&gb)?));
    }
    let ring = gb.ring.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SLICING_ATTEMPTS {
        let mut sys: Vec<MultiPoly> = gb.gens.clone();
        for _ in 0..d {
            let mut h = MultiPoly::constant(&ring, Rational::from(rng.gen_range(-100i64..=100)));
            for i in 0..ring.nvars() {
                h = &h + &MultiPoly::var(&ring, i).scale(&Rational::from(rng.gen_range(-100i64..=100)));
            }
            sys.push(h);
        }
        let sliced = groebner_in(&ring, &sys, MonomialOrder::DegRevLex)?;
        if staircase_dimension(&sliced) == 0 {
            return Ok((d, zero_dim_degree(&sliced)?));
        }
    }
    Err(Error::SlicingFailed(SLICING_ATTEMPTS))
}
