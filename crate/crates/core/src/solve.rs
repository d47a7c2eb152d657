//! The recursive solver: genericity gate, Lagrange systems and fibers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{groebner, is_trivial, rat_par_modular, unit_ideal_modular};
use crate::matrix::{LinearMatrix, PolySystem, RandomDraw};
use crate::numeric::Rational;
use crate::param::{RationalParametrization, SampleSet};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Ring, UniPoly};

/// Solver parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub seed: u64,
    /// Random integers are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    pub max_retries: usize,
    pub digits: u32,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { seed: 0, coeff_bound: 1024, max_retries: 8, digits: 10 }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_retries == 0 {
            return Err(Error::InvalidInput("max_retries must be at least 1".into()));
        }
        if self.digits == 0 {
            return Err(Error::InvalidInput("digits must be at least 1".into()));
        }
        if self.coeff_bound < 1 {
            return Err(Error::InvalidInput("coeff_bound must be at least 1".into()));
        }
        Ok(())
    }
}

/// What happened at one level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    /// Number of variables at this level.
    pub n: usize,
    /// `None` at the univariate base case.
    pub draw: Option<RandomDraw>,
    /// Degree of the parametrization produced at this level.
    pub degree: usize,
    /// Draws rejected before one succeeded.
    pub retries: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub samples: SampleSet,
    pub degree_sum: usize,
    pub per_level: Vec<LevelReport>,
}

/// The systems `f = 0, wᵀJ = 0, w_i = 1` for `i = 1..=r`, where `J` is the
/// Jacobian of the `r` equations of `f`.
///
/// `J` drops rank at a point iff `wᵀJ = 0` for some nonzero `w`, so the
/// Jacobian ideal of `f` is trivial iff every chart system is.
pub fn singular_charts(f: &PolySystem) -> Result<Vec<Vec<MultiPoly>>> {
    let rows = f.polys.len();
    let nv = f.nvars();
    if rows > nv {
        return Err(Error::DimensionMismatch(format!("{rows} equations in {nv} variables")));
    }
    let mut names: Vec<String> = f.ring.names().to_vec();
    names.extend((1..=rows).map(|i| format!("w{i}")));
    let ring = Ring::new(names);
    let pad = vec![0u16; rows];
    let polys = f
        .polys
        .iter()
        .map(|p| {
            MultiPoly::from_terms(&ring, p.terms().map(|(m, c)| (Monomial::from_exps(&[m.exps(), &pad].concat()), c.clone())))
        })
        .collect::<Result<Vec<_>>>()?;
    let ws: Vec<MultiPoly> = (0..rows).map(|i| MultiPoly::var(&ring, nv + i)).collect();
    let mut base = polys.clone();
    for j in 0..nv {
        let mut e = MultiPoly::zero(&ring);
        for (p, w) in polys.iter().zip(&ws) {
            let d = p.partial_derivative(j);
            if !d.is_zero() {
                e = &e + &(&d * w);
            }
        }
        if !e.is_zero() {
            base.push(e);
        }
    }
    Ok(ws
        .iter()
        .map(|w| {
            let mut sys = base.clone();
            sys.push(w - &MultiPoly::one(&ring));
            sys
        })
        .collect())
}

/// True unless the incidence system, together with the maximal minors of its
/// Jacobian, generates the unit ideal. Decided modulo primes on the systems of
/// [`singular_charts`].
pub fn is_sing(f: &PolySystem) -> Result<bool> {
    for sys in singular_charts(f)? {
        if !unit_ideal_modular(&sys)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// As [`is_sing`], with Gröbner bases over Q.
pub fn is_sing_exact(f: &PolySystem) -> Result<bool> {
    for sys in singular_charts(f)? {
        let gb = groebner(&sys, MonomialOrder::DegRevLex)?;
        if !is_trivial(&gb) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Seed for the level with `n` variables.
fn level_seed(seed: u64, n: usize) -> u64 {
    seed ^ (n as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Sample points meeting every connected component of the real
/// hypersurface `det A(x) = 0`.
pub fn realdet(a: &LinearMatrix, cfg: &SolveConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let m = a.m();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let b = cfg.coeff_bound;
    let u: Vec<Rational> = loop {
        let u: Vec<Rational> = (0..=m).map(|_| Rational::from(rng.gen_range(-b..=b))).collect();
        if !u[m].is_zero() && u[..m].iter().any(|c| !c.is_zero()) {
            break u;
        }
    };
    if is_sing(&a.incidence_system(&u)?)? {
        return Err(Error::Genericity("the incidence variety is singular or not of codimension m + 1".into()));
    }
    let mut per_level = Vec::new();
    let samples = realdet_rec(a, cfg, &mut per_level)?;
    let degree_sum = samples.degree_sum();
    Ok(SolveReport { samples, degree_sum, per_level })
}

/// The recursion without the genericity gate. Appends one report per level.
pub fn realdet_rec(a: &LinearMatrix, cfg: &SolveConfig, per_level: &mut Vec<LevelReport>) -> Result<SampleSet> {
    let n = a.n();
    if n == 1 {
        let rp = base_case(a)?;
        per_level.push(LevelReport { n, draw: None, degree: rp.degree(), retries: 0 });
        return SampleSet::from_items(1, vec![rp]);
    }
    let seed = level_seed(cfg.seed, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = None;
    for attempt in 0..cfg.max_retries {
        let draw = RandomDraw::sample(&mut rng, n, a.m(), cfg.coeff_bound, seed);
        match critical_points(a, &draw, rng.gen()) {
            Ok(rp) => {
                found = Some((draw, rp, attempt));
                break;
            }
            Err(Error::PositiveDimensional(_)) | Err(Error::Genericity(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let Some((draw, rp, retries)) = found else {
        return Err(Error::RetryExhausted { level: n, retries: cfg.max_retries });
    };
    per_level.push(LevelReport { n, draw: Some(draw.clone()), degree: rp.degree(), retries });
    let fiber = a.change_of_variables(&draw.mm)?.substitute_x1(&draw.fiber)?;
    let lifted = realdet_rec(&fiber, cfg, per_level)?.lift(&draw.fiber, 1)?;
    let here = SampleSet::from_items(n, vec![rp])?;
    here.union(&lifted)?.image(&draw.mm)
}

/// `det A(t)` squarefree, for a pencil in one variable.
fn base_case(a: &LinearMatrix) -> Result<RationalParametrization> {
    let det = a.determinant().to_unipoly(0)?;
    if det.is_zero() {
        return Err(Error::Genericity("the determinant vanishes identically".into()));
    }
    if det.is_constant() {
        return Ok(RationalParametrization::empty(1));
    }
    RationalParametrization::new(UniPoly::one(), vec![UniPoly::t()], det.squarefree_part()?)
}

/// Projection onto `x` of the solutions of the Lagrange system.
fn critical_points(a: &LinearMatrix, draw: &RandomDraw, seed: u64) -> Result<RationalParametrization> {
    let sys = a.lagrange_system(&draw.mm, &draw.u, &draw.v)?;
    let rp = rat_par_modular(&sys.polys, seed)?;
    if rp.is_empty() {
        return Ok(RationalParametrization::empty(a.n()));
    }
    rp.project(&(1..=a.n()).collect::<Vec<_>>())
}

/// Degree of the parametrization of the Lagrange system for `draw`.
pub fn lagrange_degree(a: &LinearMatrix, draw: &RandomDraw) -> Result<usize> {
    Ok(critical_points(a, draw, draw.seed)?.degree())
}
