//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realdet_core::poly::{refine_root, resultant, sturm_isolate, real_root_count};
use realdet_core::{random_pencil, LinearMatrix, MultiPoly, Rational, RationalInterval, RealPointBox, UniPoly};

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

pub fn quartic() -> LinearMatrix {
    LinearMatrix::from_ints(&[
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]],
        &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]],
        &[&[0, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0]],
    ])
    .unwrap()
}

pub fn cayley() -> LinearMatrix {
    LinearMatrix::from_ints(&[
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]],
        &[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]],
        &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]],
    ])
    .unwrap()
}

/// `x1² + x2² = 1` as `det [[x1 - 1, x2], [x2, -x1 - 1]]` up to sign.
pub fn circle() -> LinearMatrix {
    LinearMatrix::from_ints(&[&[&[-1, 0], &[0, -1]], &[&[1, 0], &[0, -1]], &[&[0, 1], &[1, 0]]]).unwrap()
}

pub fn pencil(m: usize, n: usize, bound: i64, seed: u64) -> LinearMatrix {
    random_pencil(&mut ChaCha8Rng::seed_from_u64(seed), m, n, bound)
}

/// Interval enclosure of `f` over a box.
pub fn eval_box(f: &MultiPoly, b: &[RationalInterval]) -> RationalInterval {
    let mut acc = RationalInterval::point(Rational::zero());
    for (m, c) in f.terms() {
        let mut t = RationalInterval::point(c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&b[i]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// `f(s, x2)` as a polynomial in `x2`.
fn fiber(f: &MultiPoly, s: &Rational) -> UniPoly {
    UniPoly::new(f.coeffs_in(1).iter().map(|c| c.eval(&[s.clone(), Rational::zero()]).unwrap()).collect())
}

/// Connected components of a smooth real conic `f(x1, x2) = 0` whose `x2²`
/// coefficient is a nonzero constant.
///
/// Critical abscissae are the real roots of `Res_x2(f, ∂f/∂x2)`. Between two
/// consecutive ones every vertical line meets the curve in 0 or 2 points. A
/// maximal run of strips with 2 points is one component if it is closed off by
/// a fold on at least one side and two graphs over the whole line otherwise.
pub struct ConicOracle {
    f: MultiPoly,
    dfy: MultiPoly,
    crit: Vec<RationalInterval>,
    /// Real fiber size in each strip, `crit.len() + 1` entries.
    counts: Vec<usize>,
    /// `(first strip, last strip)` of each run.
    runs: Vec<(usize, usize)>,
}

/// Component label: run index and, for unfolded runs, the arc (+1 upper, -1 lower).
pub type Component = (usize, i8);

impl ConicOracle {
    /// `None` when the preconditions fail.
    pub fn new(a: &LinearMatrix) -> Option<ConicOracle> {
        let f = a.determinant();
        if f.degree_in(1) != 2 || f.total_degree() != 2 || !f.coeffs_in(1)[2].is_constant() {
            return None;
        }
        let dfy = f.partial_derivative(1);
        let res = resultant(&f, &dfy, 1).ok()?.to_unipoly(0).ok()?;
        if res.is_zero() || !res.is_squarefree() {
            return None;
        }
        let tiny = r(1, 1_000_000_000_000);
        let crit: Vec<RationalInterval> = if res.is_constant() {
            vec![]
        } else {
            sturm_isolate(&res).ok()?.iter().map(|iv| refine_root(&res, iv, &tiny).unwrap()).collect()
        };
        let mut samples = Vec::new();
        let one = Rational::one();
        if crit.is_empty() {
            samples.push(Rational::zero());
        } else {
            samples.push(crit[0].lo() - &one);
            for w in crit.windows(2) {
                samples.push(Rational::midpoint(w[0].hi(), w[1].lo()));
            }
            samples.push(crit[crit.len() - 1].hi() + &one);
        }
        let counts: Vec<usize> = samples.iter().map(|s| real_root_count(&fiber(&f, s)).unwrap()).collect();
        if counts.iter().any(|&c| c != 0 && c != 2) {
            return None;
        }
        let mut runs = Vec::new();
        let mut k = 0;
        while k < counts.len() {
            if counts[k] == 2 {
                let start = k;
                while k + 1 < counts.len() && counts[k + 1] == 2 {
                    k += 1;
                }
                runs.push((start, k));
            }
            k += 1;
        }
        Some(ConicOracle { f, dfy, crit, counts, runs })
    }

    fn folded(&self, run: usize) -> bool {
        let (a, b) = self.runs[run];
        a > 0 || b + 1 < self.counts.len()
    }

    pub fn components(&self) -> Vec<Component> {
        let mut out = Vec::new();
        for k in 0..self.runs.len() {
            if self.folded(k) {
                out.push((k, 0));
            } else {
                out.push((k, 1));
                out.push((k, -1));
            }
        }
        out
    }

    /// Component of the curve point enclosed in `b`, or `None` if the box is
    /// not fine enough to decide.
    pub fn locate(&self, b: &RealPointBox) -> Option<Component> {
        let x = &b.coords[0];
        // strip index: number of critical values certainly left of the box
        let mut strip = 0;
        let mut on_crit = None;
        for (i, c) in self.crit.iter().enumerate() {
            if c.hi() < x.lo() {
                strip = i + 1;
            } else if c.lo() <= x.hi() {
                on_crit = Some(i);
            }
        }
        let strip = match on_crit {
            None => strip,
            // a fold point: the side with two arcs
            Some(i) if self.counts[i] == 2 => i,
            Some(i) => i + 1,
        };
        let run = self.runs.iter().position(|&(a, b)| a <= strip && strip <= b)?;
        if self.folded(run) {
            return Some((run, 0));
        }
        let s = eval_box(&self.dfy, &b.coords).strict_sign()?;
        Some((run, s))
    }

    pub fn on_curve(&self, b: &RealPointBox) -> bool {
        eval_box(&self.f, &b.coords).contains_zero()
    }
}
