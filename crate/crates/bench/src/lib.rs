//! Shared inputs for the criterion benches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realdet_core::{random_pencil, LinearMatrix, MultiPoly, RandomDraw, Rational, UniPoly};

/// Random `m x m` pencil in `n` variables with entries in `[-10, 10]`.
pub fn pencil(m: usize, n: usize, seed: u64) -> LinearMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_pencil(&mut rng, m, n, 10)
}

/// Lagrange system of a random draw for `a`.
pub fn lagrange(a: &LinearMatrix, seed: u64) -> Vec<MultiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = RandomDraw::sample(&mut rng, a.n(), a.m(), 1024, seed);
    a.lagrange_system(&d.mm, &d.u, &d.v).expect("lagrange system").polys
}

/// Product of `(t - k/3)` for `k` in `-d/2 .. d - d/2`, with simple rational roots.
pub fn split_poly(d: i64) -> UniPoly {
    let mut p = UniPoly::new(vec![Rational::from(1)]);
    for k in -d / 2..d - d / 2 {
        p = p.mul(&UniPoly::new(vec![Rational::new(-k, 3).unwrap(), Rational::from(1)]));
    }
    p
}
