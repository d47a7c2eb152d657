mod common;

use common::{cayley, circle, pencil, quartic, r, ConicOracle};
use realdet_core::poly::{Monomial, resultant};
use realdet_core::{
    b_bound, is_sing, is_sing_exact, lagrange_degree, realdet, LinearMatrix, MultiPoly, RandomDraw, Rational,
    SolveConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(seed: u64) -> SolveConfig {
    SolveConfig { seed, ..SolveConfig::default() }
}

/// Components found by the oracle and the number of them holding a solver point.
fn coverage(a: &LinearMatrix, seed: u64) -> (usize, usize) {
    let oracle = ConicOracle::new(a).unwrap_or_else(|| panic!("oracle preconditions: {}", a.determinant()));
    let rep = realdet(a, &cfg(seed)).unwrap();
    let pts = rep.samples.extract_real_points(30).unwrap();
    assert!(pts.iter().all(|p| oracle.on_curve(p)));
    let hit: Vec<_> = pts.iter().map(|p| oracle.locate(p).expect("located")).collect();
    let comps = oracle.components();
    (comps.len(), comps.iter().filter(|c| hit.contains(c)).count())
}

#[test]
fn conic_oracle_on_known_curves() {
    // (pencil, component count)
    let cases: [(&[&[&[i64]]], usize); 6] = [
        // x1² + 2x2² = 1
        (&[&[&[1, 0], &[0, -1]], &[&[1, 0], &[0, 1]], &[&[0, -2], &[1, 0]]], 1),
        // x1² - x2² = 1
        (&[&[&[1, 0], &[0, -1]], &[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]], 2),
        // x2² - x1² = 1
        (&[&[&[1, 0], &[0, -1]], &[&[0, 1], &[1, 0]], &[&[1, 0], &[0, 1]]], 2),
        // x2² = 1
        (&[&[&[-1, 0], &[0, 1]], &[&[0, 0], &[0, 0]], &[&[1, 0], &[0, 1]]], 2),
        // x2² = x1
        (&[&[&[0, 0], &[1, 0]], &[&[0, -1], &[0, 0]], &[&[1, 0], &[0, 1]]], 1),
        // (x1 + 3)² + (x2 - 1)² = 4
        (&[&[&[1, 1], &[-1, 5]], &[&[1, 0], &[0, 1]], &[&[0, -1], &[1, 0]]], 1),
    ];
    for (k, (mats, want)) in cases.iter().enumerate() {
        let a = LinearMatrix::from_ints(mats).unwrap();
        let (n, hit) = coverage(&a, 1);
        assert_eq!(n, *want, "case {k}");
        assert_eq!(hit, n, "case {k}");
    }
}

#[test]
fn conic_oracle_rejects_degenerate_input() {
    // crossing lines x1² = x2²: singular point at the origin
    let a = LinearMatrix::from_ints(&[&[&[0, 0], &[0, 0]], &[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]]).unwrap();
    assert!(ConicOracle::new(&a).is_none());
    // cubic curve
    assert!(ConicOracle::new(&pencil(3, 2, 5, 1)).is_none());
}

#[test]
fn random_conics_are_covered() {
    let mut checked = 0;
    for seed in 0..40u64 {
        let a = pencil(2, 2, 6, seed);
        if ConicOracle::new(&a).is_none() {
            continue;
        }
        let (n, hit) = coverage(&a, seed);
        assert_eq!(n, hit, "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 30);
}

#[test]
fn quartic_determinant_matches_displayed_form() {
    let a = quartic();
    let ring = a.x_ring();
    let want = MultiPoly::from_terms(
        &ring,
        [([4, 0], 1), ([2, 2], 3), ([0, 4], 1), ([1, 2], -1), ([2, 0], -5), ([0, 2], -7), ([0, 0], 4)]
            .map(|(e, c)| (Monomial::from_exps(&e), Rational::from(c))),
    )
    .unwrap();
    let det = a.determinant();
    let lead = det.coeff(&Monomial::from_exps(&[4, 0]));
    assert_eq!(det.scale(&lead.recip().unwrap()), want);
}

#[test]
fn quartic_solution_is_certified() {
    let a = quartic();
    let rep = realdet(&a, &cfg(0)).unwrap();
    assert!(rep.samples.verify_on_determinant(&a).unwrap().iter().all(|&b| b));
    let f = a.determinant();
    let pts = rep.samples.extract_real_points(20).unwrap();
    assert!(!pts.is_empty());
    for p in &pts {
        assert!(common::eval_box(&f, &p.coords).contains_zero());
    }
    // both ovals: points inside and outside the inner one
    let radii: Vec<f64> = pts.iter().map(|p| p.coords.iter().map(|c| c.midpoint().to_f64().powi(2)).sum::<f64>()).collect();
    let inner = radii.iter().cloned().fold(f64::INFINITY, f64::min);
    let outer = radii.iter().cloned().fold(0.0, f64::max);
    assert!(outer > 2.0 * inner, "{radii:?}");
}

#[test]
fn singularity_tests_agree_on_examples() {
    let ints = |u: &[i64]| u.iter().map(|&c| Rational::from(c)).collect::<Vec<_>>();
    for (a, u) in [(cayley(), [3, -5, 7, 11].as_slice()), (circle(), &[2, 1, 3])] {
        let inc = a.incidence_system(&ints(u)).unwrap();
        assert!(!is_sing(&inc).unwrap());
        assert!(!is_sing_exact(&inc).unwrap());
    }
    let inc = quartic().incidence_system(&ints(&[3, -5, 7, 11, 2])).unwrap();
    assert!(!is_sing(&inc).unwrap());
}

#[test]
fn lagrange_degree_within_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        let a = pencil(m, n, 10, 31 * m as u64 + n as u64);
        let d = RandomDraw::sample(&mut rng, n, m, 64, 5);
        let deg = lagrange_degree(&a, &d).unwrap();
        assert!(deg as u128 <= realdet_core::delta_top(m, n), "({m},{n}) {deg}");
        assert!(deg as u128 <= b_bound(m, n).unwrap());
    }
}

#[test]
fn resultant_of_circle_and_line() {
    // x² + y² - 1 and y - x: roots at x = ±1/√2, resultant 2x² - 1 up to sign
    let f = circle().determinant();
    let ring = f.ring().clone();
    let line = MultiPoly::var(&ring, 1).checked_sub(&MultiPoly::var(&ring, 0)).unwrap();
    let res = resultant(&f, &line, 1).unwrap().to_unipoly(0).unwrap();
    assert_eq!(res.monic().coeffs(), [r(-1, 2), Rational::zero(), Rational::one()]);
}
