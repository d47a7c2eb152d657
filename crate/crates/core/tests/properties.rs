mod common;

use std::sync::Arc;

use common::{circle, r};
use proptest::prelude::*;
use realdet_core::io::{parametrization_from_json, parametrization_to_json, pencil_from_json, pencil_to_json};
use realdet_core::poly::{resultant, sturm_isolate, Monomial};
use realdet_core::{
    b_bound, delta, groebner, rat_par, rat_par_modular, LinearMatrix, MonomialOrder, MultiPoly, RatMatrix, Rational,
    RationalParametrization, Ring, UniPoly,
};

fn rat() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=9).prop_map(|(n, d)| r(n, d))
}

fn uni(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| UniPoly::from_ints(&c))
}

fn multi(ring: Arc<Ring>, nterms: usize, max_exp: u16) -> impl Strategy<Value = MultiPoly> {
    let nv = ring.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_exp, nv), -5i64..=5), 1..=nterms).prop_map(move |ts| {
        MultiPoly::from_terms(&ring, ts.into_iter().map(|(e, c)| (Monomial::from_exps(&e), Rational::from(c)))).unwrap()
    })
}

fn small_pencil(m: usize, n: usize) -> impl Strategy<Value = LinearMatrix> {
    prop::collection::vec(-5i64..=5, m * m * (n + 1)).prop_map(move |v| {
        let mats = v
            .chunks(m * m)
            .map(|c| RatMatrix::from_rows(c.chunks(m).map(|row| row.iter().map(|&x| Rational::from(x)).collect()).collect()).unwrap())
            .collect();
        LinearMatrix::new(mats).unwrap()
    })
}

/// `k` points with distinct first coordinates.
fn points(k: usize) -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    (prop::collection::hash_set(-30i64..=30, k), prop::collection::vec(rat(), k))
        .prop_map(|(xs, ys)| xs.into_iter().map(Rational::from).zip(ys).collect())
}

/// `(prod (x - a_i), y - L(x))` with `L` the interpolant through the points.
fn points_ideal(ring: &Arc<Ring>, pts: &[(Rational, Rational)]) -> Vec<MultiPoly> {
    let x = MultiPoly::var(ring, 0);
    let y = MultiPoly::var(ring, 1);
    let mut vanish = MultiPoly::one(ring);
    let mut interp = MultiPoly::zero(ring);
    for (i, (xi, yi)) in pts.iter().enumerate() {
        vanish = vanish.checked_mul(&x.checked_sub(&MultiPoly::constant(ring, xi.clone())).unwrap()).unwrap();
        let mut basis = MultiPoly::constant(ring, yi.clone());
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                let num = x.checked_sub(&MultiPoly::constant(ring, xj.clone())).unwrap();
                basis = basis.checked_mul(&num).unwrap().scale(&(xi - xj).recip().unwrap());
            }
        }
        interp = interp.checked_add(&basis).unwrap();
    }
    vec![vanish, y.checked_sub(&interp).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rat(), b in rat()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn division_identity(a in uni(7), d in uni(4)) {
        prop_assume!(!d.is_zero());
        let (q, rem) = a.div_rem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&rem), a);
        prop_assert!(rem.degree() < d.degree());
    }

    #[test]
    fn gcd_contains_common_factor(g in uni(3), h in uni(3), k in uni(3)) {
        prop_assume!(!g.is_zero() && !h.is_zero() && !k.is_zero());
        let gcd = g.mul(&h).gcd(&g.mul(&k));
        prop_assert!(g.mul(&h).rem(&gcd).unwrap().is_zero());
        prop_assert!(g.mul(&k).rem(&gcd).unwrap().is_zero());
        prop_assert!(gcd.rem(&g).unwrap().is_zero() || g.is_constant());
    }

    #[test]
    fn sturm_finds_constructed_roots(roots in prop::collection::btree_set(-40i64..=40, 0..=6), c in 1i64..=30, quad in any::<bool>()) {
        let mut p = UniPoly::one();
        for &x in &roots {
            p = p.mul(&UniPoly::from_ints(&[-x, 3]));
        }
        if quad {
            p = p.mul(&UniPoly::from_ints(&[c, 0, 1]));
        }
        prop_assume!(!p.is_constant());
        let ivs = sturm_isolate(&p).unwrap();
        prop_assert_eq!(ivs.len(), roots.len());
        for (iv, &x) in ivs.iter().zip(&roots) {
            prop_assert!(iv.contains(&r(x, 3)));
        }
    }

    #[test]
    fn determinant_commutes_with_evaluation(a in small_pencil(3, 2), x in rat(), y in rat()) {
        let p = [x, y];
        prop_assert_eq!(a.determinant().eval(&p).unwrap(), a.eval(&p).det());
    }

    #[test]
    fn pencil_json_fixed_point(a in small_pencil(2, 3)) {
        let v = pencil_to_json(&a);
        let back = pencil_from_json(&v).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(pencil_to_json(&back), v);
    }

    #[test]
    fn parametrization_json_fixed_point(q0 in uni(3), q1 in uni(3), q2 in uni(3), ql in uni(4)) {
        prop_assume!(ql.degree() >= 1 && !q0.is_zero());
        let Ok(rp) = RationalParametrization::new(q0, vec![q1, q2], ql) else { return Ok(()); };
        let v = parametrization_to_json(&rp);
        let back = parametrization_from_json(&v).unwrap();
        prop_assert_eq!(parametrization_to_json(&back), v);
    }

    #[test]
    fn resultant_substitutes(p in uni(3), g in multi(Ring::new(["x", "y"]), 4, 2)) {
        let ring = g.ring().clone();
        let px = MultiPoly::from_unipoly(&ring, 0, &p);
        let f = MultiPoly::var(&ring, 1).checked_sub(&px).unwrap();
        let res = resultant(&f, &g, 1).unwrap();
        let sub = g.compose(&ring, &[MultiPoly::var(&ring, 0), px]).unwrap();
        prop_assert!(res == sub || res == sub.scale(&Rational::from(-1)));
    }

    #[test]
    fn lift_and_image_move_points(x in prop::collection::vec(rat(), 2), t0 in rat(), m in prop::collection::vec(-4i64..=4, 4)) {
        let mm = RatMatrix::from_ints(&[&m[..2], &m[2..]]);
        let rp = RationalParametrization::point(&x);
        let img = rp.image(&mm).unwrap().extract_real_points(8).unwrap();
        prop_assert_eq!(img.len(), 1);
        prop_assert!(img[0].contains(&mm.mul_vec(&x)));
        let lifted = rp.lift(&t0, 2).unwrap().extract_real_points(8).unwrap();
        prop_assert!(lifted[0].contains(&[x[0].clone(), t0, x[1].clone()]));
    }

    #[test]
    fn circle_points_verify(s in rat(), eps in 1i64..=5) {
        // rational points on x1² + x2² = 1
        let one = Rational::one();
        let d = &one + &(&s * &s);
        let x1 = (&one - &(&s * &s)).checked_div(&d).unwrap();
        let x2 = (&Rational::from(2) * &s).checked_div(&d).unwrap();
        let on = RationalParametrization::point(&[x1.clone(), x2.clone()]);
        prop_assert!(on.verify_on_determinant(&circle()).unwrap());
        let off = RationalParametrization::point(&[&x1 + &r(eps, 7), x2]);
        prop_assert!(!off.verify_on_determinant(&circle()).unwrap());
    }

    #[test]
    fn bounds_monotone(m in 1usize..=5, n in 1usize..=9) {
        prop_assert!(b_bound(m, n).unwrap() <= b_bound(m, n + 1).unwrap());
        let c = (1..=m as u128).fold(1u128, |acc, i| acc * (n as u128 + i) / i);
        for t in 1..=n + 2 * m - 2 {
            prop_assert!(delta(m, n, t).unwrap() <= c * c * c);
        }
        for t in 1..m {
            prop_assert!(delta(m, n, t).unwrap() <= delta(m, n, t + 1).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_invariants(f in multi(Ring::new(["x", "y", "z"]), 3, 2), g in multi(Ring::new(["x", "y", "z"]), 3, 2), h in multi(Ring::new(["x", "y", "z"]), 2, 1)) {
        let ring = Ring::new(["x", "y", "z"]);
        let f = f.with_ring(&ring).unwrap();
        let g = g.with_ring(&ring).unwrap();
        let h = h.with_ring(&ring).unwrap();
        let gens = [f.clone(), g.clone()];
        let gb = groebner(&gens, MonomialOrder::DegRevLex).unwrap();
        prop_assert!(gb.is_groebner());
        prop_assert!(gb.contains(&f).unwrap() && gb.contains(&g).unwrap());
        let comb = f.checked_mul(&h).unwrap().checked_add(&g.checked_mul(&h.pow(2)).unwrap()).unwrap();
        prop_assert!(gb.contains(&comb).unwrap());
        let lex = groebner(&gens, MonomialOrder::Lex).unwrap();
        prop_assert!(lex.is_groebner());
        prop_assert_eq!(lex.contains(&g).unwrap(), true);
    }

    #[test]
    fn parametrization_recovers_points(pts in (1usize..=4).prop_flat_map(points)) {
        let ring = Ring::new(["x", "y"]);
        let sys = points_ideal(&ring, &pts);
        for rp in [rat_par(&sys, 3).unwrap(), rat_par_modular(&sys, 3).unwrap()] {
            prop_assert_eq!(rp.degree(), pts.len());
            let boxes = rp.extract_real_points(12).unwrap();
            prop_assert_eq!(boxes.len(), pts.len());
            for (x, y) in &pts {
                let p = [x.clone(), y.clone()];
                prop_assert!(boxes.iter().any(|b| b.contains(&p)));
            }
        }
    }
}
