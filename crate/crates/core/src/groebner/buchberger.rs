//! Buchberger's algorithm with sugar selection and the Gebauer–Möller
//! pair criteria.

use super::ipoly::{GbPoly, Reducer};
use crate::poly::{Monomial, MonomialOrder};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Elem<P> {
    poly: P,
    sugar: u32,
    mask: u64,
    active: bool,
}

pub(crate) struct Engine<P> {
    order: MonomialOrder,
    elems: Vec<Elem<P>>,
    pairs: Vec<Pair>,
    trivial: bool,
}

impl<P: GbPoly> Engine<P> {
    fn new(order: MonomialOrder) -> Self {
        Engine { order, elems: Vec::new(), pairs: Vec::new(), trivial: false }
    }

    fn reducers(&self) -> Vec<Reducer<'_, P>> {
        self.elems.iter().filter(|e| e.active).map(|e| Reducer { poly: &e.poly, mask: e.mask }).collect()
    }

    /// Gebauer–Möller update with a new element `h`.
    fn update(&mut self, h: P, sugar: u32) {
        if h.is_constant() {
            self.trivial = true;
        }
        let hi = self.elems.len();
        let hlm = h.lm().clone();
        let hdeg = hlm.degree();
        let mut cand: Vec<(usize, Monomial, bool, u32)> = self
            .elems
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(g, e)| {
                let l = hlm.lcm(e.poly.lm());
                let coprime = hlm.is_coprime(e.poly.lm());
                let ld = l.degree();
                let s = (sugar + ld - hdeg).max(e.sugar + ld - e.poly.lm().degree());
                (g, l, coprime, s)
            })
            .collect();
        // chain criterion among the new pairs: drop (h,g1) if some other lcm properly divides it
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            if cand[a].2 {
                continue;
            }
            for b in 0..cand.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cand[b].1.divides(&cand[a].1) && (cand[b].1 != cand[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // among pairs sharing an lcm with a coprime one, the product criterion removes them all
        let mut new_pairs = Vec::new();
        for (k, (g, l, coprime, s)) in cand.drain(..).enumerate() {
            if !keep[k] {
                continue;
            }
            if coprime {
                continue;
            }
            new_pairs.push(Pair { i: g, j: hi, lcm: l, sugar: s });
        }
        // old pairs made redundant by h
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = hlm.lcm(elems[p.i].poly.lm());
            let lj = hlm.lcm(elems[p.j].poly.lm());
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);
        for e in &mut self.elems {
            if e.active && hlm.divides(e.poly.lm()) {
                e.active = false;
            }
        }
        let mask = hlm.divmask();
        self.elems.push(Elem { poly: h, sugar, mask, active: true });
    }

    fn spoly(&self, p: &Pair) -> P {
        P::spoly(&self.elems[p.i].poly, &self.elems[p.j].poly, &p.lcm, self.order)
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = a.sugar < b.sugar
                || (a.sugar == b.sugar && order.cmp(&a.lcm, &b.lcm) == std::cmp::Ordering::Less);
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn run(&mut self) {
        while !self.trivial {
            let Some(p) = self.select() else { break };
            let s = self.spoly(&p);
            if s.is_zero() {
                continue;
            }
            let reducers = self.reducers();
            let mut h = s.reduce(&reducers, self.order, true);
            drop(reducers);
            if h.is_zero() {
                continue;
            }
            h.normalize();
            self.update(h, p.sugar);
        }
    }

    /// Minimal, interreduced, primitive basis sorted by increasing leading monomial.
    fn finish(self) -> Vec<P> {
        let order = self.order;
        if self.trivial {
            return vec![self.elems[0].poly.one_like()];
        }
        let mut polys: Vec<P> = self.elems.into_iter().filter(|e| e.active).map(|e| e.poly).collect();
        // minimality: drop elements whose leading monomial is divisible by another's
        let mut keep = vec![true; polys.len()];
        for a in 0..polys.len() {
            for b in 0..polys.len() {
                if a != b && keep[b] && polys[b].lm().divides(polys[a].lm()) && (polys[b].lm() != polys[a].lm() || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut k = keep.iter();
        polys.retain(|_| *k.next().unwrap());
        polys.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        // tail-reduce each element by the others
        let mut out = Vec::with_capacity(polys.len());
        for idx in 0..polys.len() {
            let reducers: Vec<Reducer<'_, P>> = polys
                .iter()
                .enumerate()
                .filter(|(o, _)| *o != idx)
                .map(|(_, p)| Reducer { poly: p, mask: p.lm().divmask() })
                .collect();
            let mut r = polys[idx].reduce(&reducers, order, true);
            r.normalize();
            out.push(r);
        }
        out
    }
}

/// Reduced Gröbner basis (primitive or monic representatives) of the given polynomials.
pub(crate) fn compute<P: GbPoly>(input: Vec<P>, order: MonomialOrder) -> Vec<P> {
    let mut input: Vec<P> = input.into_iter().filter(|p| !p.is_zero()).collect();
    if input.is_empty() {
        return vec![];
    }
    for p in &mut input {
        p.normalize();
    }
    // cheap polynomials first
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()).then(a.len().cmp(&b.len())));
    let mut eng = Engine::new(order);
    for p in input {
        let reducers = eng.reducers();
        let mut h = if reducers.is_empty() { p } else { p.reduce(&reducers, order, false) };
        drop(reducers);
        if h.is_zero() {
            continue;
        }
        h.normalize();
        let sugar = h.max_degree();
        eng.update(h, sugar);
        if eng.trivial {
            break;
        }
    }
    eng.run();
    eng.finish()
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub(crate) fn is_groebner<P: GbPoly>(basis: &[P], order: MonomialOrder) -> bool {
    let reducers: Vec<Reducer<'_, P>> = basis.iter().map(|p| Reducer { poly: p, mask: p.lm().divmask() }).collect();
    let mut eng = Engine::new(order);
    for p in basis {
        eng.elems.push(Elem { poly: p.clone(), sugar: 0, mask: p.lm().divmask(), active: true });
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i].lm().lcm(basis[j].lm());
            let s = eng.spoly(&Pair { i, j, lcm, sugar: 0 });
            if !s.reduce(&reducers, order, true).is_zero() {
                return false;
            }
        }
    }
    true
}
