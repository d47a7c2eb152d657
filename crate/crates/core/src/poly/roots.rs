//! Real-root isolation by Sturm sequences and refinement by bisection.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numeric::{gcd_all, lcm_denoms, Rational, RationalInterval};
use crate::poly::uni::UniPoly;

/// Scale by a positive rational so the coefficients are coprime integers.
fn positive_primitive(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return UniPoly::zero();
    }
    let l = lcm_denoms(p.coeffs());
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = gcd_all(&ints);
    UniPoly::new(ints.into_iter().map(|c| Rational::from(c / &g)).collect())
}

/// Sturm chain `p, p', -rem(p, p'), ...`, each member content-reduced.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidInput("Sturm chain of the zero polynomial".into()));
        }
        let mut seq = vec![positive_primitive(p)];
        let d = positive_primitive(&p.derivative());
        if !d.is_zero() {
            seq.push(d);
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1])?;
            if r.is_zero() {
                break;
            }
            seq.push(positive_primitive(&r.neg()));
        }
        Ok(SturmChain { seq })
    }

    /// The last chain member is gcd(p, p') up to a constant.
    pub fn is_squarefree(&self) -> bool {
        self.seq.last().unwrap().is_constant()
    }

    pub fn variations(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for q in &self.seq {
            let s = q.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Number of distinct real roots in `(a, b]`, for `a < b` and `p(a) != 0`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    pub fn poly(&self) -> &UniPoly {
        &self.seq[0]
    }
}

/// Strict bound: every real root lies in `(-B, B)`.
pub fn root_bound(p: &UniPoly) -> Rational {
    let lead = p.lead().abs();
    let mut m = Rational::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let r = c.abs().checked_div(&lead).unwrap();
        if r > m {
            m = r;
        }
    }
    // 1 + max|a_i/a_n|, rounded up to an integer, plus one for strictness
    let b = &m + &Rational::one();
    let ceil = (b.numer() + b.denom() - BigInt::one()) / b.denom();
    Rational::from(ceil + BigInt::one())
}

/// Isolate every real root of a squarefree polynomial.
///
/// Returns disjoint intervals sorted increasingly. Each is either `[r, r]`
/// for an exact rational root, or `[lo, hi]` with `p(lo)·p(hi) < 0` and
/// exactly one root inside, of width at most one.
pub fn sturm_isolate(p: &UniPoly) -> Result<Vec<RationalInterval>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("cannot isolate roots of the zero polynomial".into()));
    }
    if p.is_constant() {
        return Ok(vec![]);
    }
    let chain = SturmChain::new(p)?;
    if !chain.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let b = root_bound(p);
    let mut out = Vec::new();
    isolate_rec(&chain, -&b, b.clone(), chain.count(&-&b, &b), &mut out)?;
    // unit width keeps the intervals readable
    let one = Rational::one();
    Ok(out
        .into_iter()
        .map(|mut iv| {
            while iv.width() > one {
                iv = bisect_once(p, &iv);
            }
            iv
        })
        .collect())
}

fn isolate_rec(
    chain: &SturmChain,
    a: Rational,
    b: Rational,
    n: usize,
    out: &mut Vec<RationalInterval>,
) -> Result<()> {
    // invariant: p(a) != 0, exactly n roots in (a, b]
    let p = chain.poly();
    if n == 0 {
        return Ok(());
    }
    if n == 1 {
        if p.sign_at(&b) == 0 {
            out.push(RationalInterval::point(b));
        } else {
            out.push(RationalInterval::new(a, b)?);
        }
        return Ok(());
    }
    let c = Rational::midpoint(&a, &b);
    if p.sign_at(&c) != 0 {
        let left = chain.count(&a, &c);
        isolate_rec(chain, a, c.clone(), left, out)?;
        return isolate_rec(chain, c, b, n - left, out);
    }
    // c is a root: carve out a neighborhood containing no other root
    let mut delta = (&b - &a) * Rational::new(1, 4)?;
    loop {
        let lo = &c - &delta;
        let hi = &c + &delta;
        if p.sign_at(&lo) != 0 && p.sign_at(&hi) != 0 && chain.count(&lo, &hi) == 1 {
            let left = chain.count(&a, &lo);
            isolate_rec(chain, a, lo, left, out)?;
            out.push(RationalInterval::point(c.clone()));
            let right = n - left - 1;
            return isolate_rec(chain, hi, b, right, out);
        }
        delta = delta * Rational::new(1, 2)?;
    }
}

/// Shrink an isolating interval of a squarefree polynomial to width at most `width`.
pub fn refine_root(p: &UniPoly, iv: &RationalInterval, width: &Rational) -> Result<RationalInterval> {
    if iv.is_point() {
        return if p.sign_at(iv.lo()) == 0 {
            Ok(iv.clone())
        } else {
            Err(Error::NotIsolating(format!("{iv} is a point interval at a non-root")))
        };
    }
    let mut lo = iv.lo().clone();
    let mut hi = iv.hi().clone();
    let slo = p.sign_at(&lo);
    let shi = p.sign_at(&hi);
    if slo == 0 {
        return Ok(RationalInterval::point(lo));
    }
    if shi == 0 {
        return Ok(RationalInterval::point(hi));
    }
    if slo == shi {
        return Err(Error::NotIsolating(format!("no sign change on {iv}")));
    }
    let chain = SturmChain::new(p)?;
    if chain.count(&lo, &hi) != 1 {
        return Err(Error::NotIsolating(format!("{iv} does not contain exactly one root")));
    }
    while &hi - &lo > *width {
        let c = Rational::midpoint(&lo, &hi);
        let s = p.sign_at(&c);
        if s == 0 {
            return Ok(RationalInterval::point(c));
        }
        if s == slo {
            lo = c;
        } else {
            hi = c;
        }
    }
    RationalInterval::new(lo, hi)
}

/// One bisection step on an isolating interval; keeps the root inside.
pub(crate) fn bisect_once(p: &UniPoly, iv: &RationalInterval) -> RationalInterval {
    if iv.is_point() {
        return iv.clone();
    }
    let c = iv.midpoint();
    let s = p.sign_at(&c);
    if s == 0 {
        return RationalInterval::point(c);
    }
    if s == p.sign_at(iv.lo()) {
        RationalInterval::new(c, iv.hi().clone()).unwrap()
    } else {
        RationalInterval::new(iv.lo().clone(), c).unwrap()
    }
}

/// Count of real roots of a squarefree polynomial.
pub fn real_root_count(p: &UniPoly) -> Result<usize> {
    if p.is_constant() {
        return Ok(0);
    }
    let chain = SturmChain::new(p)?;
    let b = root_bound(p);
    Ok(chain.count(&-&b, &b))
}
