//! Rational parametrizations of finite point sets and the operations the
//! recursion performs on them.

use crate::error::{Error, Result};
use crate::matrix::{LinearMatrix, RatMatrix};
use crate::numeric::{Rational, RationalInterval};
use crate::poly::roots::bisect_once;
use crate::poly::{sturm_isolate, UniPoly};

/// Points `(q1(t)/q0(t), ..., qN(t)/q0(t))` for the roots of `qlast`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalParametrization {
    n: usize,
    q0: UniPoly,
    q: Vec<UniPoly>,
    qlast: UniPoly,
}

impl RationalParametrization {
    /// Validates the invariants; `qlast` is normalized.
    pub fn new(q0: UniPoly, q: Vec<UniPoly>, qlast: UniPoly) -> Result<Self> {
        if qlast.is_zero() {
            return Err(Error::InvalidInput("eliminating polynomial is zero".into()));
        }
        let qlast = qlast.primitive();
        if !qlast.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let n = q.len();
        if qlast.is_constant() {
            return Ok(Self::empty(n));
        }
        if q0.rem(&qlast)?.is_zero() || !q0.gcd(&qlast).is_constant() {
            return Err(Error::InvalidInput("q0 and the eliminating polynomial are not coprime".into()));
        }
        Ok(RationalParametrization { n, q0, q, qlast })
    }

    /// The empty set in dimension `n` (`qlast = 1`).
    pub fn empty(n: usize) -> Self {
        RationalParametrization { n, q0: UniPoly::one(), q: vec![UniPoly::zero(); n], qlast: UniPoly::one() }
    }

    /// Single rational point.
    pub fn point(x: &[Rational]) -> Self {
        let q = x.iter().map(|c| UniPoly::constant(c.clone())).collect();
        RationalParametrization { n: x.len(), q0: UniPoly::one(), q, qlast: UniPoly::t() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q0(&self) -> &UniPoly {
        &self.q0
    }

    pub fn q(&self) -> &[UniPoly] {
        &self.q
    }

    pub fn qlast(&self) -> &UniPoly {
        &self.qlast
    }

    pub fn is_empty(&self) -> bool {
        self.qlast.is_constant()
    }

    /// Number of complex points, `deg qlast`.
    pub fn degree(&self) -> usize {
        self.qlast.degree().max(0) as usize
    }

    /// Keep the coordinates listed in `keep` (1-based, in the given order).
    pub fn project(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidInput("projection onto no coordinates".into()));
        }
        if let Some(&bad) = keep.iter().find(|&&i| i == 0 || i > self.n) {
            return Err(Error::InvalidInput(format!("coordinate {bad} out of range 1..={}", self.n)));
        }
        let q = keep.iter().map(|&i| self.q[i - 1].clone()).collect();
        Ok(RationalParametrization { n: keep.len(), q0: self.q0.clone(), q, qlast: self.qlast.clone() })
    }

    /// Apply the linear map `mm` to every point.
    pub fn image(&self, mm: &RatMatrix) -> Result<Self> {
        if mm.rows() != self.n || mm.cols() != self.n {
            return Err(Error::DimensionMismatch(format!("expected a {0}x{0} matrix", self.n)));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let q = (0..self.n)
            .map(|i| {
                (0..self.n).fold(UniPoly::zero(), |acc, k| acc.add(&self.q[k].scale(mm.get(i, k))))
            })
            .collect();
        Ok(RationalParametrization { n: self.n, q0: self.q0.clone(), q, qlast: self.qlast.clone() })
    }

    /// Insert the constant coordinate `t0` at `position` (1-based, up to `n + 1`).
    pub fn lift(&self, t0: &Rational, position: usize) -> Result<Self> {
        if position == 0 || position > self.n + 1 {
            return Err(Error::InvalidInput(format!("lift position {position} out of range 1..={}", self.n + 1)));
        }
        let mut q = self.q.clone();
        let c = if self.is_empty() { UniPoly::zero() } else { self.q0.scale(t0) };
        q.insert(position - 1, c);
        Ok(RationalParametrization { n: self.n + 1, q0: self.q0.clone(), q, qlast: self.qlast.clone() })
    }

    /// Certified boxes around the real points, each of width at most `10^-digits`.
    pub fn extract_real_points(&self, digits: u32) -> Result<Vec<RealPointBox>> {
        self.extract_with_budget(digits, REFINE_BUDGET)
    }

    pub fn extract_with_budget(&self, digits: u32, budget: usize) -> Result<Vec<RealPointBox>> {
        if self.is_empty() {
            return Ok(vec![]);
        }
        let width = Rational::new(1, num_bigint::BigInt::from(10u32).pow(digits))?;
        let mut out = Vec::new();
        for iv in sturm_isolate(&self.qlast)? {
            out.push(self.refine_box(iv, &width, budget)?);
        }
        Ok(out)
    }

    fn refine_box(&self, mut iv: RationalInterval, width: &Rational, budget: usize) -> Result<RealPointBox> {
        for _ in 0..=budget {
            if let Some(b) = self.box_over(&iv)? {
                if b.iter().all(|c| c.width() <= *width) {
                    return Ok(RealPointBox { t_interval: iv, coords: b, source: 0 });
                }
            }
            iv = bisect_once(&self.qlast, &iv);
        }
        Err(Error::RefinementExhausted(budget))
    }

    /// Enclosure of the point over `iv`, or `None` when `q0` may vanish there.
    fn box_over(&self, iv: &RationalInterval) -> Result<Option<Vec<RationalInterval>>> {
        let d = self.q0.eval_interval(iv);
        if d.contains_zero() {
            return Ok(None);
        }
        self.q.iter().map(|p| p.eval_interval(iv).div(&d)).collect::<Result<Vec<_>>>().map(Some)
    }

    /// True iff `qlast` divides `q0^m det A(q/q0)`, i.e. every point lies on `det A = 0`.
    pub fn verify_on_determinant(&self, a: &LinearMatrix) -> Result<bool> {
        if self.n != a.n() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for {} variables", self.n, a.n())));
        }
        if self.is_empty() {
            return Ok(true);
        }
        let m = a.m();
        let mats = a.mats();
        let mut entries = vec![vec![UniPoly::zero(); m]; m];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let mut acc = self.q0.scale(mats[0].get(i, j));
                for k in 0..self.n {
                    acc = acc.add(&self.q[k].scale(mats[k + 1].get(i, j)));
                }
                *e = acc.rem(&self.qlast)?;
            }
        }
        Ok(uni_det(entries)?.rem(&self.qlast)?.is_zero())
    }
}

const REFINE_BUDGET: usize = 4096;

/// Fraction-free determinant over `Q[t]`.
fn uni_det(mut a: Vec<Vec<UniPoly>>) -> Result<UniPoly> {
    let n = a.len();
    let mut sign = Rational::one();
    let mut prev = UniPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(UniPoly::zero());
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?.expect("Bareiss division is exact");
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(a[n - 1][n - 1].scale(&sign))
}

/// A certified real point: the root of `qlast` in `t_interval` maps into `coords`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPointBox {
    pub t_interval: RationalInterval,
    pub coords: Vec<RationalInterval>,
    /// Index of the parametrization within its sample set.
    pub source: usize,
}

impl RealPointBox {
    /// Decimal approximations of the box midpoints.
    pub fn approx(&self, digits: usize) -> Vec<String> {
        self.coords.iter().map(|c| c.midpoint().to_decimal(digits)).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.coords.len() && self.coords.iter().zip(x).all(|(c, v)| c.contains(v))
    }
}

/// Finite union of parametrizations sharing the coordinate count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSet {
    n: usize,
    items: Vec<RationalParametrization>,
}

impl SampleSet {
    pub fn new(n: usize) -> Self {
        SampleSet { n, items: Vec::new() }
    }

    pub fn from_items(n: usize, items: Vec<RationalParametrization>) -> Result<Self> {
        let mut s = SampleSet::new(n);
        for it in items {
            s.push(it)?;
        }
        Ok(s)
    }

    /// Add a parametrization; empty ones are dropped.
    pub fn push(&mut self, rp: RationalParametrization) -> Result<()> {
        if rp.n() != self.n {
            return Err(Error::DimensionMismatch(format!("{} coordinates in a set of dimension {}", rp.n(), self.n)));
        }
        if !rp.is_empty() {
            self.items.push(rp);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[RationalParametrization] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn degree_sum(&self) -> usize {
        self.items.iter().map(RationalParametrization::degree).sum()
    }

    pub fn union(&self, other: &SampleSet) -> Result<SampleSet> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("union of dimensions {} and {}", self.n, other.n)));
        }
        let mut items = self.items.clone();
        items.extend(other.items.iter().cloned());
        Ok(SampleSet { n: self.n, items })
    }

    pub fn image(&self, mm: &RatMatrix) -> Result<SampleSet> {
        let items = self.items.iter().map(|rp| rp.image(mm)).collect::<Result<_>>()?;
        Ok(SampleSet { n: self.n, items })
    }

    pub fn lift(&self, t0: &Rational, position: usize) -> Result<SampleSet> {
        let items = self.items.iter().map(|rp| rp.lift(t0, position)).collect::<Result<_>>()?;
        Ok(SampleSet { n: self.n + 1, items })
    }

    /// Real points of all items, tagged with their item index.
    pub fn extract_real_points(&self, digits: u32) -> Result<Vec<RealPointBox>> {
        let mut out = Vec::new();
        for (k, rp) in self.items.iter().enumerate() {
            for mut b in rp.extract_real_points(digits)? {
                b.source = k;
                out.push(b);
            }
        }
        Ok(out)
    }

    pub fn verify_on_determinant(&self, a: &LinearMatrix) -> Result<Vec<bool>> {
        self.items.iter().map(|rp| rp.verify_on_determinant(a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::tests::circle;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn two_points() -> RationalParametrization {
        // (1,5), (2,7)
        RationalParametrization::new(UniPoly::one(), vec![UniPoly::t(), UniPoly::from_ints(&[3, 2])], UniPoly::from_ints(&[2, -3, 1]))
            .unwrap()
    }

    #[test]
    fn project_keeps_roots() {
        let rp = two_points();
        let p = rp.project(&[1]).unwrap();
        assert_eq!(p.q(), &[UniPoly::t()]);
        assert_eq!(p.qlast(), rp.qlast());
        assert_eq!(rp.project(&[1, 2]).unwrap(), rp);
        assert!(rp.project(&[]).is_err());
        assert!(RationalParametrization::empty(2).project(&[2]).unwrap().is_empty());
    }

    #[test]
    fn image_examples() {
        let rp = two_points();
        assert_eq!(rp.image(&RatMatrix::identity(2)).unwrap(), rp);
        let swap = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let s = rp.image(&swap).unwrap();
        assert_eq!(s.q()[0], rp.q()[1]);
        assert_eq!(s.q()[1], rp.q()[0]);
        let d = rp.image(&RatMatrix::identity(2).scale(&r("2"))).unwrap();
        assert_eq!(d.q()[1], rp.q()[1].scale(&r("2")));
        assert!(rp.image(&RatMatrix::identity(3)).is_err());
    }

    #[test]
    fn lift_roundtrip() {
        let rp = RationalParametrization::point(&[r("2")]);
        let l = rp.lift(&r("5"), 1).unwrap();
        let pts = l.extract_real_points(5).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].contains(&[r("5"), r("2")]));
        assert_eq!(l.project(&[2]).unwrap(), rp);
        assert!(rp.lift(&r("1"), 3).is_err());
        assert_eq!(RationalParametrization::empty(1).lift(&r("1"), 1).unwrap().n(), 2);
    }

    #[test]
    fn union_examples() {
        let a = SampleSet::from_items(1, vec![RationalParametrization::point(&[r("1")])]).unwrap();
        let b = SampleSet::from_items(1, vec![RationalParametrization::point(&[r("2")])]).unwrap();
        assert_eq!(SampleSet::new(1).union(&b).unwrap(), b);
        assert_eq!(a.union(&b).unwrap().len(), 2);
        assert_eq!(a.union(&a).unwrap().len(), 2);
        assert!(a.union(&SampleSet::new(2)).is_err());
    }

    #[test]
    fn extract_sqrt2() {
        let rp = RationalParametrization::new(UniPoly::one(), vec![UniPoly::t()], UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        let pts = rp.extract_real_points(10).unwrap();
        assert_eq!(pts.len(), 2);
        let w = r("1/10000000000");
        for (b, s) in pts.iter().zip([-1, 1]) {
            let c = &b.coords[0];
            assert!(c.width() <= w);
            // bisection oracle: the box straddles sqrt 2 in absolute value
            let (lo, hi) = if s < 0 { (-c.hi(), -c.lo()) } else { (c.lo().clone(), c.hi().clone()) };
            assert!(lo.pow(2) <= r("2") && hi.pow(2) >= r("2"));
        }
        let none = RationalParametrization::new(UniPoly::one(), vec![UniPoly::t()], UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert!(none.extract_real_points(10).unwrap().is_empty());
    }

    #[test]
    fn extract_with_nontrivial_q0() {
        // t^2 - 2 with x = 1/t
        let rp = RationalParametrization::new(UniPoly::t(), vec![UniPoly::one()], UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        let pts = rp.extract_real_points(8).unwrap();
        assert_eq!(pts.len(), 2);
        assert!((pts[1].coords[0].midpoint().to_f64() - 0.5f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn verify_circle() {
        let a = circle();
        assert!(RationalParametrization::point(&[r("1"), r("0")]).verify_on_determinant(&a).unwrap());
        assert!(!RationalParametrization::point(&[r("0"), r("0")]).verify_on_determinant(&a).unwrap());
        // (t, 0) with t^2 = 1/2 is not on the circle; (t, t) is
        let half = UniPoly::new(vec![r("-1/2"), r("0"), r("1")]);
        let off = RationalParametrization::new(UniPoly::one(), vec![UniPoly::t(), UniPoly::zero()], half.clone()).unwrap();
        assert!(!off.verify_on_determinant(&a).unwrap());
        let on = RationalParametrization::new(UniPoly::one(), vec![UniPoly::t(), UniPoly::t()], half).unwrap();
        assert!(on.verify_on_determinant(&a).unwrap());
    }

    #[test]
    fn invariants_checked() {
        let sq = UniPoly::from_ints(&[1, -2, 1]);
        assert!(matches!(
            RationalParametrization::new(UniPoly::one(), vec![UniPoly::t()], sq),
            Err(Error::NotSquarefree)
        ));
        let q = UniPoly::from_ints(&[-1, 1]);
        assert!(RationalParametrization::new(q.clone(), vec![UniPoly::t()], q).is_err());
    }
}
