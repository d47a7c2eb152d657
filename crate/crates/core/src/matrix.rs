//! Linear matrices `A(x) = A0 + x1 A1 + ... + xn An` and the polynomial
//! systems derived from them.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::poly::{poly_det, Monomial, MultiPoly, Ring};

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect()).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn add(&self, o: &RatMatrix) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * o.get(k, j);
                    out.data[i * o.cols + j] += &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                let mut s = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut d = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                for j in 0..n {
                    a.data.swap(p * n + j, k * n + j);
                }
                d = -d;
            }
            let piv = a.get(k, k).clone();
            d *= &piv;
            let inv = piv.recip().unwrap();
            for i in k + 1..n {
                let f = a.get(i, k) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let t = &f * a.get(k, j);
                    a.data[i * n + j] -= &t;
                }
            }
        }
        d
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !a.get(i, k).is_zero())
                .ok_or_else(|| Error::InvalidInput("singular matrix".into()))?;
            if p != k {
                for j in 0..n {
                    a.data.swap(p * n + j, k * n + j);
                    inv.data.swap(p * n + j, k * n + j);
                }
            }
            let pinv = a.get(k, k).recip()?;
            for j in 0..n {
                a.data[k * n + j] *= &pinv;
                inv.data[k * n + j] *= &pinv;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a.get(i, k).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &f * a.get(k, j);
                    a.data[i * n + j] -= &t;
                    let t = &f * inv.get(k, j);
                    inv.data[i * n + j] -= &t;
                }
            }
        }
        Ok(inv)
    }
}

/// The pencil `A0 + x1 A1 + ... + xn An` of `m × m` rational matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMatrix {
    m: usize,
    n: usize,
    mats: Vec<RatMatrix>,
}

impl LinearMatrix {
    pub fn new(mats: Vec<RatMatrix>) -> Result<Self> {
        if mats.len() < 2 {
            return Err(Error::InvalidInput("a linear matrix needs A0 and at least one Ai".into()));
        }
        let m = mats[0].rows();
        if m == 0 {
            return Err(Error::InvalidInput("matrix size must be at least 1".into()));
        }
        if mats.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::DimensionMismatch(format!("all matrices must be {m}x{m}")));
        }
        Ok(LinearMatrix { m, n: mats.len() - 1, mats })
    }

    pub fn from_ints(mats: &[&[&[i64]]]) -> Result<Self> {
        Self::new(mats.iter().map(|a| RatMatrix::from_ints(a)).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `A0` at index 0, then `A1..An`.
    pub fn mats(&self) -> &[RatMatrix] {
        &self.mats
    }

    pub fn x_ring(&self) -> Arc<Ring> {
        Ring::indexed("x", self.n)
    }

    /// `A(x)` evaluated at a rational point.
    pub fn eval(&self, x: &[Rational]) -> RatMatrix {
        let mut out = self.mats[0].clone();
        for (k, xk) in x.iter().enumerate() {
            out = out.add(&self.mats[k + 1].scale(xk));
        }
        out
    }

    /// Entries of `A(x)` as polynomials in `ring`, variable `x_k` at index `x_offset + k - 1`.
    pub(crate) fn poly_entries(&self, ring: &Arc<Ring>, x_offset: usize) -> Vec<Vec<MultiPoly>> {
        let nv = ring.nvars();
        (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|j| {
                        let mut terms = vec![(Monomial::one(nv), self.mats[0].get(i, j).clone())];
                        for k in 1..=self.n {
                            terms.push((Monomial::var(nv, x_offset + k - 1), self.mats[k].get(i, j).clone()));
                        }
                        MultiPoly::from_terms(ring, terms).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    /// `det A(x)` in `Q[x1..xn]`.
    pub fn determinant(&self) -> MultiPoly {
        let ring = self.x_ring();
        poly_det(&ring, self.poly_entries(&ring, 0))
    }

    /// The pencil `B(x) = A(Mx)`: `B0 = A0`, `Bj = Σ_k M[k][j] Ak`.
    pub fn change_of_variables(&self, mm: &RatMatrix) -> Result<LinearMatrix> {
        if mm.rows() != self.n || mm.cols() != self.n {
            return Err(Error::DimensionMismatch(format!("change of variables must be {0}x{0}", self.n)));
        }
        if mm.det().is_zero() {
            return Err(Error::InvalidInput("singular change of variables".into()));
        }
        let mut mats = vec![self.mats[0].clone()];
        for j in 0..self.n {
            let mut b = RatMatrix::zeros(self.m, self.m);
            for k in 0..self.n {
                let c = mm.get(k, j);
                if !c.is_zero() {
                    b = b.add(&self.mats[k + 1].scale(c));
                }
            }
            mats.push(b);
        }
        LinearMatrix::new(mats)
    }

    /// Instantiate `x1 = t0`, giving a pencil in `x2..xn` (renumbered from 1).
    pub fn substitute_x1(&self, t0: &Rational) -> Result<LinearMatrix> {
        if self.n < 2 {
            return Err(Error::InvalidInput("cannot instantiate the only variable".into()));
        }
        let mut mats = vec![self.mats[0].add(&self.mats[1].scale(t0))];
        mats.extend(self.mats[2..].iter().cloned());
        LinearMatrix::new(mats)
    }
}

/// Polynomial system over a ring split into labeled variable blocks.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub ring: Arc<Ring>,
    pub blocks: Vec<(String, usize)>,
    pub polys: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn block_size(&self, label: &str) -> usize {
        self.blocks.iter().find(|(l, _)| l == label).map_or(0, |b| b.1)
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }
}

fn incidence_ring(n: usize, m: usize, with_z: bool) -> Arc<Ring> {
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend((1..=m).map(|i| format!("y{i}")));
    if with_z {
        names.extend((1..=m + 1).map(|i| format!("z{i}")));
    }
    Ring::new(names)
}

fn check_u(u: &[Rational], m: usize) -> Result<()> {
    if u.len() != m + 1 {
        return Err(Error::DimensionMismatch(format!("u must have length {}", m + 1)));
    }
    if u[m].is_zero() {
        return Err(Error::InvalidInput("u_(m+1) must be nonzero".into()));
    }
    Ok(())
}

/// The `m + 1` polynomials of `A(x)y` and `u1 y1 + ... + um ym - u_(m+1)`, in `ring`.
fn incidence_polys(a: &LinearMatrix, u: &[Rational], ring: &Arc<Ring>) -> Vec<MultiPoly> {
    let (n, m) = (a.n(), a.m());
    let entries = a.poly_entries(ring, 0);
    let ys: Vec<MultiPoly> = (0..m).map(|j| MultiPoly::var(ring, n + j)).collect();
    let mut polys: Vec<MultiPoly> = entries
        .iter()
        .map(|row| row.iter().zip(&ys).fold(MultiPoly::zero(ring), |acc, (e, y)| &acc + &(e * y)))
        .collect();
    let mut lin = MultiPoly::constant(ring, -&u[m]);
    for (j, y) in ys.iter().enumerate() {
        lin = &lin + &y.scale(&u[j]);
    }
    polys.push(lin);
    polys
}

impl LinearMatrix {
    pub fn incidence_system(&self, u: &[Rational]) -> Result<PolySystem> {
        check_u(u, self.m)?;
        let ring = incidence_ring(self.n, self.m, false);
        let polys = incidence_polys(self, u, &ring);
        Ok(PolySystem { ring, blocks: vec![("x".into(), self.n), ("y".into(), self.m)], polys })
    }

    pub fn fiber_system(&self, u: &[Rational], t0: &Rational) -> Result<PolySystem> {
        let mut sys = self.incidence_system(u)?;
        let x1 = MultiPoly::var(&sys.ring, 0);
        sys.polys.push(&x1 - &MultiPoly::constant(&sys.ring, t0.clone()));
        Ok(sys)
    }

    /// Square Lagrange system for critical points of the `x1`-projection on
    /// the incidence variety of `A(Mx)`, in variables `(x, y, z)`.
    pub fn lagrange_system(&self, mm: &RatMatrix, u: &[Rational], v: &[Rational]) -> Result<PolySystem> {
        let (n, m) = (self.n, self.m);
        check_u(u, m)?;
        if u[..m].iter().all(Rational::is_zero) {
            return Err(Error::InvalidInput("(u1..um) must be nonzero".into()));
        }
        if v.len() != m + 1 {
            return Err(Error::DimensionMismatch(format!("v must have length {}", m + 1)));
        }
        if v.iter().all(Rational::is_zero) {
            return Err(Error::InvalidInput("v must be nonzero".into()));
        }
        let b = self.change_of_variables(mm)?;
        let ring = incidence_ring(n, m, true);
        let f = incidence_polys(&b, u, &ring);
        let zs: Vec<MultiPoly> = (0..=m).map(|i| MultiPoly::var(&ring, n + m + i)).collect();
        let mut polys = f.clone();
        // J = Jacobian of f w.r.t. (x2..xn, y1..ym); append the entries of J' z
        for col in 1..n + m {
            let mut e = MultiPoly::zero(&ring);
            for (fi, zi) in f.iter().zip(&zs) {
                let d = fi.partial_derivative(col);
                if !d.is_zero() {
                    e = &e + &(&d * zi);
                }
            }
            polys.push(e);
        }
        let mut last = MultiPoly::constant(&ring, Rational::from(-1));
        for (vi, zi) in v.iter().zip(&zs) {
            last = &last + &zi.scale(vi);
        }
        polys.push(last);
        Ok(PolySystem { ring, blocks: vec![("x".into(), n), ("y".into(), m), ("z".into(), m + 1)], polys })
    }
}

/// Random data for one level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomDraw {
    pub mm: RatMatrix,
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    pub fiber: Rational,
    pub seed: u64,
}

impl RandomDraw {
    /// Integer entries uniform in `[-bound, bound]`, resampled until the invariants hold.
    pub fn sample<R: Rng>(rng: &mut R, n: usize, m: usize, bound: i64, seed: u64) -> Self {
        let bound = bound.max(1);
        let int = |rng: &mut R| Rational::from(rng.gen_range(-bound..=bound));
        let mm = loop {
            let mut mm = RatMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    mm.set(i, j, int(rng));
                }
            }
            if !mm.det().is_zero() {
                break mm;
            }
        };
        let u = loop {
            let u: Vec<Rational> = (0..=m).map(|_| int(rng)).collect();
            if !u[m].is_zero() && u[..m].iter().any(|c| !c.is_zero()) {
                break u;
            }
        };
        let v = loop {
            let v: Vec<Rational> = (0..=m).map(|_| int(rng)).collect();
            if v.iter().any(|c| !c.is_zero()) {
                break v;
            }
        };
        let fiber = int(rng);
        RandomDraw { mm, u, v, fiber, seed }
    }
}

/// Dense random pencil with integer entries in `[-bound, bound]`.
pub fn random_pencil<R: Rng>(rng: &mut R, m: usize, n: usize, bound: i64) -> LinearMatrix {
    let bound = bound.max(0);
    let mats = (0..=n)
        .map(|_| {
            let mut a = RatMatrix::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    a.set(i, j, Rational::from(rng.gen_range(-bound..=bound)));
                }
            }
            a
        })
        .collect();
    LinearMatrix::new(mats).expect("well-formed")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn circle() -> LinearMatrix {
        LinearMatrix::from_ints(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]], &[&[1, 0], &[0, -1]]]).unwrap()
    }

    #[test]
    fn circle_determinant() {
        let d = circle().determinant();
        assert_eq!(d.to_string(), "-x1^2 - x2^2 + 1");
    }

    #[test]
    fn change_of_variables_examples() {
        let a = circle();
        assert_eq!(a.change_of_variables(&RatMatrix::identity(2)).unwrap(), a);
        let swap = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let b = a.change_of_variables(&swap).unwrap();
        assert_eq!(b.mats()[1], a.mats()[2]);
        assert_eq!(b.mats()[2], a.mats()[1]);
        let sing = RatMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(a.change_of_variables(&sing).is_err());
        // B(x0') with x0' = M^{-1} x0 equals A(x0)
        let mm = RatMatrix::from_ints(&[&[2, 1], &[-1, 3]]);
        let b = a.change_of_variables(&mm).unwrap();
        let x0 = vec![Rational::from(3), Rational::new(1, 2).unwrap()];
        let x0p = mm.inverse().unwrap().mul_vec(&x0);
        assert_eq!(b.eval(&x0p), a.eval(&x0));
    }

    #[test]
    fn substitute_x1_examples() {
        let a = circle();
        let s = a.substitute_x1(&Rational::zero()).unwrap();
        assert_eq!(s.n(), 1);
        assert_eq!(s.mats()[0], a.mats()[0]);
        assert_eq!(s.determinant().to_string(), "-x1^2 + 1");
        let one_var = s.clone();
        assert!(one_var.substitute_x1(&Rational::one()).is_err());
    }

    #[test]
    fn incidence_examples() {
        let a = LinearMatrix::from_ints(&[&[&[0]], &[&[1]]]).unwrap();
        let sys = a.incidence_system(&[Rational::one(), Rational::one()]).unwrap();
        let s: Vec<String> = sys.polys.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["x1*y1", "y1 - 1"]);

        let sys = circle().incidence_system(&[Rational::zero(), Rational::one(), Rational::one()]).unwrap();
        let s: Vec<String> = sys.polys.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["x2*y1 + x1*y2 + y1", "x1*y1 - x2*y2 + y2", "y2 - 1"]);
        assert!(circle().incidence_system(&[Rational::one(), Rational::one(), Rational::zero()]).is_err());

        let fib = circle().fiber_system(&[Rational::zero(), Rational::one(), Rational::one()], &Rational::zero()).unwrap();
        assert_eq!(fib.polys.len(), 4);
        assert_eq!(fib.polys[3].to_string(), "x1");
    }

    #[test]
    fn lagrange_shape() {
        let a = LinearMatrix::from_ints(&[&[&[1]], &[&[2]], &[&[3]]]).unwrap();
        let sys = a
            .lagrange_system(&RatMatrix::identity(2), &[Rational::one(), Rational::one()], &[Rational::one(), Rational::from(2)])
            .unwrap();
        assert_eq!(sys.polys.len(), 2 + 2 + 1);
        assert_eq!(sys.nvars(), 2 + 2 + 1);
        // J has m+1 = 2 rows and n+m-1 = 2 columns, so J'z contributes 2 equations
        let jz = &sys.polys[2..4];
        for p in jz {
            for (mono, _) in p.terms() {
                let zdeg: u16 = mono.exps()[3..].iter().sum();
                assert!(zdeg <= 1);
                assert!(mono.degree() <= 2);
            }
        }
    }
}
