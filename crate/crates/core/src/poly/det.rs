use std::sync::Arc;

use crate::poly::multi::{MultiPoly, Ring};

/// Determinant of a square matrix of polynomials by fraction-free elimination.
pub fn poly_det(ring: &Arc<Ring>, mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(ring);
    }
    let mut sign = false;
    let mut prev = MultiPoly::one(ring);
    for k in 0..n - 1 {
        // prefer the sparsest nonzero pivot
        let piv = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].nterms());
        let Some(piv) = piv else {
            return MultiPoly::zero(ring);
        };
        if piv != k {
            a.swap(piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("ring").expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(ring);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    #[test]
    fn small_determinants() {
        let r = Ring::indexed("x", 2);
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let one = MultiPoly::one(&r);
        // [[1+y, x], [x, 1-y]] -> 1 - x^2 - y^2
        let m = vec![vec![&one + &y, x.clone()], vec![x.clone(), &one - &y]];
        let d = poly_det(&r, m);
        let expect = &(&one - &(&x * &x)) - &(&y * &y);
        assert_eq!(d, expect);
        // pivoting on a zero entry
        let z = MultiPoly::zero(&r);
        let m = vec![vec![z.clone(), one.clone()], vec![one.clone(), z.clone()]];
        assert_eq!(poly_det(&r, m), MultiPoly::constant(&r, Rational::from(-1)));
    }
}
