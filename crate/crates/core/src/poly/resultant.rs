use crate::error::{Error, Result};
use crate::poly::det::poly_det;
use crate::poly::multi::MultiPoly;

/// Sylvester resultant of `p` and `q` with respect to `var`.
///
/// The result lives in the same ring and does not involve `var`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if !super::multi::same_ring(p.ring(), q.ring()) {
        return Err(Error::RingMismatch("resultant operands".into()));
    }
    let ring = p.ring();
    let a = p.coeffs_in(var);
    let b = q.coeffs_in(var);
    if a.is_empty() || b.is_empty() {
        return Ok(MultiPoly::zero(ring));
    }
    let dp = a.len() - 1;
    let dq = b.len() - 1;
    if dp == 0 && dq == 0 {
        return Ok(MultiPoly::one(ring));
    }
    let n = dp + dq;
    let mut m = vec![vec![MultiPoly::zero(ring); n]; n];
    // rows 0..dq hold shifted coefficients of p, highest degree first
    for i in 0..dq {
        for (k, c) in a.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..dp {
        for (k, c) in b.iter().rev().enumerate() {
            m[dq + i][i + k] = c.clone();
        }
    }
    Ok(poly_det(ring, m))
}
