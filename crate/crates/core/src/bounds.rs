//! Multilinear Bézout bounds on the degrees computed by the solver.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn binom(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn check_t(m: usize, n: usize, t: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("m and n must be positive".into()));
    }
    if t == 0 || t > n + 2 * m - 2 {
        return Err(Error::InvalidInput(format!("t = {t} outside 1..={}", n + 2 * m - 2)));
    }
    Ok(())
}

/// `Δ(m, n; t)` by the closed binomial sums.
pub fn delta(m: usize, n: usize, t: usize) -> Result<u128> {
    check_t(m, n, t)?;
    let (m, n, t) = (m as i64, n as i64, t as i64);
    if t <= m {
        return Ok((0..=n.min(t)).map(|i| binom(t, i)).sum());
    }
    if t <= n + m - 1 {
        let mut s = 0;
        for i in 1..=m.min(n) {
            for j in (t - 2 * m + 1).max(0)..=(t - m).min(i - 1).min(n - 1) {
                s += binom(m, i) * binom(t - m, j);
            }
        }
        return Ok(s);
    }
    let top = t - m - n + 1;
    let mut s = 0;
    for i in 1..=m {
        for j in 0..n {
            for l in 0..=top {
                let jl = j + l;
                let il = i + l;
                if jl >= (t - 2 * m + 1).max(0) && jl <= n - 1 && il >= (t - 2 * m + 2).max(1) && il <= n.min(t - n + 1) {
                    s += binom(m, i) * binom(n - 1, j) * binom(top, l);
                }
            }
        }
    }
    Ok(s)
}

/// `Δ(m, n; t)` as the coefficient sum of a product of linear forms modulo
/// `(s1^(n+1), s2^m, s3^m)`.
pub fn delta_truncated(m: usize, n: usize, t: usize) -> Result<u128> {
    check_t(m, n, t)?;
    let (e1, e2, e3) = if t <= m {
        (t, 0, 0)
    } else if t < n + m {
        (m, t - m, 0)
    } else {
        (m, n - 1, t - m - n + 1)
    };
    // factors (s1+s2)^e1 (s1+s3)^e2 (s3+s2)^e3, as pairs of variable indices
    let mut factors = vec![(0usize, 1usize); e1];
    factors.extend(std::iter::repeat((0, 2)).take(e2));
    factors.extend(std::iter::repeat((2, 1)).take(e3));
    let caps = [n, m - 1, m - 1];
    let idx = |a: usize, b: usize, c: usize| (a * m + b) * m + c;
    let mut coef = vec![0u128; (n + 1) * m * m];
    coef[idx(0, 0, 0)] = 1;
    for (u, v) in factors {
        let mut next = vec![0u128; coef.len()];
        for a in 0..=n {
            for b in 0..m {
                for c in 0..m {
                    let x = coef[idx(a, b, c)];
                    if x == 0 {
                        continue;
                    }
                    for var in [u, v] {
                        let mut e = [a, b, c];
                        e[var] += 1;
                        if e[var] <= caps[var] {
                            next[idx(e[0], e[1], e[2])] += x;
                        }
                    }
                }
            }
        }
        coef = next;
    }
    Ok(coef.iter().sum())
}

/// `Δ(m, n; n + 2m - 2) = Σ_i C(m, n-i) C(n-1, i) C(m-1, i)`, the bound on the
/// number of critical points computed at the top level.
pub fn delta_top(m: usize, n: usize) -> u128 {
    let (m, n) = (m as i64, n as i64);
    (0..m).map(|i| binom(m, n - i) * binom(n - 1, i) * binom(m - 1, i)).sum()
}

/// `b(m, n) = Σ_{j=1..n} Δ(m, j; j + 2m - 2)`.
pub fn b_bound(m: usize, n: usize) -> Result<u128> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("m and n must be positive".into()));
    }
    Ok((1..=n).map(|j| delta_top(m, j)).sum())
}

/// `n² m² (n+m)⁵ C(n+m, n)⁶`.
pub fn complexity_estimate(m: usize, n: usize) -> BigUint {
    let (mb, nb) = (BigUint::from(m), BigUint::from(n));
    let s = BigUint::from(m + n);
    let c = BigUint::from(binom((m + n) as i64, n as i64));
    &nb * &nb * &mb * &mb * s.pow(5) * c.pow(6)
}

/// All `Δ(m, n; t)` together with `b(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBounds {
    pub m: usize,
    pub n: usize,
    /// `(t, Δ(m, n; t))` for `t = 1..=n+2m-2`.
    pub table: Vec<(usize, u128)>,
    pub b: u128,
}

impl DegreeBounds {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        let b = b_bound(m, n)?;
        let table = (1..=n + 2 * m - 2).map(|t| delta(m, n, t).map(|d| (t, d))).collect::<Result<_>>()?;
        Ok(DegreeBounds { m, n, table, b })
    }
}
