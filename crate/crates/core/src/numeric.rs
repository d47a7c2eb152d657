//! Exact rationals and outward-conservative rational intervals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always stored in lowest terms with a positive
/// denominator, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Sign as -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn pow(&self, e: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Midpoint of two rationals.
    pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
        Rational((&a.0 + &b.0) / BigInt::from(2))
    }

    /// Truncated decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.sign() < 0;
        let a = self.0.abs();
        // exponent e with 10^e <= a < 10^(e+1)
        let mut e: i64 = (a.numer().bits() as i64 - a.denom().bits() as i64) * 30103 / 100000;
        let ten = BigRational::from_integer(BigInt::from(10));
        let pow10 = |k: i64| -> BigRational {
            if k >= 0 {
                num_traits::pow(ten.clone(), k as usize)
            } else {
                num_traits::pow(ten.clone(), (-k) as usize).recip()
            }
        };
        while pow10(e) > a {
            e -= 1;
        }
        while pow10(e + 1) <= a {
            e += 1;
        }
        // digits = floor(a * 10^(sig-1-e))
        let scaled = &a * pow10(sig as i64 - 1 - e);
        let digits = scaled.floor().to_integer().to_string();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let point = e + 1; // digits before the decimal point
        if point <= 0 {
            out.push_str("0.");
            for _ in 0..(-point) {
                out.push('0');
            }
            out.push_str(digits.trim_end_matches('0'));
            if out.ends_with('.') {
                out.pop();
            }
        } else if point as usize >= digits.len() {
            out.push_str(&digits);
            for _ in 0..(point as usize - digits.len()) {
                out.push('0');
            }
        } else {
            let (int, frac) = digits.split_at(point as usize);
            out.push_str(int);
            let frac = frac.trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
        out
    }
}

/// Exact binary arithmetic with an explicit operator; division by zero is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_int(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
///
/// Every operation returns an interval containing all exact results for
/// members of the operands.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval(format!("[{lo}, {hi}]")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        Rational::midpoint(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() <= 0 && self.hi.sign() >= 0
    }

    /// Sign common to every member, or `None` when the interval straddles or touches zero.
    pub fn strict_sign(&self) -> Option<i8> {
        if self.lo.sign() > 0 {
            Some(1)
        } else if self.hi.sign() < 0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn add(&self, o: &RationalInterval) -> RationalInterval {
        RationalInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &RationalInterval) -> RationalInterval {
        RationalInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul(&self, o: &RationalInterval) -> RationalInterval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RationalInterval { lo, hi }
    }

    pub fn div(&self, o: &RationalInterval) -> Result<RationalInterval> {
        if o.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = RationalInterval { lo: o.hi.recip()?, hi: o.lo.recip()? };
        Ok(self.mul(&inv))
    }

    pub fn scale(&self, c: &Rational) -> RationalInterval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    pub fn apply(&self, o: &RationalInterval, op: ArithOp) -> Result<RationalInterval> {
        Ok(match op {
            ArithOp::Add => self.add(o),
            ArithOp::Sub => self.sub(o),
            ArithOp::Mul => self.mul(o),
            ArithOp::Div => self.div(o)?,
        })
    }

    /// Smallest interval containing both.
    pub fn hull(&self, o: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn interval_arith(a: &RationalInterval, b: &RationalInterval, op: ArithOp) -> Result<RationalInterval> {
    a.apply(b, op)
}

pub fn sign(a: &Rational) -> i8 {
    a.sign()
}

/// Positive gcd of a list of integers (zero for an empty or all-zero list).
pub(crate) fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in it {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    g
}

/// Lcm of the denominators of a list of rationals.
pub(crate) fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for c in it {
        if !c.denom().is_one() {
            l = l.lcm(c.denom());
        }
    }
    l
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from_int(*other)))
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && self.numer() == &BigInt::from(*other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn iv(a: &str, b: &str) -> RationalInterval {
        RationalInterval::new(r(a), r(b)).unwrap()
    }

    #[test]
    fn arith_examples() {
        assert_eq!(rat_arith(&r("1/2"), &r("1/3"), ArithOp::Add).unwrap(), r("5/6"));
        assert_eq!(rat_arith(&r("2/4"), &r("1/1"), ArithOp::Mul).unwrap(), r("1/2"));
        assert!(matches!(
            rat_arith(&r("1"), &r("0/1"), ArithOp::Div),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn canonical_form() {
        let a = r("-6/-4");
        assert_eq!(a.numer(), &BigInt::from(3));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(r("0/7"), Rational::zero());
        assert_eq!(r("0/7").denom(), &BigInt::one());
        assert_eq!(r("4/-6").to_string(), "-2/3");
        assert_eq!(r("10/5").to_string(), "2");
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(sign(&r("-3/7")), -1);
        assert_eq!(sign(&r("0/1")), 0);
        assert_eq!(sign(&r("5/2")), 1);
    }

    #[test]
    fn interval_examples() {
        assert_eq!(iv("1", "2").add(&iv("3", "4")), iv("4", "6"));
        assert_eq!(iv("-1", "1").mul(&iv("-1", "1")), iv("-1", "1"));
        assert_eq!(iv("0", "0").mul(&iv("1", "2")), iv("0", "0"));
        assert!(iv("1", "2").div(&iv("-1", "1")).is_err());
        assert!(RationalInterval::new(r("2"), r("1")).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(r("1/3").to_decimal(5), "0.33333");
        assert_eq!(r("-2/3").to_decimal(3), "-0.666");
        assert_eq!(r("1234567/1000").to_decimal(4), "1234");
        assert_eq!(r("1/1000").to_decimal(2), "0.001");
        assert_eq!(r("12").to_decimal(5), "12");
        assert_eq!(r("5/2").to_decimal(10), "2.5");
    }
}
