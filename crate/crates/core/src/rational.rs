//! Exact rational scalars and closed rational intervals.
//!
//! Everything in the solver is built on arbitrary-precision rationals.
//! This module adds the two small pieces the rest of the crate keeps
//! needing: the simplest rational strictly inside an open interval
//! (used to pick sample points), and closed-interval arithmetic (used
//! to evaluate polynomial signs at algebraic points).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Rational from an integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Parses an unsigned numeral or decimal literal, e.g. `"7"` or `"2.75"`.
///
/// Decimals are exact: `"0.1"` becomes 1/10. Returns `None` on anything
/// that is not plain digits with at most one interior point.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    if s.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().ok()?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rational::new(num, den))
}

/// Simplest rational strictly between `lo` and `hi` (requires `lo < hi`).
///
/// "Simplest" means smallest denominator, ties broken toward zero; in
/// particular an interval containing zero yields zero, and an interval
/// containing integers yields the integer closest to zero.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "simplest_between needs a non-empty open interval");
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !hi.is_positive() {
        return -simplest_nonneg(&-hi.clone(), &-lo.clone());
    }
    simplest_nonneg(lo, hi)
}

/// Same contract as `simplest_between`, restricted to `0 <= lo < hi`.
fn simplest_nonneg(lo: &Rational, hi: &Rational) -> Rational {
    let n = lo.floor();
    let next = &n + Rational::one();
    if &next < hi {
        // An integer lies strictly inside; the smallest one is closest to 0.
        return next;
    }
    // No integer inside, so both endpoints share the integer part n and the
    // answer is n + 1/r for the simplest r in the reciprocal interval.
    let a = lo - &n;
    let b = hi - &n;
    let r = if a.is_zero() {
        // Reciprocal interval is (1/b, infinity): take the smallest integer
        // strictly above 1/b.
        b.recip().floor() + Rational::one()
    } else {
        simplest_nonneg(&b.recip(), &a.recip())
    };
    n + r.recip()
}

/// Closed interval `[lo, hi]` with exact rational endpoints.
///
/// Operations are outward-exact: the result interval contains every value
/// obtainable by applying the operation to members of the operands. Exact
/// rational endpoints mean no rounding happens at all, so results are the
/// tightest intervals for each single operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every member, if they all agree: -1, 0 (point zero), or 1.
    pub fn definite_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Image of the interval under `x -> x^e`, tight for each parity.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return RatInterval::point(Rational::one());
        }
        let lo_p = pow_rat(&self.lo, e);
        let hi_p = pow_rat(&self.hi, e);
        if e % 2 == 1 {
            RatInterval::new(lo_p, hi_p)
        } else if !self.lo.is_negative() {
            RatInterval::new(lo_p, hi_p)
        } else if !self.hi.is_positive() {
            RatInterval::new(hi_p, lo_p)
        } else {
            // Straddles zero: even powers dip to zero and peak at an endpoint.
            RatInterval::new(Rational::zero(), lo_p.max(hi_p))
        }
    }
}

/// `base^e` by binary exponentiation.
pub fn pow_rat(base: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    let mut b = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}
