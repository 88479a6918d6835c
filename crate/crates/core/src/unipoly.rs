//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order of degree with no trailing
//! zeros, so the zero polynomial is the empty vector. This is the
//! representation used for defining polynomials of algebraic numbers and
//! for root isolation; the sparse multivariate type converts to and from it
//! when a polynomial happens to be univariate.

use crate::poly::Polynomial;
use crate::rational::{pow_rat, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants including the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rational {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    /// Remainder of `self` divided by `d` (rational long division).
    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        assert!(!d.is_zero(), "remainder by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let dl = d.leading();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let q = r.last().unwrap() / dl;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let slot = &mut r[k + i];
                    *slot -= &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Pseudo-remainder: the dividend is scaled by powers of the divisor's
    /// leading coefficient so integer coefficients stay integral.
    pub fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        assert!(!d.is_zero(), "remainder by zero polynomial");
        let dd = d.degree();
        let dl = d.leading();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c = &*c * dl;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                let slot = &mut r[k + i];
                *slot -= &lr * dc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic gcd via the subresultant pseudo-remainder sequence. Each
    /// remainder is divided by the predicted factor g*h^delta, which keeps
    /// coefficient growth polynomial where plain rational Euclid explodes,
    /// without the per-step content extraction of a primitive sequence.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let (mut a, mut b) = if a.degree() >= b.degree() {
            (a.make_integer_primitive(), b.make_integer_primitive())
        } else {
            (b.make_integer_primitive(), a.make_integer_primitive())
        };
        let mut g = Rational::one();
        let mut h = Rational::one();
        while b.degree() > 0 {
            let delta = (a.degree() - b.degree()) as u32;
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.make_integer_primitive().monic();
            }
            a = b;
            let down = (&g * &pow_rat(&h, delta)).recip();
            b = UniPoly::new(r.coeffs.iter().map(|c| c * &down).collect());
            g = a.leading().clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => &pow_rat(&g, delta) / &pow_rat(&h, delta - 1),
            };
        }
        // The last nonzero remainder is a constant: the inputs are coprime.
        UniPoly::new(vec![Rational::one()])
    }

    /// Exact quotient by `x - r`; panics if `r` is not a root.
    pub fn deflate_root(&self, r: &Rational) -> UniPoly {
        assert!(!self.is_zero());
        let mut q = vec![Rational::zero(); self.degree()];
        let mut carry = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if i == 0 {
                assert!((c + &carry * r).is_zero(), "deflate_root: not a root");
            } else {
                let qc = c + &carry * r;
                q[i - 1] = qc.clone();
                carry = qc;
            }
        }
        UniPoly::new(q)
    }

    /// Same roots, coefficients scaled to coprime integers with positive
    /// leading coefficient.
    pub fn make_integer_primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            g = -g;
        }
        UniPoly::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    /// Integer coefficient view; requires every denominator to be 1.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(c.denom().is_one(), "non-integer coefficient");
                c.numer().clone()
            })
            .collect()
    }

    /// Extracts a dense view of a multivariate polynomial that only uses
    /// `var`; panics if any other variable occurs.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> UniPoly {
        let mut coeffs = vec![Rational::zero(); p.degree(var) as usize + 1];
        for (m, c) in p.terms() {
            for (i, &e) in m.0.iter().enumerate() {
                assert!(i == var || e == 0, "polynomial is not univariate in the chosen variable");
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    pub fn to_polynomial(&self, nvars: usize, var: usize) -> Polynomial {
        let raw = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0u32; nvars];
                e[var] = i as u32;
                (e, c.clone())
            })
            .collect();
        Polynomial::from_raw_terms(nvars, raw)
    }
}
