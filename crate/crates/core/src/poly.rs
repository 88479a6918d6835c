//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in strictly decreasing graded lexicographic order
//! (total degree first, ties broken by comparing exponents of x1, x2, ...
//! in turn), with no zero coefficients stored. Two polynomials are
//! mathematically equal iff they are structurally equal.
//!
//! Every polynomial carries the arity `nvars` of its ambient ring, and
//! mixing arities in a binary operation is a bug (asserted). Substituting
//! a variable keeps the arity, it just leaves that variable unused.

use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a single monomial; index i is the power of x_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Quotient exponent vector; requires `other.divides(self)`.
    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    /// Invariant: strictly decreasing monomials, no zero coefficients.
    terms: Vec<(Mono, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.push((Mono(vec![0; nvars]), c));
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    /// The variable x_{var+1} as a polynomial.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars);
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Polynomial { nvars, terms: vec![(Mono(exps), Rational::one())] }
    }

    /// Builds a polynomial from unordered (exponents, coefficient) pairs.
    pub fn from_raw_terms(nvars: usize, raw: Vec<(Vec<u32>, Rational)>) -> Self {
        let mut terms: Vec<(Mono, Rational)> = raw
            .into_iter()
            .map(|(e, c)| {
                assert_eq!(e.len(), nvars, "exponent vector arity mismatch");
                (Mono(e), c)
            })
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Mono, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial { nvars, terms: merged }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_constant())
    }

    /// Constant value if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.total_degree())
    }

    /// Degree in one variable (0 for the zero polynomial).
    pub fn degree(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Highest variable index that actually occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i))
            .max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Leading coefficient in graded-lex order.
    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Dense coefficient list with respect to `var`, highest power first.
    ///
    /// Entry k is the coefficient of var^(d-k) as a polynomial in the other
    /// variables (same arity, `var` unused). Zero coefficients are included.
    pub fn coefficients(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree(var) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut rest = m.0.clone();
            rest[var] = 0;
            let slot = &mut out[d - e];
            let term = Polynomial { nvars: self.nvars, terms: vec![(Mono(rest), c.clone())] };
            *slot = &*slot + &term;
        }
        out
    }

    /// Leading coefficient with respect to `var` (the whole polynomial if
    /// `var` does not occur).
    pub fn lc(&self, var: usize) -> Polynomial {
        self.coefficients(var).into_iter().next().unwrap()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes a rational for `var`; arity is preserved.
    pub fn evaluate_partial(&self, var: usize, value: &Rational) -> Polynomial {
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut rest = m.0.clone();
            rest[var] = 0;
            let coeff = if e == 0 { c.clone() } else { c * crate::rational::pow_rat(value, e) };
            raw.push((rest, coeff));
        }
        Polynomial::from_raw_terms(self.nvars, raw)
    }

    /// Full evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= crate::rational::pow_rat(&point[i], e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-embeds into a ring with more variables (appended, unused).
    pub fn extend_vars(&self, new_nvars: usize) -> Polynomial {
        assert!(new_nvars >= self.nvars);
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(new_nvars, 0);
                (e, c.clone())
            })
            .collect();
        Polynomial::from_raw_terms(new_nvars, raw)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut raw = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[var] = e - 1;
            raw.push((d, c * Rational::from_integer(e.into())));
        }
        Polynomial::from_raw_terms(self.nvars, raw)
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars
            .cmp(&other.nvars)
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        // Merge two descending term lists.
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.terms[i].0.cmp(&rhs.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &rhs.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Polynomial { nvars: self.nvars, terms: out }
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut acc: std::collections::BTreeMap<Mono, Rational> = std::collections::BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(existing) => *existing += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms: Vec<_> = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars: self.nvars, terms }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let mut wrote_coeff = false;
            if !a.is_one() || m.is_constant() {
                write!(f, "{a}")?;
                wrote_coeff = true;
            }
            let mut first_var = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_coeff || !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if e == 1 {
                    write!(f, "x{}", i + 1)?;
                } else {
                    write!(f, "x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}
