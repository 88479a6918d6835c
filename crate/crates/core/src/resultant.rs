//! Resultants and discriminants via the subresultant pseudo-remainder
//! sequence.
//!
//! The subresultant sequence keeps intermediate coefficient growth polynomial
//! instead of exponential while every division stays exact, which matters
//! because projection applies resultants to resultants repeatedly.

use crate::poly::Polynomial;
use crate::polygcd::{div_exact, integer_primitive, pseudo_rem};
use crate::rational::pow_rat;

/// Resultant of `a` and `b` with respect to `var`, as a polynomial in the
/// remaining variables (arity preserved).
///
/// Degenerate degrees follow the usual conventions: if either input is zero
/// the resultant is zero; if `a` has positive degree and `b` is free of
/// `var` the resultant is `b^deg(a)`, and symmetrically; two polynomials
/// both free of `var` have resultant 1.
pub fn resultant(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let nv = a.nvars();
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(nv);
    }
    let da = a.degree(var);
    let db = b.degree(var);
    if da == 0 && db == 0 {
        return Polynomial::one(nv);
    }
    if db == 0 {
        return b.pow(da);
    }
    if da == 0 {
        return a.pow(db);
    }
    // Run the sequence on integer-rescaled inputs and divide the scale back
    // out at the end: res(la*a, lb*b) = la^db * lb^da * res(a, b).
    let (mut big_a, la) = integer_primitive(a);
    let (mut big_b, lb) = integer_primitive(b);
    let unscale = (pow_rat(&la, db) * pow_rat(&lb, da)).recip();
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut big_a, &mut big_b);
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
    }
    let mut g = Polynomial::one(nv);
    let mut h = Polynomial::one(nv);
    loop {
        let dega = big_a.degree(var);
        let degb = big_b.degree(var);
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_rem(&big_a, &big_b, var);
        if r.is_zero() {
            // Common factor of positive degree in var.
            return Polynomial::zero(nv);
        }
        big_a = big_b;
        big_b = div_exact(&r, &(&g * &h.pow(delta)));
        g = big_a.lc(var);
        h = if delta == 0 { h } else { div_exact(&g.pow(delta), &h.pow(delta - 1)) };
        if big_b.degree(var) == 0 {
            break;
        }
    }
    let dega = big_a.degree(var);
    let res = div_exact(&big_b.pow(dega), &h.pow(dega - 1)).scale(&unscale);
    if negate {
        -&res
    } else {
        res
    }
}

/// Discriminant of `p` with respect to `var`; requires `deg_var(p) >= 2`.
pub fn discriminant(p: &Polynomial, var: usize) -> Polynomial {
    let m = p.degree(var);
    assert!(m >= 2, "discriminant needs degree at least 2");
    let r = resultant(p, &p.derivative(var), var);
    let q = div_exact(&r, &p.lc(var));
    if (m * (m - 1) / 2) % 2 == 1 {
        -&q
    } else {
        q
    }
}
