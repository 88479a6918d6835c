//! Polynomial divisibility: pseudo-division, exact division, contents,
//! multivariate gcd, and square-free factorization.
//!
//! The gcd runs a subresultant pseudo-remainder sequence on inputs rescaled
//! to integer coefficients, recursing on contents. The known subresultant
//! factor is divided out after each step, which keeps coefficient growth
//! polynomial without any per-step content computation. Every gcd is
//! normalized to have leading coefficient one in graded-lex order so
//! results are canonical.

use crate::poly::Polynomial;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// Scales a nonzero polynomial so its graded-lex leading coefficient is 1.
/// The zero polynomial is returned unchanged.
pub fn monic(p: &Polynomial) -> Polynomial {
    match p.leading_coeff() {
        Some(c) => p.scale(&c.recip()),
        None => p.clone(),
    }
}

/// Rescales `p` by a positive rational so all coefficients are integers
/// with trivial common factor; returns the scaled polynomial and the
/// multiplier used. Keeping heavy arithmetic on integer-valued rationals
/// makes every coefficient operation cheap (no reduction work).
pub fn integer_primitive(p: &Polynomial) -> (Polynomial, Rational) {
    if p.is_zero() {
        return (p.clone(), Rational::one());
    }
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        den_lcm = den_lcm.lcm(c.denom());
        num_gcd = num_gcd.gcd(c.numer());
    }
    let lambda = Rational::new(den_lcm, num_gcd);
    (p.scale(&lambda), lambda)
}

/// Pseudo-remainder of `a` by `b` with respect to `var`:
/// `lc(b)^(da-db+1) * a = q*b + prem(a, b)` with `deg_var(prem) < deg_var(b)`.
///
/// Requires `deg_var(b) >= 1` and `deg_var(a) >= deg_var(b)`.
pub fn pseudo_rem(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let da = a.degree(var);
    let db = b.degree(var);
    assert!(db >= 1 && da >= db, "pseudo_rem degree contract violated");
    let lb = b.lc(var);
    let mut r = a.clone();
    let mut e = da - db + 1;
    while !r.is_zero() && r.degree(var) >= db {
        let lr = r.lc(var);
        let shift = Polynomial::var(a.nvars(), var).pow(r.degree(var) - db);
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
        e -= 1;
    }
    for _ in 0..e {
        r = &r * &lb;
    }
    r
}

/// Exact quotient `a / b`; panics if `b` does not divide `a`.
pub fn div_exact(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let nv = a.nvars();
    let (bm, bc) = (&b.terms()[0].0, &b.terms()[0].1);
    let mut r = a.clone();
    let mut q = Vec::new();
    while !r.is_zero() {
        let (rm, rc) = (&r.terms()[0].0, &r.terms()[0].1);
        assert!(bm.divides(rm), "inexact polynomial division");
        let qm = rm.div(bm);
        let qc = rc / bc;
        let qt = Polynomial::from_raw_terms(nv, vec![(qm.0.clone(), qc.clone())]);
        r = &r - &(&qt * b);
        q.push((qm.0, qc));
    }
    Polynomial::from_raw_terms(nv, q)
}

/// Content of `p` with respect to `var`: the monic gcd of its coefficients
/// viewed as polynomials in the remaining variables. Zero for `p = 0`.
pub fn content(p: &Polynomial, var: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.nvars());
    for c in p.coefficients(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.constant_value().is_some_and(|v| !v.is_zero()) {
            break;
        }
    }
    g
}

pub fn primitive_part(p: &Polynomial, var: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    div_exact(p, &content(p, var))
}

/// Monic gcd of two polynomials (zero if both are zero).
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    let v = match a.max_var().into_iter().chain(b.max_var()).max() {
        Some(v) => v,
        None => return Polynomial::one(a.nvars()),
    };
    if !a.uses_var(v) {
        return gcd(a, &content(b, v));
    }
    if !b.uses_var(v) {
        return gcd(&content(a, v), b);
    }
    let (a, _) = integer_primitive(a);
    let (b, _) = integer_primitive(b);
    let ca = content(&a, v);
    let cb = content(&b, v);
    let c = gcd(&ca, &cb);
    let mut pa = div_exact(&a, &ca);
    let mut pb = div_exact(&b, &cb);
    if pa.degree(v) < pb.degree(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    // Subresultant sequence; g and h are the Collins correction factors.
    let mut g = Polynomial::one(a.nvars());
    let mut h = g.clone();
    loop {
        if pb.degree(v) == 0 {
            // Primitive parts are coprime in v; only the content survives.
            return monic(&c);
        }
        let delta = pa.degree(v) - pb.degree(v);
        let r = pseudo_rem(&pa, &pb, v);
        if r.is_zero() {
            return monic(&(&c * &primitive_part(&pb, v)));
        }
        pa = pb;
        pb = div_exact(&r, &(&g * &h.pow(delta)));
        g = pa.lc(v);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => div_exact(&g.pow(delta), &h.pow(delta - 1)),
        };
    }
}

/// The set of monic square-free factors of `p` (each factor is square-free
/// and two distinct factors share no component; multiplicities are dropped).
/// Constants, including zero, have no factors.
pub fn normalize(p: &Polynomial) -> BTreeSet<Polynomial> {
    let mut out = BTreeSet::new();
    collect_square_free(p, &mut out);
    out
}

fn collect_square_free(p: &Polynomial, out: &mut BTreeSet<Polynomial>) {
    if p.is_constant() {
        return;
    }
    let (p, _) = integer_primitive(p);
    let v = p.max_var().unwrap();
    let c = content(&p, v);
    let pp = div_exact(&p, &c);
    collect_square_free(&c, out);
    // Yun's square-free decomposition of the primitive part, taken in v.
    let dp = pp.derivative(v);
    let g = gcd(&pp, &dp);
    let mut w = div_exact(&pp, &g);
    let mut y = div_exact(&dp, &g);
    loop {
        let z = &y - &w.derivative(v);
        if z.is_zero() {
            let f = monic(&w);
            if !f.is_constant() {
                out.insert(f);
            }
            return;
        }
        let h = gcd(&w, &z);
        if !h.is_constant() {
            out.insert(h.clone());
        }
        w = div_exact(&w, &h);
        y = div_exact(&z, &h);
        if w.is_constant() {
            return;
        }
    }
}

/// Convenience wrapper: the product is irrelevant, only membership is used.
pub fn normalize_into(p: &Polynomial, out: &mut BTreeSet<Polynomial>) {
    collect_square_free(p, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn xyz() -> (Polynomial, Polynomial, Polynomial) {
        (Polynomial::var(3, 0), Polynomial::var(3, 1), Polynomial::var(3, 2))
    }

    #[test]
    fn exact_division_roundtrips() {
        let (x, y, _) = xyz();
        let a = &(&x + &y) * &(&x.pow(2) - &y.scale(&rat(3, 2)));
        let q = div_exact(&a, &(&x + &y));
        assert_eq!(q, &x.pow(2) - &y.scale(&rat(3, 2)));
    }

    #[test]
    fn pseudo_rem_satisfies_identity() {
        let (x, y, _) = xyz();
        // a = y*x^2 + x + 1, b = 2x + y, in var x.
        let a = &(&(&y * &x.pow(2)) + &x) + &Polynomial::one(3);
        let b = &x.scale(&rat_int(2)) + &y;
        let r = pseudo_rem(&a, &b, 0);
        assert_eq!(r.degree(0), 0);
        // lc(b)^2 * a - r must be divisible by b.
        let lhs = &a.scale(&rat_int(4)) - &r;
        let q = div_exact(&lhs, &b);
        assert_eq!(&(&q * &b) + &r, a.scale(&rat_int(4)));
    }

    #[test]
    fn gcd_finds_common_factors() {
        let (x, y, _) = xyz();
        let common = &x + &y;
        let a = &common * &(&x - &y);
        let b = &common * &y;
        assert_eq!(gcd(&a, &b), common);
        // Coprime pair.
        assert_eq!(gcd(&(&x + &Polynomial::one(3)), &y), Polynomial::one(3));
        // Univariate with rational scaling: gcd is monic.
        let u = (&x - &Polynomial::one(3)).scale(&rat_int(3));
        let w = &(&x - &Polynomial::one(3)) * &(&x + &Polynomial::one(3));
        assert_eq!(gcd(&u, &w), &x - &Polynomial::one(3));
    }

    #[test]
    fn normalize_makes_monic_square_free_factors() {
        let (x, y, z) = xyz();
        // z - y^2 - x^2 has leading graded-lex term -x^2, so the monic form
        // flips sign.
        let p = &(&z - &y.pow(2)) - &x.pow(2);
        let f: Vec<_> = normalize(&p).into_iter().collect();
        assert_eq!(f, vec![&(&x.pow(2) + &y.pow(2)) - &z]);

        // Repeated and multiple factors: (x-y)^2 (x+y) -> {x-y, x+y}.
        let q = &(&(&x - &y) * &(&x - &y)) * &(&x + &y);
        let f: BTreeSet<_> = normalize(&q);
        let expect: BTreeSet<_> = [&x - &y, &x + &y].into_iter().collect();
        assert_eq!(f, expect);

        // 25(y + 27/20)^2 -> {y + 27/20}.
        let lin = &y + &Polynomial::constant(3, rat(27, 20));
        let sq = (&lin * &lin).scale(&rat_int(25));
        let f: Vec<_> = normalize(&sq).into_iter().collect();
        assert_eq!(f, vec![lin]);

        // Constants have no factors.
        assert!(normalize(&Polynomial::constant(3, rat_int(7))).is_empty());
    }

    #[test]
    fn normalize_splits_content_factors() {
        let (x, y, _) = xyz();
        // y * (x^2 + 1): the content w.r.t. y is a polynomial of the level
        // below and comes out as its own factor.
        let p = &y * &(&x.pow(2) + &Polynomial::one(3));
        let f: BTreeSet<_> = normalize(&p);
        let expect: BTreeSet<_> = [y.clone(), &x.pow(2) + &Polynomial::one(3)].into_iter().collect();
        assert_eq!(f, expect);
        // Factors of equal multiplicity in the main variable stay together;
        // the result is still square-free.
        let q = &y * &(&x.pow(2) + &y);
        let f: Vec<_> = normalize(&q).into_iter().collect();
        assert_eq!(f, vec![q.clone()]);
    }
}
