//! Real root isolation for univariate polynomials.
//!
//! Bisection with Descartes' rule of signs on Mobius-transformed
//! coefficients: the variation count bounds the number of roots in an open
//! interval and is exact when it is 0 or 1. Rational roots are recognized
//! exactly: any bisection midpoint that happens to be a root is divided out
//! on the spot, and every surviving isolating interval is certified by
//! shrinking it below 1/(2*lc^2) and probing the simplest rational inside
//! (two distinct rationals with denominators at most lc differ by more than
//! that, and any rational root of an integer-primitive polynomial has
//! denominator dividing the leading coefficient).
//!
//! The result therefore separates roots into exact rationals and open
//! intervals, and the defining polynomial for the intervals has no rational
//! roots at all, which later lets interval refinement bisect freely without
//! ever landing on a root.

use crate::rational::{simplest_between, Rational};
use crate::unipoly::UniPoly;
use num_traits::{One, Signed, Zero};

/// Outcome of isolating the real roots of a polynomial.
#[derive(Debug, Clone)]
pub struct Isolation {
    /// Exact rational roots, ascending.
    pub rationals: Vec<Rational>,
    /// Defining polynomial for the remaining roots: integer-primitive,
    /// square-free, free of rational roots. Constant when `intervals` is
    /// empty.
    pub poly: UniPoly,
    /// Disjoint open intervals, ascending, each isolating exactly one real
    /// root of `poly`; endpoints are never roots.
    pub intervals: Vec<(Rational, Rational)>,
}

/// Isolates all distinct real roots of a nonzero polynomial.
pub fn isolate_real_roots(input: &UniPoly) -> Isolation {
    assert!(!input.is_zero(), "root isolation needs a nonzero polynomial");
    let mut rationals: Vec<Rational> = Vec::new();
    let mut work = square_free_part(input).make_integer_primitive();
    if work.degree() == 0 {
        return Isolation { rationals, poly: work, intervals: Vec::new() };
    }
    // A zero constant term means 0 is a (simple) root; strip it.
    if work.coeffs()[0].is_zero() {
        rationals.push(Rational::zero());
        work = UniPoly::new(work.coeffs()[1..].to_vec()).make_integer_primitive();
    }
    // Bisection; a midpoint that is a root forces a restart on the deflated
    // polynomial because the variation counts of sibling intervals change.
    let mut intervals = loop {
        match try_isolate(&work) {
            Ok(iv) => break iv,
            Err(root) => {
                work = work.deflate_root(&root).make_integer_primitive();
                rationals.push(root);
                if work.degree() == 0 {
                    break Vec::new();
                }
            }
        }
    };
    // Certify each interval's root as rational or not.
    let mut certified = Vec::new();
    for (mut lo, mut hi) in intervals.drain(..) {
        let d = work.leading().abs();
        let target = (Rational::from_integer(2.into()) * &d * &d).recip();
        let mut root_found = None;
        while &hi - &lo > target {
            match bisect(&work, &lo, &hi) {
                Bisect::Root(m) => {
                    root_found = Some(m);
                    break;
                }
                Bisect::Narrowed(a, b) => {
                    lo = a;
                    hi = b;
                }
            }
        }
        if root_found.is_none() {
            let c = simplest_between(&lo, &hi);
            if work.eval(&c).is_zero() {
                root_found = Some(c);
            }
        }
        match root_found {
            Some(r) => {
                work = work.deflate_root(&r).make_integer_primitive();
                rationals.push(r);
            }
            None => certified.push((lo, hi)),
        }
    }
    rationals.sort();
    Isolation { rationals, poly: work, intervals: certified }
}

/// One bisection step on an interval with a sign change; `poly` may have
/// rational roots (a midpoint hit is reported instead of recursed past).
pub enum Bisect {
    Root(Rational),
    Narrowed(Rational, Rational),
}

pub fn bisect(poly: &UniPoly, lo: &Rational, hi: &Rational) -> Bisect {
    let m = (lo + hi) / Rational::from_integer(2.into());
    let sm = poly.sign_at(&m);
    if sm == 0 {
        return Bisect::Root(m);
    }
    if poly.sign_at(lo) != sm {
        Bisect::Narrowed(lo.clone(), m)
    } else {
        Bisect::Narrowed(m, hi.clone())
    }
}

/// Halves an isolating interval of a polynomial known to have no rational
/// roots, so the midpoint can never be a root.
pub fn refine_step(poly: &UniPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    match bisect(poly, lo, hi) {
        Bisect::Narrowed(a, b) => (a, b),
        Bisect::Root(_) => unreachable!("defining polynomial has a rational root"),
    }
}

fn square_free_part(p: &UniPoly) -> UniPoly {
    let d = p.derivative();
    if d.is_zero() {
        return p.clone();
    }
    let g = UniPoly::gcd(p, &d);
    if g.degree() == 0 {
        return p.clone();
    }
    div_exact(p, &g)
}

fn div_exact(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut r = a.coeffs().to_vec();
    let db = b.degree();
    let bl = b.leading();
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / bl;
        q[k] = c.clone();
        for (i, bc) in b.coeffs().iter().enumerate() {
            let t = &c * bc;
            r[k + i] -= t;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    assert!(r.is_empty(), "inexact univariate division");
    UniPoly::new(q)
}

/// All roots lie strictly within (-bound, bound).
fn cauchy_bound(p: &UniPoly) -> Rational {
    let lead = p.leading().abs();
    let mut m = Rational::zero();
    for c in &p.coeffs()[..p.degree()] {
        let r = c.abs() / &lead;
        if r > m {
            m = r;
        }
    }
    m + Rational::one()
}

/// Attempts full isolation; stops with `Err(m)` when a bisection midpoint
/// turns out to be a root.
fn try_isolate(p: &UniPoly) -> Result<Vec<(Rational, Rational)>, Rational> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let b = cauchy_bound(p);
    let mut stack = vec![(-b.clone(), b)];
    let mut out = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        match descartes_in(p, &lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let m = (&lo + &hi) / Rational::from_integer(2.into());
                if p.eval(&m).is_zero() {
                    return Err(m);
                }
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Upper bound on the number of roots in the open interval (lo, hi), exact
/// when 0 or 1: map (lo, hi) onto (0, infinity) and count sign variations.
fn descartes_in(p: &UniPoly, lo: &Rational, hi: &Rational) -> usize {
    let shifted = taylor_shift(p.coeffs(), lo);
    let width = hi - lo;
    let mut scaled = shifted;
    let mut pow = Rational::one();
    for c in scaled.iter_mut() {
        *c *= &pow;
        pow *= &width;
    }
    scaled.reverse();
    let q = taylor_shift(&scaled, &Rational::one());
    let mut vars = 0;
    let mut last: i8 = 0;
    for c in &q {
        if c.is_zero() {
            continue;
        }
        let s = if c.is_positive() { 1 } else { -1 };
        if last != 0 && s != last {
            vars += 1;
        }
        last = s;
    }
    vars
}

/// Coefficients of p(x + a), ascending.
fn taylor_shift(coeffs: &[Rational], a: &Rational) -> Vec<Rational> {
    let mut out = coeffs.to_vec();
    let n = out.len();
    if n == 0 {
        return out;
    }
    for k in 0..n {
        for j in (k..n - 1).rev() {
            let t = &out[j + 1] * a;
            out[j] += t;
        }
    }
    out
}
