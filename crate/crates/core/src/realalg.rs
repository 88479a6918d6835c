//! Real algebraic numbers: exact sample coordinates.
//!
//! A value is either an exact rational or a root of an integer-primitive,
//! square-free defining polynomial with no rational roots, pinned down by an
//! open isolating interval. The interval lives behind a mutex inside a
//! shared `Arc` so every holder of the number benefits when anyone refines
//! it, and since the defining polynomial has no rational roots, bisection
//! never lands on the root itself.
//!
//! The two nontrivial operations both terminate by algebraic certificates
//! rather than by luck:
//!
//! * `sign_at` evaluates a polynomial at a point with interval arithmetic,
//!   refining until the sign is definite; when the true value is zero no
//!   amount of refinement settles it, so after a few rounds it builds an
//!   elimination polynomial E with E(value) = 0 and uses the smallest
//!   magnitude of a nonzero real root of E as a threshold: once the value's
//!   enclosure straddles zero and is narrower than that, the value is zero.
//!
//! * `specialize_roots` finds the roots of a polynomial on the line above a
//!   partial sample by eliminating each algebraic coordinate with
//!   resultants, isolating the roots of the resulting univariate polynomial
//!   and keeping the candidates where the original polynomial vanishes.

use crate::isolate::{isolate_real_roots, refine_step};
use crate::poly::Polynomial;
use crate::rational::{simplest_between, RatInterval, Rational};
use crate::resultant::resultant;
use crate::unipoly::UniPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// A root of `poly` isolated by the open interval in `bounds`.
///
/// Invariants: `poly` is integer-primitive, square-free and has no rational
/// roots; the interval endpoints are not roots; exactly one real root lies
/// inside, strictly.
pub struct AlgebraicRoot {
    poly: UniPoly,
    bounds: Mutex<(Rational, Rational)>,
}

impl AlgebraicRoot {
    fn bounds(&self) -> (Rational, Rational) {
        self.bounds.lock().unwrap().clone()
    }

    fn refine(&self) {
        let mut g = self.bounds.lock().unwrap();
        let (lo, hi) = refine_step(&self.poly, &g.0, &g.1);
        *g = (lo, hi);
    }
}

#[derive(Clone)]
enum Repr {
    Rat(Rational),
    Alg(Arc<AlgebraicRoot>),
}

/// An exact real number: rational, or algebraic over the rationals.
#[derive(Clone)]
pub struct RealAlgebraicNumber(Repr);

/// A full or partial variable assignment, one value per variable in order.
pub type SamplePoint = Vec<RealAlgebraicNumber>;

impl RealAlgebraicNumber {
    pub fn from_rational(q: Rational) -> Self {
        RealAlgebraicNumber(Repr::Rat(q))
    }

    pub fn from_int(n: i64) -> Self {
        RealAlgebraicNumber(Repr::Rat(Rational::from_integer(BigInt::from(n))))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0, Repr::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Alg(_) => None,
        }
    }

    /// Defining polynomial and current isolating interval, for irrational
    /// values.
    pub fn defining(&self) -> Option<(UniPoly, Rational, Rational)> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Alg(r) => {
                let (lo, hi) = r.bounds();
                Some((r.poly.clone(), lo, hi))
            }
        }
    }

    pub fn refine(&self) {
        if let Repr::Alg(r) = &self.0 {
            r.refine();
        }
    }

    /// All distinct real roots of a nonzero univariate polynomial,
    /// ascending.
    pub fn real_roots_of(p: &UniPoly) -> Vec<RealAlgebraicNumber> {
        let iso = isolate_real_roots(p);
        let mut out: Vec<RealAlgebraicNumber> =
            iso.rationals.into_iter().map(RealAlgebraicNumber::from_rational).collect();
        for (lo, hi) in iso.intervals {
            out.push(RealAlgebraicNumber(Repr::Alg(Arc::new(AlgebraicRoot {
                poly: iso.poly.clone(),
                bounds: Mutex::new((lo, hi)),
            }))));
        }
        out.sort();
        out
    }

    pub fn sign(&self) -> i8 {
        match &self.0 {
            Repr::Rat(q) => rational_sign(q),
            // Zero is rational, so the root is never zero; refine until the
            // interval commits to a side.
            Repr::Alg(r) => loop {
                let (lo, hi) = r.bounds();
                if !lo.is_negative() {
                    return 1;
                }
                if !hi.is_positive() {
                    return -1;
                }
                r.refine();
            },
        }
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Rat(q) => q.floor().to_integer(),
            Repr::Alg(r) => loop {
                let (lo, hi) = r.bounds();
                let next = lo.floor() + Rational::one();
                if hi <= next {
                    // No integer strictly inside, and the root is
                    // irrational, so it shares lo's floor.
                    return lo.floor().to_integer();
                }
                r.refine();
            },
        }
    }

    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Rat(q) => q.ceil().to_integer(),
            // Irrational: ceiling is floor plus one.
            Repr::Alg(_) => self.floor() + BigInt::one(),
        }
    }

    pub fn compare(&self, other: &RealAlgebraicNumber) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Rat(a), Repr::Alg(b)) => cmp_rat_alg(a, b),
            (Repr::Alg(a), Repr::Rat(b)) => cmp_rat_alg(b, a).reverse(),
            (Repr::Alg(a), Repr::Alg(b)) => {
                if Arc::ptr_eq(a, b) {
                    return Ordering::Equal;
                }
                loop {
                    let (alo, ahi) = a.bounds();
                    let (blo, bhi) = b.bounds();
                    if ahi <= blo {
                        return Ordering::Less;
                    }
                    if bhi <= alo {
                        return Ordering::Greater;
                    }
                    // Overlapping isolating intervals: the numbers are equal
                    // iff a common root of the defining polynomials lies in
                    // the overlap.
                    let g = UniPoly::gcd(&a.poly, &b.poly);
                    if g.degree() >= 1 {
                        let lo = alo.clone().max(blo.clone());
                        let hi = ahi.clone().min(bhi.clone());
                        if has_root_in(&g, &lo, &hi) {
                            return Ordering::Equal;
                        }
                    }
                    a.refine();
                    b.refine();
                }
            }
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match &self.0 {
            Repr::Rat(a) => a.cmp(q),
            Repr::Alg(a) => cmp_rat_alg(q, a).reverse(),
        }
    }

    /// A rational strictly between two distinct values (`a < b` required),
    /// the simplest one the current enclosures can certify.
    pub fn rational_between(a: &RealAlgebraicNumber, b: &RealAlgebraicNumber) -> Rational {
        debug_assert_eq!(a.compare(b), Ordering::Less);
        loop {
            let ua = match &a.0 {
                Repr::Rat(q) => q.clone(),
                Repr::Alg(r) => r.bounds().1,
            };
            let lb = match &b.0 {
                Repr::Rat(q) => q.clone(),
                Repr::Alg(r) => r.bounds().0,
            };
            if ua < lb {
                return simplest_between(&ua, &lb);
            }
            a.refine();
            b.refine();
        }
    }
}

/// Position of a rational strictly against an algebraic root. Never equal:
/// defining polynomials have no rational roots.
fn cmp_rat_alg(q: &Rational, root: &Arc<AlgebraicRoot>) -> Ordering {
    let (lo, hi) = root.bounds();
    if *q <= lo {
        return Ordering::Less;
    }
    if *q >= hi {
        return Ordering::Greater;
    }
    // Strictly inside the isolating interval: on the root's left the sign of
    // the defining polynomial matches its sign at lo.
    let s = root.poly.sign_at(q);
    debug_assert!(s != 0, "rational root escaped certification");
    if s == root.poly.sign_at(&lo) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Does `h` (square-free, endpoints not roots) have a root in (lo, hi)?
fn has_root_in(h: &UniPoly, lo: &Rational, hi: &Rational) -> bool {
    if lo >= hi {
        return false;
    }
    let iso = isolate_real_roots(h);
    for r in &iso.rationals {
        if r > lo && r < hi {
            return true;
        }
    }
    for (mut l, mut u) in iso.intervals {
        loop {
            if &u <= lo || &l >= hi {
                break;
            }
            if &l >= lo && &u <= hi {
                return true;
            }
            let (nl, nu) = refine_step(&iso.poly, &l, &u);
            l = nl;
            u = nu;
        }
    }
    false
}

impl PartialEq for RealAlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraicNumber {}

impl PartialOrd for RealAlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for RealAlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for RealAlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(q) => write!(f, "{q}"),
            Repr::Alg(r) => {
                let (lo, hi) = r.bounds();
                write!(f, "<algebraic in ({lo}, {hi})>")
            }
        }
    }
}

impl fmt::Debug for RealAlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sign of `p` at a point assigning every variable `p` uses.
pub fn sign_at(p: &Polynomial, point: &[RealAlgebraicNumber]) -> i8 {
    if let Some(v) = p.max_var() {
        assert!(v < point.len(), "sign_at: point does not cover the polynomial");
    }
    let mut q = p.clone();
    let mut alg: BTreeMap<usize, Arc<AlgebraicRoot>> = BTreeMap::new();
    for (i, val) in point.iter().enumerate() {
        if !q.uses_var(i) {
            continue;
        }
        match &val.0 {
            Repr::Rat(r) => q = q.evaluate_partial(i, r),
            Repr::Alg(root) => {
                alg.insert(i, root.clone());
            }
        }
    }
    if let Some(c) = q.constant_value() {
        return rational_sign(&c);
    }
    let mut certificate: Option<ZeroCertificate> = None;
    let mut rounds = 0usize;
    loop {
        let encl = box_eval(&q, &alg);
        if let Some(s) = encl.definite_sign() {
            return s;
        }
        // The certificate can only ever conclude "zero"; nonzero values are
        // decided by refinement alone. Its elimination chain is expensive, so
        // spend a good number of cheap bisection rounds first.
        if rounds >= 12 && certificate.is_none() {
            certificate = Some(ZeroCertificate::build(&q, &alg));
        }
        if let Some(cert) = &certificate {
            match &cert.min_nonzero_root {
                None => {
                    // The elimination polynomial has no nonzero real roots,
                    // and the value is one of its real roots.
                    debug_assert!(cert.zero_is_root);
                    return 0;
                }
                Some(delta) => {
                    if cert.zero_is_root && encl.contains_zero() && encl.width() < *delta {
                        return 0;
                    }
                }
            }
        }
        for root in alg.values() {
            root.refine();
        }
        rounds += 1;
    }
}

fn rational_sign(c: &Rational) -> i8 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `p` at a sample point, preferring the line structure of the
/// point over one big elimination. Interval refinement decides every
/// nonzero value; an undecided value is then located among the roots of the
/// specialization of `p` on the top algebraic coordinate's line, so the
/// exact-zero decision becomes a univariate root comparison instead of an
/// elimination over the whole tower. Use this for points built level by
/// level; plain `sign_at` remains the closed-form fallback.
pub fn sign_at_sample(p: &Polynomial, point: &[RealAlgebraicNumber]) -> i8 {
    if let Some(v) = p.max_var() {
        assert!(v < point.len(), "sign_at_sample: point does not cover the polynomial");
    }
    let mut q = p.clone();
    let mut alg: BTreeMap<usize, Arc<AlgebraicRoot>> = BTreeMap::new();
    for (i, val) in point.iter().enumerate() {
        if !q.uses_var(i) {
            continue;
        }
        match &val.0 {
            Repr::Rat(r) => q = q.evaluate_partial(i, r),
            Repr::Alg(root) => {
                alg.insert(i, root.clone());
            }
        }
    }
    if let Some(c) = q.constant_value() {
        return rational_sign(&c);
    }
    for _ in 0..12 {
        let encl = box_eval(&q, &alg);
        if let Some(s) = encl.definite_sign() {
            return s;
        }
        for root in alg.values() {
            root.refine();
        }
    }
    // Undecided after refinement: the value is zero unless it is tiny. Every
    // variable left in q carries an algebraic coordinate.
    let j = q.max_var().expect("constant value was handled above");
    match specialize_roots(&q, &point[..j], j) {
        Specialization::Nullified => 0,
        Specialization::Roots(roots) => {
            let y = &point[j];
            let mut lower: Option<&RealAlgebraicNumber> = None;
            let mut upper: Option<&RealAlgebraicNumber> = None;
            for r in &roots {
                match y.compare(r) {
                    Ordering::Equal => return 0,
                    Ordering::Less => {
                        upper = Some(r);
                        break;
                    }
                    Ordering::Greater => lower = Some(r),
                }
            }
            // Strictly between consecutive roots the sign is constant, so it
            // can be read off at a rational stand-in for the coordinate.
            let m = match (lower, upper) {
                (None, None) => Rational::zero(),
                (None, Some(b)) => Rational::from_integer(b.floor() - 1),
                (Some(a), None) => Rational::from_integer(a.ceil() + 1),
                (Some(a), Some(b)) => RealAlgebraicNumber::rational_between(a, b),
            };
            let mut shifted = point[..j].to_vec();
            shifted.push(RealAlgebraicNumber::from_rational(m));
            sign_at_sample(&q, &shifted)
        }
    }
}

/// Interval enclosure of `q` over the product of the roots' current bounds.
fn box_eval(q: &Polynomial, alg: &BTreeMap<usize, Arc<AlgebraicRoot>>) -> RatInterval {
    let boxes: BTreeMap<usize, RatInterval> = alg
        .iter()
        .map(|(&i, r)| {
            let (lo, hi) = r.bounds();
            (i, RatInterval::new(lo, hi))
        })
        .collect();
    let mut acc = RatInterval::point(Rational::zero());
    for (m, c) in q.terms() {
        let mut t = RatInterval::point(c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = t.mul(&boxes[&i].pow(e));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Termination certificate for deciding that a value is exactly zero.
///
/// E(t) is a nonzero univariate polynomial vanishing at the evaluated value,
/// obtained by eliminating every algebraic coordinate from t - q with
/// resultants against the defining polynomials. The chain never collapses:
/// by the product formula each step keeps the leading t-coefficient a
/// nonzero rational, so no step shares a factor with the next defining
/// polynomial.
struct ZeroCertificate {
    zero_is_root: bool,
    /// Strict lower bound on the magnitude of every nonzero root of E;
    /// `None` when E provably has no nonzero real roots.
    min_nonzero_root: Option<Rational>,
}

impl ZeroCertificate {
    fn build(q: &Polynomial, alg: &BTreeMap<usize, Arc<AlgebraicRoot>>) -> ZeroCertificate {
        let n = q.nvars();
        let t = n;
        let mut f = &Polynomial::var(n + 1, t) - &q.extend_vars(n + 1);
        for (&j, root) in alg {
            if !f.uses_var(j) {
                continue;
            }
            let d = root.poly.to_polynomial(n + 1, j);
            f = resultant(&f, &d, j);
        }
        assert!(!f.is_zero(), "elimination polynomial vanished");
        let e = UniPoly::from_polynomial(&f, t).make_integer_primitive();
        let k = e.coeffs().iter().take_while(|c| c.is_zero()).count();
        let tilde = UniPoly::new(e.coeffs()[k..].to_vec());
        let min_nonzero_root = if tilde.degree() == 0 || no_real_roots(&tilde) {
            None
        } else {
            // Reciprocals of the nonzero roots of E are roots of the reversed
            // polynomial, so Cauchy's bound on those is a lower bound here.
            // Isolating E's roots would give a sharper constant, but E comes
            // out of a resultant chain and can be far too large for that.
            let c0 = tilde.coeffs()[0].abs();
            let mut m = Rational::zero();
            for c in &tilde.coeffs()[1..] {
                let a = c.abs();
                if a > m {
                    m = a;
                }
            }
            Some(&c0 / &(&c0 + &m))
        };
        ZeroCertificate { zero_is_root: k >= 1, min_nonzero_root }
    }
}

/// Descartes test on both half-lines: zero sign variations in p(x) and in
/// p(-x) rule out any nonzero real root.
fn no_real_roots(p: &UniPoly) -> bool {
    let vars = |flip_odd: bool| {
        let mut count = 0usize;
        let mut last = 0i8;
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut s: i8 = if c.is_positive() { 1 } else { -1 };
            if flip_odd && i % 2 == 1 {
                s = -s;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    };
    vars(false) == 0 && vars(true) == 0
}

/// Result of restricting a polynomial to the vertical line above a sample.
pub enum Specialization {
    /// The polynomial vanishes identically on the whole line.
    Nullified,
    /// The polynomial is not identically zero there; these are its roots in
    /// the line variable, ascending (possibly none).
    Roots(Vec<RealAlgebraicNumber>),
}

/// Roots of `p` in variable `target` over the partial sample `prefix`
/// (which assigns variables 0..target).
pub fn specialize_roots(p: &Polynomial, prefix: &[RealAlgebraicNumber], target: usize) -> Specialization {
    assert_eq!(prefix.len(), target, "prefix must assign exactly the lower variables");
    let coeffs = p.coefficients(target);
    let all_zero = coeffs
        .iter()
        .all(|c| c.is_zero() || sign_at_sample(c, prefix) == 0);
    if all_zero {
        return Specialization::Nullified;
    }
    if p.degree(target) == 0 {
        return Specialization::Roots(Vec::new());
    }
    // Substitute the rational coordinates; keep algebraic ones symbolic.
    let mut r = p.clone();
    let mut alg: Vec<(usize, Arc<AlgebraicRoot>)> = Vec::new();
    for (i, val) in prefix.iter().enumerate() {
        if !r.uses_var(i) {
            continue;
        }
        match &val.0 {
            Repr::Rat(q) => r = r.evaluate_partial(i, q),
            Repr::Alg(root) => alg.push((i, root.clone())),
        }
    }
    // Eliminate each algebraic coordinate. Unlike the sign certificate the
    // leading target-coefficient here can vanish at the sample, so a common
    // factor with the defining polynomial must be divided out first or the
    // resultant collapses to zero.
    for (step, (j, root)) in alg.iter().enumerate() {
        loop {
            if !r.uses_var(*j) {
                break;
            }
            let g = slice_content(&r, *j);
            let h = UniPoly::gcd(&g, &root.poly);
            if h.degree() == 0 {
                break;
            }
            let (lo, hi) = root.bounds();
            if has_root_in(&h, &lo, &hi) {
                // The whole polynomial vanishes identically at this
                // coordinate. On the first coordinate that contradicts the
                // nullification pre-check above; on later ones the resultant
                // chain has degenerated, which no workload reaches.
                assert!(step > 0, "nullification pre-check missed a vanishing line");
                panic!("resultant chain degenerated while specializing");
            }
            r = crate::polygcd::div_exact(&r, &h.to_polynomial(r.nvars(), *j));
        }
        if r.uses_var(*j) {
            r = resultant(&r, &root.poly.to_polynomial(r.nvars(), *j), *j);
        }
        assert!(!r.is_zero());
    }
    if r.is_constant() {
        return Specialization::Roots(Vec::new());
    }
    let u = UniPoly::from_polynomial(&r, target);
    let cands = RealAlgebraicNumber::real_roots_of(&u);
    if cands.is_empty() {
        return Specialization::Roots(Vec::new());
    }
    // Every root of p on the line is a root of the eliminant, so p is
    // nonzero at any rational fence strictly separating the candidates. A
    // sign change across a candidate certifies it as a root without an
    // exact zero test; no change leaves the candidate to the expensive test
    // (a non-root, or rarely a root of even multiplicity on the line).
    let mut fences = Vec::with_capacity(cands.len() + 1);
    fences.push(Rational::from_integer(cands[0].floor() - 1));
    for w in cands.windows(2) {
        fences.push(RealAlgebraicNumber::rational_between(&w[0], &w[1]));
    }
    fences.push(Rational::from_integer(cands.last().unwrap().ceil() + 1));
    let signs: Vec<i8> = fences
        .iter()
        .map(|fence| {
            let mut pt = prefix.to_vec();
            pt.push(RealAlgebraicNumber::from_rational(fence.clone()));
            let s = sign_at_sample(p, &pt);
            debug_assert!(s != 0, "eliminant missed a root of p on the line");
            s
        })
        .collect();
    let mut out = Vec::new();
    for (i, cand) in cands.into_iter().enumerate() {
        // The exact test must stay on the closed-form path: locating the
        // candidate on its own line would come straight back here.
        let is_root = signs[i] != signs[i + 1] || {
            let mut pt = prefix.to_vec();
            pt.push(cand.clone());
            sign_at(p, &pt) == 0
        };
        if is_root {
            out.push(cand);
        }
    }
    Specialization::Roots(out)
}

/// Content of `r` as a univariate polynomial in `var`: the gcd of the
/// coefficient slices indexed by the monomials in the other variables.
fn slice_content(r: &Polynomial, var: usize) -> UniPoly {
    let mut groups: BTreeMap<Vec<u32>, Vec<(u32, Rational)>> = BTreeMap::new();
    for (m, c) in r.terms() {
        let mut rest = m.0.clone();
        let e = rest[var];
        rest[var] = 0;
        groups.entry(rest).or_default().push((e, c.clone()));
    }
    let mut g = UniPoly::zero();
    for parts in groups.values() {
        let deg = parts.iter().map(|(e, _)| *e).max().unwrap() as usize;
        let mut cs = vec![Rational::zero(); deg + 1];
        for (e, c) in parts {
            cs[*e as usize] = c.clone();
        }
        g = UniPoly::gcd(&g, &UniPoly::new(cs));
        if g.degree() == 0 && !g.is_zero() {
            break;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    fn sqrt(n: i64) -> RealAlgebraicNumber {
        let roots = RealAlgebraicNumber::real_roots_of(&up(&[-n, 0, 1]));
        roots.into_iter().last().unwrap()
    }

    #[test]
    fn ordering_mixes_rational_and_algebraic() {
        let s2 = sqrt(2);
        assert_eq!(s2.cmp_rational(&rat(7, 5)), Ordering::Greater);
        assert_eq!(s2.cmp_rational(&rat(3, 2)), Ordering::Less);
        assert_eq!(s2.sign(), 1);
        let roots = RealAlgebraicNumber::real_roots_of(&up(&[-2, 0, 1]));
        assert_eq!(roots.len(), 2);
        assert!(roots[0] < roots[1]);
        assert_eq!(roots[0].sign(), -1);
    }

    #[test]
    fn equality_across_defining_polynomials() {
        // sqrt(2) as a root of x^2 - 2 and of x^4 - 4.
        let a = sqrt(2);
        let quartic_roots = RealAlgebraicNumber::real_roots_of(&up(&[-4, 0, 0, 0, 1]));
        let b = quartic_roots.into_iter().last().unwrap();
        assert_eq!(a, b);
        // And the shared-factor case from a covering touch: the positive
        // root of z^2 + z - 3 is a root of z^4 - 7z^2 + 9.
        let quad = RealAlgebraicNumber::real_roots_of(&up(&[-3, 1, 1]));
        let quartic = RealAlgebraicNumber::real_roots_of(&up(&[9, 0, -7, 0, 1]));
        assert_eq!(quad[1], quartic[2]);
        assert_ne!(quad[1], quartic[3]);
    }

    #[test]
    fn floor_and_ceil() {
        let s2 = sqrt(2);
        assert_eq!(s2.floor(), BigInt::from(1));
        assert_eq!(s2.ceil(), BigInt::from(2));
        let neg = RealAlgebraicNumber::real_roots_of(&up(&[-2, 0, 1]))[0].clone();
        assert_eq!(neg.floor(), BigInt::from(-2));
        assert_eq!(neg.ceil(), BigInt::from(-1));
        assert_eq!(RealAlgebraicNumber::from_rational(rat(7, 2)).floor(), BigInt::from(3));
        assert_eq!(RealAlgebraicNumber::from_int(-3).ceil(), BigInt::from(-3));
    }

    #[test]
    fn rational_between_certifies_strictness() {
        let s2 = sqrt(2);
        let s3 = sqrt(3);
        let q = RealAlgebraicNumber::rational_between(&s2, &s3);
        let qn = RealAlgebraicNumber::from_rational(q);
        assert!(s2 < qn && qn < s3);
        let one = RealAlgebraicNumber::from_int(1);
        let q2 = RealAlgebraicNumber::rational_between(&one, &s2);
        let q2n = RealAlgebraicNumber::from_rational(q2);
        assert!(one < q2n && q2n < s2);
    }

    #[test]
    fn sign_at_decides_zero_exactly() {
        // x^2 + y^2 - 3 at (sqrt 2, 1) is exactly 0.
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = &(&x.pow(2) + &y.pow(2)) - &Polynomial::constant(2, rat_int(3));
        let pt = vec![sqrt(2), RealAlgebraicNumber::from_int(1)];
        assert_eq!(sign_at(&p, &pt), 0);
        let pt2 = vec![sqrt(2), sqrt(2)];
        assert_eq!(sign_at(&p, &pt2), 1);
        // x*y - 2 at (sqrt 2, sqrt 2) is 0: both coordinates algebraic.
        let q = &(&x * &y) - &Polynomial::constant(2, rat_int(2));
        assert_eq!(sign_at(&q, &pt2), 0);
        assert_eq!(sign_at(&q, &pt), -1);
    }

    #[test]
    fn specialization_at_rational_prefix() {
        // z^2 + y^2 + x^2 - 3 over (0, 0): roots z = +/- sqrt 3.
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        let z = Polynomial::var(3, 2);
        let sphere = &(&(&z.pow(2) + &y.pow(2)) + &x.pow(2)) - &Polynomial::constant(3, rat_int(3));
        let prefix = vec![RealAlgebraicNumber::from_int(0), RealAlgebraicNumber::from_int(0)];
        match specialize_roots(&sphere, &prefix, 2) {
            Specialization::Roots(rs) => {
                let pm_sqrt3 = RealAlgebraicNumber::real_roots_of(&up(&[-3, 0, 1]));
                assert_eq!(rs, pm_sqrt3);
            }
            Specialization::Nullified => panic!("not nullified"),
        }
        // Over (0, 2) the line misses the sphere.
        let prefix2 = vec![RealAlgebraicNumber::from_int(0), RealAlgebraicNumber::from_int(2)];
        match specialize_roots(&sphere, &prefix2, 2) {
            Specialization::Roots(rs) => assert!(rs.is_empty()),
            Specialization::Nullified => panic!("not nullified"),
        }
    }

    #[test]
    fn specialization_at_algebraic_prefix() {
        // Same sphere over (0, sqrt 3): the line is tangent, single root 0.
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        let z = Polynomial::var(3, 2);
        let sphere = &(&(&z.pow(2) + &y.pow(2)) + &x.pow(2)) - &Polynomial::constant(3, rat_int(3));
        let prefix = vec![RealAlgebraicNumber::from_int(0), sqrt(3)];
        match specialize_roots(&sphere, &prefix, 2) {
            Specialization::Roots(rs) => {
                assert_eq!(rs.len(), 1);
                assert_eq!(rs[0], RealAlgebraicNumber::from_int(0));
            }
            Specialization::Nullified => panic!("not nullified"),
        }
    }

    #[test]
    fn specialization_detects_nullified_lines() {
        // x1 * x2 over x1 = 0 vanishes on the whole x2 line.
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        let p = &x1 * &x2;
        let prefix = vec![RealAlgebraicNumber::from_int(0)];
        assert!(matches!(specialize_roots(&p, &prefix, 1), Specialization::Nullified));
        let prefix_one = vec![RealAlgebraicNumber::from_int(1)];
        match specialize_roots(&p, &prefix_one, 1) {
            Specialization::Roots(rs) => assert_eq!(rs, vec![RealAlgebraicNumber::from_int(0)]),
            Specialization::Nullified => panic!("not nullified at x1 = 1"),
        }
    }
}
