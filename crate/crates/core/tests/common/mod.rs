//! Shared oracles and fixtures for the integration suites: Sturm-chain root
//! counting and Sylvester determinants computed independently of the library
//! code they check, a dense-probe covering decision, random generators, and
//! the worked formulas the engine tests revolve around.
//!
//! The univariate oracles work on dense coefficient vectors in ascending
//! order so they share nothing with the crate's sparse representation.

#![allow(dead_code)]

use covra_core::covering::{Bound, CellRep, Interval, Provenance};
use covra_core::engine::{Constraint, Formula, Relation};
use covra_core::poly::Polynomial;
use covra_core::realalg::RealAlgebraicNumber;
use covra_core::unipoly::UniPoly;
use covra_core::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

pub use covra_core::rational::{rat, rat_int};

// ---------------------------------------------------------------- dense ops

pub fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn dense_eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn dense_derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect()
}

/// Remainder of `a` modulo `b` over the rationals; `b` must be nonzero.
fn dense_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let b = trim(b.to_vec());
    assert!(!b.is_empty());
    let db = b.len() - 1;
    let mut r = trim(a.to_vec());
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / &b[db];
        for i in 0..=db {
            let t = &c * &b[i];
            r[dr - db + i] = &r[dr - db + i] - &t;
        }
        r = trim(r);
    }
    r
}

/// Exact quotient `a / b`; panics when the division leaves a remainder.
fn dense_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let b = trim(b.to_vec());
    assert!(!b.is_empty());
    let db = b.len() - 1;
    let mut r = trim(a.to_vec());
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / &b[db];
        for i in 0..=db {
            let t = &c * &b[i];
            r[dr - db + i] = &r[dr - db + i] - &t;
        }
        q[dr - db] = c;
        r = trim(r);
    }
    assert!(r.is_empty(), "inexact division in test oracle");
    q
}

pub fn dense_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Monic gcd over the rationals by plain Euclid.
pub fn dense_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = dense_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lc) = a.last().cloned() {
        for c in &mut a {
            *c = &*c / &lc;
        }
    }
    a
}

/// `p` divided by gcd(p, p'): same roots, all simple.
pub fn squarefree_part(p: &[Rational]) -> Vec<Rational> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return p;
    }
    let g = dense_gcd(&p, &dense_derivative(&p));
    if g.len() > 1 {
        dense_div_exact(&p, &g)
    } else {
        p
    }
}

// ------------------------------------------------------------- Sturm chains

fn sign_of(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `p` towards +infinity, or -infinity when `positive` is false.
fn sign_at_inf(p: &[Rational], positive: bool) -> i8 {
    let s = sign_of(p.last().expect("zero polynomial has no sign"));
    if positive || (p.len() - 1) % 2 == 0 {
        s
    } else {
        -s
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut prev = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Number of distinct real roots of `p` over the whole line, by the sign
/// variation difference of the Sturm chain of the squarefree part at the
/// two infinities.
pub fn sturm_count(p: &[Rational]) -> usize {
    let sf = squarefree_part(p);
    if sf.len() <= 1 {
        return 0;
    }
    let mut chain = vec![sf.clone(), trim(dense_derivative(&sf))];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = dense_rem(&chain[n - 2], &chain[n - 1]);
        chain.push(r.iter().map(|c| -c).collect());
    }
    let vars = |positive: bool| variations(chain.iter().map(|q| sign_at_inf(q, positive)));
    vars(false) - vars(true)
}

// --------------------------------------------------- Sylvester determinants

fn clear_denominators(p: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in p {
        l = l.lcm(c.denom());
    }
    let scale = Rational::from_integer(l.clone());
    (p.iter().map(|c| (c * &scale).to_integer()).collect(), l)
}

/// Determinant by fraction-free Bareiss elimination; every interior division
/// is exact over the integers.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m.pop().unwrap().pop().unwrap();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Resultant of two dense rational polynomials as the determinant of their
/// Sylvester matrix, assembled over the integers after clearing
/// denominators and scaled back exactly.
pub fn sylvester_resultant(a: &[Rational], b: &[Rational]) -> Rational {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return Rational::zero();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    if da == 0 && db == 0 {
        return Rational::one();
    }
    if db == 0 {
        return covra_core::rational::pow_rat(&b[0], da as u32);
    }
    if da == 0 {
        return covra_core::rational::pow_rat(&a[0], db as u32);
    }
    // res(la*a, lb*b) = la^db * lb^da * res(a, b), so divide the scale back.
    let (ai, la) = clear_denominators(&a);
    let (bi, lb) = clear_denominators(&b);
    let n = da + db;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for row in 0..db {
        for j in 0..=da {
            m[row][row + j] = ai[da - j].clone();
        }
    }
    for row in 0..da {
        for j in 0..=db {
            m[db + row][row + j] = bi[db - j].clone();
        }
    }
    let det = Rational::from_integer(bareiss_det(m));
    let unscale = Rational::from_integer(num_traits::pow(la, db)) * Rational::from_integer(num_traits::pow(lb, da));
    det / unscale
}

// ----------------------------------------------------- term-walk evaluation

/// Evaluation by direct term walking, sharing nothing with the crate's
/// Horner-style evaluators.
pub fn eval_terms(p: &Polynomial, pt: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                t = &t * &pt[v];
            }
        }
        acc = &acc + &t;
    }
    acc
}

/// Dense coefficients of `p` in `var` with every other variable fixed to
/// its entry in `point` (the entry at `var` is ignored).
pub fn dense_in_var(p: &Polynomial, var: usize, point: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.degree(var) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, &e) in m.0.iter().enumerate() {
            if v == var {
                continue;
            }
            for _ in 0..e {
                t = &t * &point[v];
            }
        }
        let i = m.0[var] as usize;
        out[i] = &out[i] + &t;
    }
    trim(out)
}

// ------------------------------------------------------ dense-probe oracle

/// Probe points that decide coverage exhaustively: every finite endpoint, a
/// point strictly between each pair of consecutive endpoints, and a point
/// beyond each extreme. Any uncovered region of a finite interval union
/// must contain one of these.
pub fn probe_points(ivs: &[Interval]) -> Vec<RealAlgebraicNumber> {
    let mut pts: Vec<RealAlgebraicNumber> = Vec::new();
    for iv in ivs {
        for b in [iv.lower(), iv.upper()] {
            if let Some(v) = b.value() {
                pts.push(v.clone());
            }
        }
    }
    pts.sort_by(|x, y| x.compare(y));
    pts.dedup_by(|x, y| x.compare(y) == Ordering::Equal);
    if pts.is_empty() {
        return vec![RealAlgebraicNumber::from_int(0)];
    }
    let mut probes = Vec::new();
    probes.push(RealAlgebraicNumber::from_rational(Rational::from_integer(
        pts[0].floor() - BigInt::one(),
    )));
    for (i, p) in pts.iter().enumerate() {
        probes.push(p.clone());
        if let Some(q) = pts.get(i + 1) {
            probes.push(RealAlgebraicNumber::from_rational(
                RealAlgebraicNumber::rational_between(p, q),
            ));
        }
    }
    probes.push(RealAlgebraicNumber::from_rational(Rational::from_integer(
        pts.last().unwrap().ceil() + BigInt::one(),
    )));
    probes
}

pub fn covers_by_probing(ivs: &[Interval]) -> bool {
    probe_points(ivs).iter().all(|x| ivs.iter().any(|iv| iv.contains(x)))
}

// ------------------------------------------------------------------ random

/// Dense univariate polynomial, degree up to `max_deg`, integer
/// coefficients in [-bound, bound]; never identically zero.
pub fn random_dense(rng: &mut impl Rng, max_deg: usize, bound: i64) -> Vec<Rational> {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let v: Vec<Rational> = (0..=deg).map(|_| rat_int(rng.gen_range(-bound..=bound))).collect();
        let v = trim(v);
        if !v.is_empty() {
            return v;
        }
    }
}

pub fn dense_to_unipoly(p: &[Rational]) -> UniPoly {
    UniPoly::new(p.to_vec())
}

pub fn dense_to_poly1(p: &[Rational]) -> Polynomial {
    Polynomial::from_raw_terms(
        1,
        p.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())).collect(),
    )
}

/// Random sparse polynomial: up to 5 monomials, total degree of each at
/// most `max_deg`, coefficients in [-bound, bound]. May come out zero.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_deg: u32, bound: i64) -> Polynomial {
    let nmono = rng.gen_range(1..=5);
    let mut terms = Vec::new();
    for _ in 0..nmono {
        let mut exps = vec![0u32; nvars];
        for _ in 0..rng.gen_range(0..=max_deg) {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            terms.push((exps, rat_int(c)));
        }
    }
    Polynomial::from_raw_terms(nvars, terms)
}

pub fn random_nonzero_poly(rng: &mut impl Rng, nvars: usize, max_deg: u32, bound: i64) -> Polynomial {
    loop {
        let p = random_poly(rng, nvars, max_deg, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Endpoint pool mixing small rationals with shifted quadratic irrationals.
pub fn random_endpoint(rng: &mut impl Rng) -> RealAlgebraicNumber {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(-12i64..=12);
        let d = rng.gen_range(1i64..=4);
        RealAlgebraicNumber::from_rational(rat(n, d))
    } else {
        // Roots s +- sqrt(d) of (x - s)^2 - d.
        let d = [2i64, 3, 5, 6, 7, 8, 10, 11][rng.gen_range(0..8)];
        let s = rat_int(rng.gen_range(-3i64..=3));
        let p = UniPoly::new(vec![&(&s * &s) - &rat_int(d), -(&s + &s), Rational::one()]);
        let roots = RealAlgebraicNumber::real_roots_of(&p);
        roots[rng.gen_range(0..roots.len())].clone()
    }
}

fn random_bound(rng: &mut impl Rng, v: RealAlgebraicNumber) -> Bound {
    if rng.gen_bool(0.5) {
        Bound::Closed(v)
    } else {
        Bound::Open(v)
    }
}

pub fn random_interval(rng: &mut impl Rng) -> Interval {
    match rng.gen_range(0..10) {
        0 => Interval::full_line(),
        1 => Interval::point(random_endpoint(rng)),
        2 | 3 => {
            let v = random_endpoint(rng);
            Interval::new(Bound::NegInf, random_bound(rng, v))
        }
        4 | 5 => {
            let v = random_endpoint(rng);
            Interval::new(random_bound(rng, v), Bound::PosInf)
        }
        _ => {
            let a = random_endpoint(rng);
            let b = random_endpoint(rng);
            match a.compare(&b) {
                Ordering::Less => Interval::new(random_bound(rng, a), random_bound(rng, b)),
                Ordering::Greater => Interval::new(random_bound(rng, b), random_bound(rng, a)),
                Ordering::Equal => Interval::point(a),
            }
        }
    }
}

/// A random family of intervals; a slice of them get a pair of overlapping
/// opposite rays so that covering and non-covering cases both show up often.
pub fn random_interval_family(rng: &mut impl Rng) -> Vec<Interval> {
    let mut ivs = Vec::new();
    for _ in 0..rng.gen_range(0..=5) {
        ivs.push(random_interval(rng));
    }
    if rng.gen_bool(0.4) {
        let a = random_endpoint(rng);
        let b = random_endpoint(rng);
        let (lo, hi) = match a.compare(&b) {
            Ordering::Greater => (b, a),
            _ => (a, b),
        };
        ivs.push(Interval::new(Bound::NegInf, random_bound(rng, hi)));
        ivs.push(Interval::new(random_bound(rng, lo), Bound::PosInf));
    }
    ivs
}

// ------------------------------------------------------- structural equality

pub fn bound_eq(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, Bound::PosInf) => true,
        (Bound::Open(x), Bound::Open(y)) | (Bound::Closed(x), Bound::Closed(y)) => {
            x.compare(y) == Ordering::Equal
        }
        _ => false,
    }
}

pub fn interval_eq(a: &Interval, b: &Interval) -> bool {
    bound_eq(a.lower(), b.lower()) && bound_eq(a.upper(), b.upper())
}

// ---------------------------------------------------------------- fixtures

pub fn mk_cell(interval: Interval, closed_flag: bool, preferred: bool, id: u64) -> Arc<CellRep> {
    Arc::new(CellRep {
        polys: BTreeSet::new(),
        prefix: Vec::new(),
        interval,
        closed_flag,
        preferred,
        depth: 1,
        provenance: Provenance::Constraint(0),
        id,
    })
}

pub fn formula(names: &[&str], cs: Vec<(Polynomial, Relation)>) -> Formula {
    Formula::new(
        names.iter().map(|s| s.to_string()).collect(),
        cs.into_iter().map(|(poly, rel)| Constraint { poly, rel }).collect(),
    )
    .unwrap()
}

/// The positive square root of `n`.
pub fn sqrt_of(n: i64) -> RealAlgebraicNumber {
    sqrt_rat(rat_int(n))
}

/// The positive square root of a positive rational.
pub fn sqrt_rat(q: Rational) -> RealAlgebraicNumber {
    let p = UniPoly::new(vec![-&q, Rational::zero(), Rational::one()]);
    RealAlgebraicNumber::real_roots_of(&p).pop().expect("no real root")
}

/// On or above a paraboloid, inside a small sphere, outside a large one:
/// unsatisfiable, with every pairwise combination satisfiable. Variables
/// x, y, z in that order.
pub fn paraboloid_spheres() -> Formula {
    let c1 = Polynomial::from_raw_terms(
        3,
        vec![
            (vec![0, 0, 1], rat_int(1)),
            (vec![0, 2, 0], rat_int(-1)),
            (vec![2, 0, 0], rat_int(-1)),
        ],
    );
    let c2 = Polynomial::from_raw_terms(
        3,
        vec![
            (vec![2, 0, 0], rat_int(1)),
            (vec![0, 2, 0], rat_int(1)),
            (vec![0, 0, 2], rat_int(1)),
            (vec![0, 0, 0], rat_int(-3)),
        ],
    );
    let c3 = Polynomial::from_raw_terms(
        3,
        vec![
            (vec![2, 0, 0], rat_int(1)),
            (vec![0, 2, 0], rat_int(1)),
            (vec![0, 1, 0], rat_int(-5)),
            (vec![0, 0, 2], rat_int(1)),
            (vec![0, 0, 0], rat(-39, 4)),
        ],
    );
    formula(&["x", "y", "z"], vec![(c1, Relation::Ge), (c2, Relation::Lt), (c3, Relation::Gt)])
}

/// Downward parabola p1 = -x1^2 - x2 + 1 and upward parabola
/// p2 = x1^2 - x2 - 1.
pub fn parabola_pair() -> (Polynomial, Polynomial) {
    let p1 = Polynomial::from_raw_terms(
        2,
        vec![
            (vec![2, 0], rat_int(-1)),
            (vec![0, 1], rat_int(-1)),
            (vec![0, 0], rat_int(1)),
        ],
    );
    let p2 = Polynomial::from_raw_terms(
        2,
        vec![
            (vec![2, 0], rat_int(1)),
            (vec![0, 1], rat_int(-1)),
            (vec![0, 0], rat_int(-1)),
        ],
    );
    (p1, p2)
}

/// p1 < 0 and p2 > 0: satisfiable exactly where x1^2 > 1.
pub fn two_parabolas() -> Formula {
    let (p1, p2) = parabola_pair();
    formula(&["x1", "x2"], vec![(p1, Relation::Lt), (p2, Relation::Gt)])
}

/// The two strict parabola constraints plus a circle the sample must stay
/// on or outside of and a half-plane: satisfiable. Variables x1, x2.
pub fn parabolas_circle_halfplane() -> Formula {
    let (p1, p2) = parabola_pair();
    // (x1 - 1/2)^2 + (x2 + 3/2)^2 - 1/4, expanded.
    let p3 = Polynomial::from_raw_terms(
        2,
        vec![
            (vec![2, 0], rat_int(1)),
            (vec![1, 0], rat_int(-1)),
            (vec![0, 2], rat_int(1)),
            (vec![0, 1], rat_int(3)),
            (vec![0, 0], rat(9, 4)),
        ],
    );
    let p4 = Polynomial::from_raw_terms(2, vec![(vec![1, 0], rat_int(1)), (vec![0, 0], rat(1, 2))]);
    formula(
        &["x1", "x2"],
        vec![
            (p1, Relation::Lt),
            (p2, Relation::Gt),
            (p3, Relation::Ge),
            (p4, Relation::Ge),
        ],
    )
}
