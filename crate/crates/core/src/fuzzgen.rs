//! Seeded random conjunctions for differential testing. Instances stay
//! small (up to 3 variables, 3 constraints, total degree 3) so exact
//! solving over thousands of them is cheap, while still hitting nullified
//! lines, multiple roots per level, and every relation.

use crate::engine::{Constraint, Formula, Relation};
use crate::poly::Polynomial;
use crate::rational::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Limits on the shape of generated formulas.
#[derive(Clone, Copy, Debug)]
pub struct FuzzLimits {
    pub max_vars: usize,
    pub max_constraints: usize,
    pub max_degree: u32,
}

impl Default for FuzzLimits {
    fn default() -> Self {
        FuzzLimits { max_vars: 3, max_constraints: 3, max_degree: 3 }
    }
}

pub fn generator(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const RELATIONS: [Relation; 6] = [
    Relation::Lt,
    Relation::Le,
    Relation::Eq,
    Relation::Ne,
    Relation::Ge,
    Relation::Gt,
];

/// A random nonconstant polynomial in `nvars` variables: up to 4 monomials,
/// integer coefficients in -5..=5.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_degree: u32) -> Polynomial {
    loop {
        let nmono = rng.gen_range(1..=4);
        let mut terms = Vec::new();
        for _ in 0..nmono {
            let mut exps = vec![0u32; nvars];
            for _ in 0..rng.gen_range(0..=max_degree) {
                exps[rng.gen_range(0..nvars)] += 1;
            }
            let c = loop {
                let c: i64 = rng.gen_range(-5..=5);
                if c != 0 {
                    break c;
                }
            };
            terms.push((exps, Rational::from_integer(c.into())));
        }
        let p = Polynomial::from_raw_terms(nvars, terms);
        // coinciding monomials can cancel to a constant; retry
        if !p.is_constant() {
            return p;
        }
    }
}

pub fn random_formula(rng: &mut impl Rng, limits: FuzzLimits) -> Formula {
    let nvars = rng.gen_range(1..=limits.max_vars);
    let names = (1..=nvars).map(|i| format!("x{i}")).collect();
    let ncons = rng.gen_range(1..=limits.max_constraints);
    let constraints = (0..ncons)
        .map(|_| Constraint {
            poly: random_poly(rng, nvars, limits.max_degree),
            rel: RELATIONS[rng.gen_range(0..RELATIONS.len())],
        })
        .collect();
    Formula::new(names, constraints).expect("generated formula is well formed")
}
