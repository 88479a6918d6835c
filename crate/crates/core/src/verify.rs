//! Independent re-checking of solver results.
//!
//! A satisfying assignment is replayed against every constraint. An unsat
//! verdict is probed cell by cell: each derived or root-covering cell claims
//! that, with its prefix pinned, no value in its interval can be extended to
//! a solution. For a selection of concrete values in the interval (a
//! rational from the interior plus every finite closed endpoint) the formula
//! is re-solved with the prefix coordinates and the probed value added as
//! constraints, always with the base variant so the closed-cell reasoning
//! under test is not trusted by its own verification. Any SAT answer is a
//! soundness failure.

use crate::covering::{Bound, CellRep};
use crate::engine::{
    assignment_satisfies, solve, Constraint, Formula, Relation, Variant, Verdict,
};
use crate::poly::Polynomial;
use crate::realalg::RealAlgebraicNumber;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Outcome of verifying one solver run.
pub struct VerifyReport {
    pub verdict_sat: bool,
    pub cells_checked: usize,
    pub probes: usize,
    /// Human-readable soundness failures; empty means the run verified.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Solves and then cross-checks the result as described in the module docs.
pub fn verify(f: &Formula, variant: Variant) -> VerifyReport {
    let res = solve(f, variant);
    match &res.verdict {
        Verdict::Sat(pt) => {
            let good = assignment_satisfies(f, pt);
            VerifyReport {
                verdict_sat: true,
                cells_checked: 0,
                probes: 0,
                failures: if good {
                    Vec::new()
                } else {
                    vec!["model does not satisfy the formula".into()]
                },
            }
        }
        Verdict::Unsat(selected) => {
            let mut cells: Vec<Arc<CellRep>> = Vec::new();
            let mut seen = BTreeSet::new();
            for c in selected.iter().chain(res.derived.iter()) {
                if seen.insert(c.id) {
                    cells.push(c.clone());
                }
            }
            let mut probes = 0;
            let mut failures = Vec::new();
            for cell in &cells {
                for value in probe_values(cell) {
                    probes += 1;
                    if let Some(msg) = probe(f, cell, &value) {
                        failures.push(msg);
                    }
                }
            }
            VerifyReport {
                verdict_sat: false,
                cells_checked: cells.len(),
                probes,
                failures,
            }
        }
    }
}

/// Values of the cell's interval to re-check: a rational inside, plus each
/// finite closed endpoint (which the closed variants specifically claim).
fn probe_values(cell: &CellRep) -> Vec<RealAlgebraicNumber> {
    let mut vals = Vec::new();
    if let Some(q) = cell.interval.some_rational_inside() {
        vals.push(RealAlgebraicNumber::from_rational(q));
    }
    if !cell.interval.is_point() {
        for bound in [cell.interval.lower(), cell.interval.upper()] {
            if let Bound::Closed(v) = bound {
                vals.push(v.clone());
            }
        }
    } else if vals.is_empty() {
        // Irrational point cell: probe the point itself.
        vals.push(cell.interval.lower().value().unwrap().clone());
    }
    vals
}

fn probe(f: &Formula, cell: &CellRep, value: &RealAlgebraicNumber) -> Option<String> {
    let mut constraints = f.constraints().to_vec();
    for (j, coord) in cell.prefix.iter().enumerate() {
        pin(&mut constraints, f.nvars(), j, coord);
    }
    pin(&mut constraints, f.nvars(), cell.prefix.len(), value);
    let pinned = Formula::new(f.var_names().to_vec(), constraints)
        .expect("pinning constraints broke the formula");
    let res = solve(&pinned, Variant::Base);
    if res.is_sat() {
        Some(format!(
            "cell {} at level {} excludes {} but pinning it is satisfiable",
            cell.id,
            cell.level(),
            cell.interval,
        ))
    } else {
        None
    }
}

/// Adds constraints forcing variable `var` (0-based) to the given value:
/// an equality for rationals, the defining polynomial plus open rational
/// bounds for algebraic values.
fn pin(
    constraints: &mut Vec<Constraint>,
    nvars: usize,
    var: usize,
    value: &RealAlgebraicNumber,
) {
    let x = Polynomial::var(nvars, var);
    match value.as_rational() {
        Some(q) => {
            let shifted = &x - &Polynomial::constant(nvars, q.clone());
            constraints.push(Constraint { poly: shifted, rel: Relation::Eq });
        }
        None => {
            let (d, lo, hi) = value.defining().expect("algebraic without defining data");
            constraints.push(Constraint {
                poly: d.to_polynomial(nvars, var),
                rel: Relation::Eq,
            });
            constraints.push(Constraint {
                poly: &x - &Polynomial::constant(nvars, lo),
                rel: Relation::Gt,
            });
            constraints.push(Constraint {
                poly: &x - &Polynomial::constant(nvars, hi),
                rel: Relation::Lt,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn poly(nvars: usize, raw: Vec<(Vec<u32>, i64)>) -> Polynomial {
        Polynomial::from_raw_terms(
            nvars,
            raw.into_iter().map(|(m, c)| (m, rat_int(c))).collect(),
        )
    }

    #[test]
    fn verifies_unsat_disk_outside_line() {
        // x^2 + y^2 < 1 and x > 2: unsat; all cells should verify.
        let f = Formula::new(
            vec!["x".into(), "y".into()],
            vec![
                Constraint {
                    poly: poly(2, vec![(vec![2, 0], 1), (vec![0, 2], 1), (vec![0, 0], -1)]),
                    rel: Relation::Lt,
                },
                Constraint {
                    poly: poly(2, vec![(vec![1, 0], 1), (vec![0, 0], -2)]),
                    rel: Relation::Gt,
                },
            ],
        )
        .unwrap();
        for v in Variant::ALL {
            let rep = verify(&f, v);
            assert!(!rep.verdict_sat);
            assert!(rep.ok(), "{:?}: {:?}", v, rep.failures);
            assert!(rep.cells_checked > 0);
            assert!(rep.probes >= rep.cells_checked);
        }
    }

    #[test]
    fn verifies_sat_model() {
        let f = Formula::new(
            vec!["x".into()],
            vec![Constraint {
                poly: poly(1, vec![(vec![2], 1), (vec![0], -2)]),
                rel: Relation::Gt,
            }],
        )
        .unwrap();
        let rep = verify(&f, Variant::Closed);
        assert!(rep.verdict_sat && rep.ok());
    }
}
