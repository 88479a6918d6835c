//! End-to-end checks of the SMT-LIB frontend on the bundled instance
//! files: exact decimal parsing, solver verdicts, model printing, script
//! round-trips, and the frozen layout of the machine-readable reports.

mod common;

use common::{rat, rat_int};
use covra_core::engine::{assignment_satisfies, solve, Relation, Variant, Verdict};
use covra_core::poly::Polynomial;
use covra_core::report::{to_csv, StatsReport};
use covra_core::smtlib::{parse_script, print_model, script_text};
use covra_core::verify::verify;
use covra_core::Rational;
use std::fs;
use std::path::PathBuf;

fn instance(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

fn poly(nvars: usize, terms: Vec<(Vec<u32>, Rational)>) -> Polynomial {
    Polynomial::from_raw_terms(nvars, terms)
}

#[test]
fn bundled_sat_instance_parses_exactly() {
    let s = parse_script(&instance("parabolas_circle.smt2")).unwrap();
    assert!(s.wants_model);
    assert!(!s.trivially_false);
    let f = s.formula.unwrap();
    assert_eq!(f.var_names(), ["x".to_string(), "y".to_string()]);
    let cs = f.constraints();
    assert_eq!(cs.len(), 3);
    assert_eq!(cs[0].rel, Relation::Gt);
    assert_eq!(cs[1].rel, Relation::Gt);
    assert_eq!(cs[2].rel, Relation::Lt);
    assert_eq!(
        cs[0].poly,
        poly(2, vec![(vec![2, 0], rat_int(1)), (vec![0, 1], rat_int(1)), (vec![0, 0], rat_int(-1))])
    );
    assert_eq!(
        cs[1].poly,
        poly(2, vec![(vec![2, 0], rat_int(1)), (vec![0, 1], rat_int(-1)), (vec![0, 0], rat_int(-1))])
    );
    assert_eq!(
        cs[2].poly,
        poly(2, vec![(vec![2, 0], rat_int(1)), (vec![0, 2], rat_int(1)), (vec![0, 0], rat_int(-9))])
    );
}

#[test]
fn bundled_unsat_instance_parses_decimals_exactly() {
    let s = parse_script(&instance("sphere_paraboloid.smt2")).unwrap();
    assert!(!s.wants_model);
    let f = s.formula.unwrap();
    assert_eq!(f.var_names(), ["x".to_string(), "y".to_string(), "z".to_string()]);
    let cs = f.constraints();
    assert_eq!(cs.len(), 2);
    assert!(cs.iter().all(|c| c.rel == Relation::Le));
    // z + x^2 + y^2 + 1/2, the 0.5 carried exactly.
    assert_eq!(
        cs[0].poly,
        poly(
            3,
            vec![
                (vec![2, 0, 0], rat_int(1)),
                (vec![0, 2, 0], rat_int(1)),
                (vec![0, 0, 1], rat_int(1)),
                (vec![0, 0, 0], rat(1, 2)),
            ]
        )
    );
    // x^2 + y^2 + (z - 5/2)^2 - 4 expanded, the 2.5 squared exactly.
    assert_eq!(
        cs[1].poly,
        poly(
            3,
            vec![
                (vec![2, 0, 0], rat_int(1)),
                (vec![0, 2, 0], rat_int(1)),
                (vec![0, 0, 2], rat_int(1)),
                (vec![0, 0, 1], rat_int(-5)),
                (vec![0, 0, 0], rat(9, 4)),
            ]
        )
    );
}

#[test]
fn bundled_instances_solve_as_annotated() {
    let sat_f = parse_script(&instance("parabolas_circle.smt2")).unwrap().formula.unwrap();
    for v in Variant::ALL {
        let res = solve(&sat_f, v);
        match &res.verdict {
            Verdict::Sat(pt) => assert!(assignment_satisfies(&sat_f, pt)),
            Verdict::Unsat(_) => panic!("bundled sat instance refuted under {}", v.name()),
        }
    }
    // The closed run lands on the rational witness; its model prints as
    // plain define-fun bindings.
    let res = solve(&sat_f, Variant::Closed);
    let Verdict::Sat(pt) = &res.verdict else { unreachable!() };
    let model = print_model(sat_f.var_names(), pt);
    assert!(model.starts_with("(\n"));
    assert!(model.contains("(define-fun x () Real 2)"));
    assert!(model.contains("(define-fun y () Real 0)"));

    let unsat_f = parse_script(&instance("sphere_paraboloid.smt2")).unwrap().formula.unwrap();
    for v in Variant::ALL {
        assert!(!solve(&unsat_f, v).is_sat(), "bundled unsat instance sat under {}", v.name());
        let report = verify(&unsat_f, v);
        assert!(report.ok(), "verification failed: {:?}", report.failures);
    }
}

#[test]
fn bundled_scripts_round_trip_through_the_printer() {
    for name in ["parabolas_circle.smt2", "sphere_paraboloid.smt2"] {
        let f = parse_script(&instance(name)).unwrap().formula.unwrap();
        let again = parse_script(&script_text(&f))
            .unwrap_or_else(|e| panic!("reparsing {name}: {e}"))
            .formula
            .unwrap();
        assert_eq!(again.var_names(), f.var_names(), "{name}");
        assert_eq!(again.constraints(), f.constraints(), "{name}");
    }
}

#[test]
fn report_layout_is_frozen() {
    assert_eq!(
        StatsReport::csv_header(),
        vec![
            "instance",
            "variant",
            "verdict",
            "time_ms",
            "samples_per_level",
            "cells_created",
            "cells_closed",
            "closed_ratio",
            "max_depth",
            "max_closed_depth",
            "rel_max_closed_depth",
            "characterization_calls",
        ]
    );
    let f = parse_script(&instance("sphere_paraboloid.smt2")).unwrap().formula.unwrap();
    let res = solve(&f, Variant::Closed);
    let report = StatsReport::new("sphere_paraboloid.smt2", Variant::Closed, &res, 7);
    let json = report.to_json();
    for field in StatsReport::csv_header() {
        assert!(json.contains(&format!("\"{field}\"")), "{field} missing from {json}");
    }
    assert!(json.contains("\"verdict\": \"unsat\""));
    assert!(json.contains("\"time_ms\": 7"));
    let csv = to_csv(&[report]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("instance,variant,verdict"));
    assert!(lines[1].starts_with("sphere_paraboloid.smt2,closed,unsat,7,"));
}
