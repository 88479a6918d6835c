//! The satisfiability engine: conjunctions of polynomial constraints are
//! decided by recursively covering each variable's line with intervals of
//! excluded values.
//!
//! At level i, every constraint whose variables are all assigned or whose
//! highest variable is x_i contributes intervals on which it is false. While
//! those intervals leave a gap, a sample from the gap extends the assignment
//! and the next level is searched; a failed subtree comes back as a covering
//! of the next line, which is generalized through projection (discriminants,
//! resultants, and leading coefficients) into a new excluded interval around
//! the sample. When the current line is fully covered the level fails in
//! turn. Level n succeeding means every constraint holds at the assembled
//! sample point.
//!
//! The closed-cell refinement: intervals on which a strict constraint is
//! false are topologically closed, so closing and merging them (and closing
//! derived intervals whose parent cells were all flagged) removes the
//! endpoint samples the base variant still has to try.

use crate::covering::{
    cells_cover, close_and_merge, sample_outside_cells, select_covering, Bound, CellRep, Interval,
    Provenance, Selector,
};
use crate::poly::Polynomial;
use crate::polygcd::{div_exact, gcd, normalize, normalize_into};
use crate::rational::Rational;
use crate::realalg::{sign_at_sample, specialize_roots, RealAlgebraicNumber, SamplePoint, Specialization};
use crate::resultant::{discriminant, resultant};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Comparison of a polynomial against zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Relation {
    /// Strict relations have closed falsity regions, which is what the
    /// closed-cell variants exploit.
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt | Relation::Ne)
    }

    pub fn holds(self, sign: i8) -> bool {
        match self {
            Relation::Lt => sign < 0,
            Relation::Le => sign <= 0,
            Relation::Eq => sign == 0,
            Relation::Ne => sign != 0,
            Relation::Ge => sign >= 0,
            Relation::Gt => sign > 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

/// A single constraint `poly rel 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub poly: Polynomial,
    pub rel: Relation,
}

/// A conjunction of constraints over an ordered list of variables.
#[derive(Clone, Debug)]
pub struct Formula {
    var_names: Vec<String>,
    constraints: Vec<Constraint>,
}

impl Formula {
    pub fn new(var_names: Vec<String>, constraints: Vec<Constraint>) -> Result<Formula, String> {
        if var_names.is_empty() {
            return Err("a formula needs at least one variable".into());
        }
        let mut seen = BTreeSet::new();
        for name in &var_names {
            if name.is_empty() {
                return Err("empty variable name".into());
            }
            if !seen.insert(name.clone()) {
                return Err(format!("duplicate variable name {name}"));
            }
        }
        for c in &constraints {
            if c.poly.nvars() != var_names.len() {
                return Err("constraint arity does not match the variable count".into());
            }
            if c.poly.is_constant() {
                return Err("constraint polynomial is constant".into());
            }
        }
        Ok(Formula { var_names, constraints })
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.constraints.iter().enumerate() {
            if i > 0 {
                write!(f, " and ")?;
            }
            write!(f, "{} {} 0", c.poly, c.rel.symbol())?;
        }
        Ok(())
    }
}

/// Which cell treatment the solver runs with.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    /// Raw falsity pieces, no closing, no flags.
    Base,
    /// Strict cells closed and merged, derived intervals closed when all
    /// parents are flagged.
    Closed,
    /// `Closed`, plus covering selection that restricts itself to flagged
    /// cells whenever those already cover the line.
    ClosedHeuristic,
}

impl Variant {
    pub fn closes_cells(self) -> bool {
        !matches!(self, Variant::Base)
    }

    fn selector(self) -> Selector {
        match self {
            Variant::ClosedHeuristic => Selector::ClosedFirst,
            _ => Selector::MinCount,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Base => "base",
            Variant::Closed => "closed",
            Variant::ClosedHeuristic => "closed-heuristic",
        }
    }

    pub const ALL: [Variant; 3] = [Variant::Base, Variant::Closed, Variant::ClosedHeuristic];
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Variant, String> {
        match s {
            "base" => Ok(Variant::Base),
            "closed" => Ok(Variant::Closed),
            "closed-heuristic" => Ok(Variant::ClosedHeuristic),
            _ => Err(format!("unknown variant {s}")),
        }
    }
}

/// Counters describing one solver run.
#[derive(Clone, Debug, Default)]
pub struct Stats {
    /// Sample assignments tried per level, index 0 = first variable.
    pub samples_per_level: Vec<u64>,
    /// Derived (generalized) cells.
    pub cells_created: u64,
    /// Derived cells whose interval was stored closed.
    pub cells_closed: u64,
    pub max_depth: u32,
    pub max_closed_depth: u32,
    pub characterization_calls: u64,
}

/// Outcome of a solver run.
pub enum Verdict {
    Sat(SamplePoint),
    /// The selected covering of the first variable's line.
    Unsat(Vec<Arc<CellRep>>),
}

pub struct SolveResult {
    pub verdict: Verdict,
    pub stats: Stats,
    /// Every derived cell, in creation order.
    pub derived: Vec<Arc<CellRep>>,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.verdict, Verdict::Sat(_))
    }
}

/// Result of searching below a fixed prefix assignment.
pub enum SubOutcome {
    /// An extension of the prefix satisfying every constraint.
    Sat(SamplePoint),
    /// The level right after the prefix got covered; the selected covering.
    Covered(Vec<Arc<CellRep>>),
}

struct Ctx<'a> {
    f: &'a Formula,
    variant: Variant,
    stats: Stats,
    /// Per-level queues of samples to try before the heuristic kicks in.
    forced: Vec<VecDeque<RealAlgebraicNumber>>,
    trace: Vec<Arc<CellRep>>,
    next_id: u64,
}

impl<'a> Ctx<'a> {
    fn new(f: &'a Formula, variant: Variant, forced: Vec<VecDeque<RealAlgebraicNumber>>) -> Self {
        let n = f.nvars();
        let mut forced = forced;
        forced.resize(n, VecDeque::new());
        Ctx {
            f,
            variant,
            stats: Stats { samples_per_level: vec![0; n], ..Stats::default() },
            forced,
            trace: Vec::new(),
            next_id: 0,
        }
    }

    fn fresh_id(&mut self) -> u64 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }
}

pub fn solve(f: &Formula, variant: Variant) -> SolveResult {
    solve_with(f, variant, Vec::new())
}

/// `solve` with per-level forced sample queues (consumed front to back,
/// skipping values that are already covered).
pub fn solve_with(
    f: &Formula,
    variant: Variant,
    forced: Vec<VecDeque<RealAlgebraicNumber>>,
) -> SolveResult {
    let mut ctx = Ctx::new(f, variant, forced);
    let mut prefix = Vec::new();
    let verdict = match search_level(&mut ctx, &mut prefix) {
        SubOutcome::Sat(pt) => Verdict::Sat(pt),
        SubOutcome::Covered(selected) => Verdict::Unsat(selected),
    };
    SolveResult { verdict, stats: ctx.stats, derived: ctx.trace }
}

/// Runs the search for the levels below an explicit prefix assignment,
/// returning the outcome together with the stats and the derived-cell trace
/// of the subtree.
pub fn search_subtree(
    f: &Formula,
    variant: Variant,
    prefix: SamplePoint,
    forced: Vec<VecDeque<RealAlgebraicNumber>>,
) -> (SubOutcome, Stats, Vec<Arc<CellRep>>) {
    assert!(prefix.len() < f.nvars(), "prefix already assigns every variable");
    let mut ctx = Ctx::new(f, variant, forced);
    let mut prefix = prefix;
    let out = search_level(&mut ctx, &mut prefix);
    (out, ctx.stats, ctx.trace)
}

fn search_level(ctx: &mut Ctx, prefix: &mut SamplePoint) -> SubOutcome {
    let level = prefix.len() + 1;
    let n = ctx.f.nvars();
    let mut cells = constraint_cells(ctx, prefix, level);
    loop {
        if cells_cover(&cells) {
            let selected = select_covering(&cells, ctx.variant.selector());
            return SubOutcome::Covered(selected);
        }
        let s = next_sample(ctx, level, &cells);
        ctx.stats.samples_per_level[level - 1] += 1;
        prefix.push(s);
        if level == n {
            let ok = ctx
                .f
                .constraints()
                .iter()
                .all(|c| c.rel.holds(sign_at_sample(&c.poly, prefix)));
            assert!(ok, "sample escaped the excluded intervals but falsifies a constraint");
            let pt = prefix.clone();
            prefix.pop();
            return SubOutcome::Sat(pt);
        }
        match search_level(ctx, prefix) {
            SubOutcome::Sat(pt) => {
                prefix.pop();
                return SubOutcome::Sat(pt);
            }
            SubOutcome::Covered(selected) => {
                ctx.stats.characterization_calls += 1;
                let pset = characterize(&selected, prefix);
                let s = prefix.pop().unwrap();
                let cell = derive_cell(ctx, pset, prefix, &s, selected);
                ctx.trace.push(cell.clone());
                cells.push(cell);
            }
        }
    }
}

fn next_sample(ctx: &mut Ctx, level: usize, cells: &[Arc<CellRep>]) -> RealAlgebraicNumber {
    while let Some(v) = ctx.forced[level - 1].pop_front() {
        if !cells.iter().any(|c| c.interval.contains(&v)) {
            return v;
        }
    }
    sample_outside_cells(cells).expect("sampled a covered line")
}

/// The intervals on which some constraint is false, for the line of variable
/// `level` under the prefix assignment.
pub fn unsat_intervals(
    f: &Formula,
    variant: Variant,
    prefix: &[RealAlgebraicNumber],
) -> Vec<Arc<CellRep>> {
    let mut ctx = Ctx::new(f, variant, Vec::new());
    let pt = prefix.to_vec();
    constraint_cells(&mut ctx, &pt, prefix.len() + 1)
}

fn constraint_cells(ctx: &mut Ctx, prefix: &SamplePoint, level: usize) -> Vec<Arc<CellRep>> {
    let f = ctx.f;
    let mut cells = Vec::new();
    for (idx, c) in f.constraints().iter().enumerate() {
        let c_level = c.poly.max_var().expect("constant constraint poly") + 1;
        if c_level > level {
            continue;
        }
        if c_level < level {
            // Fully determined by the prefix: a violated constraint rules
            // out the entire line.
            if !c.rel.holds(sign_at_sample(&c.poly, prefix)) {
                cells.push(full_line_cell(ctx, c, idx, prefix));
            }
            continue;
        }
        let var = level - 1;
        match specialize_roots(&c.poly, prefix, var) {
            Specialization::Nullified => {
                if !c.rel.holds(0) {
                    cells.push(full_line_cell(ctx, c, idx, prefix));
                }
            }
            Specialization::Roots(roots) => {
                if roots.is_empty() {
                    let probe = with_value(prefix, RealAlgebraicNumber::from_int(0));
                    if !c.rel.holds(sign_at_sample(&c.poly, &probe)) {
                        cells.push(full_line_cell(ctx, c, idx, prefix));
                    }
                    continue;
                }
                cells.extend(line_cells(ctx, c, idx, prefix, &roots));
            }
        }
    }
    cells
}

fn full_line_cell(ctx: &mut Ctx, c: &Constraint, idx: usize, prefix: &SamplePoint) -> Arc<CellRep> {
    let strict = c.rel.is_strict();
    Arc::new(CellRep {
        polys: normalize(&c.poly),
        prefix: prefix.clone(),
        interval: Interval::full_line(),
        closed_flag: strict && ctx.variant.closes_cells(),
        preferred: strict,
        depth: 1,
        provenance: Provenance::Constraint(idx),
        id: ctx.fresh_id(),
    })
}

/// Falsity pieces of one constraint along the current line, split at the
/// roots of its polynomial.
fn line_cells(
    ctx: &mut Ctx,
    c: &Constraint,
    idx: usize,
    prefix: &SamplePoint,
    roots: &[RealAlgebraicNumber],
) -> Vec<Arc<CellRep>> {
    let mut pieces: Vec<Interval> = Vec::new();
    let mut section_flags: Vec<bool> = Vec::new();
    let k = roots.len();
    for j in 0..=k {
        // Sector between roots j-1 and j (with infinities at the rim).
        let lo = if j == 0 { None } else { roots.get(j - 1) };
        let hi = roots.get(j);
        let probe = match (lo, hi) {
            (None, None) => unreachable!("no roots handled earlier"),
            (None, Some(r)) => {
                RealAlgebraicNumber::from_rational(Rational::from_integer(r.floor() - 1))
            }
            (Some(r), None) => {
                RealAlgebraicNumber::from_rational(Rational::from_integer(r.floor() + 1))
            }
            (Some(a), Some(b)) => {
                RealAlgebraicNumber::from_rational(RealAlgebraicNumber::rational_between(a, b))
            }
        };
        let sign = sign_at_sample(&c.poly, &with_value(prefix, probe));
        if !c.rel.holds(sign) {
            let lower = lo.map_or(Bound::NegInf, |r| Bound::Open(r.clone()));
            let upper = hi.map_or(Bound::PosInf, |r| Bound::Open(r.clone()));
            pieces.push(Interval::new(lower, upper));
            section_flags.push(false);
        }
        if let Some(r) = hi {
            // Section at the root: the polynomial is zero there.
            if !c.rel.holds(0) {
                pieces.push(Interval::point(r.clone()));
                section_flags.push(r.is_rational());
            }
        }
    }
    let polys = normalize(&c.poly);
    let strict = c.rel.is_strict();
    let make = |ctx: &mut Ctx, interval: Interval, flag: bool| {
        Arc::new(CellRep {
            polys: polys.clone(),
            prefix: prefix.clone(),
            interval,
            closed_flag: flag,
            preferred: strict,
            depth: 1,
            provenance: Provenance::Constraint(idx),
            id: ctx.fresh_id(),
        })
    };
    if strict && ctx.variant.closes_cells() {
        if c.rel == Relation::Ne {
            // Pure sections; kept unmerged, flagged only at rational roots.
            return pieces
                .into_iter()
                .zip(section_flags)
                .map(|(iv, fl)| make(ctx, iv, fl))
                .collect();
        }
        return close_and_merge(pieces).into_iter().map(|iv| make(ctx, iv, true)).collect();
    }
    pieces.into_iter().map(|iv| make(ctx, iv, false)).collect()
}

fn with_value(prefix: &SamplePoint, v: RealAlgebraicNumber) -> SamplePoint {
    let mut pt = prefix.clone();
    pt.push(v);
    pt
}

/// Projects a covering of the line right after the prefix (the variable
/// with 0-based index `prefix.len()`) down one level: the returned
/// polynomials delimit, around the prefix, the region in which the
/// covering's structure persists.
///
/// Clauses, for the ordered covering cells with lower/upper bound
/// polynomials L_j / U_j: (a) discriminants of all cell polynomials, (b)
/// their leading coefficients down to the first one that does not vanish at
/// the prefix (all of them if every one vanishes; polynomials free of the
/// eliminated variable pass down whole), (c) resultants linking each upper
/// bound to the next cell's lower bound, (d) resultants of lower against
/// upper bounds within a cell, and (e) resultants of every cell polynomial
/// against the cell's bound polynomials.
pub fn characterize(
    selected: &[Arc<CellRep>],
    prefix: &SamplePoint,
) -> BTreeSet<Polynomial> {
    let var = prefix.len();
    let below = &prefix[..];
    let mut out = BTreeSet::new();
    let clause_ab = |p: &Polynomial, out: &mut BTreeSet<Polynomial>| {
        if p.degree(var) == 0 {
            normalize_into(p, out);
            return;
        }
        if p.degree(var) >= 2 {
            normalize_into(&discriminant(p, var), out);
        }
        for coeff in p.coefficients(var) {
            if coeff.is_zero() {
                continue;
            }
            normalize_into(&coeff, out);
            if sign_at_sample(&coeff, below) != 0 {
                break;
            }
        }
    };
    if selected.len() == 1 && matches!(selected[0].interval.lower(), Bound::NegInf)
        && matches!(selected[0].interval.upper(), Bound::PosInf)
    {
        for p in &selected[0].polys {
            clause_ab(p, &mut out);
        }
        return out;
    }
    let bound_polys = |cell: &CellRep, bound: &Bound| -> Vec<Polynomial> {
        match bound.value() {
            None => Vec::new(),
            Some(v) => {
                let pt = with_value(&below.to_vec(), v.clone());
                cell.polys.iter().filter(|p| sign_at_sample(p, &pt) == 0).cloned().collect()
            }
        }
    };
    let lowers: Vec<Vec<Polynomial>> =
        selected.iter().map(|c| bound_polys(c, c.interval.lower())).collect();
    let uppers: Vec<Vec<Polynomial>> =
        selected.iter().map(|c| bound_polys(c, c.interval.upper())).collect();
    for cell in selected {
        for p in &cell.polys {
            clause_ab(p, &mut out);
        }
    }
    for j in 0..selected.len() {
        if j + 1 < selected.len() {
            for u in &uppers[j] {
                for l in &lowers[j + 1] {
                    add_resultant(u, l, var, &mut out);
                }
            }
        }
        for l in &lowers[j] {
            for u in &uppers[j] {
                add_resultant(l, u, var, &mut out);
            }
        }
        for p in &selected[j].polys {
            for q in lowers[j].iter().chain(uppers[j].iter()) {
                add_resultant(p, q, var, &mut out);
            }
        }
    }
    out
}

/// Resultant of two distinct polynomials; a vanishing resultant (a shared
/// factor) is split through the gcd so the projection still records where
/// each part degenerates.
fn add_resultant(p: &Polynomial, q: &Polynomial, var: usize, out: &mut BTreeSet<Polynomial>) {
    if p == q {
        return;
    }
    let r = resultant(p, q, var);
    if !r.is_zero() {
        normalize_into(&r, out);
        return;
    }
    let g = gcd(p, q);
    let (pr, qr) = (div_exact(p, &g), div_exact(q, &g));
    add_resultant(&pr, &qr, var, out);
    add_resultant(&pr, &g, var, out);
    add_resultant(&qr, &g, var, out);
    if g.degree(var) >= 2 {
        normalize_into(&discriminant(&g, var), out);
    }
}

/// Builds the generalized cell around `s` on the line of the variable after
/// `prefix`, bounded by the nearest roots of the projection polynomials.
fn derive_cell(
    ctx: &mut Ctx,
    pset: BTreeSet<Polynomial>,
    prefix: &SamplePoint,
    s: &RealAlgebraicNumber,
    parents: Vec<Arc<CellRep>>,
) -> Arc<CellRep> {
    let var = prefix.len();
    let mut roots: Vec<RealAlgebraicNumber> = Vec::new();
    for p in &pset {
        if let Specialization::Roots(rs) = specialize_roots(p, prefix, var) {
            roots.extend(rs);
        }
    }
    let flag = ctx.variant.closes_cells() && parents.iter().all(|c| c.closed_flag);
    let mut below: Option<&RealAlgebraicNumber> = None;
    let mut above: Option<&RealAlgebraicNumber> = None;
    let mut at_root = false;
    for r in &roots {
        match r.compare(s) {
            std::cmp::Ordering::Less => {
                if below.map_or(true, |b| b.compare(r) == std::cmp::Ordering::Less) {
                    below = Some(r);
                }
            }
            std::cmp::Ordering::Equal => at_root = true,
            std::cmp::Ordering::Greater => {
                if above.map_or(true, |a| r.compare(a) == std::cmp::Ordering::Less) {
                    above = Some(r);
                }
            }
        }
    }
    let interval = if at_root {
        Interval::point(s.clone())
    } else {
        let close = |v: &RealAlgebraicNumber| {
            if flag {
                Bound::Closed(v.clone())
            } else {
                Bound::Open(v.clone())
            }
        };
        Interval::new(
            below.map_or(Bound::NegInf, close),
            above.map_or(Bound::PosInf, close),
        )
    };
    let depth = 1 + parents.iter().map(|c| c.depth).max().unwrap_or(0);
    ctx.stats.cells_created += 1;
    ctx.stats.max_depth = ctx.stats.max_depth.max(depth);
    if flag {
        ctx.stats.cells_closed += 1;
        ctx.stats.max_closed_depth = ctx.stats.max_closed_depth.max(depth);
    }
    Arc::new(CellRep {
        polys: pset,
        prefix: prefix.clone(),
        interval,
        closed_flag: flag,
        preferred: flag,
        depth,
        provenance: Provenance::Derived(parents),
        id: ctx.fresh_id(),
    })
}

/// Whether the full assignment satisfies every constraint.
pub fn assignment_satisfies(f: &Formula, point: &[RealAlgebraicNumber]) -> bool {
    assert_eq!(point.len(), f.nvars());
    f.constraints().iter().all(|c| c.rel.holds(sign_at_sample(&c.poly, point)))
}
