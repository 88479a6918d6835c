//! Intervals over the affine real line and operations on families of them:
//! gap finding, sample selection, closing and merging, and the choice of a
//! covering subset.
//!
//! Open and closed endpoints are handled uniformly by mapping every bound to
//! a position in "endpoint space": a real value tagged with a side, where
//! `(v, Minus) < (v, Exact) < (v, Plus)` stand for just-below-v, v itself,
//! and just-above-v. An interval occupies the closed range between the
//! position of its lower and upper bound, two intervals union without a gap
//! iff the next start is at most the successor of the reached end, and the
//! uncovered gaps fall out of a single sweep with their open/closed ends
//! reconstructed from the neighbouring sides.

use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::realalg::RealAlgebraicNumber;
use num_bigint::BigInt;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// One end of an interval.
#[derive(Clone, Debug)]
pub enum Bound {
    NegInf,
    Open(RealAlgebraicNumber),
    Closed(RealAlgebraicNumber),
    PosInf,
}

impl Bound {
    pub fn value(&self) -> Option<&RealAlgebraicNumber> {
        match self {
            Bound::Open(v) | Bound::Closed(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }

    /// Closes a finite bound; infinite bounds are unchanged.
    pub fn closed(self) -> Bound {
        match self {
            Bound::Open(v) => Bound::Closed(v),
            b => b,
        }
    }
}

/// A non-empty interval of reals. Point intervals are closed on both sides.
#[derive(Clone, Debug)]
pub struct Interval {
    lower: Bound,
    upper: Bound,
}

impl Interval {
    pub fn new(lower: Bound, upper: Bound) -> Interval {
        match (&lower, &upper) {
            (Bound::PosInf, _) | (_, Bound::NegInf) => panic!("malformed interval bounds"),
            (Bound::NegInf, _) | (_, Bound::PosInf) => {}
            (l, u) => {
                let (lv, uv) = (l.value().unwrap(), u.value().unwrap());
                match lv.compare(uv) {
                    Ordering::Less => {}
                    Ordering::Equal if l.is_closed() && u.is_closed() => {}
                    _ => panic!("empty interval"),
                }
            }
        }
        Interval { lower, upper }
    }

    pub fn point(v: RealAlgebraicNumber) -> Interval {
        Interval { lower: Bound::Closed(v.clone()), upper: Bound::Closed(v) }
    }

    pub fn full_line() -> Interval {
        Interval { lower: Bound::NegInf, upper: Bound::PosInf }
    }

    pub fn lower(&self) -> &Bound {
        &self.lower
    }

    pub fn upper(&self) -> &Bound {
        &self.upper
    }

    pub fn is_point(&self) -> bool {
        match (self.lower.value(), self.upper.value()) {
            (Some(a), Some(b)) => self.lower.is_closed() && self.upper.is_closed() && a == b,
            _ => false,
        }
    }

    pub fn contains(&self, x: &RealAlgebraicNumber) -> bool {
        let above_lower = match &self.lower {
            Bound::NegInf => true,
            Bound::Open(v) => v.compare(x) == Ordering::Less,
            Bound::Closed(v) => v.compare(x) != Ordering::Greater,
            Bound::PosInf => false,
        };
        let below_upper = match &self.upper {
            Bound::PosInf => true,
            Bound::Open(v) => x.compare(v) == Ordering::Less,
            Bound::Closed(v) => x.compare(v) != Ordering::Greater,
            Bound::NegInf => false,
        };
        above_lower && below_upper
    }

    /// Some rational inside the interval, if one exists (a point interval at
    /// an irrational value has none).
    pub fn some_rational_inside(&self) -> Option<Rational> {
        if self.is_point() {
            return self.lower.value().unwrap().as_rational().cloned();
        }
        let q = match (&self.lower, &self.upper) {
            (Bound::NegInf, Bound::PosInf) => Rational::zero(),
            (Bound::NegInf, u) => {
                let b = u.value().unwrap();
                Rational::from_integer(b.ceil() - BigInt::from(1))
            }
            (l, Bound::PosInf) => {
                let a = l.value().unwrap();
                Rational::from_integer(a.floor() + BigInt::from(1))
            }
            (l, u) => RealAlgebraicNumber::rational_between(l.value().unwrap(), u.value().unwrap()),
        };
        Some(q)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            Bound::NegInf => write!(f, "(-inf, ")?,
            Bound::Open(v) => write!(f, "({v}, ")?,
            Bound::Closed(v) => write!(f, "[{v}, ")?,
            Bound::PosInf => unreachable!(),
        }
        match &self.upper {
            Bound::PosInf => write!(f, "inf)"),
            Bound::Open(v) => write!(f, "{v})"),
            Bound::Closed(v) => write!(f, "{v}]"),
            Bound::NegInf => unreachable!(),
        }
    }
}

/// Which side of a value a position denotes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Side {
    Minus,
    Exact,
    Plus,
}

/// A position in endpoint space.
#[derive(Clone, Debug)]
enum EPos {
    NegInf,
    At(RealAlgebraicNumber, Side),
    PosInf,
}

impl EPos {
    fn cmp(&self, other: &EPos) -> Ordering {
        match (self, other) {
            (EPos::NegInf, EPos::NegInf) | (EPos::PosInf, EPos::PosInf) => Ordering::Equal,
            (EPos::NegInf, _) | (_, EPos::PosInf) => Ordering::Less,
            (_, EPos::NegInf) | (EPos::PosInf, _) => Ordering::Greater,
            (EPos::At(a, sa), EPos::At(b, sb)) => a.compare(b).then(sa.cmp(sb)),
        }
    }

    fn start_of(iv: &Interval) -> EPos {
        match iv.lower() {
            Bound::NegInf => EPos::NegInf,
            Bound::Open(v) => EPos::At(v.clone(), Side::Plus),
            Bound::Closed(v) => EPos::At(v.clone(), Side::Exact),
            Bound::PosInf => unreachable!(),
        }
    }

    fn end_of(iv: &Interval) -> EPos {
        match iv.upper() {
            Bound::PosInf => EPos::PosInf,
            Bound::Open(v) => EPos::At(v.clone(), Side::Minus),
            Bound::Closed(v) => EPos::At(v.clone(), Side::Exact),
            Bound::NegInf => unreachable!(),
        }
    }

    /// Next position after an interval end: the first point a follow-up
    /// interval may start at without leaving a gap.
    fn succ(&self) -> EPos {
        match self {
            EPos::At(v, Side::Minus) => EPos::At(v.clone(), Side::Exact),
            EPos::At(v, Side::Exact) => EPos::At(v.clone(), Side::Plus),
            p => p.clone(),
        }
    }

    /// Lower bound of a gap that begins right after this end position.
    fn gap_lower(&self) -> Bound {
        match self {
            EPos::At(v, Side::Minus) => Bound::Closed(v.clone()),
            EPos::At(v, Side::Exact) => Bound::Open(v.clone()),
            _ => unreachable!("gap after an infinite reach"),
        }
    }

    /// Upper bound of a gap that ends right before this start position.
    fn gap_upper(&self) -> Bound {
        match self {
            EPos::At(v, Side::Plus) => Bound::Closed(v.clone()),
            EPos::At(v, Side::Exact) => Bound::Open(v.clone()),
            _ => unreachable!("gap before an infinite start"),
        }
    }
}

/// The maximal intervals not covered by the union of the inputs, ascending.
pub fn interval_gaps(ivs: &[Interval]) -> Vec<Interval> {
    let mut spans: Vec<(EPos, EPos)> =
        ivs.iter().map(|iv| (EPos::start_of(iv), EPos::end_of(iv))).collect();
    spans.sort_by(|a, b| a.0.cmp(&b.0));
    let mut gaps = Vec::new();
    let mut reach: Option<EPos> = None;
    for (start, end) in spans {
        match &reach {
            None => {
                if start.cmp(&EPos::NegInf) == Ordering::Greater {
                    gaps.push(Interval::new(Bound::NegInf, start.gap_upper()));
                }
                reach = Some(end);
            }
            Some(r) => {
                if start.cmp(&r.succ()) == Ordering::Greater {
                    gaps.push(Interval::new(r.gap_lower(), start.gap_upper()));
                }
                if end.cmp(r) == Ordering::Greater {
                    reach = Some(end);
                }
            }
        }
    }
    match &reach {
        None => gaps.push(Interval::full_line()),
        Some(r) => {
            if r.cmp(&EPos::PosInf) == Ordering::Less {
                gaps.push(Interval::new(r.gap_lower(), Bound::PosInf));
            }
        }
    }
    gaps
}

pub fn is_covering(ivs: &[Interval]) -> bool {
    interval_gaps(ivs).is_empty()
}

/// Closes all finite bounds and merges overlapping or touching intervals.
pub fn close_and_merge(ivs: Vec<Interval>) -> Vec<Interval> {
    let mut closed: Vec<Interval> =
        ivs.into_iter().map(|iv| Interval::new(iv.lower.closed(), iv.upper.closed())).collect();
    closed.sort_by(|a, b| EPos::start_of(a).cmp(&EPos::start_of(b)));
    let mut out: Vec<Interval> = Vec::new();
    for iv in closed {
        match out.last_mut() {
            Some(last)
                if EPos::start_of(&iv).cmp(&EPos::end_of(last).succ()) != Ordering::Greater =>
            {
                if EPos::end_of(&iv).cmp(&EPos::end_of(last)) == Ordering::Greater {
                    *last = Interval::new(last.lower.clone(), iv.upper);
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

/// A sample value in some gap, or `None` when the intervals cover the line.
///
/// Preferences, in order: zero when it is uncovered; otherwise a rational
/// pick from the leftmost gap at or right of zero, falling back to the
/// leftmost gap overall. Within a gap: a closed rational endpoint wins
/// (boundary values must be sampled exactly); otherwise the interior yields
/// the nearest integer beyond a one-sided gap or the simplest rational
/// inside a bounded one. Only when every gap is a single irrational point
/// does the sample come out algebraic.
pub fn sample_outside(ivs: &[Interval]) -> Option<RealAlgebraicNumber> {
    let gaps = interval_gaps(ivs);
    if gaps.is_empty() {
        return None;
    }
    let zero = RealAlgebraicNumber::from_int(0);
    for gap in &gaps {
        if gap.contains(&zero) {
            return Some(zero);
        }
    }
    // A gap is entirely left of zero iff its upper end is below zero.
    let right_of_zero = |gap: &Interval| match gap.upper() {
        Bound::PosInf => true,
        Bound::Open(v) | Bound::Closed(v) => v.sign() > 0,
        Bound::NegInf => unreachable!(),
    };
    let rational_pick = |gap: &Interval| -> Option<Rational> {
        if gap.is_point() {
            return gap.lower().value().unwrap().as_rational().cloned();
        }
        if let Bound::Closed(v) = gap.lower() {
            if let Some(q) = v.as_rational() {
                return Some(q.clone());
            }
        }
        if let Bound::Closed(v) = gap.upper() {
            if let Some(q) = v.as_rational() {
                return Some(q.clone());
            }
        }
        gap.some_rational_inside()
    };
    let ordered = gaps.iter().filter(|g| right_of_zero(g)).chain(gaps.iter());
    for gap in ordered.clone() {
        if let Some(q) = rational_pick(gap) {
            return Some(RealAlgebraicNumber::from_rational(q));
        }
    }
    // Every gap is an irrational point; sample the preferred one exactly.
    for gap in ordered {
        if gap.is_point() {
            return Some(gap.lower().value().unwrap().clone());
        }
    }
    unreachable!("a non-point gap always yields a rational")
}

/// Where a cell came from.
#[derive(Clone)]
pub enum Provenance {
    /// Directly from a constraint (by index) at the current level.
    Constraint(usize),
    /// Generalized from a covering one level up; the parents are the
    /// selected cells of that covering.
    Derived(Vec<Arc<CellRep>>),
}

/// An interval of excluded values at some level, with the polynomials that
/// characterize why it is excluded.
#[derive(Clone)]
pub struct CellRep {
    pub polys: BTreeSet<Polynomial>,
    /// The assignment under which this cell's line lives; its length is the
    /// cell's level minus one.
    pub prefix: Vec<RealAlgebraicNumber>,
    pub interval: Interval,
    /// Whether the closed-cell argument applies: the interval is closed (as
    /// stored) and remains excluded at its endpoints under projection.
    pub closed_flag: bool,
    /// Selection preference: strict-relation constraint cells, and derived
    /// cells whose parents were all flagged.
    pub preferred: bool,
    /// 1 for constraint cells, 1 + max of parents for derived ones.
    pub depth: u32,
    pub provenance: Provenance,
    pub id: u64,
}

impl CellRep {
    /// 1-based level: which variable's line the interval lives on.
    pub fn level(&self) -> usize {
        self.prefix.len() + 1
    }

    fn poly_key(&self) -> Vec<&Polynomial> {
        self.polys.iter().collect()
    }
}

/// How `select_covering` chooses among redundant cells.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Selector {
    /// Greedy sweep preferring flagged/strict cells, then the farthest
    /// reach, followed by a redundancy-pruning pass.
    MinCount,
    /// Restrict to flag-true cells whenever those already cover, then fall
    /// back to the full set; same sweep either way.
    ClosedFirst,
}

fn cell_intervals(cells: &[Arc<CellRep>]) -> Vec<Interval> {
    cells.iter().map(|c| c.interval.clone()).collect()
}

pub fn cells_cover(cells: &[Arc<CellRep>]) -> bool {
    is_covering(&cell_intervals(cells))
}

pub fn sample_outside_cells(cells: &[Arc<CellRep>]) -> Option<RealAlgebraicNumber> {
    sample_outside(&cell_intervals(cells))
}

/// Picks a covering subset of `cells`, which must already cover the line.
pub fn select_covering(cells: &[Arc<CellRep>], selector: Selector) -> Vec<Arc<CellRep>> {
    debug_assert!(cells_cover(cells));
    if selector == Selector::ClosedFirst {
        let flagged: Vec<Arc<CellRep>> =
            cells.iter().filter(|c| c.closed_flag).cloned().collect();
        if cells_cover(&flagged) {
            return greedy_select(&flagged);
        }
    }
    greedy_select(cells)
}

fn greedy_select(cells: &[Arc<CellRep>]) -> Vec<Arc<CellRep>> {
    let spans: Vec<(EPos, EPos)> = cells
        .iter()
        .map(|c| (EPos::start_of(&c.interval), EPos::end_of(&c.interval)))
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut reach: Option<EPos> = None;
    loop {
        let frontier = match &reach {
            None => EPos::NegInf,
            Some(r) => {
                if r.cmp(&EPos::PosInf) == Ordering::Equal {
                    break;
                }
                r.succ()
            }
        };
        // Candidates: start at or before the frontier, end beyond the reach.
        let mut best: Option<usize> = None;
        for (i, (s, e)) in spans.iter().enumerate() {
            if chosen.contains(&i) || s.cmp(&frontier) == Ordering::Greater {
                continue;
            }
            if let Some(r) = &reach {
                if e.cmp(r) != Ordering::Greater {
                    continue;
                }
            }
            best = Some(match best {
                None => i,
                Some(j) => pick_better(cells, &spans, i, j),
            });
        }
        let i = best.expect("input cells do not cover the line");
        reach = Some(spans[i].1.clone());
        chosen.push(i);
    }
    // Redundancy pruning: drop cells whose absence keeps the covering,
    // trying unpreferred ones first.
    let mut order: Vec<usize> = (0..chosen.len()).collect();
    order.sort_by_key(|&k| cells[chosen[k]].preferred);
    let mut keep = vec![true; chosen.len()];
    for k in order {
        keep[k] = false;
        let trial: Vec<Interval> = chosen
            .iter()
            .enumerate()
            .filter(|(j, _)| keep[*j])
            .map(|(_, &i)| cells[i].interval.clone())
            .collect();
        if !is_covering(&trial) {
            keep[k] = true;
        }
    }
    let mut out: Vec<Arc<CellRep>> = chosen
        .iter()
        .enumerate()
        .filter(|(j, _)| keep[*j])
        .map(|(_, &i)| cells[i].clone())
        .collect();
    out.sort_by(|a, b| EPos::start_of(&a.interval).cmp(&EPos::start_of(&b.interval)));
    out
}

/// The better of two covering candidates: prefer flagged/strict cells, then
/// the farther reach, then a closed upper bound, then fewer polynomials,
/// then the lexicographically smaller polynomial set.
fn pick_better(cells: &[Arc<CellRep>], spans: &[(EPos, EPos)], i: usize, j: usize) -> usize {
    let (a, b) = (&cells[i], &cells[j]);
    let ord = a
        .preferred
        .cmp(&b.preferred)
        .then_with(|| spans[i].1.cmp(&spans[j].1))
        .then_with(|| a.interval.upper().is_closed().cmp(&b.interval.upper().is_closed()))
        .then_with(|| b.polys.len().cmp(&a.polys.len()))
        .then_with(|| b.poly_key().cmp(&a.poly_key()));
    if ord == Ordering::Greater {
        i
    } else {
        j
    }
}
