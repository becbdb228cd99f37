//! Orbit structure of a presented cascade: point periods, the symbolic period
//! set, minimal sets, maximal-rank sets, and the six-way classification with
//! machine-checkable witnesses in the non-periodic case.

use crate::dyadic::Dyadic;
use crate::ellis::{EllisElement, ResidueSystem};
use crate::presentation::{
    apply_map, enumerate_points, max_point_rank, piece_expr, CascadeExpr, ParamFamily, PointId,
    PresentationError,
};
use std::collections::BTreeSet;
use std::fmt;

/// Period of a single point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Period {
    Finite(u64),
    Aperiodic,
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::Finite(p) => write!(f, "{p}"),
            Period::Aperiodic => write!(f, "aperiodic"),
        }
    }
}

/// Least period of a point, computed structurally.
pub fn period(expr: &CascadeExpr, point: &PointId) -> Result<Period, PresentationError> {
    match (expr, point) {
        (CascadeExpr::Cycle(k), PointId::At(p)) if p < k => Ok(Period::Finite(*k)),
        (CascadeExpr::Tower(_), PointId::Star) => Ok(Period::Finite(1)),
        (CascadeExpr::Tower(pieces), PointId::Piece(n, inner)) => {
            period(&piece_expr(pieces, *n)?, inner)
        }
        (CascadeExpr::Sum(a, _), PointId::Left(inner)) => period(a, inner),
        (CascadeExpr::Sum(_, b), PointId::Right(inner)) => period(b, inner),
        (CascadeExpr::CycleOf(base, m), PointId::Copy(i, inner)) if i < m => {
            match period(base, inner)? {
                Period::Finite(p) => p
                    .checked_mul(*m)
                    .map(Period::Finite)
                    .ok_or_else(|| PresentationError::TooLarge { message: "period overflow".into() }),
                Period::Aperiodic => Ok(Period::Aperiodic),
            }
        }
        (CascadeExpr::Shift2, PointId::Int(_)) => Ok(Period::Aperiodic),
        (CascadeExpr::Shift2, PointId::PlusInf | PointId::MinusInf) => Ok(Period::Finite(1)),
        (CascadeExpr::IShift, PointId::Seq(_)) => Ok(Period::Aperiodic),
        (CascadeExpr::IShift, PointId::Inf) => Ok(Period::Finite(1)),
        _ => Err(PresentationError::InvalidPoint {
            message: format!("point `{point}` does not belong to `{expr}`"),
        }),
    }
}

/// An infinite family of periods `g(n)` for piece indices `n >= start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodTail {
    pub family: ParamFamily,
    pub start: u64,
}

impl fmt::Display for PeriodTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n >= {})", self.family, self.start)
    }
}

/// Symbolic description of the set of periods of periodic points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PeriodSetSpec {
    /// Finitely many explicitly listed periods.
    pub explicit: BTreeSet<u64>,
    /// Families covering the tower tails (zero or more).
    pub tails: Vec<PeriodTail>,
    /// True when aperiodic points exist, so the set describes only the
    /// periodic part of the space.
    pub partial: bool,
}

impl PeriodSetSpec {
    fn singleton(k: u64) -> PeriodSetSpec {
        PeriodSetSpec { explicit: BTreeSet::from([k]), tails: Vec::new(), partial: false }
    }

    /// Decidable membership: does any point have period exactly `n`?
    pub fn contains(&self, n: u64) -> bool {
        self.explicit.contains(&n) || self.tails.iter().any(|t| tail_contains(t, n))
    }

    /// All periods with family indices up to `start + depth`, sorted.
    pub fn enumerate(&self, depth: u32) -> BTreeSet<u64> {
        let mut out = self.explicit.clone();
        for tail in &self.tails {
            for t in 0..=depth as u64 {
                if let Some(v) = tail.family.eval(tail.start + t) {
                    out.insert(v);
                }
            }
        }
        out
    }

    fn merge(mut self, other: PeriodSetSpec) -> PeriodSetSpec {
        self.explicit.extend(other.explicit);
        for tail in other.tails {
            if !self.tails.contains(&tail) {
                self.tails.push(tail);
            }
        }
        self.partial |= other.partial;
        self
    }

    fn scaled(self, m: u64) -> Result<PeriodSetSpec, PresentationError> {
        let overflow = || PresentationError::TooLarge { message: "period overflow".into() };
        let mut explicit = BTreeSet::new();
        for p in self.explicit {
            explicit.insert(p.checked_mul(m).ok_or_else(overflow)?);
        }
        let mut tails = Vec::with_capacity(self.tails.len());
        for t in self.tails {
            tails.push(PeriodTail { family: t.family.scaled(m).ok_or_else(overflow)?, start: t.start });
        }
        Ok(PeriodSetSpec { explicit, tails, partial: self.partial })
    }
}

impl fmt::Display for PeriodSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for p in &self.explicit {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        for t in &self.tails {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        write!(f, "}}")?;
        if self.partial {
            write!(f, " (periodic part only)")?;
        }
        Ok(())
    }
}

fn tail_contains(tail: &PeriodTail, n: u64) -> bool {
    tail.family.attains(n, tail.start)
}

/// The set of periods of periodic points, symbolically.
pub fn period_set(expr: &CascadeExpr) -> Result<PeriodSetSpec, PresentationError> {
    match expr {
        CascadeExpr::Cycle(k) => Ok(PeriodSetSpec::singleton(*k)),
        CascadeExpr::Tower(pieces) => {
            let mut spec = PeriodSetSpec::singleton(1); // the limit point is fixed
            for piece in &pieces.head {
                spec = spec.merge(period_set(piece)?);
            }
            spec.tails.push(PeriodTail { family: pieces.tail.clone(), start: pieces.head.len() as u64 });
            Ok(spec)
        }
        CascadeExpr::Sum(a, b) => Ok(period_set(a)?.merge(period_set(b)?)),
        CascadeExpr::CycleOf(base, m) => period_set(base)?.scaled(*m),
        CascadeExpr::Shift2 | CascadeExpr::IShift => Ok(PeriodSetSpec {
            explicit: BTreeSet::from([1]),
            tails: Vec::new(),
            partial: true,
        }),
    }
}

/// First `min(bound, period)` forward iterates of a point, starting at the
/// point itself.
pub fn orbit(expr: &CascadeExpr, point: &PointId, bound: u64) -> Result<Vec<PointId>, PresentationError> {
    let steps = match period(expr, point)? {
        Period::Finite(p) => p.min(bound),
        Period::Aperiodic => bound,
    };
    let mut out = Vec::with_capacity(steps as usize);
    let mut current = point.clone();
    for _ in 0..steps {
        out.push(current.clone());
        current = apply_map(expr, &current)?;
    }
    Ok(out)
}

/// The finite set of points of maximal Cantor-Bendixson rank. The generating
/// map permutes it.
pub fn max_rank_set(expr: &CascadeExpr) -> Result<Vec<PointId>, PresentationError> {
    if max_point_rank(expr) == 0 {
        // finite space: every point has maximal rank 0
        return enumerate_points(expr, 0);
    }
    let mut out = Vec::new();
    collect_limit_points(expr, &mut |p| p, &mut out);
    Ok(out)
}

fn collect_limit_points(
    expr: &CascadeExpr,
    wrap: &mut dyn FnMut(PointId) -> PointId,
    out: &mut Vec<PointId>,
) {
    match expr {
        CascadeExpr::Cycle(_) => {}
        CascadeExpr::Tower(pieces) => {
            for (i, piece) in pieces.head.iter().enumerate() {
                collect_limit_points(piece, &mut |p| wrap(PointId::piece(i as u64, p)), out);
            }
            out.push(wrap(PointId::Star));
        }
        CascadeExpr::Sum(a, b) => {
            collect_limit_points(a, &mut |p| wrap(PointId::left(p)), out);
            collect_limit_points(b, &mut |p| wrap(PointId::right(p)), out);
        }
        CascadeExpr::CycleOf(base, m) => {
            for i in 0..*m {
                collect_limit_points(base, &mut |p| wrap(PointId::copy(i, p)), out);
            }
        }
        CascadeExpr::Shift2 => {
            out.push(wrap(PointId::MinusInf));
            out.push(wrap(PointId::PlusInf));
        }
        CascadeExpr::IShift => out.push(wrap(PointId::Inf)),
    }
}

/// Path from the root of the expression down to a sub-space, used to address
/// minimal sets that live inside sums, products, and tower heads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathSeg {
    Left,
    Right,
    /// Representative copy 0 of a cyclic product (the orbit spans all copies).
    Copy0,
    Piece(u64),
}

fn wrap_path(prefix: &[PathSeg], core: PointId) -> PointId {
    prefix.iter().rev().fold(core, |acc, seg| match seg {
        PathSeg::Left => PointId::left(acc),
        PathSeg::Right => PointId::right(acc),
        PathSeg::Copy0 => PointId::copy(0, acc),
        PathSeg::Piece(n) => PointId::piece(*n, acc),
    })
}

/// A minimal subsystem: always the (closure of the) orbit of a periodic point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalSet {
    /// A single periodic orbit.
    Orbit { representative: PointId, period: u64 },
    /// One orbit per tail piece `n >= start` of a tower: the orbit of the
    /// piece's first point, of period `multiplier * g(n)`.
    PieceFamily { tower_prefix: Vec<PathSeg>, family: ParamFamily, start: u64, multiplier: u64 },
}

impl MinimalSet {
    /// Concrete orbits described by this entry, families truncated at `depth`.
    pub fn instantiate(&self, depth: u32) -> Vec<(PointId, u64)> {
        match self {
            MinimalSet::Orbit { representative, period } => vec![(representative.clone(), *period)],
            MinimalSet::PieceFamily { tower_prefix, family, start, multiplier } => {
                let mut out = Vec::new();
                for t in 0..=depth as u64 {
                    let n = start + t;
                    if let Some(g) = family.eval(n) {
                        if let Some(p) = g.checked_mul(*multiplier) {
                            out.push((wrap_path(tower_prefix, PointId::piece(n, PointId::At(0))), p));
                        }
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for MinimalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalSet::Orbit { representative, period } => {
                write!(f, "orbit of {representative} (period {period})")
            }
            MinimalSet::PieceFamily { tower_prefix, family, start, multiplier } => {
                let rep = wrap_path(tower_prefix, PointId::piece(*start, PointId::At(0)));
                write!(f, "orbits of pieces n >= {start} (first {rep}), period ")?;
                if *multiplier != 1 {
                    write!(f, "{multiplier}*")?;
                }
                write!(f, "g(n) with g(n) = {family}")
            }
        }
    }
}

/// Every minimal set, symbolically: for these countable compact systems each
/// minimal set is a single periodic orbit.
pub fn minimal_sets(expr: &CascadeExpr) -> Vec<MinimalSet> {
    let mut out = Vec::new();
    minimal_sets_rec(expr, &mut Vec::new(), 1, &mut out);
    out
}

fn minimal_sets_rec(expr: &CascadeExpr, prefix: &mut Vec<PathSeg>, multiplier: u64, out: &mut Vec<MinimalSet>) {
    match expr {
        CascadeExpr::Cycle(k) => out.push(MinimalSet::Orbit {
            representative: wrap_path(prefix, PointId::At(0)),
            period: multiplier.saturating_mul(*k),
        }),
        CascadeExpr::Tower(pieces) => {
            out.push(MinimalSet::Orbit {
                representative: wrap_path(prefix, PointId::Star),
                period: multiplier,
            });
            for (i, piece) in pieces.head.iter().enumerate() {
                prefix.push(PathSeg::Piece(i as u64));
                minimal_sets_rec(piece, prefix, multiplier, out);
                prefix.pop();
            }
            out.push(MinimalSet::PieceFamily {
                tower_prefix: prefix.clone(),
                family: pieces.tail.clone(),
                start: pieces.head.len() as u64,
                multiplier,
            });
        }
        CascadeExpr::Sum(a, b) => {
            prefix.push(PathSeg::Left);
            minimal_sets_rec(a, prefix, multiplier, out);
            prefix.pop();
            prefix.push(PathSeg::Right);
            minimal_sets_rec(b, prefix, multiplier, out);
            prefix.pop();
        }
        CascadeExpr::CycleOf(base, m) => {
            prefix.push(PathSeg::Copy0);
            minimal_sets_rec(base, prefix, multiplier.saturating_mul(*m), out);
            prefix.pop();
        }
        CascadeExpr::Shift2 => {
            out.push(MinimalSet::Orbit { representative: wrap_path(prefix, PointId::MinusInf), period: multiplier });
            out.push(MinimalSet::Orbit { representative: wrap_path(prefix, PointId::PlusInf), period: multiplier });
        }
        CascadeExpr::IShift => {
            out.push(MinimalSet::Orbit { representative: wrap_path(prefix, PointId::Inf), period: multiplier });
        }
    }
}

/// The three machine-checkable witnesses produced when a cascade is not
/// all-periodic.
#[derive(Clone, Debug)]
pub struct FailureWitnesses {
    /// A point with no period.
    pub aperiodic_point: PointId,
    /// A limit element of the Ellis semigroup that is not injective...
    pub noninjective_element: EllisElement,
    /// ...together with two distinct points it maps to the same image.
    pub merged_pair: (PointId, PointId),
    pub merged_image: PointId,
    /// (x, y, n) with x, y close but f^n(x), f^n(y) at least 1/2 apart;
    /// produced by bounded search (depth 8, iterates <= 256).
    pub equicont_failure: Option<(PointId, PointId, u64)>,
}

/// Verdicts for the six equivalent properties (they stand or fall together),
/// plus witnesses for the failing case.
#[derive(Clone, Debug)]
pub struct Classification {
    pub all_periodic: bool,
    pub equicontinuous: bool,
    pub distal: bool,
    pub fp_homeo_exists: bool,
    pub uniform_bound_exists: bool,
    pub en_eq_ez: bool,
    pub witnesses: Option<FailureWitnesses>,
}

/// Decide the six-way equivalence for a presented cascade. All six verdicts
/// equal "every point is periodic", which is syntactic for this grammar; in
/// the failing case three concrete witnesses are attached.
pub fn classify(expr: &CascadeExpr) -> Result<Classification, PresentationError> {
    let all = expr.is_all_periodic();
    let witnesses = if all {
        None
    } else {
        let aperiodic_point = first_aperiodic_point(expr)
            .expect("a non-all-periodic expression contains an aperiodic point");
        let noninjective_element = EllisElement::forward_limit(ResidueSystem::zeros_for(expr)?);
        let (merged_pair, merged_image) = noninjective_pair(expr, &noninjective_element)?;
        let equicont_failure = crate::equicont::equicontinuity_failure_witness(
            expr,
            Dyadic::pow2_neg(1),
            8,
            256,
        )?;
        Some(FailureWitnesses {
            aperiodic_point,
            noninjective_element,
            merged_pair,
            merged_image,
            equicont_failure,
        })
    };
    Ok(Classification {
        all_periodic: all,
        equicontinuous: all,
        distal: all,
        fp_homeo_exists: all,
        uniform_bound_exists: all,
        en_eq_ez: all,
        witnesses,
    })
}

/// Leftmost aperiodic point: integer 0 of a shift2, or x0 of an ishift.
pub fn first_aperiodic_point(expr: &CascadeExpr) -> Option<PointId> {
    match expr {
        CascadeExpr::Cycle(_) => None,
        CascadeExpr::Tower(pieces) => pieces
            .head
            .iter()
            .enumerate()
            .find_map(|(i, piece)| first_aperiodic_point(piece).map(|p| PointId::piece(i as u64, p))),
        CascadeExpr::Sum(a, b) => first_aperiodic_point(a)
            .map(PointId::left)
            .or_else(|| first_aperiodic_point(b).map(PointId::right)),
        CascadeExpr::CycleOf(base, _) => first_aperiodic_point(base).map(|p| PointId::copy(0, p)),
        CascadeExpr::Shift2 => Some(PointId::Int(0)),
        CascadeExpr::IShift => Some(PointId::Seq(0)),
    }
}

/// Two distinct aperiodic points in the leftmost shift component: 0 and 1 of
/// a doubly-pointed shift, or x0 and x1 of a chain shift. Every limit element
/// merges them.
pub fn first_aperiodic_pair(expr: &CascadeExpr) -> Option<(PointId, PointId)> {
    match expr {
        CascadeExpr::Cycle(_) => None,
        CascadeExpr::Tower(pieces) => pieces.head.iter().enumerate().find_map(|(i, piece)| {
            first_aperiodic_pair(piece)
                .map(|(a, b)| (PointId::piece(i as u64, a), PointId::piece(i as u64, b)))
        }),
        CascadeExpr::Sum(a, b) => first_aperiodic_pair(a)
            .map(|(x, y)| (PointId::left(x), PointId::left(y)))
            .or_else(|| first_aperiodic_pair(b).map(|(x, y)| (PointId::right(x), PointId::right(y)))),
        CascadeExpr::CycleOf(base, _) => {
            first_aperiodic_pair(base).map(|(x, y)| (PointId::copy(0, x), PointId::copy(0, y)))
        }
        CascadeExpr::Shift2 => Some((PointId::Int(0), PointId::Int(1))),
        CascadeExpr::IShift => Some((PointId::Seq(0), PointId::Seq(1))),
    }
}

fn noninjective_pair(
    expr: &CascadeExpr,
    element: &EllisElement,
) -> Result<((PointId, PointId), PointId), PresentationError> {
    let (x, y) =
        first_aperiodic_pair(expr).expect("a non-all-periodic expression has an aperiodic pair");
    let image_x = crate::ellis::evaluate(expr, element, &x).map_err(|e| PresentationError::InvalidPoint {
        message: format!("witness evaluation failed: {e}"),
    })?;
    let image_y = crate::ellis::evaluate(expr, element, &y).map_err(|e| PresentationError::InvalidPoint {
        message: format!("witness evaluation failed: {e}"),
    })?;
    debug_assert_eq!(image_x, image_y);
    Ok(((x, y), image_x))
}
