//! Point addresses, enumeration, and the generating homeomorphism.

use super::expr::{CascadeExpr, PieceSeq};
use super::PresentationError;
use std::fmt;

/// Address of a point as a path through the expression tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointId {
    /// Position inside a cycle, `0..k`.
    At(u64),
    /// The limit point of a tower.
    Star,
    /// A point of tower piece `n`.
    Piece(u64, Box<PointId>),
    /// Left/right component of a sum.
    Left(Box<PointId>),
    Right(Box<PointId>),
    /// Copy `i` of a cyclic product.
    Copy(u64, Box<PointId>),
    /// An integer of the two-sided shift.
    Int(i64),
    PlusInf,
    MinusInf,
    /// Sequence member x_n of the interleaved shift.
    Seq(u64),
    /// The limit of the interleaved shift.
    Inf,
}

impl PointId {
    pub fn piece(n: u64, inner: PointId) -> PointId {
        PointId::Piece(n, Box::new(inner))
    }
    pub fn left(inner: PointId) -> PointId {
        PointId::Left(Box::new(inner))
    }
    pub fn right(inner: PointId) -> PointId {
        PointId::Right(Box::new(inner))
    }
    pub fn copy(i: u64, inner: PointId) -> PointId {
        PointId::Copy(i, Box::new(inner))
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointId::At(p) => write!(f, "{p}"),
            PointId::Star => write!(f, "star"),
            PointId::Piece(n, inner) => write!(f, "piece{n}/{inner}"),
            PointId::Left(inner) => write!(f, "left/{inner}"),
            PointId::Right(inner) => write!(f, "right/{inner}"),
            PointId::Copy(i, inner) => write!(f, "copy{i}/{inner}"),
            PointId::Int(k) => write!(f, "{k}"),
            PointId::PlusInf => write!(f, "+inf"),
            PointId::MinusInf => write!(f, "-inf"),
            PointId::Seq(n) => write!(f, "x{n}"),
            PointId::Inf => write!(f, "inf"),
        }
    }
}

fn invalid(msg: impl Into<String>) -> PresentationError {
    PresentationError::InvalidPoint { message: msg.into() }
}

/// Parse a point address in the context of an expression; the address grammar
/// follows the expression shape segment by segment, `/`-separated:
/// cycle positions are plain numbers, `star`/`pieceN` for towers,
/// `left`/`right` for sums, `copyN` for cyclic products, integers or
/// `+inf`/`-inf` for shift2, `xN` or `inf` for ishift.
pub fn parse_point(expr: &CascadeExpr, s: &str) -> Result<PointId, PresentationError> {
    let s = s.trim();
    match expr {
        CascadeExpr::Cycle(k) => {
            let p: u64 = s.parse().map_err(|_| invalid(format!("expected a cycle position, got `{s}`")))?;
            if p >= *k {
                return Err(invalid(format!("position {p} out of range for cycle({k})")));
            }
            Ok(PointId::At(p))
        }
        CascadeExpr::Tower(pieces) => {
            if s == "star" {
                return Ok(PointId::Star);
            }
            let (seg, rest) = split_segment(s)?;
            let n: u64 = seg
                .strip_prefix("piece")
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| invalid(format!("expected `star` or `pieceN/...`, got `{s}`")))?;
            if n > 1_000_000 {
                return Err(invalid(format!("piece index {n} too large")));
            }
            let sub = piece_expr(pieces, n)?;
            Ok(PointId::piece(n, parse_point(&sub, rest)?))
        }
        CascadeExpr::Sum(a, b) => {
            let (seg, rest) = split_segment(s)?;
            match seg {
                "left" => Ok(PointId::left(parse_point(a, rest)?)),
                "right" => Ok(PointId::right(parse_point(b, rest)?)),
                _ => Err(invalid(format!("expected `left/...` or `right/...`, got `{s}`"))),
            }
        }
        CascadeExpr::CycleOf(base, m) => {
            let (seg, rest) = split_segment(s)?;
            let i: u64 = seg
                .strip_prefix("copy")
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| invalid(format!("expected `copyN/...`, got `{s}`")))?;
            if i >= *m {
                return Err(invalid(format!("copy {i} out of range for cycleof(..,{m})")));
            }
            Ok(PointId::copy(i, parse_point(base, rest)?))
        }
        CascadeExpr::Shift2 => match s {
            "+inf" => Ok(PointId::PlusInf),
            "-inf" => Ok(PointId::MinusInf),
            _ => {
                let k: i64 = s.parse().map_err(|_| invalid(format!("expected an integer, `+inf`, or `-inf`, got `{s}`")))?;
                if k.unsigned_abs() > 1_000_000 {
                    return Err(invalid(format!("integer {k} too large")));
                }
                Ok(PointId::Int(k))
            }
        },
        CascadeExpr::IShift => {
            if s == "inf" {
                return Ok(PointId::Inf);
            }
            let n: u64 = s
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| invalid(format!("expected `xN` or `inf`, got `{s}`")))?;
            if n > 1_000_000 {
                return Err(invalid(format!("sequence index {n} too large")));
            }
            Ok(PointId::Seq(n))
        }
    }
}

fn split_segment(s: &str) -> Result<(&str, &str), PresentationError> {
    s.split_once('/')
        .ok_or_else(|| invalid(format!("expected a `/`-separated path, got `{s}`")))
}

/// Check that a point address is structurally valid for the expression.
pub fn validate_point(expr: &CascadeExpr, point: &PointId) -> Result<(), PresentationError> {
    match (expr, point) {
        (CascadeExpr::Cycle(k), PointId::At(p)) if p < k => Ok(()),
        (CascadeExpr::Tower(_), PointId::Star) => Ok(()),
        (CascadeExpr::Tower(pieces), PointId::Piece(n, inner)) => {
            validate_point(&piece_expr(pieces, *n)?, inner)
        }
        (CascadeExpr::Sum(a, _), PointId::Left(inner)) => validate_point(a, inner),
        (CascadeExpr::Sum(_, b), PointId::Right(inner)) => validate_point(b, inner),
        (CascadeExpr::CycleOf(base, m), PointId::Copy(i, inner)) if i < m => {
            validate_point(base, inner)
        }
        (CascadeExpr::Shift2, PointId::Int(_) | PointId::PlusInf | PointId::MinusInf) => Ok(()),
        (CascadeExpr::IShift, PointId::Seq(_) | PointId::Inf) => Ok(()),
        _ => Err(invalid(format!("point `{point}` does not belong to `{expr}`"))),
    }
}

/// The expression presenting tower piece `n`.
pub fn piece_expr(pieces: &PieceSeq, n: u64) -> Result<CascadeExpr, PresentationError> {
    let h = pieces.head.len() as u64;
    if n < h {
        Ok(pieces.head[n as usize].clone())
    } else {
        let k = pieces
            .tail
            .eval(n)
            .ok_or_else(|| PresentationError::TooLarge { message: format!("piece {n} cycle length overflows") })?;
        Ok(CascadeExpr::Cycle(k))
    }
}

const ENUMERATION_CAP: usize = 2_000_000;

/// All points whose infinite-family indices are at most `depth`: tower tails
/// contribute pieces `head.len()..=head.len()+depth`, shift2 contributes
/// integers `-depth..=depth`, ishift contributes `x0..x_depth`. Every limit
/// point is always included. Monotone in `depth`.
pub fn enumerate_points(expr: &CascadeExpr, depth: u32) -> Result<Vec<PointId>, PresentationError> {
    let mut out = Vec::new();
    enumerate_into(expr, depth, &mut |p| p, &mut out)?;
    Ok(out)
}

fn enumerate_into(
    expr: &CascadeExpr,
    depth: u32,
    wrap: &mut dyn FnMut(PointId) -> PointId,
    out: &mut Vec<PointId>,
) -> Result<(), PresentationError> {
    let push = |p: PointId, out: &mut Vec<PointId>| -> Result<(), PresentationError> {
        if out.len() >= ENUMERATION_CAP {
            return Err(PresentationError::TooLarge {
                message: format!("enumeration exceeds {ENUMERATION_CAP} points; lower the depth"),
            });
        }
        out.push(p);
        Ok(())
    };
    match expr {
        CascadeExpr::Cycle(k) => {
            if *k as usize > ENUMERATION_CAP {
                return Err(PresentationError::TooLarge {
                    message: format!("cycle({k}) is too large to enumerate"),
                });
            }
            for p in 0..*k {
                push(wrap(PointId::At(p)), out)?;
            }
            Ok(())
        }
        CascadeExpr::Tower(pieces) => {
            let h = pieces.head.len() as u64;
            let last = h + depth as u64;
            for n in 0..=last {
                let sub = piece_expr(pieces, n)?;
                enumerate_into(&sub, depth, &mut |p| wrap(PointId::piece(n, p)), out)?;
            }
            push(wrap(PointId::Star), out)
        }
        CascadeExpr::Sum(a, b) => {
            enumerate_into(a, depth, &mut |p| wrap(PointId::left(p)), out)?;
            enumerate_into(b, depth, &mut |p| wrap(PointId::right(p)), out)
        }
        CascadeExpr::CycleOf(base, m) => {
            for i in 0..*m {
                enumerate_into(base, depth, &mut |p| wrap(PointId::copy(i, p)), out)?;
            }
            Ok(())
        }
        CascadeExpr::Shift2 => {
            let d = depth as i64;
            for k in -d..=d {
                push(wrap(PointId::Int(k)), out)?;
            }
            push(wrap(PointId::MinusInf), out)?;
            push(wrap(PointId::PlusInf), out)
        }
        CascadeExpr::IShift => {
            for n in 0..=depth as u64 {
                push(wrap(PointId::Seq(n)), out)?;
            }
            push(wrap(PointId::Inf), out)
        }
    }
}

/// Apply the generating map once.
pub fn apply_map(expr: &CascadeExpr, point: &PointId) -> Result<PointId, PresentationError> {
    match (expr, point) {
        (CascadeExpr::Cycle(k), PointId::At(p)) if p < k => Ok(PointId::At((p + 1) % k)),
        (CascadeExpr::Tower(_), PointId::Star) => Ok(PointId::Star),
        (CascadeExpr::Tower(pieces), PointId::Piece(n, inner)) => {
            let sub = piece_expr(pieces, *n)?;
            Ok(PointId::piece(*n, apply_map(&sub, inner)?))
        }
        (CascadeExpr::Sum(a, _), PointId::Left(inner)) => Ok(PointId::left(apply_map(a, inner)?)),
        (CascadeExpr::Sum(_, b), PointId::Right(inner)) => Ok(PointId::right(apply_map(b, inner)?)),
        (CascadeExpr::CycleOf(base, m), PointId::Copy(i, inner)) if i < m => {
            if i + 1 < *m {
                Ok(PointId::copy(i + 1, (**inner).clone()))
            } else {
                Ok(PointId::copy(0, apply_map(base, inner)?))
            }
        }
        (CascadeExpr::Shift2, PointId::Int(k)) => k
            .checked_add(1)
            .map(PointId::Int)
            .ok_or_else(|| invalid("shift2 integer overflow")),
        (CascadeExpr::Shift2, PointId::PlusInf) => Ok(PointId::PlusInf),
        (CascadeExpr::Shift2, PointId::MinusInf) => Ok(PointId::MinusInf),
        (CascadeExpr::IShift, PointId::Seq(j)) => Ok(PointId::Seq(match *j {
            1 => 0,
            j if j % 2 == 1 => j - 2,
            j => j.checked_add(2).ok_or_else(|| invalid("ishift index overflow"))?,
        })),
        (CascadeExpr::IShift, PointId::Inf) => Ok(PointId::Inf),
        _ => Err(invalid(format!("point `{point}` does not belong to `{expr}`"))),
    }
}

/// Apply the inverse of the generating map once.
pub fn apply_inverse(expr: &CascadeExpr, point: &PointId) -> Result<PointId, PresentationError> {
    match (expr, point) {
        (CascadeExpr::Cycle(k), PointId::At(p)) if p < k => {
            Ok(PointId::At(if *p == 0 { *k - 1 } else { *p - 1 }))
        }
        (CascadeExpr::Tower(_), PointId::Star) => Ok(PointId::Star),
        (CascadeExpr::Tower(pieces), PointId::Piece(n, inner)) => {
            let sub = piece_expr(pieces, *n)?;
            Ok(PointId::piece(*n, apply_inverse(&sub, inner)?))
        }
        (CascadeExpr::Sum(a, _), PointId::Left(inner)) => Ok(PointId::left(apply_inverse(a, inner)?)),
        (CascadeExpr::Sum(_, b), PointId::Right(inner)) => Ok(PointId::right(apply_inverse(b, inner)?)),
        (CascadeExpr::CycleOf(base, m), PointId::Copy(i, inner)) if i < m => {
            if *i > 0 {
                Ok(PointId::copy(i - 1, (**inner).clone()))
            } else {
                Ok(PointId::copy(m - 1, apply_inverse(base, inner)?))
            }
        }
        (CascadeExpr::Shift2, PointId::Int(k)) => k
            .checked_sub(1)
            .map(PointId::Int)
            .ok_or_else(|| invalid("shift2 integer overflow")),
        (CascadeExpr::Shift2, PointId::PlusInf) => Ok(PointId::PlusInf),
        (CascadeExpr::Shift2, PointId::MinusInf) => Ok(PointId::MinusInf),
        (CascadeExpr::IShift, PointId::Seq(j)) => Ok(PointId::Seq(match *j {
            0 => 1,
            j if j % 2 == 0 => j - 2,
            j => j.checked_add(2).ok_or_else(|| invalid("ishift index overflow"))?,
        })),
        (CascadeExpr::IShift, PointId::Inf) => Ok(PointId::Inf),
        _ => Err(invalid(format!("point `{point}` does not belong to `{expr}`"))),
    }
}

/// Coordinate of x_n on the bi-infinite ishift chain (x0 at 0, odd indices on
/// the negative side), so the map is coordinate +1.
pub fn ishift_coord(n: u64) -> i64 {
    if n % 2 == 0 {
        (n / 2) as i64
    } else {
        -(((n + 1) / 2) as i64)
    }
}

/// Inverse of [`ishift_coord`].
pub fn ishift_from_coord(t: i64) -> u64 {
    if t >= 0 {
        2 * t as u64
    } else {
        2 * t.unsigned_abs() - 1
    }
}

/// Apply the map (or its inverse for negative `m`) `m` times, computed
/// structurally so arbitrarily large powers stay cheap.
pub fn apply_power(expr: &CascadeExpr, point: &PointId, m: i64) -> Result<PointId, PresentationError> {
    match (expr, point) {
        (CascadeExpr::Cycle(k), PointId::At(p)) if p < k => {
            let k = *k as u128;
            let r = (m as i128).rem_euclid(k as i128) as u128;
            Ok(PointId::At(((*p as u128 + r) % k) as u64))
        }
        (CascadeExpr::Tower(_), PointId::Star) => Ok(PointId::Star),
        (CascadeExpr::Tower(pieces), PointId::Piece(n, inner)) => {
            let sub = piece_expr(pieces, *n)?;
            Ok(PointId::piece(*n, apply_power(&sub, inner, m)?))
        }
        (CascadeExpr::Sum(a, _), PointId::Left(inner)) => Ok(PointId::left(apply_power(a, inner, m)?)),
        (CascadeExpr::Sum(_, b), PointId::Right(inner)) => Ok(PointId::right(apply_power(b, inner, m)?)),
        (CascadeExpr::CycleOf(base, copies), PointId::Copy(i, inner)) if i < copies => {
            // the m-th power advances the copy index and applies the base map
            // once per full wrap-around
            let c = *copies as i128;
            let shifted = *i as i128 + m as i128;
            let new_copy = shifted.rem_euclid(c) as u64;
            let wraps = i64::try_from(shifted.div_euclid(c))
                .map_err(|_| invalid("cyclic product power overflow"))?;
            Ok(PointId::copy(new_copy, apply_power(base, inner, wraps)?))
        }
        (CascadeExpr::Shift2, PointId::Int(k)) => k
            .checked_add(m)
            .map(PointId::Int)
            .ok_or_else(|| invalid("shift2 integer overflow")),
        (CascadeExpr::Shift2, PointId::PlusInf) => Ok(PointId::PlusInf),
        (CascadeExpr::Shift2, PointId::MinusInf) => Ok(PointId::MinusInf),
        (CascadeExpr::IShift, PointId::Seq(j)) => {
            let t = ishift_coord(*j)
                .checked_add(m)
                .ok_or_else(|| invalid("ishift index overflow"))?;
            Ok(PointId::Seq(ishift_from_coord(t)))
        }
        (CascadeExpr::IShift, PointId::Inf) => Ok(PointId::Inf),
        _ => Err(invalid(format!("point `{point}` does not belong to `{expr}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_cascade;
    use super::*;

    #[test]
    fn enumeration_counts_match_depth_semantics() {
        // 4 pieces of 2 points each plus the limit point
        let tower = parse_cascade("tower(cycle(2))").unwrap();
        assert_eq!(enumerate_points(&tower, 3).unwrap().len(), 9);
        // integers -2..=2 plus both infinities
        let shift = CascadeExpr::Shift2;
        assert_eq!(enumerate_points(&shift, 2).unwrap().len(), 7);
        // monotone in depth
        let e = parse_cascade("sum(tower(cycle(2^n)),ishift)").unwrap();
        let mut last = 0;
        for d in 0..6 {
            let n = enumerate_points(&e, d).unwrap().len();
            assert!(n > last);
            last = n;
        }
    }

    #[test]
    fn enumeration_includes_all_limit_points() {
        let e = parse_cascade("sum(tower(cycle(2)),sum(shift2,ishift))").unwrap();
        let pts = enumerate_points(&e, 2).unwrap();
        for limit in [
            PointId::left(PointId::Star),
            PointId::right(PointId::left(PointId::PlusInf)),
            PointId::right(PointId::left(PointId::MinusInf)),
            PointId::right(PointId::right(PointId::Inf)),
        ] {
            assert!(pts.contains(&limit), "missing {limit}");
        }
    }

    #[test]
    fn map_is_a_bijection_on_enumerated_invariant_sets() {
        // all-periodic expressions enumerate to invariant sets
        for src in ["cycle(5)", "tower(cycle(3),cycle(2*n+1))", "cycleof(sum(cycle(2),cycle(3)),2)"] {
            let e = parse_cascade(src).unwrap();
            let pts = enumerate_points(&e, 4).unwrap();
            let mut images: Vec<PointId> = pts.iter().map(|p| apply_map(&e, p).unwrap()).collect();
            images.sort();
            let mut sorted = pts.clone();
            sorted.sort();
            assert_eq!(images, sorted, "{src} images should be a permutation");
            for p in &pts {
                assert_eq!(apply_inverse(&e, &apply_map(&e, p).unwrap()).unwrap(), *p);
                assert_eq!(apply_map(&e, &apply_inverse(&e, p).unwrap()).unwrap(), *p);
            }
        }
    }

    #[test]
    fn ishift_chain_order() {
        // ... x5 -> x3 -> x1 -> x0 -> x2 -> x4 ...
        let e = CascadeExpr::IShift;
        let mut x = PointId::Seq(5);
        let mut seen = vec![x.clone()];
        for _ in 0..5 {
            x = apply_map(&e, &x).unwrap();
            seen.push(x.clone());
        }
        let want: Vec<PointId> = [5u64, 3, 1, 0, 2, 4].iter().map(|&n| PointId::Seq(n)).collect();
        assert_eq!(seen, want);
        for n in 0..20u64 {
            let p = PointId::Seq(n);
            assert_eq!(apply_inverse(&e, &apply_map(&e, &p).unwrap()).unwrap(), p);
            assert_eq!(apply_map(&e, &apply_inverse(&e, &p).unwrap()).unwrap(), p);
        }
    }

    #[test]
    fn power_matches_repeated_application() {
        let e = parse_cascade("sum(cycleof(tower(cycle(3)),2),sum(shift2,ishift))").unwrap();
        let pts = enumerate_points(&e, 3).unwrap();
        for p in &pts {
            let mut fwd = p.clone();
            let mut bwd = p.clone();
            for m in 0..12i64 {
                assert_eq!(apply_power(&e, p, m).unwrap(), fwd, "f^{m} of {p}");
                assert_eq!(apply_power(&e, p, -m).unwrap(), bwd, "f^-{m} of {p}");
                fwd = apply_map(&e, &fwd).unwrap();
                bwd = apply_inverse(&e, &bwd).unwrap();
            }
        }
    }

    #[test]
    fn point_parsing_round_trips() {
        let e = parse_cascade("sum(tower(cycle(2),cycle(3^n)),cycleof(shift2,2))").unwrap();
        for pt in enumerate_points(&e, 3).unwrap() {
            let s = pt.to_string();
            assert_eq!(parse_point(&e, &s).unwrap(), pt, "round-trip of {s}");
            validate_point(&e, &pt).unwrap();
        }
        assert!(parse_point(&e, "left/star/0").is_err());
        assert!(parse_point(&e, "right/copy5/0").is_err());
        assert!(parse_point(&e, "middle/star").is_err());
        assert!(parse_point(&e, "left/piece1/5").is_err());
    }
}
