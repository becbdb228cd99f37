//! The dyadic ultrametric on a presented space. Distinct points of a cycle sit
//! at distance 1, sum components and product copies at mutual distance 1,
//! tower piece n sits at distance 2^-n from the limit point with its interior
//! shrunk below 2^-(n+1), and the shift spaces carry the standard
//! convergent-sequence ultrametrics.

use super::expr::CascadeExpr;
use super::point::PointId;
use crate::dyadic::Dyadic;

fn exp_of(n: u64) -> u32 {
    u32::try_from(n).unwrap_or(u32::MAX)
}

fn exp_of_i(k: i64) -> u32 {
    u32::try_from(k.unsigned_abs()).unwrap_or(u32::MAX)
}

/// Exact distance between two valid points of the expression's space.
pub fn distance(expr: &CascadeExpr, x: &PointId, y: &PointId) -> Dyadic {
    if x == y {
        return Dyadic::ZERO;
    }
    match (expr, x, y) {
        (CascadeExpr::Cycle(_), PointId::At(_), PointId::At(_)) => Dyadic::ONE,
        (CascadeExpr::Tower(pieces), PointId::Piece(n, a), PointId::Piece(m, b)) => {
            if n == m {
                match super::point::piece_expr(pieces, *n) {
                    Ok(sub) => distance(&sub, a, b).scale_down(exp_of(*n).saturating_add(1)),
                    Err(_) => Dyadic::ZERO,
                }
            } else {
                Dyadic::pow2_neg(exp_of(*n.min(m)))
            }
        }
        (CascadeExpr::Tower(_), PointId::Star, PointId::Piece(n, _))
        | (CascadeExpr::Tower(_), PointId::Piece(n, _), PointId::Star) => {
            Dyadic::pow2_neg(exp_of(*n))
        }
        (CascadeExpr::Sum(a, _), PointId::Left(p), PointId::Left(q)) => distance(a, p, q),
        (CascadeExpr::Sum(_, b), PointId::Right(p), PointId::Right(q)) => distance(b, p, q),
        (CascadeExpr::Sum(..), _, _) => Dyadic::ONE,
        (CascadeExpr::CycleOf(base, _), PointId::Copy(i, p), PointId::Copy(j, q)) => {
            if i == j {
                distance(base, p, q)
            } else {
                Dyadic::ONE
            }
        }
        (CascadeExpr::Shift2, a, b) => shift2_distance(a, b),
        (CascadeExpr::IShift, a, b) => ishift_distance(a, b),
        _ => Dyadic::ONE,
    }
}

fn shift2_distance(x: &PointId, y: &PointId) -> Dyadic {
    use PointId::{Int, MinusInf, PlusInf};
    match (x, y) {
        (Int(j), Int(k)) => {
            if (*j >= 1 && *k >= 1) || (*j <= -1 && *k <= -1) {
                // same sign: 2^-min(|j|,|k|)
                Dyadic::pow2_neg(exp_of_i(*j).min(exp_of_i(*k)))
            } else {
                Dyadic::ONE
            }
        }
        (Int(k), PlusInf) | (PlusInf, Int(k)) => {
            if *k >= 1 {
                Dyadic::pow2_neg(exp_of_i(*k))
            } else {
                Dyadic::ONE
            }
        }
        (Int(k), MinusInf) | (MinusInf, Int(k)) => {
            if *k <= -1 {
                Dyadic::pow2_neg(exp_of_i(*k))
            } else {
                Dyadic::ONE
            }
        }
        _ => Dyadic::ONE, // +inf vs -inf
    }
}

fn ishift_distance(x: &PointId, y: &PointId) -> Dyadic {
    use PointId::{Inf, Seq};
    match (x, y) {
        (Seq(n), Seq(m)) => Dyadic::pow2_neg(exp_of(*n.min(m))),
        (Seq(n), Inf) | (Inf, Seq(n)) => Dyadic::pow2_neg(exp_of(*n)),
        _ => Dyadic::ZERO,
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_cascade;
    use super::super::point::enumerate_points;
    use super::*;

    #[test]
    fn tower_scales() {
        let e = parse_cascade("tower(cycle(2))").unwrap();
        let star = PointId::Star;
        let p2 = PointId::piece(2, PointId::At(0));
        let p2b = PointId::piece(2, PointId::At(1));
        let p3 = PointId::piece(3, PointId::At(0));
        assert_eq!(distance(&e, &star, &p2), Dyadic::pow2_neg(2));
        assert_eq!(distance(&e, &p2, &p2b), Dyadic::pow2_neg(3));
        assert_eq!(distance(&e, &p2, &p3), Dyadic::pow2_neg(2));
        assert_eq!(distance(&e, &star, &star), Dyadic::ZERO);
    }

    #[test]
    fn shift2_table() {
        let e = CascadeExpr::Shift2;
        let d = |a: PointId, b: PointId| distance(&e, &a, &b);
        assert_eq!(d(PointId::Int(3), PointId::PlusInf), Dyadic::pow2_neg(3));
        assert_eq!(d(PointId::Int(-8), PointId::MinusInf), Dyadic::pow2_neg(8));
        assert_eq!(d(PointId::Int(3), PointId::Int(5)), Dyadic::pow2_neg(3));
        assert_eq!(d(PointId::Int(-3), PointId::Int(-5)), Dyadic::pow2_neg(3));
        assert_eq!(d(PointId::Int(-3), PointId::Int(5)), Dyadic::ONE);
        assert_eq!(d(PointId::Int(0), PointId::Int(5)), Dyadic::ONE);
        assert_eq!(d(PointId::Int(0), PointId::PlusInf), Dyadic::ONE);
        assert_eq!(d(PointId::Int(0), PointId::MinusInf), Dyadic::ONE);
        assert_eq!(d(PointId::PlusInf, PointId::MinusInf), Dyadic::ONE);
        assert_eq!(d(PointId::Int(4), PointId::Int(4)), Dyadic::ZERO);
    }

    #[test]
    fn ultrametric_inequality_exhaustive() {
        for src in [
            "tower(cycle(2),cycle(3^n))",
            "sum(tower(cycle(2)),shift2)",
            "cycleof(ishift,2)",
            "sum(shift2,sum(cycle(4),ishift))",
        ] {
            let e = parse_cascade(src).unwrap();
            let pts = enumerate_points(&e, 4).unwrap();
            for x in &pts {
                for y in &pts {
                    let dxy = distance(&e, x, y);
                    assert_eq!(dxy, distance(&e, y, x));
                    assert_eq!(dxy.is_zero(), x == y);
                    for z in &pts {
                        let bound = distance(&e, x, z).max(distance(&e, z, y));
                        assert!(dxy <= bound, "{src}: d({x},{y}) > max over {z}");
                    }
                }
            }
        }
    }
}
