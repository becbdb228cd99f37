//! Cantor-Bendixson ranks, computed structurally. Pieces, sum components, and
//! product copies are clopen, so a point's rank in the whole space equals its
//! rank inside its own component; a limit point's rank is one more than the
//! largest rank occurring in infinitely many of the sets converging to it.

use super::expr::CascadeExpr;
use super::point::PointId;
use super::PresentationError;

/// Rank of a single point: 0 for isolated points, n+1 for points isolated in
/// the n-th derived set.
pub fn cb_rank_point(expr: &CascadeExpr, point: &PointId) -> Result<u32, PresentationError> {
    match (expr, point) {
        (CascadeExpr::Cycle(k), PointId::At(p)) if p < k => Ok(0),
        (CascadeExpr::Tower(pieces), PointId::Star) => {
            // only the tail family occurs infinitely often, and its pieces are
            // cycles of isolated points
            let tail_piece = CascadeExpr::Cycle(pieces.tail.eval(pieces.head.len() as u64).unwrap_or(1));
            Ok(1 + max_point_rank(&tail_piece))
        }
        (CascadeExpr::Tower(pieces), PointId::Piece(n, inner)) => {
            cb_rank_point(&super::point::piece_expr(pieces, *n)?, inner)
        }
        (CascadeExpr::Sum(a, _), PointId::Left(inner)) => cb_rank_point(a, inner),
        (CascadeExpr::Sum(_, b), PointId::Right(inner)) => cb_rank_point(b, inner),
        (CascadeExpr::CycleOf(base, m), PointId::Copy(i, inner)) if i < m => {
            cb_rank_point(base, inner)
        }
        (CascadeExpr::Shift2, PointId::Int(_)) => Ok(0),
        (CascadeExpr::Shift2, PointId::PlusInf | PointId::MinusInf) => Ok(1),
        (CascadeExpr::IShift, PointId::Seq(_)) => Ok(0),
        (CascadeExpr::IShift, PointId::Inf) => Ok(1),
        _ => Err(PresentationError::InvalidPoint {
            message: format!("point `{point}` does not belong to `{expr}`"),
        }),
    }
}

/// Largest point rank in the space.
pub fn max_point_rank(expr: &CascadeExpr) -> u32 {
    match expr {
        CascadeExpr::Cycle(_) => 0,
        CascadeExpr::Tower(pieces) => {
            let star = 1; // tail pieces are cycles: rank 0, plus one
            pieces
                .head
                .iter()
                .map(max_point_rank)
                .max()
                .unwrap_or(0)
                .max(star)
        }
        CascadeExpr::Sum(a, b) => max_point_rank(a).max(max_point_rank(b)),
        CascadeExpr::CycleOf(base, _) => max_point_rank(base),
        CascadeExpr::Shift2 | CascadeExpr::IShift => 1,
    }
}

/// Cantor-Bendixson rank of the whole space: the first derivative index at
/// which the derived sets stabilize (empty, for these scattered spaces).
pub fn cb_rank_space(expr: &CascadeExpr) -> u32 {
    max_point_rank(expr) + 1
}
