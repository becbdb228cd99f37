//! Presentations of cascades: the expression grammar, its parser and canonical
//! printer, point addresses, the exact ultrametric, the generating
//! homeomorphism, and Cantor-Bendixson ranks.

mod expr;
mod metric;
mod parse;
mod point;
mod rank;

pub use expr::{CascadeExpr, ParamFamily, PieceSeq};
pub use metric::distance;
pub use parse::parse_cascade;
pub use point::{
    apply_inverse, apply_map, apply_power, enumerate_points, ishift_coord, ishift_from_coord,
    parse_point, piece_expr, validate_point, PointId,
};
pub use rank::{cb_rank_point, cb_rank_space, max_point_rank};

/// Errors from parsing, point addressing, or enumeration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("invalid point: {message}")]
    InvalidPoint { message: String },
    #[error("{message}")]
    TooLarge { message: String },
}
