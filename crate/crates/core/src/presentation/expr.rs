//! Closed expression grammar for cascades on countable compact ultrametric
//! spaces: finite cycles, towers of pieces converging to a limit point, disjoint
//! sums, cyclic products, and the two aperiodic generators.

use std::fmt;

/// One-parameter family of cycle lengths `g(n)` for the infinite tail of a tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ParamFamily {
    /// g(n) = k
    Const(u64),
    /// g(n) = a*n + b
    Linear(u64, u64),
    /// g(n) = a * r^n
    Geometric(u64, u64),
}

impl ParamFamily {
    /// Evaluate g(n); None on u64 overflow.
    pub fn eval(&self, n: u64) -> Option<u64> {
        match *self {
            ParamFamily::Const(k) => Some(k),
            ParamFamily::Linear(a, b) => a.checked_mul(n)?.checked_add(b),
            ParamFamily::Geometric(a, r) => {
                let exp = u32::try_from(n).ok()?;
                a.checked_mul(r.checked_pow(exp)?)
            }
        }
    }

    /// Whether the family takes the same value from some index on.
    pub fn is_eventually_constant(&self) -> bool {
        match *self {
            ParamFamily::Const(_) => true,
            ParamFamily::Linear(a, _) => a == 0,
            ParamFamily::Geometric(_, r) => r == 1,
        }
    }

    /// Whether `value = g(n)` for some index `n >= start`.
    pub fn attains(&self, value: u64, start: u64) -> bool {
        match *self {
            ParamFamily::Const(k) => value == k,
            ParamFamily::Linear(a, b) => {
                if a == 0 {
                    value == b
                } else {
                    value >= b && (value - b) % a == 0 && (value - b) / a >= start
                }
            }
            ParamFamily::Geometric(a, r) => {
                if a == 0 || value % a != 0 {
                    return false;
                }
                let mut q = value / a;
                if r == 1 {
                    return q == 1;
                }
                let mut exp = 0u64;
                while q % r == 0 {
                    q /= r;
                    exp += 1;
                }
                q == 1 && exp >= start
            }
        }
    }

    /// Multiply every value by m (periods of tail pieces under an enclosing
    /// cyclic product). None on overflow.
    pub fn scaled(&self, m: u64) -> Option<ParamFamily> {
        Some(match *self {
            ParamFamily::Const(k) => ParamFamily::Const(k.checked_mul(m)?),
            ParamFamily::Linear(a, b) => {
                ParamFamily::Linear(a.checked_mul(m)?, b.checked_mul(m)?)
            }
            ParamFamily::Geometric(a, r) => ParamFamily::Geometric(a.checked_mul(m)?, r),
        })
    }
}

impl fmt::Display for ParamFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ParamFamily::Const(k) => write!(f, "{k}"),
            ParamFamily::Linear(a, b) => write!(f, "{a}*n+{b}"),
            ParamFamily::Geometric(1, r) => write!(f, "{r}^n"),
            ParamFamily::Geometric(a, r) => write!(f, "{a}*{r}^n"),
        }
    }
}

/// The pieces of a tower: finitely many explicit head pieces followed by an
/// infinite family of cycles. Piece `n` is `head[n]` for `n < head.len()` and
/// `Cycle(g(n))` for `n >= head.len()` (the family is evaluated at the
/// absolute piece index).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PieceSeq {
    pub head: Vec<CascadeExpr>,
    pub tail: ParamFamily,
}

/// A presented cascade: a compact ultrametric space together with the
/// homeomorphism generating the dynamics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CascadeExpr {
    /// k points permuted cyclically.
    Cycle(u64),
    /// Pieces shrinking toward a single fixed limit point `star`.
    Tower(PieceSeq),
    /// Disjoint union at mutual distance 1, map acting componentwise.
    Sum(Box<CascadeExpr>, Box<CascadeExpr>),
    /// m clopen copies of the base permuted cyclically; the wrap-around
    /// applies the base map once, so the m-th power restricts to the base map
    /// on each copy.
    CycleOf(Box<CascadeExpr>, u64),
    /// Two-sided integer shift compactified by fixed points at both ends:
    /// n -> n+1 on the integers, both infinities fixed.
    Shift2,
    /// A single sequence converging to a fixed point, walked as one bi-infinite
    /// chain: odd indices descend (x5 -> x3 -> x1 -> x0), even ascend
    /// (x0 -> x2 -> x4 -> ...), with both ends converging to the fixed point.
    IShift,
}

impl CascadeExpr {
    pub fn sum(a: CascadeExpr, b: CascadeExpr) -> CascadeExpr {
        CascadeExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn cycle_of(base: CascadeExpr, m: u64) -> CascadeExpr {
        CascadeExpr::CycleOf(Box::new(base), m)
    }

    /// True when the expression uses only the all-periodic generators
    /// (no Shift2/IShift anywhere in the tree).
    pub fn is_all_periodic(&self) -> bool {
        match self {
            CascadeExpr::Cycle(_) => true,
            CascadeExpr::Tower(pieces) => pieces.head.iter().all(|p| p.is_all_periodic()),
            CascadeExpr::Sum(a, b) => a.is_all_periodic() && b.is_all_periodic(),
            CascadeExpr::CycleOf(base, _) => base.is_all_periodic(),
            CascadeExpr::Shift2 | CascadeExpr::IShift => false,
        }
    }

    /// True when the space is finite (no tower and no aperiodic generator).
    pub fn is_finite_space(&self) -> bool {
        match self {
            CascadeExpr::Cycle(_) => true,
            CascadeExpr::Tower(_) | CascadeExpr::Shift2 | CascadeExpr::IShift => false,
            CascadeExpr::Sum(a, b) => a.is_finite_space() && b.is_finite_space(),
            CascadeExpr::CycleOf(base, _) => base.is_finite_space(),
        }
    }

    pub fn contains_shift2(&self) -> bool {
        match self {
            CascadeExpr::Shift2 => true,
            CascadeExpr::IShift | CascadeExpr::Cycle(_) => false,
            CascadeExpr::Tower(pieces) => pieces.head.iter().any(|p| p.contains_shift2()),
            CascadeExpr::Sum(a, b) => a.contains_shift2() || b.contains_shift2(),
            CascadeExpr::CycleOf(base, _) => base.contains_shift2(),
        }
    }

    pub fn contains_ishift(&self) -> bool {
        match self {
            CascadeExpr::IShift => true,
            CascadeExpr::Shift2 | CascadeExpr::Cycle(_) => false,
            CascadeExpr::Tower(pieces) => pieces.head.iter().any(|p| p.contains_ishift()),
            CascadeExpr::Sum(a, b) => a.contains_ishift() || b.contains_ishift(),
            CascadeExpr::CycleOf(base, _) => base.contains_ishift(),
        }
    }
}

impl fmt::Display for CascadeExpr {
    /// Canonical form: exactly the input grammar, no whitespace.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CascadeExpr::Cycle(k) => write!(f, "cycle({k})"),
            CascadeExpr::Tower(pieces) => {
                write!(f, "tower(")?;
                for piece in &pieces.head {
                    write!(f, "{piece},")?;
                }
                write!(f, "cycle({}))", pieces.tail)
            }
            CascadeExpr::Sum(a, b) => write!(f, "sum({a},{b})"),
            CascadeExpr::CycleOf(base, m) => write!(f, "cycleof({base},{m})"),
            CascadeExpr::Shift2 => write!(f, "shift2"),
            CascadeExpr::IShift => write!(f, "ishift"),
        }
    }
}
