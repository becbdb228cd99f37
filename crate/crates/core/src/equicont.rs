//! Equicontinuity: a uniform return-time bound and an explicit modulus for
//! all-periodic cascades, and a bounded witness search for the failure of
//! equicontinuity on cascades with shift components.

use crate::arith::gcd;
use crate::dyadic::Dyadic;
use crate::presentation::{
    apply_map, distance, enumerate_points, piece_expr, CascadeExpr, PointId, PresentationError,
};

#[derive(Debug, thiserror::Error)]
pub enum EquicontError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("the cascade has aperiodic points, so no uniform return bound or modulus exists")]
    NotAllPeriodic,
    #[error("epsilon must be positive")]
    ZeroEpsilon,
}

fn lcm_checked(a: u64, b: u64) -> Result<u64, PresentationError> {
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or_else(|| PresentationError::TooLarge { message: "return bound overflow".into() })
}

/// A uniform return bound `l = l(eps)`: every point satisfies
/// `d(f^l(x), x) < eps`. Exists exactly when every point is periodic.
///
/// Any part of the space whose diameter is already below `eps` is permuted
/// within itself and needs no constraint; a part at scale `>= eps` must be
/// traversed exactly, so it contributes the periods of its points to an lcm.
pub fn uniform_period_bound(expr: &CascadeExpr, eps: &Dyadic) -> Result<u64, EquicontError> {
    if eps.is_zero() {
        return Err(EquicontError::ZeroEpsilon);
    }
    if !expr.is_all_periodic() {
        return Err(EquicontError::NotAllPeriodic);
    }
    bound_rec(expr, 0, eps)
}

fn bound_rec(expr: &CascadeExpr, scale_exp: u32, eps: &Dyadic) -> Result<u64, EquicontError> {
    // the whole subtree has ambient diameter at most 2^-scale_exp
    if Dyadic::pow2_neg(scale_exp) < *eps {
        return Ok(1);
    }
    match expr {
        CascadeExpr::Cycle(k) => Ok(*k),
        CascadeExpr::Sum(a, b) => {
            let la = bound_rec(a, scale_exp, eps)?;
            let lb = bound_rec(b, scale_exp, eps)?;
            Ok(lcm_checked(la, lb)?)
        }
        CascadeExpr::CycleOf(base, m) => {
            // the copies sit at mutual distance 2^-scale_exp >= eps, so f^l
            // must return to the same copy (m | l) and then the inner factor
            // l / m must return the base within eps
            let inner = bound_rec(base, scale_exp, eps)?;
            m.checked_mul(inner).ok_or_else(|| {
                EquicontError::Presentation(PresentationError::TooLarge {
                    message: "return bound overflow".into(),
                })
            })
        }
        CascadeExpr::Tower(pieces) => {
            // pieces are invariant and piece n's interior lives at ambient
            // scale 2^-(scale_exp + n + 1); only finitely many reach eps
            let mut l: u64 = 1;
            let mut n: u64 = 0;
            loop {
                let piece_exp = scale_exp
                    .checked_add(u32::try_from(n + 1).unwrap_or(u32::MAX))
                    .unwrap_or(u32::MAX);
                if Dyadic::pow2_neg(piece_exp) < *eps {
                    break;
                }
                let piece = piece_expr(pieces, n)?;
                l = lcm_checked(l, bound_rec(&piece, piece_exp, eps)?)?;
                n += 1;
            }
            Ok(l)
        }
        CascadeExpr::Shift2 | CascadeExpr::IShift => Err(EquicontError::NotAllPeriodic),
    }
}

/// A modulus of equicontinuity: a `delta` such that `d(x, y) <= delta`
/// implies `d(f^n(x), f^n(y)) < eps` for every `n` (positive and negative).
///
/// An all-periodic cascade acts by isometries — each grammar constructor
/// permutes its parts and preserves the piecewise metric — so any positive
/// `delta < eps` works; the returned one leaves a factor-of-three margin.
pub fn equicontinuity_modulus(expr: &CascadeExpr, eps: &Dyadic) -> Result<Dyadic, EquicontError> {
    if !expr.is_all_periodic() {
        return Err(EquicontError::NotAllPeriodic);
    }
    eps.third_pow2().ok_or(EquicontError::ZeroEpsilon)
}

/// Bounded search for an equicontinuity failure: two points at distance less
/// than `eps` whose n-th images are at least `eps` apart, for some
/// `n <= iter_bound`. Pairs are scanned in order of (distance, enumeration
/// position), and the least violating `n` of the first violating pair is
/// returned, so the result is deterministic.
pub fn equicontinuity_failure_witness(
    expr: &CascadeExpr,
    eps: Dyadic,
    depth: u32,
    iter_bound: u64,
) -> Result<Option<(PointId, PointId, u64)>, PresentationError> {
    let points = enumerate_points(expr, depth)?;
    let mut pairs: Vec<(Dyadic, usize, usize)> = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d = distance(expr, &points[i], &points[j]);
            if !d.is_zero() && d < eps {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort();
    for (_, i, j) in pairs {
        let (mut x, mut y) = (points[i].clone(), points[j].clone());
        for n in 1..=iter_bound {
            x = apply_map(expr, &x)?;
            y = apply_map(expr, &y)?;
            if distance(expr, &x, &y) >= eps {
                return Ok(Some((points[i].clone(), points[j].clone(), n)));
            }
        }
    }
    Ok(None)
}
