//! A compact connected companion example: the closed unit-radius-pi disk,
//! rotated on each concentric circle by its own radius. Every point is
//! periodic with period the denominator of its rotation number, yet the
//! p-limit functions are discontinuous along radii chosen through odd primes,
//! so the system's enveloping semigroup is not made of continuous functions.
//! Coordinates are exact rationals measured in units of pi.

use crate::oracle::{crt_solve, CrtOutcome};
use num_rational::Ratio;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum DiskError {
    #[error("radius must be nonnegative")]
    NegativeRadius,
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("coordinate overflow")]
    Overflow,
    #[error("the residue data does not determine the class modulo {modulus}")]
    UnderdeterminedResidue { modulus: u64 },
    #[error("incompatible residue constraints: {0}")]
    IncompatibleResidues(String),
    #[error("the witness needs at least one row")]
    EmptyWitness,
}

/// A point of the disk in polar coordinates, both measured in units of pi:
/// `radius_pi = 1` is the circle of radius pi, `angle_pi` lives in [0, 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiskPoint {
    radius_pi: Ratio<i64>,
    angle_pi: Ratio<i64>,
}

fn widen(r: Ratio<i64>) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

fn narrow(r: Ratio<i128>) -> Result<Ratio<i64>, DiskError> {
    let n = i64::try_from(*r.numer()).map_err(|_| DiskError::Overflow)?;
    let d = i64::try_from(*r.denom()).map_err(|_| DiskError::Overflow)?;
    Ok(Ratio::new(n, d))
}

fn mod_two(r: Ratio<i128>) -> Ratio<i128> {
    let two = Ratio::from_integer(2i128);
    r - (r / two).floor() * two
}

impl DiskPoint {
    pub fn new(radius_pi: Ratio<i64>, angle_pi: Ratio<i64>) -> Result<DiskPoint, DiskError> {
        if radius_pi < Ratio::from_integer(0) {
            return Err(DiskError::NegativeRadius);
        }
        let angle = narrow(mod_two(widen(angle_pi)))?;
        Ok(DiskPoint { radius_pi, angle_pi: angle })
    }

    /// Convenience constructor from numerator/denominator pairs.
    pub fn from_parts(rn: i64, rd: i64, an: i64, ad: i64) -> Result<DiskPoint, DiskError> {
        if rd == 0 || ad == 0 {
            return Err(DiskError::ZeroDenominator);
        }
        DiskPoint::new(Ratio::new(rn, rd), Ratio::new(an, ad))
    }

    pub fn radius_pi(&self) -> Ratio<i64> {
        self.radius_pi
    }

    pub fn angle_pi(&self) -> Ratio<i64> {
        self.angle_pi
    }
}

fn fmt_pi(r: &Ratio<i64>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if *r.numer() == 0 {
        write!(f, "0")
    } else if *r == Ratio::from_integer(1) {
        write!(f, "pi")
    } else if r.is_integer() {
        write!(f, "{}*pi", r.numer())
    } else {
        write!(f, "{}/{}*pi", r.numer(), r.denom())
    }
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_pi(&self.radius_pi, f)?;
        write!(f, ", ")?;
        fmt_pi(&self.angle_pi, f)?;
        write!(f, ")")
    }
}

/// One application of the disk map: rotate the circle of radius `r*pi` by the
/// angle `r*pi`.
pub fn disk_apply(p: &DiskPoint) -> Result<DiskPoint, DiskError> {
    disk_apply_power(p, 1)
}

/// `n`-fold application (negative `n` rotates backward).
pub fn disk_apply_power(p: &DiskPoint, n: i64) -> Result<DiskPoint, DiskError> {
    let angle = widen(p.angle_pi) + Ratio::from_integer(n as i128) * widen(p.radius_pi);
    Ok(DiskPoint { radius_pi: p.radius_pi, angle_pi: narrow(mod_two(angle))? })
}

/// Exact period of a point: the denominator of its rotation number
/// `radius_pi / 2` in lowest terms.
pub fn disk_period(p: &DiskPoint) -> u64 {
    let rotation = widen(p.radius_pi) / Ratio::from_integer(2i128);
    *rotation.denom() as u64
}

/// Evaluate the p-limit of the iterates along a congruence class given by
/// explicit `(modulus, residue)` pairs: on a point of period `q` this is the
/// forward power by the class modulo `q`, which the pairs must determine.
pub fn disk_p_iterate(p: &DiskPoint, residues: &[(u64, u64)]) -> Result<DiskPoint, DiskError> {
    let outcome = crt_solve(residues).map_err(|e| DiskError::IncompatibleResidues(e.to_string()))?;
    let (witness, modulus) = match outcome {
        CrtOutcome::Solution { witness, modulus } => (witness, modulus),
        CrtOutcome::Incompatible { a, b } => {
            return Err(DiskError::IncompatibleResidues(format!(
                "{}:{} conflicts with {}:{}",
                a.0, a.1, b.0, b.1
            )));
        }
    };
    let q = disk_period(p);
    if q == 0 || modulus % q != 0 {
        return Err(DiskError::UnderdeterminedResidue { modulus: q });
    }
    let exponent = (witness % q) as i64;
    disk_apply_power(p, exponent)
}

/// One row of the discontinuity witness: a periodic point near the circle of
/// radius pi, its period, the residue constraint used on it, and its image
/// under the limit function.
#[derive(Clone, Debug)]
pub struct NonWapRow {
    pub point: DiskPoint,
    pub period: u64,
    pub residue: (u64, u64),
    pub image: DiskPoint,
}

/// A finite table witnessing that a p-limit of iterates is discontinuous on
/// the disk: the row points approach `limit_point`, their images all sit at
/// angle pi, yet the limit function fixes `limit_point`.
#[derive(Clone, Debug)]
pub struct NonWapWitness {
    pub rows: Vec<NonWapRow>,
    pub limit_point: DiskPoint,
    pub limit_image: DiskPoint,
}

/// Build the witness over the first `k` odd primes `m`: the point at radius
/// `(1 + 1/(2m)) * pi` and angle 0 has period `4m`, and iterating along
/// exponents `2m (mod 4m)` rotates it to angle pi. The constraints for
/// different primes are pairwise compatible (all say 2 mod 4), so they cut a
/// single limit function, which sends the limit point `(pi, 0)` of the rows
/// to itself — a jump from angle pi to angle 0.
pub fn nonwap_witness(k: usize) -> Result<NonWapWitness, DiskError> {
    if k == 0 {
        return Err(DiskError::EmptyWitness);
    }
    let primes = crate::arith::odd_primes(k);
    let mut rows = Vec::with_capacity(k);
    for m in primes {
        let m_i = i64::try_from(m).map_err(|_| DiskError::Overflow)?;
        let radius = Ratio::from_integer(1i64)
            + Ratio::new(1, m_i.checked_mul(2).ok_or(DiskError::Overflow)?);
        let point = DiskPoint::new(radius, Ratio::from_integer(0))?;
        let period = disk_period(&point);
        debug_assert_eq!(period, 4 * m);
        let residue = (4 * m, 2 * m);
        let image = disk_p_iterate(&point, &[residue])?;
        rows.push(NonWapRow { point, period, residue, image });
    }
    let limit_point = DiskPoint::new(Ratio::from_integer(1), Ratio::from_integer(0))?;
    // the limit point has period 2, and every row constraint says the
    // exponent is even, so the limit function fixes it
    let limit_image = disk_p_iterate(&limit_point, &[rows[0].residue])?;
    Ok(NonWapWitness { rows, limit_point, limit_image })
}

/// Exact commutation check: `f^a . f^b`, `f^b . f^a`, and `f^(a+b)` agree.
pub fn disk_commute_check(p: &DiskPoint, a: i64, b: i64) -> Result<bool, DiskError> {
    let ab = disk_apply_power(&disk_apply_power(p, b)?, a)?;
    let ba = disk_apply_power(&disk_apply_power(p, a)?, b)?;
    let sum = disk_apply_power(p, a.checked_add(b).ok_or(DiskError::Overflow)?)?;
    Ok(ab == ba && ab == sum)
}
