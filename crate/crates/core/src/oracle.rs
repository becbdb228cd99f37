//! Brute-force cross-checks: a generalized Chinese-remainder solver, limits of
//! iterates sampled along congruence classes, and the pointwise closure of the
//! iterate family on a truncated point set. These work by direct iteration and
//! metric convergence only, independently of the symbolic semigroup code, so
//! the two can be tested against each other.

use crate::dyadic::Dyadic;
use crate::dynamics::{max_rank_set, period, Period};
use crate::presentation::{
    apply_inverse, apply_map, apply_power, distance, enumerate_points, max_point_rank,
    CascadeExpr, PointId, PresentationError,
};
use num_integer::Integer;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Result of solving a system of congruences `x = r (mod n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrtOutcome {
    /// The least non-negative solution and the combined modulus (lcm).
    Solution { witness: u64, modulus: u64 },
    /// The first pair of input congruences (in input order) that already
    /// disagree modulo the gcd of their moduli.
    Incompatible { a: (u64, u64), b: (u64, u64) },
}

/// Solve `x = r_i (mod n_i)` for all i, or report the first incompatible
/// pair. Pairs are `(modulus, residue)` with modulus >= 1; residues are
/// reduced internally. The empty system yields `Solution { 0, 1 }`.
pub fn crt_solve(congruences: &[(u64, u64)]) -> Result<CrtOutcome, PresentationError> {
    for (modulus, _) in congruences {
        if *modulus == 0 {
            return Err(PresentationError::InvalidPoint { message: "modulus 0 in congruence system".into() });
        }
    }
    let mut modulus: u128 = 1;
    let mut residue: u128 = 0;
    for &(m, r) in congruences {
        match merge(modulus, residue, m as u128, (r % m) as u128) {
            Some((new_m, new_r)) => {
                if new_m > u64::MAX as u128 {
                    return Err(PresentationError::TooLarge {
                        message: "combined modulus exceeds 64 bits".into(),
                    });
                }
                modulus = new_m;
                residue = new_r;
            }
            None => {
                // solvability is equivalent to pairwise compatibility, so an
                // incompatible input pair exists; report the first one
                for i in 0..congruences.len() {
                    for j in (i + 1)..congruences.len() {
                        let (ni, ri) = congruences[i];
                        let (nj, rj) = congruences[j];
                        let g = ni.gcd(&nj);
                        if (ri % g) != (rj % g) {
                            return Ok(CrtOutcome::Incompatible { a: (ni, ri), b: (nj, rj) });
                        }
                    }
                }
                unreachable!("unsolvable system must contain an incompatible pair");
            }
        }
    }
    Ok(CrtOutcome::Solution { witness: residue as u64, modulus: modulus as u64 })
}

/// Merge `x = r1 (mod m1)` with `x = r2 (mod m2)`; None if incompatible.
fn merge(m1: u128, r1: u128, m2: u128, r2: u128) -> Option<(u128, u128)> {
    let g = m1.gcd(&m2);
    let (big_r, small_r) = (r1.max(r2), r1.min(r2));
    if (big_r - small_r) % g != 0 {
        return None;
    }
    let l = (m1 / g).checked_mul(m2)?;
    // x = r1 + m1 * t with t = (r2 - r1)/g * inv(m1/g) (mod m2/g)
    let m2g = m2 / g;
    let diff = ((r2 as i128 - r1 as i128) / g as i128).rem_euclid(m2g as i128) as u128;
    let inv = mod_inverse((m1 / g) % m2g, m2g)?;
    let t = diff * inv % m2g;
    Some((l, (r1 + m1 * t) % l))
}

/// Inverse of `a` modulo `m` (m >= 1), when gcd(a, m) = 1.
fn mod_inverse(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let egcd = (a as i128).extended_gcd(&(m as i128));
    if egcd.gcd != 1 {
        return None;
    }
    Some(egcd.x.rem_euclid(m as i128) as u128)
}

/// Which exponents to sample when computing a limit of iterates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceClassSpec {
    /// The single exponent `m`: no limit, just `f^m`.
    Principal(i64),
    /// Exponents `n = r (mod m)` for every listed pair, with `n` tending to
    /// plus infinity (`forward`) or minus infinity.
    Class { residues: Vec<(u64, u64)>, forward: bool },
}

/// Outcome of sampling iterates along a congruence class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PIterateOutcome {
    /// Principal exponent: the exact image.
    Exact(PointId),
    /// All sampled iterates beyond some exponent coincide.
    Stabilized { value: PointId, samples: u64 },
    /// Sampled iterates approach this limit point with non-increasing,
    /// eventually shrinking distances.
    Converged { limit: PointId },
    /// Sampling was inconclusive (incompatible class, or too few samples
    /// within the bound).
    Undetermined { reason: String },
}

impl PIterateOutcome {
    /// The limiting value, when the sampling was conclusive.
    pub fn value(&self) -> Option<&PointId> {
        match self {
            PIterateOutcome::Exact(p) => Some(p),
            PIterateOutcome::Stabilized { value, .. } => Some(value),
            PIterateOutcome::Converged { limit } => Some(limit),
            PIterateOutcome::Undetermined { .. } => None,
        }
    }
}

/// Sample `f^n(x)` for exponents `n` in the given congruence class with
/// `|n| <= bound`, and decide the pointwise limit by brute force: either the
/// samples stabilize, or they converge monotonically to a limit point of the
/// space.
pub fn p_iterate_limit(
    expr: &CascadeExpr,
    point: &PointId,
    spec: &CongruenceClassSpec,
    bound: u64,
) -> Result<PIterateOutcome, PresentationError> {
    let (residues, forward) = match spec {
        CongruenceClassSpec::Principal(m) => {
            return Ok(PIterateOutcome::Exact(apply_power(expr, point, *m)?));
        }
        CongruenceClassSpec::Class { residues, forward } => (residues, *forward),
    };
    let (witness, modulus) = match crt_solve(residues)? {
        CrtOutcome::Solution { witness, modulus } => (witness, modulus),
        CrtOutcome::Incompatible { a, b } => {
            return Ok(PIterateOutcome::Undetermined {
                reason: format!(
                    "class is empty: {} mod {} conflicts with {} mod {}",
                    a.1, a.0, b.1, b.0
                ),
            });
        }
    };
    // sample exponents inside the class with |n| <= bound: upward from the
    // witness, or downward through witness - k*modulus toward minus infinity
    let bound = bound.min(i64::MAX as u64);
    let mut samples: Vec<PointId> = Vec::new();
    if forward {
        let mut exponent = witness;
        while exponent <= bound {
            samples.push(apply_power(expr, point, exponent as i64)?);
            match exponent.checked_add(modulus) {
                Some(next) => exponent = next,
                None => break,
            }
        }
    } else {
        let mut exponent = witness as i128;
        while exponent > bound as i128 {
            exponent -= modulus as i128;
        }
        while exponent >= -(bound as i128) {
            samples.push(apply_power(expr, point, exponent as i64)?);
            exponent -= modulus as i128;
        }
    }
    if samples.len() < 4 {
        return Ok(PIterateOutcome::Undetermined {
            reason: format!(
                "only {} sample(s) within bound {bound} for class {witness} mod {modulus}",
                samples.len()
            ),
        });
    }
    // stabilization: the last 3 samples agree
    let tail = &samples[samples.len() - 3..];
    if tail.iter().all(|p| p == &tail[0]) {
        return Ok(PIterateOutcome::Stabilized { value: tail[0].clone(), samples: samples.len() as u64 });
    }
    // convergence: pick the limit point nearest to the final sample and check
    // that the last few distances are non-increasing and end small
    let candidates = if max_point_rank(expr) >= 1 { max_rank_set(expr)? } else { Vec::new() };
    let last = samples.last().expect("samples nonempty");
    let mut best: Option<(Dyadic, PointId)> = None;
    for c in candidates {
        let d = distance(expr, last, &c);
        if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
            best = Some((d, c));
        }
    }
    if let Some((_, limit)) = best {
        let tail = &samples[samples.len().saturating_sub(4)..];
        let dists: Vec<Dyadic> = tail.iter().map(|p| distance(expr, p, &limit)).collect();
        let nonincreasing = dists.windows(2).all(|w| w[1] <= w[0]);
        let shrunk = dists.last() < dists.first();
        let small = *dists.last().expect("tail nonempty") <= Dyadic::pow2_neg(3);
        if nonincreasing && shrunk && small {
            return Ok(PIterateOutcome::Converged { limit });
        }
    }
    Ok(PIterateOutcome::Undetermined {
        reason: format!("samples neither stabilize nor converge within bound {bound}"),
    })
}

/// Label attached to a function table in the pointwise closure.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableLabel {
    Power(i64),
    ForwardLimit { residue: u64, modulus: u64 },
    BackwardLimit { residue: u64, modulus: u64 },
}

impl fmt::Display for TableLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableLabel::Power(m) => write!(f, "f^{m}"),
            TableLabel::ForwardLimit { residue, modulus } => write!(f, "fwd({residue} mod {modulus})"),
            TableLabel::BackwardLimit { residue, modulus } => write!(f, "bwd({residue} mod {modulus})"),
        }
    }
}

/// One element of the pointwise closure, restricted to the truncated point
/// set. Values may fall outside the truncation when the map pushes points
/// past it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionTable {
    pub label: TableLabel,
    pub map: BTreeMap<PointId, PointId>,
}

/// Brute-forced closure of the iterate family in the topology of pointwise
/// convergence, restricted to the depth-`depth` truncation.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    /// Distinct tables, first occurrence order: powers, then limit tables.
    pub tables: Vec<FunctionTable>,
    /// Whether the truncated point set is invariant under the sampled maps.
    pub invariant_truncation: bool,
    /// Residue classes whose limit could not be decided within the bound.
    pub undetermined: Vec<String>,
}

impl ClosureReport {
    pub fn cardinality(&self) -> usize {
        self.tables.len()
    }
}

/// Compute all distinct restrictions of `f^n` to the truncated point set —
/// `0 <= n <= bound`, and `|n| <= bound` when `group` is set — together with
/// every limit table obtained by sampling along residue classes modulo the
/// lcm of the truncated periods.
pub fn pointwise_closure(
    expr: &CascadeExpr,
    depth: u32,
    bound: u64,
    group: bool,
) -> Result<ClosureReport, PresentationError> {
    let points = enumerate_points(expr, depth)?;
    let point_set: BTreeSet<PointId> = points.iter().cloned().collect();

    let mut tables: Vec<FunctionTable> = Vec::new();
    let mut seen: BTreeSet<BTreeMap<PointId, PointId>> = BTreeSet::new();
    let mut push = |label: TableLabel, map: BTreeMap<PointId, PointId>| {
        if seen.insert(map.clone()) {
            tables.push(FunctionTable { label, map });
        }
    };

    // power tables, forward (and backward when the group closure is wanted),
    // advancing one application at a time
    let mut forward_state: BTreeMap<PointId, PointId> =
        points.iter().map(|p| (p.clone(), p.clone())).collect();
    push(TableLabel::Power(0), forward_state.clone());
    let mut backward_state = forward_state.clone();
    let mut invariant = true;
    for m in 1..=bound as i64 {
        for value in forward_state.values_mut() {
            *value = apply_map(expr, value)?;
            invariant &= point_set.contains(value);
        }
        push(TableLabel::Power(m), forward_state.clone());
        if group {
            for value in backward_state.values_mut() {
                *value = apply_inverse(expr, value)?;
                invariant &= point_set.contains(value);
            }
            push(TableLabel::Power(-m), backward_state.clone());
        }
    }

    // limit tables: one candidate per residue class modulo the lcm of the
    // truncated periods, per direction
    let mut lcm: u64 = 1;
    for p in &points {
        if let Period::Finite(k) = period(expr, p)? {
            lcm = lcm
                .checked_mul(k / lcm.gcd(&k))
                .ok_or_else(|| PresentationError::TooLarge { message: "period lcm overflow".into() })?;
        }
    }
    let mut undetermined = Vec::new();
    let directions: &[bool] = if group { &[true, false] } else { &[true] };
    for &forward in directions {
        for r in 0..lcm {
            let spec = CongruenceClassSpec::Class { residues: vec![(lcm, r)], forward };
            let mut map = BTreeMap::new();
            let mut ok = true;
            for p in &points {
                match p_iterate_limit(expr, p, &spec, bound)? {
                    PIterateOutcome::Stabilized { value, .. } => {
                        map.insert(p.clone(), value);
                    }
                    PIterateOutcome::Converged { limit } => {
                        map.insert(p.clone(), limit);
                    }
                    PIterateOutcome::Exact(_) => unreachable!("class spec is not principal"),
                    PIterateOutcome::Undetermined { reason } => {
                        undetermined.push(format!(
                            "{} at {p}: {reason}",
                            if forward { "fwd" } else { "bwd" }
                        ));
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let label = if forward {
                    TableLabel::ForwardLimit { residue: r, modulus: lcm }
                } else {
                    TableLabel::BackwardLimit { residue: r, modulus: lcm }
                };
                push(label, map);
            }
        }
    }

    Ok(ClosureReport { tables, invariant_truncation: invariant, undetermined })
}
