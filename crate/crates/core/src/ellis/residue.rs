//! Residue systems: symbolic assignments of one residue class modulo every
//! period in a (possibly infinite) period set. A limit element of the
//! semigroup is determined on the periodic part of the space by such a
//! system, so composition and inversion reduce to adding and negating them,
//! and the question "is there an actual sequence of exponents realizing this
//! assignment" reduces to congruence compatibility.

use crate::arith::{factorize, gcd, pow_mod, valuation};
use crate::dynamics::period_set;
use crate::presentation::{CascadeExpr, ParamFamily, PresentationError};
use std::collections::BTreeMap;
use std::fmt;

/// Residues for an infinite family of moduli `g(n)`, `n >= start`: the class
/// of `offset` modulo `g(n)` for every index. A negative offset is the
/// natural way to say "always one below the modulus" and prints that way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailRule {
    pub family: ParamFamily,
    pub start: u64,
    pub offset: i64,
}

impl fmt::Display for TailRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset >= 0 {
            write!(f, "{}:{}[n>={}]", self.family, self.offset, self.start)
        } else {
            write!(f, "{}:{}-{}[n>={}]", self.family, self.family, -(self.offset as i128), self.start)
        }
    }
}

/// One residue class for each modulus: finitely many explicit pairs plus
/// finitely many tail rules covering infinite modulus families.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ResidueSystem {
    /// modulus -> residue (always reduced)
    pub explicit: BTreeMap<u64, u64>,
    pub tails: Vec<TailRule>,
}

impl ResidueSystem {
    pub fn from_pairs(pairs: &[(u64, u64)]) -> ResidueSystem {
        let mut explicit = BTreeMap::new();
        for &(n, r) in pairs {
            assert!(n >= 1, "modulus must be positive");
            explicit.insert(n, r % n);
        }
        ResidueSystem { explicit, tails: Vec::new() }
    }

    /// The residue class modulo `n`, when the system pins it down.
    pub fn determines(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return None;
        }
        if n == 1 {
            return Some(0);
        }
        if let Some(&r) = self.explicit.get(&n) {
            return Some(r);
        }
        for tail in &self.tails {
            if tail.family.attains(n, tail.start) {
                return Some((tail.offset as i128).rem_euclid(n as i128) as u64);
            }
        }
        None
    }

    /// Pointwise sum (composition of limit elements adds exponents). None if
    /// the two systems do not cover the same moduli.
    pub fn add(&self, other: &ResidueSystem) -> Option<ResidueSystem> {
        let mut explicit = BTreeMap::new();
        for &n in self.explicit.keys().chain(other.explicit.keys()) {
            let a = self.determines(n)?;
            let b = other.determines(n)?;
            explicit.insert(n, ((a as u128 + b as u128) % n as u128) as u64);
        }
        if self.tails.len() != other.tails.len() {
            return None;
        }
        let mut used = vec![false; other.tails.len()];
        let mut tails = Vec::with_capacity(self.tails.len());
        for t in &self.tails {
            let (i, u) = other
                .tails
                .iter()
                .enumerate()
                .find(|(i, u)| !used[*i] && u.family == t.family && u.start == t.start)?;
            used[i] = true;
            tails.push(TailRule {
                family: t.family.clone(),
                start: t.start,
                offset: t.offset.checked_add(u.offset)?,
            });
        }
        Some(ResidueSystem { explicit, tails })
    }

    /// Pointwise negation (inversion of a limit element negates exponents).
    pub fn negate(&self) -> Option<ResidueSystem> {
        let explicit = self.explicit.iter().map(|(&n, &r)| (n, (n - r) % n)).collect();
        let mut tails = Vec::with_capacity(self.tails.len());
        for t in &self.tails {
            tails.push(TailRule {
                family: t.family.clone(),
                start: t.start,
                offset: t.offset.checked_neg()?,
            });
        }
        Some(ResidueSystem { explicit, tails })
    }

    /// Add the fixed exponent `m` to every class (composition with a power).
    pub fn shift(&self, m: i64) -> Option<ResidueSystem> {
        let explicit = self
            .explicit
            .iter()
            .map(|(&n, &r)| (n, ((r as i128 + m as i128).rem_euclid(n as i128)) as u64))
            .collect();
        let mut tails = Vec::with_capacity(self.tails.len());
        for t in &self.tails {
            tails.push(TailRule {
                family: t.family.clone(),
                start: t.start,
                offset: t.offset.checked_add(m)?,
            });
        }
        Some(ResidueSystem { explicit, tails })
    }

    /// The system assigning the class of `c` modulo every period of the given
    /// cascade — explicit periods and tail families alike.
    pub fn constant_offset_for(expr: &CascadeExpr, c: i64) -> Result<ResidueSystem, PresentationError> {
        let spec = period_set(expr)?;
        let explicit = spec
            .explicit
            .iter()
            .map(|&p| (p, (c as i128).rem_euclid(p as i128) as u64))
            .collect();
        let tails = spec
            .tails
            .into_iter()
            .map(|t| TailRule { family: t.family, start: t.start, offset: c })
            .collect();
        Ok(ResidueSystem { explicit, tails })
    }

    /// The all-zero system over every period of the cascade.
    pub fn zeros_for(expr: &CascadeExpr) -> Result<ResidueSystem, PresentationError> {
        ResidueSystem::constant_offset_for(expr, 0)
    }

    /// Explicit-only system assigning the class of `r` to every period of the
    /// cascade with tail indices truncated at `depth`.
    pub fn truncated_for(
        expr: &CascadeExpr,
        depth: u32,
        r: u64,
    ) -> Result<ResidueSystem, PresentationError> {
        let periods = period_set(expr)?.enumerate(depth);
        let explicit = periods.into_iter().map(|p| (p, r % p)).collect();
        Ok(ResidueSystem { explicit, tails: Vec::new() })
    }
}

impl fmt::Display for ResidueSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.explicit.is_empty() && self.tails.is_empty() {
            // the vacuous system constrains nothing; print the one constraint
            // every exponent satisfies
            return write!(f, "1:0");
        }
        let mut first = true;
        for (n, r) in &self.explicit {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{n}:{r}")?;
            first = false;
        }
        for t in &self.tails {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parse a comma-separated list of explicit `modulus:residue` pairs.
pub fn parse_residue_list(s: &str) -> Result<ResidueSystem, String> {
    let mut system = ResidueSystem::default();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (n, r) = part
            .split_once(':')
            .ok_or_else(|| format!("expected modulus:residue, got `{part}`"))?;
        let n: u64 = n.trim().parse().map_err(|_| format!("bad modulus `{n}`"))?;
        let r: u64 = r.trim().parse().map_err(|_| format!("bad residue `{r}`"))?;
        if n == 0 {
            return Err("modulus must be positive".to_string());
        }
        if let Some(&old) = system.explicit.get(&n) {
            if old != r % n {
                return Err(format!("modulus {n} listed twice with different residues"));
            }
        }
        system.explicit.insert(n, r % n);
    }
    Ok(system)
}

/// Verdict on whether a residue system is the residue pattern of an actual
/// sequence of exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizabilityReport {
    pub realizable: bool,
    /// False when some condition was only verified up to a truncation.
    pub exact: bool,
    /// A concrete exponent matching the explicit part (and the first few tail
    /// moduli), when one was computed.
    pub witness: Option<u64>,
    pub detail: String,
}

/// Indices checked per tail pair when no exact criterion applies.
const TAIL_TRUNCATION: u64 = 24;

impl ResidueSystem {
    /// Decide realizability: a system is the trace of a sequence of exponents
    /// if and only if every pair of its congruence constraints is compatible.
    /// All pair kinds are decided exactly except pairs of distinct tails
    /// where a non-constant linear family is involved; those are verified up
    /// to a truncation and reported as such.
    pub fn realizable(&self) -> Result<RealizabilityReport, PresentationError> {
        let explicit: Vec<(u64, u64)> = self.explicit.iter().map(|(&n, &r)| (n, r)).collect();

        // explicit vs explicit: classical pairwise criterion
        for i in 0..explicit.len() {
            for j in (i + 1)..explicit.len() {
                let (n1, r1) = explicit[i];
                let (n2, r2) = explicit[j];
                let d = gcd(n1, n2);
                if r1 % d != r2 % d {
                    return Ok(conflict(format!(
                        "{r1} mod {n1} and {r2} mod {n2} disagree modulo {d}"
                    )));
                }
            }
        }

        let mut exact = true;
        let mut notes: Vec<String> = Vec::new();

        // explicit vs tail
        for &(m, r) in &explicit {
            for tail in &self.tails {
                match check_value_vs_tail(m, r as i64, tail)? {
                    PairVerdict::Ok => {}
                    PairVerdict::Conflict(msg) => return Ok(conflict(msg)),
                    PairVerdict::Truncated => unreachable!("value-tail checks are exact"),
                }
            }
        }

        // tail vs tail
        for i in 0..self.tails.len() {
            for j in (i + 1)..self.tails.len() {
                match check_tail_vs_tail(&self.tails[i], &self.tails[j])? {
                    PairVerdict::Ok => {}
                    PairVerdict::Conflict(msg) => return Ok(conflict(msg)),
                    PairVerdict::Truncated => {
                        exact = false;
                        notes.push(format!(
                            "pair ({}, {}) verified for the first {TAIL_TRUNCATION} indices only",
                            self.tails[i], self.tails[j]
                        ));
                    }
                }
            }
        }

        // all pairs compatible: compute a concrete witness for the explicit
        // part plus the first few tail moduli
        let mut constraints: Vec<(u64, u64)> = explicit.clone();
        for tail in &self.tails {
            for t in 0..4 {
                if let Some(g) = tail.family.eval(tail.start + t) {
                    constraints.push((g, (tail.offset as i128).rem_euclid(g as i128) as u64));
                }
            }
        }
        let witness = match crate::oracle::crt_solve(&constraints) {
            Ok(crate::oracle::CrtOutcome::Solution { witness, .. }) => Some(witness),
            Ok(crate::oracle::CrtOutcome::Incompatible { .. }) => {
                unreachable!("pairwise-compatible system must be solvable")
            }
            Err(PresentationError::TooLarge { .. }) => None,
            Err(e) => return Err(e),
        };

        let detail = if notes.is_empty() {
            "all congruence pairs compatible (verified exactly)".to_string()
        } else {
            format!("all congruence pairs compatible; {}", notes.join("; "))
        };
        Ok(RealizabilityReport { realizable: true, exact, witness, detail })
    }
}

fn conflict(msg: String) -> RealizabilityReport {
    RealizabilityReport { realizable: false, exact: true, witness: None, detail: msg }
}

enum PairVerdict {
    Ok,
    Conflict(String),
    Truncated,
}

/// The single value a family eventually sticks at, if any.
fn constant_value(family: &ParamFamily) -> Option<u64> {
    match *family {
        ParamFamily::Const(k) => Some(k),
        ParamFamily::Linear(0, b) => Some(b),
        ParamFamily::Geometric(a, 1) => Some(a),
        _ => None,
    }
}

fn congruent(a: i64, b: i64, modulus: u64) -> bool {
    if modulus == 0 {
        return a == b;
    }
    (a as i128 - b as i128).rem_euclid(modulus as i128) == 0
}

/// Check `r = c (mod gcd(g(n), m))` for every index of the tail. Exact for
/// every family kind.
fn check_value_vs_tail(m: u64, r: i64, tail: &TailRule) -> Result<PairVerdict, PresentationError> {
    let c = tail.offset;
    let required: u64 = if let Some(k) = constant_value(&tail.family) {
        gcd(k, m)
    } else {
        match tail.family {
            ParamFamily::Linear(a, b) => linear_gcd_lcm(a, b, m),
            ParamFamily::Geometric(a, ratio) => {
                // gcd(a * ratio^n, m) is non-decreasing in n and stabilizes;
                // every intermediate condition is implied by the stable one,
                // but check each step to report the earliest conflicting index
                let mut prev: Option<u64> = None;
                let mut n = tail.start;
                loop {
                    let x = mul_mod_u64(a % m, pow_mod(ratio, n, m), m);
                    let d = if x == 0 { m } else { gcd(x, m) };
                    if !congruent(r, c, d) {
                        return Ok(PairVerdict::Conflict(format!(
                            "{r} mod {m} and tail {tail} disagree modulo {d} at index {n}"
                        )));
                    }
                    if prev == Some(d) {
                        return Ok(PairVerdict::Ok);
                    }
                    prev = Some(d);
                    n += 1;
                }
            }
            ParamFamily::Const(_) => unreachable!("covered by constant_value"),
        }
    };
    if congruent(r, c, required) {
        Ok(PairVerdict::Ok)
    } else {
        Ok(PairVerdict::Conflict(format!(
            "{r} mod {m} and tail {tail} disagree modulo {required}"
        )))
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// lcm over n of gcd(a*n + b, m), for a >= 1: the tightest single modulus the
/// linear family imposes against m. Computed per prime power of m.
fn linear_gcd_lcm(a: u64, b: u64, m: u64) -> u64 {
    let mut out: u64 = 1;
    for (&p, &e) in &factorize(m) {
        let alpha = valuation(a, p);
        let cap = if b == 0 {
            e // a*n can be divisible by arbitrarily high powers
        } else {
            let beta = valuation(b, p);
            if beta >= alpha {
                e
            } else {
                beta.min(e)
            }
        };
        out *= p.pow(cap);
    }
    out
}

fn check_tail_vs_tail(t1: &TailRule, t2: &TailRule) -> Result<PairVerdict, PresentationError> {
    let (c1, c2) = (t1.offset, t2.offset);
    // both eventually constant: a single modulus pair
    if let (Some(k1), Some(k2)) = (constant_value(&t1.family), constant_value(&t2.family)) {
        let d = gcd(k1, k2);
        return Ok(if congruent(c1, c2, d) {
            PairVerdict::Ok
        } else {
            PairVerdict::Conflict(format!("tails {t1} and {t2} disagree modulo {d}"))
        });
    }
    // one constant: same as a value-vs-tail check
    if let Some(k) = constant_value(&t1.family) {
        return check_value_vs_tail(k, c1, t2);
    }
    if let Some(k) = constant_value(&t2.family) {
        return check_value_vs_tail(k, c2, t1);
    }
    // identical unbounded families share arbitrarily large moduli
    if t1.family == t2.family {
        return Ok(if c1 == c2 {
            PairVerdict::Ok
        } else {
            PairVerdict::Conflict(format!(
                "tails {t1} and {t2} run over the same moduli with different offsets"
            ))
        });
    }
    match (&t1.family, &t2.family) {
        (ParamFamily::Geometric(a1, r1), ParamFamily::Geometric(a2, r2)) => {
            if gcd(*r1, *r2) > 1 {
                // a shared ratio prime makes the common divisors unbounded
                return Ok(if c1 == c2 {
                    PairVerdict::Ok
                } else {
                    PairVerdict::Conflict(format!(
                        "tails {t1} and {t2} share unbounded common divisors but differ"
                    ))
                });
            }
            // coprime ratios: the supremum of gcd(a1*r1^n, a2*r2^k) is finite
            // and every pairwise condition is implied by the one modulo it
            let mut primes = factorize(*a1);
            for (p, e) in factorize(*a2) {
                let entry = primes.entry(p).or_insert(0);
                *entry = (*entry).max(e);
            }
            let mut sup: u128 = 1;
            for (&p, _) in &primes {
                let f1 = if *r1 % p == 0 { u32::MAX } else { valuation(*a1, p) };
                let f2 = if *r2 % p == 0 { u32::MAX } else { valuation(*a2, p) };
                sup *= (p as u128).pow(f1.min(f2));
            }
            // offsets differ by less than 2^65, so against a larger modulus
            // congruence means equality
            let ok = if sup > u64::MAX as u128 {
                c1 == c2
            } else {
                congruent(c1, c2, sup as u64)
            };
            Ok(if ok {
                PairVerdict::Ok
            } else {
                PairVerdict::Conflict(format!("tails {t1} and {t2} disagree modulo {sup}"))
            })
        }
        // a non-constant linear family against a different unbounded family:
        // verify a truncation exactly; a violation is a definite conflict
        _ => {
            for n in t1.start..t1.start + TAIL_TRUNCATION {
                for k in t2.start..t2.start + TAIL_TRUNCATION {
                    let (Some(g), Some(h)) = (t1.family.eval(n), t2.family.eval(k)) else {
                        continue;
                    };
                    let d = gcd(g, h);
                    if !congruent(c1, c2, d) {
                        return Ok(PairVerdict::Conflict(format!(
                            "tails {t1} and {t2} disagree modulo {d} (indices {n}, {k})"
                        )));
                    }
                }
            }
            Ok(PairVerdict::Truncated)
        }
    }
}
