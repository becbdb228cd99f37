//! Exact nonnegative dyadic rationals `num / 2^exp`, the value domain of the
//! ultrametric and of every epsilon/delta in the equicontinuity API.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A nonnegative dyadic rational `num / 2^exp`, kept in lowest terms
/// (`num` odd unless the value is zero, and zero is `0 / 2^0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: u64, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Dyadic {
        Dyadic { num: 1, exp: k }
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        while self.num % 2 == 0 && self.exp > 0 {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// Multiply by `2^-k` (shrink by k binary orders of magnitude).
    pub fn scale_down(&self, k: u32) -> Dyadic {
        if self.num == 0 {
            Dyadic::ZERO
        } else {
            Dyadic { num: self.num, exp: self.exp + k }
        }
    }

    /// Largest `2^-j` with `3 * 2^-j <= self`, i.e. the largest power-of-two
    /// dyadic not exceeding a third of `self`. Returns None for zero.
    pub fn third_pow2(&self) -> Option<Dyadic> {
        if self.num == 0 {
            return None;
        }
        // want smallest j with 3 * 2^exp <= num * 2^j
        let lhs = 3u128 << self.exp;
        let mut j = 0u32;
        while (self.num as u128) << j < lhs {
            j += 1;
        }
        Some(Dyadic::pow2_neg(j))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        match (self.num, other.num) {
            (0, 0) => Ordering::Equal,
            (0, _) => Ordering::Less,
            (_, 0) => Ordering::Greater,
            _ => {
                // compare binary magnitudes first so exponent gaps beyond the
                // shift width of u128 never arise
                let a = 64 - self.num.leading_zeros() as i64 - self.exp as i64;
                let b = 64 - other.num.leading_zeros() as i64 - other.exp as i64;
                if a != b {
                    return a.cmp(&b);
                }
                // equal magnitude implies the exponent gap equals the bit
                // length gap, which is below 64
                if self.exp >= other.exp {
                    (self.num as u128).cmp(&((other.num as u128) << (self.exp - other.exp)))
                } else {
                    ((self.num as u128) << (other.exp - self.exp)).cmp(&(other.num as u128))
                }
            }
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// Error parsing a dyadic literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid dyadic rational `{0}` (expected forms: `a`, `a/2^k`, or `a/b` with b a power of two)")]
pub struct ParseDyadicError(pub String);

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Dyadic, ParseDyadicError> {
        let bad = || ParseDyadicError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let num: u64 = s.parse().map_err(|_| bad())?;
                Ok(Dyadic::new(num, 0))
            }
            Some((a, b)) => {
                let num: u64 = a.trim().parse().map_err(|_| bad())?;
                let b = b.trim();
                let exp = if let Some(k) = b.strip_prefix("2^") {
                    k.parse::<u32>().map_err(|_| bad())?
                } else {
                    let den: u64 = b.parse().map_err(|_| bad())?;
                    if den == 0 || !den.is_power_of_two() {
                        return Err(bad());
                    }
                    den.trailing_zeros()
                };
                if exp > 4096 {
                    return Err(bad());
                }
                Ok(Dyadic::new(num, exp))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_normalization() {
        assert!(Dyadic::pow2_neg(3) < Dyadic::pow2_neg(2));
        assert_eq!(Dyadic::new(4, 3), Dyadic::new(1, 1));
        assert!(Dyadic::ZERO < Dyadic::pow2_neg(60));
        assert!(Dyadic::ONE > Dyadic::new(3, 2));
        assert!(Dyadic::new(3, 2) > Dyadic::pow2_neg(1));
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["1", "0", "1/2^4", "3/2^2", "5/2^7"] {
            let d: Dyadic = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!("1/4".parse::<Dyadic>().unwrap(), Dyadic::pow2_neg(2));
        assert_eq!("2/2^2".parse::<Dyadic>().unwrap(), Dyadic::pow2_neg(1));
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("x/2^2".parse::<Dyadic>().is_err());
        assert!("".parse::<Dyadic>().is_err());
    }

    #[test]
    fn third_rounding() {
        // largest power of two <= (1/4)/3 = 1/12 is 1/16
        assert_eq!(Dyadic::pow2_neg(2).third_pow2(), Some(Dyadic::pow2_neg(4)));
        // (1)/3 -> 1/4
        assert_eq!(Dyadic::ONE.third_pow2(), Some(Dyadic::pow2_neg(2)));
        // 3/2^2 / 3 = 1/4 exactly
        assert_eq!(Dyadic::new(3, 2).third_pow2(), Some(Dyadic::pow2_neg(2)));
        assert_eq!(Dyadic::ZERO.third_pow2(), None);
    }
}
