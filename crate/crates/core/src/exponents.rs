//! Exact arithmetic on extended summability exponents in `[1, inf]`.
//!
//! All exponent arithmetic is performed on rationals (plus an infinity
//! sentinel) so that classification boundaries such as `p = nq` or `q = p'`
//! are decided exactly, never through floating point.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DmlError, Result};

pub type Rat = Ratio<i64>;

/// An exponent in `[1, inf]`, stored exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(Rat),
    Infinity,
}

impl Exponent {
    /// Exact rational exponent `num/den`. Rejects values below 1.
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(DmlError::InvalidExponent(format!("{num}/{den}")));
        }
        let r = Rat::new(num, den);
        if r < Rat::one() {
            return Err(DmlError::ExponentOutOfRange(r.to_string()));
        }
        Ok(Exponent::Finite(r))
    }

    pub fn integer(v: i64) -> Result<Self> {
        Self::rational(v, 1)
    }

    pub const fn infinity() -> Self {
        Exponent::Infinity
    }

    pub fn one() -> Self {
        Exponent::Finite(Rat::one())
    }

    pub fn two() -> Self {
        Exponent::Finite(Rat::from_integer(2))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Exponent::Finite(r) if r.is_one())
    }

    /// `1/p`, with `1/inf = 0` exactly.
    pub fn reciprocal(&self) -> Rat {
        match self {
            Exponent::Finite(r) => r.recip(),
            Exponent::Infinity => Rat::zero(),
        }
    }

    /// Builds the exponent whose reciprocal is `inv`; `inv = 0` gives infinity.
    /// Rejects reciprocals outside `[0, 1]`.
    pub fn from_reciprocal(inv: Rat) -> Result<Self> {
        if inv.is_zero() {
            Ok(Exponent::Infinity)
        } else if inv.is_negative() || inv > Rat::one() {
            Err(DmlError::ExponentOutOfRange(format!("1/({inv})")))
        } else {
            Ok(Exponent::Finite(inv.recip()))
        }
    }

    /// The conjugate exponent `p'` with `1/p + 1/p' = 1`.
    pub fn conjugate(&self) -> Exponent {
        // 1/p' = 1 - 1/p lies in [0, 1] for every valid p, so this cannot fail.
        Exponent::from_reciprocal(Rat::one() - self.reciprocal()).expect("conjugate in range")
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Exponent::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn rat(&self) -> Option<Rat> {
        match self {
            Exponent::Finite(r) => Some(*r),
            Exponent::Infinity => None,
        }
    }

    /// Exact half of the exponent, used for `p'/2`. Rejects results below 1.
    pub fn halved(&self) -> Result<Exponent> {
        match self {
            Exponent::Infinity => Ok(Exponent::Infinity),
            Exponent::Finite(r) => {
                let h = r / Rat::from_integer(2);
                if h < Rat::one() {
                    Err(DmlError::ExponentOutOfRange(h.to_string()))
                } else {
                    Ok(Exponent::Finite(h))
                }
            }
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Exponent::Infinity, Exponent::Infinity) => std::cmp::Ordering::Equal,
            (Exponent::Infinity, _) => std::cmp::Ordering::Greater,
            (_, Exponent::Infinity) => std::cmp::Ordering::Less,
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => write!(f, "inf"),
            Exponent::Finite(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl FromStr for Exponent {
    type Err = DmlError;

    /// Grammar used across the whole artifact: `inf` for infinity, `a/b` for
    /// rationals, and decimal literals parsed as exact decimal fractions.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" || s.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinity);
        }
        let r = parse_rational(s)?;
        if r < Rat::one() {
            return Err(DmlError::ExponentOutOfRange(s.to_string()));
        }
        Ok(Exponent::Finite(r))
    }
}

/// Parses `a/b`, integer, or decimal literals into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || DmlError::InvalidExponent(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad())?;
        let d: i64 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let i: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let scale = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(bad)?;
        return Ok(Rat::from_integer(i) + Rat::new(sign * f, scale));
    }
    let i: i64 = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(i))
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Case split for the space of continuous diagonal operators from
/// `lp` to `lq`: the sup-norm space when `p <= nq`, otherwise `lr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HolderResult {
    /// `p <= nq`: the coefficient space is `l_inf`.
    BoundedCase,
    /// `p > nq`: the coefficient space is `l_r` with `1/r = 1/q - n/p`.
    FiniteExponent(Exponent),
}

/// Decides the Hoelder case split and computes `r` exactly when `p > nq`.
pub fn holder_r(p: Exponent, q: Exponent, n: usize) -> Result<HolderResult> {
    if n == 0 {
        return Err(DmlError::InvalidArgument("arity must be >= 1".into()));
    }
    let n_rat = Rat::from_integer(n as i64);
    // 1/r = 1/q - n/p; the bounded case is exactly 1/q - n/p <= 0,
    // i.e. p <= nq with n*inf = inf.
    let inv = q.reciprocal() - n_rat * p.reciprocal();
    if inv <= Rat::zero() {
        Ok(HolderResult::BoundedCase)
    } else {
        Ok(HolderResult::FiniteExponent(Exponent::from_reciprocal(inv)?))
    }
}

/// The nuclearity exponent `t = max((n/p' + 1/q)^{-1}, 1)`, exact.
pub fn nuclear_t(p: Exponent, q: Exponent, n: usize) -> Result<Exponent> {
    if n == 0 {
        return Err(DmlError::InvalidArgument("arity must be >= 1".into()));
    }
    let n_rat = Rat::from_integer(n as i64);
    let inv = n_rat * p.conjugate().reciprocal() + q.reciprocal();
    if inv >= Rat::one() {
        Ok(Exponent::one())
    } else if inv.is_zero() {
        // p = 1 and q = inf: the unconstrained case.
        Ok(Exponent::Infinity)
    } else {
        Ok(Exponent::Finite(inv.recip()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exp(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_fixed_points() {
        assert_eq!(exp("2").conjugate(), exp("2"));
        assert_eq!(exp("1").conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), exp("1"));
        assert_eq!(exp("4").conjugate(), exp("4/3"));
    }

    #[test]
    fn rejects_subunit_exponents() {
        assert!("1/2".parse::<Exponent>().is_err());
        assert!("0.99".parse::<Exponent>().is_err());
        assert!(Exponent::rational(2, 3).is_err());
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(exp("1.5"), exp("3/2"));
        assert_eq!(exp("2.25"), exp("9/4"));
        assert_eq!(parse_rational("0.6").unwrap(), Ratio::new(3, 5));
    }

    #[test]
    fn holder_r_cases() {
        // 1/r = 1 - 2/6 = 2/3
        assert_eq!(
            holder_r(exp("6"), exp("1"), 2).unwrap(),
            HolderResult::FiniteExponent(exp("3/2"))
        );
        assert_eq!(holder_r(exp("2"), exp("2"), 3).unwrap(), HolderResult::BoundedCase);
        assert_eq!(
            holder_r(Exponent::Infinity, exp("1"), 3).unwrap(),
            HolderResult::FiniteExponent(exp("1"))
        );
        // boundary p = nq goes to the bounded branch
        assert_eq!(holder_r(exp("4"), exp("2"), 2).unwrap(), HolderResult::BoundedCase);
    }

    #[test]
    fn nuclear_t_examples() {
        // (2/2 + 1/2)^{-1} = 2/3 < 1, so t = 1
        assert_eq!(nuclear_t(exp("2"), exp("2"), 2).unwrap(), exp("1"));
        // 2/4 + 1/4 = 3/4
        assert_eq!(nuclear_t(exp("4/3"), exp("4"), 2).unwrap(), exp("4/3"));
        // p = 1 makes n/p' = 0, so t = q
        assert_eq!(nuclear_t(exp("1"), exp("3"), 5).unwrap(), exp("3"));
        // p = 1, q = inf
        assert_eq!(nuclear_t(exp("1"), Exponent::Infinity, 2).unwrap(), Exponent::Infinity);
    }

    #[test]
    fn holder_r_boundary_blowup() {
        // as p decreases to nq from above, r grows without bound
        let q = exp("1");
        let n = 2;
        let mut last = 0.0;
        for k in 1..6 {
            let p = Exponent::Finite(Rat::from_integer(2) + Rat::new(1, 10i64.pow(k)));
            match holder_r(p, q, n).unwrap() {
                HolderResult::FiniteExponent(r) => {
                    assert!(r.as_f64() > last);
                    last = r.as_f64();
                }
                HolderResult::BoundedCase => panic!("p > nq must give a finite r"),
            }
        }
        assert!(last > 1e4);
    }

    fn exponent_strategy() -> impl Strategy<Value = Exponent> {
        prop_oneof![
            (1i64..200, 1i64..200)
                .prop_map(|(a, b)| Exponent::rational(a.max(b), a.min(b)).unwrap()),
            Just(Exponent::Infinity),
        ]
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(p in exponent_strategy()) {
            prop_assert_eq!(p.conjugate().conjugate(), p);
        }

        #[test]
        fn conjugate_identity_exact(p in exponent_strategy()) {
            prop_assert_eq!(p.reciprocal() + p.conjugate().reciprocal(), Rat::one());
        }

        #[test]
        fn nuclear_t_at_most_q(p in exponent_strategy(), q in exponent_strategy(), n in 1usize..5) {
            let t = nuclear_t(p, q, n).unwrap();
            prop_assert!(t <= q.max(Exponent::one()));
        }
    }
}
