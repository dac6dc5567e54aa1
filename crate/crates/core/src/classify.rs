//! The classification engine: for each ideal (nuclear, integral, extendible,
//! bounded) the exact sequence space of admissible diagonals, the coincidence
//! tables, power-sequence membership, and empirical growth scans of
//! finite-section norms.

use serde::Serialize;
use std::fmt;

use crate::error::{DmlError, Result};
use crate::exponents::{holder_r, nuclear_t, Exponent, HolderResult, Rat};
use crate::multilinear::DiagonalOperator;
use crate::norms::{diagonal_norm_exact, lp_norm};

/// A sequence space: `l_u`, `c0` (strictly between every `l_u` and `l_inf`),
/// `l_inf`, or the unresolved bracket `[l_lower, l_{upper+eps}]` meaning the
/// space contains `l_lower` and is contained in `l_{upper+eps}` for every
/// `eps > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceTag {
    Lu { exponent: Exponent },
    C0,
    LInf,
    Bracket { lower: Exponent, upper_base: Exponent },
}

impl SpaceTag {
    /// `l_u`, normalizing `u = inf` to the `LInf` tag.
    pub fn lu(u: Exponent) -> SpaceTag {
        if u.is_infinite() {
            SpaceTag::LInf
        } else {
            SpaceTag::Lu { exponent: u }
        }
    }

    /// Containment `self` inside `other`; brackets compare through their
    /// known bounds (upper bound on the left, lower bound on the right).
    pub fn contained_in(&self, other: &SpaceTag) -> bool {
        use SpaceTag::*;
        match (self, other) {
            (Lu { exponent: u }, Lu { exponent: v }) => u <= v,
            (Lu { .. }, C0) | (Lu { .. }, LInf) => true,
            (C0, C0) | (C0, LInf) | (LInf, LInf) => true,
            (C0, Lu { .. }) | (LInf, Lu { .. }) | (LInf, C0) => false,
            // l_{upper+eps} sits inside any strictly larger l_v
            (Bracket { upper_base, .. }, Lu { exponent: v }) => upper_base < v,
            (Bracket { .. }, C0) | (Bracket { .. }, LInf) => true,
            (Bracket { .. }, Bracket { .. }) => false,
            (a, Bracket { lower, .. }) => a.contained_in(&SpaceTag::lu(*lower)),
        }
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTag::Lu { exponent } => {
                if exponent.rat().map(|r| r.is_integer()).unwrap_or(false) {
                    write!(f, "ℓ{exponent}")
                } else {
                    write!(f, "ℓ_{{{exponent}}}")
                }
            }
            SpaceTag::C0 => write!(f, "c0"),
            SpaceTag::LInf => write!(f, "ℓ∞"),
            SpaceTag::Bracket { lower, upper_base } => {
                write!(f, "[{}, ℓ_{{{upper_base}+ε}}]", SpaceTag::lu(*lower))
            }
        }
    }
}

/// Relation between two adjacent spaces in the ideal chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strictness {
    Equal,
    Strict,
    Unresolved,
}

/// The four admissible-diagonal spaces plus the strictness of each adjacent
/// inclusion (nuclear into integral into extendible into bounded).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub nuclear: SpaceTag,
    pub integral: SpaceTag,
    pub extendible: SpaceTag,
    pub bounded: SpaceTag,
    pub nuclear_vs_integral: Strictness,
    pub integral_vs_extendible: Strictness,
    pub extendible_vs_bounded: Strictness,
}

impl Classification {
    pub fn nested(&self) -> bool {
        self.nuclear.contained_in(&self.integral)
            && self.integral.contained_in(&self.extendible)
            && self.extendible.contained_in(&self.bounded)
    }

    pub fn tag(&self, ideal: Ideal) -> SpaceTag {
        match ideal {
            Ideal::Nuclear => self.nuclear,
            Ideal::Integral => self.integral,
            Ideal::Extendible => self.extendible,
            Ideal::Bounded => self.bounded,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ideal {
    Nuclear,
    Integral,
    Extendible,
    Bounded,
}

fn relation(a: &SpaceTag, b: &SpaceTag) -> Strictness {
    if a == b { Strictness::Equal } else { Strictness::Strict }
}

/// The admissible-diagonal spaces for n-linear operators `lp -> lq`, by
/// exhaustive cells over `(p, q)`. The nuclear/integral space is `l_t`
/// throughout (with the `c0` exception at `p = 1, q = inf`); the bounded
/// space follows the exact Hoelder closed form.
pub fn classify_operators(p: Exponent, q: Exponent, n: usize) -> Result<Classification> {
    if n == 0 {
        return Err(DmlError::InvalidArgument("arity must be >= 1".into()));
    }
    let t = nuclear_t(p, q, n)?;
    let nuclear =
        if p.is_one() && q.is_infinite() { SpaceTag::C0 } else { SpaceTag::lu(t) };
    let integral = SpaceTag::lu(t);
    let p_dual = p.conjugate();
    let two = Exponent::two();
    let extendible = if p.is_one() {
        SpaceTag::LInf
    } else if p < two {
        if q.is_one() {
            SpaceTag::lu(p_dual.halved()?)
        } else if q.is_infinite() {
            SpaceTag::LInf
        } else if q > p_dual {
            SpaceTag::lu(q)
        } else {
            // the open region: l_q inside the space inside l_{p'+eps}
            SpaceTag::Bracket { lower: q, upper_base: p_dual }
        }
    } else {
        // 2 <= p <= inf: the extendible space is l_q in every sub-case
        SpaceTag::lu(q)
    };
    let bounded = match holder_r(p, q, n)? {
        HolderResult::BoundedCase => SpaceTag::LInf,
        HolderResult::FiniteExponent(r) => SpaceTag::lu(r),
    };
    let integral_vs_extendible = if matches!(extendible, SpaceTag::Bracket { .. }) {
        // l_t is strictly inside l_q (1/t = n/p' + 1/q > 1/q), which sits
        // inside the bracket
        Strictness::Strict
    } else {
        relation(&integral, &extendible)
    };
    let extendible_vs_bounded = if matches!(extendible, SpaceTag::Bracket { .. }) {
        // the bracket's upper leg l_{p'+eps} is strictly inside the bounded
        // space (l_inf, or l_r with r > p' in the n = 1 corner)
        Strictness::Strict
    } else {
        relation(&extendible, &bounded)
    };
    let c = Classification {
        nuclear,
        integral,
        extendible,
        bounded,
        nuclear_vs_integral: relation(&nuclear, &integral),
        integral_vs_extendible,
        extendible_vs_bounded,
    };
    debug_assert!(c.nested(), "nesting violated at p={p}, q={q}, n={n}: {c:?}");
    Ok(c)
}

/// The admissible-diagonal spaces for scalar n-linear forms on `lp`
/// (`n >= 2`; the `n = 2` and `n >= 3` sub-cases differ for `1 < p < 2`).
pub fn classify_forms(p: Exponent, n: usize) -> Result<Classification> {
    if n < 2 {
        return Err(DmlError::InvalidArgument(
            "form classification needs arity >= 2".into(),
        ));
    }
    let two = Exponent::two();
    let (nuclear, integral, extendible, bounded) = if p.is_one() {
        (SpaceTag::C0, SpaceTag::LInf, SpaceTag::LInf, SpaceTag::LInf)
    } else if p < two {
        let half_dual = SpaceTag::lu(p.conjugate().halved()?);
        if n == 2 {
            (half_dual, half_dual, half_dual, SpaceTag::LInf)
        } else {
            let pd = p.conjugate().rat().expect("p' finite for p > 1");
            let u = (pd / Rat::from_integer(n as i64)).max(Rat::from_integer(1));
            let small = SpaceTag::lu(Exponent::Finite(u));
            (small, small, half_dual, SpaceTag::LInf)
        }
    } else if p.is_infinite() {
        let one = SpaceTag::lu(Exponent::one());
        (one, one, one, one)
    } else {
        let one = SpaceTag::lu(Exponent::one());
        let pr = p.rat().expect("finite");
        let bounded = if Rat::from_integer(n as i64) < pr {
            SpaceTag::lu(Exponent::Finite(pr / (pr - Rat::from_integer(n as i64))))
        } else {
            SpaceTag::LInf
        };
        (one, one, one, bounded)
    };
    let c = Classification {
        nuclear,
        integral,
        extendible,
        bounded,
        nuclear_vs_integral: relation(&nuclear, &integral),
        integral_vs_extendible: relation(&integral, &extendible),
        extendible_vs_bounded: relation(&extendible, &bounded),
    };
    debug_assert!(c.nested(), "nesting violated at p={p}, n={n}: {c:?}");
    Ok(c)
}

/// Row of the nuclear-vs-integral coincidence table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Table1Row {
    NNeqI,
    NEqI,
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Table1Row::NNeqI => write!(f, "N ≠ I"),
            Table1Row::NEqI => write!(f, "N = I"),
        }
    }
}

/// Row of the integral/extendible/bounded coincidence table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Table2Row {
    IEqEEqL,
    IEqENeqL,
    INeqEEqL,
    INeqENeqL,
}

impl fmt::Display for Table2Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Table2Row::IEqEEqL => write!(f, "I = E = L"),
            Table2Row::IEqENeqL => write!(f, "I = E ≠ L"),
            Table2Row::INeqEEqL => write!(f, "I ≠ E = L"),
            Table2Row::INeqENeqL => write!(f, "I ≠ E ≠ L"),
        }
    }
}

/// Which coincidence-table rows `(p, q)` falls in. The rows do not depend on
/// the arity, so they are derived from the n = 2 classification.
pub fn coincidence_tables(p: Exponent, q: Exponent) -> Result<(Table1Row, Table2Row)> {
    let c = classify_operators(p, q, 2)?;
    let t1 = match c.nuclear_vs_integral {
        Strictness::Equal => Table1Row::NEqI,
        _ => Table1Row::NNeqI,
    };
    let t2 = match (c.integral_vs_extendible, c.extendible_vs_bounded) {
        (Strictness::Equal, Strictness::Equal) => Table2Row::IEqEEqL,
        (Strictness::Equal, _) => Table2Row::IEqENeqL,
        (_, Strictness::Equal) => Table2Row::INeqEEqL,
        _ => Table2Row::INeqENeqL,
    };
    Ok((t1, t2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Member,
    NonMember,
    Unresolved,
}

/// Whether `alpha(k) = k^{-s}` belongs to the tagged space, decided exactly
/// in rational arithmetic: in `l_u` iff `s > 1/u`, in `c0` iff `s > 0`, in
/// `l_inf` iff `s >= 0`; a bracket is decided through its two bounds and is
/// otherwise unresolved.
pub fn power_membership(s: Rat, tag: &SpaceTag) -> Result<Membership> {
    if s < Rat::from_integer(0) {
        return Err(DmlError::InvalidArgument(format!("decay must be >= 0, got {s}")));
    }
    let zero = Rat::from_integer(0);
    let one = Rat::from_integer(1);
    let in_lu = |u: &Exponent| -> Membership {
        match u.rat() {
            Some(ur) => {
                if s * ur > one { Membership::Member } else { Membership::NonMember }
            }
            None => Membership::Member, // l_inf: every s >= 0
        }
    };
    Ok(match tag {
        SpaceTag::Lu { exponent } => in_lu(exponent),
        SpaceTag::LInf => Membership::Member,
        SpaceTag::C0 => {
            if s > zero { Membership::Member } else { Membership::NonMember }
        }
        SpaceTag::Bracket { lower, upper_base } => {
            if in_lu(lower) == Membership::Member {
                Membership::Member
            } else if in_lu(upper_base) == Membership::NonMember {
                // not even in l_{upper}, hence in no l_{upper+eps}
                Membership::NonMember
            } else {
                Membership::Unresolved
            }
        }
    })
}

/// Ideals with an exact finite-section norm formula, usable in growth scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanIdeal {
    NuclearIntegral,
    Bounded,
}

pub const GROWTH_SLOPE_THRESHOLD: f64 = 0.02;

/// The dyadic default grid `2^4 .. 2^14`.
pub fn default_growth_grid() -> Vec<usize> {
    (4..=14).map(|m| 1usize << m).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthScan {
    pub ideal: ScanIdeal,
    pub s: String,
    pub grid: Vec<usize>,
    pub norms: Vec<f64>,
    /// least-squares slope of log(norm) vs log(N) over the tail half
    pub slope: f64,
    pub threshold: f64,
    pub bounded: bool,
    pub membership: Membership,
    /// `None` when membership is unresolved
    pub agree: Option<bool>,
}

/// Computes the exact ideal norm of the truncations of `T` with diagonal
/// `k^{-s}` on a dyadic grid, fits the log-log growth slope over the tail
/// half, and checks the boundedness verdict against `power_membership` on
/// the classified space (the integral tag for the nuclear/integral scan).
pub fn growth_scan(
    p: Exponent,
    q: Exponent,
    n: usize,
    ideal: ScanIdeal,
    s: Rat,
    grid: &[usize],
) -> Result<GrowthScan> {
    if grid.len() < 4 {
        return Err(DmlError::InvalidArgument("growth grid needs >= 4 points".into()));
    }
    let s_f = *s.numer() as f64 / *s.denom() as f64;
    if s_f < 0.0 {
        return Err(DmlError::InvalidArgument("decay must be >= 0".into()));
    }
    let classification = classify_operators(p, q, n)?;
    let tag = match ideal {
        ScanIdeal::NuclearIntegral => classification.integral,
        ScanIdeal::Bounded => classification.bounded,
    };
    let max_n = *grid.iter().max().unwrap();
    let alpha: Vec<f64> = (1..=max_n).map(|k| (k as f64).powf(-s_f)).collect();
    let mut norms = Vec::with_capacity(grid.len());
    for &m in grid {
        let op = DiagonalOperator::real(n, &alpha[..m], p, q)?;
        let value = match ideal {
            ScanIdeal::NuclearIntegral => {
                let t = nuclear_t(p, q, n)?;
                if p.is_one() && q.is_infinite() {
                    lp_norm(&op.alpha, Exponent::Infinity)
                } else {
                    lp_norm(&op.alpha, t)
                }
            }
            ScanIdeal::Bounded => diagonal_norm_exact(&op)?.value,
        };
        norms.push(value);
    }
    let tail = grid.len() / 2;
    let slope = fit_slope(&grid[tail..], &norms[tail..]);
    let bounded = slope < GROWTH_SLOPE_THRESHOLD;
    let membership = power_membership(s, &tag)?;
    let agree = match membership {
        Membership::Member => Some(bounded),
        Membership::NonMember => Some(!bounded),
        Membership::Unresolved => None,
    };
    Ok(GrowthScan {
        ideal,
        s: s.to_string(),
        grid: grid.to_vec(),
        norms,
        slope,
        threshold: GROWTH_SLOPE_THRESHOLD,
        bounded,
        membership,
        agree,
    })
}

fn fit_slope(ns: &[usize], norms: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(norms.iter())
        .map(|(&n, &v)| ((n as f64).ln(), v.max(f64::MIN_POSITIVE).ln()))
        .collect();
    let m = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    sxy / sxx
}
