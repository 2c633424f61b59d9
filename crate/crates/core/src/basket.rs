//! Baskets of terminal quotient singularities and their numerical invariants.
//!
//! A singularity of type `1/r(1, -1, b)` is recorded as the pair `(b, r)`
//! with `0 < b <= r/2` and `gcd(b, r) = 1`. A [`Basket`] is a multiset of such
//! pairs kept in canonical order: slope `b/r` descending, so that equal
//! baskets have identical representations and hash alike.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One singularity type `(b, r)` with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub b: u32,
    pub r: u32,
    pub mult: u32,
}

impl Pair {
    pub fn new(b: u32, r: u32, mult: u32) -> Self {
        Pair { b, r, mult }
    }

    /// The singularity type without its multiplicity.
    pub fn kind(&self) -> (u32, u32) {
        (self.b, self.r)
    }
}

/// Compares the slopes `b1/r1` and `b2/r2`.
pub fn cmp_slope(b1: u32, r1: u32, b2: u32, r2: u32) -> Ordering {
    (u64::from(b1) * u64::from(r2)).cmp(&(u64::from(b2) * u64::from(r1)))
}

/// `Δⁿ(b, r) = δbn − (δ² + δ)r/2` with `δ = ⌊bn/r⌋`.
///
/// Nonnegative for every `0 < b < r` and `n >= 1`.
pub fn delta_pair(b: u32, r: u32, n: u32) -> i64 {
    let (b, r, n) = (i64::from(b), i64::from(r), i64::from(n));
    let d = (b * n).div_euclid(r);
    d * b * n - (d * d + d) * r / 2
}

/// Determinant `b1·r2 − b2·r1` of two singularity types.
pub fn determinant(e1: (u32, u32), e2: (u32, u32)) -> i64 {
    i64::from(e1.0) * i64::from(e2.1) - i64::from(e2.0) * i64::from(e1.1)
}

/// Whether `e1, e2` form a prime packing, together with its level `r1 + r2`.
pub fn is_prime_packing(e1: (u32, u32), e2: (u32, u32)) -> (bool, u32) {
    (determinant(e1, e2).abs() == 1, e1.1 + e2.1)
}

/// A prime packing available inside a basket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePacking {
    pub first: (u32, u32),
    pub second: (u32, u32),
    pub merged: (u32, u32),
    pub level: u32,
}

/// A canonical multiset of singularity types.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "RawBasket", into = "RawBasket")]
pub struct Basket {
    pairs: Vec<Pair>,
}

/// Wire form `{"pairs": [[b, r, mult], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBasket {
    pub pairs: Vec<(u32, u32, u32)>,
}

impl TryFrom<RawBasket> for Basket {
    type Error = Error;
    fn try_from(raw: RawBasket) -> Result<Basket> {
        Basket::canonicalize(&raw.pairs)
    }
}

impl From<Basket> for RawBasket {
    fn from(b: Basket) -> RawBasket {
        RawBasket {
            pairs: b.pairs.iter().map(|p| (p.b, p.r, p.mult)).collect(),
        }
    }
}

impl Basket {
    pub fn empty() -> Self {
        Basket { pairs: Vec::new() }
    }

    /// Builds a canonical basket from raw `(b, r, mult)` triples.
    ///
    /// Non-coprime entries `(kb, kr)` become `k × (b, r)`; this leaves `σ`,
    /// `σ′` and every `Δⁿ` unchanged. Entries with `b/r > 1/2` are rejected.
    pub fn canonicalize(raw: &[(u32, u32, u32)]) -> Result<Basket> {
        let mut acc: Vec<Pair> = Vec::with_capacity(raw.len());
        for &(b, r, mult) in raw {
            if b == 0 || r == 0 || mult == 0 || b >= r {
                return Err(Error::InvalidPair { b, r, mult });
            }
            let g = b.gcd(&r);
            let (b0, r0) = (b / g, r / g);
            if 2 * b0 > r0 {
                return Err(Error::SlopeAboveHalf { b: b0, r: r0 });
            }
            acc.push(Pair::new(b0, r0, mult * g));
        }
        Ok(Basket::from_reduced(acc))
    }

    /// Parses and canonicalizes in one step; panics on invalid input.
    ///
    /// Meant for fixtures: `Basket::of(&[(1, 2, 5), (3, 7, 1)])`.
    pub fn of(raw: &[(u32, u32, u32)]) -> Basket {
        Basket::canonicalize(raw).expect("invalid basket literal")
    }

    /// Sorts and merges already reduced pairs.
    fn from_reduced(mut pairs: Vec<Pair>) -> Basket {
        pairs.sort_by(|x, y| cmp_slope(y.b, y.r, x.b, x.r).then(x.r.cmp(&y.r)));
        let mut out: Vec<Pair> = Vec::with_capacity(pairs.len());
        for p in pairs {
            match out.last_mut() {
                Some(last) if last.kind() == p.kind() => last.mult += p.mult,
                _ => out.push(p),
            }
        }
        Basket { pairs: out }
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pair> {
        self.pairs.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of distinct singularity types.
    pub fn distinct(&self) -> usize {
        self.pairs.len()
    }

    /// Number of singularities counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.pairs.iter().map(|p| u64::from(p.mult)).sum()
    }

    /// Multiplicity of `(b, r)`, zero when absent.
    pub fn mult_of(&self, kind: (u32, u32)) -> u32 {
        self.pairs
            .iter()
            .find(|p| p.kind() == kind)
            .map_or(0, |p| p.mult)
    }

    pub fn max_r(&self) -> u32 {
        self.pairs.iter().map(|p| p.r).max().unwrap_or(1)
    }

    /// `B1 ∪ B2`: multiplicities add entrywise.
    pub fn union(&self, other: &Basket) -> Basket {
        let mut all = self.pairs.clone();
        all.extend_from_slice(&other.pairs);
        Basket::from_reduced(all)
    }

    /// Applies signed multiplicity changes to reduced types; `None` if any
    /// multiplicity would go negative.
    pub fn adjusted(&self, changes: &[((u32, u32), i64)]) -> Option<Basket> {
        let mut pairs: Vec<(u32, u32, i64)> =
            self.pairs.iter().map(|p| (p.b, p.r, i64::from(p.mult))).collect();
        for &((b, r), k) in changes {
            match pairs.iter_mut().find(|(pb, pr, _)| *pb == b && *pr == r) {
                Some(entry) => entry.2 += k,
                None => pairs.push((b, r, k)),
            }
        }
        let mut out = Vec::with_capacity(pairs.len());
        for (b, r, m) in pairs {
            match m.cmp(&0) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push(Pair::new(b, r, u32::try_from(m).ok()?)),
            }
        }
        Some(Basket::from_reduced(out))
    }

    /// `Δⁿ(B)`, multiplicity weighted.
    pub fn delta(&self, n: u32) -> i64 {
        self.pairs
            .iter()
            .map(|p| i64::from(p.mult) * delta_pair(p.b, p.r, n))
            .sum()
    }

    /// `σ(B) = Σ b`.
    pub fn sigma(&self) -> i64 {
        self.pairs.iter().map(|p| i64::from(p.mult) * i64::from(p.b)).sum()
    }

    /// `σ′(B) = Σ b²/r`.
    pub fn sigma_prime(&self) -> Rational {
        self.pairs
            .iter()
            .map(|p| {
                let b = i64::from(p.b);
                Rational::new(i64::from(p.mult) * b * b, i64::from(p.r))
            })
            .sum()
    }

    /// Riemann–Roch correction `l(m) = Σ_Q Σ_{j=1}^{m−1} j̄b(r − j̄b)/(2r)`,
    /// where `j̄b` is the least residue of `jb` mod `r`.
    pub fn rr_correction(&self, m: u32) -> Rational {
        self.pairs
            .iter()
            .map(|p| {
                let (b, r) = (i64::from(p.b), i64::from(p.r));
                let s: i64 = (1..i64::from(m))
                    .map(|j| {
                        let res = (j * b).rem_euclid(r);
                        res * (r - res)
                    })
                    .sum();
                Rational::new(i64::from(p.mult) * s, 2 * r)
            })
            .sum()
    }

    /// Replaces one copy each of `e1` and `e2` by `(b1 + b2, r1 + r2)`.
    ///
    /// Packing two copies of one type gives `(2b, 2r)`, which reduces back to
    /// `2 × (b, r)`: an identity packing.
    pub fn pack(&self, e1: (u32, u32), e2: (u32, u32)) -> Result<Basket> {
        let need = if e1 == e2 { 2 } else { 1 };
        for e in [e1, e2] {
            if self.mult_of(e) < need {
                return Err(Error::MissingEntry { b: e.0, r: e.1 });
            }
        }
        let (b, r) = (e1.0 + e2.0, e1.1 + e2.1);
        let g = b.gcd(&r);
        let merged = (b / g, r / g);
        let out = self
            .adjusted(&[(e1, -1), (e2, -1), (merged, i64::from(g))])
            .expect("presence checked above");
        Ok(out)
    }

    /// Every prime packing between two distinct entries, ordered by the
    /// slope of the merged type (descending), then by level.
    pub fn prime_packings(&self) -> Vec<PrimePacking> {
        let mut out = Vec::new();
        for (i, p) in self.pairs.iter().enumerate() {
            for q in &self.pairs[i + 1..] {
                let (prime, level) = is_prime_packing(p.kind(), q.kind());
                if prime {
                    out.push(PrimePacking {
                        first: p.kind(),
                        second: q.kind(),
                        merged: (p.b + q.b, p.r + q.r),
                        level,
                    });
                }
            }
        }
        out.sort_by(|x, y| {
            cmp_slope(y.merged.0, y.merged.1, x.merged.0, x.merged.1)
                .then(x.level.cmp(&y.level))
                .then(x.first.cmp(&y.first))
        });
        out
    }

    /// Prime packings of exactly the given level.
    pub fn prime_packing_candidates(&self, level: u32) -> Vec<PrimePacking> {
        self.prime_packings()
            .into_iter()
            .filter(|p| p.level == level)
            .collect()
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if p.mult > 1 {
                write!(f, "{}x", p.mult)?;
            }
            write!(f, "({},{})", p.b, p.r)?;
        }
        f.write_str("}")
    }
}

/// Parses the display form, e.g. `{5x(1,2), (3,7), 3x(2,5)}`.
impl FromStr for Basket {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Basket, String> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut raw = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| format!("expected '(' in {s:?}"))?;
            let close = rest.find(')').ok_or_else(|| format!("expected ')' in {s:?}"))?;
            let prefix = rest[..open].trim().trim_end_matches(['x', '×', '*']).trim();
            let mult = if prefix.is_empty() {
                1
            } else {
                prefix.parse::<u32>().map_err(|e| format!("{prefix:?}: {e}"))?
            };
            let (b, r) = rest[open + 1..close]
                .split_once(',')
                .ok_or_else(|| format!("expected 'b,r' in {s:?}"))?;
            let b = b.trim().parse::<u32>().map_err(|e| e.to_string())?;
            let r = r.trim().parse::<u32>().map_err(|e| e.to_string())?;
            raw.push((b, r, mult));
            rest = rest[close + 1..].trim().trim_start_matches(',').trim();
        }
        Basket::canonicalize(&raw).map_err(|e| e.to_string())
    }
}
