//! Canonical sequences of prime unpackings.
//!
//! For each level `n` the basket `B⁽ⁿ⁾` keeps the entries whose slope lies in
//! the level set and splits every other entry across its two enclosing
//! neighbors. `B⁽⁰⁾` through `B⁽⁴⁾` coincide and consist of `(1, m)` entries
//! only. Passing from `B⁽ⁿ⁻¹⁾` to `B⁽ⁿ⁾` takes exactly `ε_n` prime packings,
//! all of level `n`.

use serde::{Deserialize, Serialize};

use crate::basket::Basket;
use crate::error::{Error, Result};
use crate::farey::{farey_level, new_fractions, Fraction, Position};

/// `B⁽⁰⁾`: each `(b, r)` with `n = ⌊r/b⌋` becomes
/// `(nb + b − r) × (1, n)` and `(r − nb) × (1, n + 1)`.
pub fn initial_basket(b: &Basket) -> Basket {
    let mut raw = Vec::new();
    for p in b.iter() {
        if p.b == 1 {
            raw.push((1, p.r, p.mult));
            continue;
        }
        let n = p.r / p.b;
        let lo = n * p.b + p.b - p.r;
        let hi = p.r - n * p.b;
        if lo > 0 {
            raw.push((1, n, lo * p.mult));
        }
        if hi > 0 {
            raw.push((1, n + 1, hi * p.mult));
        }
    }
    Basket::of(&raw)
}

/// `B⁽ⁿ⁾` computed directly from `B`.
pub fn step_basket(b: &Basket, n: u32) -> Basket {
    let level = farey_level(n, b.max_r());
    let mut raw = Vec::new();
    for p in b.iter() {
        let slope = Fraction { num: p.b, den: p.r };
        match level.neighbors(slope).expect("slopes of B lie above the cutoff") {
            Position::Member => raw.push((p.b, p.r, p.mult)),
            Position::Between { lower, upper } => {
                let (r, bb) = (i64::from(p.r), i64::from(p.b));
                let lo = r * i64::from(upper.num) - bb * i64::from(upper.den);
                let hi = -r * i64::from(lower.num) + bb * i64::from(lower.den);
                debug_assert!(lo > 0 && hi > 0);
                raw.push((lower.num, lower.den, lo as u32 * p.mult));
                raw.push((upper.num, upper.den, hi as u32 * p.mult));
            }
        }
    }
    Basket::of(&raw)
}

/// One prime packing type of level `n`: `lower + upper ↦ merged`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelPacking {
    pub merged: Fraction,
    pub lower: Fraction,
    pub upper: Fraction,
}

/// The packing types of level `n`, one per new fraction, largest slope first.
pub fn level_packings(n: u32) -> Vec<LevelPacking> {
    let prev = farey_level(n.saturating_sub(1), n);
    new_fractions(n)
        .into_iter()
        .map(|merged| match prev.neighbors(merged) {
            Ok(Position::Between { lower, upper }) => LevelPacking { merged, lower, upper },
            _ => unreachable!("new fractions are never members of the previous level"),
        })
        .collect()
}

/// Performs `count` packings `lower + upper ↦ merged` for each listed type.
pub fn pack_level(b: &Basket, moves: &[(LevelPacking, u32)]) -> Result<Basket> {
    let mut changes = Vec::with_capacity(3 * moves.len());
    for &(lp, k) in moves {
        if k == 0 {
            continue;
        }
        let k = i64::from(k);
        changes.push((lp.lower.pair(), -k));
        changes.push((lp.upper.pair(), -k));
        changes.push((lp.merged.pair(), k));
    }
    b.adjusted(&changes).ok_or_else(|| {
        let (lp, _) = moves
            .iter()
            .find(|(lp, k)| b.mult_of(lp.lower.pair()) < *k || b.mult_of(lp.upper.pair()) < *k)
            .copied()
            .unwrap_or((moves[0].0, 0));
        let short = if b.mult_of(lp.lower.pair()) < b.mult_of(lp.upper.pair()) {
            lp.lower
        } else {
            lp.upper
        };
        Error::MissingEntry { b: short.num, r: short.den }
    })
}

/// `ε_n(B)`, cross-checked between the entry count of `B⁽ⁿ⁾` and the drop
/// `Δⁿ(B⁽ⁿ⁻¹⁾) − Δⁿ(B⁽ⁿ⁾)`. Zero below level 5.
pub fn epsilon(b: &Basket, n: u32) -> Result<u64> {
    if n < 5 {
        return Ok(0);
    }
    let prev = step_basket(b, n - 1);
    let cur = step_basket(b, n);
    epsilon_between(&prev, &cur, n)
}

fn epsilon_between(prev: &Basket, cur: &Basket, n: u32) -> Result<u64> {
    let count: u64 = cur
        .iter()
        .filter(|p| p.r == n && p.b > 1)
        .map(|p| u64::from(p.mult))
        .sum();
    let drop = prev.delta(n) - cur.delta(n);
    if drop != count as i64 {
        return Err(Error::EpsilonMismatch { n, count: count as i64, drop });
    }
    Ok(count)
}

/// One stored level of a canonical sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub level: u32,
    pub basket: Basket,
    pub epsilon: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSequence {
    pub base: Basket,
    /// Levels `0, 5, 6, …, upto`.
    pub steps: Vec<Step>,
    pub stabilization_level: u32,
}

impl CanonicalSequence {
    /// `B⁽ⁿ⁾` for any `n` covered by the stored steps (levels 1–4 map to 0).
    pub fn at(&self, n: u32) -> Option<&Basket> {
        let key = if n < 5 { 0 } else { n };
        self.steps.iter().find(|s| s.level == key).map(|s| &s.basket)
    }
}

/// The canonical sequence through level `upto`.
pub fn sequence(b: &Basket, upto: u32) -> Result<CanonicalSequence> {
    let mut steps = vec![Step { level: 0, basket: initial_basket(b), epsilon: 0 }];
    let mut stabilization = (steps[0].basket == *b).then_some(0);
    let last = upto.max(b.max_r()).max(5);
    for n in 5..=last {
        let cur = step_basket(b, n);
        let eps = epsilon_between(&steps.last().expect("seeded").basket, &cur, n)?;
        if stabilization.is_none() && cur == *b {
            stabilization = Some(n);
        }
        steps.push(Step { level: n, basket: cur, epsilon: eps });
    }
    let stabilization_level = stabilization
        .ok_or_else(|| Error::Internal(format!("{b} did not stabilize by level {last}")))?;
    steps.retain(|s| s.level <= upto || s.level == 0);
    Ok(CanonicalSequence { base: b.clone(), steps, stabilization_level })
}
