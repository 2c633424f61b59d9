//! Level-by-level reconstruction of `B⁽ⁿ⁾` from plurigenus targets, and the
//! closure of a basket under prime packings above a given level.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::basket::Basket;
use crate::canonical::{level_packings, pack_level, LevelPacking};
use crate::formal::FormalBasket;
use crate::rational::Rational;

/// Targets `Δⁿ(B)` for `n = 3 ..= top`, indexed by `n`.
#[derive(Clone, Debug)]
pub struct Targets {
    pub chi: i64,
    pub chi2: i64,
    pub sigma: i64,
    deltas: Vec<i64>,
}

impl Targets {
    /// Reads `σ` and `Δ³ … Δ^{h−1}` off `χ` and `χ₂ … χ_h`.
    pub fn from_plurigenera(chi: i64, p: &[i64]) -> Targets {
        let at = |m: usize| p[m - 2];
        let horizon = p.len() + 1;
        let chi2 = at(2);
        let chi3 = at(3);
        let sigma = 10 * chi + 5 * chi2 - chi3;
        let tau = 4 * chi + 3 * chi2 - chi3;
        let mut deltas = vec![0; horizon.max(3)];
        for m in 3..horizon {
            let mi = m as i64;
            deltas[m] = at(m + 1) - at(m) - (-mi * mi * tau + mi * sigma) / 2 + 2 * chi;
        }
        Targets { chi, chi2, sigma, deltas }
    }

    /// Highest level with a target.
    pub fn top(&self) -> u32 {
        self.deltas.len() as u32 - 1
    }

    pub fn delta(&self, n: u32) -> i64 {
        self.deltas[n as usize]
    }
}

/// Packing types for every level up to `top`, computed once.
pub struct LevelCache {
    types: Vec<Vec<LevelPacking>>,
}

impl LevelCache {
    pub fn new(top: u32) -> Self {
        LevelCache { types: (0..=top).map(level_packings).collect() }
    }

    pub fn at(&self, n: u32) -> &[LevelPacking] {
        &self.types[n as usize]
    }
}

/// All `B⁽ᵗᵒᵖ⁾` reachable from `b0 = B⁽⁴⁾` by canonical level-`n` packings
/// with `Δⁿ(B⁽ⁿ⁾)` equal to the target at every level `5 ..= top`.
///
/// With `skip_eps6` the vanishing of `ε₆` is not enforced (an ablation).
pub fn descend_levels(
    b0: &Basket,
    targets: &Targets,
    top: u32,
    cache: &LevelCache,
    skip_eps6: bool,
) -> Vec<Basket> {
    let mut out = Vec::new();
    level(b0.clone(), 5, top, targets, cache, skip_eps6, &mut out);
    out
}

fn level(
    b: Basket,
    n: u32,
    top: u32,
    targets: &Targets,
    cache: &LevelCache,
    skip_eps6: bool,
    out: &mut Vec<Basket>,
) {
    if n > top {
        out.push(b);
        return;
    }
    let eps = b.delta(n) - targets.delta(n);
    if eps < 0 {
        return;
    }
    let types = cache.at(n);
    if types.is_empty() {
        if eps == 0 || (n == 6 && skip_eps6) {
            level(b, n + 1, top, targets, cache, skip_eps6, out);
        }
        return;
    }
    distribute(b, n, eps as u32, 0, types, &mut |next| {
        level(next, n + 1, top, targets, cache, skip_eps6, out)
    });
}

fn distribute(
    b: Basket,
    n: u32,
    remaining: u32,
    i: usize,
    types: &[LevelPacking],
    emit: &mut dyn FnMut(Basket),
) {
    let lp = types[i];
    let room = b.mult_of(lp.lower.pair()).min(b.mult_of(lp.upper.pair()));
    if i + 1 == types.len() {
        if remaining <= room {
            if let Ok(next) = pack_level(&b, &[(lp, remaining)]) {
                emit(next);
            }
        }
        return;
    }
    for k in 0..=remaining.min(room) {
        if let Ok(next) = pack_level(&b, &[(lp, k)]) {
            distribute(next, n, remaining - k, i + 1, types, emit);
        }
    }
}

/// The closure of a positive basket under prime packings of level at least
/// `min_level`, with non-positive results cut off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendantSet {
    /// Positive members, the root included, in canonical order.
    pub members: Vec<Basket>,
    /// Packings reached from a member with `K³ <= 0`.
    pub pruned: Vec<Basket>,
    /// Members with no positive prime packing above the level bound.
    pub minimal: Vec<Basket>,
    /// Longest chain of packings from the root.
    pub max_depth: u32,
}

/// Explores every prime packing of level `>= min_level`, in any order.
pub fn descendant_closure(root: &FormalBasket, min_level: u32) -> DescendantSet {
    let (chi, chi2) = (root.chi, root.chi2);
    let positive = |b: &Basket| FormalBasket::new(b.clone(), chi, chi2).is_positive();
    let mut seen: HashSet<Basket> = HashSet::new();
    let mut members = BTreeSet::new();
    let mut pruned = BTreeSet::new();
    let mut minimal = BTreeSet::new();
    let mut max_depth = 0;
    let mut stack = vec![(root.basket.clone(), 0u32)];
    seen.insert(root.basket.clone());
    let entry_bound = root.basket.count().saturating_sub(1) as u32;
    while let Some((b, depth)) = stack.pop() {
        max_depth = max_depth.max(depth);
        let mut has_positive_child = false;
        for pk in b.prime_packings() {
            if pk.level < min_level {
                continue;
            }
            let child = b.pack(pk.first, pk.second).expect("entries come from the basket");
            if !positive(&child) {
                pruned.insert(child);
                continue;
            }
            has_positive_child = true;
            if seen.insert(child.clone()) {
                stack.push((child, depth + 1));
            }
        }
        if !has_positive_child {
            minimal.insert(b.clone());
        }
        members.insert(b);
    }
    assert!(max_depth <= entry_bound, "packing depth exceeds entry count");
    DescendantSet {
        members: members.into_iter().collect(),
        pruned: pruned.into_iter().collect(),
        minimal: minimal.into_iter().collect(),
        max_depth,
    }
}

/// Plurigenus and volume data of one basket, for summaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluated {
    pub basket: Basket,
    pub k3: Rational,
    pub p10: i64,
    pub p24: i64,
}

pub fn evaluate(b: &Basket, chi: i64, chi2: i64) -> Evaluated {
    let fb = FormalBasket::new(b.clone(), chi, chi2);
    let cv = fb.chi_seq(24).expect("integral formal basket");
    Evaluated { basket: b.clone(), k3: fb.k3(), p10: cv.at(10), p24: cv.at(24) }
}
