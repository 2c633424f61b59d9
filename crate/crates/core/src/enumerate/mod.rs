//! Exhaustive enumeration of formal baskets with small plurigenera.
//!
//! The search runs over `χ`, plurigenus vectors `P₂ … P₁₃` and tails of the
//! initial basket, then rebuilds `B⁽¹²⁾` level by level and finally explores
//! all positive packings above level 12. Work units are independent and are
//! evaluated in parallel; results are merged in a fixed order so reports do
//! not depend on the worker count.

pub mod descent;
pub mod filters;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basket::Basket;
use crate::canonical::{initial_basket, step_basket};
use crate::error::{Error, Result};
use crate::formal::ladder::{
    assemble_ladder, check_r6, inequality_314, packing_choice_of, PackingChoice, Tail,
};
use crate::formal::{ChiVector, FormalBasket};
use crate::rational::Rational;

use descent::{descend_levels, descendant_closure, evaluate, LevelCache, Targets};
pub use filters::{gcd_filter, minimal_d};
use filters::{consistent, Rules};

/// Largest `χ` the search visits, whatever `chi_max` says.
pub const CHI_CEILING: i64 = 8;

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "PLURIBASKET_WORKERS";

/// Weights of `n⁰₁,ᵣ` in the tail term `R`; `r >= 12` weighs 14.
fn r_weight(r: u32) -> i64 {
    match r {
        5 => 2,
        6 => 5,
        7 => 6,
        8 => 8,
        9 => 10,
        10 => 12,
        11 => 13,
        _ => 14,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Constraints {
    pub chi_min: i64,
    pub chi_max: i64,
    /// Upper bound on `P_m` for `2 <= m <= 12`.
    pub pm_cap: i64,
    pub require_p2_zero: bool,
    pub apply_gcd_lemma: bool,
    pub apply_semigroup: bool,
    pub sigma_cap: i64,
    /// Tails use `n⁰₁,ᵣ` only for `5 <= r < n0_zero_from`.
    pub n0_zero_from: u32,
    /// Turning this off is an ablation; the search then admits spurious vectors.
    pub enforce_eps6: bool,
    /// Adds `P₂₄ = 1` to the pinned values seen by the filters.
    pub assume_p24_one: bool,
    /// Fixed plurigenera, `m -> P_m`, for `2 <= m <= 13`.
    pub pins: BTreeMap<u32, i64>,
    /// Restricts to vectors whose first nonzero `P_m` sits at `m = d`.
    pub d: Option<u32>,
    /// Keep every basket visited after level 12 in the report.
    pub record_trace: bool,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints {
            chi_min: 2,
            chi_max: 8,
            pm_cap: 1,
            require_p2_zero: true,
            apply_gcd_lemma: true,
            apply_semigroup: true,
            sigma_cap: 85,
            n0_zero_from: 9,
            enforce_eps6: true,
            assume_p24_one: false,
            pins: BTreeMap::new(),
            d: None,
            record_trace: false,
        }
    }
}

/// Summary over the positive descendants of one `B⁽¹²⁾`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendantSummary {
    pub count: usize,
    pub pruned: usize,
    pub max_depth: u32,
    pub min_p10: i64,
    pub min_p24: i64,
    pub min_k3: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub chi: i64,
    /// `P₂ … P₁₃`.
    pub p: Vec<i64>,
    pub d: Option<u32>,
    pub n0_tail: Tail,
    pub pc: PackingChoice,
    /// `χ₂ = 0` and no tail beyond `r = 5`.
    pub restricted: bool,
    pub b12: Basket,
    pub k3_b12: Rational,
    pub p10_b12: i64,
    pub p24_b12: i64,
    pub descendants: DescendantSummary,
    pub minimal_positive: Vec<Basket>,
}

impl CandidateRecord {
    pub fn cv(&self) -> ChiVector {
        ChiVector::new(self.chi, self.p.clone())
    }

    fn key(&self) -> (i64, &[i64], &Basket) {
        (self.chi, &self.p, &self.b12)
    }
}

/// A basket visited after level 12.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub chi: i64,
    pub basket: Basket,
    pub k3: Rational,
    pub p24: i64,
    /// `b12`, `descendant` or `pruned`.
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub chi: i64,
    pub p: Vec<i64>,
    pub basket: Basket,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// `(χ, P₂ … P₁₃)` combinations generated.
    pub vectors: u64,
    /// Combinations surviving the plurigenus filters.
    pub vectors_kept: u64,
    pub tails: u64,
    /// Level-12 baskets reached before the volume test.
    pub b12_reached: u64,
    pub candidates: u64,
    pub descendants: u64,
    /// Smallest `K³` over all positive baskets found.
    pub min_k3: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub constraints: Constraints,
    pub candidates: Vec<CandidateRecord>,
    pub violations: Vec<Violation>,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceEntry>,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Whether the trace holds `basket` at `χ` with the given `P₂₄`.
    pub fn trace_contains(&self, chi: i64, basket: &Basket, p24: i64) -> bool {
        self.trace.iter().any(|t| t.chi == chi && &t.basket == basket && t.p24 == p24)
    }
}

struct Unit {
    chi: i64,
    p: Vec<i64>,
}

fn plurigenus_vectors(c: &Constraints) -> Vec<Unit> {
    let mut units = Vec::new();
    for chi in c.chi_min..=c.chi_max.min(CHI_CEILING) {
        let mut p = vec![0i64; 11];
        loop {
            let ok_pins = (2..=12u32).all(|m| c.pins.get(&m).map_or(true, |&v| v == p[m as usize - 2]));
            let ok_p2 = !c.require_p2_zero || p[0] == 0;
            if ok_pins && ok_p2 {
                let at = |m: usize| p[m - 2];
                let lhs = 2 * at(5) + 3 * at(6) + at(8) + at(10) + at(12);
                let base = chi + 10 * at(2) + 4 * at(3) + at(7) + at(11);
                for p13 in 0..=(lhs - base) {
                    if c.pins.get(&13).map_or(false, |&v| v != p13) {
                        continue;
                    }
                    let mut full = p.clone();
                    full.push(p13);
                    units.push(Unit { chi, p: full });
                }
            }
            // Odometer over P₂ … P₁₂.
            let mut i = 0;
            while i < p.len() && p[i] == c.pm_cap {
                p[i] = 0;
                i += 1;
            }
            if i == p.len() {
                break;
            }
            p[i] += 1;
        }
    }
    units
}

fn passes_filters(c: &Constraints, chi: i64, p: &[i64]) -> bool {
    let cv = ChiVector::new(chi, p.to_vec());
    if let Some(d) = c.d {
        if minimal_d(&cv) != Some(d) {
            return false;
        }
    }
    let mut pinned: BTreeMap<u32, i64> = (2..=cv.horizon()).map(|m| (m, cv.at(m))).collect();
    if c.assume_p24_one {
        pinned.insert(24, 1);
    }
    let rules = Rules { semigroup: c.apply_semigroup, gcd: c.apply_gcd_lemma };
    !(rules.semigroup || rules.gcd) || consistent(&pinned, 24, rules)
}

/// Tails `n⁰₁,ᵣ`, `5 <= r < stop`, with `Σ n <= rest` and `Σ weight·n <= r_max`.
fn tails(stop: u32, rest: i64, r_max: Option<i64>) -> Vec<Tail> {
    fn go(r: u32, stop: u32, left: i64, r_left: Option<i64>, cur: &mut Tail, out: &mut Vec<Tail>) {
        if r >= stop {
            out.push(cur.clone());
            return;
        }
        let w = r_weight(r);
        let mut k = 0i64;
        while k <= left && r_left.map_or(true, |rl| k * w <= rl) {
            if k > 0 {
                cur.insert(r, k as u32);
            }
            go(r + 1, stop, left - k, r_left.map(|rl| rl - k * w), cur, out);
            cur.remove(&r);
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(5, stop, rest, r_max, &mut Tail::new(), &mut out);
    out
}

/// Bases `B⁽⁰⁾` compatible with `χ, P₂ … P_h` and every admissible tail.
fn initial_bases(chi: i64, p: &[i64], c: &Constraints, stats: &mut Stats) -> Vec<(Tail, Basket)> {
    let t = Targets::from_plurigenera(chi, p);
    if t.sigma < 0 || t.sigma > c.sigma_cap {
        return Vec::new();
    }
    let n2 = t.delta(3);
    let n3 = t.delta(4) - 2 * t.delta(3);
    let rest = t.sigma - n2 - n3;
    if n2 < 0 || n3 < 0 || rest < 0 {
        return Vec::new();
    }
    let r_max = if p.len() >= 12 {
        let cv = ChiVector::new(chi, p.to_vec());
        let (lhs, rhs, _, _) = inequality_314(&cv, &Tail::new()).expect("horizon checked");
        if lhs < rhs {
            return Vec::new();
        }
        Some(lhs - rhs)
    } else {
        None
    };
    let mut out = Vec::new();
    for tail in tails(c.n0_zero_from, rest, r_max) {
        stats.tails += 1;
        let s5: i64 = tail.values().map(|&k| i64::from(k)).sum();
        let n4 = rest - s5;
        let mut raw: Vec<(u32, u32, u32)> = Vec::new();
        for (r, k) in [(2, n2), (3, n3), (4, n4)] {
            if k > 0 {
                raw.push((1, r, k as u32));
            }
        }
        raw.extend(tail.iter().map(|(&r, &k)| (1, r, k)));
        out.push((tail, Basket::of(&raw)));
    }
    out
}

fn evaluate_unit(c: &Constraints, unit: &Unit, cache: &LevelCache) -> (Stats, Vec<CandidateRecord>, Vec<Violation>, Vec<TraceEntry>) {
    let mut stats = Stats { vectors: 1, ..Stats::default() };
    let mut records = Vec::new();
    let mut violations = Vec::new();
    let mut trace = Vec::new();
    if !passes_filters(c, unit.chi, &unit.p) {
        return (stats, records, violations, trace);
    }
    stats.vectors_kept = 1;
    let chi = unit.chi;
    let chi2 = unit.p[0];
    let targets = Targets::from_plurigenera(chi, &unit.p);
    let cv = ChiVector::new(chi, unit.p.clone());
    for (tail, b0) in initial_bases(chi, &unit.p, c, &mut stats) {
        for b12 in descend_levels(&b0, &targets, 12, cache, !c.enforce_eps6) {
            stats.b12_reached += 1;
            let fb = FormalBasket::new(b12.clone(), chi, chi2);
            if c.record_trace {
                let e = evaluate(&b12, chi, chi2);
                trace.push(TraceEntry { chi, basket: b12.clone(), k3: e.k3, p24: e.p24, role: "b12".into() });
            }
            if !fb.is_positive() {
                continue;
            }
            let forward = fb.chi_seq(13).expect("integral formal basket");
            if forward != cv {
                violations.push(Violation {
                    kind: "internal".into(),
                    chi,
                    p: unit.p.clone(),
                    basket: b12.clone(),
                    detail: format!("forward plurigenera {:?} differ from target", forward.values),
                });
            }
            let pc = packing_choice_of(&b12);
            let restricted = check_r6(&cv, &tail);
            if let Some(detail) = ladder_mismatch(&cv, &tail, pc, restricted, &b12) {
                violations.push(Violation {
                    kind: "ladder".into(),
                    chi,
                    p: unit.p.clone(),
                    basket: b12.clone(),
                    detail,
                });
            }
            let closure = descendant_closure(&fb, 13);
            let evals: Vec<_> = closure.members.iter().map(|b| evaluate(b, chi, chi2)).collect();
            if c.record_trace {
                for e in evals.iter().filter(|e| e.basket != b12) {
                    trace.push(TraceEntry { chi, basket: e.basket.clone(), k3: e.k3.clone(), p24: e.p24, role: "descendant".into() });
                }
                for b in &closure.pruned {
                    let e = evaluate(b, chi, chi2);
                    trace.push(TraceEntry { chi, basket: b.clone(), k3: e.k3, p24: e.p24, role: "pruned".into() });
                }
            }
            let top = evaluate(&b12, chi, chi2);
            let summary = DescendantSummary {
                count: evals.len(),
                pruned: closure.pruned.len(),
                max_depth: closure.max_depth,
                min_p10: evals.iter().map(|e| e.p10).min().expect("root is a member"),
                min_p24: evals.iter().map(|e| e.p24).min().expect("root is a member"),
                min_k3: evals.iter().map(|e| e.k3.clone()).min().expect("root is a member"),
            };
            stats.descendants += evals.len() as u64;
            stats.min_k3 = Some(match stats.min_k3.take() {
                Some(m) if m < summary.min_k3 => m,
                _ => summary.min_k3.clone(),
            });
            records.push(CandidateRecord {
                chi,
                p: unit.p.clone(),
                d: minimal_d(&cv),
                n0_tail: tail.clone(),
                pc,
                restricted,
                k3_b12: top.k3,
                p10_b12: top.p10,
                p24_b12: top.p24,
                b12,
                descendants: summary,
                minimal_positive: closure.minimal,
            });
        }
    }
    stats.candidates = records.len() as u64;
    (stats, records, violations, trace)
}

/// Compares a level-12 basket with the closed-form ladder for its packing
/// choice: through level 12 when the restricted tables apply, otherwise
/// through level 7.
fn ladder_mismatch(
    cv: &ChiVector,
    tail: &Tail,
    pc: PackingChoice,
    restricted: bool,
    b12: &Basket,
) -> Option<String> {
    let through = if restricted { 12 } else { 7 };
    match assemble_ladder(cv, tail, pc, through) {
        Ok(lad) => {
            let want = step_basket(b12, through);
            (lad.at(through) != Some(&want))
                .then(|| format!("closed form gives {:?} at level {through}", lad.at(through)))
        }
        Err(e) => Some(e.to_string()),
    }
}

fn merge(stats: &mut Stats, other: Stats) {
    stats.vectors += other.vectors;
    stats.vectors_kept += other.vectors_kept;
    stats.tails += other.tails;
    stats.b12_reached += other.b12_reached;
    stats.candidates += other.candidates;
    stats.descendants += other.descendants;
    if let Some(m) = other.min_k3 {
        stats.min_k3 = Some(match stats.min_k3.take() {
            Some(cur) if cur < m => cur,
            _ => m,
        });
    }
}

fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let workers = std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse::<usize>().ok());
    match workers {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

/// Runs the search. Candidates are ordered by `(χ, P₂ … P₁₃, B⁽¹²⁾)`.
pub fn enumerate_candidates(c: &Constraints) -> SearchReport {
    let units = plurigenus_vectors(c);
    let cache = LevelCache::new(12);
    let results: Vec<_> =
        with_pool(|| units.par_iter().map(|u| evaluate_unit(c, u, &cache)).collect());
    let mut stats = Stats::default();
    let mut candidates = Vec::new();
    let mut violations = Vec::new();
    let mut trace = Vec::new();
    for (s, r, v, t) in results {
        merge(&mut stats, s);
        candidates.extend(r);
        violations.extend(v);
        trace.extend(t);
    }
    candidates.sort_by(|a, b| a.key().cmp(&b.key()));
    candidates.dedup_by(|a, b| a.key() == b.key());
    stats.candidates = candidates.len() as u64;
    trace.sort_by(|a, b| (a.chi, &a.basket, &a.role).cmp(&(b.chi, &b.basket, &b.role)));
    trace.dedup();
    SearchReport { constraints: c.clone(), candidates, violations, stats, trace }
}

/// The descendant set of a positive basket above level 12, evaluated.
pub fn descend(b: &Basket, chi: i64, chi2: i64) -> (Vec<descent::Evaluated>, Vec<descent::Evaluated>) {
    let closure = descendant_closure(&FormalBasket::new(b.clone(), chi, chi2), 13);
    let ev = |bs: &[Basket]| bs.iter().map(|x| evaluate(x, chi, chi2)).collect::<Vec<_>>();
    (ev(&closure.members), ev(&closure.pruned))
}

fn finish(mut report: SearchReport, flag: impl Fn(&CandidateRecord) -> Option<String>, kind: &str) -> Result<SearchReport> {
    let mut extra = Vec::new();
    for rec in &report.candidates {
        if let Some(detail) = flag(rec) {
            extra.push(Violation {
                kind: kind.into(),
                chi: rec.chi,
                p: rec.p.clone(),
                basket: rec.b12.clone(),
                detail,
            });
        }
    }
    report.violations.extend(extra);
    if report.violations.is_empty() {
        Ok(report)
    } else {
        Err(Error::Counterexample(Box::new(report)))
    }
}

/// Searches for candidates with `P₁₂ = 0`; any hit is a counterexample.
pub fn verify_p12(c: &Constraints) -> Result<SearchReport> {
    let report = enumerate_candidates(c);
    finish(report, |r| (r.p[10] == 0).then(|| "P12 = 0".to_string()), "p12")
}

/// Searches, under the hypothesis `P₂₄ = 1`, for a positive descendant with
/// `P₁₀ <= 1` and `P₂₄ <= 1`; any hit is a counterexample. The trace is
/// always recorded.
pub fn verify_p24(c: &Constraints) -> Result<SearchReport> {
    let c = Constraints { assume_p24_one: true, record_trace: true, ..c.clone() };
    let report = enumerate_candidates(&c);
    finish(
        report,
        |r| {
            (r.descendants.min_p24 <= 1 && r.descendants.min_p10 <= 1)
                .then(|| format!("descendant with P24 = {}", r.descendants.min_p24))
        },
        "p24",
    )
}

/// Every positive formal basket `(B, χ, P₂)` whose plurigenera agree with
/// `P₂ … P_h` (`p[0]` is `P₂`), reconstructed through level `h − 1`.
///
/// Tails use the same bounds as the search; the `R` bound needs `h >= 13`.
pub fn recover_formal_baskets(chi: i64, p: &[i64], c: &Constraints) -> Vec<FormalBasket> {
    let mut stats = Stats::default();
    let targets = Targets::from_plurigenera(chi, p);
    let top = targets.top();
    let cache = LevelCache::new(top);
    let horizon = p.len() as u32 + 1;
    let mut out = Vec::new();
    for (_, b0) in initial_bases(chi, p, c, &mut stats) {
        for b in descend_levels(&b0, &targets, top, &cache, !c.enforce_eps6) {
            let fb = FormalBasket::new(b, chi, p[0]);
            if !fb.is_positive() {
                continue;
            }
            if fb.chi_seq(horizon).map(|cv| cv.values == p).unwrap_or(false) {
                out.push(fb);
            }
        }
    }
    out.sort_by(|a, b| a.basket.cmp(&b.basket));
    out.dedup();
    out
}

/// `B⁽⁰⁾` tail `n⁰₁,ᵣ (r >= 5)` of a basket.
pub fn tail_of(b: &Basket) -> Tail {
    initial_basket(b).iter().filter(|p| p.r >= 5).map(|p| (p.r, p.mult)).collect()
}
