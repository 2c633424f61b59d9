//! Inverting the plurigenus sequence back to basket data.
//!
//! Given `χ, χ₂, …, χ₁₃` and the tail `n⁰₁,ᵣ (r >= 5)` of the initial basket,
//! every quantity below is an integer linear form. The forms are stored as
//! coefficient tables over [`Var`] so each one can be checked against a
//! direct computation on concrete baskets.
//!
//! Levels 5 and 7 are available for any input. Levels 8 through 12 are
//! tabulated only for inputs with `χ₂ = 0` and `n⁰₁,ᵣ = 0` for `r >= 6`;
//! other inputs go through the generic descent in [`crate::enumerate`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::basket::Basket;
use crate::canonical::step_basket;
use crate::error::{Error, Result};
use crate::formal::ChiVector;

/// Initial-basket multiplicities `n⁰₁,ᵣ` for `r >= 5`, keyed by `r`.
pub type Tail = BTreeMap<u32, u32>;

/// Unknowns appearing in the ladder forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Chi,
    /// `χ_m`, `m >= 2`.
    X(u32),
    /// `σ₅ = Σ_{r>=5} n⁰₁,ᵣ`.
    Sigma5,
    /// `n⁰₁,ᵣ`, `r >= 5`.
    N0(u32),
    Eta,
    Zeta,
    Alpha,
    Beta,
}

use Var::*;

/// `Σ coeff · var` with integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearForm(pub &'static [(Var, i64)]);

/// Counts of the four named packing types: `(1,3)+(1,4)`, `(1,2)+(3,7)`,
/// `(1,2)+(4,9)` and `(1,3)+(3,8)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PackingChoice {
    pub eta: u32,
    pub zeta: u32,
    pub alpha: u32,
    pub beta: u32,
}

/// Values for every [`Var`].
pub struct Env<'a> {
    pub cv: &'a ChiVector,
    pub tail: &'a Tail,
    pub pc: PackingChoice,
}

impl Env<'_> {
    pub fn value(&self, v: Var) -> i64 {
        match v {
            Chi => self.cv.chi,
            X(m) => self.cv.at(m),
            Sigma5 => self.tail.values().map(|&k| i64::from(k)).sum(),
            N0(r) => self.tail.get(&r).map_or(0, |&k| i64::from(k)),
            Eta => i64::from(self.pc.eta),
            Zeta => i64::from(self.pc.zeta),
            Alpha => i64::from(self.pc.alpha),
            Beta => i64::from(self.pc.beta),
        }
    }
}

impl LinearForm {
    pub fn eval(&self, env: &Env<'_>) -> i64 {
        self.0.iter().map(|&(v, c)| c * env.value(v)).sum()
    }

    pub fn coeff(&self, v: Var) -> i64 {
        self.0.iter().filter(|(w, _)| *w == v).map(|(_, c)| c).sum()
    }
}

macro_rules! form {
    ($($v:expr => $c:expr),* $(,)?) => { LinearForm(&[$(($v, $c)),*]) };
}

pub const TAU: LinearForm = form![Chi => 4, X(2) => 3, X(3) => -1];
pub const SIGMA: LinearForm = form![Chi => 10, X(2) => 5, X(3) => -1];

/// `Δ³ … Δ¹²` in terms of the plurigenera.
pub const DELTA: [LinearForm; 10] = [
    form![Chi => 5, X(2) => 6, X(3) => -4, X(4) => 1],
    form![Chi => 14, X(2) => 14, X(3) => -6, X(4) => -1, X(5) => 1],
    form![Chi => 27, X(2) => 25, X(3) => -10, X(5) => -1, X(6) => 1],
    form![Chi => 44, X(2) => 39, X(3) => -15, X(6) => -1, X(7) => 1],
    form![Chi => 65, X(2) => 56, X(3) => -21, X(7) => -1, X(8) => 1],
    form![Chi => 90, X(2) => 76, X(3) => -28, X(8) => -1, X(9) => 1],
    form![Chi => 119, X(2) => 99, X(3) => -36, X(9) => -1, X(10) => 1],
    form![Chi => 152, X(2) => 125, X(3) => -45, X(10) => -1, X(11) => 1],
    form![Chi => 189, X(2) => 154, X(3) => -55, X(11) => -1, X(12) => 1],
    form![Chi => 230, X(2) => 186, X(3) => -66, X(12) => -1, X(13) => 1],
];

pub const N0_12: LinearForm = form![Chi => 5, X(2) => 6, X(3) => -4, X(4) => 1];
pub const N0_13: LinearForm = form![Chi => 4, X(2) => 2, X(3) => 2, X(4) => -3, X(5) => 1];
pub const N0_14: LinearForm =
    form![Chi => 1, X(2) => -3, X(3) => 1, X(4) => 2, X(5) => -1, Sigma5 => -1];

pub const EPS5: LinearForm = form![Chi => 2, X(3) => -1, X(5) => 2, X(6) => -1, Sigma5 => -1];

/// `n⁰₁,₅ + 2 Σ_{r>=6} n⁰₁,ᵣ`.
pub const EPS_TAIL: LinearForm = form![Sigma5 => 2, N0(5) => -1];

pub const EPS6: LinearForm = form![
    X(2) => -3, X(3) => -1, X(4) => 1, X(5) => 1, X(6) => 1, X(7) => -1,
    Sigma5 => -2, N0(5) => 1,
];

pub const EPS7: LinearForm = form![
    Chi => 1, X(2) => -1, X(3) => -1, X(6) => 1, X(7) => 1, X(8) => -1,
    Sigma5 => -2, N0(5) => 2, N0(6) => 1,
];

pub const EPS8: LinearForm = form![
    X(2) => -2, X(3) => -1, X(4) => -1, X(5) => 1, X(6) => 1, X(8) => 1, X(9) => -1,
    Sigma5 => -3, N0(5) => 3, N0(6) => 2, N0(7) => 1,
];

pub const EPS9: LinearForm = form![
    X(2) => -2, X(3) => -2, X(4) => 1, X(5) => 1, X(7) => -1, X(8) => 1, X(9) => 1,
    X(10) => -1, Sigma5 => -3, Eta => 1,
    N0(5) => 2, N0(6) => 2, N0(7) => 2, N0(8) => 1,
];

pub const EPS10: LinearForm = form![
    X(2) => -5, X(3) => -1, X(6) => 2, X(10) => 1, X(11) => -1, Sigma5 => -6, Eta => -1,
    N0(5) => 5, N0(6) => 4, N0(7) => 3, N0(8) => 2, N0(9) => 1,
];

pub const EPS12: LinearForm = form![
    Chi => -1, X(2) => -5, X(3) => -3, X(5) => 2, X(6) => 1, X(7) => -1, X(8) => 1,
    X(12) => 1, X(13) => -1, Sigma5 => -8, Eta => 1,
    N0(5) => 7, N0(6) => 5, N0(7) => 5, N0(8) => 4, N0(9) => 3, N0(10) => 2, N0(11) => 1,
];

/// The tail weight `R`, written as `14σ₅ − 12n⁰₁,₅ − … − n⁰₁,₁₁`.
pub const R_TERM: LinearForm = form![
    Sigma5 => 14, N0(5) => -12, N0(6) => -9, N0(7) => -8, N0(8) => -6, N0(9) => -4,
    N0(10) => -2, N0(11) => -1,
];

pub const INEQ_LHS: LinearForm = form![X(5) => 2, X(6) => 3, X(8) => 1, X(10) => 1, X(12) => 1];
pub const INEQ_RHS: LinearForm =
    form![Chi => 1, X(2) => 10, X(3) => 4, X(7) => 1, X(11) => 1, X(13) => 1];

/// Coefficients of one level, listed by singularity type. Entries `(1, r)`
/// with `r >= 5` (generic tables) are copied from the tail and not listed.
pub type LevelTable = &'static [((u32, u32), LinearForm)];

pub const B5: LevelTable = &[
    ((1, 2), form![Chi => 3, X(2) => 6, X(3) => -3, X(4) => 1, X(5) => -2, X(6) => 1, Sigma5 => 1]),
    ((2, 5), EPS5),
    ((1, 3), form![Chi => 2, X(2) => 2, X(3) => 3, X(4) => -3, X(5) => -1, X(6) => 1, Sigma5 => 1]),
    ((1, 4), N0_14),
];

pub const B7: LevelTable = &[
    ((1, 2), form![
        Chi => 2, X(2) => 7, X(3) => -2, X(4) => 1, X(5) => -2, X(7) => -1, X(8) => 1,
        Sigma5 => 3, N0(5) => -2, N0(6) => -1, Eta => 1,
    ]),
    ((3, 7), form![
        Chi => 1, X(2) => -1, X(3) => -1, X(6) => 1, X(7) => 1, X(8) => -1,
        Sigma5 => -2, N0(5) => 2, N0(6) => 1, Eta => -1,
    ]),
    ((2, 5), form![
        Chi => 1, X(2) => 1, X(5) => 2, X(6) => -2, X(7) => -1, X(8) => 1,
        Sigma5 => 1, N0(5) => -2, N0(6) => -1, Eta => 1,
    ]),
    ((1, 3), form![
        Chi => 2, X(2) => 2, X(3) => 3, X(4) => -3, X(5) => -1, X(6) => 1, Sigma5 => 1, Eta => -1,
    ]),
    ((2, 7), form![Eta => 1]),
    ((1, 4), form![Chi => 1, X(2) => -3, X(3) => 1, X(4) => 2, X(5) => -1, Sigma5 => -1, Eta => -1]),
];

// Restricted tables: χ₂ = 0 and the tail is n⁰₁,₅ alone.

const A_12: LinearForm = form![
    Chi => 2, X(3) => -2, X(4) => 1, X(5) => -2, X(7) => -1, X(8) => 1, N0(5) => 1, Eta => 1,
];
const A_12_Z: LinearForm = form![
    Chi => 2, X(3) => -2, X(4) => 1, X(5) => -2, X(7) => -1, X(8) => 1, N0(5) => 1, Eta => 1,
    Zeta => -1,
];
const A_12_ZA: LinearForm = form![
    Chi => 2, X(3) => -2, X(4) => 1, X(5) => -2, X(7) => -1, X(8) => 1, N0(5) => 1, Eta => 1,
    Zeta => -1, Alpha => -1,
];
const A_37: LinearForm = form![Chi => 1, X(3) => -1, X(6) => 1, X(7) => 1, X(8) => -1, Eta => -1];
const A_37_Z: LinearForm =
    form![Chi => 1, X(3) => -1, X(6) => 1, X(7) => 1, X(8) => -1, Eta => -1, Zeta => -1];
const A_25_7: LinearForm =
    form![Chi => 1, X(5) => 2, X(6) => -2, X(7) => -1, X(8) => 1, N0(5) => -1, Eta => 1];
const A_25_8: LinearForm = form![
    Chi => 1, X(3) => 1, X(4) => 1, X(5) => 1, X(6) => -3, X(7) => -1, X(9) => 1,
    N0(5) => -1, Eta => 1,
];
const A_13_7: LinearForm =
    form![Chi => 2, X(3) => 3, X(4) => -3, X(5) => -1, X(6) => 1, N0(5) => 1, Eta => -1];
const A_13_8: LinearForm = form![
    Chi => 2, X(3) => 4, X(4) => -2, X(5) => -2, X(8) => -1, X(9) => 1, N0(5) => 1, Eta => -1,
];
const A_13_10: LinearForm = form![
    Chi => 2, X(3) => 5, X(4) => -2, X(5) => -2, X(6) => -2, X(8) => -1, X(9) => 1,
    X(10) => -1, X(11) => 1, N0(5) => 2,
];
const A_13_11: LinearForm = form![
    Chi => 2, X(3) => 5, X(4) => -2, X(5) => -2, X(6) => -2, X(8) => -1, X(9) => 1,
    X(10) => -1, X(11) => 1, N0(5) => 2, Beta => -1,
];
const A_38: LinearForm = form![X(3) => -1, X(4) => -1, X(5) => 1, X(6) => 1, X(8) => 1, X(9) => -1];
const A_38_B: LinearForm =
    form![X(3) => -1, X(4) => -1, X(5) => 1, X(6) => 1, X(8) => 1, X(9) => -1, Beta => -1];
const A_14_7: LinearForm =
    form![Chi => 1, X(3) => 1, X(4) => 2, X(5) => -1, N0(5) => -1, Eta => -1];
const A_14_9: LinearForm = form![
    Chi => 1, X(3) => 3, X(4) => 1, X(5) => -2, X(7) => 1, X(8) => -1, X(9) => -1, X(10) => 1,
    Eta => -2, Zeta => 1,
];
const A_14_11: LinearForm = form![
    X(3) => 4, X(5) => -2, X(7) => 2, X(8) => -1, X(9) => -2, X(10) => 1, X(11) => -1,
    X(12) => 1, N0(5) => 1, Eta => -2, Zeta => 2, Alpha => 1, Beta => 1,
];
const A_29: LinearForm = form![
    X(3) => -2, X(4) => 1, X(5) => 1, X(7) => -1, X(8) => 1, X(9) => 1, X(10) => -1,
    N0(5) => -1, Eta => 1, Zeta => -1,
];
const A_15_9: LinearForm = form![
    X(3) => 2, X(4) => -1, X(5) => -1, X(7) => 1, X(8) => -1, X(9) => -1, X(10) => 1,
    N0(5) => 2, Eta => -1, Zeta => 1,
];
const A_310: LinearForm =
    form![X(3) => -1, X(6) => 2, X(10) => 1, X(11) => -1, N0(5) => -1, Eta => -1];
const A_27_10: LinearForm =
    form![X(3) => 1, X(6) => -2, X(10) => -1, X(11) => 1, N0(5) => 1, Eta => 2];
const A_27_11: LinearForm = form![
    Chi => -1, X(3) => 2, X(4) => -1, X(6) => -2, X(7) => 1, X(9) => -1, X(10) => -1,
    X(12) => 1, N0(5) => 2, Eta => 2, Zeta => 1, Alpha => 1, Beta => 1,
];
const A_311: LinearForm = form![
    Chi => 1, X(3) => -1, X(4) => 1, X(7) => -1, X(9) => 1, X(11) => 1, X(12) => -1,
    N0(5) => -1, Zeta => -1, Alpha => -1, Beta => -1,
];
const A_37_12: LinearForm = form![
    Chi => 2, X(3) => 2, X(5) => -2, X(7) => 2, X(8) => -2, X(12) => -1, X(13) => 1,
    Eta => -2, Zeta => -1, N0(5) => 1,
];
const A_25_12: LinearForm = form![
    Chi => 2, X(3) => 4, X(4) => 1, X(5) => -1, X(6) => -4, X(8) => -1, X(9) => 1,
    X(12) => -1, X(13) => 1,
];

pub const EPS7_A: LinearForm = form![Chi => 1, X(3) => -1, X(6) => 1, X(7) => 1, X(8) => -1];
pub const EPS8_A: LinearForm = A_38;
pub const EPS9_A: LinearForm = form![
    X(3) => -2, X(4) => 1, X(5) => 1, X(7) => -1, X(8) => 1, X(9) => 1, X(10) => -1,
    N0(5) => -1, Eta => 1,
];
pub const EPS10_A: LinearForm = A_310;
pub const EPS11_A: LinearForm = form![
    Chi => 1, X(3) => -1, X(4) => 1, X(7) => -1, X(9) => 1, X(11) => 1, X(12) => -1,
    N0(5) => -1, Zeta => -1,
];
pub const EPS12_A: LinearForm = form![
    Chi => -1, X(3) => -3, X(5) => 2, X(6) => 1, X(7) => -1, X(8) => 1, X(12) => 1, X(13) => -1,
    N0(5) => -1, Eta => 1,
];

const ONE_5: ((u32, u32), LinearForm) = ((1, 5), form![N0(5) => 1]);

pub const B7_A: LevelTable = &[
    ((1, 2), A_12),
    ((3, 7), A_37),
    ((2, 5), A_25_7),
    ((1, 3), A_13_7),
    ((2, 7), form![Eta => 1]),
    ((1, 4), A_14_7),
    ONE_5,
];

pub const B8_A: LevelTable = &[
    ((1, 2), A_12),
    ((3, 7), A_37),
    ((2, 5), A_25_8),
    ((3, 8), A_38),
    ((1, 3), A_13_8),
    ((2, 7), form![Eta => 1]),
    ((1, 4), A_14_7),
    ONE_5,
];

pub const B9_A: LevelTable = &[
    ((1, 2), A_12_Z),
    ((4, 9), form![Zeta => 1]),
    ((3, 7), A_37_Z),
    ((2, 5), A_25_8),
    ((3, 8), A_38),
    ((1, 3), A_13_8),
    ((2, 7), form![Eta => 1]),
    ((1, 4), A_14_9),
    ((2, 9), A_29),
    ((1, 5), A_15_9),
];

pub const B10_A: LevelTable = &[
    ((1, 2), A_12_Z),
    ((4, 9), form![Zeta => 1]),
    ((3, 7), A_37_Z),
    ((2, 5), A_25_8),
    ((3, 8), A_38),
    ((1, 3), A_13_10),
    ((3, 10), A_310),
    ((2, 7), A_27_10),
    ((1, 4), A_14_9),
    ((2, 9), A_29),
    ((1, 5), A_15_9),
];

pub const B11_A: LevelTable = &[
    ((1, 2), A_12_ZA),
    ((5, 11), form![Alpha => 1]),
    ((4, 9), form![Zeta => 1, Alpha => -1]),
    ((3, 7), A_37_Z),
    ((2, 5), A_25_8),
    ((3, 8), A_38_B),
    ((4, 11), form![Beta => 1]),
    ((1, 3), A_13_11),
    ((3, 10), A_310),
    ((2, 7), A_27_11),
    ((3, 11), A_311),
    ((1, 4), A_14_11),
    ((2, 9), A_29),
    ((1, 5), A_15_9),
];

pub const B12_A: LevelTable = &[
    ((1, 2), A_12_ZA),
    ((5, 11), form![Alpha => 1]),
    ((4, 9), form![Zeta => 1, Alpha => -1]),
    ((3, 7), A_37_12),
    ((5, 12), EPS12_A),
    ((2, 5), A_25_12),
    ((3, 8), A_38_B),
    ((4, 11), form![Beta => 1]),
    ((1, 3), A_13_11),
    ((3, 10), A_310),
    ((2, 7), A_27_11),
    ((3, 11), A_311),
    ((1, 4), A_14_11),
    ((2, 9), A_29),
    ((1, 5), A_15_9),
];

/// `(level, table, tail entries appended)` in ladder order.
pub fn level_tables() -> [(u32, LevelTable, bool); 8] {
    [
        (5, B5, true),
        (7, B7, true),
        (7, B7_A, false),
        (8, B8_A, false),
        (9, B9_A, false),
        (10, B10_A, false),
        (11, B11_A, false),
        (12, B12_A, false),
    ]
}

/// A quantity of the form `constant + eta · η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaAffine {
    pub constant: i64,
    pub eta: i64,
}

impl EtaAffine {
    fn of(form: LinearForm, cv: &ChiVector, tail: &Tail) -> Self {
        let env = Env { cv, tail, pc: PackingChoice::default() };
        EtaAffine { constant: form.eval(&env), eta: form.coeff(Eta) }
    }

    pub fn at(&self, eta: u32) -> i64 {
        self.constant + self.eta * i64::from(eta)
    }
}

/// Every closed-form quantity recoverable from `(χ, χ₂ … χ₁₃)` and the tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionLadder {
    pub tau: i64,
    pub sigma: i64,
    /// `Δ³ … Δ¹²`.
    pub deltas: Vec<i64>,
    /// `(r, n⁰₁,ᵣ)` for `r = 2, 3, 4` followed by the tail.
    pub n0: Vec<(u32, i64)>,
    pub sigma5: i64,
    /// `n⁰₁,₅ + 2 Σ_{r>=6} n⁰₁,ᵣ`.
    pub eps: i64,
    pub eps5: i64,
    pub eps6: i64,
    pub eps7: i64,
    pub eps8: i64,
    pub eps9: EtaAffine,
    pub eps10: EtaAffine,
    pub eps12: EtaAffine,
    pub r_term: i64,
    /// Names of violated sign or vanishing conditions; empty when consistent.
    pub violations: Vec<String>,
}

impl InversionLadder {
    pub fn delta(&self, m: u32) -> i64 {
        self.deltas[m as usize - 3]
    }

    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the closed forms; needs `χ₂ … χ₁₃`.
pub fn rr_invert(cv: &ChiVector, tail: &Tail) -> Result<InversionLadder> {
    cv.require(13)?;
    let env = Env { cv, tail, pc: PackingChoice::default() };
    let ev = |f: LinearForm| f.eval(&env);
    let mut n0 = vec![(2, ev(N0_12)), (3, ev(N0_13)), (4, ev(N0_14))];
    n0.extend(tail.iter().map(|(&r, &k)| (r, i64::from(k))));
    let ladder = InversionLadder {
        tau: ev(TAU),
        sigma: ev(SIGMA),
        deltas: DELTA.iter().map(|&f| ev(f)).collect(),
        sigma5: ev(form![Sigma5 => 1]),
        eps: ev(EPS_TAIL),
        eps5: ev(EPS5),
        eps6: ev(EPS6),
        eps7: ev(EPS7),
        eps8: ev(EPS8),
        eps9: EtaAffine::of(EPS9, cv, tail),
        eps10: EtaAffine::of(EPS10, cv, tail),
        eps12: EtaAffine::of(EPS12, cv, tail),
        r_term: ev(R_TERM),
        n0,
        violations: Vec::new(),
    };
    let mut violations = Vec::new();
    for &(r, k) in &ladder.n0 {
        if k < 0 {
            violations.push(format!("n0(1,{r}) < 0"));
        }
    }
    for (name, v) in [("eps5", ladder.eps5), ("eps7", ladder.eps7), ("eps8", ladder.eps8)] {
        if v < 0 {
            violations.push(format!("{name} < 0"));
        }
    }
    if ladder.eps6 != 0 {
        violations.push("eps6 != 0".to_string());
    }
    let top = ladder.eps7.max(0) as u32;
    if ladder.eps9.at(0).max(ladder.eps9.at(top)) < 0 {
        violations.push("eps9 < 0 for every eta".to_string());
    }
    if ladder.eps10.at(0).max(ladder.eps10.at(top)) < 0 {
        violations.push("eps10 < 0 for every eta".to_string());
    }
    if ladder.eps12.at(0).max(ladder.eps12.at(top)) < 0 {
        violations.push("eps12 < 0 for every eta".to_string());
    }
    let (_, _, _, holds) = inequality_314(cv, tail)?;
    if !holds {
        violations.push("eps10 + eps12 < 0".to_string());
    }
    Ok(InversionLadder { violations, ..ladder })
}

/// True iff `χ₂ = 0` and the tail has no entry with `r >= 6`.
pub fn check_r6(cv: &ChiVector, tail: &Tail) -> bool {
    cv.get(2) == Some(0) && tail.iter().all(|(&r, &k)| r < 6 || k == 0)
}

/// `(lhs, rhs, R, lhs >= rhs)` where `rhs` already includes `R`.
pub fn inequality_314(cv: &ChiVector, tail: &Tail) -> Result<(i64, i64, i64, bool)> {
    cv.require(13)?;
    let env = Env { cv, tail, pc: PackingChoice::default() };
    let lhs = INEQ_LHS.eval(&env);
    let r = R_TERM.eval(&env);
    let rhs = INEQ_RHS.eval(&env) + r;
    Ok((lhs, rhs, r, lhs >= rhs))
}

/// Baskets `B⁽ⁿ⁾` assembled from the closed-form tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssembledLadder {
    /// `(n, B⁽ⁿ⁾)` for `n = 5, 6, 7, …, through`.
    pub levels: Vec<(u32, Basket)>,
}

impl AssembledLadder {
    pub fn at(&self, n: u32) -> Option<&Basket> {
        self.levels.iter().find(|(l, _)| *l == n).map(|(_, b)| b)
    }
}

fn build_level(level: u32, table: LevelTable, with_tail: bool, env: &Env<'_>) -> Result<Basket> {
    let mut raw = Vec::new();
    let mut entries: Vec<((u32, u32), i64)> =
        table.iter().map(|&(kind, f)| (kind, f.eval(env))).collect();
    if with_tail {
        entries.extend(env.tail.iter().map(|(&r, &k)| ((1, r), i64::from(k))));
    }
    for ((b, r), value) in entries {
        if value < 0 {
            return Err(Error::NegativeCoefficient { level, b, r, value });
        }
        if value > 0 {
            raw.push((b, r, value as u32));
        }
    }
    Basket::canonicalize(&raw)
}

/// Assembles `B⁽⁵⁾` through `B⁽ᵗʰʳᵒᵘᵍʰ⁾` for the given packing choice.
///
/// Levels above 7 require [`check_r6`]. Every negative coefficient aborts
/// with the first offending level and entry. When the whole ladder is built,
/// each level is compared with the canonical unpacking of the top basket.
pub fn assemble_ladder(
    cv: &ChiVector,
    tail: &Tail,
    pc: PackingChoice,
    through: u32,
) -> Result<AssembledLadder> {
    cv.require(13)?;
    let restricted = check_r6(cv, tail);
    if through > 7 && !restricted {
        return Err(Error::AssumptionViolated);
    }
    let env = Env { cv, tail, pc };
    let mut levels = Vec::new();
    let b5 = build_level(5, B5, true, &env)?;
    levels.push((5, b5.clone()));
    levels.push((6, b5));
    if through >= 7 {
        let (table, with_tail) = if restricted { (B7_A, false) } else { (B7, true) };
        levels.push((7, build_level(7, table, with_tail, &env)?));
    }
    for (level, table, with_tail) in level_tables() {
        if level >= 8 && level <= through {
            levels.push((level, build_level(level, table, with_tail, &env)?));
        }
    }
    levels.retain(|(l, _)| *l <= through.max(6));
    let top = &levels.last().expect("level 5 always present").1;
    for (level, b) in &levels {
        if step_basket(top, *level) != *b {
            return Err(Error::Internal(format!(
                "assembled level {level} {b} differs from the unpacking of {top}"
            )));
        }
    }
    Ok(AssembledLadder { levels })
}

/// Reads `(η, ζ, α, β)` off the canonical sequence of a basket.
pub fn packing_choice_of(b: &Basket) -> PackingChoice {
    let at = |n: u32, kind: (u32, u32)| step_basket(b, n).mult_of(kind);
    PackingChoice {
        eta: at(7, (2, 7)),
        zeta: at(9, (4, 9)),
        alpha: at(11, (5, 11)),
        beta: at(11, (4, 11)),
    }
}
