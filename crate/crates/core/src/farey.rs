//! Level sets of slopes in `(0, 1/2]` and their neighbor structure.
//!
//! Level `n` contains every `1/m` (`m >= 2`) together with the reduced
//! fractions `i/k` for `5 <= k <= n` and `2 <= i <= k/2`. Levels 0 through 4
//! coincide. The set is infinite towards zero, so a materialized level keeps
//! only fractions `>= 1/(rmax + 1)`. Consecutive members `v1/u1 < v2/u2`
//! always satisfy `u1·v2 − u2·v1 = 1`, and each fraction first appearing at
//! level `n` is the mediant of its two neighbors one level down.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::basket::cmp_slope;
use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `0 < num/den <= 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u32,
    pub den: u32,
}

impl Fraction {
    pub fn new(num: u32, den: u32) -> Fraction {
        let g = num.gcd(&den);
        Fraction { num: num / g, den: den / g }
    }

    pub fn pair(&self) -> (u32, u32) {
        (self.num, self.den)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        cmp_slope(self.num, self.den, other.num, other.den)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Fractions `i/n` that first appear at level `n`, largest first.
pub fn new_fractions(n: u32) -> Vec<Fraction> {
    if n < 5 {
        return Vec::new();
    }
    (2..=n / 2)
        .rev()
        .filter(|i| i.gcd(&n) == 1)
        .map(|i| Fraction { num: i, den: n })
        .collect()
}

/// Whether `b/r` (reduced) belongs to level `n`.
pub fn in_level(b: u32, r: u32, n: u32) -> bool {
    b == 1 || r <= n
}

/// A materialized level, truncated below `1/(rmax + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyLevel {
    pub n: u32,
    pub rmax: u32,
    /// Descending.
    pub fractions: Vec<Fraction>,
}

/// Where a slope sits inside a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Member,
    Between { lower: Fraction, upper: Fraction },
}

/// Level `n` truncated at `1/(rmax + 1)`.
pub fn farey_level(n: u32, rmax: u32) -> FareyLevel {
    let rmax = rmax.max(1);
    let cutoff = Fraction { num: 1, den: rmax + 1 };
    let mut fractions: Vec<Fraction> = (2..=rmax + 1).map(|m| Fraction { num: 1, den: m }).collect();
    for k in 5..=n {
        fractions.extend(new_fractions(k).into_iter().filter(|f| *f >= cutoff));
    }
    fractions.sort_by(|a, b| b.cmp(a));
    fractions.dedup();
    FareyLevel { n, rmax, fractions }
}

impl FareyLevel {
    pub fn cutoff(&self) -> Fraction {
        Fraction { num: 1, den: self.rmax + 1 }
    }

    pub fn contains(&self, f: Fraction) -> bool {
        self.fractions.binary_search_by(|x| f.cmp(x)).is_ok()
    }

    /// Locates a slope: either a member or strictly between two neighbors.
    pub fn neighbors(&self, slope: Fraction) -> Result<Position> {
        let slope = Fraction::new(slope.num, slope.den);
        if slope < self.cutoff() {
            return Err(Error::BelowCutoff { b: slope.num, r: slope.den, cutoff: self.rmax + 1 });
        }
        match self.fractions.binary_search_by(|x| slope.cmp(x)) {
            Ok(_) => Ok(Position::Member),
            Err(idx) => {
                // fractions[idx - 1] > slope > fractions[idx]; idx > 0 since 1/2 is a member
                // and the cutoff bounds the slope from below.
                let upper = self.fractions[idx - 1];
                let lower = self.fractions[idx];
                Ok(Position::Between { lower, upper })
            }
        }
    }

    /// True iff every consecutive pair has determinant one.
    pub fn verify_unimodular(&self) -> bool {
        verify_unimodular(&self.fractions)
    }
}

/// Checks `u1·v2 − u2·v1 = 1` over a descending list of fractions.
pub fn verify_unimodular(descending: &[Fraction]) -> bool {
    descending.windows(2).all(|w| {
        let (hi, lo) = (w[0], w[1]);
        i64::from(lo.den) * i64::from(hi.num) - i64::from(hi.den) * i64::from(lo.num) == 1
    })
}
