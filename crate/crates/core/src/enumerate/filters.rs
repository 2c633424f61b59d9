//! Filters on plurigenus vectors that come from geometry rather than from
//! basket arithmetic.
//!
//! Two rules are propagated over interval bounds `lo[m] <= P_m <= hi[m]`:
//!
//! * if `P_a >= 1` then `P_{a+b} >= P_b` (multiplication by a fixed section);
//! * if `P_m = P_n = P_lcm(m,n) = 1` then `P_gcd(m,n) = 1`.
//!
//! Unlisted plurigenera, including `P₁`, start unconstrained.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::formal::ChiVector;

const UNBOUNDED: i64 = i64::MAX / 4;

/// Smallest `m >= 2` with `P_m > 0`, within the vector's horizon.
pub fn minimal_d(cv: &ChiVector) -> Option<u32> {
    (2..=cv.horizon()).find(|&m| cv.at(m) > 0)
}

/// True iff no triple `(m, n, lcm)` inside the horizon has
/// `P_m = P_n = P_lcm = 1` with `P_gcd ≠ 1` (`gcd >= 2`).
pub fn gcd_filter(cv: &ChiVector) -> bool {
    let h = cv.horizon();
    for m in 2..=h {
        for n in m + 1..=h {
            let l = m.lcm(&n);
            let d = m.gcd(&n);
            if l > h || d < 2 {
                continue;
            }
            if cv.at(m) == 1 && cv.at(n) == 1 && cv.at(l) == 1 && cv.at(d) != 1 {
                return false;
            }
        }
    }
    true
}

/// Which rules [`consistent`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rules {
    pub semigroup: bool,
    pub gcd: bool,
}

/// Propagates both rules to a fixed point over `P₁ … P_horizon`, starting
/// from the pinned values. Returns `false` on an empty interval.
pub fn consistent(pinned: &BTreeMap<u32, i64>, horizon: u32, rules: Rules) -> bool {
    let h = horizon as usize;
    let mut lo = vec![0i64; h + 1];
    let mut hi = vec![UNBOUNDED; h + 1];
    for (&m, &v) in pinned {
        let m = m as usize;
        if m == 0 || m > h {
            continue;
        }
        lo[m] = lo[m].max(v);
        hi[m] = hi[m].min(v);
    }
    loop {
        if (1..=h).any(|m| lo[m] > hi[m]) {
            return false;
        }
        let mut changed = false;
        if rules.semigroup {
            for a in 1..=h {
                if lo[a] < 1 {
                    continue;
                }
                for b in 1..=h - a {
                    let c = a + b;
                    if lo[c] < lo[b] {
                        lo[c] = lo[b];
                        changed = true;
                    }
                    if hi[b] > hi[c] {
                        hi[b] = hi[c];
                        changed = true;
                    }
                }
            }
        }
        if rules.gcd {
            let one = |v: usize, lo: &[i64], hi: &[i64]| lo[v] == 1 && hi[v] == 1;
            for m in 1..=h {
                for n in m + 1..=h {
                    let l = m.lcm(&n);
                    if l > h || !(one(m, &lo, &hi) && one(n, &lo, &hi) && one(l, &lo, &hi)) {
                        continue;
                    }
                    let d = m.gcd(&n);
                    if lo[d] > 1 || hi[d] < 1 {
                        return false;
                    }
                    if !one(d, &lo, &hi) {
                        lo[d] = 1;
                        hi[d] = 1;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}
