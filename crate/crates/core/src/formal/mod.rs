//! Formal baskets `(B, χ, χ₂)` and their Riemann–Roch plurigenera.
//!
//! Two evaluation paths are provided. [`FormalBasket::chi_seq`] runs the
//! integer recursion driven by `σ`, `τ` and `Δᵐ`; [`FormalBasket::chi_closed`]
//! evaluates Reid's closed formula with the correction term `l(m)`. They must
//! agree for every `m >= 2`.

pub mod ladder;

use serde::{Deserialize, Serialize};

use crate::basket::Basket;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A basket together with integer values for `χ(O)` and `χ₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormalBasket {
    pub basket: Basket,
    pub chi: i64,
    pub chi2: i64,
}

/// `χ` together with `χ₂, χ₃, …` (so `values[0]` is `χ₂`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChiVector {
    pub chi: i64,
    pub values: Vec<i64>,
}

impl ChiVector {
    pub fn new(chi: i64, values: Vec<i64>) -> Self {
        ChiVector { chi, values }
    }

    /// `χ_m` for `m >= 2`.
    pub fn get(&self, m: u32) -> Option<i64> {
        if m < 2 {
            return None;
        }
        self.values.get(m as usize - 2).copied()
    }

    /// `χ_m`, panicking past the horizon.
    pub fn at(&self, m: u32) -> i64 {
        self.get(m)
            .unwrap_or_else(|| panic!("chi_{m} beyond horizon {}", self.horizon()))
    }

    /// Largest `m` with a stored value.
    pub fn horizon(&self) -> u32 {
        self.values.len() as u32 + 1
    }

    /// Fails unless values through `χ_needed` are present.
    pub fn require(&self, needed: u32) -> Result<()> {
        if self.horizon() < needed {
            Err(Error::ShortChiVector { needed, have: self.horizon() })
        } else {
            Ok(())
        }
    }

    /// The prefix through `χ_m`.
    pub fn truncated(&self, m: u32) -> ChiVector {
        let keep = (m.saturating_sub(1) as usize).min(self.values.len());
        ChiVector::new(self.chi, self.values[..keep].to_vec())
    }
}

impl FormalBasket {
    pub fn new(basket: Basket, chi: i64, chi2: i64) -> Self {
        FormalBasket { basket, chi, chi2 }
    }

    pub fn sigma(&self) -> i64 {
        self.basket.sigma()
    }

    pub fn sigma_prime(&self) -> Rational {
        self.basket.sigma_prime()
    }

    /// `χ₃ = −σ + 10χ + 5χ₂`.
    pub fn chi3(&self) -> i64 {
        -self.sigma() + 10 * self.chi + 5 * self.chi2
    }

    /// `τ = σ′ − K³ = 4χ + 3χ₂ − χ₃`.
    pub fn tau(&self) -> i64 {
        4 * self.chi + 3 * self.chi2 - self.chi3()
    }

    /// `K³ = −σ + σ′ + 6χ + 2χ₂`.
    pub fn k3(&self) -> Rational {
        self.sigma_prime() + Rational::from_integer(6 * self.chi + 2 * self.chi2 - self.sigma())
    }

    pub fn is_positive(&self) -> bool {
        self.k3().is_positive()
    }

    /// `χ₂ … χ_mmax` by the recursion `χ_{m+1} = χ_m + (−m²τ + mσ)/2 − 2χ + Δᵐ`.
    pub fn chi_seq(&self, mmax: u32) -> Result<ChiVector> {
        let sigma = self.sigma();
        let tau = self.tau();
        let mut values = vec![self.chi2];
        if mmax >= 3 {
            values.push(self.chi3());
        }
        for m in 3..mmax {
            let mi = i64::from(m);
            let num = -mi * mi * tau + mi * sigma;
            if num % 2 != 0 {
                return Err(Error::NonInteger {
                    m: m + 1,
                    value: Rational::new(num, 2).to_string(),
                });
            }
            let prev = *values.last().expect("seeded");
            values.push(prev + num / 2 - 2 * self.chi + self.basket.delta(m));
        }
        values.truncate(mmax.saturating_sub(1) as usize);
        Ok(ChiVector::new(self.chi, values))
    }

    /// `χ_m = m(m−1)(2m−1)K³/12 − (2m−1)χ + l(m)`.
    pub fn chi_closed(&self, m: u32) -> Result<i64> {
        let mi = i64::from(m);
        let value = self.k3().scale(mi * (mi - 1) * (2 * mi - 1)).div_int(12)
            + Rational::from_integer(-(2 * mi - 1) * self.chi)
            + self.basket.rr_correction(m);
        value.to_i64().ok_or(Error::NonInteger { m, value: value.to_string() })
    }

    /// `P_m` read as `χ_m`; plurigenera of minimal threefolds of general type
    /// coincide with these for `m >= 2`.
    pub fn plurigenus(&self, m: u32) -> Result<i64> {
        Ok(self.chi_seq(m)?.at(m))
    }
}
