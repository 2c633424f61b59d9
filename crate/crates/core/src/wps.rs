//! Plurigenera and volume of weighted hypersurfaces `X_d ⊂ P(w₀, …, w₄)`.
//!
//! For a well-formed quasi-smooth hypersurface with `K_X = O(a)`,
//! `a = d − Σwᵢ`, the plurigenus `P_m` is the coefficient of `t^{ma}` in the
//! Hilbert series `(1 − t^d) / Π(1 − t^{wᵢ})` and `K³ = d·a³ / Πwᵢ`.
//! Only the numerology is computed; quasi-smoothness is not checked.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedHypersurface {
    /// Ascending.
    pub weights: Vec<u32>,
    pub degree: u32,
}

fn gcd_all(xs: impl IntoIterator<Item = u32>) -> u32 {
    xs.into_iter().fold(0, |g, x| g.gcd(&x))
}

impl WeightedHypersurface {
    /// Validates five positive weights and well-formedness: any four weights
    /// are coprime and any three have a gcd dividing the degree.
    pub fn new(weights: &[u32], degree: u32) -> Result<Self> {
        if weights.len() != 5 {
            return Err(Error::Hypersurface(format!("expected 5 weights, got {}", weights.len())));
        }
        if weights.contains(&0) || degree == 0 {
            return Err(Error::Hypersurface("weights and degree must be positive".into()));
        }
        let mut w = weights.to_vec();
        w.sort_unstable();
        for skip in 0..5 {
            let g = gcd_all((0..5).filter(|&i| i != skip).map(|i| w[i]));
            if g != 1 {
                return Err(Error::Hypersurface(format!(
                    "weights {w:?} are not well formed: four of them share the factor {g}"
                )));
            }
        }
        for i in 0..5 {
            for j in i + 1..5 {
                let g = gcd_all((0..5).filter(|&k| k != i && k != j).map(|k| w[k]));
                if degree % g != 0 {
                    return Err(Error::Hypersurface(format!(
                        "hypersurface not well formed: {g} divides three weights but not {degree}"
                    )));
                }
            }
        }
        Ok(WeightedHypersurface { weights: w, degree })
    }

    /// `a = d − Σwᵢ`.
    pub fn amplitude(&self) -> i64 {
        i64::from(self.degree) - self.weights.iter().map(|&w| i64::from(w)).sum::<i64>()
    }

    /// Coefficient of `t^k` in the Hilbert series.
    pub fn hilbert_coeff(&self, k: u64) -> u64 {
        let k = k as usize;
        let mut counts = vec![0u64; k + 1];
        counts[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for i in w..=k {
                counts[i] += counts[i - w];
            }
        }
        let d = self.degree as usize;
        counts[k] - if k >= d { counts[k - d] } else { 0 }
    }

    /// `P_m`, the coefficient of `t^{ma}`.
    pub fn poincare_coeff(&self, m: u32) -> Result<u64> {
        let deg = i64::from(m) * self.amplitude();
        if deg < 0 {
            return Err(Error::Hypersurface(format!("negative degree {deg} for m = {m}")));
        }
        Ok(self.hilbert_coeff(deg as u64))
    }

    /// `P₁ … P_upto`.
    pub fn plurigenera(&self, upto: u32) -> Result<Vec<u64>> {
        (1..=upto).map(|m| self.poincare_coeff(m)).collect()
    }
}

/// `K³ = d·a³ / Πwᵢ`; requires `a >= 1`.
pub fn wps_volume(h: &WeightedHypersurface) -> Result<Rational> {
    let a = h.amplitude();
    if a < 1 {
        return Err(Error::Hypersurface(format!("amplitude {a} is not positive")));
    }
    let prod: i64 = h.weights.iter().map(|&w| i64::from(w)).product();
    Ok(Rational::new(i64::from(h.degree) * a * a * a, prod))
}
