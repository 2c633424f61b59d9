#![allow(dead_code)]

pub mod checks;
pub mod fixtures;

use num_integer::Integer;
use pluribasket::{Basket, FormalBasket};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every coprime `(b, r)` with `2 <= r <= rmax` and `b <= r/2`.
pub fn all_pairs(rmax: u32) -> Vec<(u32, u32)> {
    (2..=rmax)
        .flat_map(|r| (1..=r / 2).filter(move |b| b.gcd(&r) == 1).map(move |b| (b, r)))
        .collect()
}

pub fn random_basket(rng: &mut ChaCha8Rng, rmax: u32, max_entries: usize) -> Basket {
    let pool = all_pairs(rmax);
    let n = rng.gen_range(1..=max_entries);
    let raw: Vec<_> = (0..n)
        .map(|_| {
            let (b, r) = pool[rng.gen_range(0..pool.len())];
            (b, r, 1)
        })
        .collect();
    Basket::canonicalize(&raw).unwrap()
}

/// The formal-basket corpus: `r <= 20`, at most 10 entries,
/// `χ ∈ [−5, 10]`, `χ₂ ∈ [0, 5]`.
pub fn formal_corpus(seed: u64, size: usize) -> Vec<FormalBasket> {
    let mut g = rng(seed);
    (0..size)
        .map(|_| {
            let b = random_basket(&mut g, 20, 10);
            FormalBasket::new(b, g.gen_range(-5..=10), g.gen_range(0..=5))
        })
        .collect()
}

/// Same shape with `χ₂ = 0`.
pub fn formal_corpus_chi2_zero(seed: u64, size: usize) -> Vec<FormalBasket> {
    formal_corpus(seed, size)
        .into_iter()
        .map(|f| FormalBasket::new(f.basket, f.chi, 0))
        .collect()
}

pub fn b(s: &str) -> Basket {
    s.parse().unwrap()
}
