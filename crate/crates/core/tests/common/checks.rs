//! Property checks shared by the property suites and the acceptance run.
//! Each returns a short summary on success and the first counterexample on
//! failure.
#![allow(dead_code)]

use pluribasket::basket::{delta_pair, determinant, is_prime_packing};
use pluribasket::canonical::{level_packings, pack_level};
use pluribasket::farey::{farey_level, new_fractions, Fraction, Position};
use pluribasket::formal::ladder::{
    assemble_ladder, check_r6, inequality_314, packing_choice_of, rr_invert, Tail,
};
use pluribasket::{epsilon, initial_basket, step_basket, Basket, FormalBasket, Rational};

use super::{all_pairs, formal_corpus, formal_corpus_chi2_zero, random_basket, rng};

pub type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn two(e1: (u32, u32), e2: (u32, u32)) -> Basket {
    Basket::canonicalize(&[(e1.0, e1.1, 1), (e2.0, e2.1, 1)]).unwrap()
}

/// Packing monotonicity, the σ′ defect and the equality criterion, for all
/// pairs of entries with `r <= rmax` and `n <= 12`.
pub fn packing_monotonicity(rmax: u32) -> Check {
    let pairs = all_pairs(rmax);
    let mut count = 0;
    for (i, &e1) in pairs.iter().enumerate() {
        for &e2 in &pairs[i..] {
            let before = two(e1, e2);
            let after = before.pack(e1, e2).map_err(|e| e.to_string())?;
            ensure!(before.sigma() == after.sigma(), "sigma changed packing {e1:?} {e2:?}");
            let (b1, r1) = (i64::from(e1.0), i64::from(e1.1));
            let (b2, r2) = (i64::from(e2.0), i64::from(e2.1));
            let d = r1 * b2 - r2 * b1;
            let defect = Rational::new(d * d, r1 * r2 * (r1 + r2));
            ensure!(
                before.sigma_prime() - after.sigma_prime() == defect,
                "sigma' defect wrong for {e1:?} {e2:?}"
            );
            for n in 1..=12u32 {
                let (x, y) = (before.delta(n), after.delta(n));
                ensure!(x >= y, "delta^{n} grew packing {e1:?} {e2:?}");
                let same_cell = (0..=n as i64).any(|k| {
                    let inside = |b: i64, r: i64| k * r <= b * i64::from(n) && b * i64::from(n) <= (k + 1) * r;
                    inside(b1, r1) && inside(b2, r2)
                });
                ensure!(
                    (x == y) == same_cell,
                    "equality criterion fails for {e1:?} {e2:?} at n = {n}"
                );
                count += 1;
            }
        }
    }
    Ok(format!("{count} (pair, pair, n) cases"))
}

/// `Δⁿ` drops by exactly one across a prime packing of level `n`.
pub fn prime_drop(rmax: u32) -> Check {
    let pairs = all_pairs(rmax);
    let mut count = 0;
    for &e1 in &pairs {
        for &e2 in &pairs {
            let (prime, n) = is_prime_packing(e1, e2);
            if !prime || e1 >= e2 {
                continue;
            }
            let merged = (e1.0 + e2.0, e1.1 + e2.1);
            let drop = delta_pair(e1.0, e1.1, n) + delta_pair(e2.0, e2.1, n)
                - delta_pair(merged.0, merged.1, n);
            ensure!(drop == 1, "drop {drop} for {e1:?} + {e2:?}");
            ensure!(determinant(e1, e2).abs() == 1, "determinant for {e1:?} {e2:?}");
            count += 1;
        }
    }
    Ok(format!("{count} prime pairs"))
}

/// `2r·Δʲ(b, r) = j̄b(r − j̄b) − jb(r − jb)` for every single pair.
pub fn correction_link(rmax: u32, jmax: u32) -> Check {
    for (b, r) in all_pairs(rmax) {
        for j in 2..=jmax {
            let (jb, r_) = (i64::from(j * b), i64::from(r));
            let s = jb % r_;
            let lhs = s * (r_ - s) - jb * (r_ - jb);
            ensure!(lhs == 2 * r_ * delta_pair(b, r, j), "link fails at ({b},{r}), j = {j}");
        }
    }
    Ok(format!("r <= {rmax}, j <= {jmax}"))
}

/// A generalized pair `(kb, kr)` behaves like `k × (b, r)`.
pub fn generalized_pairs(rmax: u32) -> Check {
    for (b, r) in all_pairs(rmax) {
        for k in 2..=3u32 {
            let g = Basket::canonicalize(&[(k * b, k * r, 1)]).map_err(|e| e.to_string())?;
            ensure!(g == Basket::of(&[(b, r, k)]), "({}, {}) did not reduce", k * b, k * r);
            ensure!(g.sigma() == i64::from(k * b), "sigma of generalized pair");
            ensure!(
                g.sigma_prime() == Rational::new(i64::from(k * k * b * b), i64::from(k * r)),
                "sigma' of generalized pair"
            );
            for n in 1..=12 {
                let (kb, kr) = (i64::from(k * b), i64::from(k * r));
                let d = kb * i64::from(n) / kr;
                ensure!(g.delta(n) == d * kb * i64::from(n) - (d * d + d) * kr / 2, "delta of generalized pair");
            }
        }
    }
    Ok("reduction preserves sigma, sigma', delta".into())
}

/// Adjacent-slope determinant 1 on every level `n <= nmax` and cutoff `rmax <= rmax_top`, the
/// mediant property and `S⁽⁰⁾ = … = S⁽⁴⁾`.
pub fn farey_structure(nmax: u32, rmax_top: u32) -> Check {
    for rmax in 2..=rmax_top {
        let base = farey_level(0, rmax).fractions;
        for n in 0..=nmax {
            let level = farey_level(n, rmax);
            ensure!(level.verify_unimodular(), "S({n}) with rmax {rmax} not unimodular");
            if n <= 4 {
                ensure!(level.fractions == base, "S({n}) differs from S(0)");
            }
        }
    }
    for n in 5..=nmax {
        let prev = farey_level(n - 1, n);
        for f in new_fractions(n) {
            match prev.neighbors(f).map_err(|e| e.to_string())? {
                Position::Between { lower, upper } => ensure!(
                    Fraction::new(lower.num + upper.num, lower.den + upper.den) == f
                        && lower.den + upper.den == n,
                    "{f} is not the mediant of its neighbors"
                ),
                Position::Member => return Err(format!("{f} already in S({})", n - 1)),
            }
        }
    }
    Ok(format!("n <= {nmax}, rmax <= {rmax_top}"))
}

/// Re-unpacking consistency, the four level identities, σ along the sequence and the
/// constructive packing count, on random baskets.
pub fn canonical_identities(seed: u64, size: usize, rmax: u32, max_entries: usize) -> Check {
    let mut g = rng(seed);
    let mut levels = 0;
    for _ in 0..size {
        let b = random_basket(&mut g, rmax, max_entries);
        let top = b.max_r() + 1;
        let b0 = initial_basket(&b);
        ensure!(b0.delta(3) == b.delta(3) && b0.delta(4) == b.delta(4), "delta 3/4 differ for {b}");
        ensure!(b0 == step_basket(&b, 0), "initial basket mismatch for {b}");
        let steps: Vec<Basket> = (0..=top).map(|n| step_basket(&b, n)).collect();
        ensure!(steps[top as usize] == b, "{b} not stable at {top}");
        for n in 1..=top as usize {
            let (prev, cur) = (&steps[n - 1], &steps[n]);
            let nn = n as u32;
            ensure!(step_basket(cur, nn - 1) == *prev, "re-unpacking {b} disagrees at n = {n}");
            ensure!(cur.sigma() == b.sigma(), "sigma drifts along {b}");
            for j in 1..nn {
                ensure!(prev.delta(j) == cur.delta(j), "delta^{j} differs at step {n} of {b}");
            }
            let eps = epsilon(&b, nn).map_err(|e| e.to_string())? as i64;
            ensure!(prev.delta(nn) - cur.delta(nn) == eps, "eps_{n} is not the delta drop for {b}");
            ensure!(cur.delta(nn) == b.delta(nn), "delta^{n}(B^(n)) != delta^{n}(B) for {b}");
            let moves: Vec<_> = level_packings(nn)
                .into_iter()
                .map(|lp| (lp, cur.mult_of(lp.merged.pair())))
                .filter(|&(_, k)| k > 0)
                .collect();
            let total: u32 = moves.iter().map(|&(_, k)| k).sum();
            ensure!(i64::from(total) == eps, "{total} level-{n} entries but eps {eps} for {b}");
            for (lp, _) in &moves {
                ensure!(
                    is_prime_packing(lp.lower.pair(), lp.upper.pair()) == (true, nn),
                    "non-prime level-{n} packing"
                );
            }
            let packed = pack_level(prev, &moves).map_err(|e| e.to_string())?;
            ensure!(packed == *cur, "packing B^({}) does not give B^({n}) for {b}", n - 1);
            for i in 0..n {
                ensure!(step_basket(cur, i as u32) == steps[i], "B^({i}) of B^({n}) differs for {b}");
            }
            levels += 1;
        }
    }
    Ok(format!("{size} baskets, {levels} levels"))
}

/// Closed form against recursion for `m <= mmax`.
pub fn two_path_rr(corpus: &[FormalBasket], mmax: u32) -> Check {
    for fb in corpus {
        let cv = fb.chi_seq(mmax).map_err(|e| format!("{e} for {}", fb.basket))?;
        ensure!(cv.at(2) == fb.chi2, "chi_2 not reproduced");
        for m in 2..=mmax {
            let closed = fb.chi_closed(m).map_err(|e| e.to_string())?;
            ensure!(closed == cv.at(m), "chi_{m} paths differ for {} (chi {})", fb.basket, fb.chi);
        }
    }
    Ok(format!("{} formal baskets, m <= {mmax}", corpus.len()))
}

/// Packing never raises `K³` or any `χ_m`.
pub fn packing_lowers_plurigenera(corpus: &[FormalBasket]) -> Check {
    let mut packings = 0;
    for fb in corpus {
        let base = fb.chi_seq(24).map_err(|e| e.to_string())?;
        let kinds: Vec<_> = fb.basket.iter().map(|p| p.kind()).collect();
        for (i, &e1) in kinds.iter().enumerate() {
            for &e2 in &kinds[i + 1..] {
                let packed = FormalBasket::new(fb.basket.pack(e1, e2).unwrap(), fb.chi, fb.chi2);
                ensure!(packed.k3() <= fb.k3(), "K3 grew packing {e1:?} {e2:?} in {}", fb.basket);
                let cv = packed.chi_seq(24).map_err(|e| e.to_string())?;
                for m in 2..=24 {
                    ensure!(cv.at(m) <= base.at(m), "chi_{m} grew packing {e1:?} {e2:?} in {}", fb.basket);
                }
                packings += 1;
            }
        }
    }
    Ok(format!("{packings} packings"))
}

pub fn tail_of(b: &Basket) -> Tail {
    initial_basket(b).iter().filter(|p| p.r >= 5).map(|p| (p.r, p.mult)).collect()
}

/// The vanishing expression, `ε₅ >= 0`, and inequality (3.14).
pub fn eps6_and_314(corpus: &[FormalBasket]) -> Check {
    for fb in corpus {
        let cv = fb.chi_seq(13).map_err(|e| e.to_string())?;
        let tail = tail_of(&fb.basket);
        let x = |m: u32| cv.at(m);
        let expr = -3 * x(2) - x(3) + x(4) + x(5) + x(6) - x(7);
        let eps: i64 = tail.iter().map(|(&r, &k)| if r == 5 { 1 } else { 2 } * i64::from(k)).sum();
        ensure!(expr == eps, "vanishing identity fails for {} (chi {}, chi2 {})", fb.basket, fb.chi, fb.chi2);
        let sigma5: i64 = tail.values().map(|&k| i64::from(k)).sum();
        ensure!(2 * cv.chi - x(3) + 2 * x(5) - x(6) - sigma5 >= 0, "eps5 < 0 for {}", fb.basket);
        let (lhs, rhs, _, holds) = inequality_314(&cv, &tail).map_err(|e| e.to_string())?;
        ensure!(holds, "(3.14) fails for {}: {lhs} < {rhs}", fb.basket);
    }
    Ok(format!("{} formal baskets", corpus.len()))
}

/// `rr_invert` against direct computation on the basket itself.
pub fn inversion_round_trip(corpus: &[FormalBasket]) -> Check {
    for fb in corpus {
        let b = &fb.basket;
        let cv = fb.chi_seq(13).map_err(|e| e.to_string())?;
        let tail = tail_of(b);
        let lad = rr_invert(&cv, &tail).map_err(|e| e.to_string())?;
        let b0 = initial_basket(b);
        let sp = fb.sigma_prime() - fb.k3();
        ensure!(Rational::from_integer(lad.tau) == sp, "tau wrong for {b}");
        ensure!(lad.sigma == b.sigma(), "sigma wrong for {b}");
        for m in 3..=12 {
            ensure!(lad.delta(m) == b.delta(m), "delta^{m} wrong for {b}");
        }
        for &(r, k) in &lad.n0 {
            ensure!(i64::from(b0.mult_of((1, r))) == k, "n0(1,{r}) wrong for {b}");
        }
        let n0_total: i64 = lad.n0.iter().map(|&(_, k)| k).sum();
        ensure!(n0_total == b0.count() as i64, "initial basket has entries the ladder misses: {b}");
        let eps = |n| epsilon(b, n).map(|e| e as i64).map_err(|e| e.to_string());
        ensure!(lad.eps5 == eps(5)?, "eps5 wrong for {b}");
        ensure!(lad.eps6 == 0 && eps(6)? == 0, "eps6 nonzero for {b}");
        ensure!(lad.eps7 == eps(7)?, "eps7 wrong for {b}");
        ensure!(lad.eps8 == eps(8)?, "eps8 wrong for {b}");
        let eta = packing_choice_of(b).eta;
        ensure!(lad.eps9.at(eta) == eps(9)?, "eps9 wrong for {b}");
        ensure!(lad.eps10.at(eta) == eps(10)?, "eps10 wrong for {b}");
        ensure!(lad.eps12.at(eta) == eps(12)?, "eps12 wrong for {b}");
        ensure!(lad.is_consistent(), "violations {:?} for {b}", lad.violations);
    }
    Ok(format!("{} formal baskets", corpus.len()))
}

/// Closed-form level tables against canonical unpacking, through level 7
/// always and through level 12 when the restricted tables apply.
pub fn ladder_tables(corpus: &[FormalBasket]) -> Check {
    let mut restricted = 0;
    for fb in corpus {
        let b = &fb.basket;
        let cv = fb.chi_seq(13).map_err(|e| e.to_string())?;
        let tail = tail_of(b);
        let pc = packing_choice_of(b);
        let through = if check_r6(&cv, &tail) { 12 } else { 7 };
        let lad = assemble_ladder(&cv, &tail, pc, through).map_err(|e| format!("{e} for {b}"))?;
        for n in 5..=through {
            ensure!(lad.at(n) == Some(&step_basket(b, n)), "level {n} table wrong for {b}");
        }
        if through == 12 {
            restricted += 1;
        }
    }
    Ok(format!("{} baskets, {restricted} through level 12", corpus.len()))
}

/// Restricted baskets for the deep tables: `χ₂ = 0` and a tail of `(1,5)` only.
pub fn restricted_corpus(seed: u64, size: usize) -> Vec<FormalBasket> {
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < size {
        for fb in formal_corpus_chi2_zero(s, 4 * size) {
            let t = tail_of(&fb.basket);
            if t.keys().all(|&r| r == 5) && out.len() < size {
                out.push(fb);
            }
        }
        s += 1;
    }
    out
}

pub fn main_corpus() -> Vec<FormalBasket> {
    formal_corpus(2718, 1000)
}

