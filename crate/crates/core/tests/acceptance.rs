//! One line per acceptance criterion. Run with `--nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use common::checks::{self, Check};
use common::fixtures::{named, FIXTURES, X46_DEGREE, X46_WEIGHTS};
use pluribasket::enumerate::{enumerate_candidates, verify_p12, verify_p24, Constraints};
use pluribasket::{wps_volume, FormalBasket, Rational, WeightedHypersurface};

/// Items whose stated value disagrees with exact computation; each must fail
/// with exactly this message, and nothing else may fail.
const KNOWN_DISCREPANCIES: &[(&str, &str)] =
    &[("1.case6.chi10", "stated chi_10 = 0, computed chi_10 = 1")];

struct Outcome {
    id: &'static str,
    result: Check,
    elapsed: Duration,
    budget: Duration,
}

fn run(id: &'static str, budget_secs: u64, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let result = f();
    Outcome { id, result, elapsed: start.elapsed(), budget: Duration::from_secs(budget_secs) }
}

fn expect(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn p24_of(name: &str) -> i64 {
    named(name).formal().plurigenus(24).unwrap()
}

fn k3_of(name: &str) -> Rational {
    named(name).formal().k3()
}

fn fixture_suite() -> Vec<Outcome> {
    vec![
        run("1.case6.k3_p24", 1, || {
            let fb = named("case 6").formal();
            expect(fb.k3() == Rational::new(3, 770), format!("K3 = {}", fb.k3()))?;
            expect(fb.plurigenus(24).unwrap() == 8, "chi_24 != 8")?;
            Ok("K3 = 3/770, chi_24 = 8".into())
        }),
        run("1.case6.chi10", 1, || {
            let v = named("case 6").formal().plurigenus(10).unwrap();
            expect(v == 0, format!("stated chi_10 = 0, computed chi_10 = {v}"))?;
            Ok("chi_10 = 0".into())
        }),
        run("1.9-II", 1, || {
            expect(p24_of("9-II") == 6, "P24 != 6")?;
            expect(k3_of("9-II packed").is_zero(), "packed K3 != 0")?;
            Ok("chi_24 = 6, packed K3 = 0".into())
        }),
        run("1.9-V", 1, || {
            expect(p24_of("9-V chi 2") == 4 && p24_of("9-V chi 2 B'") == 3, "chi 2 P24 values")?;
            expect(k3_of("9-V chi 2 B''").is_negative(), "B'' K3 not negative")?;
            expect(p24_of("9-V chi 3") == 8, "chi 3 P24 != 8")?;
            expect(p24_of("9-V chi 3 B'") == 6 && p24_of("9-V chi 3 B''") == 4, "chi 3 descendants")?;
            Ok("chi 2: 4, 3, K3(B'') < 0; chi 3: 8, 6, 4".into())
        }),
        run("1.9-VI", 1, || {
            expect(p24_of("9-VI") == 6, "P24 != 6")?;
            expect(k3_of("9-VI packed").is_zero(), "(5,14) basket K3 != 0")?;
            Ok("P24 = 6, (5,14) basket K3 = 0".into())
        }),
        run("1.10-I", 1, || {
            expect(p24_of("10-I chi 2") == 4 && p24_of("10-I chi 3") == 2, "P24 values")?;
            Ok("chi 2: 4, chi 3: 2".into())
        }),
        run("1.10-II", 1, || {
            expect(p24_of("10-II chi 2") == 5 && p24_of("10-II chi 2 packed") == 3, "chi 2 values")?;
            expect(p24_of("10-II chi 3") == 3, "chi 3 value")?;
            Ok("chi 2: 5 and 3, chi 3: 3".into())
        }),
        run("1.X46", 1, || {
            let h = WeightedHypersurface::new(&X46_WEIGHTS, X46_DEGREE).map_err(|e| e.to_string())?;
            let p = h.plurigenera(10).map_err(|e| e.to_string())?;
            expect(p == [0, 0, 0, 1, 1, 1, 1, 1, 1, 2], format!("P1..P10 = {p:?}"))?;
            let v = wps_volume(&h).map_err(|e| e.to_string())?;
            expect(v == Rational::new(1, 420), format!("volume {v}"))?;
            Ok("P1..P10 and volume 1/420".into())
        }),
    ]
}

fn theorem_replays() -> Vec<Outcome> {
    vec![
        run("2.p12", 900, || {
            let r = verify_p12(&Constraints::default()).map_err(|e| e.to_string())?;
            let zero = r.candidates.iter().filter(|c| c.p[10] == 0).count();
            expect(zero == 0, format!("{zero} candidates with P12 = 0"))?;
            Ok(format!("{} candidates, none with P12 = 0", r.candidates.len()))
        }),
        run("2.p24", 900, || {
            let r = verify_p24(&Constraints::default()).map_err(|e| e.to_string())?;
            for f in FIXTURES {
                let fb: FormalBasket = f.formal();
                let p24 = fb.plurigenus(24).unwrap();
                expect(r.trace_contains(f.chi, &f.basket(), p24), format!("{} not in trace", f.name))?;
            }
            Ok(format!(
                "{} candidates, all with min P10 >= 2 or min P24 >= 2; {} fixtures in trace",
                r.candidates.len(),
                FIXTURES.len()
            ))
        }),
        run("2.finite", 900, || {
            let r = enumerate_candidates(&Constraints::default());
            let min = r.stats.min_k3.clone().ok_or("no survivors")?;
            expect(min.is_positive(), format!("min K3 = {min}"))?;
            Ok(format!("{} survivors, {} positive baskets, min K3 = {min}", r.candidates.len(), r.stats.descendants))
        }),
    ]
}

fn property_suites() -> Vec<Outcome> {
    let corpus = checks::main_corpus();
    vec![
        run("3.packing", 60, || checks::packing_monotonicity(15)),
        run("3.prime_drop", 60, || checks::prime_drop(15)),
        run("3.unimodular", 60, || checks::farey_structure(30, 100)),
        run("3.canonical", 60, || checks::canonical_identities(2019, 500, 30, 8)),
        run("3.two_path", 60, || checks::two_path_rr(&corpus, 24)),
        run("3.eps6_314", 60, || checks::eps6_and_314(&corpus)),
        run("3.inversion", 60, || checks::inversion_round_trip(&corpus)),
    ]
}

fn ablation() -> Vec<Outcome> {
    vec![run("4.ablation", 900, || {
        let c = Constraints { enforce_eps6: false, ..Constraints::default() };
        let r = enumerate_candidates(&c);
        let spurious = r.candidates.iter().filter(|c| c.p[10] == 0).count();
        expect(spurious > 0, "no spurious P12 = 0 candidates")?;
        Ok(format!("{spurious} spurious P12 = 0 candidates"))
    })]
}

#[test]
fn acceptance() {
    let outcomes: Vec<Outcome> =
        [fixture_suite(), theorem_replays(), property_suites(), ablation()].into_iter().flatten().collect();
    let mut unexpected = Vec::new();
    for o in &outcomes {
        let over = o.elapsed > o.budget;
        let (tag, detail) = match &o.result {
            Ok(s) if !over => ("PASS", s.clone()),
            Ok(s) => ("FAIL", format!("{s}; over the {:?} budget", o.budget)),
            Err(e) => ("FAIL", e.clone()),
        };
        println!("{tag} {:<18} {:>9.3}s  {detail}", o.id, o.elapsed.as_secs_f64());
        let known = KNOWN_DISCREPANCIES.iter().find(|(id, _)| *id == o.id);
        match (tag, known) {
            ("PASS", None) => {}
            ("FAIL", Some((_, msg))) if detail == *msg => {}
            _ => unexpected.push(o.id),
        }
    }
    assert!(unexpected.is_empty(), "unexpected outcomes: {unexpected:?}");
}
