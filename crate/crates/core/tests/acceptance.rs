//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use elocc_core::catalysis::{construct_catalyst, maximally_entangled, p_catalyzed, p_max_to_max_entangled};
use elocc_core::multicopy::{estimate_pm, find_finite_m, p_multicopy_avg, FiniteCopyOutcome};
use elocc_core::oracle::{brute_p_max, brute_tensor_power};
use elocc_core::scalar::parse_exact;
use elocc_core::spectra::combinatorics::binomial;
use elocc_core::{closed_form_pe, p_max, CompressedSpectrum, Exact, Scalar};
use num_bigint::BigUint;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Spectrum = CompressedSpectrum<Exact>;
type Outcome = Result<(), String>;
type Criterion = (&'static str, Box<dyn FnOnce(&mut StdRng) -> Outcome>);

fn q(s: &str) -> Exact {
    parse_exact(s).unwrap()
}

fn spectrum(values: &[&str]) -> Spectrum {
    CompressedSpectrum::from_coefficients(values.iter().map(|v| q(v)).collect()).unwrap()
}

fn first() -> (Spectrum, Spectrum) {
    (
        spectrum(&["0.4", "0.4", "0.1", "0.1"]),
        spectrum(&["0.5", "0.25", "0.25"]),
    )
}

fn second() -> (Spectrum, Spectrum) {
    (
        spectrum(&["0.40", "0.40", "0.10", "0.10", "0.01"]),
        spectrum(&["0.50", "0.25", "0.20", "0.05", "0.01"]),
    )
}

fn phi() -> Spectrum {
    spectrum(&["0.6", "0.4"])
}

/// Random spectrum of dimension `1..=max_dim` with integer weights `0..=9`.
fn random_spectrum(rng: &mut StdRng, max_dim: usize, full_rank: bool) -> Spectrum {
    loop {
        let dim = rng.gen_range(1..=max_dim);
        let low = u64::from(full_rank);
        let w: Vec<u64> = (0..dim).map(|_| rng.gen_range(low..=9)).collect();
        if w.iter().any(|&x| x > 0) {
            return CompressedSpectrum::from_coefficients(w.into_iter().map(|x| Exact::from_ratio(x, 1)).collect())
                .unwrap();
        }
    }
}

fn expect_eq(what: &str, got: &Exact, want: &Exact) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn c1() -> Outcome {
    let (s, t) = first();
    expect_eq("pMax", &p_max(&s, &t).p_max, &q("4/5"))
}

fn c2() -> Outcome {
    let (s, t) = first();
    expect_eq("pCatalyzed", &p_catalyzed(&s, &t, &phi()), &Exact::one())
}

fn c3() -> Outcome {
    let (s, t) = first();
    let three = p_max(
        &s.tensor_power(3).map_err(|e| e.to_string())?,
        &t.tensor_power(3).unwrap(),
    )
    .p_max;
    expect_eq("m = 3", &three, &Exact::one())?;
    let (s2, t2) = (s.tensor_power(2).unwrap(), t.tensor_power(2).unwrap());
    expect_eq("m = 2", &p_max(&s2, &t2).p_max, &q("24/25"))?;
    let brute = brute_p_max(&s2.expand().unwrap(), &t2.expand().unwrap()).map_err(|e| e.to_string())?;
    expect_eq("m = 2 brute force", &brute, &q("24/25"))
}

fn c4() -> Outcome {
    let (s, t) = second();
    let catalyst = phi().tensor_power(11).map_err(|e| e.to_string())?;
    expect_eq("pCatalyzed", &p_catalyzed(&s, &t, &catalyst), &Exact::one())
}

fn c5() -> Outcome {
    let (s, t) = second();
    for m in 1..=8 {
        let r = p_multicopy_avg(&s, &t, m).map_err(|e| e.to_string())?;
        if r.radicand >= Exact::one() {
            return Err(format!("m = {m}: pMax = {}", r.radicand));
        }
    }
    Ok(())
}

fn c6(rng: &mut StdRng) -> Outcome {
    for i in 0..200 {
        let s = random_spectrum(rng, 5, false);
        let t = random_spectrum(rng, 5, false);
        let k = rng.gen_range(2u32..=4);
        let catalysed = p_catalyzed(&s, &t, &maximally_entangled(&BigUint::from(k)).unwrap());
        let plain = p_max(&s, &t).p_max;
        if catalysed != plain {
            return Err(format!("instance {i} ({s} -> {t}, k = {k}): {catalysed} != {plain}"));
        }
    }
    Ok(())
}

fn c7(rng: &mut StdRng) -> Outcome {
    for i in 0..50 {
        let s = random_spectrum(rng, 4, false);
        let t = random_spectrum(rng, 4, false);
        for m in [2, 3] {
            let c = construct_catalyst(&s, &t, m).map_err(|e| e.to_string())?;
            let check = c.verify(&s, &t);
            if !check.holds {
                return Err(format!(
                    "instance {i} ({s} -> {t}, m = {m}): {} ^ {m} < {} (rounded: {})",
                    check.catalyzed, c.radicand, c.weights_rounded
                ));
            }
        }
    }
    Ok(())
}

fn c8(rng: &mut StdRng) -> Outcome {
    let k = BigUint::from(2u32);
    for i in 0..100 {
        let s = random_spectrum(rng, 4, false);
        let t = random_spectrum(rng, 4, false);
        let catalyst = loop {
            let c = random_spectrum(rng, 2, true);
            if *c.dimension() == k {
                break c;
            }
        };
        let k_gamma = p_max_to_max_entangled(&catalyst, &k).map_err(|e| e.to_string())?;
        let catalysed = p_catalyzed(&s, &t, &catalyst);
        for m in 1..=4 {
            let lhs = p_max(&s.tensor_power(m).unwrap(), &t.tensor_power(m).unwrap()).p_max;
            let rhs = k_gamma.clone() * catalysed.powi(m);
            if lhs < rhs {
                return Err(format!(
                    "instance {i} ({s} -> {t}, φ = {catalyst}, m = {m}): {lhs} < {rhs}"
                ));
            }
        }
    }
    Ok(())
}

fn c9(rng: &mut StdRng) -> Outcome {
    for i in 0..500 {
        let s = random_spectrum(rng, 4, false);
        let t = random_spectrum(rng, 4, false);
        let m = rng.gen_range(1u32..=4);
        let (sm, tm) = (s.tensor_power(m).unwrap(), t.tensor_power(m).unwrap());
        let (se, te) = (sm.expand().unwrap(), tm.expand().unwrap());
        if se != brute_tensor_power(&s.expand().unwrap(), m).unwrap() {
            return Err(format!("instance {i}: tensor power of {s} at m = {m} differs"));
        }
        if te != brute_tensor_power(&t.expand().unwrap(), m).unwrap() {
            return Err(format!("instance {i}: tensor power of {t} at m = {m} differs"));
        }
        let fast = p_max(&sm, &tm).p_max;
        let brute = brute_p_max(&se, &te).map_err(|e| e.to_string())?;
        if fast != brute {
            return Err(format!("instance {i} ({s} -> {t}, m = {m}): {fast} != {brute}"));
        }
    }
    Ok(())
}

fn c10(rng: &mut StdRng) -> Outcome {
    for i in 0..200 {
        let s = random_spectrum(rng, 4, false);
        let t = random_spectrum(rng, 4, false);
        let c = random_spectrum(rng, 3, false);
        let bound = closed_form_pe(&s, &t);
        let m = rng.gen_range(1u32..=3);
        let avg = p_multicopy_avg(&s, &t, m).map_err(|e| e.to_string())?;
        if avg.radicand > bound.powi(m) {
            return Err(format!(
                "instance {i} ({s} -> {t}, m = {m}): radicand {} > {bound}^{m}",
                avg.radicand
            ));
        }
        let catalysed = p_catalyzed(&s, &t, &c);
        if catalysed > bound {
            return Err(format!(
                "instance {i} ({s} -> {t}, catalyst {c}): {catalysed} > {bound}"
            ));
        }
    }
    let (s, t) = first();
    let trace = estimate_pm(&s, &t, 3, 0.0).map_err(|e| e.to_string())?;
    expect_eq("closedFormPE", &trace.closed_form_bound, &Exact::one())?;
    expect_eq("bestPAvg", &trace.best_radicand, &Exact::one())
}

fn c11() -> Outcome {
    let (s, t) = first();
    match find_finite_m(&s, &t, &q("9/10"), 20).map_err(|e| e.to_string())? {
        FiniteCopyOutcome::Found { copies, .. } if copies <= 3 => {}
        other => return Err(format!("p = 9/10: {other:?}")),
    }
    match find_finite_m(&s, &t, &Exact::one(), 20).map_err(|e| e.to_string())? {
        FiniteCopyOutcome::Found { copies: 3, .. } => {}
        other => return Err(format!("p = 1: {other:?}")),
    }
    let (s, t) = second();
    match find_finite_m(&s, &t, &Exact::one(), 8).map_err(|e| e.to_string())? {
        FiniteCopyOutcome::BoundaryCase { .. } => Ok(()),
        other => Err(format!("second example, p = 1: {other:?}")),
    }
}

fn c12() -> Outcome {
    let x = spectrum(&["0.3", "0.25", "0.2", "0.15", "0.1"]);
    let start = Instant::now();
    let power = x.tensor_power(20).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let limit = binomial(24, 4);
    if elapsed >= Duration::from_secs(5) {
        return Err(format!("took {elapsed:?}"));
    }
    if BigUint::from(power.block_count()) > limit {
        return Err(format!("{} blocks > {limit}", power.block_count()));
    }
    if !power.total_weight().is_one() {
        return Err("weights do not sum to 1".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let criteria: Vec<Criterion> = vec![
        ("single-copy conversion probability is 4/5", Box::new(|_| c1())),
        ("two-level catalyst makes the first example certain", Box::new(|_| c2())),
        (
            "three copies convert with certainty, two give 24/25",
            Box::new(|_| c3()),
        ),
        (
            "eleven catalyst copies make the second example certain",
            Box::new(|_| c4()),
        ),
        ("second example stays below 1 for m = 1..8", Box::new(|_| c5())),
        ("maximally entangled catalysts are inert", Box::new(c6)),
        ("constructed catalyst meets the multi-copy rate", Box::new(c7)),
        ("multi-copy probability bounds the catalysed protocol", Box::new(c8)),
        ("optimized paths agree with brute force", Box::new(c9)),
        ("closed-form bound dominates every rate", Box::new(c10)),
        ("finite copy search", Box::new(|_| c11())),
        (
            "20th tensor power of a 5-value spectrum is fast and compact",
            Box::new(|_| c12()),
        ),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        match check(&mut rng) {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
