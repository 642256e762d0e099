//! Published claims about the two worked examples, checked in exact arithmetic.

use elocc_core::catalysis::p_catalyzed;
use elocc_core::multicopy::{estimate_pm, find_finite_m, p_multicopy_avg, FiniteCopyOutcome};
use elocc_core::scalar::{parse_exact, render};
use elocc_core::{closed_form_pe, p_max, CompressedSpectrum, Exact};
use num_traits::One;

use crate::report::{ClaimResult, VerifyReport};

type Spectrum = CompressedSpectrum<Exact>;
type Check = Result<String, String>;
type Claim = (&'static str, fn() -> Check);

fn spectrum(values: &[&str]) -> Spectrum {
    CompressedSpectrum::from_coefficients(values.iter().map(|v| parse_exact(v).expect("literal")).collect())
        .expect("valid literal spectrum")
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

fn equals(got: Exact, want: Exact) -> Check {
    if got == want {
        Ok(render(&got))
    } else {
        Err(format!("got {}, expected {}", render(&got), render(&want)))
    }
}

fn single_copy() -> Check {
    let (s, t) = first();
    let r = p_max(&s, &t);
    if r.argmin_position != 3u32.into() {
        return Err(format!("minimum at l = {}, expected 3", r.argmin_position));
    }
    equals(r.p_max, Exact::new(4.into(), 5.into()))
}

fn catalysed() -> Check {
    let (s, t) = first();
    equals(p_catalyzed(&s, &t, &phi()), Exact::one())
}

fn three_copies() -> Check {
    let (s, t) = first();
    let r = p_multicopy_avg(&s, &t, 3).map_err(|e| e.to_string())?;
    equals(r.radicand, Exact::one())
}

fn eleven_catalyst_copies() -> Check {
    let (s, t) = second();
    let catalyst = phi().tensor_power(11).map_err(|e| e.to_string())?;
    equals(p_catalyzed(&s, &t, &catalyst), Exact::one())
}

fn no_finite_copies() -> Check {
    let (s, t) = second();
    let trace = estimate_pm(&s, &t, 8, 0.0).map_err(|e| e.to_string())?;
    match trace.entries.iter().find(|e| e.radicand >= Exact::one()) {
        Some(e) => Err(format!("m = {} reaches {}", e.copies, render(&e.radicand))),
        None => Ok(format!(
            "p_max < 1 for m = 1..8 (checked up to m = 8 only); best rate {:.9}",
            trace.best_average
        )),
    }
}

fn closed_form_reached() -> Check {
    let (s, t) = first();
    let bound = closed_form_pe(&s, &t);
    let trace = estimate_pm(&s, &t, 3, 0.0).map_err(|e| e.to_string())?;
    if trace.best_radicand == Exact::one() && bound == Exact::one() {
        Ok(format!("bound 1 reached at m = {}", trace.best_copies))
    } else {
        Err(format!(
            "bound {}, best {}",
            render(&bound),
            render(&trace.best_radicand)
        ))
    }
}

fn finite_copies() -> Check {
    let (s, t) = first();
    let outcome = |p: Exact| find_finite_m(&s, &t, &p, 20).map_err(|e| e.to_string());
    match outcome(Exact::new(9.into(), 10.into()))? {
        FiniteCopyOutcome::Found { copies, .. } if copies <= 3 => {}
        other => return Err(format!("p = 9/10: {other:?}")),
    }
    match outcome(Exact::one())? {
        FiniteCopyOutcome::Found { copies: 3, .. } => {}
        other => return Err(format!("p = 1: {other:?}")),
    }
    let (s, t) = second();
    match find_finite_m(&s, &t, &Exact::one(), 8).map_err(|e| e.to_string())? {
        FiniteCopyOutcome::BoundaryCase { .. } => Ok("first example: m = 3; second example: boundary case".into()),
        other => Err(format!("second example, p = 1: {other:?}")),
    }
}

pub fn verify() -> VerifyReport {
    let checks: [Claim; 7] = [
        ("first example, single copy: p_max = 4/5", single_copy),
        ("first example, catalyst (0.6, 0.4): certain", catalysed),
        ("first example, three copies: certain", three_copies),
        (
            "first example, multi-copy rate reaches the closed-form bound",
            closed_form_reached,
        ),
        ("first example, finite copy counts", finite_copies),
        (
            "second example, catalyst (0.6, 0.4)^11: certain",
            eleven_catalyst_copies,
        ),
        ("second example, copies alone never certain", no_finite_copies),
    ];
    let claims: Vec<ClaimResult> = checks
        .iter()
        .map(|(claim, check)| {
            let (passed, detail) = match check() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            ClaimResult {
                claim: claim.to_string(),
                passed,
                detail,
            }
        })
        .collect();
    VerifyReport {
        passed: claims.iter().all(|c| c.passed),
        claims,
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_claims_hold() {
        let report = super::verify();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.claims.len(), 7);
    }
}
