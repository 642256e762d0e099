//! Report payloads and their two renderings.

use std::fmt::Write;

use elocc_core::catalysis::{CatalystConstruction, CatalystSearchResult, GuaranteeCheck, ProtocolReport};
use elocc_core::multicopy::{FiniteCopyOutcome, MulticopyTrace};
use elocc_core::scalar::{render, serde_scalar};
use elocc_core::{ConversionReport, NumericMode, Scalar};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Top-level JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub command: String,
    pub mode: NumericMode,
    pub report: T,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracle: Vec<OracleCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub claim: String,
    pub status: OracleStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleStatus {
    Agree,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct CatalyzedReport<S> {
    pub copies: u32,
    #[serde(with = "serde_scalar")]
    pub p_max: S,
    #[serde(with = "serde_scalar")]
    pub p_catalyzed: S,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct BoundReport<S> {
    #[serde(with = "serde_scalar")]
    pub bound: S,
    #[serde(with = "serde_scalar")]
    pub p_max: S,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", rename_all = "camelCase")]
pub struct ConstructionReport<S> {
    pub construction: CatalystConstruction<S>,
    pub check: GuaranteeCheck<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub claims: Vec<ClaimResult>,
    pub passed: bool,
}

/// Human-readable rendering.
pub trait Render {
    fn render(&self) -> String;
}

impl<S: Scalar> Render for ConversionReport<S> {
    fn render(&self) -> String {
        format!(
            "p_max = {}\nargmin l = {}\nsource tail = {}\ntarget tail = {}\n",
            render(&self.p_max),
            self.argmin_position,
            render(&self.source_tail),
            render(&self.target_tail)
        )
    }
}

impl<S: Scalar> Render for MulticopyTrace<S> {
    fn render(&self) -> String {
        let mut out = String::from("   m  p_max(m copies)                    per-copy rate   blocks\n");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{:>4}  {:<34} {:<15.12} {}/{}",
                e.copies,
                render(&e.radicand),
                e.average,
                e.source_blocks,
                e.target_blocks
            );
        }
        let _ = writeln!(
            out,
            "best rate = {:.12} at m = {} (p_max = {})\nclosed-form bound = {}",
            self.best_average,
            self.best_copies,
            render(&self.best_radicand),
            render(&self.closed_form_bound)
        );
        out
    }
}

impl<S: Scalar> Render for CatalyzedReport<S> {
    fn render(&self) -> String {
        format!(
            "p_max without catalyst = {}\np_max with catalyst^{} = {}\n",
            render(&self.p_max),
            self.copies,
            render(&self.p_catalyzed)
        )
    }
}

impl<S: Scalar> Render for BoundReport<S> {
    fn render(&self) -> String {
        format!("{}\n", render(&self.bound))
    }
}

impl<S: Scalar> Render for ConstructionReport<S> {
    fn render(&self) -> String {
        let c = &self.construction;
        let mut out = format!(
            "catalyst ({} levels, {} blocks): {}\n",
            c.catalyst.dimension(),
            c.catalyst.block_count(),
            c.catalyst
        );
        let _ = writeln!(out, "p_max({} copies) = {}", c.copies, render(&c.radicand));
        let _ = writeln!(out, "per-copy rate = {:.12}", c.rate);
        if c.weights_rounded {
            out.push_str("weights rounded through f64 (rate is not an exact rational)\n");
        }
        let _ = writeln!(out, "p_max with catalyst = {}", render(&self.check.catalyzed));
        let _ = writeln!(out, "guarantee {}", if self.check.holds { "holds" } else { "FAILS" });
        out
    }
}

impl<S: Scalar> Render for ProtocolReport<S> {
    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "k = {}, gamma_k = {}", self.k, render(&self.gamma_k));
        let _ = writeln!(out, "p1 (Phi_k -> catalyst) = {}", render(&self.p1));
        let _ = writeln!(
            out,
            "p2 >= p_catalyzed^{} = {}",
            self.copies,
            render(&self.p2_lower_bound)
        );
        let _ = writeln!(out, "p3 (catalyst -> Phi_k) = {}", render(&self.p3));
        let _ = writeln!(out, "p1 * p2 * p3 >= {}", render(&self.product_bound));
        let _ = writeln!(out, "p_max({} copies) = {}", self.copies, render(&self.m_copy_p_max));
        let _ = writeln!(
            out,
            "p_max({} copies, with Phi_k) = {}",
            self.copies,
            render(&self.with_max_entangled_p_max)
        );
        let _ = writeln!(
            out,
            "lower bound {}",
            if self.lower_bound_holds { "holds" } else { "FAILS" }
        );
        let _ = writeln!(
            out,
            "Phi_k inert: {}",
            if self.inert_identity_holds { "yes" } else { "NO" }
        );
        out
    }
}

impl<S: Scalar> Render for FiniteCopyOutcome<S> {
    fn render(&self) -> String {
        match self {
            FiniteCopyOutcome::Found {
                copies,
                radicand,
                average,
            } => {
                format!(
                    "found m = {copies}\np_max = {}\nper-copy rate = {average:.12}\n",
                    render(radicand)
                )
            }
            FiniteCopyOutcome::BoundaryCase { cap, bound } => format!(
                "boundary case: p equals the closed-form bound {} and no m <= {cap} reaches it\n",
                render(bound)
            ),
            FiniteCopyOutcome::NotFoundWithinCap { cap, bound } => format!(
                "not found within cap: p is below the bound {} but no m <= {cap} reaches it\n",
                render(bound)
            ),
            FiniteCopyOutcome::Unattainable { bound } => {
                format!("unattainable: p exceeds the closed-form bound {}\n", render(bound))
            }
        }
    }
}

impl<S: Scalar> Render for CatalystSearchResult<S> {
    fn render(&self) -> String {
        format!(
            "best catalyst: {}\np_max with catalyst = {}\np_max without = {}\n{} grid points (k = {}, R = {})\n",
            self.best_catalyst,
            render(&self.best_p),
            render(&self.baseline),
            self.points_evaluated,
            self.k,
            self.grid_resolution
        )
    }
}

impl Render for VerifyReport {
    fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let _ = writeln!(
                out,
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.claim,
                c.detail
            );
        }
        let passed = self.claims.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{passed} of {} claims passed", self.claims.len());
        out
    }
}
