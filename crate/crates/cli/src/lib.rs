//! Command-line front end for `elocc-core`.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use elocc_core::catalysis::{construct_catalyst, maximally_entangled, p_catalyzed, search_catalyst, simulate_protocol};
use elocc_core::multicopy::{estimate_pm, find_finite_m, FiniteCopyOutcome, DEFAULT_COPY_CAP};
use elocc_core::{closed_form_pe, p_max, CompressedSpectrum, Exact, Scalar};
use serde::Serialize;

pub mod input;
pub mod oracle;
pub mod report;
pub mod verify;

use oracle::{product, Operand, Oracle};
use report::{BoundReport, CatalyzedReport, ConstructionReport, Envelope, Render, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unparseable or invalid input. Exit code 2.
    #[error("{0}")]
    Input(String),
    /// Brute-force cross-check disagreed. Exit code 1.
    #[error("oracle mismatch: {0}")]
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Oracle(_) => 1,
        }
    }
}

impl From<elocc_core::Error> for CliError {
    fn from(e: elocc_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "elocc",
    version,
    about = "Entanglement conversion probabilities for bipartite pure states"
)]
pub struct Cli {
    /// Use f64 arithmetic instead of exact rationals
    #[arg(long, global = true)]
    pub float: bool,
    /// Print a JSON report
    #[arg(long, global = true)]
    pub json: bool,
    /// Cross-check results against brute force; exit 1 on mismatch
    #[arg(long, global = true)]
    pub oracle: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A source and a target state, each inline (`0.4,0.4,0.1,0.1`) or a file path.
#[derive(Debug, Args)]
pub struct Pair {
    pub source: String,
    pub target: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal single-copy conversion probability
    Pmax(Pair),
    /// Multi-copy conversion rates for m = 1..mmax
    Multicopy {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 8)]
        mmax: u32,
        /// Stop once the rate is within this gap of the closed-form bound
        #[arg(long, default_value_t = 0.0)]
        gap: f64,
    },
    /// Conversion probability with a catalyst (optionally several copies of it)
    Catalyzed {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        catalyst: String,
        #[arg(long, default_value_t = 1)]
        copies: u32,
    },
    /// Closed-form bound on catalysed and multi-copy rates
    PeBound(Pair),
    /// Build a catalyst achieving the m-copy rate
    MakeCatalyst {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        m: u32,
    },
    /// Catalyst-assisted m-copy protocol bounds
    SimulateProtocol {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        catalyst: String,
        #[arg(long)]
        m: u32,
    },
    /// Smallest copy count whose per-copy rate reaches p
    FindM {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = DEFAULT_COPY_CAP)]
        cap: u32,
    },
    /// Grid search over k-level catalysts
    SearchCatalyst {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        grid: u32,
    },
    /// Check the published claims about the two worked examples
    VerifyPaper,
}

/// Runs one invocation, writing the report to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    if let Command::VerifyPaper = cli.command {
        let report = verify::verify();
        let code = if report.passed { 0 } else { 1 };
        emit(
            cli,
            out,
            "verify-paper",
            elocc_core::NumericMode::Exact,
            &report,
            Vec::new(),
        )?;
        return Ok(code);
    }
    if cli.float {
        dispatch::<f64>(cli, out)
    } else {
        dispatch::<Exact>(cli, out)
    }
}

fn emit<T: Serialize + Render>(
    cli: &Cli,
    out: &mut dyn Write,
    command: &str,
    mode: elocc_core::NumericMode,
    report: &T,
    oracle: Vec<report::OracleCheck>,
) -> Result<(), CliError> {
    let text = if cli.json {
        let envelope = Envelope {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            mode,
            report,
            oracle,
        };
        serde_json::to_string_pretty(&envelope).expect("reports serialize") + "\n"
    } else {
        let mut text = report.render();
        for check in &oracle {
            let status = match check.status {
                report::OracleStatus::Agree => "agrees with brute force",
                report::OracleStatus::Skipped => "skipped, too large to expand",
            };
            text.push_str(&format!("oracle: {} {status}\n", check.claim));
        }
        text
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))
}

fn pair<S: Scalar>(p: &Pair) -> Result<(CompressedSpectrum<S>, CompressedSpectrum<S>), CliError> {
    Ok((
        input::load_state("source", &p.source)?,
        input::load_state("target", &p.target)?,
    ))
}

fn dispatch<S: Scalar>(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    use Operand::{Plain, Power};
    let mut oracle = Oracle::new(cli.oracle);
    let mode = S::MODE;
    match &cli.command {
        Command::Pmax(p) => {
            let (s, t) = pair::<S>(p)?;
            let r = p_max(&s, &t);
            oracle.p_max("p_max", Plain(&s), Plain(&t), &r.p_max)?;
            emit(cli, out, "pmax", mode, &r, oracle.checks)?;
        }
        Command::Multicopy { pair: p, mmax, gap } => {
            let (s, t) = pair::<S>(p)?;
            let trace = estimate_pm(&s, &t, *mmax, *gap)?;
            for e in &trace.entries {
                let claim = format!("p_max({} copies)", e.copies);
                oracle.p_max(&claim, Power(&s, e.copies), Power(&t, e.copies), &e.radicand)?;
            }
            emit(cli, out, "multicopy", mode, &trace, oracle.checks)?;
        }
        Command::Catalyzed {
            pair: p,
            catalyst,
            copies,
        } => {
            let (s, t) = pair::<S>(p)?;
            let c = input::load_state::<S>("catalyst", catalyst)?;
            let cc = c.tensor_power(*copies)?;
            let r = CatalyzedReport {
                copies: *copies,
                p_max: p_max(&s, &t).p_max,
                p_catalyzed: p_catalyzed(&s, &t, &cc),
            };
            oracle.p_max(
                "p_max with catalyst",
                product(Plain(&s), Power(&c, *copies)),
                product(Plain(&t), Power(&c, *copies)),
                &r.p_catalyzed,
            )?;
            emit(cli, out, "catalyzed", mode, &r, oracle.checks)?;
        }
        Command::PeBound(p) => {
            let (s, t) = pair::<S>(p)?;
            let r = BoundReport {
                bound: closed_form_pe(&s, &t),
                p_max: p_max(&s, &t).p_max,
            };
            oracle.p_max("p_max", Plain(&s), Plain(&t), &r.p_max)?;
            emit(cli, out, "pe-bound", mode, &r, oracle.checks)?;
        }
        Command::MakeCatalyst { pair: p, m } => {
            let (s, t) = pair::<S>(p)?;
            let construction = construct_catalyst(&s, &t, *m)?;
            let check = construction.verify(&s, &t);
            oracle.p_max("p_max(m copies)", Power(&s, *m), Power(&t, *m), &construction.radicand)?;
            let c = &construction.catalyst;
            oracle.p_max(
                "p_max with catalyst",
                product(Plain(&s), Plain(c)),
                product(Plain(&t), Plain(c)),
                &check.catalyzed,
            )?;
            let holds = check.holds;
            emit(
                cli,
                out,
                "make-catalyst",
                mode,
                &ConstructionReport { construction, check },
                oracle.checks,
            )?;
            if !holds {
                return Ok(1);
            }
        }
        Command::SimulateProtocol { pair: p, catalyst, m } => {
            let (s, t) = pair::<S>(p)?;
            let c = input::load_state::<S>("catalyst", catalyst)?;
            let r = simulate_protocol(&s, &t, &c, *m)?;
            oracle.p_max("p_max(m copies)", Power(&s, *m), Power(&t, *m), &r.m_copy_p_max)?;
            oracle.p_max(
                "p_max with catalyst",
                product(Plain(&s), Plain(&c)),
                product(Plain(&t), Plain(&c)),
                &r.catalyzed,
            )?;
            let phi = maximally_entangled::<S>(&r.k)?;
            oracle.p_max(
                "p_max(m copies, with Phi_k)",
                product(Power(&s, *m), Plain(&phi)),
                product(Power(&t, *m), Plain(&phi)),
                &r.with_max_entangled_p_max,
            )?;
            let consistent = r.consistent();
            emit(cli, out, "simulate-protocol", mode, &r, oracle.checks)?;
            if !consistent {
                return Ok(1);
            }
        }
        Command::FindM { pair: p, p: prob, cap } => {
            let (s, t) = pair::<S>(p)?;
            let prob = S::parse_literal(prob).map_err(|e| CliError::Input(format!("--p: {e}")))?;
            let r = find_finite_m(&s, &t, &prob, *cap)?;
            if let FiniteCopyOutcome::Found { copies, radicand, .. } = &r {
                oracle.p_max("p_max(m copies)", Power(&s, *copies), Power(&t, *copies), radicand)?;
            }
            emit(cli, out, "find-m", mode, &r, oracle.checks)?;
        }
        Command::SearchCatalyst { pair: p, k, grid } => {
            let (s, t) = pair::<S>(p)?;
            let r = search_catalyst(&s, &t, *k, *grid)?;
            oracle.p_max("p_max", Plain(&s), Plain(&t), &r.baseline)?;
            let c = &r.best_catalyst;
            oracle.p_max(
                "best p_max with catalyst",
                product(Plain(&s), Plain(c)),
                product(Plain(&t), Plain(c)),
                &r.best_p,
            )?;
            emit(cli, out, "search-catalyst", mode, &r, oracle.checks)?;
        }
        Command::VerifyPaper => unreachable!("handled before dispatch"),
    }
    Ok(0)
}
