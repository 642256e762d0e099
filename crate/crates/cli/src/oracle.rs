//! `--oracle`: recompute claimed probabilities from fully expanded spectra.

use elocc_core::oracle::{brute_p_max, brute_tensor_power, brute_tensor_product};
use elocc_core::scalar::render;
use elocc_core::{CompressedSpectrum, Error, Scalar, SchmidtSpectrum};

use crate::report::{OracleCheck, OracleStatus};
use crate::CliError;

/// A conversion instance built only from brute-force pieces.
pub enum Operand<'a, S> {
    Plain(&'a CompressedSpectrum<S>),
    Power(&'a CompressedSpectrum<S>, u32),
    Product(Box<Operand<'a, S>>, Box<Operand<'a, S>>),
}

impl<S: Scalar> Operand<'_, S> {
    fn build(&self) -> elocc_core::Result<SchmidtSpectrum<S>> {
        match self {
            Operand::Plain(x) => x.expand(),
            Operand::Power(x, m) => brute_tensor_power(&x.expand()?, *m),
            Operand::Product(a, b) => brute_tensor_product(&a.build()?, &b.build()?),
        }
    }
}

pub fn product<'a, S>(a: Operand<'a, S>, b: Operand<'a, S>) -> Operand<'a, S> {
    Operand::Product(Box::new(a), Box::new(b))
}

#[derive(Debug, Default)]
pub struct Oracle {
    enabled: bool,
    pub checks: Vec<OracleCheck>,
}

impl Oracle {
    pub fn new(enabled: bool) -> Self {
        Oracle {
            enabled,
            checks: Vec::new(),
        }
    }

    /// Checks `claimed == p_max(source -> target)`. Instances too large to
    /// expand are recorded as skipped.
    pub fn p_max<S: Scalar>(
        &mut self,
        claim: &str,
        source: Operand<'_, S>,
        target: Operand<'_, S>,
        claimed: &S,
    ) -> Result<(), CliError> {
        if !self.enabled {
            return Ok(());
        }
        let brute = match (source.build(), target.build()) {
            (Ok(s), Ok(t)) => brute_p_max(&s, &t),
            (Err(e), _) | (_, Err(e)) => Err(e),
        };
        let status = match brute {
            Ok(b) if b.matches(claimed) => OracleStatus::Agree,
            Ok(b) => {
                return Err(CliError::Oracle(format!(
                    "{claim}: computed {}, brute force gives {}",
                    render(claimed),
                    render(&b)
                )))
            }
            Err(Error::DimensionTooLarge { .. }) => OracleStatus::Skipped,
            Err(e) => return Err(CliError::Oracle(format!("{claim}: {e}"))),
        };
        self.checks.push(OracleCheck {
            claim: claim.to_string(),
            status,
        });
        Ok(())
    }
}
