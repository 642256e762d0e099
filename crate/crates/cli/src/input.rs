//! State arguments: inline `0.4,0.4,0.1,0.1` or a path to a state file.
//!
//! A state file holds one coefficient per line (`#` starts a comment), or a
//! JSON array of coefficient strings.

use std::fs;
use std::path::Path;

use elocc_core::{CompressedSpectrum, Scalar};

use crate::CliError;

pub fn load_state<S: Scalar>(label: &str, arg: &str) -> Result<CompressedSpectrum<S>, CliError> {
    let tokens = if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{label}: cannot read {arg}: {e}")))?;
        file_tokens(&text).map_err(|e| CliError::Input(format!("{label}: {arg}: {e}")))?
    } else {
        arg.split(',').map(|t| t.trim().to_string()).collect()
    };
    parse_state(label, &tokens)
}

pub fn parse_state<S: Scalar>(label: &str, tokens: &[String]) -> Result<CompressedSpectrum<S>, CliError> {
    let values = tokens
        .iter()
        .enumerate()
        .map(|(i, tok)| {
            S::parse_literal(tok).map_err(|e| CliError::Input(format!("{label}: coefficient #{i} ({tok:?}): {e}")))
        })
        .collect::<Result<Vec<S>, _>>()?;
    CompressedSpectrum::from_coefficients(values).map_err(|e| CliError::Input(format!("{label}: {e}")))
}

fn file_tokens(text: &str) -> Result<Vec<String>, String> {
    if text.trim_start().starts_with('[') {
        let values: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| e.to_string())?;
        return values
            .into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                other => Err(format!("expected a coefficient string, found {other}")),
            })
            .collect();
    }
    Ok(text
        .lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(str::to_string)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use elocc_core::Exact;

    #[test]
    fn text_files_skip_comments_and_blanks() {
        let tokens = file_tokens("# source\n0.4\n0.4  # twice\n\n0.1\n0.1\n").unwrap();
        assert_eq!(tokens, ["0.4", "0.4", "0.1", "0.1"]);
    }

    #[test]
    fn json_files() {
        assert_eq!(file_tokens(r#"["2/5", "0.6"]"#).unwrap(), ["2/5", "0.6"]);
        assert!(file_tokens(r#"["0.5", null]"#).is_err());
    }

    #[test]
    fn errors_name_the_coefficient() {
        let tokens: Vec<String> = ["0.5", "x", "0.5"].map(String::from).into();
        let CliError::Input(msg) = parse_state::<Exact>("source", &tokens).unwrap_err() else {
            panic!()
        };
        assert!(msg.contains("#1") && msg.contains("\"x\""), "{msg}");
        let tokens: Vec<String> = ["0.5", "-0.1"].map(String::from).into();
        let CliError::Input(msg) = parse_state::<Exact>("target", &tokens).unwrap_err() else {
            panic!()
        };
        assert!(msg.starts_with("target") && msg.contains("#1"), "{msg}");
    }

    #[test]
    fn inline_fractions() {
        let x: CompressedSpectrum<Exact> = load_state("s", "2/5,2/5,1/10,1/10").unwrap();
        let y: CompressedSpectrum<Exact> = load_state("s", "0.4, 0.4, 0.1, 0.1").unwrap();
        assert_eq!(x, y);
    }
}
