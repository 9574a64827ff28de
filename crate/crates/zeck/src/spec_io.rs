//! Reading numeration-system specs from text.
//!
//! Two forms are accepted: whitespace-separated coefficients (`2 3 1`) and
//! JSON (`{"coeffs":[2,3,1]}`).

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;
use zeck_core::{make_plrs, PlrsSpec, SpecError};

#[derive(Debug, Error)]
pub enum SpecParseError {
    #[error("cannot parse coefficient {0:?}")]
    BadCoefficient(String),
    #[error("invalid JSON spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] SpecError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    coeffs: Vec<i64>,
}

pub fn parse_spec(text: &str) -> Result<PlrsSpec, SpecParseError> {
    let text = text.trim();
    let coeffs = if text.starts_with('{') {
        serde_json::from_str::<SpecJson>(text)?.coeffs
    } else {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| SpecParseError::BadCoefficient(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(make_plrs(&coeffs)?)
}

pub fn read_spec(path: &Path) -> Result<PlrsSpec, SpecParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpecParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_forms_agree() {
        let a = parse_spec("2 3 1").unwrap();
        let b = parse_spec(r#"{"coeffs":[2,3,1]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_spec(" 1  1\n").unwrap(), PlrsSpec::fibonacci());
        assert_eq!(parse_spec("1,1").unwrap(), PlrsSpec::fibonacci());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_spec("1 x"), Err(SpecParseError::BadCoefficient(_))));
        assert!(matches!(
            parse_spec("0 1"),
            Err(SpecParseError::Invalid(SpecError::LeadingCoeffZero))
        ));
        assert!(matches!(
            parse_spec(""),
            Err(SpecParseError::Invalid(SpecError::EmptyCoeffs))
        ));
        assert!(matches!(parse_spec(r#"{"coefs":[1]}"#), Err(SpecParseError::Json(_))));
        assert!(matches!(
            parse_spec("2 -1 1"),
            Err(SpecParseError::Invalid(SpecError::NegativeCoeff { index: 2, value: -1 }))
        ));
    }
}
