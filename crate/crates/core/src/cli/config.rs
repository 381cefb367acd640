use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Hh,
    Steenrod,
    Verify,
    Fixtures,
    SqHa,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i32,
    /// Auxiliary grading kept by `d`; defaults to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// T(V) with `d` on generators; words are whitespace separated generator names.
    Free {
        generators: Vec<GeneratorSpec>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        differential: BTreeMap<String, Vec<String>>,
    },
    /// A finite basis besides the unit, with products keyed by `"a b"` and differentials, both
    /// given as lists of basis names.
    Table {
        generators: Vec<GeneratorSpec>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        products: BTreeMap<String, Vec<String>>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        differential: BTreeMap<String, Vec<String>>,
    },
}

/// Values of one κ̃ generator on cells, keyed `"e_i"`, each a word, a sum of words, or `"0"`.
pub type CellSpec = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaSpec {
    #[serde(default = "yes")]
    pub linear_default: bool,
    /// Overrides of `κ̃(v')`, keyed by `v`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub linear: BTreeMap<String, CellSpec>,
    /// `κ̃(v'#w'')`, keyed `"v#w"`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sharp: BTreeMap<String, CellSpec>,
}

fn yes() -> bool {
    true
}

fn two() -> u32 {
    2
}

pub const DEFAULT_MAX_DEGREE: i32 = 10;

/// The input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    #[serde(default = "two")]
    pub prime: u32,
    /// `None` takes the fixture's default, else [`DEFAULT_MAX_DEGREE`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<KappaSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound_direct: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Display names for classes whose representative is a single word, keyed by its label.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub names: BTreeMap<String, String>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            prime: 2,
            max_degree: None,
            fixture: None,
            algebra: None,
            kappa: None,
            command: None,
            format: Format::Table,
            degree_bound_direct: None,
            seed: None,
            names: BTreeMap::new(),
        }
    }
}

impl SessionConfig {
    pub fn max_degree(&self) -> i32 {
        self.max_degree.unwrap_or(DEFAULT_MAX_DEGREE)
    }

    pub fn direct_bound(&self) -> i32 {
        self.degree_bound_direct.unwrap_or(self.max_degree() / 2)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Rules that do not need the algebra.
    pub fn check(&self) -> Result<()> {
        if self.max_degree() < 2 {
            return Err(Error::ParseError(format!(
                "max_degree must be at least 2, got {}",
                self.max_degree()
            )));
        }
        if crate::field::PrimeField::new(self.prime).is_err() {
            return Err(Error::ParseError(format!(
                "prime: {} is not prime",
                self.prime
            )));
        }
        let pipeline = matches!(
            self.command,
            Some(Command::Steenrod | Command::SqHa | Command::Verify)
        );
        if pipeline && self.prime != 2 {
            return Err(Error::ParseError("odd-p pipeline unsupported".into()));
        }
        if let Some(d0) = self.degree_bound_direct {
            if d0 < 0 || d0 > self.max_degree() {
                return Err(Error::ParseError(format!(
                    "degree_bound_direct must lie in 0..={}",
                    self.max_degree()
                )));
            }
        }
        if self.fixture.is_some() && self.algebra.is_some() {
            return Err(Error::ParseError(
                "give either fixture or algebra, not both".into(),
            ));
        }
        if self.fixture.is_none()
            && self.algebra.is_none()
            && self.command != Some(Command::Fixtures)
        {
            return Err(Error::ParseError(
                "missing field `algebra` (or `fixture`)".into(),
            ));
        }
        if pipeline && self.algebra.is_some() && self.kappa.is_none() {
            return Err(Error::ParseError(
                "pipeline commands need a `kappa` spec".into(),
            ));
        }
        Ok(())
    }
}

/// Parse and check a JSON document, with line and column in the diagnostics.
pub fn parse_config(document: &str) -> Result<SessionConfig> {
    let config: SessionConfig = serde_json::from_str(document)
        .map_err(|e| Error::ParseError(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    config.check()?;
    Ok(config)
}

/// Parse a cell key `e_i`.
pub fn parse_cell(key: &str) -> Result<usize> {
    key.strip_prefix("e_")
        .and_then(|i| i.parse().ok())
        .ok_or_else(|| Error::ParseError(format!("cell keys look like e_3, got {key:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_apply() {
        let c = parse_config(r#"{"fixture": "t_u"}"#).unwrap();
        assert_eq!(c.prime, 2);
        assert_eq!(c.max_degree(), 10);
        assert_eq!(c.format, Format::Table);
        assert_eq!(c.direct_bound(), 5);
    }

    #[test]
    fn odd_prime_pipeline_is_refused() {
        let e =
            parse_config(r#"{"prime": 3, "command": "steenrod", "fixture": "t_u"}"#).unwrap_err();
        assert_eq!(e, Error::ParseError("odd-p pipeline unsupported".into()));
        assert!(parse_config(r#"{"prime": 3, "command": "hh", "fixture": "t_u"}"#).is_ok());
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_config("{\n  \"prime\": \"two\"\n}").unwrap_err();
        let Error::ParseError(msg) = e else { panic!() };
        assert!(msg.starts_with("line 2"), "{msg}");
        assert!(matches!(
            parse_config(r#"{"fixture": "t_u", "colour": 1}"#),
            Err(Error::ParseError(_))
        ));
    }

    #[test]
    fn custom_algebra_round_trips() {
        let doc = r#"{
            "max_degree": 8,
            "algebra": {"kind": "free", "generators": [{"name": "u", "degree": 2}]},
            "kappa": {"sharp": {"u#u": {"e_1": "u"}}},
            "names": {"u[]": "u"}
        }"#;
        let c = parse_config(doc).unwrap();
        assert!(c.kappa.as_ref().unwrap().linear_default);
        let again = parse_config(&c.to_json()).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.to_json(), c.to_json());
    }
}
