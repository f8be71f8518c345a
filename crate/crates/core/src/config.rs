//! TOML construction descriptions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::DEFAULT_ENUM_CAP;
use crate::points::DEFAULT_SEARCH_CAP;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{section}: {message}")]
    Invalid { section: &'static str, message: String },
    #[error("ideal generator {index}, column {column}: {message}")]
    Generator {
        index: usize,
        column: usize,
        message: String,
    },
    #[error("space function {index}, column {column}: {message}")]
    Function {
        index: usize,
        column: usize,
        message: String,
    },
}

impl ConfigError {
    pub(crate) fn invalid(section: &'static str, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            section,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub field: FieldConfig,
    pub ring: RingConfig,
    pub ideal: IdealConfig,
    #[serde(default)]
    pub points: PointsConfig,
    #[serde(default)]
    pub inner_codes: InnerCodesConfig,
    pub space: SpaceConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub p: u32,
    pub k: u32,
    /// Coefficients c_0, …, c_k of the modulus, lowest degree first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightsConfig {
    Scalar(Vec<u64>),
    Vector(Vec<Vec<u64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub variables: Vec<String>,
    pub weights: WeightsConfig,
    /// Variable names from highest to lowest; defaults to declaration order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precedence: Option<Vec<String>>,
    /// Weight box for checking distinct footprint weights under vector weights.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_box: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealConfig {
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RationalKeyword {
    All,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalConfig {
    Keyword(RationalKeyword),
    Indices(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraPoint {
    pub degree: u32,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsConfig {
    pub rational: RationalConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<ExtraPoint>,
}

impl Default for PointsConfig {
    fn default() -> Self {
        Self {
            rational: RationalConfig::Keyword(RationalKeyword::All),
            extra: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerKindConfig {
    #[default]
    Identity,
    Parity,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerOverride {
    /// Position in the selected point list.
    pub point: usize,
    pub kind: InnerKindConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerCodesConfig {
    #[serde(default)]
    pub default: InnerKindConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<InnerOverride>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceConfig {
    /// Span of the listed functions (monomials or any polynomials).
    Monomials { functions: Vec<String> },
    /// E(λ).
    WeightLe { lambda: u64 },
    /// Ê(δ).
    Improved { delta: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Message-count cap for the distance oracle.
    #[serde(default = "default_max_enum")]
    pub max_enum: u64,
    /// Candidate-tuple cap for point enumeration.
    #[serde(default = "default_search_cap")]
    pub search_cap: u64,
}

fn default_max_enum() -> u64 {
    DEFAULT_ENUM_CAP
}

fn default_search_cap() -> u64 {
    DEFAULT_SEARCH_CAP
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            max_enum: DEFAULT_ENUM_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: Config = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map(|s| line_column(text, s.start)).unwrap_or((0, 0));
            ConfigError::Syntax {
                line,
                column,
                message: e.message().to_string(),
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs always serialize")
    }

    /// Checks that do not need any field arithmetic.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let m = self.ring.variables.len();
        if m == 0 {
            return Err(ConfigError::invalid("ring", "at least one variable is required"));
        }
        let mut names = self.ring.variables.clone();
        names.sort();
        names.dedup();
        if names.len() != m {
            return Err(ConfigError::invalid("ring", "variable names must be distinct"));
        }
        let (count, dims) = match &self.ring.weights {
            WeightsConfig::Scalar(w) => (w.len(), vec![1]),
            WeightsConfig::Vector(w) => (w.len(), w.iter().map(Vec::len).collect()),
        };
        if count != m {
            return Err(ConfigError::invalid(
                "ring",
                format!("{m} variables but {count} weights"),
            ));
        }
        if dims.iter().any(|&d| d == 0 || d != dims[0]) {
            return Err(ConfigError::invalid(
                "ring",
                "weight vectors must share one nonzero length",
            ));
        }
        if let Some(p) = &self.ring.precedence {
            let mut sorted = p.clone();
            sorted.sort();
            if sorted != names {
                return Err(ConfigError::invalid("ring", "precedence must list every variable once"));
            }
        }
        if let Some(b) = &self.ring.check_box {
            if b.len() != dims[0] {
                return Err(ConfigError::invalid(
                    "ring",
                    "check_box length must match the weight dimension",
                ));
            }
        }
        if self.ideal.generators.is_empty() {
            return Err(ConfigError::invalid("ideal", "at least one generator is required"));
        }
        if self.points.extra.iter().any(|e| e.degree == 0) {
            return Err(ConfigError::invalid("points", "point degrees start at 1"));
        }
        if self.points.rational == RationalConfig::Keyword(RationalKeyword::None) && self.points.extra.is_empty() {
            return Err(ConfigError::invalid("points", "no evaluation points selected"));
        }
        if self.inner_codes.default == InnerKindConfig::Custom {
            return Err(ConfigError::invalid(
                "inner_codes",
                "custom codes are given per point in overrides",
            ));
        }
        for o in &self.inner_codes.overrides {
            let custom = o.kind == InnerKindConfig::Custom;
            if custom != (o.generator.is_some() && o.d.is_some())
                || (!custom && (o.generator.is_some() || o.d.is_some()))
            {
                return Err(ConfigError::invalid(
                    "inner_codes",
                    format!(
                        "override for point {}: custom codes need generator and d, others take neither",
                        o.point
                    ),
                ));
            }
        }
        let mut seen: Vec<usize> = self.inner_codes.overrides.iter().map(|o| o.point).collect();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(ConfigError::invalid("inner_codes", "a point has two overrides"));
        }
        match &self.space {
            SpaceConfig::Monomials { functions } if functions.is_empty() => {
                Err(ConfigError::invalid("space", "the function list is empty"))
            }
            SpaceConfig::Improved { delta: 0 } => Err(ConfigError::invalid("space", "delta must be at least 1")),
            _ => Ok(()),
        }
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}
