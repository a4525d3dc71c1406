use super::{StageOrdering, StagedOptions, VOrder};
use crate::error::{check_range, Error, Result};
use crate::heisenberg::WitnessAxes;
use crate::pauli::BasisState;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Network {
    Symmetric,
    Asymmetric,
    Staged,
}

impl Network {
    pub fn default_initial(self) -> BasisState {
        match self {
            Network::Symmetric | Network::Asymmetric => BasisState::zeros(4),
            Network::Staged => BasisState::from_bits(vec![true, true, false, false]),
        }
    }

    /// Staged runs average 16 seeded pattern pairs unless told otherwise.
    pub fn default_patterns(self) -> PatternMode {
        match self {
            Network::Staged => PatternMode::Sampled(16),
            _ => PatternMode::None,
        }
    }

    /// Axes reaching magnitude 2 on the undephased network.
    pub fn default_axes(self) -> WitnessAxes {
        match self {
            Network::Symmetric => WitnessAxes::XZ_ZX,
            Network::Asymmetric | Network::Staged => WitnessAxes::XX_ZZ,
        }
    }
}

impl FromStr for Network {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "symmetric" => Ok(Network::Symmetric),
            "asymmetric" => Ok(Network::Asymmetric),
            "staged" => Ok(Network::Staged),
            other => Err(Error::Parse(format!(
                "unknown network '{other}' (expected symmetric, asymmetric or staged)"
            ))),
        }
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Network::Symmetric => "symmetric",
            Network::Asymmetric => "asymmetric",
            Network::Staged => "staged",
        })
    }
}

/// Dephasing strength: absent, a concrete value, or the formal parameter.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum PSetting {
    #[default]
    Absent,
    Value(f64),
    Symbolic,
}

impl PSetting {
    pub fn value(self) -> Option<f64> {
        match self {
            PSetting::Value(p) => Some(p),
            _ => None,
        }
    }
}

impl FromStr for PSetting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "symbolic" => Ok(PSetting::Symbolic),
            "none" | "" => Ok(PSetting::Absent),
            v => {
                let p: f64 = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad p '{v}' (number or 'symbolic')")))?;
                check_range("p", p, 0.0, 1.0)?;
                Ok(PSetting::Value(p))
            }
        }
    }
}

impl fmt::Display for PSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PSetting::Absent => f.write_str("none"),
            PSetting::Value(p) => write!(f, "{p}"),
            PSetting::Symbolic => f.write_str("symbolic"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PatternMode {
    #[default]
    None,
    Sampled(usize),
    Exhaustive,
}

impl FromStr for PatternMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "none" {
            return Ok(PatternMode::None);
        }
        if s == "exhaustive" {
            return Ok(PatternMode::Exhaustive);
        }
        if let Some(n) = s.strip_prefix("sampled:") {
            return n
                .parse()
                .map(PatternMode::Sampled)
                .map_err(|_| Error::Parse(format!("bad sample count in '{s}'")));
        }
        Err(Error::Parse(format!(
            "unknown pattern mode '{s}' (expected none, sampled:N or exhaustive)"
        )))
    }
}

impl fmt::Display for PatternMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternMode::None => f.write_str("none"),
            PatternMode::Sampled(n) => write!(f, "sampled:{n}"),
            PatternMode::Exhaustive => f.write_str("exhaustive"),
        }
    }
}

/// Parses `start:stop:step` or a comma-separated list.
pub fn parse_p_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad p grid '{s}'"));
    let grid: Vec<f64> = if s.contains(':') {
        let parts: Vec<f64> = s
            .split(':')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(bad());
        };
        if !(step > 0.0) || stop < start {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12)
            .collect()
    } else {
        s.split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    for &p in &grid {
        check_range("p", p, 0.0, 1.0)?;
    }
    Ok(grid)
}

/// Flat key-value document behind config files and CLI overrides. Every key
/// is optional; [`ExperimentConfig`] fills in defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub network: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<PValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_grid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_bits: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub patterns: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axes: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

/// `p` may be written as a bare number or as a string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PValue {
    Number(f64),
    Text(String),
}

impl ConfigDocument {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config file: {e}")))
    }

    /// Keys set in `over` replace those in `self`.
    pub fn merged(self, over: ConfigDocument) -> ConfigDocument {
        ConfigDocument {
            network: over.network.or(self.network),
            p: over.p.or(self.p),
            p_grid: over.p_grid.or(self.p_grid),
            epsilon: over.epsilon.or(self.epsilon),
            initial_bits: over.initial_bits.or(self.initial_bits),
            stages: over.stages.or(self.stages),
            patterns: over.patterns.or(self.patterns),
            seed: over.seed.or(self.seed),
            axes: over.axes.or(self.axes),
            ordering: over.ordering.or(self.ordering),
            v_order: over.v_order.or(self.v_order),
            threshold: over.threshold.or(self.threshold),
        }
    }
}

/// A fully resolved experiment description.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub network: Network,
    pub p: PSetting,
    pub p_grid: Option<Vec<f64>>,
    pub epsilon: f64,
    pub initial_bits: BasisState,
    pub stages: usize,
    pub patterns: PatternMode,
    pub seed: u64,
    pub axes: WitnessAxes,
    pub staged: StagedOptions,
    pub threshold: f64,
}

impl ExperimentConfig {
    pub fn new(network: Network) -> Self {
        ExperimentConfig {
            network,
            p: PSetting::Absent,
            p_grid: None,
            epsilon: 1.0,
            initial_bits: network.default_initial(),
            stages: 8,
            patterns: network.default_patterns(),
            seed: 0,
            axes: network.default_axes(),
            staged: StagedOptions::default(),
            threshold: crate::detect::DEFAULT_THRESHOLD,
        }
    }

    pub fn from_document(doc: &ConfigDocument) -> Result<Self> {
        let network: Network = doc.network.as_deref().unwrap_or("symmetric").parse()?;
        let mut cfg = ExperimentConfig::new(network);
        if let Some(p) = &doc.p {
            cfg.p = match p {
                PValue::Number(v) => {
                    check_range("p", *v, 0.0, 1.0)?;
                    PSetting::Value(*v)
                }
                PValue::Text(t) => t.parse()?,
            };
        }
        if let Some(g) = &doc.p_grid {
            cfg.p_grid = Some(parse_p_grid(g)?);
        }
        if let Some(e) = doc.epsilon {
            check_range("epsilon", e, 0.0, 1.0)?;
            cfg.epsilon = e;
        }
        if let Some(bits) = &doc.initial_bits {
            let b: BasisState = bits.parse()?;
            if b.n() != 4 {
                return Err(Error::DimensionMismatch {
                    expected: 4,
                    found: b.n(),
                });
            }
            cfg.initial_bits = b;
        }
        if let Some(s) = doc.stages {
            if s == 0 {
                return Err(Error::Invalid("stages must be at least 1".into()));
            }
            cfg.stages = s;
        }
        match &doc.patterns {
            Some(m) => cfg.patterns = m.parse()?,
            // short staged runs have fewer than 16 balanced patterns
            None => {
                if let PatternMode::Sampled(k) = cfg.patterns {
                    if cfg.stages.is_multiple_of(2) {
                        let pop = super::pattern_population(cfg.stages, true)?;
                        cfg.patterns =
                            PatternMode::Sampled(k.min(pop.min(usize::MAX as u128) as usize));
                    }
                }
            }
        }
        if let Some(s) = doc.seed {
            cfg.seed = s;
        }
        if let Some(a) = &doc.axes {
            cfg.axes = a.parse()?;
        }
        if let Some(o) = &doc.ordering {
            cfg.staged.ordering = match o.as_str() {
                "sequential" => StageOrdering::Sequential,
                "interleaved" => StageOrdering::Interleaved,
                _ => return Err(Error::Parse(format!("unknown ordering '{o}'"))),
            };
        }
        if let Some(v) = &doc.v_order {
            cfg.staged.v_order = match v.as_str() {
                "z-after-u" => VOrder::ZAfterU,
                "z-before-u" => VOrder::ZBeforeU,
                _ => return Err(Error::Parse(format!("unknown v_order '{v}'"))),
            };
        }
        if let Some(t) = doc.threshold {
            check_range("threshold", t, 0.0, f64::INFINITY)?;
            cfg.threshold = t;
        }
        Ok(cfg)
    }

    /// The effective configuration as a complete document, for echoing.
    pub fn to_document(&self) -> ConfigDocument {
        ConfigDocument {
            network: Some(self.network.to_string()),
            p: Some(PValue::Text(self.p.to_string())),
            p_grid: self.p_grid.as_ref().map(|g| {
                g.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }),
            epsilon: Some(self.epsilon),
            initial_bits: Some(self.initial_bits.to_string()),
            stages: Some(self.stages),
            patterns: Some(self.patterns.to_string()),
            seed: Some(self.seed),
            axes: Some(self.axes.to_string()),
            ordering: Some(
                match self.staged.ordering {
                    StageOrdering::Sequential => "sequential",
                    StageOrdering::Interleaved => "interleaved",
                }
                .into(),
            ),
            v_order: Some(
                match self.staged.v_order {
                    VOrder::ZAfterU => "z-after-u",
                    VOrder::ZBeforeU => "z-before-u",
                }
                .into(),
            ),
            threshold: Some(self.threshold),
        }
    }
}
