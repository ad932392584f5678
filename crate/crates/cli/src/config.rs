use std::path::Path;

use serde::Deserialize;
use subpir_core::wire::{parse_vector, FieldSpec};
use subpir_core::{Elem, Field, GrsSpec, SchemeConfig, Variant};

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Multipliers {
    Preset(String),
    Explicit {
        storage: Vec<String>,
        retrieval: Vec<String>,
    },
}

impl Default for Multipliers {
    fn default() -> Multipliers {
        Multipliers::Preset("ones".into())
    }
}

/// One JSON document describing a scheme and the run parameters.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub n: usize,
    /// Evaluation points; the first `n` field elements in canonical order
    /// when absent.
    #[serde(default)]
    pub support: Option<Vec<String>>,
    pub storage_k: usize,
    pub retrieval_dim: usize,
    #[serde(default)]
    pub multipliers: Multipliers,
    #[serde(default = "default_variant")]
    pub variant: Variant,
    #[serde(default = "default_mu")]
    pub mu: usize,
    #[serde(default)]
    pub seed: u64,
    /// Retrievals per variant for `verify`.
    #[serde(default = "default_trials")]
    pub trials: usize,
}

fn default_variant() -> Variant {
    Variant::SubfieldSubcode
}

fn default_mu() -> usize {
    1
}

fn default_trials() -> usize {
    20
}

fn usage(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("config field `{field}`: {msg}"))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn field(&self) -> Result<Field, CliError> {
        self.field.build().map_err(|e| usage("field", e))
    }

    pub fn specs(&self) -> Result<(GrsSpec, GrsSpec), CliError> {
        let f = self.field()?;
        if self.n == 0 || self.n as u64 > f.order() as u64 {
            return Err(usage(
                "n",
                format!("{} is not in 1..={}", self.n, f.order()),
            ));
        }
        let alpha = match &self.support {
            Some(points) => {
                if points.len() != self.n {
                    return Err(usage(
                        "support",
                        format!("{} points for n = {}", points.len(), self.n),
                    ));
                }
                parse_vector(&f, points).map_err(|e| usage("support", e))?
            }
            None => f.elements().take(self.n).collect(),
        };
        let (vc, vd) = match &self.multipliers {
            Multipliers::Preset(name) if name == "ones" => {
                (vec![Elem::ONE; self.n], vec![Elem::ONE; self.n])
            }
            Multipliers::Preset(name) => {
                return Err(usage(
                    "multipliers",
                    format!("unknown preset {name:?} (expected \"ones\")"),
                ))
            }
            Multipliers::Explicit { storage, retrieval } => (
                parse_vector(&f, storage).map_err(|e| usage("multipliers.storage", e))?,
                parse_vector(&f, retrieval).map_err(|e| usage("multipliers.retrieval", e))?,
            ),
        };
        let c = GrsSpec::new(f.clone(), self.storage_k, alpha.clone(), vc)
            .map_err(|e| usage("storage_k/multipliers.storage/support", e))?;
        let d = GrsSpec::new(f, self.retrieval_dim, alpha, vd)
            .map_err(|e| usage("retrieval_dim/multipliers.retrieval/support", e))?;
        Ok((c, d))
    }

    pub fn scheme_config(&self) -> Result<SchemeConfig, CliError> {
        let (c, d) = self.specs()?;
        if self.mu == 0 {
            return Err(usage("mu", "at least one file is required"));
        }
        if self.storage_k == 0 {
            return Err(usage("storage_k", "must be positive"));
        }
        Ok(SchemeConfig::new(c, d, self.variant, self.mu, self.seed)?)
    }
}
