//! JSON experiment configurations.
//!
//! A config names an instance (group, generating sets, local codes, decoding
//! side), a list of decoders, a noise model or grid, and the Monte-Carlo
//! budget. Its hash is stamped on every output row.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classical::{CodeDescriptor, LinearCode};
use crate::complex::{FiniteGroup, GroupSpec};
use crate::decoder::DecoderKind;
use crate::error::{Error, Result};
use crate::instances;
use crate::noise::NoiseModel;
use crate::tanner::QuantumTannerCode;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub instance: InstanceConfig,
    #[serde(default = "default_decoders")]
    pub decoders: Vec<DecoderKind>,
    #[serde(default = "default_noise")]
    pub noise: NoiseModel,
    /// Sweep grid; the single `noise` point is used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<SweepGrid>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    #[serde(default)]
    pub seed: u64,
    /// Where CSV output goes; standard output when absent. Not part of the hash.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Record per-decode wall time in the `ms` column.
    #[serde(default)]
    pub timing: bool,
}

fn default_decoders() -> Vec<DecoderKind> {
    vec![DecoderKind::Sequential {
        epsilon: DecoderKind::DEFAULT_EPSILON,
    }]
}

fn default_noise() -> NoiseModel {
    NoiseModel::NOISELESS
}

fn default_trials() -> usize {
    100
}

fn default_rounds() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub group: GroupSpec,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub local_codes: LocalCodes,
    /// Which error type to decode.
    #[serde(default)]
    pub side: DecodingSide,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodingSide {
    /// Errors flagged by `H_Z`.
    #[default]
    X,
    /// Errors flagged by `H_X`, decoded on the swapped code.
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedCode {
    Repetition,
    Parity,
    Full,
    Zero,
    /// The `[5, 2, 3]` code spanned by `11100`, `00111`.
    Code523,
}

impl NamedCode {
    pub fn build(self, n: usize) -> Result<LinearCode> {
        Ok(match self {
            Self::Repetition => LinearCode::repetition(n),
            Self::Parity => LinearCode::parity(n),
            Self::Full => LinearCode::full(n),
            Self::Zero => LinearCode::zero(n),
            Self::Code523 if n == 5 => instances::code_5_2_3(),
            Self::Code523 => {
                return Err(Error::Config(format!("code523 has length 5, generating sets have size {n}")))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum LocalCodes {
    Named { a: NamedCode, b: NamedCode },
    Explicit { a: CodeDescriptor, b: CodeDescriptor },
    /// Uniformly random codes of the given dimensions drawn from `seed`.
    Random { dim_a: usize, dim_b: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepGrid {
    /// Product grid of Bernoulli rates.
    Bernoulli { p: Vec<f64>, q: Vec<f64> },
    /// Product grid of exact data and syndrome weights.
    Weights { w: Vec<usize>, s: Vec<usize> },
    Points { points: Vec<NoiseModel> },
}

impl SweepGrid {
    pub fn points(&self) -> Vec<NoiseModel> {
        use crate::noise::{DataNoise, SyndromeNoise};
        match self {
            Self::Bernoulli { p, q } => q
                .iter()
                .flat_map(|&q| p.iter().map(move |&p| NoiseModel::bernoulli(p, q)))
                .collect(),
            Self::Weights { w, s } => s
                .iter()
                .flat_map(|&s| {
                    w.iter().map(move |&w| NoiseModel {
                        data: DataNoise::AdversarialWeight { w },
                        syndrome: SyndromeNoise::AdversarialWeight { s },
                        persistence: 0.0,
                    })
                })
                .collect(),
            Self::Points { points } => points.clone(),
        }
    }
}

impl InstanceConfig {
    /// The reference `Z₁₃` instance with `rep₄`/`par₄` local codes.
    pub fn reference() -> Self {
        Self {
            group: GroupSpec::Cyclic { m: 13 },
            a: instances::REFERENCE_A.to_vec(),
            b: instances::REFERENCE_B.to_vec(),
            local_codes: LocalCodes::Named {
                a: NamedCode::Repetition,
                b: NamedCode::Parity,
            },
            side: DecodingSide::X,
        }
    }

    pub fn local_codes(&self) -> Result<(LinearCode, LinearCode)> {
        let (na, nb) = (self.a.len(), self.b.len());
        match &self.local_codes {
            LocalCodes::Named { a, b } => Ok((a.build(na)?, b.build(nb)?)),
            LocalCodes::Explicit { a, b } => {
                let (ca, cb) = (a.to_code()?, b.to_code()?);
                if ca.len() != na || cb.len() != nb {
                    return Err(Error::Config(format!(
                        "explicit local codes have lengths ({}, {}), generating sets have sizes ({na}, {nb})",
                        ca.len(),
                        cb.len()
                    )));
                }
                Ok((ca, cb))
            }
            LocalCodes::Random { dim_a, dim_b, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let ca = LinearCode::sample_random(na, *dim_a, &mut rng)?;
                let cb = LinearCode::sample_random(nb, *dim_b, &mut rng)?;
                Ok((ca, cb))
            }
        }
    }

    /// The code in its standard orientation.
    pub fn build(&self) -> Result<QuantumTannerCode> {
        let group = FiniteGroup::build(&self.group)?;
        let complex = instances::complex(group, &self.a, &self.b)?;
        let (ca, cb) = self.local_codes()?;
        QuantumTannerCode::new(complex, ca, cb)
    }

    /// The orientation whose `H_Z` flags the configured error type.
    pub fn build_for_decoding(&self) -> Result<Arc<QuantumTannerCode>> {
        let code = self.build()?;
        Ok(Arc::new(match self.side {
            DecodingSide::X => code,
            DecodingSide::Z => code.z_side()?,
        }))
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize")
    }

    pub fn validate(&self) -> Result<()> {
        if self.decoders.is_empty() {
            return Err(Error::Config("at least one decoder is required".into()));
        }
        for d in &self.decoders {
            d.validate()?;
        }
        self.noise.validate()?;
        for p in self.grid.iter().flat_map(SweepGrid::points) {
            p.validate()?;
        }
        Ok(())
    }

    /// Noise points of a sweep.
    pub fn points(&self) -> Vec<NoiseModel> {
        match &self.grid {
            Some(g) => g.points(),
            None => vec![self.noise],
        }
    }

    /// First 16 hex digits of the SHA-256 of the compact JSON form, with the
    /// output path left out.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.output = None;
        let json = serde_json::to_string(&canonical).expect("configs serialize");
        hex::encode(Sha256::digest(json.as_bytes()))[..16].to_string()
    }
}
