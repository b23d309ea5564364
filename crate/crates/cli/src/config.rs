use crate::Failure;
use kflag::ring::{Substitution, Target};
use kflag::weyl::LieType;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, Failure> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(Failure::usage(format!("unknown format '{s}'; expected json, tsv or pretty"))),
        }
    }
}

/// Keys accepted in a `--config` file; anything else is rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(rename = "type")]
    pub lie_type: Option<String>,
    pub rank: Option<usize>,
    pub format: Option<String>,
    pub non_equivariant: Option<bool>,
    pub y: Option<String>,
    pub q_prime: Option<String>,
    pub cache_dir: Option<PathBuf>,
    pub max_rank_cap: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Validated settings for one run.
#[derive(Debug)]
pub struct RunConfig {
    pub lie_type: LieType,
    pub rank: usize,
    pub format: Format,
    pub non_equivariant: bool,
    pub y: Option<Target>,
    pub q_prime: Option<Target>,
    pub cache_dir: Option<PathBuf>,
    pub max_rank_cap: usize,
}

pub const DEFAULT_MAX_RANK_CAP: usize = 8;

impl RunConfig {
    /// Substitution requested by --non-equivariant, --y and --q-prime (y = -q').
    pub fn substitution(&self) -> Option<Substitution> {
        let y = self.y.clone().or_else(|| self.q_prime.as_ref().map(Target::neg));
        if !self.non_equivariant && y.is_none() {
            return None;
        }
        Some(Substitution { weights_to_one: self.non_equivariant, y, z: None })
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if self.y.is_some() && self.q_prime.is_some() {
            return Err(Failure::usage("--y and --q-prime both set the value of y; give only one"));
        }
        if self.rank == 0 {
            return Err(Failure::usage("rank must be positive"));
        }
        if self.rank > self.max_rank_cap {
            return Err(Failure::resource(format!("rank {} exceeds the cap of {} (raise --max-rank-cap)", self.rank, self.max_rank_cap)));
        }
        Ok(())
    }
}
