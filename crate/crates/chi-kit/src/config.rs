//! Run configuration: defaults, a flat `key=value` config file, and the
//! command-line overrides applied on top.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Effective configuration; every field is echoed into the report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Cap on `m + n` (and `m + n + r`) for the combinatorial grids.
    pub max_size: usize,
    /// Cap on `m + n` for the exhaustive permutation-pair grid.
    pub max_perm_size: usize,
    /// Largest page degree for the spectral-sequence computation.
    pub p_max: u32,
    /// Truncation bound for the lattice enumeration oracle.
    pub bound: i64,
    /// Random models for the differential property suite.
    pub models: usize,
    /// Random samples (elements/pairs) per property suite.
    pub samples: usize,
    /// Seed recorded in every report.
    pub seed: u64,
    /// Worker threads (capped by the CHI_KIT_THREADS environment variable).
    pub threads: usize,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// When false, elapsed-ms fields are reported as zero so reports are
    /// byte-identical across runs.
    pub timings: bool,
    /// Inject one flipped sign to demonstrate the failure exit code.
    pub negative_control: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dump_points: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_size: 8,
            max_perm_size: 5,
            p_max: 20,
            bound: 5,
            models: 20,
            samples: 200,
            seed: 1,
            threads: 4,
            format: Format::Text,
            output: None,
            timings: false,
            negative_control: false,
            dump_points: None,
        }
    }
}

impl RunConfig {
    /// Applies a flat `key=value` file (blank lines and `#` comments
    /// allowed). Unknown keys are errors so typos cannot silently change a
    /// verification run.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}:{}: expected key=value", path.display(), lineno + 1);
            };
            let key = key.trim();
            let value = value.trim();
            let parse_err = || format!("{}:{}: invalid value for {}", path.display(), lineno + 1, key);
            match key {
                "max_size" => self.max_size = value.parse().with_context(parse_err)?,
                "max_perm_size" => self.max_perm_size = value.parse().with_context(parse_err)?,
                "p_max" => self.p_max = value.parse().with_context(parse_err)?,
                "bound" => self.bound = value.parse().with_context(parse_err)?,
                "models" => self.models = value.parse().with_context(parse_err)?,
                "samples" => self.samples = value.parse().with_context(parse_err)?,
                "seed" => self.seed = value.parse().with_context(parse_err)?,
                "threads" => self.threads = value.parse().with_context(parse_err)?,
                "format" => {
                    self.format = match value {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        _ => bail!("{}:{}: format must be text or json", path.display(), lineno + 1),
                    }
                }
                "output" => self.output = Some(PathBuf::from(value)),
                "timings" => self.timings = value.parse().with_context(parse_err)?,
                "negative_control" => self.negative_control = value.parse().with_context(parse_err)?,
                "dump_points" => self.dump_points = Some(PathBuf::from(value)),
                other => bail!("{}:{}: unknown key {}", path.display(), lineno + 1, other),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_size == 0 || self.p_max == 0 || self.threads == 0 {
            bail!("bounds and thread count must be positive");
        }
        if self.bound < 0 {
            bail!("bound must be non-negative");
        }
        Ok(())
    }

    /// Thread count after the CHI_KIT_THREADS cap.
    pub fn effective_threads(&self) -> usize {
        let cap = std::env::var("CHI_KIT_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&v| v > 0);
        match cap {
            Some(c) => self.threads.min(c),
            None => self.threads,
        }
    }

    /// Flat echo of the effective configuration for the report.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("max_size".into(), self.max_size.to_string());
        m.insert("max_perm_size".into(), self.max_perm_size.to_string());
        m.insert("p_max".into(), self.p_max.to_string());
        m.insert("bound".into(), self.bound.to_string());
        m.insert("models".into(), self.models.to_string());
        m.insert("samples".into(), self.samples.to_string());
        m.insert("seed".into(), self.seed.to_string());
        m.insert("threads".into(), self.threads.to_string());
        m.insert(
            "format".into(),
            match self.format {
                Format::Text => "text".into(),
                Format::Json => "json".into(),
            },
        );
        m.insert("timings".into(), self.timings.to_string());
        m.insert("negative_control".into(), self.negative_control.to_string());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn file_overrides_and_unknown_keys() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# comment\nmax_size = 5\nseed=99\nformat=json").unwrap();
        let mut cfg = RunConfig::default();
        cfg.apply_file(f.path()).unwrap();
        assert_eq!(cfg.max_size, 5);
        assert_eq!(cfg.seed, 99);
        assert_eq!(cfg.format, Format::Json);

        let mut g = tempfile::NamedTempFile::new().unwrap();
        writeln!(g, "no_such_key=1").unwrap();
        assert!(RunConfig::default().apply_file(g.path()).is_err());
    }
}
