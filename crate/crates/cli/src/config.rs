//! Defaults resolution: command-line flags override the
//! `CONGRUENCE_FORGE_THREADS` environment variable (threads only), which
//! overrides the optional TOML config file, which overrides built-in
//! defaults.

use std::path::Path;

use anyhow::Context;

use forge_core::DEFAULT_MIN_EVIDENCE;

/// Keys accepted in the config file.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    terms: Option<i64>,
    threads: Option<usize>,
    min_evidence: Option<i64>,
}

/// Fully resolved run settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    /// Number of supported lattice points to expand when no flag is given.
    pub terms: i64,
    /// Worker threads for the scan pool; `None` leaves the default.
    pub threads: Option<usize>,
    /// Minimum progression evidence before a verdict is attempted.
    pub min_evidence: i64,
}

pub const DEFAULT_TERMS: i64 = 200;

pub fn resolve(
    config_path: Option<&Path>,
    threads_flag: Option<usize>,
    env_threads: Option<&str>,
) -> anyhow::Result<Settings> {
    let file: FileConfig = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            toml::from_str(&text)
                .with_context(|| format!("parsing config file {}", path.display()))?
        }
        None => FileConfig::default(),
    };
    let env_threads = match env_threads {
        Some(text) => Some(
            text.parse::<usize>()
                .with_context(|| format!("CONGRUENCE_FORGE_THREADS={:?} is not a thread count", text))?,
        ),
        None => None,
    };
    Ok(Settings {
        terms: file.terms.unwrap_or(DEFAULT_TERMS),
        threads: threads_flag.or(env_threads).or(file.threads),
        min_evidence: file.min_evidence.unwrap_or(DEFAULT_MIN_EVIDENCE),
    })
}
