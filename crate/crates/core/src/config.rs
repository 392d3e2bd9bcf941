//! Layered run settings: command-line flags over environment variables over
//! `.lrasgen.json` in the project root over defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::GenerateError;
use crate::generate::RunConfig;

pub const CONFIG_FILE_NAME: &str = ".lrasgen.json";

/// One settings layer; `None` defers to the next layer down.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub framework: Option<String>,
    pub criteria_file: Option<PathBuf>,
    pub model: Option<String>,
    pub endpoint_url: Option<String>,
    pub temperature: Option<f64>,
    pub context_window: Option<usize>,
    pub max_retries: Option<u32>,
    pub api_key_env: Option<String>,
    pub max_in_flight: Option<usize>,
    pub import_depth: Option<usize>,
    pub title: Option<String>,
    pub api_version: Option<String>,
}

macro_rules! first_some {
    ($self:ident, $lower:ident, $($field:ident),*) => {
        Settings { $($field: $self.$field.or($lower.$field)),* }
    };
}

impl Settings {
    /// Fields of `self` win over those of `lower`.
    pub fn over(self, lower: Settings) -> Settings {
        first_some!(
            self,
            lower,
            framework,
            criteria_file,
            model,
            endpoint_url,
            temperature,
            context_window,
            max_retries,
            api_key_env,
            max_in_flight,
            import_depth,
            title,
            api_version
        )
    }

    /// Reads `LRASGEN_*` variables through `get`.
    pub fn from_env_with(get: impl Fn(&str) -> Option<String>) -> Result<Settings, GenerateError> {
        fn parse<T: std::str::FromStr>(name: &str, v: Option<String>) -> Result<Option<T>, GenerateError> {
            v.map(|s| {
                s.trim()
                    .parse::<T>()
                    .map_err(|_| GenerateError::Config(format!("{name}={s:?} is not a valid value")))
            })
            .transpose()
        }
        Ok(Settings {
            framework: get("LRASGEN_FRAMEWORK"),
            criteria_file: get("LRASGEN_CRITERIA").map(PathBuf::from),
            model: get("LRASGEN_MODEL"),
            endpoint_url: get("LRASGEN_ENDPOINT_URL"),
            temperature: parse("LRASGEN_TEMPERATURE", get("LRASGEN_TEMPERATURE"))?,
            context_window: parse("LRASGEN_CONTEXT_WINDOW", get("LRASGEN_CONTEXT_WINDOW"))?,
            max_retries: parse("LRASGEN_MAX_RETRIES", get("LRASGEN_MAX_RETRIES"))?,
            api_key_env: None,
            max_in_flight: parse("LRASGEN_MAX_IN_FLIGHT", get("LRASGEN_MAX_IN_FLIGHT"))?,
            import_depth: parse("LRASGEN_IMPORT_DEPTH", get("LRASGEN_IMPORT_DEPTH"))?,
            title: None,
            api_version: None,
        })
    }

    pub fn from_env() -> Result<Settings, GenerateError> {
        Self::from_env_with(|k| std::env::var(k).ok().filter(|v| !v.is_empty()))
    }

    /// `.lrasgen.json` of `root`, or empty settings when there is none.
    pub fn from_project(root: &Path) -> Result<Settings, GenerateError> {
        let path = root.join(CONFIG_FILE_NAME);
        match std::fs::read_to_string(&path) {
            Ok(text) => {
                serde_json::from_str(&text).map_err(|e| GenerateError::Config(format!("{}: {e}", path.display())))
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Settings::default()),
            Err(e) => Err(GenerateError::Io(format!("{}: {e}", path.display()))),
        }
    }

    pub fn apply(&self, cfg: &mut RunConfig) {
        let p = &mut cfg.provider;
        macro_rules! set {
            ($dst:expr, $src:expr) => {
                if let Some(v) = $src.clone() {
                    $dst = v;
                }
            };
        }
        set!(cfg.framework, self.framework);
        if let Some(c) = &self.criteria_file {
            cfg.criteria_file = Some(c.clone());
        }
        set!(p.model, self.model);
        set!(p.endpoint_url, self.endpoint_url);
        set!(p.temperature, self.temperature);
        set!(p.context_window, self.context_window);
        set!(p.max_retries, self.max_retries);
        set!(p.api_key_env, self.api_key_env);
        set!(p.max_in_flight, self.max_in_flight);
        set!(cfg.import_depth, self.import_depth);
        if let Some(t) = &self.title {
            cfg.title = Some(t.clone());
        }
        set!(cfg.api_version, self.api_version);
    }
}

/// Builds the run configuration for `root` from all layers.
pub fn resolve(root: &Path, flags: Settings, env: Settings) -> Result<RunConfig, GenerateError> {
    let file = Settings::from_project(root)?;
    let merged = flags.over(env).over(file);
    let mut cfg = RunConfig::new(root);
    merged.apply(&mut cfg);
    Ok(cfg)
}
