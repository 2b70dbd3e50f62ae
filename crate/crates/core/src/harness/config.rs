//! Run settings from an optional `key=value` file.
//!
//! ```text
//! # comments and blank lines are ignored
//! digits = 60
//! tol = 1e-40
//! level_cap = 14
//! ```
//!
//! The file named by [`CONFIG_ENV`] is read when no path is given
//! explicitly. Command-line values are laid over the file with
//! [`RunConfig::overlay`].

use std::path::Path;

use crate::error::{Error, Result};
use crate::numeric::PrecisionContext;

/// Environment variable holding the path of a config file.
pub const CONFIG_ENV: &str = "MELLINT_CONFIG";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub digits: Option<u32>,
    /// Pass tolerance as written, parsed at working precision.
    pub tol: Option<String>,
    pub level_cap: Option<u32>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::InvalidSpec(format!("config line {}: {what}: `{raw}`", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "digits" => out.digits = Some(value.parse().map_err(|_| bad("digits must be an integer"))?),
                "tol" => {
                    let t: f64 = value.parse().map_err(|_| bad("tol must be a number"))?;
                    if !(t > 0.0) {
                        return Err(bad("tol must be positive"));
                    }
                    out.tol = Some(value.to_string());
                }
                "level_cap" => out.level_cap = Some(value.parse().map_err(|_| bad("level_cap must be an integer"))?),
                _ => return Err(bad("unknown key")),
            }
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSpec(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The file named by [`CONFIG_ENV`], if the variable is set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Self::load(Path::new(&path)).map(Some),
            _ => Ok(None),
        }
    }

    /// `self` with every value set in `over` replaced.
    pub fn overlay(self, over: RunConfig) -> RunConfig {
        RunConfig {
            digits: over.digits.or(self.digits),
            tol: over.tol.or(self.tol),
            level_cap: over.level_cap.or(self.level_cap),
        }
    }

    /// A precision context with these settings, defaults elsewhere.
    pub fn context(&self) -> Result<PrecisionContext> {
        let mut ctx = PrecisionContext::new(self.digits.unwrap_or(PrecisionContext::DEFAULT_DIGITS))?;
        if let Some(cap) = self.level_cap {
            ctx = ctx.with_level_cap(cap)?;
        }
        if let Some(tol) = &self.tol {
            let tol = ctx.parse(tol)?;
            ctx = ctx.with_pass_tol(tol)?;
        }
        Ok(ctx)
    }
}
