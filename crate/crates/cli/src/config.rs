use std::path::{Path, PathBuf};

pub const CONFIG_ENV: &str = "CESARO_CONFIG";
pub const DEFAULT_CONFIG_FILE: &str = "cesaro.conf";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "human" => Ok(Self::Human),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(format!("unknown output format {s:?} (human, json, csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Significant digits in human output.
    pub precision: usize,
    pub k_default: usize,
    pub order_default: usize,
    /// Overrides every suite tolerance when set.
    pub tol: Option<f64>,
    pub output_format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { precision: 15, k_default: 64, order_default: 3, tol: None, output_format: OutputFormat::Human, seed: 0 }
    }
}

/// Flag values; `None` leaves the config value alone.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub precision: Option<usize>,
    pub k_default: Option<usize>,
    pub order_default: Option<usize>,
    pub tol: Option<f64>,
    pub output_format: Option<OutputFormat>,
    pub seed: Option<u64>,
}

impl RunConfig {
    /// Defaults, then the config file, then flags.
    pub fn resolve(explicit_path: Option<&Path>, flags: &Overrides) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        let path = explicit_path
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(&p).map_err(|e| format!("config file {}: {e}", p.display()))?;
                cfg.apply_file(&text).map_err(|e| format!("config file {}: {e}", p.display()))?;
            }
            None => {
                if let Ok(text) = std::fs::read_to_string(DEFAULT_CONFIG_FILE) {
                    cfg.apply_file(&text).map_err(|e| format!("config file {DEFAULT_CONFIG_FILE}: {e}"))?;
                }
            }
        }
        if let Some(v) = flags.precision {
            cfg.precision = v;
        }
        if let Some(v) = flags.k_default {
            cfg.k_default = v;
        }
        if let Some(v) = flags.order_default {
            cfg.order_default = v;
        }
        if flags.tol.is_some() {
            cfg.tol = flags.tol;
        }
        if let Some(v) = flags.output_format {
            cfg.output_format = v;
        }
        if let Some(v) = flags.seed {
            cfg.seed = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Flat `key = value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let err = |e: &dyn std::fmt::Display| format!("line {}: {key}: {e}", lineno + 1);
            match key {
                "precision" => self.precision = value.parse().map_err(|e| err(&e))?,
                "k_default" => self.k_default = value.parse().map_err(|e| err(&e))?,
                "order_default" => self.order_default = value.parse().map_err(|e| err(&e))?,
                "tol" => self.tol = Some(value.parse().map_err(|e| err(&e))?),
                "output_format" => self.output_format = value.parse().map_err(|e: String| err(&e))?,
                "seed" => self.seed = value.parse().map_err(|e| err(&e))?,
                _ => return Err(format!("line {}: unknown key {key:?}", lineno + 1)),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), String> {
        // f64 carries at most 17 meaningful digits
        if !(15..=17).contains(&self.precision) {
            return Err(format!("precision must be in 15..=17, got {}", self.precision));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(format!("tol must be positive, got {t}"));
            }
        }
        if self.k_default == 0 {
            return Err("k_default must be ≥ 1".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format() {
        let mut cfg = RunConfig::default();
        cfg.apply_file("# comment\nprecision = 17\n\ntol=1e-6 # trailing\noutput_format = json\nseed=7\n").unwrap();
        assert_eq!(cfg.precision, 17);
        assert_eq!(cfg.tol, Some(1e-6));
        assert_eq!(cfg.output_format, OutputFormat::Json);
        assert_eq!(cfg.seed, 7);
        assert!(cfg.apply_file("bogus = 1").is_err());
        assert!(cfg.apply_file("precision").is_err());
        assert!(cfg.apply_file("precision = x").is_err());
    }

    #[test]
    fn validation() {
        let cfg = RunConfig { precision: 14, ..RunConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = RunConfig { tol: Some(0.0), ..RunConfig::default() };
        assert!(cfg.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }
}
