use std::fmt;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Settings shared by every subcommand. Defaults, then the config file, then
/// command-line flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub zero_tol: f64,
    pub common_tol: f64,
    pub dedup_tol: f64,
    pub truncation: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub verbose: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            zero_tol: bessel_interlace::zeros::ZERO_TOL,
            common_tol: 1e-8,
            dedup_tol: 1e-7,
            truncation: bessel_interlace::interlace::DEFAULT_TERMS,
            format: Format::Json,
            out: None,
            jobs: None,
            verbose: false,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError(format!("invalid value for {key}: {value:?}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(ConfigError(format!("invalid value for {key}: {value:?}"))),
    }
}

impl RunConfig {
    /// Applies `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_str(&mut self, text: &str) -> Result<(), ConfigError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError(format!("line {}: expected key = value, got {raw:?}", n + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "zero_tol" | "tol" => self.zero_tol = parse(key, value)?,
                "common_tol" => self.common_tol = parse(key, value)?,
                "dedup_tol" => self.dedup_tol = parse(key, value)?,
                "truncation" | "N" => self.truncation = parse(key, value)?,
                "format" => {
                    self.format = match value {
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        _ => return Err(ConfigError(format!("invalid value for format: {value:?}"))),
                    }
                }
                "out" => self.out = Some(PathBuf::from(value)),
                "jobs" => self.jobs = Some(parse(key, value)?),
                "verbose" => self.verbose = parse_bool(key, value)?,
                _ => return Err(ConfigError(format!("line {}: unknown key {key:?}", n + 1))),
            }
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_str(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, v) in [("zero_tol", self.zero_tol), ("common_tol", self.common_tol), ("dedup_tol", self.dedup_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError(format!("{name} must be positive, got {v}")));
            }
        }
        if self.truncation < 100 {
            return Err(ConfigError(format!("truncation must be at least 100, got {}", self.truncation)));
        }
        if self.jobs == Some(0) {
            return Err(ConfigError("jobs must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let mut c = RunConfig::default();
        c.apply_str("# comment\nformat = csv\ncommon_tol = 1e-9 # trailing\n\njobs=2\nverbose = yes\n").unwrap();
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.common_tol, 1e-9);
        assert_eq!(c.jobs, Some(2));
        assert!(c.verbose);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn rejects_bad_lines() {
        let mut c = RunConfig::default();
        assert!(c.apply_str("colour = blue").is_err());
        assert!(c.apply_str("format").is_err());
        assert!(c.apply_str("zero_tol = abc").is_err());
        c.apply_str("truncation = 10").unwrap();
        assert!(c.validate().is_err());
    }
}
