//! Line-based `key = value` configuration files.
//!
//! Recognised keys are `kappa`, `t`, `n_max` and `format`. Blank lines and
//! lines starting with `#` are ignored. Command-line flags take precedence
//! over anything read here.

use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};
use crate::table::Format;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub kappa: Option<f64>,
    pub t: Option<f64>,
    pub n_max: Option<usize>,
    pub format: Option<Format>,
}

fn parse_value<T: FromStr>(line_no: usize, key: &str, value: &str) -> CliResult<T> {
    value.parse().map_err(|_| {
        CliError::Usage(format!(
            "config line {line_no}: bad value {value:?} for {key}"
        ))
    })
}

impl Config {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut cfg = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {line_no}: expected key=value"))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "kappa" => cfg.kappa = Some(parse_value(line_no, key, value)?),
                "t" => cfg.t = Some(parse_value(line_no, key, value)?),
                "n_max" => cfg.n_max = Some(parse_value(line_no, key, value)?),
                "format" => cfg.format = Some(parse_value(line_no, key, value)?),
                other => {
                    return Err(CliError::Usage(format!(
                        "config line {line_no}: unknown key {other:?}"
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Config::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let cfg =
            Config::parse("# grid point\nkappa = -0.25\nt=1.5\n\nn_max = 12\nformat = json\n")
                .unwrap();
        assert_eq!(cfg.kappa, Some(-0.25));
        assert_eq!(cfg.t, Some(1.5));
        assert_eq!(cfg.n_max, Some(12));
        assert_eq!(cfg.format, Some(Format::Json));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(matches!(
            Config::parse("sigma = 1"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(Config::parse("t = fast"), Err(CliError::Usage(_))));
        assert!(matches!(
            Config::parse("kappa 0.5"),
            Err(CliError::Usage(_))
        ));
    }
}
