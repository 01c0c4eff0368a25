//! Flat key-value configuration files.
//!
//! One `key = value` pair per line, `#` starts a comment. Command-line
//! flags override configured values, which override the built-in defaults.
//! The default path comes from the `ETALE_CONFIG` environment variable.

use std::fs;
use std::path::{Path, PathBuf};

use etale_core::parse::parse_rational;
use etale_core::rational::Rational;

pub const CONFIG_ENV_VAR: &str = "ETALE_CONFIG";

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum OutputMode {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Default)]
pub struct FileConfig {
    pub m: Option<usize>,
    pub alphas: Option<Vec<Rational>>,
    pub bound: Option<u32>,
    pub dmax: Option<u32>,
    pub cmax: Option<u32>,
    pub max_degree: Option<i64>,
    pub output: Option<OutputMode>,
    pub checkpoint: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Parse a comma-separated list of exact rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .map(|part| parse_rational(part.trim()).map_err(|e| format!("'{}': {}", part.trim(), e)))
        .collect()
}

pub fn parse_config(text: &str) -> Result<FileConfig, String> {
    let mut out = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected 'key = value'", lineno + 1));
        };
        let key = key.trim();
        let value = value.trim();
        let bad = |e: String| format!("line {}: {}", lineno + 1, e);
        match key {
            "m" => out.m = Some(value.parse().map_err(|_| bad("invalid m".into()))?),
            "alphas" => out.alphas = Some(parse_rational_list(value).map_err(bad)?),
            "bound" => out.bound = Some(value.parse().map_err(|_| bad("invalid bound".into()))?),
            "dmax" => out.dmax = Some(value.parse().map_err(|_| bad("invalid dmax".into()))?),
            "cmax" => out.cmax = Some(value.parse().map_err(|_| bad("invalid cmax".into()))?),
            "max_degree" => {
                out.max_degree =
                    Some(value.parse().map_err(|_| bad("invalid max_degree".into()))?)
            }
            "output" => {
                out.output = Some(match value {
                    "text" => OutputMode::Text,
                    "json" => OutputMode::Json,
                    other => return Err(bad(format!("unknown output mode '{}'", other))),
                })
            }
            "checkpoint" => out.checkpoint = Some(PathBuf::from(value)),
            "threads" => {
                out.threads = Some(value.parse().map_err(|_| bad("invalid threads".into()))?)
            }
            other => return Err(format!("line {}: unknown key '{}'", lineno + 1, other)),
        }
    }
    Ok(out)
}

/// Load the config from an explicit path, else from `ETALE_CONFIG`, else
/// return the empty config.
pub fn load_config(explicit: Option<&Path>) -> Result<FileConfig, String> {
    let path = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(CONFIG_ENV_VAR).map(PathBuf::from),
    };
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(&p)
                .map_err(|e| format!("cannot read config {}: {}", p.display(), e))?;
            parse_config(&text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use etale_core::rational::{int, rat};

    #[test]
    fn parses_flat_keys() {
        let cfg = parse_config(
            "# defaults\nm = 3\nalphas = 0,1\nbound = 2\noutput = json\nthreads = 4\n",
        )
        .unwrap();
        assert_eq!(cfg.m, Some(3));
        assert_eq!(cfg.alphas, Some(vec![int(0), int(1)]));
        assert_eq!(cfg.bound, Some(2));
        assert_eq!(cfg.output, Some(OutputMode::Json));
        assert_eq!(cfg.threads, Some(4));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(parse_config("wat = 1").is_err());
        assert!(parse_config("m").is_err());
        assert!(parse_config("output = yaml").is_err());
    }

    #[test]
    fn rational_lists() {
        assert_eq!(
            parse_rational_list("-1, 0, 1/2").unwrap(),
            vec![int(-1), int(0), rat(1, 2)]
        );
        assert!(parse_rational_list("1,x").is_err());
    }
}
