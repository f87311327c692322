//! Bounds and output settings: defaults, then `--config`, then
//! `HEREDITARY_*` environment variables, then command-line flags.

use std::path::{Path, PathBuf};

use hereditary::Limits;
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub limits: Option<Limits>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: String,
    pub limits: Limits,
    pub format: Format,
    pub output: Option<PathBuf>,
}

/// Environment variables read for bound overrides, with the field each sets.
pub const ENV_VARS: [&str; 7] = [
    "HEREDITARY_MAX_TABLE_ORDER",
    "HEREDITARY_MAX_SUBGROUP_ORDER",
    "HEREDITARY_MAX_ALGEBRA_ELEMENTS",
    "HEREDITARY_SEARCH_BUDGET",
    "HEREDITARY_MAX_MAXIMAL_SUBGROUPS",
    "HEREDITARY_MAX_LINEAR_MAPS",
    "HEREDITARY_ALGEBRA_SEARCH_BUDGET",
];

fn set(limits: &mut Limits, var: &str, v: u64) {
    match var {
        "HEREDITARY_MAX_TABLE_ORDER" => limits.max_table_order = v as usize,
        "HEREDITARY_MAX_SUBGROUP_ORDER" => limits.max_subgroup_order = v as usize,
        "HEREDITARY_MAX_ALGEBRA_ELEMENTS" => limits.max_algebra_elements = v,
        "HEREDITARY_SEARCH_BUDGET" => limits.search_budget = v,
        "HEREDITARY_MAX_MAXIMAL_SUBGROUPS" => limits.max_maximal_subgroups = v as usize,
        "HEREDITARY_MAX_LINEAR_MAPS" => limits.max_linear_maps = v,
        "HEREDITARY_ALGEBRA_SEARCH_BUDGET" => limits.algebra_search_budget = v,
        _ => unreachable!("unknown variable {var}"),
    }
}

pub struct Overrides {
    pub config: Option<PathBuf>,
    pub max_order: Option<u64>,
    pub max_algebra_elements: Option<u64>,
    pub search_budget: Option<u64>,
    pub json: bool,
    pub output: Option<PathBuf>,
}

fn read_config(path: &Path) -> Result<ConfigFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))
}

pub fn resolve(
    command: &str,
    o: Overrides,
    env: impl Fn(&str) -> Option<String>,
) -> Result<RunConfig, Failure> {
    let file = match &o.config {
        Some(p) => read_config(p)?,
        None => ConfigFile::default(),
    };
    let mut limits = file.limits.unwrap_or_default();
    for var in ENV_VARS {
        if let Some(raw) = env(var) {
            let v = raw
                .trim()
                .parse::<u64>()
                .map_err(|_| Failure::usage(format!("{var}={raw}: expected a positive integer")))?;
            set(&mut limits, var, v);
        }
    }
    if let Some(v) = o.max_order {
        limits.max_table_order = v as usize;
    }
    if let Some(v) = o.max_algebra_elements {
        limits.max_algebra_elements = v;
    }
    if let Some(v) = o.search_budget {
        limits.search_budget = v;
    }
    check_positive(&limits)?;
    let format = if o.json { Format::Json } else { file.format.unwrap_or_default() };
    Ok(RunConfig { command: command.to_string(), limits, format, output: o.output.or(file.output) })
}

fn check_positive(l: &Limits) -> Result<(), Failure> {
    let fields = [
        ("max_table_order", l.max_table_order as u64),
        ("max_subgroup_order", l.max_subgroup_order as u64),
        ("max_algebra_elements", l.max_algebra_elements),
        ("search_budget", l.search_budget),
        ("max_maximal_subgroups", l.max_maximal_subgroups as u64),
        ("max_linear_maps", l.max_linear_maps),
        ("algebra_search_budget", l.algebra_search_budget),
    ];
    match fields.iter().find(|(_, v)| *v == 0) {
        Some((name, _)) => Err(Failure::usage(format!("bound {name} must be positive"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none() -> Overrides {
        Overrides { config: None, max_order: None, max_algebra_elements: None, search_budget: None, json: false, output: None }
    }

    #[test]
    fn env_then_flags() {
        let env = |k: &str| (k == "HEREDITARY_SEARCH_BUDGET").then(|| "77".to_string());
        let c = resolve("x", none(), env).unwrap();
        assert_eq!(c.limits.search_budget, 77);
        let c = resolve("x", Overrides { search_budget: Some(5), ..none() }, env).unwrap();
        assert_eq!(c.limits.search_budget, 5);
    }

    #[test]
    fn zero_and_garbage_rejected() {
        assert_eq!(resolve("x", Overrides { max_order: Some(0), ..none() }, |_| None).unwrap_err().code, 2);
        let env = |k: &str| (k == "HEREDITARY_MAX_TABLE_ORDER").then(|| "lots".to_string());
        assert_eq!(resolve("x", none(), env).unwrap_err().code, 2);
    }

    #[test]
    fn unknown_config_fields_rejected() {
        assert!(serde_json::from_str::<ConfigFile>(r#"{"limits":{"search_budget":9},"format":"json"}"#).is_ok());
        assert!(serde_json::from_str::<ConfigFile>(r#"{"limts":{}}"#).is_err());
        assert!(serde_json::from_str::<ConfigFile>(r#"{"limits":{"budget":1}}"#).is_err());
    }
}
