//! Run configuration: a `key = value` file, overridden by flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::weights::{format_q, parse_q, Balance};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "CENTRALBAG_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub limits: Limits,
    pub seed: u64,
    pub c: Balance,
    pub d: usize,
    /// Largest order for exhaustive catalogs.
    pub max_n: usize,
    /// Instance count override for seeded suites.
    pub count: Option<usize>,
    pub t1: Option<usize>,
    pub t2: Option<usize>,
    pub t3: Option<usize>,
    pub t: Option<usize>,
    /// Worker threads; results do not depend on it.
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            limits: Limits::default(),
            seed: 1,
            c: Balance::half(),
            d: 2,
            max_n: 7,
            count: None,
            t1: None,
            t2: None,
            t3: None,
            t: None,
            threads: None,
            output: None,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.parse().map_err(|_| parse_err(line, format!("{key}: cannot read {value:?} as a number")))
}

impl RunConfig {
    /// Apply one `key = value` setting; `line` is only used in errors.
    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let l = &mut self.limits;
        match key {
            "max_clique_n" => l.max_clique_n = num(key, value, line)?,
            "max_treewidth_n" => l.max_treewidth_n = num(key, value, line)?,
            "max_separation_number_n" => l.max_separation_number_n = num(key, value, line)?,
            "max_separator_n" => l.max_separator_n = num(key, value, line)?,
            "max_pattern_n" => l.max_pattern_n = num(key, value, line)?,
            "max_host_n" => l.max_host_n = num(key, value, line)?,
            "max_steps" => l.max_steps = num(key, value, line)?,
            "seed" => self.seed = num(key, value, line)?,
            "c" => {
                let x = parse_q(value).map_err(|e| parse_err(line, format!("c: {e}")))?;
                self.c = Balance::new(x).map_err(|e| parse_err(line, format!("c: {e}")))?;
            }
            "d" => self.d = num(key, value, line)?,
            "max_n" => self.max_n = num(key, value, line)?,
            "count" => self.count = Some(num(key, value, line)?),
            "t1" => self.t1 = Some(num(key, value, line)?),
            "t2" => self.t2 = Some(num(key, value, line)?),
            "t3" => self.t3 = Some(num(key, value, line)?),
            "t" => self.t = Some(num(key, value, line)?),
            "threads" => self.threads = Some(num(key, value, line)?),
            "output" => self.output = Some(PathBuf::from(value)),
            _ => return Err(parse_err(line, format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Parse a config file body. `#` starts a comment.
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected key = value, got {body:?}")))?;
            cfg.set(k.trim(), v.trim(), line)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// `path` if given, else the file named by [`CONFIG_ENV`], else defaults.
    pub fn load(path: Option<&Path>) -> Result<RunConfig> {
        let from_env = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        match path.map(Path::to_path_buf).or(from_env) {
            Some(p) => RunConfig::parse(&std::fs::read_to_string(&p)?),
            None => Ok(RunConfig::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let l = &self.limits;
        let caps = [
            ("max_clique_n", l.max_clique_n as u64),
            ("max_treewidth_n", l.max_treewidth_n as u64),
            ("max_separation_number_n", l.max_separation_number_n as u64),
            ("max_separator_n", l.max_separator_n as u64),
            ("max_pattern_n", l.max_pattern_n as u64),
            ("max_host_n", l.max_host_n as u64),
            ("max_steps", l.max_steps),
            ("max_n", self.max_n as u64),
        ];
        if let Some((k, _)) = caps.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Invalid(format!("{k} must be positive")));
        }
        if self.threads == Some(0) {
            return Err(Error::Invalid("threads must be positive".into()));
        }
        Ok(())
    }

    /// Settings that can change results, as written to certificates.
    /// Thread count and output path are left out.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let l = &self.limits;
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        put("max_clique_n", l.max_clique_n.to_string());
        put("max_treewidth_n", l.max_treewidth_n.to_string());
        put("max_separation_number_n", l.max_separation_number_n.to_string());
        put("max_separator_n", l.max_separator_n.to_string());
        put("max_pattern_n", l.max_pattern_n.to_string());
        put("max_host_n", l.max_host_n.to_string());
        put("max_steps", l.max_steps.to_string());
        put("seed", self.seed.to_string());
        put("c", format_q(self.c.value()));
        put("d", self.d.to_string());
        put("max_n", self.max_n.to_string());
        for (k, v) in [("count", self.count), ("t1", self.t1), ("t2", self.t2), ("t3", self.t3), ("t", self.t)] {
            if let Some(v) = v {
                put(k, v.to_string());
            }
        }
        m
    }
}
