use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;

/// Settings shared by every command. Values given on the command line
/// override those read from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct Settings {
    /// Cartan type, e.g. `A2`, `A1xA1` or a JSON Cartan matrix.
    #[arg(long = "type")]
    pub cartan_type: Option<String>,
    /// Torsion order of the characters.
    #[arg(long)]
    pub n: Option<u32>,
    /// Diagram automorphism: `id`, `flip`, `swap` or a one-based permutation like `[2,1]`.
    #[arg(long)]
    pub eps: Option<String>,
    /// Action on characters: `eps` (default), `id` or a one-based permutation.
    #[arg(long)]
    pub dbar: Option<String>,
    /// Left parabolic subset: `full`, `empty` or `1,2`.
    #[arg(long = "J")]
    pub j: Option<String>,
    /// Right parabolic subset.
    #[arg(long = "Jp")]
    pub jp: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Dimension constant in `d_w = l(w) + D0`.
    #[arg(long)]
    pub d0: Option<i32>,
    /// Restrict to one character, e.g. `(1/2,0)`.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Flat `key = value` file; `#` starts a comment.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Settings {
    /// Fills unset fields from the config file, if one was given.
    pub fn resolve(mut self) -> Result<Settings> {
        if let Some(path) = self.config.clone() {
            let file = read_config(&path)?;
            self = self.or(file);
        }
        Ok(self)
    }

    fn or(self, other: Settings) -> Settings {
        Settings {
            cartan_type: self.cartan_type.or(other.cartan_type),
            n: self.n.or(other.n),
            eps: self.eps.or(other.eps),
            dbar: self.dbar.or(other.dbar),
            j: self.j.or(other.j),
            jp: self.jp.or(other.jp),
            out: self.out.or(other.out),
            seed: self.seed.or(other.seed),
            d0: self.d0.or(other.d0),
            lambda: self.lambda.or(other.lambda),
            config: self.config,
        }
    }

    pub fn cartan_type(&self) -> Result<&str> {
        self.cartan_type.as_deref().context("missing --type")
    }

    pub fn n(&self) -> u32 {
        self.n.unwrap_or(1)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn out(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("."))
    }
}

pub fn read_config(path: &Path) -> Result<Settings> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Settings> {
    let mut s = Settings::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected key = value", lineno + 1);
        };
        let (key, value) = (key.trim(), value.trim().to_string());
        let bad = |what: &str| format!("line {}: invalid {what} {value:?}", lineno + 1);
        match key {
            "type" => s.cartan_type = Some(value),
            "n" => s.n = Some(value.parse().with_context(|| bad("n"))?),
            "eps" => s.eps = Some(value),
            "dbar" => s.dbar = Some(value),
            "J" => s.j = Some(value),
            "Jp" => s.jp = Some(value),
            "out" => s.out = Some(PathBuf::from(value)),
            "seed" => s.seed = Some(value.parse().with_context(|| bad("seed"))?),
            "d0" => s.d0 = Some(value.parse().with_context(|| bad("d0"))?),
            "lambda" => s.lambda = Some(value),
            other => bail!("line {}: unknown key {other:?}", lineno + 1),
        }
    }
    Ok(s)
}

/// The fully resolved configuration, echoed into every JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub cartan_type: String,
    pub n: u32,
    pub eps: Vec<usize>,
    pub dbar: Vec<usize>,
    #[serde(rename = "J")]
    pub j: String,
    #[serde(rename = "Jp")]
    pub jp: String,
    pub seed: u64,
    pub d0: i32,
    pub lambda: Option<String>,
}
