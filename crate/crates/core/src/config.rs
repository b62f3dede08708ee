//! Command configuration layered as flags, then `TTS_` environment
//! variables, then a TOML file, then built-in defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{read_to_string, Error, Result};

pub const DEFAULT_PORT: u16 = 8080;

/// Bank value selecting the built-in synthetic bank.
pub const FIXTURE_BANK: &str = "fixture";

/// Keys accepted in a config file. Every key can also come from a flag or
/// from the upper-cased `TTS_` variable of the same name.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub data: Option<PathBuf>,
    pub bank: Option<PathBuf>,
    pub settings: Option<PathBuf>,
    pub port: Option<u16>,
    pub seed: Option<u64>,
    pub log_level: Option<String>,
}

impl Layer {
    pub fn from_toml(text: &str, source_name: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::parse(source_name, 0, e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        if !path.is_file() {
            return Err(Error::Data(format!("config file {} not found", path.display())));
        }
        Self::from_toml(&read_to_string(path)?, &path.display().to_string())
    }

    /// Fills every unset key from `lower`.
    pub fn over(self, lower: Layer) -> Layer {
        Layer {
            data: self.data.or(lower.data),
            bank: self.bank.or(lower.bank),
            settings: self.settings.or(lower.settings),
            port: self.port.or(lower.port),
            seed: self.seed.or(lower.seed),
            log_level: self.log_level.or(lower.log_level),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub data: PathBuf,
    /// `None` selects the built-in fixture bank.
    pub bank: Option<PathBuf>,
    pub settings: Option<PathBuf>,
    pub port: u16,
    pub seed: Option<u64>,
    pub log_level: String,
}

/// `data` in the working directory if present, else the directory shipped
/// with the source tree.
pub fn default_data_dir() -> PathBuf {
    let local = PathBuf::from("data");
    if local.join("lexicon").is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

impl Config {
    /// Resolves `cli` (flags with environment already folded in) over an
    /// optional config file.
    pub fn resolve(cli: Layer, file: Option<&Path>) -> Result<Self> {
        let file = match file {
            Some(p) => Layer::load(p)?,
            None => Layer::default(),
        };
        let l = cli.over(file);
        let bank = l.bank.filter(|b| b.as_os_str() != FIXTURE_BANK);
        Ok(Config {
            data: l.data.unwrap_or_else(default_data_dir),
            bank,
            settings: l.settings,
            port: l.port.unwrap_or(DEFAULT_PORT),
            seed: l.seed,
            log_level: l.log_level.unwrap_or_else(|| "info".into()),
        })
    }

    /// Aborts with a data error naming the first referenced path that is
    /// missing.
    pub fn check_paths(&self, need_data: bool, need_bank: bool) -> Result<()> {
        let mut want: Vec<(&str, &Path)> = Vec::new();
        if need_data {
            want.push(("data directory", &self.data));
        }
        if need_bank {
            if let Some(b) = &self.bank {
                want.push(("bank", b));
            }
        }
        if let Some(s) = &self.settings {
            want.push(("settings file", s));
        }
        match want.into_iter().find(|(_, p)| !p.exists()) {
            Some((what, p)) => Err(Error::Data(format!("{what} {} not found", p.display()))),
            None => Ok(()),
        }
    }
}
