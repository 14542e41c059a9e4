//! Settings shared by all subcommands: built-in defaults, then an optional
//! `key = value` file, then command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;

pub const OUTPUT_DIR_ENV: &str = "SPLITSQ_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Jsonl,
    Csv,
    Human,
}

impl OutputFormat {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(OutputFormat::Jsonl),
            "csv" => Ok(OutputFormat::Csv),
            "human" => Ok(OutputFormat::Human),
            _ => bail!("unknown output format {s:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub alpha_ceiling: u32,
    pub progress: bool,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            output_format: OutputFormat::Jsonl,
            output_path: None,
            alpha_ceiling: 64,
            progress: false,
        }
    }
}

/// Values given on the command line; `None` defers to the file or default.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
    pub alpha_ceiling: Option<u32>,
    pub progress: bool,
}

impl CliConfig {
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("config line {}: expected key = value", i + 1))?;
            let value = value.trim();
            match key.trim() {
                "format" => self.output_format = OutputFormat::parse(value)?,
                "output" => self.output_path = Some(PathBuf::from(value)),
                "alpha_ceiling" => {
                    self.alpha_ceiling = value
                        .parse()
                        .with_context(|| format!("config line {}: bad alpha_ceiling", i + 1))?
                }
                "progress" => {
                    self.progress = match value {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        _ => bail!("config line {}: bad progress value {value:?}", i + 1),
                    }
                }
                other => bail!("config line {}: unknown key {other:?}", i + 1),
            }
        }
        Ok(())
    }

    pub fn resolve(
        file: Option<&Path>,
        flags: Overrides,
        output_dir: Option<&Path>,
    ) -> Result<Self> {
        let mut cfg = CliConfig::default();
        if let Some(path) = file {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            cfg.apply_file(&text)?;
        }
        if let Some(f) = flags.output_format {
            cfg.output_format = f;
        }
        if let Some(p) = flags.output_path {
            cfg.output_path = Some(p);
        }
        if let Some(a) = flags.alpha_ceiling {
            cfg.alpha_ceiling = a;
        }
        cfg.progress |= flags.progress;

        if cfg.alpha_ceiling < 2 {
            bail!("alpha ceiling must be at least 2");
        }
        if let (Some(dir), Some(path)) = (output_dir, cfg.output_path.as_ref()) {
            if path.is_relative() {
                cfg.output_path = Some(dir.join(path));
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut cfg = CliConfig::default();
        cfg.apply_file("# comment\nformat = csv\nalpha_ceiling = 20\n\nprogress = yes\n")
            .unwrap();
        assert_eq!(cfg.output_format, OutputFormat::Csv);
        assert_eq!(cfg.alpha_ceiling, 20);
        assert!(cfg.progress);

        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("splitsq.conf");
        fs::write(&file, "format = csv\noutput = out.csv\n").unwrap();
        let flags = Overrides {
            output_format: Some(OutputFormat::Human),
            ..Overrides::default()
        };
        let cfg = CliConfig::resolve(Some(&file), flags, Some(Path::new("/data"))).unwrap();
        assert_eq!(cfg.output_format, OutputFormat::Human);
        assert_eq!(cfg.output_path, Some(PathBuf::from("/data/out.csv")));
    }

    #[test]
    fn bad_files_are_rejected() {
        let mut cfg = CliConfig::default();
        assert!(cfg.apply_file("format csv").is_err());
        assert!(cfg.apply_file("colour = red").is_err());
        assert!(cfg.apply_file("alpha_ceiling = many").is_err());
        let flags = Overrides {
            alpha_ceiling: Some(1),
            ..Overrides::default()
        };
        assert!(CliConfig::resolve(None, flags, None).is_err());
    }
}
