//! The `gelfand` command line: suite registry, configuration and reports.

pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use report::{emit_report, Case, Format, Status, VerificationReport};
pub use suites::{run_suite, suite_names, SUITES};

use crate::error::{Error, Result};

/// Run configuration. Flags override the config file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub suite: String,
    pub max_k: Option<u32>,
    pub rank: Option<usize>,
    pub degree: Option<usize>,
    pub algebra: Option<String>,
    pub row: Option<String>,
    pub t: Option<Vec<f64>>,
    pub cutoff: Option<usize>,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub timings: bool,
}

fn parse_t_list(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad value `{x}` in t list")))
        .collect()
}

impl Config {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_file_text(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected `key = value`", no + 1)))?;
            let (key, value) = (key.trim().replace('-', "_"), value.trim());
            let bad = |what: &str| Error::Parse(format!("config line {}: bad {what} `{value}`", no + 1));
            match key.as_str() {
                "suite" => self.suite = value.to_string(),
                "max_k" => self.max_k = Some(value.parse().map_err(|_| bad("max_k"))?),
                "rank" => self.rank = Some(value.parse().map_err(|_| bad("rank"))?),
                "degree" => self.degree = Some(value.parse().map_err(|_| bad("degree"))?),
                "algebra" => self.algebra = Some(value.to_string()),
                "row" => self.row = Some(value.to_string()),
                "t" => self.t = Some(parse_t_list(value).map_err(Error::Parse)?),
                "cutoff" => self.cutoff = Some(value.parse().map_err(|_| bad("cutoff"))?),
                "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
                "out" => self.out = Some(PathBuf::from(value)),
                "format" => self.format = value.parse().map_err(Error::Parse)?,
                "timings" => self.timings = value.parse().map_err(|_| bad("timings"))?,
                other => return Err(Error::Parse(format!("config line {}: unknown key `{other}`", no + 1))),
            }
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let mut c = Config::default();
        c.apply_file_text(&text)?;
        Ok(c)
    }
}

#[derive(Debug, Parser)]
#[command(name = "gelfand", version, about = "Verification suites for Gelfand pairs and their direct limits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one verification suite (or `all`).
    Verify(VerifyArgs),
    /// List the registered suites.
    List,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Suite name; same as `--suite`.
    pub name: Option<String>,
    #[arg(long)]
    pub suite: Option<String>,
    /// Flat `key = value` config file; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub max_k: Option<u32>,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
    /// Algebra id (`heis:n`, `quat:n`, `free:n`, `un:n`, joined by `+`) or a file.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Table row id such as `kac:2` or `jaw:5a`.
    #[arg(long)]
    pub row: Option<String>,
    /// Comma-separated central parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Option<Vec<f64>>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Record per-case runtimes (makes reports run-dependent).
    #[arg(long)]
    pub timings: bool,
}

impl VerifyArgs {
    pub fn resolve(&self) -> Result<Config> {
        let mut c = match &self.config {
            Some(p) => Config::from_file(p)?,
            None => Config::default(),
        };
        match (&self.name, &self.suite) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Invalid(format!("suite given twice: `{a}` and `{b}`")));
            }
            (Some(s), _) | (None, Some(s)) => c.suite = s.clone(),
            (None, None) => {}
        }
        if c.suite.is_empty() {
            return Err(Error::Invalid("no suite given".into()));
        }
        macro_rules! over {
            ($($f:ident),*) => { $( if let Some(v) = &self.$f { c.$f = Some(v.clone()); } )* };
        }
        over!(max_k, rank, degree, algebra, row, t, cutoff, out);
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(f) = self.format {
            c.format = f;
        }
        c.timings |= self.timings;
        Ok(c)
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::List => {
            for s in SUITES {
                println!("{:15} {}", s.name, s.anchor);
            }
            println!("{:15} every suite above with its defaults", "all");
            0
        }
        Command::Verify(args) => {
            let config = match args.resolve() {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("gelfand: {e}");
                    return 2;
                }
            };
            let reports = match run_suite(&config) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("gelfand: {e}");
                    return 2;
                }
            };
            let text = if config.format == Format::Json && reports.len() > 1 {
                let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
                s.push('\n');
                s
            } else {
                reports.iter().map(|r| emit_report(r, config.format)).collect()
            };
            match &config.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &text) {
                        eprintln!("gelfand: cannot write {}: {e}", p.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            if reports.iter().all(VerificationReport::all_pass) {
                0
            } else {
                1
            }
        }
    }
}
