//! Command-line experiment runner for the interference-channel rate
//! estimators.
//!
//! Configuration is assembled from built-in defaults, an optional
//! `key = value` file, the seed environment variable and finally flags.
//! Every output starts with one `# gifc <command> key=value ...` line that
//! parses back into the same [`ExperimentConfig`].

pub mod commands;
pub mod config;
pub mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::Output;
pub use config::{Command, ExperimentConfig, SEED_ENV};
pub use error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "gifc",
    version,
    about = "Achievable rates of the two-user Gaussian interference channel with trellis-coded BPSK inputs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Sub {
    /// Branch table of the joint trellis (or one sender's with --only).
    Trellis,
    /// Rate pair of scheme1/scheme2 at both receivers.
    Estimate,
    /// Corners A, B, C with the time-sharing frontier and staircase.
    Region,
    /// Quadrature rates: interference-free BPSK and interference as noise.
    Baseline,
    /// Threshold-decoding error sums against the achievability bound.
    Lemma1,
    /// Both sides of the converse inequality for random explicit codes.
    Lemma2,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Trellis => Command::Trellis,
            Sub::Estimate => Command::Estimate,
            Sub::Region => Command::Region,
            Sub::Baseline => Command::Baseline,
            Sub::Lemma1 => Command::Lemma1,
            Sub::Lemma2 => Command::Lemma2,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the table here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Print floats in shortest round-trip form instead of 6 significant digits.
    #[arg(long, global = true)]
    pub precise: bool,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[arg(long, global = true)]
    pub p1_db: Option<String>,
    #[arg(long, global = true)]
    pub p2_db: Option<String>,
    /// Cross gain.
    #[arg(long = "a", global = true)]
    pub a: Option<String>,
    /// `iud:<bits>` or `conv:<octal polys>`.
    #[arg(long, global = true)]
    pub scheme1: Option<String>,
    #[arg(long, global = true)]
    pub scheme2: Option<String>,
    #[arg(long, global = true)]
    pub n_sections: Option<String>,
    #[arg(long, global = true)]
    pub blocks: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// Sender whose trellis `trellis` dumps alone (1 or 2).
    #[arg(long, global = true)]
    pub only: Option<String>,
    #[arg(long, global = true)]
    pub code_length: Option<String>,
    /// Comma-separated threshold slacks in nats.
    #[arg(long, global = true)]
    pub gammas: Option<String>,
    /// Comma-separated codebook sizes (used for both users).
    #[arg(long, global = true)]
    pub codebook_sizes: Option<String>,
    #[arg(long, global = true)]
    pub trials: Option<String>,
    #[arg(long, global = true)]
    pub noise_flip: Option<String>,
    #[arg(long, global = true)]
    pub interference_flip: Option<String>,
    /// Discrete channel table file.
    #[arg(long, global = true)]
    pub ic_file: Option<String>,
    #[arg(long, global = true)]
    pub codes: Option<String>,
    #[arg(long, global = true)]
    pub erase_prob: Option<String>,
}

impl Options {
    fn overrides(&self) -> [(&'static str, &Option<String>); 18] {
        [
            ("p1_db", &self.p1_db),
            ("p2_db", &self.p2_db),
            ("a", &self.a),
            ("scheme1", &self.scheme1),
            ("scheme2", &self.scheme2),
            ("n_sections", &self.n_sections),
            ("blocks", &self.blocks),
            ("seed", &self.seed),
            ("only", &self.only),
            ("code_length", &self.code_length),
            ("gammas", &self.gammas),
            ("codebook_sizes", &self.codebook_sizes),
            ("trials", &self.trials),
            ("noise_flip", &self.noise_flip),
            ("interference_flip", &self.interference_flip),
            ("ic_file", &self.ic_file),
            ("codes", &self.codes),
            ("erase_prob", &self.erase_prob),
        ]
    }

    /// Defaults, then the config file, then `env_seed`, then flags.
    pub fn resolve(&self, env_seed: Option<&str>) -> Result<ExperimentConfig, CliError> {
        let mut config = ExperimentConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::io(&path.display().to_string(), e))?;
            config.apply_text(&text)?;
        }
        if let Some(seed) = env_seed {
            config.set("seed", seed).map_err(|_| {
                CliError::invalid_config(format!("{SEED_ENV} is not a 64-bit integer"))
            })?;
        }
        for (key, value) in self.overrides() {
            if let Some(v) = value {
                config.set(key, v)?;
            }
        }
        Ok(config)
    }
}

/// Runs `command` on a validated configuration.
pub fn run(
    command: Command,
    config: &ExperimentConfig,
    precise: bool,
    workers: Option<usize>,
) -> Result<Output, CliError> {
    config.validate(command)?;
    let work = || match command {
        Command::Trellis => commands::trellis(config),
        Command::Estimate => commands::estimate(config, precise),
        Command::Region => commands::region(config, precise),
        Command::Baseline => commands::baseline(config, precise),
        Command::Lemma1 => commands::lemma1(config, precise),
        Command::Lemma2 => commands::lemma2(config, precise),
    };
    match workers {
        None => work(),
        Some(0) => Err(CliError::invalid_config("workers must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::new(exit::GENERIC, format!("thread pool: {e}")))?
            .install(work),
    }
}

/// Resolves the configuration, runs the command and writes its output.
/// The error carries the process exit code.
pub fn execute(cli: &Cli, env_seed: Option<&str>) -> Result<(), CliError> {
    let command = Command::from(cli.command);
    let config = cli.options.resolve(env_seed)?;
    let out = run(command, &config, cli.options.precise, cli.options.workers)?;
    match &cli.options.output {
        Some(path) => std::fs::write(path, &out.text)
            .map_err(|e| CliError::io(&path.display().to_string(), e))?,
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(out.text.as_bytes())
                .map_err(|e| CliError::io("stdout", e))?;
        }
    }
    if out.checks_passed {
        Ok(())
    } else {
        Err(CliError::new(
            exit::CHECK_FAILED,
            format!("{command}: a checked inequality failed"),
        ))
    }
}
