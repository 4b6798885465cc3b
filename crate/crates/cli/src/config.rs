//! Experiment configuration: `key = value` files, environment and flag
//! overrides, and the one-line header form written to every output.

use std::fmt;
use std::str::FromStr;

use gifc_core::trellis::Scheme;

use crate::error::CliError;

/// Environment variable that overrides the configured seed.
pub const SEED_ENV: &str = "GIFC_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Trellis,
    Estimate,
    Region,
    Baseline,
    Lemma1,
    Lemma2,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Trellis,
        Command::Estimate,
        Command::Region,
        Command::Baseline,
        Command::Lemma1,
        Command::Lemma2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Trellis => "trellis",
            Command::Estimate => "estimate",
            Command::Region => "region",
            Command::Baseline => "baseline",
            Command::Lemma1 => "lemma1",
            Command::Lemma2 => "lemma2",
        }
    }

    /// Whether the command draws random numbers and therefore needs a seed.
    pub fn needs_seed(self) -> bool {
        !matches!(self, Command::Trellis | Command::Baseline)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::invalid_config(format!("unknown command {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub p1_db: f64,
    pub p2_db: f64,
    pub a: f64,
    pub scheme1: String,
    pub scheme2: String,
    pub n_sections: usize,
    pub blocks: usize,
    pub seed: Option<u64>,
    /// `trellis`: dump only this sender's trellis.
    pub only: Option<u8>,
    /// Coding-lab block length.
    pub code_length: usize,
    /// Threshold slacks, nats.
    pub gammas: Vec<f64>,
    /// `M1 = M2` values.
    pub codebook_sizes: Vec<usize>,
    pub trials: usize,
    pub noise_flip: f64,
    pub interference_flip: f64,
    /// Channel table replacing the flip channel.
    pub ic_file: Option<String>,
    /// `lemma2`: number of random codes.
    pub codes: usize,
    /// `lemma2`: probability that an output sequence joins no decoding set.
    pub erase_prob: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            p1_db: 7.0,
            p2_db: 7.0,
            a: 0.5,
            scheme1: "conv:7,5".into(),
            scheme2: "iud:1".into(),
            n_sections: gifc_core::infodensity::DEFAULT_SECTIONS,
            blocks: gifc_core::infodensity::DEFAULT_BLOCKS,
            seed: None,
            only: None,
            code_length: 6,
            gammas: vec![0.05, 0.1, 0.2],
            codebook_sizes: vec![2, 4],
            trials: 200,
            noise_flip: 0.1,
            interference_flip: 0.1,
            ic_file: None,
            codes: 50,
            erase_prob: 0.2,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::invalid_config(format!("cannot parse {key} = {value:?}")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError> {
    value.split(',').map(|v| parse(key, v.trim())).collect()
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl ExperimentConfig {
    /// Sets one key; unknown keys are an error.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let value = value.trim();
        match key {
            "p1_db" => self.p1_db = parse(key, value)?,
            "p2_db" => self.p2_db = parse(key, value)?,
            "a" => self.a = parse(key, value)?,
            "scheme1" => self.scheme1 = value.to_string(),
            "scheme2" => self.scheme2 = value.to_string(),
            "n_sections" => self.n_sections = parse(key, value)?,
            "blocks" => self.blocks = parse(key, value)?,
            "seed" => self.seed = Some(parse(key, value)?),
            "only" => self.only = Some(parse(key, value)?),
            "code_length" => self.code_length = parse(key, value)?,
            "gammas" => self.gammas = parse_list(key, value)?,
            "codebook_sizes" => self.codebook_sizes = parse_list(key, value)?,
            "trials" => self.trials = parse(key, value)?,
            "noise_flip" => self.noise_flip = parse(key, value)?,
            "interference_flip" => self.interference_flip = parse(key, value)?,
            "ic_file" => self.ic_file = Some(value.to_string()),
            "codes" => self.codes = parse(key, value)?,
            "erase_prob" => self.erase_prob = parse(key, value)?,
            _ => return Err(CliError::invalid_config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::invalid_config(format!("line {}: expected key = value", lineno + 1))
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    /// All keys in fixed order; absent optional keys are skipped.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("p1_db", self.p1_db.to_string()),
            ("p2_db", self.p2_db.to_string()),
            ("a", self.a.to_string()),
            ("scheme1", self.scheme1.clone()),
            ("scheme2", self.scheme2.clone()),
            ("n_sections", self.n_sections.to_string()),
            ("blocks", self.blocks.to_string()),
        ];
        if let Some(seed) = self.seed {
            out.push(("seed", seed.to_string()));
        }
        if let Some(only) = self.only {
            out.push(("only", only.to_string()));
        }
        out.extend([
            ("code_length", self.code_length.to_string()),
            ("gammas", join(&self.gammas)),
            ("codebook_sizes", join(&self.codebook_sizes)),
            ("trials", self.trials.to_string()),
            ("noise_flip", self.noise_flip.to_string()),
            ("interference_flip", self.interference_flip.to_string()),
        ]);
        if let Some(path) = &self.ic_file {
            out.push(("ic_file", path.clone()));
        }
        out.extend([
            ("codes", self.codes.to_string()),
            ("erase_prob", self.erase_prob.to_string()),
        ]);
        out
    }

    /// `# gifc <command> key=value ...`
    pub fn header(&self, command: Command) -> String {
        let mut line = format!("# gifc {command}");
        for (k, v) in self.entries() {
            line.push(' ');
            line.push_str(k);
            line.push('=');
            line.push_str(&v);
        }
        line
    }

    /// Inverse of [`ExperimentConfig::header`].
    pub fn from_header(line: &str) -> Result<(Command, Self), CliError> {
        let mut words = line
            .strip_prefix("# gifc ")
            .ok_or_else(|| CliError::invalid_config("not a gifc header line"))?
            .split_whitespace();
        let command: Command = words
            .next()
            .ok_or_else(|| CliError::invalid_config("header names no command"))?
            .parse()?;
        let mut config = Self::default();
        for word in words {
            let (k, v) = word
                .split_once('=')
                .ok_or_else(|| CliError::invalid_config(format!("bad header field {word:?}")))?;
            config.set(k, v)?;
        }
        Ok((command, config))
    }

    pub fn scheme(&self, sender: u8) -> Result<Scheme, CliError> {
        let text = if sender == 1 {
            &self.scheme1
        } else {
            &self.scheme2
        };
        text.parse::<Scheme>().map_err(CliError::from)
    }

    /// Checks everything `command` relies on.
    pub fn validate(&self, command: Command) -> Result<(), CliError> {
        for (k, v) in self.entries() {
            if v.is_empty() || v.chars().any(char::is_whitespace) {
                return Err(CliError::invalid_config(format!(
                    "{k} must be a non-empty value without whitespace"
                )));
            }
        }
        for (k, v) in [("p1_db", self.p1_db), ("p2_db", self.p2_db), ("a", self.a)] {
            if !v.is_finite() {
                return Err(CliError::invalid_config(format!("{k} must be finite")));
            }
        }
        if self.a < 0.0 {
            return Err(CliError::invalid_config("a must be nonnegative"));
        }
        self.scheme(1)?;
        self.scheme(2)?;
        if self.n_sections == 0 || self.blocks == 0 || self.trials == 0 || self.codes == 0 {
            return Err(CliError::invalid_config(
                "n_sections, blocks, trials and codes must be positive",
            ));
        }
        if let Some(only) = self.only {
            if only != 1 && only != 2 {
                return Err(CliError::invalid_config("only must be 1 or 2"));
            }
        }
        if self.gammas.is_empty() || self.gammas.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
            return Err(CliError::invalid_config("gammas must be positive"));
        }
        if self.codebook_sizes.is_empty() || self.codebook_sizes.contains(&0) {
            return Err(CliError::invalid_config("codebook_sizes must be positive"));
        }
        for (k, v) in [
            ("noise_flip", self.noise_flip),
            ("interference_flip", self.interference_flip),
            ("erase_prob", self.erase_prob),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(CliError::invalid_config(format!("{k} must lie in [0, 1]")));
            }
        }
        if command.needs_seed() && self.seed.is_none() {
            return Err(CliError::missing_seed(command));
        }
        Ok(())
    }
}
