//! Command implementations; each returns the complete output text.

use gifc_core::channel::block_rng;
use gifc_core::infodensity::{bpsk_awgn_mi, Estimation};
use gifc_core::oracle::{
    lemma1_bound_check, lemma2_converse_check, CodingExperiment, DiscreteIC, ExplicitCode,
    InputDistributions,
};
use gifc_core::region::{assemble, point_a_b, point_c, scheme_corner, Vertex};
use gifc_core::{ChannelParams, JointTrellis, Rectangle, Trellis};

use crate::config::{Command, ExperimentConfig};
use crate::error::CliError;

pub const RATE_COLUMNS: &str = "label,r1_bits,r1_stderr,r2_bits,r2_stderr,n,blocks,seed";
pub const LEMMA1_COLUMNS: &str =
    "label,n,m1,m2,gamma,trials,eps1,eps2,error_sum,error_sum_stderr,pr_t1c,pr_t2c,bound,holds";
pub const LEMMA2_COLUMNS: &str = "label,n,m1,m2,gamma,eps1,rhs1,eps2,rhs2,holds";

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    /// False when a lemma check failed; the text is still complete.
    pub checks_passed: bool,
}

/// Six significant digits, or the shortest exact form when `precise`.
pub fn format_number(x: f64, precise: bool) -> String {
    if precise || x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exponent) {
        let decimals = (5 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

struct Table {
    precise: bool,
    text: String,
}

impl Table {
    fn new(config: &ExperimentConfig, command: Command, columns: &str, precise: bool) -> Self {
        Self {
            precise,
            text: format!("{}\n{columns}\n", config.header(command)),
        }
    }

    fn num(&self, x: f64) -> String {
        format_number(x, self.precise)
    }

    fn row(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    fn rate_row(&mut self, label: &str, r: &Rectangle, n: usize, blocks: usize, seed: Option<u64>) {
        let fields = vec![
            label.to_string(),
            self.num(r.r1),
            self.num(r.r1_stderr),
            self.num(r.r2),
            self.num(r.r2_stderr),
            n.to_string(),
            blocks.to_string(),
            seed.map(|s| s.to_string()).unwrap_or_default(),
        ];
        self.row(&fields);
    }
}

fn params(config: &ExperimentConfig) -> Result<ChannelParams, CliError> {
    Ok(ChannelParams::from_db(
        config.p1_db,
        config.p2_db,
        config.a,
    )?)
}

fn estimation(config: &ExperimentConfig) -> Estimation {
    Estimation::new(
        config.n_sections,
        config.blocks,
        config.seed.unwrap_or_default(),
    )
}

fn schemes(config: &ExperimentConfig) -> Result<(Trellis, Trellis), CliError> {
    Ok((config.scheme(1)?.trellis()?, config.scheme(2)?.trellis()?))
}

fn bits(b: &[u8]) -> String {
    b.iter().map(|&v| char::from(b'0' + v)).collect()
}

fn signs(x: &[i8]) -> String {
    x.iter().map(|&v| if v > 0 { '+' } else { '-' }).collect()
}

pub fn trellis(config: &ExperimentConfig) -> Result<Output, CliError> {
    let (t1, t2) = schemes(config)?;
    let mut text = format!("{}\n", config.header(Command::Trellis));
    match config.only {
        Some(sender) => {
            let t = if sender == 1 { &t1 } else { &t2 };
            text.push_str("s_minus,s_plus,drive,x\n");
            for b in t.branches() {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    b.s_minus,
                    b.s_plus,
                    bits(&b.drive),
                    signs(&b.symbols)
                ));
            }
        }
        None => {
            let jt = JointTrellis::product(&t1, &t2);
            text.push_str("s_minus,s_plus,drive1,drive2,x1,x2\n");
            for b in jt.branches() {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    b.s_minus,
                    b.s_plus,
                    bits(&b.drive1),
                    bits(&b.drive2),
                    signs(&b.symbols1),
                    signs(&b.symbols2)
                ));
            }
        }
    }
    Ok(Output {
        text,
        checks_passed: true,
    })
}

pub fn estimate(config: &ExperimentConfig, precise: bool) -> Result<Output, CliError> {
    let (t1, t2) = schemes(config)?;
    let est = estimation(config);
    let corner = scheme_corner("estimate", &t1, &t2, &params(config)?, &est)?;
    let uses = JointTrellis::product(&t1, &t2).uses_per_section();
    let mut table = Table::new(config, Command::Estimate, RATE_COLUMNS, precise);
    table.rate_row(
        "estimate",
        &corner,
        config.n_sections * uses * config.blocks,
        config.blocks,
        config.seed,
    );
    Ok(Output {
        text: table.text,
        checks_passed: true,
    })
}

pub fn region(config: &ExperimentConfig, precise: bool) -> Result<Output, CliError> {
    let params = params(config)?;
    let est = estimation(config);
    let (a, b) = point_a_b(&params, &est)?;
    let c = point_c(&params)?;
    // Both A and B run on two-use sections.
    let n = config.n_sections * 2 * config.blocks;
    let mut table = Table::new(config, Command::Region, RATE_COLUMNS, precise);
    table.rate_row("A", &a, n, config.blocks, config.seed);
    table.rate_row("B", &b, n, config.blocks, config.seed);
    table.rate_row("C", &c, 0, 0, config.seed);
    let corners = [a, b, c];
    let region = assemble(&corners)?;
    let mut vertex_rows = |kind: &str, vertices: &[Vertex]| {
        for v in vertices {
            let source = corners.iter().find(|r| r.label == v.label);
            let rect = Rectangle::new(v.label.clone(), v.r1, v.r2).with_stderr(
                source.map_or(0.0, |r| r.r1_stderr),
                source.map_or(0.0, |r| r.r2_stderr),
            );
            let (n, blocks) = match source {
                Some(r) if r.label != "C" => (n, config.blocks),
                _ => (0, 0),
            };
            table.rate_row(
                &format!("{kind}/{}", v.label),
                &rect,
                n,
                blocks,
                config.seed,
            );
        }
    };
    vertex_rows("frontier", &region.frontier);
    vertex_rows("staircase", &region.staircase);
    Ok(Output {
        text: table.text,
        checks_passed: true,
    })
}

pub fn baseline(config: &ExperimentConfig, precise: bool) -> Result<Output, CliError> {
    let params = params(config)?;
    let awgn = Rectangle::new(
        "bpsk_awgn",
        bpsk_awgn_mi(params.p1())?,
        bpsk_awgn_mi(params.p2())?,
    );
    let c = point_c(&params)?;
    let mut table = Table::new(config, Command::Baseline, RATE_COLUMNS, precise);
    table.rate_row("bpsk_awgn", &awgn, 0, 0, config.seed);
    table.rate_row("noise_model", &c, 0, 0, config.seed);
    Ok(Output {
        text: table.text,
        checks_passed: true,
    })
}

fn discrete_channel(config: &ExperimentConfig) -> Result<DiscreteIC, CliError> {
    match &config.ic_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            Ok(text.parse::<DiscreteIC>()?)
        }
        None => Ok(DiscreteIC::binary_flip(
            config.noise_flip,
            config.interference_flip,
        )?),
    }
}

pub fn lemma1(config: &ExperimentConfig, precise: bool) -> Result<Output, CliError> {
    let ic = discrete_channel(config)?;
    let seed = config.seed.unwrap_or_default();
    let mut table = Table::new(config, Command::Lemma1, LEMMA1_COLUMNS, precise);
    let mut all = true;
    for &m in &config.codebook_sizes {
        for &gamma in &config.gammas {
            let exp = CodingExperiment {
                n: config.code_length,
                m1: m,
                m2: m,
                gamma,
                inputs: InputDistributions::uniform(&ic),
                trials: config.trials,
                seed,
            };
            let r = lemma1_bound_check(&ic, &exp)?;
            all &= r.holds();
            let fields = vec![
                format!("m{m}/gamma{gamma}"),
                r.n.to_string(),
                r.m1.to_string(),
                r.m2.to_string(),
                table.num(gamma),
                r.trials.to_string(),
                table.num(r.eps1_mean),
                table.num(r.eps2_mean),
                table.num(r.error_sum_mean),
                table.num(r.error_sum_stderr),
                table.num(r.pr_t1c),
                table.num(r.pr_t2c),
                table.num(r.analytic_bound),
                r.holds().to_string(),
            ];
            table.row(&fields);
        }
    }
    Ok(Output {
        text: table.text,
        checks_passed: all,
    })
}

pub fn lemma2(config: &ExperimentConfig, precise: bool) -> Result<Output, CliError> {
    let ic = discrete_channel(config)?;
    let seed = config.seed.unwrap_or_default();
    let mut table = Table::new(config, Command::Lemma2, LEMMA2_COLUMNS, precise);
    let mut all = true;
    for k in 0..config.codes {
        let m = config.codebook_sizes[k % config.codebook_sizes.len()];
        let mut rng = block_rng(seed, k as u64);
        let code = ExplicitCode::random(&ic, config.code_length, m, m, config.erase_prob, &mut rng);
        for &gamma in &config.gammas {
            let r = lemma2_converse_check(&ic, &code, gamma)?;
            all &= r.holds();
            let fields = vec![
                format!("code{k}/gamma{gamma}"),
                config.code_length.to_string(),
                m.to_string(),
                m.to_string(),
                table.num(gamma),
                table.num(r.eps1),
                table.num(r.rhs1),
                table.num(r.eps2),
                table.num(r.rhs2),
                r.holds().to_string(),
            ];
            table.row(&fields);
        }
    }
    Ok(Output {
        text: table.text,
        checks_passed: all,
    })
}
