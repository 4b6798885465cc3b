//! Entropy and mutual-information rates of the channel outputs.
//!
//! The outputs at either receiver form a hidden Markov process driven by the
//! joint trellis. `log p(y^n)` is accumulated by a forward recursion that
//! keeps the state distribution normalized and sums the log normalizers;
//! `log p(y^n | x_own^n)` runs the same recursion over the interferer's
//! trellis alone, on observations with the intended signal removed. Rates are
//! reported in bits per channel use.

pub mod quadrature;

use std::f64::consts::LN_2;

use rayon::prelude::*;

use crate::channel::{gaussian_loglik, simulate_block, ChannelParams, Receiver, SampleRecord};
use crate::error::{Error, Result};
use crate::trellis::{JointTrellis, Trellis};

pub use quadrature::{bpsk_awgn_mi, noise_model_mi};

/// Default sections per block.
pub const DEFAULT_SECTIONS: usize = 10_000;
/// Default number of independent blocks.
pub const DEFAULT_BLOCKS: usize = 10;

/// Trellis branch with the Gaussian means it produces at one receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanBranch {
    pub s_minus: usize,
    pub s_plus: usize,
    pub means: Vec<f64>,
}

/// A trellis seen as a hidden Markov model: i.u.d. branch selection,
/// unit-variance Gaussian emissions around each branch's means, start in
/// state 0.
#[derive(Debug, Clone, PartialEq)]
pub struct HmmView {
    num_states: usize,
    uses: usize,
    fanout: usize,
    branches: Vec<MeanBranch>,
}

impl HmmView {
    /// Output process at `receiver` over the full joint trellis.
    pub fn joint(jt: &JointTrellis, params: &ChannelParams, receiver: Receiver) -> Self {
        let own_amp = params.own_amplitude(receiver);
        let cross = params.cross_amplitude(receiver);
        let branches = jt
            .branches()
            .iter()
            .map(|b| {
                let (own, other) = match receiver {
                    Receiver::One => (&b.symbols1, &b.symbols2),
                    Receiver::Two => (&b.symbols2, &b.symbols1),
                };
                MeanBranch {
                    s_minus: b.s_minus,
                    s_plus: b.s_plus,
                    means: own
                        .iter()
                        .zip(other)
                        .map(|(&s, &o)| own_amp * f64::from(s) + cross * f64::from(o))
                        .collect(),
                }
            })
            .collect();
        Self {
            num_states: jt.num_states(),
            uses: jt.uses_per_section(),
            fanout: jt.fanout(),
            branches,
        }
    }

    /// A single sender's trellis with every symbol scaled by `amplitude`.
    pub fn single(t: &Trellis, amplitude: f64) -> Self {
        let branches = t
            .branches()
            .iter()
            .map(|b| MeanBranch {
                s_minus: b.s_minus,
                s_plus: b.s_plus,
                means: b
                    .symbols
                    .iter()
                    .map(|&s| amplitude * f64::from(s))
                    .collect(),
            })
            .collect();
        Self {
            num_states: t.num_states(),
            uses: t.uses_per_section(),
            fanout: t.fanout(),
            branches,
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn uses_per_section(&self) -> usize {
        self.uses
    }

    pub fn fanout(&self) -> usize {
        self.fanout
    }

    pub fn branches(&self) -> &[MeanBranch] {
        &self.branches
    }

    /// Log density of one section window on `branch`.
    pub fn branch_loglik(&self, branch: &MeanBranch, window: &[f64]) -> f64 {
        window
            .iter()
            .zip(&branch.means)
            .map(|(&y, &m)| gaussian_loglik(y - m))
            .sum()
    }
}

/// Normalized forward (alpha) recursion.
#[derive(Debug, Clone)]
pub struct ForwardRecursion<'a> {
    view: &'a HmmView,
    alpha: Vec<f64>,
    log_likelihood: f64,
    scratch: Vec<f64>,
}

impl<'a> ForwardRecursion<'a> {
    pub fn new(view: &'a HmmView) -> Self {
        let mut alpha = vec![0.0; view.num_states];
        alpha[0] = 1.0;
        Self {
            view,
            alpha,
            log_likelihood: 0.0,
            scratch: vec![0.0; view.branches.len()],
        }
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// The state weights may be rescaled freely; each step normalizes its
    /// input first.
    pub fn alpha_mut(&mut self) -> &mut [f64] {
        &mut self.alpha
    }

    /// Natural-log likelihood of the windows consumed so far.
    pub fn log_likelihood(&self) -> f64 {
        self.log_likelihood
    }

    /// Consumes one section of observations.
    pub fn step(&mut self, window: &[f64]) {
        let view = self.view;
        debug_assert_eq!(window.len(), view.uses);
        let total: f64 = self.alpha.iter().sum();
        let log_prior = -(view.fanout as f64).ln();

        // Branch weights in the log domain, shifted by their maximum so the
        // exponentials cannot all underflow.
        let mut peak = f64::NEG_INFINITY;
        for (w, b) in self.scratch.iter_mut().zip(&view.branches) {
            let a = self.alpha[b.s_minus];
            *w = if a > 0.0 {
                (a / total).ln() + view.branch_loglik(b, window)
            } else {
                f64::NEG_INFINITY
            };
            peak = peak.max(*w);
        }
        let mut next = vec![0.0; view.num_states];
        for (w, b) in self.scratch.iter().zip(&view.branches) {
            next[b.s_plus] += (w - peak).exp();
        }
        let norm: f64 = next.iter().sum();
        for v in &mut next {
            *v /= norm;
        }
        self.alpha = next;
        self.log_likelihood += peak + norm.ln() + log_prior;
    }
}

/// `ln p(y^n)` for the hidden Markov process of `view`.
pub fn forward_log_likelihood(view: &HmmView, observations: &[f64]) -> Result<f64> {
    if !observations.len().is_multiple_of(view.uses) {
        return Err(Error::PartialSection {
            len: observations.len(),
            uses: view.uses,
        });
    }
    let mut rec = ForwardRecursion::new(view);
    for window in observations.chunks_exact(view.uses) {
        rec.step(window);
    }
    Ok(rec.log_likelihood())
}

/// Estimated rate with its Monte Carlo uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    /// Bits per channel use.
    pub value: f64,
    /// Standard error of `value` over blocks.
    pub std_error: f64,
    /// Channel uses summed over all blocks.
    pub n: usize,
    pub blocks: usize,
    pub seed: u64,
}

impl RateEstimate {
    fn from_blocks(values: &[f64], uses_per_block: usize, seed: u64) -> Self {
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
        Self {
            value: mean,
            std_error: (var / k).sqrt(),
            n: uses_per_block * values.len(),
            blocks: values.len(),
            seed,
        }
    }
}

/// Block length, block count and seed of a Monte Carlo estimate, plus the
/// worker count used to run blocks (which never affects the result).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Estimation {
    pub n_sections: usize,
    pub blocks: usize,
    pub seed: u64,
    /// `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Estimation {
    pub fn new(n_sections: usize, blocks: usize, seed: u64) -> Self {
        Self {
            n_sections,
            blocks,
            seed,
            workers: None,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_sections < 10 {
            return Err(Error::InvalidEstimation(format!(
                "need at least 10 sections per block, got {}",
                self.n_sections
            )));
        }
        if self.blocks < 2 {
            return Err(Error::InvalidEstimation(format!(
                "need at least 2 blocks, got {}",
                self.blocks
            )));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidEstimation(
                "worker count must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Runs `f` on every block index; results come back in block order.
    fn run_blocks<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(u64) -> Result<T> + Sync + Send,
    {
        self.validate()?;
        let work = || {
            (0..self.blocks as u64)
                .into_par_iter()
                .map(&f)
                .collect::<Result<Vec<T>>>()
        };
        match self.workers {
            None => work(),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidEstimation(format!("thread pool: {e}")))?
                .install(work),
        }
    }
}

/// `-(1/n) log2 p(y^n)` of one simulated block.
fn output_entropy_of(view: &HmmView, rec: &SampleRecord, receiver: Receiver) -> Result<f64> {
    let y = rec.observations(receiver);
    Ok(-forward_log_likelihood(view, y)? / (y.len() as f64 * LN_2))
}

/// `-(1/n) log2 p(y^n | x_own^n)` of one simulated block.
fn conditional_entropy_of(view: &HmmView, rec: &SampleRecord, receiver: Receiver) -> Result<f64> {
    let residual: Vec<f64> = rec
        .observations(receiver)
        .iter()
        .zip(rec.own_signal(receiver))
        .map(|(y, x)| y - x)
        .collect();
    Ok(-forward_log_likelihood(view, &residual)? / (residual.len() as f64 * LN_2))
}

fn interferer_view(jt: &JointTrellis, params: &ChannelParams, receiver: Receiver) -> HmmView {
    let other = jt.component(receiver.other().index());
    HmmView::single(other, params.cross_amplitude(receiver))
}

/// Entropy rate of the output at `receiver`, bits per use.
pub fn estimate_output_entropy_rate(
    jt: &JointTrellis,
    params: &ChannelParams,
    receiver: Receiver,
    est: &Estimation,
) -> Result<RateEstimate> {
    let view = HmmView::joint(jt, params, receiver);
    let values = est.run_blocks(|b| {
        let rec = simulate_block(jt, params, est.n_sections, est.seed, b)?;
        output_entropy_of(&view, &rec, receiver)
    })?;
    Ok(RateEstimate::from_blocks(
        &values,
        est.n_sections * jt.uses_per_section(),
        est.seed,
    ))
}

/// Entropy rate of the output at `receiver` given the intended sender's
/// symbols, bits per use.
pub fn estimate_conditional_entropy_rate(
    jt: &JointTrellis,
    params: &ChannelParams,
    receiver: Receiver,
    est: &Estimation,
) -> Result<RateEstimate> {
    let view = interferer_view(jt, params, receiver);
    let values = est.run_blocks(|b| {
        let rec = simulate_block(jt, params, est.n_sections, est.seed, b)?;
        conditional_entropy_of(&view, &rec, receiver)
    })?;
    Ok(RateEstimate::from_blocks(
        &values,
        est.n_sections * jt.uses_per_section(),
        est.seed,
    ))
}

/// Output entropy, conditional entropy and their difference, all computed on
/// the same simulated blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiBreakdown {
    pub output_entropy: RateEstimate,
    pub conditional_entropy: RateEstimate,
    pub mutual_information: RateEstimate,
}

pub fn estimate_mi_breakdown(
    jt: &JointTrellis,
    params: &ChannelParams,
    receiver: Receiver,
    est: &Estimation,
) -> Result<MiBreakdown> {
    let joint = HmmView::joint(jt, params, receiver);
    let interferer = interferer_view(jt, params, receiver);
    let pairs = est.run_blocks(|b| {
        let rec = simulate_block(jt, params, est.n_sections, est.seed, b)?;
        Ok((
            output_entropy_of(&joint, &rec, receiver)?,
            conditional_entropy_of(&interferer, &rec, receiver)?,
        ))
    })?;
    let uses = est.n_sections * jt.uses_per_section();
    let hy: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let hyx: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mi: Vec<f64> = pairs.iter().map(|p| p.0 - p.1).collect();
    Ok(MiBreakdown {
        output_entropy: RateEstimate::from_blocks(&hy, uses, est.seed),
        conditional_entropy: RateEstimate::from_blocks(&hyx, uses, est.seed),
        mutual_information: RateEstimate::from_blocks(&mi, uses, est.seed),
    })
}

/// Mutual-information rate between sender `receiver` and its receiver when
/// sender 1 uses `scheme1` and sender 2 uses `scheme2`.
pub fn estimate_mi_rate(
    scheme1: &Trellis,
    scheme2: &Trellis,
    params: &ChannelParams,
    receiver: Receiver,
    est: &Estimation,
) -> Result<RateEstimate> {
    let jt = JointTrellis::product(scheme1, scheme2);
    Ok(estimate_mi_breakdown(&jt, params, receiver, est)?.mutual_information)
}
