//! Symmetric two-user Gaussian interference channel with BPSK inputs.
//!
//! Per channel use
//!
//! ```text
//! y1 = sqrt(P1) x1 + sqrt(a P2) x2 + n1
//! y2 = sqrt(P2) x2 + sqrt(a P1) x1 + n2
//! ```
//!
//! with `x1, x2` in `{+1, -1}` and independent unit-variance Gaussian noise.
//!
//! Randomness is reproducible: block `b` of a run with seed `s` draws from
//! the ChaCha20 generator `seed_from_u64(s)` switched to stream `b`. Each
//! section consumes one `u64` for the joint drive pattern (its low bits),
//! then one Box-Muller pair per channel use: the cosine branch is `n1`, the
//! sine branch is `n2`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::trellis::JointTrellis;

/// Noise variance at both receivers.
pub const NOISE_VAR: f64 = 1.0;

/// `ln(sqrt(2 pi))`.
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

pub fn db_to_linear(p_db: f64) -> f64 {
    10f64.powf(p_db / 10.0)
}

/// Which receiver (equivalently, which sender's rate) is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Receiver {
    One,
    Two,
}

impl Receiver {
    pub fn index(self) -> u8 {
        match self {
            Receiver::One => 1,
            Receiver::Two => 2,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Receiver::One => Receiver::Two,
            Receiver::Two => Receiver::One,
        }
    }
}

impl TryFrom<u8> for Receiver {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Receiver::One),
            2 => Ok(Receiver::Two),
            _ => Err(Error::InvalidChannel(format!(
                "receiver must be 1 or 2, got {value}"
            ))),
        }
    }
}

impl FromStr for Receiver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse::<u8>()
            .map_err(|_| Error::InvalidChannel(format!("receiver must be 1 or 2, got `{s}`")))
            .and_then(Receiver::try_from)
    }
}

impl fmt::Display for Receiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Linear powers of both senders and the cross gain; noise variance is 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    p1: f64,
    p2: f64,
    a: f64,
}

impl ChannelParams {
    pub fn new(p1: f64, p2: f64, a: f64) -> Result<Self> {
        if !(p1.is_finite() && p1 > 0.0) || !(p2.is_finite() && p2 > 0.0) {
            return Err(Error::InvalidChannel(format!(
                "powers must be positive and finite (p1 = {p1}, p2 = {p2})"
            )));
        }
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::InvalidChannel(format!(
                "cross gain must be finite and nonnegative (a = {a})"
            )));
        }
        Ok(Self { p1, p2, a })
    }

    pub fn from_db(p1_db: f64, p2_db: f64, a: f64) -> Result<Self> {
        Self::new(db_to_linear(p1_db), db_to_linear(p2_db), a)
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn power(&self, sender: Receiver) -> f64 {
        match sender {
            Receiver::One => self.p1,
            Receiver::Two => self.p2,
        }
    }

    /// Amplitude of the intended signal at `receiver`.
    pub fn own_amplitude(&self, receiver: Receiver) -> f64 {
        self.power(receiver).sqrt()
    }

    /// Amplitude of the interfering signal at `receiver`.
    pub fn cross_amplitude(&self, receiver: Receiver) -> f64 {
        (self.a * self.power(receiver.other())).sqrt()
    }

    /// The same channel seen with sender and receiver indices swapped.
    pub fn swapped(&self) -> Self {
        Self {
            p1: self.p2,
            p2: self.p1,
            a: self.a,
        }
    }
}

/// One simulated block.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    /// Transmitted signal of sender 1, `+-sqrt(P1)`.
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub y1: Vec<f64>,
    pub y2: Vec<f64>,
    pub seed: u64,
    pub n: usize,
}

impl SampleRecord {
    pub fn own_signal(&self, receiver: Receiver) -> &[f64] {
        match receiver {
            Receiver::One => &self.x1,
            Receiver::Two => &self.x2,
        }
    }

    pub fn observations(&self, receiver: Receiver) -> &[f64] {
        match receiver {
            Receiver::One => &self.y1,
            Receiver::Two => &self.y2,
        }
    }
}

/// Generator for block `block` of a run seeded with `seed`.
pub fn block_rng(seed: u64, block: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

fn unit_open(rng: &mut ChaCha20Rng) -> f64 {
    // (0, 1]
    ((rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64)
}

fn box_muller(rng: &mut ChaCha20Rng) -> (f64, f64) {
    let r = (-2.0 * unit_open(rng).ln()).sqrt();
    let theta = 2.0 * PI * unit_open(rng);
    (r * theta.cos(), r * theta.sin())
}

/// Simulates block 0 of `seed`.
pub fn simulate(
    jt: &JointTrellis,
    params: &ChannelParams,
    n_sections: usize,
    seed: u64,
) -> Result<SampleRecord> {
    simulate_block(jt, params, n_sections, seed, 0)
}

/// Drives the joint trellis with i.u.d. bits from the all-zero state and
/// passes both senders' symbols through the channel.
pub fn simulate_block(
    jt: &JointTrellis,
    params: &ChannelParams,
    n_sections: usize,
    seed: u64,
    block: u64,
) -> Result<SampleRecord> {
    if n_sections == 0 {
        return Err(Error::InvalidEstimation(
            "n_sections must be at least 1".into(),
        ));
    }
    let uses = jt.uses_per_section();
    let n = n_sections * uses;
    let mut rec = SampleRecord {
        x1: Vec::with_capacity(n),
        x2: Vec::with_capacity(n),
        y1: Vec::with_capacity(n),
        y2: Vec::with_capacity(n),
        seed,
        n,
    };
    let amp1 = params.own_amplitude(Receiver::One);
    let amp2 = params.own_amplitude(Receiver::Two);
    let cross1 = params.cross_amplitude(Receiver::One);
    let cross2 = params.cross_amplitude(Receiver::Two);
    let mask = jt.fanout() as u64 - 1;

    let mut rng = block_rng(seed, block);
    let mut state = 0;
    for _ in 0..n_sections {
        let pattern = (rng.next_u64() & mask) as usize;
        let branch = &jt.outgoing(state)[pattern];
        for (&s1, &s2) in branch.symbols1.iter().zip(&branch.symbols2) {
            let (s1, s2) = (f64::from(s1), f64::from(s2));
            let (n1, n2) = box_muller(&mut rng);
            rec.x1.push(amp1 * s1);
            rec.x2.push(amp2 * s2);
            rec.y1.push(amp1 * s1 + cross1 * s2 + n1);
            rec.y2.push(amp2 * s2 + cross2 * s1 + n2);
        }
        state = branch.s_plus;
    }
    Ok(rec)
}

/// Log density of a unit-variance Gaussian at `residual`.
#[inline]
pub fn gaussian_loglik(residual: f64) -> f64 {
    -LN_SQRT_2PI - 0.5 * residual * residual
}

/// Log density of an observation window given the symbols on a branch.
///
/// The mean of each use is `sqrt(P_own) * own + sqrt(a P_other) * other`.
/// With `other = None` the interference term is dropped; callers pass
/// observations from which the interference has already been removed.
pub fn branch_loglik(
    y_window: &[f64],
    own: &[i8],
    other: Option<&[i8]>,
    params: &ChannelParams,
    receiver: Receiver,
) -> Result<f64> {
    if own.len() != y_window.len() {
        return Err(Error::LengthMismatch {
            expected: y_window.len(),
            got: own.len(),
        });
    }
    let own_amp = params.own_amplitude(receiver);
    match other {
        Some(other) => {
            if other.len() != y_window.len() {
                return Err(Error::LengthMismatch {
                    expected: y_window.len(),
                    got: other.len(),
                });
            }
            let cross = params.cross_amplitude(receiver);
            Ok(y_window
                .iter()
                .zip(own)
                .zip(other)
                .map(|((&y, &s), &o)| {
                    gaussian_loglik(y - own_amp * f64::from(s) - cross * f64::from(o))
                })
                .sum())
        }
        None => Ok(y_window
            .iter()
            .zip(own)
            .map(|(&y, &s)| gaussian_loglik(y - own_amp * f64::from(s)))
            .sum()),
    }
}
