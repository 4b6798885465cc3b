//! Exact error probabilities and information-density distributions for
//! small codes on a [`DiscreteIC`].
//!
//! Sequences of length `n` over an alphabet of size `q` are indexed by
//! `sum_t s_t q^t` (first letter least significant).

use rand::Rng;
use rayon::prelude::*;

use super::discrete::DiscreteIC;
use crate::channel::{block_rng, Receiver};
use crate::error::{Error, Result};

/// Longest block length the lab enumerates.
pub const MAX_BLOCK_LENGTH: usize = 10;
/// Largest number of enumerated outcomes per computation.
pub const MAX_OUTCOMES: u64 = 10_000_000;

/// Per-letter input distributions of the two senders.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDistributions {
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
}

impl InputDistributions {
    pub fn uniform(ic: &DiscreteIC) -> Self {
        let [x1, x2, _, _] = ic.sizes();
        Self {
            p1: vec![1.0 / x1 as f64; x1],
            p2: vec![1.0 / x2 as f64; x2],
        }
    }

    pub fn of(&self, user: Receiver) -> &[f64] {
        match user {
            Receiver::One => &self.p1,
            Receiver::Two => &self.p2,
        }
    }

    fn validate(&self, ic: &DiscreteIC) -> Result<()> {
        for user in [Receiver::One, Receiver::Two] {
            let p = self.of(user);
            if p.len() != ic.input_size(user) {
                return Err(Error::InvalidExperiment(format!(
                    "input distribution {user} has {} entries for alphabet {}",
                    p.len(),
                    ic.input_size(user)
                )));
            }
            let sum: f64 = p.iter().sum();
            if p.iter().any(|v| !(v.is_finite() && *v >= 0.0)) || (sum - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidExperiment(format!(
                    "input distribution {user} is not a probability vector"
                )));
            }
        }
        Ok(())
    }
}

fn pow_checked(base: usize, exp: usize) -> Option<u64> {
    (base as u64).checked_pow(exp as u32)
}

fn guard(what: &str, count: Option<u64>) -> Result<u64> {
    match count {
        Some(c) if c <= MAX_OUTCOMES => Ok(c),
        _ => Err(Error::SizeGuard(format!(
            "{what} exceeds {MAX_OUTCOMES} outcomes"
        ))),
    }
}

fn check_block_length(n: usize) -> Result<()> {
    if n == 0 || n > MAX_BLOCK_LENGTH {
        return Err(Error::SizeGuard(format!(
            "block length must be in 1..={MAX_BLOCK_LENGTH}, got {n}"
        )));
    }
    Ok(())
}

/// Advances `digits` as a base-`radix` counter; false after the last value.
fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

pub fn sequence_index(seq: &[usize], radix: usize) -> usize {
    seq.iter().rev().fold(0, |acc, &s| acc * radix + s)
}

pub fn sequence_from_index(mut index: usize, radix: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = index % radix;
            index /= radix;
            d
        })
        .collect()
}

/// One user's channel under i.i.d. inputs, letter by letter:
/// `P(y | x) = sum_x' P_other(x') W_k(y | x, x')` and `P(y)`.
struct LetterModel {
    ny: usize,
    px: Vec<f64>,
    cond: Vec<f64>,
    log_ratio: Vec<f64>,
}

impl LetterModel {
    fn new(ic: &DiscreteIC, inputs: &InputDistributions, user: Receiver) -> Self {
        let nx = ic.input_size(user);
        let ny = ic.output_size(user);
        let px = inputs.of(user).to_vec();
        let p_other = inputs.of(user.other());
        let mut cond = vec![0.0; nx * ny];
        for x in 0..nx {
            for y in 0..ny {
                cond[x * ny + y] = p_other
                    .iter()
                    .enumerate()
                    .map(|(xo, &po)| po * ic.marginal(user, y, x, xo))
                    .sum();
            }
        }
        let out: Vec<f64> = (0..ny)
            .map(|y| (0..nx).map(|x| px[x] * cond[x * ny + y]).sum())
            .collect();
        let log_ratio = (0..nx * ny)
            .map(|k| {
                let c = cond[k];
                if c > 0.0 {
                    (c / out[k % ny]).ln()
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        Self {
            ny,
            px,
            cond,
            log_ratio,
        }
    }

    fn nx(&self) -> usize {
        self.px.len()
    }

    /// `(1/n) ln P(y^n | x^n) / P(y^n)`, nats.
    fn density(&self, x: &[usize], y: &[usize]) -> f64 {
        let sum: f64 = x
            .iter()
            .zip(y)
            .map(|(&xt, &yt)| self.log_ratio[xt * self.ny + yt])
            .sum();
        sum / x.len() as f64
    }

    /// Calls `f(density, probability)` for every `(x^n, y^n)` of positive
    /// probability.
    fn for_each_pair(&self, n: usize, mut f: impl FnMut(f64, f64)) {
        let mut x = vec![0usize; n];
        loop {
            let px: f64 = x.iter().map(|&v| self.px[v]).product();
            if px > 0.0 {
                let mut y = vec![0usize; n];
                loop {
                    let p: f64 = px
                        * x.iter()
                            .zip(&y)
                            .map(|(&xt, &yt)| self.cond[xt * self.ny + yt])
                            .product::<f64>();
                    if p > 0.0 {
                        f(self.density(&x, &y), p);
                    }
                    if !odometer(&mut y, self.ny) {
                        break;
                    }
                }
            }
            if !odometer(&mut x, self.nx()) {
                break;
            }
        }
    }

    fn prob_at_most(&self, n: usize, threshold: f64) -> f64 {
        let mut total = 0.0;
        self.for_each_pair(n, |d, p| {
            if d <= threshold {
                total += p;
            }
        });
        total
    }
}

/// Exact law of the normalized information density, in nats.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityDistribution {
    pub n: usize,
    /// `(value, probability)` sorted by value; values closer than `1e-12`
    /// are merged.
    pub atoms: Vec<(f64, f64)>,
}

impl DensityDistribution {
    pub fn total_probability(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// Atoms with values converted to bits.
    pub fn in_bits(&self) -> Vec<(f64, f64)> {
        self.atoms
            .iter()
            .map(|&(v, p)| (v / std::f64::consts::LN_2, p))
            .collect()
    }

    pub fn prob_at_most(&self, threshold: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|a| a.0 <= threshold)
            .map(|a| a.1)
            .sum()
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(v, p)| v * p).sum()
    }
}

fn check_enumeration(ic: &DiscreteIC, n: usize, user: Receiver) -> Result<()> {
    check_block_length(n)?;
    let pairs = pow_checked(ic.input_size(user), n)
        .zip(pow_checked(ic.output_size(user), n))
        .and_then(|(a, b)| a.checked_mul(b));
    guard("input/output sequence enumeration", pairs).map(|_| ())
}

/// Distribution of `(1/n) ln P(Y|X) / P(Y)` for `user` when both senders
/// draw letters i.i.d. from `inputs`, by enumerating all `(x^n, y^n)`.
pub fn information_density_distribution(
    ic: &DiscreteIC,
    inputs: &InputDistributions,
    n: usize,
    user: Receiver,
) -> Result<DensityDistribution> {
    inputs.validate(ic)?;
    check_enumeration(ic, n, user)?;
    let model = LetterModel::new(ic, inputs, user);
    let mut raw = Vec::new();
    model.for_each_pair(n, |d, p| raw.push((d, p)));
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut atoms: Vec<(f64, f64)> = Vec::new();
    for (v, p) in raw {
        match atoms.last_mut() {
            Some(last) if (v - last.0).abs() <= 1e-12 => last.1 += p,
            _ => atoms.push((v, p)),
        }
    }
    Ok(DensityDistribution { n, atoms })
}

/// Random-codebook threshold-decoding experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct CodingExperiment {
    pub n: usize,
    pub m1: usize,
    pub m2: usize,
    /// Threshold slack, nats.
    pub gamma: f64,
    pub inputs: InputDistributions,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Report {
    pub n: usize,
    pub m1: usize,
    pub m2: usize,
    pub gamma: f64,
    pub trials: usize,
    pub eps1_mean: f64,
    pub eps2_mean: f64,
    /// Trial average of `eps1 + eps2`.
    pub error_sum_mean: f64,
    pub error_sum_stderr: f64,
    /// `Pr{T_n(1)^c}`.
    pub pr_t1c: f64,
    pub pr_t2c: f64,
    /// `Pr{T_n(1)^c} + Pr{T_n(2)^c} + 2 exp(-n gamma)`.
    pub analytic_bound: f64,
}

impl Lemma1Report {
    /// Empirical error sum within two trial standard errors of the bound.
    pub fn holds(&self) -> bool {
        self.error_sum_mean <= self.analytic_bound + 2.0 * self.error_sum_stderr
    }
}

fn draw_letter(p: &[f64], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (k, &pk) in p.iter().enumerate() {
        acc += pk;
        if u < acc {
            return k;
        }
    }
    p.iter().rposition(|&v| v > 0.0).unwrap_or(0)
}

fn draw_codebook(p: &[f64], m: usize, n: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    (0..m)
        .map(|_| (0..n).map(|_| draw_letter(p, rng)).collect())
        .collect()
}

/// `W_k^n(y | own, other)` for every `y`, indexed as documented.
fn sequence_likelihoods(
    ic: &DiscreteIC,
    user: Receiver,
    own: &[usize],
    other: &[usize],
) -> Vec<f64> {
    let ny = ic.output_size(user);
    let n = own.len();
    let mut out = Vec::with_capacity(ny.pow(n as u32));
    let mut y = vec![0usize; n];
    loop {
        out.push(
            (0..n)
                .map(|t| ic.marginal(user, y[t], own[t], other[t]))
                .product(),
        );
        if !odometer(&mut y, ny) {
            break;
        }
    }
    out
}

/// Exact error probability of `user`'s threshold decoder for one codebook
/// pair: decode `i` iff it is the unique codeword with density above
/// `threshold`.
fn threshold_decoder_error(
    ic: &DiscreteIC,
    model: &LetterModel,
    user: Receiver,
    own: &[Vec<usize>],
    other: &[Vec<usize>],
    threshold: f64,
) -> f64 {
    let n = own[0].len();
    let ny = ic.output_size(user);
    let mut decoded = Vec::with_capacity(ny.pow(n as u32));
    let mut y = vec![0usize; n];
    loop {
        let mut hit = None;
        let mut unique = true;
        for (i, x) in own.iter().enumerate() {
            if model.density(x, &y) > threshold {
                if hit.is_some() {
                    unique = false;
                    break;
                }
                hit = Some(i);
            }
        }
        decoded.push(if unique { hit } else { None });
        if !odometer(&mut y, ny) {
            break;
        }
    }
    let mut err = 0.0;
    for (i, x) in own.iter().enumerate() {
        for xo in other {
            let w = sequence_likelihoods(ic, user, x, xo);
            err += w
                .iter()
                .zip(&decoded)
                .filter(|(_, d)| **d != Some(i))
                .map(|(p, _)| p)
                .sum::<f64>();
        }
    }
    err / (own.len() * other.len()) as f64
}

/// Averages the exact error sum of threshold decoding over random codebooks
/// and compares it with the bound `Pr{T(1)^c} + Pr{T(2)^c} + 2 exp(-n gamma)`.
pub fn lemma1_bound_check(ic: &DiscreteIC, exp: &CodingExperiment) -> Result<Lemma1Report> {
    exp.inputs.validate(ic)?;
    check_block_length(exp.n)?;
    if exp.m1 == 0 || exp.m2 == 0 {
        return Err(Error::InvalidExperiment(
            "codebook sizes must be positive".into(),
        ));
    }
    if !(exp.gamma.is_finite() && exp.gamma > 0.0) {
        return Err(Error::InvalidExperiment(format!(
            "gamma must be positive, got {}",
            exp.gamma
        )));
    }
    if exp.trials == 0 {
        return Err(Error::InvalidExperiment("need at least one trial".into()));
    }
    let pairs = exp.m1 as u64 * exp.m2 as u64;
    for user in [Receiver::One, Receiver::Two] {
        check_enumeration(ic, exp.n, user)?;
        let work = pow_checked(ic.output_size(user), exp.n).and_then(|c| c.checked_mul(pairs + 1));
        guard("codebook error enumeration", work)?;
    }

    let models = [
        LetterModel::new(ic, &exp.inputs, Receiver::One),
        LetterModel::new(ic, &exp.inputs, Receiver::Two),
    ];
    let nf = exp.n as f64;
    let thresholds = [
        (exp.m1 as f64).ln() / nf + exp.gamma,
        (exp.m2 as f64).ln() / nf + exp.gamma,
    ];

    let per_trial: Vec<(f64, f64)> = (0..exp.trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = block_rng(exp.seed, trial);
            let cb1 = draw_codebook(&exp.inputs.p1, exp.m1, exp.n, &mut rng);
            let cb2 = draw_codebook(&exp.inputs.p2, exp.m2, exp.n, &mut rng);
            let e1 =
                threshold_decoder_error(ic, &models[0], Receiver::One, &cb1, &cb2, thresholds[0]);
            let e2 =
                threshold_decoder_error(ic, &models[1], Receiver::Two, &cb2, &cb1, thresholds[1]);
            (e1, e2)
        })
        .collect();

    let k = per_trial.len() as f64;
    let sums: Vec<f64> = per_trial.iter().map(|(a, b)| a + b).collect();
    let error_sum_mean = sums.iter().sum::<f64>() / k;
    let error_sum_stderr = if per_trial.len() > 1 {
        (sums
            .iter()
            .map(|s| (s - error_sum_mean).powi(2))
            .sum::<f64>()
            / (k - 1.0)
            / k)
            .sqrt()
    } else {
        0.0
    };
    let pr_t1c = models[0].prob_at_most(exp.n, thresholds[0]);
    let pr_t2c = models[1].prob_at_most(exp.n, thresholds[1]);
    Ok(Lemma1Report {
        n: exp.n,
        m1: exp.m1,
        m2: exp.m2,
        gamma: exp.gamma,
        trials: exp.trials,
        eps1_mean: per_trial.iter().map(|p| p.0).sum::<f64>() / k,
        eps2_mean: per_trial.iter().map(|p| p.1).sum::<f64>() / k,
        error_sum_mean,
        error_sum_stderr,
        pr_t1c,
        pr_t2c,
        analytic_bound: pr_t1c + pr_t2c + 2.0 * (-nf * exp.gamma).exp(),
    })
}

/// A fixed code: codebooks as letter sequences and one decoding set (a list
/// of output-sequence indices) per message.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitCode {
    pub n: usize,
    pub codebook1: Vec<Vec<usize>>,
    pub codebook2: Vec<Vec<usize>>,
    pub decoding1: Vec<Vec<usize>>,
    pub decoding2: Vec<Vec<usize>>,
}

impl ExplicitCode {
    /// Uniform random codewords; each output sequence is assigned to a
    /// uniformly chosen message, or to none with probability `erase_prob`.
    pub fn random(
        ic: &DiscreteIC,
        n: usize,
        m1: usize,
        m2: usize,
        erase_prob: f64,
        rng: &mut impl Rng,
    ) -> Self {
        let [x1, x2, y1, y2] = ic.sizes();
        let mut codebook = |m: usize, q: usize| -> Vec<Vec<usize>> {
            (0..m)
                .map(|_| (0..n).map(|_| rng.random_range(0..q)).collect())
                .collect()
        };
        let codebook1 = codebook(m1, x1);
        let codebook2 = codebook(m2, x2);
        let mut sets = |m: usize, q: usize| -> Vec<Vec<usize>> {
            let mut sets = vec![Vec::new(); m];
            for y in 0..q.pow(n as u32) {
                if rng.random::<f64>() >= erase_prob {
                    sets[rng.random_range(0..m)].push(y);
                }
            }
            sets
        };
        let decoding1 = sets(m1, y1);
        let decoding2 = sets(m2, y2);
        Self {
            n,
            codebook1,
            codebook2,
            decoding1,
            decoding2,
        }
    }

    fn codebook(&self, user: Receiver) -> &[Vec<usize>] {
        match user {
            Receiver::One => &self.codebook1,
            Receiver::Two => &self.codebook2,
        }
    }

    fn decoding(&self, user: Receiver) -> &[Vec<usize>] {
        match user {
            Receiver::One => &self.decoding1,
            Receiver::Two => &self.decoding2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma2Report {
    pub eps1: f64,
    pub rhs1: f64,
    pub eps2: f64,
    pub rhs2: f64,
}

impl Lemma2Report {
    pub fn holds(&self) -> bool {
        self.eps1 >= self.rhs1 && self.eps2 >= self.rhs2
    }
}

/// Owner message of every output sequence, rejecting overlapping sets.
fn decoding_owners(
    sets: &[Vec<usize>],
    outputs: usize,
    user: Receiver,
) -> Result<Vec<Option<usize>>> {
    let mut owner: Vec<Option<usize>> = vec![None; outputs];
    for (i, set) in sets.iter().enumerate() {
        for &y in set {
            if y >= outputs {
                return Err(Error::InvalidExperiment(format!(
                    "decoding set {i} of user {user} names output {y} of {outputs}"
                )));
            }
            if let Some(first) = owner[y] {
                return Err(Error::OverlappingDecodingSets {
                    user: user.index(),
                    first,
                    second: i,
                });
            }
            owner[y] = Some(i);
        }
    }
    Ok(owner)
}

/// Error probability and the right-hand side
/// `Pr{(1/n) ln P(Y|X)/P(Y) <= (1/n) ln M - gamma} - exp(-n gamma)` for one
/// user, with `X` uniform over the codebook.
fn converse_sides(
    ic: &DiscreteIC,
    code: &ExplicitCode,
    user: Receiver,
    gamma: f64,
) -> Result<(f64, f64)> {
    let own = code.codebook(user);
    let other = code.codebook(user.other());
    let n = code.n;
    let outputs = ic.output_size(user).pow(n as u32);
    let owner = decoding_owners(code.decoding(user), outputs, user)?;
    let (mo, mx) = (own.len() as f64, other.len() as f64);

    let mut eps = 0.0;
    let mut cond = vec![vec![0.0; outputs]; own.len()];
    for (i, x) in own.iter().enumerate() {
        for xo in other {
            let w = sequence_likelihoods(ic, user, x, xo);
            for (y, &p) in w.iter().enumerate() {
                if owner[y] != Some(i) {
                    eps += p;
                }
                cond[i][y] += p / mx;
            }
        }
    }
    eps /= mo * mx;

    let marg: Vec<f64> = (0..outputs)
        .map(|y| cond.iter().map(|c| c[y]).sum::<f64>() / mo)
        .collect();
    let nf = n as f64;
    let threshold = mo.ln() / nf - gamma;
    let mut prob = 0.0;
    for c in &cond {
        for (y, &p) in c.iter().enumerate() {
            if p > 0.0 && (p / marg[y]).ln() / nf <= threshold {
                prob += p;
            }
        }
    }
    Ok((eps, prob / mo - (-nf * gamma).exp()))
}

/// Evaluates both sides of the converse inequality
/// `eps_k >= Pr{density_k <= (1/n) ln M_k - gamma} - exp(-n gamma)` exactly.
pub fn lemma2_converse_check(
    ic: &DiscreteIC,
    code: &ExplicitCode,
    gamma: f64,
) -> Result<Lemma2Report> {
    check_block_length(code.n)?;
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(Error::InvalidExperiment(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    for user in [Receiver::One, Receiver::Two] {
        let book = code.codebook(user);
        if book.is_empty() || code.decoding(user).len() != book.len() {
            return Err(Error::InvalidExperiment(format!(
                "user {user} needs one decoding set per codeword"
            )));
        }
        let q = ic.input_size(user);
        if book
            .iter()
            .any(|c| c.len() != code.n || c.iter().any(|&l| l >= q))
        {
            return Err(Error::InvalidExperiment(format!(
                "user {user} codeword has wrong length or letter"
            )));
        }
        let work = pow_checked(ic.output_size(user), code.n)
            .and_then(|c| c.checked_mul((code.codebook1.len() * code.codebook2.len()) as u64));
        guard("converse enumeration", work)?;
    }
    let (eps1, rhs1) = converse_sides(ic, code, Receiver::One, gamma)?;
    let (eps2, rhs2) = converse_sides(ic, code, Receiver::Two, gamma)?;
    Ok(Lemma2Report {
        eps1,
        rhs1,
        eps2,
        rhs2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noiseless() -> DiscreteIC {
        DiscreteIC::binary_flip(0.0, 0.0).unwrap()
    }

    #[test]
    fn sequence_indexing() {
        assert_eq!(sequence_index(&[1, 0, 1], 2), 5);
        assert_eq!(sequence_from_index(5, 2, 3), vec![1, 0, 1]);
        assert_eq!(
            sequence_from_index(sequence_index(&[2, 3, 0], 4), 4, 3),
            vec![2, 3, 0]
        );
    }

    #[test]
    fn noiseless_density_is_one_bit() {
        let ic = noiseless();
        let inputs = InputDistributions::uniform(&ic);
        for n in [1, 3, 5] {
            let d = information_density_distribution(&ic, &inputs, n, Receiver::One).unwrap();
            let bits = d.in_bits();
            assert_eq!(bits.len(), 1);
            assert!((bits[0].0 - 1.0).abs() < 1e-12);
            assert!((bits[0].1 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_noise_density_is_zero() {
        let ic = DiscreteIC::binary_flip(0.5, 0.3).unwrap();
        let inputs = InputDistributions::uniform(&ic);
        let d = information_density_distribution(&ic, &inputs, 4, Receiver::Two).unwrap();
        assert_eq!(d.atoms.len(), 1);
        assert!(d.atoms[0].0.abs() < 1e-12);
        assert!((d.total_probability() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn size_guards() {
        let ic = DiscreteIC::new([4, 4, 4, 4], vec![1.0 / 16.0; 256]).unwrap();
        let inputs = InputDistributions::uniform(&ic);
        assert!(information_density_distribution(&ic, &inputs, 11, Receiver::One).is_err());
        assert!(matches!(
            information_density_distribution(&ic, &inputs, 10, Receiver::One),
            Err(Error::SizeGuard(_))
        ));
        assert!(information_density_distribution(&ic, &inputs, 0, Receiver::One).is_err());
    }

    #[test]
    fn single_codeword_runs() {
        let ic = DiscreteIC::binary_flip(0.1, 0.1).unwrap();
        let exp = CodingExperiment {
            n: 4,
            m1: 1,
            m2: 1,
            gamma: 0.1,
            inputs: InputDistributions::uniform(&ic),
            trials: 20,
            seed: 5,
        };
        let r = lemma1_bound_check(&ic, &exp).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn noiseless_lab_decodes_perfectly() {
        let ic = noiseless();
        let exp = CodingExperiment {
            n: 8,
            m1: 2,
            m2: 2,
            gamma: 0.01,
            inputs: InputDistributions::uniform(&ic),
            trials: 400,
            seed: 1,
        };
        let r = lemma1_bound_check(&ic, &exp).unwrap();
        // Only identical random codewords cause errors: probability 2^-8 each.
        assert!(r.error_sum_mean < 0.05, "{r:?}");
        assert!(r.pr_t1c.abs() < 1e-12 && r.pr_t2c.abs() < 1e-12);
        assert!(r.holds());
    }

    #[test]
    fn repetition_code_on_noiseless_link() {
        let ic = noiseless();
        let majority = |bit: usize| -> Vec<usize> {
            (0..8)
                .filter(|&y: &usize| usize::from(y.count_ones() >= 2) == bit)
                .collect()
        };
        let code = ExplicitCode {
            n: 3,
            codebook1: vec![vec![0, 0, 0], vec![1, 1, 1]],
            codebook2: vec![vec![0, 0, 0], vec![1, 1, 1]],
            decoding1: vec![majority(0), majority(1)],
            decoding2: vec![majority(0), majority(1)],
        };
        let r = lemma2_converse_check(&ic, &code, 0.1).unwrap();
        assert_eq!(r.eps1, 0.0);
        assert_eq!(r.eps2, 0.0);
        assert!(r.rhs1 <= 0.0 && r.rhs2 <= 0.0);
        assert!((r.rhs1 + (-0.3f64).exp()).abs() < 1e-15);
        assert!(r.holds());

        let r = lemma2_converse_check(&ic, &code, 1e3).unwrap();
        assert!(r.rhs1 <= 0.0 && r.rhs1 > -1e-300);
    }

    #[test]
    fn overlapping_sets_rejected() {
        let ic = noiseless();
        let code = ExplicitCode {
            n: 1,
            codebook1: vec![vec![0], vec![1]],
            codebook2: vec![vec![0], vec![1]],
            decoding1: vec![vec![0], vec![1]],
            decoding2: vec![vec![0, 1], vec![1]],
        };
        assert_eq!(
            lemma2_converse_check(&ic, &code, 0.1),
            Err(Error::OverlappingDecodingSets {
                user: 2,
                first: 0,
                second: 1
            })
        );
    }
}
