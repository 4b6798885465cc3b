//! Brute-force references.
//!
//! [`paths`] sums over every branch sequence of a joint trellis and is the
//! check for the forward recursion. [`discrete`] and [`coding`] form a small
//! coding lab on finite-alphabet interference channels, where error
//! probabilities and information-density distributions can be computed
//! exactly by enumeration.
//!
//! The coding lab works in nats throughout, so thresholds read
//! `(1/n) ln M + gamma` and slack terms read `exp(-n gamma)`.

pub mod coding;
pub mod discrete;
pub mod paths;

pub use coding::{
    information_density_distribution, lemma1_bound_check, lemma2_converse_check, CodingExperiment,
    DensityDistribution, ExplicitCode, InputDistributions, Lemma1Report, Lemma2Report,
};
pub use discrete::DiscreteIC;
pub use paths::exact_sequence_log_likelihood;
