//! Achievable rate pairs for the two-user Gaussian interference channel with
//! trellis-coded BPSK inputs.
//!
//! The pipeline is:
//!
//! 1. [`trellis`] builds the finite-state machine of each sender and the
//!    synchronized joint trellis of the pair.
//! 2. [`channel`] simulates the symmetric Gaussian interference channel and
//!    evaluates branch likelihoods at either receiver.
//! 3. [`infodensity`] estimates entropy and mutual-information rates with a
//!    normalized forward recursion, and computes the memoryless baselines by
//!    quadrature.
//! 4. [`region`] turns evaluated rate pairs into a union of rectangles and its
//!    time-sharing frontier.
//!
//! [`oracle`] holds brute-force references: exhaustive path sums for the
//! forward recursion and a small discrete-channel coding lab that checks the
//! threshold-decoding achievability bound and the converse inequality.

pub mod channel;
pub mod error;
pub mod infodensity;
pub mod oracle;
pub mod region;
pub mod trellis;

pub use channel::{ChannelParams, Receiver, SampleRecord};
pub use error::{Error, Result};
pub use infodensity::{Estimation, RateEstimate};
pub use region::{RateRegion, Rectangle};
pub use trellis::{Branch, GeneratorMatrix, JointBranch, JointTrellis, Trellis};
