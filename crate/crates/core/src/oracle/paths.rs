//! Exhaustive path enumeration over a joint trellis.

use crate::channel::{branch_loglik, ChannelParams, Receiver};
use crate::error::{Error, Result};
use crate::trellis::JointTrellis;

/// Enumeration is limited to this many sections.
pub const MAX_EXACT_SECTIONS: usize = 4;

fn log_sum_exp(values: &[f64]) -> f64 {
    let peak = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return peak;
    }
    peak + values.iter().map(|v| (v - peak).exp()).sum::<f64>().ln()
}

/// `ln p(y^n)` at `receiver` by summing over every path from the all-zero
/// state, each weighted `2^-(drive bits)`.
pub fn exact_sequence_log_likelihood(
    jt: &JointTrellis,
    params: &ChannelParams,
    observations: &[f64],
    receiver: Receiver,
) -> Result<f64> {
    let uses = jt.uses_per_section();
    if !observations.len().is_multiple_of(uses) {
        return Err(Error::PartialSection {
            len: observations.len(),
            uses,
        });
    }
    let sections = observations.len() / uses;
    if sections > MAX_EXACT_SECTIONS {
        return Err(Error::TooManySections {
            sections,
            max: MAX_EXACT_SECTIONS,
        });
    }
    let windows: Vec<&[f64]> = observations.chunks_exact(uses).collect();
    let log_prior = -(jt.drive_bits() as f64) * std::f64::consts::LN_2;

    let mut terms = Vec::new();
    let mut stack = vec![(0usize, 0usize, 0.0f64)];
    while let Some((depth, state, acc)) = stack.pop() {
        if depth == sections {
            terms.push(acc);
            continue;
        }
        for b in jt.outgoing(state) {
            let (own, other) = match receiver {
                Receiver::One => (&b.symbols1, &b.symbols2),
                Receiver::Two => (&b.symbols2, &b.symbols1),
            };
            let ll = branch_loglik(windows[depth], own, Some(other), params, receiver)?;
            stack.push((depth + 1, b.s_plus, acc + log_prior + ll));
        }
    }
    Ok(log_sum_exp(&terms))
}
