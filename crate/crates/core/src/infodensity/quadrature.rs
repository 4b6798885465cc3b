//! Entropies of equal-weight, unit-variance Gaussian mixtures and the
//! memoryless BPSK baselines built from them.
//!
//! Two independent routes are implemented. The primary one applies
//! Gauss-Hermite quadrature with [`GH_NODES`] nodes to each mixture component;
//! the check route integrates `-f log2 f` with a refined trapezoid rule on
//! `[-(m + 10), m + 10]`, `m` the largest absolute mean. Public baselines
//! evaluate both and fail with [`Error::QuadratureDisagreement`] when they
//! differ by more than [`CROSS_CHECK_TOL`].

use std::f64::consts::{E, LN_2, PI};
use std::sync::OnceLock;

use crate::channel::{ChannelParams, Receiver, LN_SQRT_2PI};
use crate::error::{Error, Result};

/// Gauss-Hermite nodes per mixture component.
pub const GH_NODES: usize = 512;

/// Largest tolerated disagreement between the two quadrature routes, bits.
pub const CROSS_CHECK_TOL: f64 = 1e-6;

/// Differential entropy of a unit-variance Gaussian, bits.
pub fn gaussian_entropy_bits() -> f64 {
    0.5 * (2.0 * PI * E).log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRoute {
    GaussHermite,
    Trapezoid,
}

/// Nodes and weights for `int exp(-x^2) g(x) dx`.
///
/// Roots of `H_n` are isolated by Sturm-sequence bisection on the Jacobi
/// matrix of the Hermite recurrence, then polished with Newton steps on the
/// orthonormal recurrence, which also yields the weights.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    // Number of Jacobi-matrix eigenvalues below x.
    let count_below = |x: f64| {
        let mut count = 0;
        let mut d = -x;
        for j in 1..=n {
            if j > 1 {
                let b2 = (j - 1) as f64 / 2.0;
                d = -x - b2 / d;
            }
            if d == 0.0 {
                d = -1e-300;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    // Orthonormal h_n(z) and sqrt(2n) h_{n-1}(z) = h_n'(z).
    let orthonormal = |z: f64| {
        let mut p1 = PI.powf(-0.25);
        let mut p2 = 0.0;
        for j in 1..=n {
            let jf = j as f64;
            let p3 = p2;
            p2 = p1;
            p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
        }
        (p1, (2.0 * n as f64).sqrt() * p2)
    };

    let bound = (2.0 * n as f64 + 1.0).sqrt() + 1.0;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in n / 2..n {
        let (mut lo, mut hi) = (if k == n / 2 { -1e-3 } else { x[k - 1] }, bound);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut z = 0.5 * (lo + hi);
        let mut deriv = orthonormal(z).1;
        for _ in 0..3 {
            let (p, pp) = orthonormal(z);
            deriv = pp;
            if pp == 0.0 || !pp.is_finite() {
                break;
            }
            let step = p / pp;
            if step.abs() > hi - lo + 1e-12 {
                break;
            }
            z -= step;
        }
        x[k] = z;
        w[k] = 2.0 / (deriv * deriv);
        x[n - 1 - k] = -z;
        w[n - 1 - k] = w[k];
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn default_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_hermite(GH_NODES))
}

/// Natural-log density of the equal-weight mixture of `N(mu, 1)`.
fn mixture_ln_density(y: f64, means: &[f64]) -> f64 {
    let peak = means
        .iter()
        .map(|m| -0.5 * (y - m) * (y - m))
        .fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = means
        .iter()
        .map(|m| (-0.5 * (y - m) * (y - m) - peak).exp())
        .sum();
    peak + (sum / means.len() as f64).ln() - LN_SQRT_2PI
}

fn entropy_gauss_hermite(means: &[f64]) -> f64 {
    let (nodes, weights) = default_rule();
    let scale = std::f64::consts::SQRT_2;
    let per_component: f64 = means
        .iter()
        .map(|&mu| {
            nodes
                .iter()
                .zip(weights)
                .map(|(&x, &w)| w * mixture_ln_density(mu + scale * x, means))
                .sum::<f64>()
        })
        .sum();
    -per_component / (PI.sqrt() * means.len() as f64) / LN_2
}

fn entropy_trapezoid(means: &[f64]) -> f64 {
    let reach = means.iter().map(|m| m.abs()).fold(0.0, f64::max) + 10.0;
    let integrand = |y: f64| {
        let ln_f = mixture_ln_density(y, means);
        -ln_f.exp() * ln_f
    };
    let (lo, hi) = (-reach, reach);
    let mut intervals = 64usize;
    let mut h = (hi - lo) / intervals as f64;
    let mut sum = 0.5 * (integrand(lo) + integrand(hi))
        + (1..intervals)
            .map(|k| integrand(lo + k as f64 * h))
            .sum::<f64>();
    let mut estimate = sum * h;
    for _ in 0..16 {
        // Add midpoints of the current grid.
        let mids: f64 = (0..intervals)
            .map(|k| integrand(lo + (k as f64 + 0.5) * h))
            .sum();
        sum += mids;
        intervals *= 2;
        h *= 0.5;
        let refined = sum * h;
        let converged = (refined - estimate).abs() <= 1e-13 * refined.abs().max(1.0);
        estimate = refined;
        if converged && intervals >= 1024 {
            break;
        }
    }
    estimate / LN_2
}

/// Differential entropy in bits of `(1/K) sum_k N(means[k], 1)`.
pub fn mixture_entropy_bits(means: &[f64], route: QuadratureRoute) -> f64 {
    assert!(!means.is_empty(), "mixture needs at least one component");
    match route {
        QuadratureRoute::GaussHermite => entropy_gauss_hermite(means),
        QuadratureRoute::Trapezoid => entropy_trapezoid(means),
    }
}

fn cross_checked(value: impl Fn(QuadratureRoute) -> f64) -> Result<f64> {
    let gauss_hermite = value(QuadratureRoute::GaussHermite);
    let trapezoid = value(QuadratureRoute::Trapezoid);
    if (gauss_hermite - trapezoid).abs() > CROSS_CHECK_TOL || !gauss_hermite.is_finite() {
        return Err(Error::QuadratureDisagreement {
            gauss_hermite,
            trapezoid,
        });
    }
    Ok(gauss_hermite)
}

fn check_power(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidChannel(format!(
            "power must be positive and finite, got {p}"
        )))
    }
}

/// BPSK mutual information over unit-variance AWGN at linear power `p`, one
/// route only.
pub fn bpsk_awgn_mi_with(p: f64, route: QuadratureRoute) -> Result<f64> {
    check_power(p)?;
    let amp = p.sqrt();
    Ok(mixture_entropy_bits(&[amp, -amp], route) - gaussian_entropy_bits())
}

/// BPSK mutual information over unit-variance AWGN at linear power `p`, in
/// bits per channel use, cross-checked between both quadrature routes.
pub fn bpsk_awgn_mi(p: f64) -> Result<f64> {
    check_power(p)?;
    cross_checked(|route| bpsk_awgn_mi_with(p, route).unwrap_or(f64::NAN))
}

/// Treat-interference-as-noise rate at `receiver`, one route only.
pub fn noise_model_mi_with(
    params: &ChannelParams,
    receiver: Receiver,
    route: QuadratureRoute,
) -> f64 {
    let own = params.own_amplitude(receiver);
    let cross = params.cross_amplitude(receiver);
    let output = [own + cross, own - cross, -own + cross, -own - cross];
    mixture_entropy_bits(&output, route) - mixture_entropy_bits(&[cross, -cross], route)
}

/// BPSK rate at `receiver` when the interferer is modelled as a memoryless
/// equiprobable `+-sqrt(a P_other)` term added to the noise.
pub fn noise_model_mi(params: &ChannelParams, receiver: Receiver) -> Result<f64> {
    cross_checked(|route| noise_model_mi_with(params, receiver, route))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hermite_rule_integrates_moments() {
        let (x, w) = gauss_hermite(GH_NODES);
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        let m4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        assert_abs_diff_eq!(m0, PI.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(m2, PI.sqrt() / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m4, 3.0 * PI.sqrt() / 4.0, epsilon = 1e-12);
        let (x, w) = gauss_hermite(3);
        assert_abs_diff_eq!(x[2], (1.5f64).sqrt(), epsilon = 1e-14);
        assert_eq!(x[1], 0.0);
        assert_abs_diff_eq!(w[1], 2.0 * PI.sqrt() / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn single_gaussian_entropy() {
        for route in [QuadratureRoute::GaussHermite, QuadratureRoute::Trapezoid] {
            assert_abs_diff_eq!(
                mixture_entropy_bits(&[0.7], route),
                gaussian_entropy_bits(),
                epsilon = 1e-12
            );
        }
        assert_abs_diff_eq!(
            gaussian_entropy_bits(),
            2.047_095_585_180_641,
            epsilon = 1e-14
        );
    }

    #[test]
    fn bpsk_limits() {
        assert!(bpsk_awgn_mi(1e-12).unwrap().abs() < 1e-9);
        let high = bpsk_awgn_mi(1000.0).unwrap();
        assert!(high < 1.0 && 1.0 - high < 1e-3, "{high}");
        assert!(bpsk_awgn_mi(0.0).is_err());
        assert!(bpsk_awgn_mi(-1.0).is_err());
    }

    #[test]
    fn noise_model_reductions() {
        let p = ChannelParams::from_db(7.0, 7.0, 0.0).unwrap();
        assert_abs_diff_eq!(
            noise_model_mi(&p, Receiver::One).unwrap(),
            bpsk_awgn_mi(p.p1()).unwrap(),
            epsilon = 1e-12
        );
        let p = ChannelParams::from_db(7.0, 7.0, 0.5).unwrap();
        assert_eq!(
            noise_model_mi(&p, Receiver::One).unwrap(),
            noise_model_mi(&p, Receiver::Two).unwrap()
        );
    }
}
