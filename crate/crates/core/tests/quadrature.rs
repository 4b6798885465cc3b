use gifc_core::channel::db_to_linear;
use gifc_core::infodensity::quadrature::{
    bpsk_awgn_mi_with, gaussian_entropy_bits, noise_model_mi_with, QuadratureRoute,
};
use gifc_core::infodensity::{bpsk_awgn_mi, noise_model_mi};
use gifc_core::{ChannelParams, Receiver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

// High-precision reference values of the mixture integrals.
const BPSK_0DB: f64 = 0.485_944_154_132_935_32;
const BPSK_7DB: f64 = 0.950_681_106_925_715_6;
const NOISE_MODEL_7DB_HALF: f64 = 0.622_868_354_289_923_7;

/// `-E log2 f(m + N)` for the equal-weight Gaussian mixture with `means`,
/// averaged over components, by stratified sampling of the noise quantile.
fn stratified_entropy(means: &[f64], strata: usize, seed: u64) -> f64 {
    let normal = Normal::new(0.0, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = |y: f64| -> f64 {
        means
            .iter()
            .map(|m| (-(y - m).powi(2) / 2.0).exp())
            .sum::<f64>()
            / (means.len() as f64 * (2.0 * std::f64::consts::PI).sqrt())
    };
    let mut total = 0.0;
    for k in 0..strata {
        let u = (k as f64 + rng.random::<f64>()) / strata as f64;
        let n = normal.inverse_cdf(u);
        for m in means {
            total -= density(m + n).log2();
        }
    }
    total / (strata * means.len()) as f64
}

fn stratified_bpsk(p: f64) -> f64 {
    let s = p.sqrt();
    stratified_entropy(&[-s, s], 200_000, 1) - gaussian_entropy_bits()
}

fn stratified_noise_model(params: &ChannelParams, receiver: Receiver) -> f64 {
    let s = params.own_amplitude(receiver);
    let c = params.cross_amplitude(receiver);
    stratified_entropy(&[-s - c, -s + c, s - c, s + c], 200_000, 2)
        - stratified_entropy(&[-c, c], 200_000, 3)
}

#[test]
fn frozen_constants() {
    assert!((db_to_linear(7.0) - 5.011_872_336_272_723).abs() < 1e-14);
    assert!((gaussian_entropy_bits() - 2.047_095_585_180_641).abs() < 1e-14);
    assert!((bpsk_awgn_mi(1.0).unwrap() - BPSK_0DB).abs() < 1e-8);
    assert!((bpsk_awgn_mi(db_to_linear(7.0)).unwrap() - BPSK_7DB).abs() < 1e-8);
    let params = ChannelParams::from_db(7.0, 7.0, 0.5).unwrap();
    for r in [Receiver::One, Receiver::Two] {
        assert!((noise_model_mi(&params, r).unwrap() - NOISE_MODEL_7DB_HALF).abs() < 1e-8);
    }
}

#[test]
fn stratified_sampling_agrees_with_frozen_constants() {
    assert!((stratified_bpsk(1.0) - BPSK_0DB).abs() < 1e-4);
    assert!((stratified_bpsk(db_to_linear(7.0)) - BPSK_7DB).abs() < 1e-4);
    let params = ChannelParams::from_db(7.0, 7.0, 0.5).unwrap();
    assert!((stratified_noise_model(&params, Receiver::One) - NOISE_MODEL_7DB_HALF).abs() < 1e-4);
}

#[test]
fn stratified_sampling_agrees_on_asymmetric_channel() {
    let params = ChannelParams::from_db(2.0, 9.0, 1.3).unwrap();
    for r in [Receiver::One, Receiver::Two] {
        let q = noise_model_mi(&params, r).unwrap();
        assert!((stratified_noise_model(&params, r) - q).abs() < 1e-4, "{r}");
    }
}

#[test]
fn routes_agree_on_grid() {
    for p_db in [-10.0, -3.0, 0.0, 4.0, 7.0, 12.0, 20.0, 30.0] {
        let p = db_to_linear(p_db);
        let gh = bpsk_awgn_mi_with(p, QuadratureRoute::GaussHermite).unwrap();
        let tr = bpsk_awgn_mi_with(p, QuadratureRoute::Trapezoid).unwrap();
        assert!((gh - tr).abs() < 1e-9, "{p_db} dB");
        for a in [0.0, 0.1, 0.5, 1.0, 2.5] {
            let params = ChannelParams::from_db(p_db, 7.0, a).unwrap();
            for r in [Receiver::One, Receiver::Two] {
                let gh = noise_model_mi_with(&params, r, QuadratureRoute::GaussHermite);
                let tr = noise_model_mi_with(&params, r, QuadratureRoute::Trapezoid);
                assert!((gh - tr).abs() < 1e-9, "{p_db} dB a={a} {r}");
            }
        }
    }
}

#[test]
fn noise_model_never_exceeds_interference_free_rate() {
    for a in [0.1, 0.5, 1.0, 4.0] {
        let params = ChannelParams::from_db(7.0, 7.0, a).unwrap();
        let free = bpsk_awgn_mi(params.p1()).unwrap();
        let v = noise_model_mi(&params, Receiver::One).unwrap();
        assert!(v > 0.0 && v < free, "a={a}: {v}");
    }
}
