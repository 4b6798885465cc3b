use thiserror::Error;

/// Errors raised by trellis construction, estimation, the coding lab and
/// region assembly.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator matrix has no polynomials")]
    EmptyGenerator,
    #[error("generator polynomial {0} is all-zero")]
    ZeroPolynomial(usize),
    #[error("invalid generator polynomial `{0}`")]
    InvalidPolynomial(String),
    #[error("only feed-forward encoders with memory <= {max} are supported (got {memory})")]
    MemoryTooLarge { memory: usize, max: usize },
    #[error("unknown scheme `{0}` (expected `iud:<bits>` or `conv:<octal polys>`)")]
    UnknownScheme(String),
    #[error("an i.u.d. trellis needs at least one bit per section")]
    ZeroBitsPerSection,
    #[error("invalid channel parameters: {0}")]
    InvalidChannel(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("observation length {len} is not a multiple of {uses} channel uses per section")]
    PartialSection { len: usize, uses: usize },
    #[error("invalid estimation settings: {0}")]
    InvalidEstimation(String),
    #[error("exhaustive enumeration limited to {max} sections (got {sections})")]
    TooManySections { sections: usize, max: usize },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("invalid discrete channel: {0}")]
    InvalidChannelTable(String),
    #[error("invalid coding experiment: {0}")]
    InvalidExperiment(String),
    #[error("decoding sets {first} and {second} of user {user} overlap")]
    OverlappingDecodingSets {
        user: u8,
        first: usize,
        second: usize,
    },
    #[error("quadrature routes disagree: gauss-hermite {gauss_hermite}, trapezoid {trapezoid}")]
    QuadratureDisagreement { gauss_hermite: f64, trapezoid: f64 },
    #[error("rate region needs at least one corner")]
    EmptyRegion,
    #[error("corner `{label}` has a negative or non-finite coordinate")]
    InvalidCorner { label: String },
}

pub type Result<T> = std::result::Result<T, Error>;
