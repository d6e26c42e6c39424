use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size limit exceeded for {what}: {size} > {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: BigUint,
        limit: BigUint,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("value {value} out of range for alphabet of size {q}")]
    ValueOutOfRange { value: u32, q: u32 },
    #[error("graph has loops; a loopless graph is required")]
    LoopsPresent,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("alphabet size {0} is too small (need q >= 3)")]
    AlphabetTooSmall(u32),
    #[error("star witness requires odd n >= 3, got {0}")]
    EvenN(usize),
    #[error("bad cycle packing: {0}")]
    BadPacking(String),
    #[error("linear program is {0}")]
    Lp(&'static str),
    #[error("inconsistent bounds: {0}")]
    InconsistentBounds(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn too_big(what: &'static str, size: impl Into<BigUint>, limit: impl Into<BigUint>) -> Self {
        Error::SizeLimitExceeded {
            what,
            size: size.into(),
            limit: limit.into(),
        }
    }

    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimitExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
