use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no valid split position {position} for a {digits}-digit number")]
    InvalidSplit { position: u32, digits: u32 },

    #[error("both blocks of a concatenation must be nonzero")]
    ZeroPart,

    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("value does not fit in the target integer type")]
    Overflow,

    #[error("cannot parse {0:?} as a natural number")]
    Parse(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("construction failed verification: {0}")]
    Unverified(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("chain for r = {requested} at alpha = {alpha} has only {found} members with a zero-gap witness")]
    ChainShortfall {
        requested: u32,
        alpha: u32,
        found: usize,
    },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
