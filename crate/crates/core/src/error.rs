use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid model configuration: {0}")]
    InvalidConfig(String),

    #[error("symbol a_{index} is outside the alphabet a_0..=a_{max_symbol}")]
    SymbolOutOfRange { index: u32, max_symbol: u32 },

    #[error("malformed word {0:?}")]
    MalformedWord(String),

    /// The requested level has more words than the enumeration cap allows.
    #[error(
        "level {level} with K={max_symbol} holds ({branching})^{level} words, \
         more than the enumeration cap of {cap}; use the closedform algorithm instead"
    )]
    CapExceeded {
        max_symbol: u32,
        branching: u64,
        level: u64,
        cap: u64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("value not representable as a finite double: {0}")]
    NonFinite(String),
}
