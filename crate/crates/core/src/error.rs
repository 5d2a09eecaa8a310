use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("cycle notation, byte {position}: {message}")]
    CycleSyntax { position: usize, message: String },

    #[error("graph text, line {line}: {message}")]
    GraphSyntax { line: usize, message: String },

    #[error("factor {factor} at level {level} is not in U_{level}")]
    NotInTransversal { level: usize, factor: String },

    #[error("invalid transposition ({i},{k}) for n = {n}")]
    InvalidTransposition { i: usize, k: usize, n: usize },

    #[error("the identity is not a transposition here: {0}")]
    IdentityTransposition(&'static str),

    #[error("permutation does not fix the points 1..{level}")]
    NotInStabilizer { level: usize },

    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    #[error("matching is not perfect: {0}")]
    NotPerfect(String),

    #[error("invalid path at position {position}: {reason}")]
    InvalidPath { position: usize, reason: String },

    #[error("{what}: n = {n} exceeds the limit {max}{hint}")]
    GuardExceeded {
        what: &'static str,
        n: usize,
        max: usize,
        hint: &'static str,
    },

    #[error("order of S_{n} overflows 64-bit arithmetic")]
    Overflow { n: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),
}

pub(crate) fn guard(what: &'static str, n: usize, max: usize, hint: &'static str) -> Result<()> {
    if n > max {
        Err(Error::GuardExceeded { what, n, max, hint })
    } else {
        Ok(())
    }
}
