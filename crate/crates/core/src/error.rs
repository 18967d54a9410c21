use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a bijection on 0..{degree}: {detail}")]
    NotABijection { degree: usize, detail: String },

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("{what} exceeds cap: needed {needed}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("pairs do not extend to a subgroup isomorphism: {0}")]
    InvalidPartialAutomorphism(#[from] RejectionWitness),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: u128, right: u128 },

    #[error("tower level {0} out of range (levels 0..=2, witnesses from 0..=1)")]
    LevelOutOfRange(usize),

    #[error("no k-th root at finite level: {0}")]
    NoFiniteRoot(String),

    #[error("cache is corrupt or stale: {0}")]
    CacheCorrupt(String),

    #[error("construction pipeline stopped after stages {completed:?}: {source}")]
    Pipeline {
        completed: Vec<String>,
        #[source]
        source: Box<Error>,
    },

    #[error("internal invariant failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A concrete witness that a pair list is not a partial automorphism:
/// a word in the pair generators that evaluates to the identity on one
/// side and not on the other.
#[derive(Error, Debug, Clone)]
#[error("word {word:?} in the pairs evaluates to identity on the {trivial_side} side only")]
pub struct RejectionWitness {
    /// Indices into the pair list; the word is the product of the
    /// corresponding generators, left to right factor order.
    pub word: Vec<usize>,
    pub trivial_side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}
