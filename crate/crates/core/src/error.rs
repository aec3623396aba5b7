use thiserror::Error;

/// Which bound is missing when a pair of elements fails the lattice test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MissingBound {
    Meet,
    Join,
}

impl std::fmt::Display for MissingBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MissingBound::Meet => f.write_str("meet"),
            MissingBound::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover relation contains a cycle through `{0}`")]
    CycleDetected(String),
    #[error("not a lattice: ({0}, {1}) has no {2}")]
    NotALattice(String, String, MissingBound),
    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),
    #[error("elements {0:?} do not form an antichain")]
    NotAnAntichain(Vec<String>),
    #[error("element `{0}` was not doubled")]
    NotDoubled(String),
    #[error("new element name `{0}` collides with an existing element")]
    NameCollision(String),
    #[error("[{0}, {1}] is not an isolated interval")]
    NotIsolated(String, String),
    #[error("lattice with {0} elements is too small")]
    TooSmall(usize),
    #[error("size {requested} exceeds the limit of {limit}")]
    SizeLimit { requested: usize, limit: usize },
    #[error("invalid lattice file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LatticeError>;
