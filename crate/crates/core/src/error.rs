#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot parse weight system {line:?}: {reason}")]
    Parse { line: String, reason: String },
    #[error("points do not span the full degree hyperplane")]
    DimDeficient,
    #[error("(1,...,1) is not an interior point of the Newton polyhedron")]
    NotIp,
    #[error("the Newton polyhedron is not reflexive")]
    NotReflexive,
    #[error("missing flag {0:?} on a record")]
    MissingFlag(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
