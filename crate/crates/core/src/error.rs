use thiserror::Error;

/// Errors surfaced by arrangement construction, enumeration and verification.
///
/// Hyperplane labels in messages are 1-based, matching file formats and reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("normal {0} is zero")]
    ZeroNormal(usize),
    #[error("normals {0} and {1} are parallel")]
    ParallelPair(usize, usize),
    #[error("normals span only a rank-{rank} subspace of dimension {dim}; essentialize first")]
    NotEssential { rank: usize, dim: usize },
    #[error("region cap {0} exceeded during tope enumeration")]
    RegionCapExceeded(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("degenerate form: <z,z>_Q = 0 for hyperplane {0}")]
    DegenerateForm(usize),
    #[error("virtual zonotope is not renderable: lambda[{0}] <= 0")]
    VirtualNotRenderable(usize),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid face angles: {0}")]
    InvalidAngles(String),
    #[error("arrangement is not of rank 2")]
    NotRank2,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid field spec: {0}")]
    InvalidField(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
