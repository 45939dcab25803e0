use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("tetrahedron is degenerate (t = {t:e}, threshold {threshold:e})")]
    DegenerateTetrahedron { t: f64, threshold: f64 },
    #[error("ex-sphere opposite vertex {vertex} is undefined (weight sum vanishes)")]
    ExSphereUndefined { vertex: char },
    #[error("parameter {name} is negative ({value:e})")]
    NegativeParameter { name: &'static str, value: f64 },
    #[error("parameters are degenerate: {0}")]
    DegenerateParameters(String),
    #[error("parameters are invalid: {0}")]
    InvalidParameters(String),
    #[error("simplex is degenerate")]
    DegenerateSimplex,
    #[error("areas are not those of a Euclidean tetrahedron: {0}")]
    InvalidAreas(String),
    #[error("squared distances are not realizable in dimension {dim}: {reason}")]
    NotRealizable { dim: usize, reason: String },
    #[error("Yetter's identity violated (Xi = {xi:e}, tolerance {tol:e})")]
    YetterViolated { xi: f64, tol: f64 },
    #[error("areal Gramian vanishes; no witness exists")]
    DegenerateGramian,
    #[error("input must be a non-degenerate tetrahedron")]
    DegenerateInput,
    #[error("expected rank {expected}, found {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("configuration is not degenerate")]
    NotDegenerate,
    #[error("configuration is not planar (rank 1)")]
    NotRank1,
    #[error("areas are inconsistent with the requested class: {0}")]
    InconsistentAreas(String),
    #[error("base triangle BCD is degenerate")]
    DegenerateBase,
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("no real solution: {0}")]
    NoSolution(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
