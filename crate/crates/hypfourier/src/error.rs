use thiserror::Error;

/// Errors shared by every evaluation layer of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("nome outside the admissible disk: |q| = {0}")]
    NomeOutOfDisk(f64),
    #[error("argument must lie in the upper half-plane (im = {0})")]
    NotUpperHalfPlane(f64),
    #[error("argument on the cut [1, +inf) or outside (0,1) on the real line: {0}")]
    ArgumentOnCut(f64),
    #[error("argument outside the supported domain: {0}")]
    OutsideDomain(String),
    #[error("boundary-ambiguous point: {0}")]
    BoundaryAmbiguous(String),
    #[error("requested tolerance unreachable: {0}")]
    ToleranceUnreachable(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("series table of order {order} insufficient, need at least {needed}")]
    OrderInsufficient { order: usize, needed: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
