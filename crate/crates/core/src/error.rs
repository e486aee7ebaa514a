use crate::linalg::LinalgError;
use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("grade window incomplete: {0}")]
    WindowIncomplete(String),
    #[error("pivot at grade {0} is not invertible")]
    PivotNotInvertible(String),
    #[error("integral space at grade {grade} has dimension {dim}, expected 1")]
    IntegralSpaceDimension { grade: String, dim: usize },
    #[error("inconsistent integral normalization at grade {0}")]
    InconsistentNormalization(String),
    #[error("integral vanishes identically at grade {0}")]
    NoNonvanishingWitness(String),
    #[error("comodulus relation fails at grade {0}")]
    RelationFails(String),
    #[error("degree one component is not unimodular")]
    NotUnimodular,
    #[error("map is not an intertwiner: {0}")]
    NotIntertwiner(String),
    #[error("matrix does not define an endomorphism of the projective module: {0}")]
    NotEndomorphismOfP(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("weight {0} is integral; the construction needs a non-integral weight")]
    AlphaIntegralSingular(String),
    #[error("Casimir eigenvalues collide: {0}")]
    DegenerateEigenvalues(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
