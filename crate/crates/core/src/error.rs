use thiserror::Error;

use crate::linsys::SolveReport;

#[derive(Debug, Error)]
pub enum WsmError {
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("point {0:?} lies outside the mesh box")]
    OutsideDomain(Vec<f64>),

    #[error("unsupported polynomial order {0} (expected 1 or 2)")]
    UnsupportedOrder(usize),

    #[error("quadrature with {0} points per axis is not supported (1..=6)")]
    UnsupportedQuadrature(usize),

    #[error("normal vector is not of unit length (|n| = {0})")]
    NonUnitNormal(f64),

    #[error("dof index {index} out of range for a system of size {size}")]
    DofOutOfRange { index: usize, size: usize },

    #[error("zero diagonal entry at row {0}; cannot build a preconditioner")]
    ZeroDiagonal(usize),

    #[error("conjugate gradients did not converge in {} iterations (relative residual {:.3e})", .0.iterations, .0.final_relative_residual)]
    NotConverged(SolveReport),

    #[error("fault segments were built for a different mesh")]
    StaleSegments,

    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    #[error("invalid fault: {0}")]
    InvalidFault(String),

    #[error("point {0:?} lies on the dislocation; pass an explicit side")]
    OnDislocation(Vec<f64>),

    #[error("point {0:?} lies above the free surface")]
    AboveSurface(Vec<f64>),

    #[error("rate fit needs at least 3 points with positive errors and decreasing h: {0}")]
    InvalidRateData(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, WsmError>;
