use thiserror::Error;

/// Errors raised by the numerical kernels and the operator-theory checks
/// built on top of them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LeafError {
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not skew-Hermitian (residual {residual:e})")]
    NotSkewHermitian { residual: f64 },
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("eigenvalue gap {gap:e} is too close to the cluster tolerance {cluster_tol:e}")]
    ClusterAmbiguity { gap: f64, cluster_tol: f64 },
    #[error("smallest singular value {min_sv:e} is below the invertibility tolerance {tol:e}")]
    NearSingular { min_sv: f64, tol: f64 },
    #[error("spectrum [{min}, {max}] is outside [0, 1]")]
    SpectrumOutOfRange { min: f64, max: f64 },
    #[error("unsupported norming function: {0}")]
    UnsupportedKind(String),
    #[error("rank {rank} exceeds the bound k = {k}")]
    RankTooHigh { rank: usize, k: usize },
    #[error("compression onto spectral block {block} is singular (smallest singular value {min_sv:e})")]
    CornerSingular { block: usize, min_sv: f64 },
    #[error("operator does not commute with the reference (residual {residual:e})")]
    NotCommuting { residual: f64 },
    #[error("reference operator has a single spectral cluster")]
    SingleCluster,
    #[error("vector is not a unit vector (norm {norm})")]
    NotUnitVector { norm: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, LeafError>;
