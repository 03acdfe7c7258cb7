use thiserror::Error;

use crate::classify::ClassTag;
use crate::covering::CoveringAlgebra;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not in class {class}: support residual {residual:.3e}")]
    ForcedClassMismatch { class: ClassTag, residual: f64 },

    #[error("matrix is not in {algebra}: defining-relation residual {residual:.3e}")]
    NotInAlgebra {
        algebra: CoveringAlgebra,
        residual: f64,
    },

    #[error("matrix is not symmetric: residual {residual:.3e}")]
    NotSymmetric { residual: f64 },

    /// A group that should square to a multiple of `1⊗1` did not.
    #[error("group does not square to a scalar: off-scalar residual {residual:.3e}")]
    NonScalarSquare { residual: f64 },

    #[error("exponential overflows: 1-norm {norm:.3e} needs more than {max_squarings} squarings")]
    Overflow { norm: f64, max_squarings: u32 },

    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Dimension {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
