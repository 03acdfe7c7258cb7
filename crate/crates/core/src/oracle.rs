//! Reference matrix exponential: Taylor kernel with scaling and squaring.
//!
//! Deliberately independent of the H⊗H and closed-form code so it can serve
//! as ground truth for them.

use nalgebra::{ComplexField, DMatrix, Dim, Matrix, RawStorage, SMatrix};

use crate::error::{Error, Result};

const DEGREE: u32 = 18;
const SCALED_NORM: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    /// Bound on the Taylor truncation error of the scaled kernel.
    pub target_tol: f64,
    pub max_squarings: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            target_tol: 1e-13,
            max_squarings: 40,
        }
    }
}

fn one_norm<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.clone().modulus()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `θ^{d+1}/(d+1)! · 1/(1 − θ/(d+2))`, the tail of the exponential series past degree `d`.
fn truncation_bound(theta: f64) -> f64 {
    let mut term = 1.0;
    for k in 1..=DEGREE + 1 {
        term *= theta / f64::from(k);
    }
    term / (1.0 - theta / f64::from(DEGREE + 2)).max(f64::MIN_POSITIVE)
}

/// `e^A` for a square dynamically sized matrix.
pub fn expm_series_dyn<T>(a: &DMatrix<T>, cfg: &OracleConfig) -> Result<DMatrix<T>>
where
    T: ComplexField<RealField = f64> + Copy,
{
    if !(cfg.target_tol > 0.0 && cfg.target_tol.is_finite()) {
        return Err(Error::InvalidTolerance(cfg.target_tol));
    }
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Dimension {
            expected: n,
            rows: n,
            cols: a.ncols(),
        });
    }
    let norm = one_norm(a);
    if !norm.is_finite() {
        return Err(Error::Overflow {
            norm,
            max_squarings: cfg.max_squarings,
        });
    }

    let mut s: u32 = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as u32
    } else {
        0
    };
    while truncation_bound(norm / 2f64.powi(s as i32)) > cfg.target_tol && s <= cfg.max_squarings {
        s += 1;
    }
    if s > cfg.max_squarings {
        return Err(Error::Overflow {
            norm,
            max_squarings: cfg.max_squarings,
        });
    }

    let scaled = a.map(|z| z.unscale(2f64.powi(s as i32)));
    let id = DMatrix::<T>::identity(n, n);
    let mut e = id.clone();
    for k in (1..=DEGREE).rev() {
        e = &id + (&scaled * e).map(|z| z.unscale(f64::from(k)));
    }
    for _ in 0..s {
        e = &e * &e;
    }
    if e.iter().any(|z| !z.is_finite()) {
        return Err(Error::Overflow {
            norm,
            max_squarings: cfg.max_squarings,
        });
    }
    Ok(e)
}

/// `e^A` for a fixed-size square matrix.
pub fn expm_series<T, const N: usize>(a: &SMatrix<T, N, N>, cfg: &OracleConfig) -> Result<SMatrix<T, N, N>>
where
    T: ComplexField<RealField = f64> + Copy,
{
    let d = DMatrix::from_fn(N, N, |r, c| a[(r, c)]);
    let e = expm_series_dyn(&d, cfg)?;
    Ok(SMatrix::from_fn(|r, c| e[(r, c)]))
}

/// `‖A − B‖_F / (1 + ‖B‖_F)`.
pub fn rel_error<T, R, C, S1, S2>(a: &Matrix<T, R, C, S1>, b: &Matrix<T, R, C, S2>) -> f64
where
    T: ComplexField<RealField = f64> + Copy,
    R: Dim,
    C: Dim,
    S1: RawStorage<T, R, C>,
    S2: RawStorage<T, R, C>,
{
    assert_eq!(a.shape(), b.shape(), "rel_error needs equal shapes");
    let diff: f64 = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).modulus_squared())
        .sum();
    let nb: f64 = b.iter().map(|y| y.modulus_squared()).sum();
    diff.sqrt() / (1.0 + nb.sqrt())
}
