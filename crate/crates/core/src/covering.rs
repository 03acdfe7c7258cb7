//! Exponentials through covering homomorphisms onto small Lie algebras.
//!
//! Each algebra is realized on a real space `V` of 2×2 matrices. A group
//! element `(G, H)` acts by `X ↦ G X H⁻¹` (or by conjugation `X ↦ G X G⁻¹`),
//! and its matrix in the chosen basis of `V` preserves a bilinear form. The
//! linearization `ψ(g, h): X ↦ gX − Xh` is a Lie algebra isomorphism, so
//! `e^A = φ(e^g, e^h)` with `(g, h) = ψ⁻¹(A)` and two 2×2 exponentials.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::smalllin::expm2;

pub type Mat2C = Matrix2<Complex64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoveringAlgebra {
    /// `su(2) → so(3,R)` by conjugation on traceless Hermitian matrices.
    SO3,
    /// `su(2)×su(2) → so(4,R)` on the real span of `I₂, iσ_k`.
    SO4,
    /// `sl(2,R)×sl(2,R) → p(4,R)` on gl(2,R).
    P4R,
    /// `sl(2,R)×sl(2,R) → so(2,2,R)` on gl(2,R).
    SO22R,
    /// `sl(2,R) → p(3,R)` by conjugation on sl(2,R).
    P3R,
    /// `sl(2,R) → so(2,1,R)` by conjugation on sl(2,R).
    SO21R,
}

/// Quadratic form on `V` preserved by the group action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `L₁(X, Y) = tr(XY)`
    Trace,
    /// `L₂(X, Y) = det(X+Y) − det X − det Y = tr X tr Y − tr(XY)`
    Determinant,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn m2(a: [[(f64, f64); 2]; 2]) -> Mat2C {
    Mat2C::new(c(a[0][0].0, a[0][0].1), c(a[0][1].0, a[0][1].1), c(a[1][0].0, a[1][0].1), c(a[1][1].0, a[1][1].1))
}

const O: (f64, f64) = (0.0, 0.0);
const R1: (f64, f64) = (1.0, 0.0);
const RM: (f64, f64) = (-1.0, 0.0);
const I1: (f64, f64) = (0.0, 1.0);
const IM: (f64, f64) = (0.0, -1.0);

fn id2() -> Mat2C {
    m2([[R1, O], [O, R1]])
}
fn sigma_x() -> Mat2C {
    m2([[O, R1], [R1, O]])
}
fn sigma_y() -> Mat2C {
    m2([[O, IM], [I1, O]])
}
fn sigma_z() -> Mat2C {
    m2([[R1, O], [O, RM]])
}
fn e11() -> Mat2C {
    m2([[R1, O], [O, O]])
}
fn e12() -> Mat2C {
    m2([[O, R1], [O, O]])
}
fn e21() -> Mat2C {
    m2([[O, O], [R1, O]])
}
fn e22() -> Mat2C {
    m2([[O, O], [O, R1]])
}

fn su2() -> Vec<Mat2C> {
    let i = c(0.0, 1.0);
    vec![sigma_x() * i, sigma_y() * i, sigma_z() * i]
}

fn sl2r() -> Vec<Mat2C> {
    vec![sigma_z(), e12(), e21()]
}

impl CoveringAlgebra {
    pub const ALL: [CoveringAlgebra; 6] = [
        CoveringAlgebra::SO3,
        CoveringAlgebra::SO4,
        CoveringAlgebra::P4R,
        CoveringAlgebra::SO22R,
        CoveringAlgebra::P3R,
        CoveringAlgebra::SO21R,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoveringAlgebra::SO3 => "so3",
            CoveringAlgebra::SO4 => "so4",
            CoveringAlgebra::P4R => "p4r",
            CoveringAlgebra::SO22R => "so22r",
            CoveringAlgebra::P3R => "p3r",
            CoveringAlgebra::SO21R => "so21r",
        }
    }

    /// Dimension of `V`, i.e. the matrix size of the algebra.
    pub fn dim(self) -> usize {
        self.basis().len()
    }

    /// Whether the cover has two independent 2×2 factors.
    pub fn two_factor(self) -> bool {
        matches!(self, CoveringAlgebra::SO4 | CoveringAlgebra::P4R | CoveringAlgebra::SO22R)
    }

    /// Ordered basis of `V`.
    pub fn basis(self) -> Vec<Mat2C> {
        let i = c(0.0, 1.0);
        match self {
            CoveringAlgebra::SO3 => vec![sigma_x(), sigma_y(), sigma_z()],
            CoveringAlgebra::SO4 => vec![id2(), sigma_x() * i, sigma_y() * i, sigma_z() * i],
            CoveringAlgebra::P4R => vec![e11(), e12(), -e21(), e22()],
            CoveringAlgebra::SO22R => vec![id2(), e12() - e21(), sigma_x(), sigma_z()],
            CoveringAlgebra::P3R => vec![e12(), sigma_z() * c(std::f64::consts::FRAC_1_SQRT_2, 0.0), e21()],
            CoveringAlgebra::SO21R => vec![sigma_x(), sigma_z(), e12() - e21()],
        }
    }

    /// Basis of one factor of the covering algebra.
    pub fn domain_basis(self) -> Vec<Mat2C> {
        match self {
            CoveringAlgebra::SO3 | CoveringAlgebra::SO4 => su2(),
            _ => sl2r(),
        }
    }

    pub fn form(self) -> Form {
        match self {
            CoveringAlgebra::SO3 | CoveringAlgebra::P3R | CoveringAlgebra::SO21R => Form::Trace,
            _ => Form::Determinant,
        }
    }

    /// The form's matrix the Gram matrix is proportional to.
    pub fn gram_target(self) -> DMatrix<f64> {
        let diag = |d: &[f64]| DMatrix::from_diagonal(&DVector::from_row_slice(d));
        let anti = |n: usize| DMatrix::from_fn(n, n, |r, c| if r + c == n - 1 { 1.0 } else { 0.0 });
        match self {
            CoveringAlgebra::SO3 => DMatrix::identity(3, 3),
            CoveringAlgebra::SO4 => DMatrix::identity(4, 4),
            CoveringAlgebra::P4R => anti(4),
            CoveringAlgebra::SO22R => diag(&[1.0, 1.0, -1.0, -1.0]),
            CoveringAlgebra::P3R => anti(3),
            CoveringAlgebra::SO21R => diag(&[1.0, 1.0, -1.0]),
        }
    }
}

impl fmt::Display for CoveringAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownAlgebra(pub String);

impl fmt::Display for UnknownAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown covering algebra `{}`", self.0)
    }
}

impl std::error::Error for UnknownAlgebra {}

impl FromStr for CoveringAlgebra {
    type Err = UnknownAlgebra;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        CoveringAlgebra::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            .ok_or_else(|| UnknownAlgebra(s.to_string()))
    }
}

fn form_value(form: Form, x: &Mat2C, y: &Mat2C) -> f64 {
    let xy = (x * y).trace();
    match form {
        Form::Trace => xy.re,
        Form::Determinant => (x.trace() * y.trace() - xy).re,
    }
}

/// Matrix of the algebra's form in its basis of `V`.
pub fn gram(alg: CoveringAlgebra) -> DMatrix<f64> {
    let basis = alg.basis();
    let n = basis.len();
    DMatrix::from_fn(n, n, |r, c| form_value(alg.form(), &basis[r], &basis[c]))
}

/// `λ` with `gram(alg) = λ · gram_target(alg)`.
pub fn gram_constant(alg: CoveringAlgebra) -> f64 {
    let g = gram(alg);
    let t = alg.gram_target();
    g.dot(&t) / t.norm_squared()
}

fn realify(x: &Mat2C) -> DVector<f64> {
    DVector::from_iterator(8, x.iter().flat_map(|z| [z.re, z.im]))
}

fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    a.clone()
        .svd(true, true)
        .solve(b, 1e-14)
        .expect("both singular factors were requested")
}

/// Coordinates of `x` in the basis of `V`, by least squares on the real entries.
fn coordinates(alg: CoveringAlgebra, x: &Mat2C) -> DVector<f64> {
    let basis = alg.basis();
    let cols: Vec<_> = basis.iter().map(realify).collect();
    lstsq(&DMatrix::from_columns(&cols), &realify(x))
}

fn matrix_of(alg: CoveringAlgebra, f: impl Fn(&Mat2C) -> Mat2C) -> DMatrix<f64> {
    let cols: Vec<_> = alg.basis().iter().map(|b| coordinates(alg, &f(b))).collect();
    DMatrix::from_columns(&cols)
}

/// `ψ(g, h)`: the matrix of `X ↦ gX − Xh`. For the single-factor algebras `h` is ignored and `g` is used on both sides.
pub fn psi(alg: CoveringAlgebra, g: &Mat2C, h: &Mat2C) -> DMatrix<f64> {
    let h = if alg.two_factor() { *h } else { *g };
    matrix_of(alg, |x| g * x - x * h)
}

fn inverse2(m: &Mat2C) -> Mat2C {
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    Mat2C::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / det
}

/// `φ(G, H)`: the matrix of `X ↦ G X H⁻¹` (`H = G` for single-factor algebras).
pub fn phi(alg: CoveringAlgebra, g: &Mat2C, h: &Mat2C) -> DMatrix<f64> {
    let h_inv = inverse2(if alg.two_factor() { h } else { g });
    matrix_of(alg, |x| g * x * h_inv)
}

/// Relative residual of `AᵀM + MA = 0` for the algebra's Gram matrix `M`.
pub fn membership_residual(alg: CoveringAlgebra, a: &DMatrix<f64>) -> Result<f64> {
    let n = alg.dim();
    if a.shape() != (n, n) {
        return Err(Error::Dimension {
            expected: n,
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let m = gram(alg);
    let r = (a.transpose() * &m + &m * a).norm();
    let scale = a.norm() * m.norm();
    Ok(if scale > 0.0 { r / scale } else { r })
}

/// Traceless `(g, h)` with `ψ(g, h) = A`; `h = g` for single-factor algebras.
pub fn psi_inverse(alg: CoveringAlgebra, a: &DMatrix<f64>, tol: f64) -> Result<(Mat2C, Mat2C)> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let residual = membership_residual(alg, a)?;
    if residual > tol {
        return Err(Error::NotInAlgebra { algebra: alg, residual });
    }

    let domain = alg.domain_basis();
    let zero = Mat2C::zeros();
    let mut generators: Vec<(Mat2C, Mat2C)> = domain.iter().map(|e| (*e, zero)).collect();
    if alg.two_factor() {
        generators.extend(domain.iter().map(|e| (zero, *e)));
    }
    let vec = |m: &DMatrix<f64>| DVector::from_column_slice(m.as_slice());
    let cols: Vec<_> = generators.iter().map(|(g, h)| vec(&psi(alg, g, h))).collect();
    let x = lstsq(&DMatrix::from_columns(&cols), &vec(a));

    let k = domain.len();
    let combine = |offset: usize| {
        domain
            .iter()
            .enumerate()
            .fold(Mat2C::zeros(), |acc, (n, e)| acc + e * c(x[offset + n], 0.0))
    };
    let g = combine(0);
    let h = if alg.two_factor() { combine(k) } else { g };

    let back = (psi(alg, &g, &h) - a).norm();
    if back > tol * (1.0 + a.norm()) {
        return Err(Error::NotInAlgebra { algebra: alg, residual: back });
    }
    Ok((g, h))
}

/// `e^A` for `A` in the algebra, through two (or one) 2×2 exponentials.
pub fn exp_via_covering(alg: CoveringAlgebra, a: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    let (g, h) = psi_inverse(alg, a, tol)?;
    Ok(phi(alg, &expm2(&g), &expm2(&h)))
}
