//! Closed-form small linear algebra: the even phi-functions, 2×2
//! exponentials, and the 3×3 symmetric eigen/singular value factorizations.

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Mat2<T> = Matrix2<T>;
pub type Mat3 = Matrix3<f64>;

const PHI_SERIES_CUTOFF: f64 = 1e-8;

/// `cos √x`, continued to `cosh √-x` for negative real `x`.
pub fn phi_c<T: Scalar>(x: T) -> T {
    x.phi_pair().0
}

/// `sin √x / √x`, continued to `sinh √-x / √-x` for negative real `x`.
pub fn phi_s<T: Scalar>(x: T) -> T {
    x.phi_pair().1
}

pub(crate) fn phi_pair_real(x: f64) -> (f64, f64) {
    if x.abs() < PHI_SERIES_CUTOFF {
        phi_series(x)
    } else if x > 0.0 {
        let r = x.sqrt();
        (r.cos(), r.sin() / r)
    } else {
        let r = (-x).sqrt();
        (r.cosh(), r.sinh() / r)
    }
}

pub(crate) fn phi_pair_complex(z: Complex64) -> (Complex64, Complex64) {
    if z.norm() < PHI_SERIES_CUTOFF {
        phi_series(z)
    } else {
        // Both functions are even in √z, so the principal branch is as good as any.
        let r = z.sqrt();
        (r.cos(), r.sin() / r)
    }
}

fn phi_series<T: Scalar>(x: T) -> (T, T) {
    let c = T::one() - x * T::of(0.5) * (T::one() - x * T::of(1.0 / 12.0) * (T::one() - x * T::of(1.0 / 30.0)));
    let s = T::one() - x * T::of(1.0 / 6.0) * (T::one() - x * T::of(1.0 / 20.0) * (T::one() - x * T::of(1.0 / 42.0)));
    (c, s)
}

/// `e^A = e^{tr/2} (phi_c(d) I + phi_s(d) A₀)` with `A₀` the traceless part and
/// `d = det A₀`, since `A₀² = -d I`.
pub fn expm2<T: Scalar>(a: &Mat2<T>) -> Mat2<T> {
    let half_trace = (a[(0, 0)] + a[(1, 1)]) * T::of(0.5);
    let a0 = a - Mat2::<T>::identity() * half_trace;
    let det = a0[(0, 0)] * a0[(1, 1)] - a0[(0, 1)] * a0[(1, 0)];
    let (c, s) = det.phi_pair();
    (Mat2::<T>::identity() * c + a0 * s) * half_trace.exp()
}

/// Spectral factorization `S = Q diag(λ) Qᵀ` of a real symmetric 3×3 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymEig3 {
    /// Descending.
    pub values: Vector3<f64>,
    /// Columns are the matching unit eigenvectors.
    pub vectors: Mat3,
}

impl SymEig3 {
    pub fn reconstruct(&self) -> Mat3 {
        self.vectors * Mat3::from_diagonal(&self.values) * self.vectors.transpose()
    }
}

/// Closed-form eigendecomposition: trigonometric roots of the characteristic
/// cubic, a cross-product eigenvector for the best-separated root, and a
/// Jacobi rotation of the 2×2 block on its orthogonal complement.
pub fn sym_eig3(s: &Mat3) -> Result<SymEig3> {
    let asym = (s - s.transpose()).norm();
    if asym > 1e-12 * s.norm() {
        return Err(Error::NotSymmetric { residual: asym });
    }

    let max_abs = s.amax();
    if max_abs == 0.0 {
        return Ok(SymEig3 {
            values: Vector3::zeros(),
            vectors: Mat3::identity(),
        });
    }
    // Scale to unit max entry; symmetrize from the upper triangle.
    let a = Mat3::from_fn(|r, c| if r <= c { s[(r, c)] } else { s[(c, r)] }) / max_abs;
    let off = a[(0, 1)].powi(2) + a[(0, 2)].powi(2) + a[(1, 2)].powi(2);

    let (mut values, vectors) = if off > 0.0 {
        let q = a.trace() / 3.0;
        let b = a - Mat3::identity() * q;
        let p = ((b[(0, 0)].powi(2) + b[(1, 1)].powi(2) + b[(2, 2)].powi(2) + 2.0 * off) / 6.0).sqrt();
        let half_det = (b.determinant() / (2.0 * p * p * p)).clamp(-1.0, 1.0);
        let angle = half_det.acos() / 3.0;
        let beta2 = 2.0 * angle.cos();
        let beta0 = 2.0 * (angle + 2.0 * std::f64::consts::FRAC_PI_3).cos();
        let (e0, e2) = (q + p * beta0, q + p * beta2);

        // Only the best-separated root is trusted; the other pair comes from
        // an exact rotation of the complementary 2×2 block.
        let isolated = if half_det >= 0.0 { e2 } else { e0 };
        let w = isolated_eigenvector(&a, isolated);
        let ((l1, v1), (l2, v2)) = complement_pair(&a, &w);
        (
            Vector3::new(w.dot(&(a * w)), l1, l2),
            Mat3::from_columns(&[w, v1, v2]),
        )
    } else {
        (a.diagonal(), Mat3::identity())
    };

    values *= max_abs;
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    Ok(SymEig3 {
        values: Vector3::from_fn(|i, _| values[order[i]]),
        vectors: Mat3::from_columns(&[
            vectors.column(order[0]).into_owned(),
            vectors.column(order[1]).into_owned(),
            vectors.column(order[2]).into_owned(),
        ]),
    })
}

/// Eigenvector of a simple eigenvalue: the largest cross product of two rows of `A - λI`.
fn isolated_eigenvector(a: &Mat3, lambda: f64) -> Vector3<f64> {
    let m = a - Mat3::identity() * lambda;
    let rows: [Vector3<f64>; 3] = std::array::from_fn(|i| m.row(i).transpose());
    let crosses = [
        rows[0].cross(&rows[1]),
        rows[0].cross(&rows[2]),
        rows[1].cross(&rows[2]),
    ];
    let best = crosses
        .iter()
        .max_by(|x, y| x.norm_squared().total_cmp(&y.norm_squared()))
        .copied()
        .unwrap_or_else(Vector3::zeros);
    let n = best.norm();
    if n > 0.0 {
        best / n
    } else {
        Vector3::x()
    }
}

/// Orthonormal pair spanning the plane orthogonal to the unit vector `w`.
fn orthogonal_complement(w: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let u = if w.x.abs() > w.y.abs() {
        Vector3::new(-w.z, 0.0, w.x) / (w.x * w.x + w.z * w.z).sqrt()
    } else {
        Vector3::new(0.0, w.z, -w.y) / (w.y * w.y + w.z * w.z).sqrt()
    };
    (u, w.cross(&u))
}

/// Eigenpairs of `A` restricted to the plane orthogonal to the unit eigenvector `w`.
fn complement_pair(a: &Mat3, w: &Vector3<f64>) -> ((f64, Vector3<f64>), (f64, Vector3<f64>)) {
    let (u, v) = orthogonal_complement(w);
    let (au, av) = (a * u, a * v);
    let (b00, b01, b11) = (u.dot(&au), 0.5 * (u.dot(&av) + v.dot(&au)), v.dot(&av));
    if b01 == 0.0 {
        return ((b00, u), (b11, v));
    }
    let tau = (b11 - b00) / (2.0 * b01);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    ((b00 - t * b01, u * c - v * s), (b11 + t * b01, u * s + v * c))
}

/// Singular value factorization `M = U diag(σ) Vᵀ`, σ descending and nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct Svd3 {
    pub u: Mat3,
    pub sigma: Vector3<f64>,
    pub v: Mat3,
}

impl Svd3 {
    pub fn reconstruct(&self) -> Mat3 {
        self.u * Mat3::from_diagonal(&self.sigma) * self.v.transpose()
    }
}

/// Right singular vectors and σ² from `sym_eig3(MᵀM)`; left vectors from
/// `M v_i`, Gram–Schmidt'ed, with the null part completed orthonormally.
pub fn svd3(m: &Mat3) -> Svd3 {
    let gram = m.transpose() * m;
    let gram = (gram + gram.transpose()) * 0.5;
    let eig = sym_eig3(&gram).expect("MᵀM is symmetric by construction");
    let v = eig.vectors;
    let images: [Vector3<f64>; 3] = std::array::from_fn(|i| m * v.column(i));
    let top = images[0].norm();

    let mut us: Vec<Vector3<f64>> = Vec::with_capacity(3);
    for w in &images {
        let candidate = if w.norm() > 1e-12 * top && top > 0.0 {
            gram_schmidt(w, &us)
        } else {
            None
        };
        let u = candidate.unwrap_or_else(|| complete_basis(&us));
        us.push(u);
    }

    let mut triples: Vec<(f64, Vector3<f64>, Vector3<f64>)> = (0..3)
        .map(|i| {
            let s = us[i].dot(&images[i]);
            if s < 0.0 {
                (-s, -us[i], v.column(i).into_owned())
            } else {
                (s, us[i], v.column(i).into_owned())
            }
        })
        .collect();
    triples.sort_by(|x, y| y.0.total_cmp(&x.0));

    Svd3 {
        u: Mat3::from_columns(&[triples[0].1, triples[1].1, triples[2].1]),
        sigma: Vector3::new(triples[0].0, triples[1].0, triples[2].0),
        v: Mat3::from_columns(&[triples[0].2, triples[1].2, triples[2].2]),
    }
}

fn gram_schmidt(w: &Vector3<f64>, basis: &[Vector3<f64>]) -> Option<Vector3<f64>> {
    let mut x = *w;
    // Two passes keep the result orthogonal to working precision.
    for _ in 0..2 {
        for b in basis {
            x -= b * b.dot(&x);
        }
    }
    let n = x.norm();
    (n > 1e-12 * w.norm()).then(|| x / n)
}

fn complete_basis(basis: &[Vector3<f64>]) -> Vector3<f64> {
    match basis {
        [] => Vector3::x(),
        [a] => {
            let k = (0..3)
                .min_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs()))
                .unwrap_or(0);
            let e = Vector3::from_fn(|i, _| if i == k { 1.0 } else { 0.0 });
            gram_schmidt(&e, basis).unwrap_or_else(Vector3::y)
        }
        [a, b, ..] => a.cross(b).normalize(),
    }
}

/// 2×2 analogue of [`Svd3`].
#[derive(Clone, Debug, PartialEq)]
pub struct Svd2 {
    pub u: Matrix2<f64>,
    pub sigma: Vector2<f64>,
    pub v: Matrix2<f64>,
}

/// Closed-form 2×2 SVD via the rotation angle diagonalizing `MᵀM`.
pub fn svd2(m: &Matrix2<f64>) -> Svd2 {
    let g = m.transpose() * m;
    let theta = 0.5 * (2.0 * g[(0, 1)]).atan2(g[(0, 0)] - g[(1, 1)]);
    let (s, c) = theta.sin_cos();
    let (mut v0, mut v1) = (Vector2::new(c, s), Vector2::new(-s, c));
    if (m * v1).norm() > (m * v0).norm() {
        (v0, v1) = (v1, -v0);
    }
    let (w0, w1) = (m * v0, m * v1);
    let n0 = w0.norm();
    let u0 = if n0 > 0.0 { w0 / n0 } else { Vector2::x() };
    let mut u1 = Vector2::new(-u0.y, u0.x);
    let mut s1 = u1.dot(&w1);
    if s1 < 0.0 {
        u1 = -u1;
        s1 = -s1;
    }
    Svd2 {
        u: Matrix2::from_columns(&[u0, u1]),
        sigma: Vector2::new(n0, s1),
        v: Matrix2::from_columns(&[v0, v1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn phi_special_values() {
        assert_eq!(phi_c(0.0), 1.0);
        assert_eq!(phi_s(0.0), 1.0);
        assert!((phi_c(PI * PI) + 1.0).abs() < 1e-15);
        assert!((phi_c(-1.0) - 1f64.cosh()).abs() < 1e-15);
        assert!((phi_c(-1.0) - 1.543_080_634_815_243_7).abs() < 1e-15);
        let z = Complex64::new(-1.0, 0.0);
        assert!((phi_c(z) - Complex64::new(1f64.cosh(), 0.0)).norm() < 1e-15);
        assert!((phi_s(z) - Complex64::new(1f64.sinh(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn phi_is_continuous_across_the_series_cutoff() {
        for &x in &[PHI_SERIES_CUTOFF * 0.999, PHI_SERIES_CUTOFF * 1.001] {
            for sign in [1.0, -1.0] {
                let y = sign * x;
                let (c, s) = phi_pair_real(y);
                let (cs, ss) = phi_series(y);
                assert!((c - cs).abs() < 1e-16 && (s - ss).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn phi_pythagorean_identity() {
        for k in -100..=100 {
            let x = k as f64;
            let (c, s) = phi_pair_real(x);
            let scale = 1.0 + c.abs().max(x.abs() * s * s);
            assert!((c * c + x * s * s - 1.0).abs() <= 1e-12 * scale, "x = {x}");
        }
    }

    #[test]
    fn expm2_rotation_and_zero() {
        assert_eq!(expm2(&Matrix2::<f64>::zeros()), Matrix2::identity());
        let t = PI / 3.0;
        let r = expm2(&Matrix2::new(0.0, t, -t, 0.0));
        let want = Matrix2::new(0.5, 3f64.sqrt() / 2.0, -(3f64.sqrt()) / 2.0, 0.5);
        assert!((r - want).norm() < 1e-15);
    }

    #[test]
    fn sym_eig3_degenerate_and_diagonal() {
        let e = sym_eig3(&Mat3::identity()).unwrap();
        assert_eq!(e.values, Vector3::new(1.0, 1.0, 1.0));
        assert_eq!(e.vectors, Mat3::identity());
        let e = sym_eig3(&Mat3::from_diagonal(&Vector3::new(3.0, 2.0, 1.0))).unwrap();
        assert_eq!(e.values, Vector3::new(3.0, 2.0, 1.0));
        assert_eq!(e.vectors, Mat3::identity());
        let e = sym_eig3(&Mat3::from_diagonal(&Vector3::new(1.0, 3.0, 2.0))).unwrap();
        assert_eq!(e.values, Vector3::new(3.0, 2.0, 1.0));
        assert!((e.reconstruct() - Mat3::from_diagonal(&Vector3::new(1.0, 3.0, 2.0))).norm() < 1e-15);
    }

    #[test]
    fn sym_eig3_double_root() {
        // Eigenvalues 4, 1, 1 with the simple one along (1,1,1)/√3.
        let s = Mat3::from_element(1.0) + Mat3::identity();
        let e = sym_eig3(&s).unwrap();
        assert!((e.values - Vector3::new(4.0, 1.0, 1.0)).norm() < 1e-14);
        assert!((e.reconstruct() - s).norm() < 1e-14);
        assert!((e.vectors.transpose() * e.vectors - Mat3::identity()).norm() < 1e-15);
    }

    #[test]
    fn sym_eig3_rejects_asymmetric() {
        let mut s = Mat3::identity();
        s[(0, 1)] = 1.0;
        assert!(matches!(sym_eig3(&s), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn svd3_zero_and_signed_diagonal() {
        let z = svd3(&Mat3::zeros());
        assert_eq!(z.sigma, Vector3::zeros());
        assert_eq!(z.u, Mat3::identity());
        assert_eq!(z.v, Mat3::identity());

        let m = Mat3::from_diagonal(&Vector3::new(2.0, -3.0, 1.0));
        let d = svd3(&m);
        assert!((d.sigma - Vector3::new(3.0, 2.0, 1.0)).norm() < 1e-15);
        assert!((d.reconstruct() - m).norm() < 1e-15);
    }

    #[test]
    fn svd3_rank_one() {
        let s = Vector3::new(0.3, -1.2, 2.0);
        let t = Vector3::new(1.5, 0.4, -0.7);
        let m = s * t.transpose();
        let d = svd3(&m);
        assert!((d.sigma[0] - s.norm() * t.norm()).abs() < 1e-14);
        assert!(d.sigma[1].abs() < 1e-14 && d.sigma[2].abs() < 1e-14);
        assert!(d.u.column(0).cross(&s).norm() < 1e-14 * s.norm());
        assert!(d.v.column(0).cross(&t).norm() < 1e-14 * t.norm());
        assert!((d.reconstruct() - m).norm() < 1e-14);
        assert!((d.u.transpose() * d.u - Mat3::identity()).norm() < 1e-14);
    }

    #[test]
    fn svd2_reconstructs() {
        let m = Matrix2::new(0.3, -2.0, 1.1, 0.7);
        let d = svd2(&m);
        let r = d.u * Matrix2::from_diagonal(&d.sigma) * d.v.transpose();
        assert!((r - m).norm() < 1e-14);
        assert!(d.sigma[0] >= d.sigma[1] && d.sigma[1] >= 0.0);
        assert!((d.u.transpose() * d.u - Matrix2::identity()).norm() < 1e-15);
    }
}
