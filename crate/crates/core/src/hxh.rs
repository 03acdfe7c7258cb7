//! The algebra H⊗H and its isomorphism with 4×4 matrices.
//!
//! The product tensor `p⊗q` acts on `x ∈ H ≅ R⁴` by `x ↦ p·x·conj(q)`.
//! Extending linearly identifies H⊗H with gl(4) as algebras, with
//! `(p⊗q)(r⊗s) = (pr)⊗(qs)`. The sixteen basis matrices `M_{e_a⊗e_b}` are
//! signed permutation matrices, pairwise Frobenius-orthogonal with squared
//! norm 4, so coefficients are read off by projection.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::quat::Quaternion;
use crate::scalar::Scalar;

pub type Mat4 = Matrix4<f64>;
pub type Mat4C = Matrix4<Complex64>;

/// Basis element of H.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    One,
    I,
    J,
    K,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::J, Unit::K];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(i: usize) -> Unit {
        match i {
            0 => Unit::One,
            1 => Unit::I,
            2 => Unit::J,
            3 => Unit::K,
            _ => panic!("quaternion basis index out of range"),
        }
    }

    pub const fn label(self) -> &'static str {
        match self {
            Unit::One => "1",
            Unit::I => "i",
            Unit::J => "j",
            Unit::K => "k",
        }
    }

    pub fn quaternion(self) -> Quaternion {
        let mut c = [0.0; 4];
        c[self.index()] = 1.0;
        Quaternion::from_array(c)
    }

    /// `e_self · e_rhs = sign · e_unit`.
    pub const fn mul(self, rhs: Unit) -> (f64, Unit) {
        use Unit::*;
        match (self, rhs) {
            (One, u) | (u, One) => (1.0, u),
            (I, I) | (J, J) | (K, K) => (-1.0, One),
            (I, J) => (1.0, K),
            (J, I) => (-1.0, K),
            (J, K) => (1.0, I),
            (K, J) => (-1.0, I),
            (K, I) => (1.0, J),
            (I, K) => (-1.0, J),
        }
    }

    const fn conj_sign(self) -> f64 {
        match self {
            Unit::One => 1.0,
            _ => -1.0,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Column `c` of `M_{e_a⊗e_b}` holds `sign[c]` in row `row[c]`.
#[derive(Clone, Copy)]
struct SignedPerm {
    row: [usize; 4],
    sign: [f64; 4],
}

const fn signed_perm(a: Unit, b: Unit) -> SignedPerm {
    let mut row = [0; 4];
    let mut sign = [0.0; 4];
    let mut c = 0;
    while c < 4 {
        let (s1, u1) = a.mul(Unit::from_index(c));
        let (s2, u2) = u1.mul(b);
        row[c] = u2.index();
        sign[c] = s1 * s2 * b.conj_sign();
        c += 1;
    }
    SignedPerm { row, sign }
}

const BASIS: [[SignedPerm; 4]; 4] = {
    let mut table = [[SignedPerm { row: [0; 4], sign: [0.0; 4] }; 4]; 4];
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            table[a][b] = signed_perm(Unit::from_index(a), Unit::from_index(b));
            b += 1;
        }
        a += 1;
    }
    table
};

/// `M_{e_a⊗e_b}`, the matrix of `x ↦ e_a x conj(e_b)`.
pub fn basis_matrix(a: Unit, b: Unit) -> Mat4 {
    let p = &BASIS[a.index()][b.index()];
    let mut m = Mat4::zeros();
    for c in 0..4 {
        m[(p.row[c], c)] = p.sign[c];
    }
    m
}

/// Anti-diagonal unit `R₄ = M_{j⊗i}`.
pub fn r4() -> Mat4 {
    basis_matrix(Unit::J, Unit::I)
}

/// Symplectic unit `J₄ = M_{1⊗j}`.
pub fn j4() -> Mat4 {
    basis_matrix(Unit::One, Unit::J)
}

/// `I_{2,2} = diag(1, 1, -1, -1) = M_{i⊗i}`.
pub fn i22() -> Mat4 {
    basis_matrix(Unit::I, Unit::I)
}

/// Element `Σ c[a][b] e_a⊗e_b` of H⊗H with real or complex coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HxH<T> {
    pub c: [[T; 4]; 4],
}

pub type HxHC = HxH<Complex64>;

impl<T: Scalar> HxH<T> {
    pub fn zero() -> Self {
        HxH { c: [[T::zero(); 4]; 4] }
    }

    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    pub fn scalar(s: T) -> Self {
        let mut u = Self::zero();
        u.c[0][0] = s;
        u
    }

    /// `s · (e_a⊗e_b)`.
    pub fn term(s: T, a: Unit, b: Unit) -> Self {
        let mut u = Self::zero();
        u.c[a.index()][b.index()] = s;
        u
    }

    pub fn coeff(&self, a: Unit, b: Unit) -> T {
        self.c[a.index()][b.index()]
    }

    pub fn set(&mut self, a: Unit, b: Unit, v: T) {
        self.c[a.index()][b.index()] = v;
    }

    /// Coefficients by Frobenius projection onto the basis matrices.
    pub fn from_matrix(m: &Matrix4<T>) -> Self {
        let quarter = T::of(0.25);
        let mut u = Self::zero();
        for (a, row) in BASIS.iter().enumerate() {
            for (b, p) in row.iter().enumerate() {
                let mut acc = T::zero();
                for c in 0..4 {
                    acc += m[(p.row[c], c)] * T::of(p.sign[c]);
                }
                u.c[a][b] = acc * quarter;
            }
        }
        u
    }

    pub fn to_matrix(&self) -> Matrix4<T> {
        let mut m = Matrix4::<T>::zeros();
        for (a, row) in BASIS.iter().enumerate() {
            for (b, p) in row.iter().enumerate() {
                let s = self.c[a][b];
                if s == T::zero() {
                    continue;
                }
                for c in 0..4 {
                    m[(p.row[c], c)] += s * T::of(p.sign[c]);
                }
            }
        }
        m
    }

    pub fn scale(mut self, s: T) -> Self {
        for row in self.c.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        self
    }

    /// Euclidean norm of the coefficient table (half the Frobenius norm of the matrix).
    pub fn norm(&self) -> f64 {
        self.c
            .iter()
            .flatten()
            .map(|v| v.modulus_squared())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scalar_part(&self) -> T {
        self.c[0][0]
    }

    pub fn without_scalar(mut self) -> Self {
        self.c[0][0] = T::zero();
        self
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Splits `u²` into its `1⊗1` coefficient and the norm of everything else.
    pub fn square_split(&self) -> (T, f64) {
        let sq = *self * *self;
        (sq.scalar_part(), sq.without_scalar().norm())
    }

    /// `μ` with `u² = μ (1⊗1)`, or `None` when the square is not scalar.
    pub fn scalar_square(&self) -> Option<T> {
        let (mu, off) = self.square_split();
        let n = self.norm();
        (off <= SCALAR_SQUARE_TOL * (1.0 + n * n)).then_some(mu)
    }
}

/// Off-scalar tolerance for [`HxH::scalar_square`], relative to `1 + ‖u‖²`.
pub const SCALAR_SQUARE_TOL: f64 = 1e-10;

impl HxH<f64> {
    /// `p⊗q` for arbitrary quaternions.
    pub fn tensor(p: Quaternion, q: Quaternion) -> Self {
        let (p, q) = (p.to_array(), q.to_array());
        let mut u = Self::zero();
        for a in 0..4 {
            for b in 0..4 {
                u.c[a][b] = p[a] * q[b];
            }
        }
        u
    }

    pub fn to_complex(&self) -> HxHC {
        let mut u = HxHC::zero();
        for a in 0..4 {
            for b in 0..4 {
                u.c[a][b] = Complex64::new(self.c[a][b], 0.0);
            }
        }
        u
    }

    /// Quaternion `Σ_a c[a][b] e_a` read down column `b`.
    pub fn left_column(&self, b: Unit) -> Quaternion {
        let b = b.index();
        Quaternion::new(self.c[0][b], self.c[1][b], self.c[2][b], self.c[3][b])
    }

    /// Quaternion `Σ_b c[a][b] e_b` read along row `a`.
    pub fn right_row(&self, a: Unit) -> Quaternion {
        Quaternion::from_array(self.c[a.index()])
    }
}

impl<T: Scalar> Mul for HxH<T> {
    type Output = HxH<T>;

    fn mul(self, rhs: HxH<T>) -> HxH<T> {
        let mut out = HxH::zero();
        for a in 0..4 {
            for b in 0..4 {
                let x = self.c[a][b];
                if x == T::zero() {
                    continue;
                }
                for c in 0..4 {
                    let (s1, u1) = Unit::from_index(a).mul(Unit::from_index(c));
                    for d in 0..4 {
                        let y = rhs.c[c][d];
                        if y == T::zero() {
                            continue;
                        }
                        let (s2, u2) = Unit::from_index(b).mul(Unit::from_index(d));
                        out.c[u1.index()][u2.index()] += x * y * T::of(s1 * s2);
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for HxH<T> {
    type Output = HxH<T>;
    fn add(mut self, rhs: HxH<T>) -> HxH<T> {
        for a in 0..4 {
            for b in 0..4 {
                self.c[a][b] += rhs.c[a][b];
            }
        }
        self
    }
}

impl<T: Scalar> Sub for HxH<T> {
    type Output = HxH<T>;
    fn sub(self, rhs: HxH<T>) -> HxH<T> {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for HxH<T> {
    type Output = HxH<T>;
    fn neg(self) -> HxH<T> {
        self.scale(-T::one())
    }
}
