//! Real quaternions over the basis `{1, i, j, k}`.
//!
//! Values are never normalized implicitly; the closed forms downstream read
//! the scalar part directly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Pure quaternion `x i + y j + z k`, identified with a vector of R³.
    pub const fn pure(x: f64, y: f64, z: f64) -> Self {
        Quaternion { w: 0.0, x, y, z }
    }

    pub const fn from_array(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub const fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub const fn pure_part(self) -> Quaternion {
        Quaternion::pure(self.x, self.y, self.z)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_squared(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Euclidean inner product on R⁴.
    pub fn dot(self, other: Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Cross product of the pure parts.
    pub fn cross(self, other: Quaternion) -> Quaternion {
        Quaternion::pure(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// `e^{a + p} = e^a (cos‖p‖ + sin‖p‖/‖p‖ · p)` for scalar `a` and pure `p`.
    pub fn exp(self) -> Self {
        let theta = self.pure_part().norm();
        let ea = self.w.exp();
        let s = ea * sinc(theta);
        Quaternion::new(ea * theta.cos(), s * self.x, s * self.y, s * self.z)
    }
}

/// Hamilton product.
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

pub fn quat_exp(q: Quaternion) -> Quaternion {
    q.exp()
}

const SERIES_CUTOFF: f64 = 1e-4;

/// `sin(t)/t`, with the removable singularity filled in.
pub fn sinc(t: f64) -> f64 {
    if t.abs() < SERIES_CUTOFF {
        let t2 = t * t;
        1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0 * (1.0 - t2 / 110.0))))
    } else {
        t.sin() / t
    }
}

/// `(1 - cos t)/t²`, with the removable singularity filled in.
pub fn versc(t: f64) -> f64 {
    if t.abs() < SERIES_CUTOFF {
        let t2 = t * t;
        0.5 * (1.0 - t2 / 12.0 * (1.0 - t2 / 30.0 * (1.0 - t2 / 56.0 * (1.0 - t2 / 90.0 * (1.0 - t2 / 132.0)))))
    } else {
        let h = (0.5 * t).sin() / t;
        2.0 * h * h
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        quat_mul(self, rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: f64) -> Quaternion {
        self.scale(rhs)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}
