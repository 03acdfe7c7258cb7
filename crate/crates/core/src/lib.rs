//! Closed-form exponentials of structured 4×4 matrices.
//!
//! A real 4×4 matrix is an element of H⊗H, the tensor square of the
//! quaternions, through `p⊗q ↦ (x ↦ p x conj(q))`. Many structured families
//! (skew-symmetric, perskewsymmetric, skew-Hamiltonian, symmetric Toeplitz,
//! the Jordan and Lie algebras of a symmetric or symplectic form, ...) have
//! H⊗H representations that split into commuting groups of anticommuting
//! terms, and each group exponentiates like a complex number.
//!
//! ```
//! use structexp::{expm_auto, ExpOptions, Method, Route, ClassTag};
//! use structexp::hxh::j4;
//!
//! let a = j4() * 0.5;
//! let r = expm_auto(&a, &Method::Auto, &ExpOptions::default()).unwrap();
//! assert_eq!(r.route, Route::Class(ClassTag::SkewSymmetric));
//! let want = nalgebra::Matrix4::identity() * 0.5f64.cos() + j4() * 0.5f64.sin();
//! assert!((r.value - want).norm() < 1e-15);
//! ```
//!
//! The [`covering`] module computes the same exponentials for so(4), p(4,R)
//! and so(2,2,R), plus the 3×3 algebras so(3), p(3,R), so(2,1,R), from 2×2
//! exponentials. [`oracle`] is an independent Taylor scaling-and-squaring
//! exponential used to check everything else.

pub mod classify;
pub mod covering;
pub mod error;
pub mod families;
pub mod hxh;
pub mod oracle;
pub mod quat;
pub mod scalar;
pub mod smalllin;
pub mod structured;

pub use classify::{classify, classify_complex, extract, ClassTag, StructureClass, DEFAULT_TOL};
pub use covering::{exp_via_covering, psi_inverse, CoveringAlgebra};
pub use error::{Error, Result};
pub use hxh::{HxH, HxHC, Mat4, Mat4C, Unit};
pub use oracle::{expm_series, rel_error, OracleConfig};
pub use quat::Quaternion;
pub use scalar::Scalar;
pub use structured::{applicable_routes, expm, expm_auto, expm_auto_complex, ExpOptions, ExpResult, Method, Route};
