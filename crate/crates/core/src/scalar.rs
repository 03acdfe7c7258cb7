use nalgebra::ComplexField;
use num_complex::Complex64;

use crate::smalllin;

/// Entry type of the matrices handled by this crate: `f64` or [`Complex64`].
///
/// Every closed form in the crate is written once against this trait; the
/// only type-specific piece is the even pair `cos √x`, `sin √x / √x`, whose
/// real version switches to `cosh`/`sinh` for negative arguments instead of
/// going through a complex square root.
pub trait Scalar: ComplexField<RealField = f64> + Copy {
    /// Returns `(phi_c(x), phi_s(x))`.
    fn phi_pair(self) -> (Self, Self);

    fn of(x: f64) -> Self {
        Self::from_real(x)
    }

    fn to_c64(self) -> Complex64;

    /// `None` when `z` has a nonzero imaginary part and `Self` is real.
    fn from_c64(z: Complex64) -> Option<Self>;
}

impl Scalar for f64 {
    fn phi_pair(self) -> (f64, f64) {
        smalllin::phi_pair_real(self)
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }

    fn from_c64(z: Complex64) -> Option<f64> {
        (z.im == 0.0).then_some(z.re)
    }
}

impl Scalar for Complex64 {
    fn phi_pair(self) -> (Complex64, Complex64) {
        smalllin::phi_pair_complex(self)
    }

    fn to_c64(self) -> Complex64 {
        self
    }

    fn from_c64(z: Complex64) -> Option<Complex64> {
        Some(z)
    }
}
