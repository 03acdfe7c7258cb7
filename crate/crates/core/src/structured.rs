//! Closed-form exponentials of the structured families and the dispatcher.
//!
//! Every family is written as a scalar plus groups of H⊗H terms such that
//! distinct groups commute and each group `u` squares to `μ(1⊗1)`. Then
//! `e^u = phi_c(−μ)(1⊗1) + phi_s(−μ) u`, which is `cos`/`sin` or
//! `cosh`/`sinh` depending on the sign of `μ`, and `e^A` is the product.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

use crate::classify::{
    classify_complex, extract_complex, real_part_if_real, BisymmetricRs, ClassTag, SpecialNormal,
    StructureClass, SymmetricRep, DEFAULT_TOL,
};
use crate::covering::{exp_via_covering, membership_residual, CoveringAlgebra};
use crate::error::{Error, Result};
use crate::families::{JordanParams, LieParams, JORDAN, LIE, PERSKEW, SKEW_HAMILTONIAN};
use crate::hxh::{HxH, HxHC, Mat4, Mat4C, Unit};
use crate::oracle::{expm_series_dyn, rel_error, OracleConfig};
use crate::quat::{quat_exp, Quaternion};
use crate::scalar::Scalar;
use crate::smalllin::{expm2, svd2, svd3};

use Unit::{One, I, J, K};

/// `e^u` for an element squaring to a scalar.
pub fn exp_element<T: Scalar>(u: &HxH<T>) -> Result<HxH<T>> {
    let (mu, off) = u.square_split();
    let n = u.norm();
    if off > crate::hxh::SCALAR_SQUARE_TOL * (1.0 + n * n) {
        return Err(Error::NonScalarSquare { residual: off });
    }
    let (c, s) = (-mu).phi_pair();
    Ok(HxH::scalar(c) + u.scale(s))
}

/// `e^scalar · Π e^{g}` over mutually commuting groups.
pub fn exp_groups<T: Scalar>(scalar: T, groups: &[HxH<T>]) -> Result<Matrix4<T>> {
    let mut acc = HxH::scalar(scalar.exp());
    for g in groups {
        acc = acc * exp_element(g)?;
    }
    Ok(acc.to_matrix())
}

/// `e^{p⊗1 + 1⊗q} = M_{e^p ⊗ e^q}`.
pub fn exp_skew_symmetric(p: Quaternion, q: Quaternion) -> Mat4 {
    HxH::tensor(quat_exp(p.pure_part()), quat_exp(q.pure_part())).to_matrix()
}

/// `p ∈ span{i,k}` and `q ∈ span{j,k}` given by their two coefficients.
pub fn exp_perskewsymmetric(p: [f64; 2], alpha: f64, q: [f64; 2], beta: f64) -> Result<Mat4> {
    let groups = PERSKEW.groups(&LieParams { p, a: alpha, q, b: beta });
    exp_groups(0.0, &groups)
}

pub fn exp_skew_hamiltonian(b: f64, p: Quaternion, c: f64, d: f64) -> Result<Mat4> {
    let params = JordanParams { a: b, b: c, c: d, v: p.vector() };
    exp_groups(b, &[SKEW_HAMILTONIAN.group(&params)])
}

/// # Panics
/// If `class` is not in `1..=5`.
pub fn exp_jordan(class: u8, params: &JordanParams) -> Result<Mat4> {
    let layout = &JORDAN[usize::from(class) - 1];
    exp_groups(params.a, &[layout.group(params)])
}

/// # Panics
/// If `class` is not in `1..=8`.
pub fn exp_lie(class: u8, params: &LieParams) -> Result<Mat4> {
    exp_groups(0.0, &LIE[usize::from(class) - 1].groups(params))
}

pub fn exp_ham_sym_persym(beta: f64, gamma: f64, delta: f64) -> Result<Mat4> {
    let x = HxH::term(beta, J, I);
    let yz = HxH::term(gamma, I, K) + HxH::term(delta, K, K);
    exp_groups(0.0, &[x, yz])
}

pub fn exp_sym_toeplitz_tridiag(a: f64, b: f64) -> Result<Mat4> {
    exp_sym_toeplitz_s13(a, b, 0.0)
}

/// `c` is the corner entry; `c = 0` is the tridiagonal case.
pub fn exp_sym_toeplitz_s13(a: f64, b: f64, c: f64) -> Result<Mat4> {
    let x = HxH::term((b + c) / 2.0, J, I);
    let zw = HxH::term((b - c) / 2.0, I, J) + HxH::term(b, K, J);
    exp_groups(a, &[x, zw])
}

pub fn exp_special_normal(sn: &SpecialNormal) -> Result<Mat4> {
    let sym = exp_element(&HxH::tensor(sn.sym_left, sn.t_hat))?;
    let left = HxH::tensor(quat_exp(sn.s), Quaternion::ONE);
    let right = HxH::tensor(Quaternion::ONE, quat_exp(sn.t));
    Ok((sym * left * right).scale(sn.a.exp()).to_matrix())
}

/// `e^{RS} = e^{μR}(cosh S̃ + R sinh S̃)` with `S = μ + S̃`, `S̃ = X + Y`,
/// `X = ε(j⊗i)` and `Y = (αi+βk)⊗(γj+δk)`; `X` and `Y` commute and square to
/// `ε²` and `λ²`.
pub fn exp_bisymmetric_rs(bs: &BisymmetricRs) -> Result<Mat4> {
    let r = HxH::term(1.0, J, I);
    let x = r.scale(bs.eps);
    let y = HxH::tensor(
        Quaternion::pure(bs.alpha, 0.0, bs.beta),
        Quaternion::pure(0.0, bs.gamma, bs.delta),
    );
    let lambda_sq = y
        .scalar_square()
        .ok_or(Error::NonScalarSquare { residual: y.square_split().1 })?;
    let (ch_e, sh_e) = (-bs.eps * bs.eps).phi_pair();
    let (ch_l, sh_l) = (-lambda_sq).phi_pair();

    let cosh_s = HxH::scalar(ch_e * ch_l) + (x * y).scale(sh_e * sh_l);
    let sinh_s = x.scale(sh_e * ch_l) + y.scale(ch_e * sh_l);
    let mu_factor = HxH::scalar(bs.a.cosh()) + r.scale(bs.a.sinh());
    Ok((mu_factor * (cosh_s + r * sinh_s)).to_matrix())
}

/// `e^a Π e^{σ_n u_n⊗v_n}` from the singular value factorization of `[p|q|r]`.
pub fn exp_symmetric_general(rep: &SymmetricRep) -> Result<Mat4> {
    let d = svd3(&rep.block());
    let to_q = |v: nalgebra::VectorView3<f64>| Quaternion::pure(v[0], v[1], v[2]);
    let groups: Vec<_> = (0..3)
        .map(|n| HxH::tensor(to_q(d.u.column(n)), to_q(d.v.column(n))).scale(d.sigma[n]))
        .collect();
    exp_groups(rep.a, &groups)
}

/// Symmetric persymmetric `a + ε(j⊗i) + Σ Q_{mn} e_m⊗e_n` over `m ∈ {i,k}`,
/// `n ∈ {j,k}`, through the 2×2 singular value factorization of `Q`.
pub fn exp_bisymmetric(a: f64, eps: f64, block: &Matrix2<f64>) -> Result<Mat4> {
    let d = svd2(block);
    let mut groups = vec![HxH::term(eps, J, I)];
    for n in 0..2 {
        let (u, v) = (d.u.column(n), d.v.column(n));
        let g = HxH::tensor(Quaternion::pure(u[0], 0.0, u[1]), Quaternion::pure(0.0, v[0], v[1]));
        groups.push(g.scale(d.sigma[n]));
    }
    exp_groups(a, &groups)
}

/// Index 0 of each pair is the `p⊗1` coefficient, index 1 the `1⊗q` one.
pub fn exp_so4_complex(alpha: [Complex64; 2], beta: [Complex64; 2], gamma: [Complex64; 2]) -> Result<Mat4C> {
    let left = HxHC::term(alpha[0], I, One) + HxHC::term(beta[0], J, One) + HxHC::term(gamma[0], K, One);
    let right = HxHC::term(alpha[1], One, I) + HxHC::term(beta[1], One, J) + HxHC::term(gamma[1], One, K);
    exp_groups(Complex64::new(0.0, 0.0), &[left, right])
}

pub fn exp_p4_complex(params: &LieParams<Complex64>) -> Result<Mat4C> {
    exp_groups(Complex64::new(0.0, 0.0), &PERSKEW.groups(params))
}

/// Closed form for a real family.
pub fn exp_real_class(class: &StructureClass) -> Result<Mat4> {
    match class {
        StructureClass::SkewSymmetric { p, q } => Ok(exp_skew_symmetric(*p, *q)),
        StructureClass::Perskewsymmetric { p, alpha, q, beta } => exp_perskewsymmetric(*p, *alpha, *q, *beta),
        StructureClass::SkewHamiltonian { b, p, c, d } => exp_skew_hamiltonian(*b, *p, *c, *d),
        StructureClass::Jordan { class, params } => exp_jordan(*class, params),
        StructureClass::Lie { class, params } => exp_lie(*class, params),
        StructureClass::HamSymPersym { beta, gamma, delta } => exp_ham_sym_persym(*beta, *gamma, *delta),
        StructureClass::SymToeplitzTridiag { a, b } => exp_sym_toeplitz_tridiag(*a, *b),
        StructureClass::SymToeplitzS13Zero { a, b, c } => exp_sym_toeplitz_s13(*a, *b, *c),
        StructureClass::SpecialNormal(sn) => exp_special_normal(sn),
        StructureClass::BisymmetricRS(bs) => exp_bisymmetric_rs(bs),
        StructureClass::SymmetricGeneral(rep) => exp_symmetric_general(rep),
        StructureClass::ComplexSO4 { .. } | StructureClass::ComplexPerskew(_) => Err(Error::ForcedClassMismatch {
            class: class.tag(),
            residual: f64::INFINITY,
        }),
    }
}

/// Closed form for any family, real ones promoted to complex.
pub fn exp_class(class: &StructureClass) -> Result<Mat4C> {
    match class {
        StructureClass::ComplexSO4 { alpha, beta, gamma } => exp_so4_complex(*alpha, *beta, *gamma),
        StructureClass::ComplexPerskew(params) => exp_p4_complex(params),
        real => exp_real_class(real).map(|m| m.map(|x| Complex64::new(x, 0.0))),
    }
}

/// Annihilating quartic of `T = M_{s⊗1} + M_{1⊗t}` and the true minimal polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalPoly {
    /// `(1, 0, 2(‖s‖²+‖t‖²), 0, (‖s‖²−‖t‖²)²)`, leading coefficient first.
    pub quartic: [f64; 5],
    pub degree: usize,
    /// Minimal polynomial, leading coefficient first.
    pub minimal: Vec<f64>,
}

impl MinimalPoly {
    /// `Σ coeffs[n] T^{deg−n}` for the given coefficient list.
    pub fn evaluate(coeffs: &[f64], t: &Mat4) -> Mat4 {
        coeffs.iter().fold(Mat4::zeros(), |acc, &c| acc * t + Mat4::identity() * c)
    }
}

/// Degree drops are decided relative to `‖s‖ + ‖t‖` at tolerance `tol`.
pub fn minimal_poly_skew(s: Quaternion, t: Quaternion, tol: f64) -> MinimalPoly {
    let (s2, t2) = (s.pure_part().norm_squared(), t.pure_part().norm_squared());
    let (sn, tn) = (s2.sqrt(), t2.sqrt());
    let quartic = [1.0, 0.0, 2.0 * (s2 + t2), 0.0, (s2 - t2).powi(2)];
    let scale = sn + tn;
    let zero = |x: f64| x <= tol * scale;
    let (degree, minimal) = if scale == 0.0 {
        (1, vec![1.0, 0.0])
    } else if zero(sn) || zero(tn) {
        (2, vec![1.0, 0.0, s2 + t2])
    } else if zero((sn - tn).abs()) {
        // Eigenvalues 0 and ±2i‖s‖.
        (3, vec![1.0, 0.0, (sn + tn).powi(2), 0.0])
    } else {
        (4, quartic.to_vec())
    };
    MinimalPoly { quartic, degree, minimal }
}

/// How `e^A` was (or should be) computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Class(ClassTag),
    Covering(CoveringAlgebra),
    /// Closed-form 2×2 exponential.
    Expm2,
    Oracle,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Class(tag) => write!(f, "{tag}"),
            Route::Covering(alg) => write!(f, "covering:{alg}"),
            Route::Expm2 => f.write_str("expm2"),
            Route::Oracle => f.write_str("oracle"),
        }
    }
}

/// Requested route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Highest-priority matching closed form, falling back to the oracle.
    Auto,
    Class(ClassTag),
    Covering(CoveringAlgebra),
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownMethod(pub String);

impl fmt::Display for UnknownMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown method `{}` (expected auto, oracle, covering:<algebra> or a class name)", self.0)
    }
}

impl std::error::Error for UnknownMethod {}

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = || UnknownMethod(s.to_string());
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Method::Auto),
            "oracle" => Ok(Method::Oracle),
            other => match other.strip_prefix("covering:") {
                Some(alg) => alg.parse().map(Method::Covering).map_err(|_| err()),
                None => other.parse().map(Method::Class).map_err(|_| err()),
            },
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Auto => f.write_str("auto"),
            Method::Class(tag) => write!(f, "{tag}"),
            Method::Covering(alg) => write!(f, "covering:{alg}"),
            Method::Oracle => f.write_str("oracle"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpOptions {
    /// Classification and membership tolerance, relative to `‖A‖_F`.
    pub tol: f64,
    /// Compare against the oracle and record the residual.
    pub verify: bool,
    pub oracle: OracleConfig,
}

impl Default for ExpOptions {
    fn default() -> Self {
        ExpOptions {
            tol: DEFAULT_TOL,
            verify: false,
            oracle: OracleConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpResult<M> {
    pub value: M,
    pub route: Route,
    /// `rel_error(value, oracle)` when verification was requested.
    pub residual: Option<f64>,
}

fn to_c4<T: Scalar>(a: &DMatrix<T>) -> Mat4C {
    Mat4C::from_fn(|r, c| a[(r, c)].to_c64())
}

fn from_c<T: Scalar>(m: &Mat4C) -> Option<DMatrix<T>> {
    // Real inputs through complex formulas keep roundoff-level imaginary parts.
    let im = m.map(|z| z.im).norm();
    let keep_im = im > 1e-13 * (1.0 + m.norm());
    let mut out = DMatrix::from_element(4, 4, T::zero());
    for r in 0..4 {
        for c in 0..4 {
            let z = m[(r, c)];
            let z = if keep_im { z } else { Complex64::new(z.re, 0.0) };
            out[(r, c)] = T::from_c64(z)?;
        }
    }
    Some(out)
}

fn real_view<T: Scalar>(a: &DMatrix<T>, tol: f64) -> Option<DMatrix<f64>> {
    let im: f64 = a.iter().map(|z| z.imaginary().powi(2)).sum::<f64>().sqrt();
    (im <= tol * a.norm()).then(|| a.map(|z| z.real()))
}

fn check_square<T: Scalar>(a: &DMatrix<T>) -> Result<usize> {
    let n = a.nrows();
    if a.ncols() != n || !(2..=4).contains(&n) {
        return Err(Error::Dimension {
            expected: if (2..=4).contains(&n) { n } else { 4 },
            rows: n,
            cols: a.ncols(),
        });
    }
    Ok(n)
}

fn via_class<T: Scalar>(a: &DMatrix<T>, tag: ClassTag, tol: f64) -> Result<DMatrix<T>> {
    if a.nrows() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let class = extract_complex(&to_c4(a), tag, tol)?;
    let value = exp_class(&class)?;
    from_c(&value).ok_or(Error::ForcedClassMismatch {
        class: tag,
        residual: value.map(|z| z.im).norm(),
    })
}

fn via_covering<T: Scalar>(a: &DMatrix<T>, alg: CoveringAlgebra, tol: f64) -> Result<DMatrix<T>> {
    let real = real_view(a, tol).ok_or_else(|| Error::NotInAlgebra {
        algebra: alg,
        residual: a.iter().map(|z| z.imaginary().powi(2)).sum::<f64>().sqrt() / a.norm(),
    })?;
    Ok(exp_via_covering(alg, &real, tol)?.map(T::from_real))
}

fn via_expm2<T: Scalar>(a: &DMatrix<T>) -> DMatrix<T> {
    let m = Matrix2::from_fn(|r, c| a[(r, c)]);
    let e = expm2(&m);
    DMatrix::from_fn(2, 2, |r, c| e[(r, c)])
}

/// Covering algebras of size `n` that contain `a`.
pub fn member_algebras(a: &DMatrix<f64>, tol: f64) -> Vec<CoveringAlgebra> {
    CoveringAlgebra::ALL
        .into_iter()
        .filter(|alg| alg.dim() == a.nrows())
        .filter(|alg| matches!(membership_residual(*alg, a), Ok(r) if r <= tol))
        .collect()
}

fn auto<T: Scalar>(a: &DMatrix<T>, opts: &ExpOptions) -> Result<(DMatrix<T>, Route)> {
    match a.nrows() {
        2 => return Ok((via_expm2(a), Route::Expm2)),
        4 => {
            let m = to_c4(a);
            for class in classify_complex(&m, opts.tol) {
                if let Ok(v) = exp_class(&class) {
                    if let Some(v) = from_c(&v) {
                        return Ok((v, Route::Class(class.tag())));
                    }
                }
            }
        }
        _ => {
            if let Some(real) = real_view(a, opts.tol) {
                for alg in member_algebras(&real, opts.tol) {
                    if let Ok(v) = exp_via_covering(alg, &real, opts.tol) {
                        return Ok((v.map(T::from_real), Route::Covering(alg)));
                    }
                }
            }
        }
    }
    Ok((expm_series_dyn(a, &opts.oracle)?, Route::Oracle))
}

/// `e^A` for a 2×2, 3×3 or 4×4 real or complex matrix by the requested route.
pub fn expm<T: Scalar>(a: &DMatrix<T>, method: &Method, opts: &ExpOptions) -> Result<ExpResult<DMatrix<T>>> {
    check_square(a)?;
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::InvalidTolerance(opts.tol));
    }
    let (value, route) = match method {
        Method::Auto => auto(a, opts)?,
        Method::Oracle => (expm_series_dyn(a, &opts.oracle)?, Route::Oracle),
        Method::Class(tag) => (via_class(a, *tag, opts.tol)?, Route::Class(*tag)),
        Method::Covering(alg) => (via_covering(a, *alg, opts.tol)?, Route::Covering(*alg)),
    };
    let residual = if opts.verify {
        Some(rel_error(&value, &expm_series_dyn(a, &opts.oracle)?))
    } else {
        None
    };
    Ok(ExpResult { value, route, residual })
}

fn to_dyn<T: Scalar>(m: &Matrix4<T>) -> DMatrix<T> {
    DMatrix::from_fn(4, 4, |r, c| m[(r, c)])
}

/// [`expm`] for a real 4×4 matrix.
pub fn expm_auto(a: &Mat4, method: &Method, opts: &ExpOptions) -> Result<ExpResult<Mat4>> {
    let r = expm(&to_dyn(a), method, opts)?;
    Ok(ExpResult {
        value: Mat4::from_fn(|i, j| r.value[(i, j)]),
        route: r.route,
        residual: r.residual,
    })
}

/// [`expm`] for a complex 4×4 matrix.
pub fn expm_auto_complex(a: &Mat4C, method: &Method, opts: &ExpOptions) -> Result<ExpResult<Mat4C>> {
    let r = expm(&to_dyn(a), method, opts)?;
    Ok(ExpResult {
        value: Mat4C::from_fn(|i, j| r.value[(i, j)]),
        route: r.route,
        residual: r.residual,
    })
}

/// Every closed-form route that applies to `a`, with its value or the error it raised.
pub fn applicable_routes<T: Scalar>(a: &DMatrix<T>, tol: f64) -> Result<Vec<(Route, Result<DMatrix<T>>)>> {
    let n = check_square(a)?;
    let mut out = Vec::new();
    if n == 2 {
        out.push((Route::Expm2, Ok(via_expm2(a))));
    }
    if n == 4 {
        for class in classify_complex(&to_c4(a), tol) {
            let tag = class.tag();
            out.push((Route::Class(tag), via_class(a, tag, tol)));
        }
    }
    if let Some(real) = real_view(a, tol) {
        for alg in member_algebras(&real, tol) {
            out.push((Route::Covering(alg), via_covering(a, alg, tol)));
        }
    }
    Ok(out)
}

/// `true` when `a` is real to within `tol` (used to pick the output kind).
pub fn is_effectively_real(a: &Mat4C, tol: f64) -> bool {
    real_part_if_real(a, tol).is_some()
}
