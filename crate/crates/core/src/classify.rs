//! Membership tests for the structured families and extraction of the
//! parameters their closed forms consume.
//!
//! Every test has the same shape: read the family's parameters off the H⊗H
//! coefficients, rebuild the matrix from them, and accept when the
//! reconstruction residual is at most `tol · ‖A‖_F`.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::{JordanParams, LieParams, JORDAN, LIE, PERSKEW, SKEW_HAMILTONIAN};
use crate::hxh::{r4, HxH, HxHC, Mat4, Mat4C, Unit};
use crate::quat::Quaternion;
use crate::smalllin::svd2;

use Unit::{One, I, J, K};

/// Default classification tolerance, relative to `‖A‖_F`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Family identifier without parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassTag {
    SkewSymmetric,
    SkewHamiltonian,
    Perskewsymmetric,
    /// Lie classes 1..=8; class 1 is so(2,2,R).
    Lie(u8),
    /// Jordan classes 1..=5.
    Jordan(u8),
    HamSymPersym,
    SymToeplitzTridiag,
    SymToeplitzS13Zero,
    SpecialNormal,
    BisymmetricRS,
    SymmetricGeneral,
    ComplexSO4,
    ComplexPerskew,
}

impl ClassTag {
    /// Real families in dispatch order, most specific first.
    pub const REAL: [ClassTag; 22] = [
        ClassTag::SkewSymmetric,
        ClassTag::SkewHamiltonian,
        ClassTag::Perskewsymmetric,
        ClassTag::Lie(1),
        ClassTag::Lie(2),
        ClassTag::Lie(3),
        ClassTag::Lie(4),
        ClassTag::Lie(5),
        ClassTag::Lie(6),
        ClassTag::Lie(7),
        ClassTag::Lie(8),
        ClassTag::Jordan(1),
        ClassTag::Jordan(2),
        ClassTag::Jordan(3),
        ClassTag::Jordan(4),
        ClassTag::Jordan(5),
        ClassTag::HamSymPersym,
        ClassTag::SymToeplitzTridiag,
        ClassTag::SymToeplitzS13Zero,
        ClassTag::SpecialNormal,
        ClassTag::BisymmetricRS,
        ClassTag::SymmetricGeneral,
    ];

    pub const COMPLEX: [ClassTag; 2] = [ClassTag::ComplexSO4, ClassTag::ComplexPerskew];

    pub fn all() -> impl Iterator<Item = ClassTag> {
        Self::REAL.into_iter().chain(Self::COMPLEX)
    }

    /// Position in the dispatch order.
    pub fn priority(self) -> usize {
        Self::all()
            .position(|t| t == self)
            .expect("every tag is listed")
    }

    pub fn is_complex(self) -> bool {
        matches!(self, ClassTag::ComplexSO4 | ClassTag::ComplexPerskew)
    }

    pub fn name(self) -> String {
        match self {
            ClassTag::SkewSymmetric => "skew-symmetric".into(),
            ClassTag::SkewHamiltonian => "skew-hamiltonian".into(),
            ClassTag::Perskewsymmetric => "perskew".into(),
            ClassTag::Lie(k) => format!("lie{k}"),
            ClassTag::Jordan(k) => format!("jordan{k}"),
            ClassTag::HamSymPersym => "ham-sym-persym".into(),
            ClassTag::SymToeplitzTridiag => "toeplitz-tridiag".into(),
            ClassTag::SymToeplitzS13Zero => "toeplitz-s13".into(),
            ClassTag::SpecialNormal => "special-normal".into(),
            ClassTag::BisymmetricRS => "bisymmetric-rs".into(),
            ClassTag::SymmetricGeneral => "symmetric".into(),
            ClassTag::ComplexSO4 => "complex-so4".into(),
            ClassTag::ComplexPerskew => "complex-perskew".into(),
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownClass(pub String);

impl fmt::Display for UnknownClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown structure class `{}`", self.0)
    }
}

impl std::error::Error for UnknownClass {}

impl FromStr for ClassTag {
    type Err = UnknownClass;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        ClassTag::all()
            .find(|t| t.name() == lower)
            .ok_or_else(|| UnknownClass(s.to_string()))
    }
}

/// `a(1⊗1) + s⊗1 + 1⊗t + w⊗t̂` with the symmetric and skew parts commuting.
///
/// `sym_left` is the left factor `w` of the rank-one symmetric part. It is
/// `s` itself when `‖s‖ > ‖t‖`; otherwise `t̂ = t/‖t‖` and `w` absorbs the scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialNormal {
    pub a: f64,
    pub s: Quaternion,
    pub t_hat: Quaternion,
    pub t: Quaternion,
    pub sym_left: Quaternion,
}

impl SpecialNormal {
    pub fn element(&self) -> HxH<f64> {
        HxH::scalar(self.a)
            + HxH::tensor(self.s, Quaternion::ONE)
            + HxH::tensor(Quaternion::ONE, self.t)
            + HxH::tensor(self.sym_left, self.t_hat)
    }
}

/// `P = R₄ S` with `S = a(1⊗1) + ε(j⊗i) + (αi + βk)⊗(γj + δk)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BisymmetricRs {
    pub a: f64,
    pub eps: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl BisymmetricRs {
    /// The symmetric factor `S`.
    pub fn symmetric_part(&self) -> HxH<f64> {
        HxH::scalar(self.a)
            + HxH::term(self.eps, J, I)
            + HxH::tensor(
                Quaternion::pure(self.alpha, 0.0, self.beta),
                Quaternion::pure(0.0, self.gamma, self.delta),
            )
    }

    pub fn element(&self) -> HxH<f64> {
        HxH::term(1.0, J, I) * self.symmetric_part()
    }
}

/// `a(1⊗1) + p⊗i + q⊗j + r⊗k` with `p, q, r` pure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricRep {
    pub a: f64,
    pub p: Quaternion,
    pub q: Quaternion,
    pub r: Quaternion,
}

impl SymmetricRep {
    /// `[p | q | r]`: entry `(m, n)` is the coefficient of `e_m⊗e_n` over pure units.
    pub fn block(&self) -> nalgebra::Matrix3<f64> {
        let cols = [self.p.vector(), self.q.vector(), self.r.vector()];
        nalgebra::Matrix3::from_fn(|m, n| cols[n][m])
    }

    pub fn element(&self) -> HxH<f64> {
        HxH::scalar(self.a)
            + HxH::tensor(self.p, Quaternion::I)
            + HxH::tensor(self.q, Quaternion::J)
            + HxH::tensor(self.r, Quaternion::K)
    }
}

/// A matched family with its canonical parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum StructureClass {
    /// `p⊗1 + 1⊗q`, `p, q` pure.
    SkewSymmetric { p: Quaternion, q: Quaternion },
    /// `p⊗i + α(j⊗1) + j⊗q + β(1⊗i)`; `p` holds the i,k and `q` the j,k coefficients.
    Perskewsymmetric { p: [f64; 2], alpha: f64, q: [f64; 2], beta: f64 },
    /// `b(1⊗1) + p⊗j + 1⊗(ci + dk)`.
    SkewHamiltonian { b: f64, p: Quaternion, c: f64, d: f64 },
    Jordan { class: u8, params: JordanParams },
    Lie { class: u8, params: LieParams },
    /// `β(j⊗i) + γ(i⊗k) + δ(k⊗k)`.
    HamSymPersym { beta: f64, gamma: f64, delta: f64 },
    /// `a(1⊗1) + b/2 (j⊗i) + b/2 (i⊗j) + b(k⊗j)`.
    SymToeplitzTridiag { a: f64, b: f64 },
    /// Symmetric Toeplitz with zero second off-diagonals and corner entry `c`:
    /// `a(1⊗1) + (b+c)/2 (j⊗i) + (b−c)/2 (i⊗j) + b(k⊗j)`.
    SymToeplitzS13Zero { a: f64, b: f64, c: f64 },
    SpecialNormal(SpecialNormal),
    BisymmetricRS(BisymmetricRs),
    SymmetricGeneral(SymmetricRep),
    /// `Σ α₁ i⊗1 + β₁ j⊗1 + γ₁ k⊗1 + α₂ 1⊗i + β₂ 1⊗j + γ₂ 1⊗k`; index 0 is the left factor.
    ComplexSO4 { alpha: [Complex64; 2], beta: [Complex64; 2], gamma: [Complex64; 2] },
    ComplexPerskew(LieParams<Complex64>),
}

impl StructureClass {
    pub fn tag(&self) -> ClassTag {
        match self {
            StructureClass::SkewSymmetric { .. } => ClassTag::SkewSymmetric,
            StructureClass::Perskewsymmetric { .. } => ClassTag::Perskewsymmetric,
            StructureClass::SkewHamiltonian { .. } => ClassTag::SkewHamiltonian,
            StructureClass::Jordan { class, .. } => ClassTag::Jordan(*class),
            StructureClass::Lie { class, .. } => ClassTag::Lie(*class),
            StructureClass::HamSymPersym { .. } => ClassTag::HamSymPersym,
            StructureClass::SymToeplitzTridiag { .. } => ClassTag::SymToeplitzTridiag,
            StructureClass::SymToeplitzS13Zero { .. } => ClassTag::SymToeplitzS13Zero,
            StructureClass::SpecialNormal(_) => ClassTag::SpecialNormal,
            StructureClass::BisymmetricRS(_) => ClassTag::BisymmetricRS,
            StructureClass::SymmetricGeneral(_) => ClassTag::SymmetricGeneral,
            StructureClass::ComplexSO4 { .. } => ClassTag::ComplexSO4,
            StructureClass::ComplexPerskew(_) => ClassTag::ComplexPerskew,
        }
    }

    /// H⊗H element rebuilt from the parameters; `None` for the complex families.
    pub fn element(&self) -> Option<HxH<f64>> {
        let u = match self {
            StructureClass::SkewSymmetric { p, q } => {
                HxH::tensor(*p, Quaternion::ONE) + HxH::tensor(Quaternion::ONE, *q)
            }
            StructureClass::Perskewsymmetric { p, alpha, q, beta } => {
                PERSKEW.element(&LieParams { p: *p, a: *alpha, q: *q, b: *beta })
            }
            StructureClass::SkewHamiltonian { b, p, c, d } => SKEW_HAMILTONIAN.element(&JordanParams {
                a: *b,
                b: *c,
                c: *d,
                v: p.vector(),
            }),
            StructureClass::Jordan { class, params } => JORDAN[usize::from(*class) - 1].element(params),
            StructureClass::Lie { class, params } => LIE[usize::from(*class) - 1].element(params),
            StructureClass::HamSymPersym { beta, gamma, delta } => {
                HxH::term(*beta, J, I) + HxH::term(*gamma, I, K) + HxH::term(*delta, K, K)
            }
            StructureClass::SymToeplitzTridiag { a, b } => toeplitz(*a, *b, 0.0),
            StructureClass::SymToeplitzS13Zero { a, b, c } => toeplitz(*a, *b, *c),
            StructureClass::SpecialNormal(sn) => sn.element(),
            StructureClass::BisymmetricRS(bs) => bs.element(),
            StructureClass::SymmetricGeneral(rep) => rep.element(),
            StructureClass::ComplexSO4 { .. } | StructureClass::ComplexPerskew(_) => return None,
        };
        Some(u)
    }

    pub fn element_complex(&self) -> HxHC {
        match self {
            StructureClass::ComplexSO4 { alpha, beta, gamma } => {
                let mut u = HxHC::zero();
                for side in 0..2 {
                    for (unit, coeff) in [(I, alpha[side]), (J, beta[side]), (K, gamma[side])] {
                        let (x, y) = if side == 0 { (unit, One) } else { (One, unit) };
                        u.set(x, y, coeff);
                    }
                }
                u
            }
            StructureClass::ComplexPerskew(params) => PERSKEW.element(params),
            real => real.element().expect("real family").to_complex(),
        }
    }

    /// The matrix described by the parameters.
    pub fn reconstruct(&self) -> Mat4C {
        self.element_complex().to_matrix()
    }

    /// Named scalar parameters, in the order of the family's representation.
    pub fn params(&self) -> Vec<(String, Complex64)> {
        let re = |name: &str, v: f64| (name.to_string(), Complex64::new(v, 0.0));
        let quat = |name: &str, q: &Quaternion| {
            ["i", "j", "k"]
                .iter()
                .zip(q.vector())
                .map(|(u, v)| re(&format!("{name}.{u}"), v))
                .collect::<Vec<_>>()
        };
        let span = |name: &str, units: &[Unit], v: &[f64; 2]| {
            units
                .iter()
                .zip(v)
                .map(|(u, x)| re(&format!("{name}.{u}"), *x))
                .collect::<Vec<_>>()
        };
        match self {
            StructureClass::SkewSymmetric { p, q } => [quat("p", p), quat("q", q)].concat(),
            StructureClass::Perskewsymmetric { p, alpha, q, beta } => [
                span("p", PERSKEW.p.span, p),
                vec![re("alpha", *alpha)],
                span("q", PERSKEW.q.span, q),
                vec![re("beta", *beta)],
            ]
            .concat(),
            StructureClass::SkewHamiltonian { b, p, c, d } => {
                [vec![re("b", *b)], quat("p", p), vec![re("c", *c), re("d", *d)]].concat()
            }
            StructureClass::Jordan { params, .. } => [
                vec![re("a", params.a)],
                quat("v", &Quaternion::pure(params.v[0], params.v[1], params.v[2])),
                vec![re("b", params.b), re("c", params.c)],
            ]
            .concat(),
            StructureClass::Lie { class, params } => {
                let layout = &LIE[usize::from(*class) - 1];
                [
                    span("p", layout.p.span, &params.p),
                    vec![re("a", params.a)],
                    span("q", layout.q.span, &params.q),
                    vec![re("b", params.b)],
                ]
                .concat()
            }
            StructureClass::HamSymPersym { beta, gamma, delta } => {
                vec![re("beta", *beta), re("gamma", *gamma), re("delta", *delta)]
            }
            StructureClass::SymToeplitzTridiag { a, b } => vec![re("a", *a), re("b", *b)],
            StructureClass::SymToeplitzS13Zero { a, b, c } => vec![re("a", *a), re("b", *b), re("c", *c)],
            StructureClass::SpecialNormal(sn) => [
                vec![re("a", sn.a)],
                quat("s", &sn.s),
                quat("t", &sn.t),
                quat("t_hat", &sn.t_hat),
                quat("sym_left", &sn.sym_left),
            ]
            .concat(),
            StructureClass::BisymmetricRS(bs) => vec![
                re("a", bs.a),
                re("eps", bs.eps),
                re("alpha", bs.alpha),
                re("beta", bs.beta),
                re("gamma", bs.gamma),
                re("delta", bs.delta),
            ],
            StructureClass::SymmetricGeneral(rep) => {
                [vec![re("a", rep.a)], quat("p", &rep.p), quat("q", &rep.q), quat("r", &rep.r)].concat()
            }
            StructureClass::ComplexSO4 { alpha, beta, gamma } => (0..2)
                .flat_map(|n| {
                    let k = n + 1;
                    [
                        (format!("alpha{k}"), alpha[n]),
                        (format!("beta{k}"), beta[n]),
                        (format!("gamma{k}"), gamma[n]),
                    ]
                })
                .collect(),
            StructureClass::ComplexPerskew(params) => {
                let mut out = Vec::new();
                for (u, v) in PERSKEW.p.span.iter().zip(params.p) {
                    out.push((format!("p.{u}"), v));
                }
                out.push(("alpha".into(), params.a));
                for (u, v) in PERSKEW.q.span.iter().zip(params.q) {
                    out.push((format!("q.{u}"), v));
                }
                out.push(("beta".into(), params.b));
                out
            }
        }
    }
}

fn toeplitz(a: f64, b: f64, c: f64) -> HxH<f64> {
    HxH::scalar(a) + HxH::term((b + c) / 2.0, J, I) + HxH::term((b - c) / 2.0, I, J) + HxH::term(b, K, J)
}

fn pure_left(u: &HxH<f64>, b: Unit) -> Quaternion {
    u.left_column(b).pure_part()
}

fn pure_right(u: &HxH<f64>, a: Unit) -> Quaternion {
    u.right_row(a).pure_part()
}

/// Reads the parameters of `tag` off `u` without checking the fit.
fn read_params(u: &HxH<f64>, tag: ClassTag) -> Option<StructureClass> {
    let class = match tag {
        ClassTag::SkewSymmetric => StructureClass::SkewSymmetric {
            p: pure_left(u, One),
            q: pure_right(u, One),
        },
        ClassTag::Perskewsymmetric => {
            let l = PERSKEW.read(u);
            StructureClass::Perskewsymmetric { p: l.p, alpha: l.a, q: l.q, beta: l.b }
        }
        ClassTag::SkewHamiltonian => {
            let j = SKEW_HAMILTONIAN.read(u);
            StructureClass::SkewHamiltonian {
                b: j.a,
                p: Quaternion::pure(j.v[0], j.v[1], j.v[2]),
                c: j.b,
                d: j.c,
            }
        }
        ClassTag::Jordan(k @ 1..=5) => StructureClass::Jordan {
            class: k,
            params: JORDAN[usize::from(k) - 1].read(u),
        },
        ClassTag::Lie(k @ 1..=8) => StructureClass::Lie {
            class: k,
            params: LIE[usize::from(k) - 1].read(u),
        },
        ClassTag::Jordan(_) | ClassTag::Lie(_) => return None,
        ClassTag::HamSymPersym => StructureClass::HamSymPersym {
            beta: u.coeff(J, I),
            gamma: u.coeff(I, K),
            delta: u.coeff(K, K),
        },
        // Least-squares fits; the two directions below are orthogonal.
        ClassTag::SymToeplitzTridiag => StructureClass::SymToeplitzTridiag {
            a: u.scalar_part(),
            b: toeplitz_b(u),
        },
        ClassTag::SymToeplitzS13Zero => StructureClass::SymToeplitzS13Zero {
            a: u.scalar_part(),
            b: toeplitz_b(u),
            c: u.coeff(J, I) - u.coeff(I, J),
        },
        ClassTag::SpecialNormal => StructureClass::SpecialNormal(read_special_normal(u)?),
        ClassTag::BisymmetricRS => StructureClass::BisymmetricRS(read_bisymmetric_rs(u)),
        ClassTag::SymmetricGeneral => StructureClass::SymmetricGeneral(read_symmetric(u)),
        ClassTag::ComplexSO4 | ClassTag::ComplexPerskew => return None,
    };
    Some(class)
}

fn toeplitz_b(u: &HxH<f64>) -> f64 {
    (0.5 * u.coeff(J, I) + 0.5 * u.coeff(I, J) + u.coeff(K, J)) / 1.5
}

fn read_symmetric(u: &HxH<f64>) -> SymmetricRep {
    SymmetricRep {
        a: u.scalar_part(),
        p: pure_left(u, I),
        q: pure_left(u, J),
        r: pure_left(u, K),
    }
}

fn read_special_normal(u: &HxH<f64>) -> Option<SpecialNormal> {
    let s = pure_left(u, One);
    let t = pure_right(u, One);
    let block = read_symmetric(u).block();
    let (sn, tn) = (s.norm(), t.norm());
    if sn == tn {
        return None;
    }
    let to_q = |v: nalgebra::Vector3<f64>| Quaternion::pure(v.x, v.y, v.z);
    let (sym_left, t_hat) = if sn > tn {
        let sv = nalgebra::Vector3::from(s.vector());
        (s, to_q(block.transpose() * sv / (sn * sn)))
    } else {
        let t_hat = t.scale(1.0 / tn);
        (to_q(block * nalgebra::Vector3::from(t_hat.vector())), t_hat)
    };
    Some(SpecialNormal { a: u.scalar_part(), s, t_hat, t, sym_left })
}

fn read_bisymmetric_rs(u: &HxH<f64>) -> BisymmetricRs {
    // R₄ is an involution, so S = R₄ P.
    let s = HxH::term(1.0, J, I) * *u;
    let block = Matrix2::new(s.coeff(I, J), s.coeff(I, K), s.coeff(K, J), s.coeff(K, K));
    let d = svd2(&block);
    let left = d.u.column(0) * d.sigma[0];
    let right = d.v.column(0);
    BisymmetricRs {
        a: s.scalar_part(),
        eps: s.coeff(J, I),
        alpha: left[0],
        beta: left[1],
        gamma: right[0],
        delta: right[1],
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

fn mismatch(class: ClassTag, residual: f64, scale: f64) -> Error {
    Error::ForcedClassMismatch {
        class,
        residual: if scale > 0.0 { residual / scale } else { residual },
    }
}

/// Matches `a` against one family; on failure the error carries the relative
/// residual of the family's representation.
pub fn extract(a: &Mat4, tag: ClassTag, tol: f64) -> Result<StructureClass> {
    check_tol(tol)?;
    let scale = a.norm();
    let u = HxH::from_matrix(a);
    let class = match read_params(&u, tag) {
        Some(c) => c,
        None => return Err(mismatch(tag, scale, scale)),
    };
    let recon = class.element().expect("real family").to_matrix();
    let residual = (a - recon).norm();
    if residual > tol * scale {
        return Err(mismatch(tag, residual, scale));
    }
    if let StructureClass::SpecialNormal(sn) = &class {
        check_special_normal(a, sn, tol)?;
    }
    Ok(class)
}

fn check_special_normal(a: &Mat4, sn: &SpecialNormal, tol: f64) -> Result<()> {
    let scale = a.norm();
    let sym = (a + a.transpose()) * 0.5;
    let skew = (a - a.transpose()) * 0.5;
    let comm = (sym * skew - skew * sym).norm();
    if comm > tol * scale * scale {
        return Err(mismatch(ClassTag::SpecialNormal, comm, scale * scale));
    }
    let (sn_, tn) = (sn.s.norm(), sn.t.norm());
    let gap = (sn_ - tn).abs();
    if gap <= tol * (sn_ + tn) {
        return Err(mismatch(ClassTag::SpecialNormal, gap, sn_ + tn));
    }
    Ok(())
}

/// Every real family containing `a`, in dispatch order.
pub fn classify(a: &Mat4, tol: f64) -> Vec<StructureClass> {
    ClassTag::REAL
        .iter()
        .filter_map(|&tag| extract(a, tag, tol).ok())
        .collect()
}

/// `Some(real part)` when the imaginary part is negligible at `tol`.
pub fn real_part_if_real(a: &Mat4C, tol: f64) -> Option<Mat4> {
    let im = a.map(|z| z.im);
    (im.norm() <= tol * a.norm()).then(|| a.map(|z| z.re))
}

/// Complex counterpart of [`extract`]. Real tags match when the input is real
/// to within `tol`.
pub fn extract_complex(a: &Mat4C, tag: ClassTag, tol: f64) -> Result<StructureClass> {
    check_tol(tol)?;
    let scale = a.norm();
    let u = HxHC::from_matrix(a);
    let class = match tag {
        ClassTag::ComplexSO4 => {
            let pick = |x: Unit, y: Unit| u.coeff(x, y);
            StructureClass::ComplexSO4 {
                alpha: [pick(I, One), pick(One, I)],
                beta: [pick(J, One), pick(One, J)],
                gamma: [pick(K, One), pick(One, K)],
            }
        }
        ClassTag::ComplexPerskew => StructureClass::ComplexPerskew(PERSKEW.read(&u)),
        real => {
            return match real_part_if_real(a, tol) {
                Some(re) => extract(&re, real, tol),
                None => Err(mismatch(real, a.map(|z| z.im).norm(), scale)),
            }
        }
    };
    let residual = (a - class.reconstruct()).norm();
    if residual > tol * scale {
        return Err(mismatch(tag, residual, scale));
    }
    Ok(class)
}

/// Families containing a complex matrix: the real families when `a` is
/// real, followed by the complex ones.
pub fn classify_complex(a: &Mat4C, tol: f64) -> Vec<StructureClass> {
    ClassTag::all()
        .filter_map(|tag| extract_complex(a, tag, tol).ok())
        .collect()
}

/// `a = tr(A)/4` and the pure vectors `p, q, r` of a symmetric matrix.
pub fn extract_symmetric_rep(a: &Mat4, tol: f64) -> Result<SymmetricRep> {
    check_tol(tol)?;
    let asym = (a - a.transpose()).norm();
    if asym > tol * a.norm() {
        return Err(Error::NotSymmetric { residual: asym });
    }
    Ok(read_symmetric(&HxH::from_matrix(a)))
}

/// Special-normal parameters, or `None` when `a` is not special normal at `tol`.
pub fn extract_special_normal(a: &Mat4, tol: f64) -> Option<SpecialNormal> {
    match extract(a, ClassTag::SpecialNormal, tol) {
        Ok(StructureClass::SpecialNormal(sn)) => Some(sn),
        _ => None,
    }
}

/// `R₄ P` for a persymmetric `P`; symmetric exactly when `P` is persymmetric.
pub fn r4_times(p: &Mat4) -> Mat4 {
    r4() * p
}
