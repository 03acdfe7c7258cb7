//! Random instances of every family, built without the library's H⊗H map.
//!
//! Matrices are assembled column by column from quaternion products
//! `x ↦ p x conj(q)` computed here, so a mistake in the library's basis table
//! cannot hide behind a matching mistake in the test input.

#![allow(dead_code)]

use nalgebra::{Matrix2, Matrix4};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use structexp::classify::{BisymmetricRs, SpecialNormal, SymmetricRep};
use structexp::families::{JordanParams, LieParams, JORDAN, LIE};
use structexp::structured as st;
use structexp::{expm_series, Mat4, OracleConfig, Quaternion};

pub type Q = [f64; 4];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn hamilton(a: Q, b: Q) -> Q {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

pub fn conj(q: Q) -> Q {
    [q[0], -q[1], -q[2], -q[3]]
}

pub fn e(n: usize) -> Q {
    let mut q = [0.0; 4];
    q[n] = 1.0;
    q
}

/// Matrix of `x ↦ p x conj(q)` in the basis 1, i, j, k.
pub fn action(p: Q, q: Q) -> Mat4 {
    let mut m = Mat4::zeros();
    for c in 0..4 {
        let img = hamilton(hamilton(p, e(c)), conj(q));
        for r in 0..4 {
            m[(r, c)] = img[r];
        }
    }
    m
}

/// `s · M_{e_a⊗e_b}` with indices 0..4 for 1, i, j, k.
pub fn term(s: f64, a: usize, b: usize) -> Mat4 {
    action(e(a), e(b)) * s
}

pub fn pure(v: [f64; 3]) -> Q {
    [0.0, v[0], v[1], v[2]]
}

pub fn quat(v: [f64; 3]) -> Quaternion {
    Quaternion::pure(v[0], v[1], v[2])
}

pub fn oracle(a: &Mat4) -> Mat4 {
    expm_series(a, &OracleConfig::default()).expect("oracle converges at desk scale")
}

/// Random point of norm at most `radius` in R^n; the norm is uniform on [0, radius].
pub fn ball(rng: &mut StdRng, n: usize, radius: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            let r = radius * rng.random_range(0.0..=1.0);
            return v.into_iter().map(|x| x * r / norm).collect();
        }
    }
}

pub fn uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// A matrix together with its closed-form exponential.
pub struct Sample {
    pub name: String,
    pub a: Mat4,
    pub closed: Mat4,
}

pub const REAL_FAMILIES: [&str; 11] = [
    "skew-symmetric",
    "perskew",
    "skew-hamiltonian",
    "ham-sym-persym",
    "toeplitz-tridiag",
    "toeplitz-s13",
    "special-normal",
    "special-normal-t-only",
    "bisymmetric-rs",
    "symmetric",
    "bisymmetric",
];

const R: f64 = 3.0;

pub fn sample_real(name: &str, rng: &mut StdRng) -> Sample {
    let (a, closed) = match name {
        "skew-symmetric" => {
            let v = ball(rng, 6, R);
            let (p, q) = ([v[0], v[1], v[2]], [v[3], v[4], v[5]]);
            let a = action(pure(p), e(0)) + action(e(0), pure(q));
            (a, st::exp_skew_symmetric(quat(p), quat(q)))
        }
        "perskew" => {
            let v = ball(rng, 6, R);
            // p ∈ span{i,k} on ⊗i, α j⊗1, q ∈ span{j,k} after j⊗, β 1⊗i.
            let a = term(v[0], 1, 1) + term(v[1], 3, 1) + term(v[2], 2, 0) + term(v[3], 2, 2) + term(v[4], 2, 3) + term(v[5], 0, 1);
            (a, st::exp_perskewsymmetric([v[0], v[1]], v[2], [v[3], v[4]], v[5]).unwrap())
        }
        "skew-hamiltonian" => {
            let v = ball(rng, 6, R);
            let p = [v[1], v[2], v[3]];
            let a = term(v[0], 0, 0) + action(pure(p), e(2)) + term(v[4], 0, 1) + term(v[5], 0, 3);
            (a, st::exp_skew_hamiltonian(v[0], quat(p), v[4], v[5]).unwrap())
        }
        "ham-sym-persym" => {
            let v = ball(rng, 3, R);
            let a = term(v[0], 2, 1) + term(v[1], 1, 3) + term(v[2], 3, 3);
            (a, st::exp_ham_sym_persym(v[0], v[1], v[2]).unwrap())
        }
        "toeplitz-tridiag" => {
            let v = ball(rng, 2, R);
            (toeplitz(v[0], v[1], 0.0), st::exp_sym_toeplitz_tridiag(v[0], v[1]).unwrap())
        }
        "toeplitz-s13" => {
            let v = ball(rng, 3, R);
            (toeplitz(v[0], v[1], v[2]), st::exp_sym_toeplitz_s13(v[0], v[1], v[2]).unwrap())
        }
        "special-normal" | "special-normal-t-only" => {
            let v = ball(rng, 10, R);
            let s = if name == "special-normal" { [v[1], v[2], v[3]] } else { [0.0; 3] };
            let t = [v[4], v[5], v[6]];
            let w = [v[7], v[8], v[9]];
            // Commuting symmetric part: left factor along s (or free when s = 0), right factor along t.
            let (left, right) = if name == "special-normal" {
                (s, scale3(t, w[0]))
            } else {
                (w, scale3(t, 1.0 / norm3(t)))
            };
            let a = term(v[0], 0, 0) + action(pure(s), e(0)) + action(e(0), pure(t)) + action(pure(left), pure(right));
            let sn = SpecialNormal {
                a: v[0],
                s: quat(s),
                t: quat(t),
                t_hat: quat(right),
                sym_left: quat(left),
            };
            (a, st::exp_special_normal(&sn).unwrap())
        }
        "bisymmetric-rs" => {
            let v = ball(rng, 6, R);
            let bs = BisymmetricRs { a: v[0], eps: v[1], alpha: v[2], beta: v[3], gamma: v[4], delta: v[5] };
            let s = term(bs.a, 0, 0)
                + term(bs.eps, 2, 1)
                + action(pure([bs.alpha, 0.0, bs.beta]), pure([0.0, bs.gamma, bs.delta]));
            (term(1.0, 2, 1) * s, st::exp_bisymmetric_rs(&bs).unwrap())
        }
        "symmetric" => {
            let v = ball(rng, 10, R);
            let rep = SymmetricRep {
                a: v[0],
                p: quat([v[1], v[2], v[3]]),
                q: quat([v[4], v[5], v[6]]),
                r: quat([v[7], v[8], v[9]]),
            };
            let a = term(rep.a, 0, 0)
                + action(pure(rep.p.vector()), e(1))
                + action(pure(rep.q.vector()), e(2))
                + action(pure(rep.r.vector()), e(3));
            (a, st::exp_symmetric_general(&rep).unwrap())
        }
        "bisymmetric" => {
            let v = ball(rng, 6, R);
            let block = Matrix2::new(v[2], v[3], v[4], v[5]);
            let a = term(v[0], 0, 0) + term(v[1], 2, 1) + term(v[2], 1, 2) + term(v[3], 1, 3) + term(v[4], 3, 2) + term(v[5], 3, 3);
            (a, st::exp_bisymmetric(v[0], v[1], &block).unwrap())
        }
        other => panic!("unknown family {other}"),
    };
    Sample { name: name.to_string(), a, closed }
}

fn scale3(v: [f64; 3], s: f64) -> [f64; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Symmetric Toeplitz with diagonal `a`, first off-diagonal `b`, second 0, corner `c`.
pub fn toeplitz(a: f64, b: f64, c: f64) -> Mat4 {
    Matrix4::new(
        a, b, 0.0, c, //
        b, a, b, 0.0, //
        0.0, b, a, b, //
        c, 0.0, b, a,
    )
}

fn idx(u: structexp::Unit) -> usize {
    u.index()
}

pub fn sample_jordan(k: u8, rng: &mut StdRng) -> Sample {
    let layout = &JORDAN[usize::from(k) - 1];
    let v = ball(rng, 6, R);
    let params = JordanParams { a: v[0], b: v[1], c: v[2], v: [v[3], v[4], v[5]] };
    let mut a = term(params.a, 0, 0)
        + term(params.b, idx(layout.b.0), idx(layout.b.1))
        + term(params.c, idx(layout.c.0), idx(layout.c.1));
    for (n, (x, y)) in layout.vector.slots().enumerate() {
        a += term(params.v[n], idx(x), idx(y));
    }
    Sample { name: format!("jordan{k}"), a, closed: st::exp_jordan(k, &params).unwrap() }
}

pub fn lie_params(rng: &mut StdRng) -> LieParams {
    let v = ball(rng, 6, R);
    LieParams { p: [v[0], v[1]], a: v[2], q: [v[3], v[4]], b: v[5] }
}

pub fn lie_matrix(k: u8, params: &LieParams) -> Mat4 {
    let layout = &LIE[usize::from(k) - 1];
    let mut a = term(params.a, idx(layout.a.0), idx(layout.a.1)) + term(params.b, idx(layout.b.0), idx(layout.b.1));
    for (n, (x, y)) in layout.p.slots().enumerate() {
        a += term(params.p[n], idx(x), idx(y));
    }
    for (n, (x, y)) in layout.q.slots().enumerate() {
        a += term(params.q[n], idx(x), idx(y));
    }
    a
}

pub fn sample_lie(k: u8, rng: &mut StdRng) -> Sample {
    let params = lie_params(rng);
    Sample { name: format!("lie{k}"), a: lie_matrix(k, &params), closed: st::exp_lie(k, &params).unwrap() }
}

/// Every real family and every Jordan/Lie class.
pub fn all_sample_names() -> Vec<String> {
    let mut names: Vec<String> = REAL_FAMILIES.iter().map(|s| s.to_string()).collect();
    names.extend((1..=5).map(|k| format!("jordan{k}")));
    names.extend((1..=8).map(|k| format!("lie{k}")));
    names
}

pub fn sample(name: &str, rng: &mut StdRng) -> Sample {
    if let Some(k) = name.strip_prefix("jordan") {
        sample_jordan(k.parse().unwrap(), rng)
    } else if let Some(k) = name.strip_prefix("lie") {
        sample_lie(k.parse().unwrap(), rng)
    } else {
        sample_real(name, rng)
    }
}

pub fn random_matrix(rng: &mut StdRng, radius: f64) -> Mat4 {
    let v = ball(rng, 16, radius);
    Mat4::from_iterator(v)
}

/// `cosh λ I + (sinh λ/λ) G`, the exponential of a group assumed to square to `+λ²`.
pub fn hyperbolic_group_exp(g: &Mat4, lambda: f64) -> Mat4 {
    Mat4::identity() * lambda.cosh() + g * (lambda.sinh() / lambda)
}

/// A fixed instance where a misprinted variant of a closed form disagrees with the algebra.
pub struct MisprintCase {
    pub site: &'static str,
    pub a: Mat4,
    pub implemented: Mat4,
    pub misprinted: Mat4,
}

/// Perskewsymmetric: `(X+Y)² = (‖p‖² + α²)` taken literally for the `p⊗i + α(j⊗1)` group.
pub fn misprint_perskew_sign() -> MisprintCase {
    let (p, alpha, q, beta) = ([0.7, 0.4], 0.5, [0.3, -0.6], 0.2);
    let g1 = term(p[0], 1, 1) + term(p[1], 3, 1) + term(alpha, 2, 0);
    let g2 = term(q[0], 2, 2) + term(q[1], 2, 3) + term(beta, 0, 1);
    let lambda = (p[0] * p[0] + p[1] * p[1] + alpha * alpha).sqrt();
    MisprintCase {
        site: "perskew group square sign",
        a: g1 + g2,
        implemented: st::exp_perskewsymmetric(p, alpha, q, beta).unwrap(),
        misprinted: hyperbolic_group_exp(&g1, lambda) * oracle(&g2),
    }
}

/// Tridiagonal Toeplitz: `(Z+W)² = c²` with `c = (√5/4) b` taken literally.
pub fn misprint_toeplitz_constant() -> MisprintCase {
    let (a, b): (f64, f64) = (0.2, 1.1);
    let x = term(b / 2.0, 2, 1);
    let zw = term(b / 2.0, 1, 2) + term(b, 3, 2);
    let c = 5f64.sqrt() / 4.0 * b;
    let m = toeplitz(a, b, 0.0);
    MisprintCase {
        site: "toeplitz group constant",
        a: m,
        implemented: st::exp_sym_toeplitz_tridiag(a, b).unwrap(),
        misprinted: hyperbolic_group_exp(&x, b / 2.0) * hyperbolic_group_exp(&zw, c) * a.exp(),
    }
}

/// Bisymmetric `RS`: `e^{μR}` taken literally as `cosh μ I + (sinh μ/μ) R`.
pub fn misprint_bisymmetric_mu_factor() -> MisprintCase {
    let bs = BisymmetricRs { a: 0.6, eps: 0.4, alpha: 0.5, beta: -0.3, gamma: 0.2, delta: 0.7 };
    let r = term(1.0, 2, 1);
    let s = term(bs.a, 0, 0)
        + term(bs.eps, 2, 1)
        + action(pure([bs.alpha, 0.0, bs.beta]), pure([0.0, bs.gamma, bs.delta]));
    let implemented = st::exp_bisymmetric_rs(&bs).unwrap();
    let mu: f64 = bs.a;
    let undo = Mat4::identity() * mu.cosh() - r * mu.sinh();
    let literal = Mat4::identity() * mu.cosh() + r * (mu.sinh() / mu);
    MisprintCase {
        site: "bisymmetric mu factor",
        a: r * s,
        implemented,
        misprinted: literal * undo * implemented,
    }
}

pub fn misprint_cases() -> [MisprintCase; 3] {
    [misprint_perskew_sign(), misprint_toeplitz_constant(), misprint_bisymmetric_mu_factor()]
}
