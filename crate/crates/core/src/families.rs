//! H⊗H support layouts of the five Jordan and eight Lie classes.
//!
//! A Jordan class is `a(1⊗1) + v-term + b-term + c-term`: every non-scalar
//! term anticommutes with every other, so their sum squares to a scalar. A
//! Lie class splits into two groups that commute with each other and
//! anticommute internally. The skew-Hamiltonian and perskewsymmetric families
//! have the same shapes and reuse these layouts.

use crate::hxh::{HxH, Unit};
use crate::scalar::Scalar;

use Unit::{One, I, J, K};

/// Which tensor factor carries the free vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `v⊗e`
    Left,
    /// `e⊗v`
    Right,
}

/// Vector term `v⊗fixed` or `fixed⊗v` with `v` ranging over `span`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VectorTerm {
    pub side: Side,
    pub fixed: Unit,
    pub span: &'static [Unit],
}

impl VectorTerm {
    pub const fn slot(&self, u: Unit) -> (Unit, Unit) {
        match self.side {
            Side::Left => (u, self.fixed),
            Side::Right => (self.fixed, u),
        }
    }

    pub fn slots(&self) -> impl Iterator<Item = (Unit, Unit)> + '_ {
        self.span.iter().map(move |&u| self.slot(u))
    }

    /// Coefficients of `u` along the span, in span order.
    pub fn read<T: Scalar>(&self, u: &HxH<T>) -> Vec<T> {
        self.slots().map(|(a, b)| u.coeff(a, b)).collect()
    }

    pub fn element<T: Scalar>(&self, coeffs: &[T]) -> HxH<T> {
        let mut out = HxH::zero();
        for ((a, b), &v) in self.slots().zip(coeffs) {
            out.set(a, b, v);
        }
        out
    }

    /// Label such as `p⊗k` or `i⊗q`.
    pub fn label(&self, name: &str) -> String {
        match self.side {
            Side::Left => format!("{name}⊗{}", self.fixed),
            Side::Right => format!("{}⊗{name}", self.fixed),
        }
    }
}

const PURE: &[Unit] = &[I, J, K];

/// `a(1⊗1) + v-term + b·e_b + c·e_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JordanLayout {
    pub vector: VectorTerm,
    pub b: (Unit, Unit),
    pub c: (Unit, Unit),
}

const fn left(fixed: Unit, span: &'static [Unit]) -> VectorTerm {
    VectorTerm { side: Side::Left, fixed, span }
}

const fn right(fixed: Unit, span: &'static [Unit]) -> VectorTerm {
    VectorTerm { side: Side::Right, fixed, span }
}

pub const JORDAN: [JordanLayout; 5] = [
    JordanLayout { vector: left(K, PURE), b: (One, I), c: (One, J) },
    JordanLayout { vector: left(I, PURE), b: (One, J), c: (One, K) },
    JordanLayout { vector: right(I, PURE), b: (J, One), c: (K, One) },
    JordanLayout { vector: right(J, PURE), b: (I, One), c: (K, One) },
    JordanLayout { vector: right(K, PURE), b: (I, One), c: (J, One) },
];

/// `b(1⊗1) + p⊗j + 1⊗(ci + dk)`.
pub const SKEW_HAMILTONIAN: JordanLayout = JordanLayout {
    vector: left(J, PURE),
    b: (One, I),
    c: (One, K),
};

/// `p-term + a·e_a + q-term + b·e_b`, split into two commuting groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LieLayout {
    pub p: VectorTerm,
    pub a: (Unit, Unit),
    pub q: VectorTerm,
    pub b: (Unit, Unit),
    /// The `p` terms share a group with `a` (otherwise with `b`).
    pub p_with_a: bool,
}

pub const LIE: [LieLayout; 8] = [
    LieLayout { p: left(I, &[J, K]), a: (One, I), q: right(I, &[J, K]), b: (I, One), p_with_a: false },
    LieLayout { p: left(J, &[I, K]), a: (J, One), q: right(J, &[I, K]), b: (One, J), p_with_a: true },
    LieLayout { p: left(K, &[I, J]), a: (K, One), q: right(K, &[I, J]), b: (One, K), p_with_a: true },
    LieLayout { p: left(I, &[I, J]), a: (K, One), q: right(K, &[J, K]), b: (One, I), p_with_a: true },
    LieLayout { p: left(J, &[I, J]), a: (K, One), q: right(K, &[I, K]), b: (One, J), p_with_a: true },
    LieLayout { p: left(J, &[J, K]), a: (One, J), q: right(I, &[I, K]), b: (I, One), p_with_a: false },
    LieLayout { p: left(K, &[J, K]), a: (I, One), q: right(I, &[I, J]), b: (One, K), p_with_a: true },
    LieLayout { p: left(K, &[I, K]), a: (J, One), q: right(J, &[I, J]), b: (One, K), p_with_a: true },
];

/// `p⊗i + α(j⊗1) + j⊗q + β(1⊗i)`, p ∈ span{i,k}, q ∈ span{j,k}.
pub const PERSKEW: LieLayout = LieLayout {
    p: left(I, &[I, K]),
    a: (J, One),
    q: right(J, &[J, K]),
    b: (One, I),
    p_with_a: true,
};

/// Parameters of a two-group layout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LieParams<T = f64> {
    pub p: [T; 2],
    pub a: T,
    pub q: [T; 2],
    pub b: T,
}

impl LieLayout {
    pub fn read<T: Scalar>(&self, u: &HxH<T>) -> LieParams<T> {
        let p = self.p.read(u);
        let q = self.q.read(u);
        LieParams {
            p: [p[0], p[1]],
            a: u.coeff(self.a.0, self.a.1),
            q: [q[0], q[1]],
            b: u.coeff(self.b.0, self.b.1),
        }
    }

    /// The two commuting groups; each squares to a scalar.
    pub fn groups<T: Scalar>(&self, params: &LieParams<T>) -> [HxH<T>; 2] {
        let p = self.p.element(&params.p);
        let q = self.q.element(&params.q);
        let a = HxH::term(params.a, self.a.0, self.a.1);
        let b = HxH::term(params.b, self.b.0, self.b.1);
        if self.p_with_a {
            [p + a, q + b]
        } else {
            [p + b, q + a]
        }
    }

    pub fn element<T: Scalar>(&self, params: &LieParams<T>) -> HxH<T> {
        let [g, h] = self.groups(params);
        g + h
    }
}

/// Parameters of a Jordan layout; `v` is the coefficient vector of the vector term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JordanParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub v: [f64; 3],
}

impl JordanLayout {
    pub fn read(&self, u: &HxH<f64>) -> JordanParams {
        let v = self.vector.read(u);
        JordanParams {
            a: u.scalar_part(),
            b: u.coeff(self.b.0, self.b.1),
            c: u.coeff(self.c.0, self.c.1),
            v: [v[0], v[1], v[2]],
        }
    }

    /// The non-scalar part, which squares to a scalar.
    pub fn group(&self, params: &JordanParams) -> HxH<f64> {
        self.vector.element(&params.v)
            + HxH::term(params.b, self.b.0, self.b.1)
            + HxH::term(params.c, self.c.0, self.c.1)
    }

    pub fn element(&self, params: &JordanParams) -> HxH<f64> {
        HxH::scalar(params.a) + self.group(params)
    }
}
