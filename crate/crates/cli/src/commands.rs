//! The four subcommands, as functions from a parsed matrix to printed text.

use std::fmt::Write as _;

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;
use structexp::covering::membership_residual;
use structexp::oracle::expm_series_dyn;
use structexp::structured::member_algebras;
use structexp::{
    applicable_routes, classify_complex, expm, rel_error, ExpOptions, HxH, Method, OracleConfig, Route, Scalar,
    Unit,
};
use thiserror::Error;

use crate::document::{Matrix, MatrixDocument, ParseError};
use crate::format;

/// Largest residual against the oracle that `verify` accepts.
pub const VERIFY_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("`{command}` needs a 4x4 matrix, got {n}x{n}")]
    Shape { command: &'static str, n: usize },
    #[error(transparent)]
    Library(#[from] structexp::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use structexp::Error as E;
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Shape { .. } => 2,
            CliError::Library(E::Dimension { .. } | E::InvalidTolerance(_)) => 2,
            CliError::Library(E::Overflow { .. }) => 1,
            CliError::Library(_) => 3,
        }
    }
}

/// Scalars a [`Matrix`] can hold.
trait Entry: Scalar {
    fn wrap(m: DMatrix<Self>) -> Matrix;
}

impl Entry for f64 {
    fn wrap(m: DMatrix<f64>) -> Matrix {
        Matrix::Real(m)
    }
}

impl Entry for Complex64 {
    fn wrap(m: DMatrix<Complex64>) -> Matrix {
        Matrix::Complex(m)
    }
}

fn to_complex4(m: &Matrix) -> Option<Matrix4<Complex64>> {
    (m.n() == 4).then(|| match m {
        Matrix::Real(a) => Matrix4::from_fn(|r, c| Complex64::new(a[(r, c)], 0.0)),
        Matrix::Complex(a) => Matrix4::from_fn(|r, c| a[(r, c)]),
    })
}

pub fn classify(m: &Matrix, tol: f64) -> Result<String, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(structexp::Error::InvalidTolerance(tol).into());
    }
    let mut out = String::new();
    let mut found = 0;
    if let Some(a) = to_complex4(m) {
        for class in classify_complex(&a, tol) {
            found += 1;
            writeln!(out, "{}", class.tag()).unwrap();
            for (name, value) in class.params() {
                writeln!(out, "  {name} = {}", format::complex(value)).unwrap();
            }
        }
    }
    if m.n() == 2 {
        found += 1;
        writeln!(out, "expm2 (every 2x2 matrix)").unwrap();
    }
    if let Matrix::Real(a) = m {
        for alg in member_algebras(a, tol) {
            found += 1;
            let residual = membership_residual(alg, a)?;
            writeln!(out, "covering:{alg}").unwrap();
            writeln!(out, "  residual = {}", format::real(residual)).unwrap();
        }
    }
    if found == 0 {
        writeln!(out, "no structured class matched at tol {}", format::real(tol)).unwrap();
    }
    Ok(out)
}

fn expm_any<T: Entry>(a: &DMatrix<T>, method: &Method, tol: f64) -> Result<(Matrix, Route), CliError> {
    let opts = ExpOptions { tol, ..ExpOptions::default() };
    let r = expm(a, method, &opts)?;
    Ok((T::wrap(r.value), r.route))
}

/// `e^A` and the route taken, as text or as a JSON document.
pub fn expm_command(m: &Matrix, method: &Method, tol: f64, json: bool) -> Result<String, CliError> {
    let (value, route) = match m {
        Matrix::Real(a) => expm_any(a, method, tol)?,
        Matrix::Complex(a) => expm_any(a, method, tol)?,
    };
    if json {
        let doc = MatrixDocument::from_matrix(&value, Some(format!("exp via {route}")));
        return Ok(doc.to_json() + "\n");
    }
    Ok(format!("route: {route}\n{}", format::matrix(&value)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub all_routes: bool,
    /// Corrupt every closed-form value before it is compared.
    #[cfg(feature = "fault-injection")]
    pub inject_fault: bool,
}

/// One line of the `verify` table.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyRow {
    pub route: String,
    pub outcome: Result<f64, String>,
}

impl VerifyRow {
    pub fn passes(&self) -> bool {
        matches!(self.outcome, Ok(r) if r <= VERIFY_THRESHOLD)
    }
}

#[cfg(feature = "fault-injection")]
fn corrupt<T: Scalar>(mut v: DMatrix<T>) -> DMatrix<T> {
    let bump = 1e-3 * (1.0 + v.norm());
    v[(0, 0)] += T::of(bump);
    v
}

fn verify_rows<T: Scalar>(a: &DMatrix<T>, tol: f64, opts: VerifyOptions) -> Result<Vec<VerifyRow>, CliError> {
    let reference = expm_series_dyn(a, &OracleConfig::default())?;
    let routes = if opts.all_routes {
        applicable_routes(a, tol)?
    } else {
        let r = expm(a, &Method::Auto, &ExpOptions { tol, ..ExpOptions::default() })?;
        if r.route == Route::Oracle {
            Vec::new()
        } else {
            vec![(r.route, Ok(r.value))]
        }
    };
    Ok(routes
        .into_iter()
        .map(|(route, value)| {
            #[cfg(feature = "fault-injection")]
            let value = if opts.inject_fault { value.map(corrupt) } else { value };
            VerifyRow {
                route: route.to_string(),
                outcome: value.map(|v| rel_error(&v, &reference)).map_err(|e| e.to_string()),
            }
        })
        .collect())
}

/// Residual table against the oracle and whether every row passed.
pub fn verify(m: &Matrix, tol: f64, opts: VerifyOptions) -> Result<(String, bool), CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(structexp::Error::InvalidTolerance(tol).into());
    }
    let rows = match m {
        Matrix::Real(a) => verify_rows(a, tol, opts)?,
        Matrix::Complex(a) => verify_rows(a, tol, opts)?,
    };
    let width = rows.iter().map(|r| r.route.len()).chain([5]).max().unwrap_or(5);
    let mut out = String::new();
    writeln!(out, "{:<width$}  {:>12}  status", "route", "residual").unwrap();
    for row in &rows {
        let (residual, status) = match &row.outcome {
            Ok(r) => (format::real(*r), if row.passes() { "ok".to_string() } else { "FAIL".to_string() }),
            Err(e) => ("-".to_string(), format!("FAIL ({e})")),
        };
        writeln!(out, "{:<width$}  {residual:>12}  {status}", row.route).unwrap();
    }
    writeln!(out, "{:<width$}  {:>12}  reference", "oracle", "0").unwrap();
    let failed = rows.iter().filter(|r| !r.passes()).count();
    let ok = failed == 0;
    if rows.is_empty() {
        writeln!(out, "no closed-form route applies; nothing to compare").unwrap();
    } else if ok {
        writeln!(out, "{} route(s) agree with the oracle to {}", rows.len(), format::real(VERIFY_THRESHOLD)).unwrap();
    } else {
        writeln!(
            out,
            "{failed} of {} route(s) exceed residual {}",
            rows.len(),
            format::real(VERIFY_THRESHOLD)
        )
        .unwrap();
    }
    Ok((out, ok))
}

/// The sixteen coefficients `c_ab` of `A = Σ c_ab M_{e_a⊗e_b}`.
pub fn rep(m: &Matrix) -> Result<String, CliError> {
    let a = to_complex4(m).ok_or(CliError::Shape { command: "rep", n: m.n() })?;
    let mut out = String::new();
    match m {
        Matrix::Real(_) => {
            let u = HxH::from_matrix(&a.map(|z| z.re));
            write_coeffs(&mut out, |x, y| format::real(u.coeff(x, y)));
        }
        Matrix::Complex(_) => {
            let u = HxH::from_matrix(&a);
            write_coeffs(&mut out, |x, y| format::complex(u.coeff(x, y)));
        }
    }
    Ok(out)
}

fn write_coeffs(out: &mut String, coeff: impl Fn(Unit, Unit) -> String) {
    for x in Unit::ALL {
        for y in Unit::ALL {
            writeln!(out, "{}⊗{}  {}", x.label(), y.label(), coeff(x, y)).unwrap();
        }
    }
}
