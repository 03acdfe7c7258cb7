//! Human-readable numbers: six significant digits, `%g` style.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::document::Matrix;

const DIGITS: i32 = 6;

pub fn real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Exponent after rounding, so 999999.5 prints as 1e+06 rather than 1000000.
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("`{:e}` always has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn complex(z: Complex64) -> String {
    if z.im == 0.0 {
        real(z.re)
    } else if z.re == 0.0 {
        format!("{}i", real(z.im))
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", real(z.re), real(z.im.abs()))
    }
}

fn grid(cells: Vec<Vec<String>>) -> String {
    let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let line: Vec<_> = row.iter().map(|s| format!("{s:>width$}")).collect();
        out.push_str("  ");
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

pub fn matrix(m: &Matrix) -> String {
    match m {
        Matrix::Real(a) => real_matrix(a),
        Matrix::Complex(a) => grid(rows(a, |z| complex(*z))),
    }
}

pub fn real_matrix(a: &DMatrix<f64>) -> String {
    grid(rows(a, |x| real(*x)))
}

fn rows<T>(a: &DMatrix<T>, f: impl Fn(&T) -> String) -> Vec<Vec<String>> {
    (0..a.nrows()).map(|r| (0..a.ncols()).map(|c| f(&a[(r, c)])).collect()).collect()
}
