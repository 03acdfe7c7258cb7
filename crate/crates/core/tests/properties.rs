mod common;

use common::*;
use nalgebra::{DMatrix, Matrix2, Matrix3};
use num_complex::Complex64;
use proptest::prelude::*;
use structexp::covering::{gram, phi, psi, Mat2C};
use structexp::hxh::{basis_matrix, i22, r4};
use structexp::quat::{quat_exp, quat_mul};
use structexp::smalllin::{expm2, phi_c, phi_s, svd3, sym_eig3};
use structexp::structured::{minimal_poly_skew, MinimalPoly};
use structexp::{
    classify, exp_via_covering, expm_auto, expm_series, psi_inverse, rel_error, ClassTag, CoveringAlgebra,
    ExpOptions, HxH, Mat4, Method, OracleConfig, Quaternion, Unit, DEFAULT_TOL,
};

fn cfg() -> OracleConfig {
    OracleConfig::default()
}

fn coord() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(coord()).prop_map(Quaternion::from_array)
}

fn pure_q(radius: f64) -> impl Strategy<Value = Quaternion> {
    prop::array::uniform3(-radius..radius).prop_map(|v| Quaternion::pure(v[0], v[1], v[2]))
}

fn hxh() -> impl Strategy<Value = HxH<f64>> {
    prop::array::uniform16(coord()).prop_map(|c| HxH::from_matrix(&Mat4::from_row_slice(&c)))
}

fn mat3() -> impl Strategy<Value = Matrix3<f64>> {
    prop::array::uniform9(coord()).prop_map(|c| Matrix3::from_row_slice(&c))
}

fn cplx(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| Complex64::new(re, im))
}

fn tag_for(sample: &str) -> ClassTag {
    let name = match sample {
        "special-normal-t-only" => "special-normal",
        "bisymmetric" => "symmetric",
        other => other,
    };
    name.parse().unwrap()
}

fn sample_name() -> impl Strategy<Value = String> {
    prop::sample::select(all_sample_names())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn quat_exp_of_pure_is_unit(p in pure_q(10.0)) {
        prop_assert!((quat_exp(p).norm() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn quat_exp_inverse(p in quaternion().prop_filter("‖p‖ ≤ 10", |p| p.norm() <= 10.0)) {
        let prod = quat_mul(quat_exp(p), quat_exp(p.scale(-1.0)));
        prop_assert!((prod + Quaternion::ONE.scale(-1.0)).norm() <= 1e-13);
    }

    #[test]
    fn quat_exp_additive_on_commuting(a0 in coord(), b0 in coord(), dir in pure_q(1.0), s in coord(), t in coord()) {
        let a = Quaternion::ONE.scale(a0) + dir.scale(s);
        let b = Quaternion::ONE.scale(b0) + dir.scale(t);
        let lhs = quat_exp(a + b);
        let rhs = quat_mul(quat_exp(a), quat_exp(b));
        prop_assert!((lhs + rhs.scale(-1.0)).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn hxh_homomorphism(u in hxh(), v in hxh()) {
        let lhs = (u * v).to_matrix();
        let rhs = u.to_matrix() * v.to_matrix();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + u.norm() * v.norm()));
    }

    #[test]
    fn hxh_round_trip(c in prop::array::uniform16(coord())) {
        let m = Mat4::from_row_slice(&c);
        prop_assert!((HxH::from_matrix(&m).to_matrix() - m).norm() <= 1e-14 * (1.0 + m.norm()));
        let u = HxH::from_matrix(&m);
        prop_assert!((HxH::from_matrix(&u.to_matrix()) - u).norm() <= 1e-14 * (1.0 + u.norm()));
    }

    #[test]
    fn hxh_agrees_with_quaternion_action(p in quaternion(), q in quaternion()) {
        let m = HxH::tensor(p, q).to_matrix();
        prop_assert!((m - action(p.to_array(), q.to_array())).norm() <= 1e-13 * (1.0 + p.norm() * q.norm()));
    }

    #[test]
    fn skew_and_symmetric_supports(c in prop::array::uniform16(coord())) {
        let m = Mat4::from_row_slice(&c);
        let skew = HxH::from_matrix(&(m - m.transpose()));
        let sym = HxH::from_matrix(&(m + m.transpose()));
        for a in Unit::ALL {
            for b in Unit::ALL {
                let pure_pair = a != Unit::One && b != Unit::One;
                let skew_slot = (a == Unit::One) != (b == Unit::One);
                if !skew_slot {
                    prop_assert!(skew.coeff(a, b).abs() <= 1e-13);
                }
                if skew_slot {
                    prop_assert!(sym.coeff(a, b).abs() <= 1e-13);
                }
                let _ = pure_pair;
            }
        }
    }

    #[test]
    fn expm2_matches_oracle_real(c in prop::array::uniform4(-2.5..2.5f64)) {
        let a = Matrix2::from_row_slice(&c);
        prop_assume!(a.norm() <= 5.0);
        prop_assert!(rel_error(&expm2(&a), &expm_series(&a, &cfg()).unwrap()) <= 1e-13);
    }

    #[test]
    fn expm2_matches_oracle_complex(c in prop::array::uniform4(cplx(1.7))) {
        let a = Matrix2::from_row_slice(&c);
        prop_assume!(a.norm() <= 5.0);
        prop_assert!(rel_error(&expm2(&a), &expm_series(&a, &cfg()).unwrap()) <= 1e-13);
    }

    #[test]
    fn svd3_reconstructs(m in mat3()) {
        let d = svd3(&m);
        prop_assert!((d.reconstruct() - m).norm() <= 1e-11 * (1.0 + m.norm()));
        prop_assert!((d.u.transpose() * d.u - Matrix3::identity()).norm() <= 1e-12);
        prop_assert!((d.v.transpose() * d.v - Matrix3::identity()).norm() <= 1e-12);
        prop_assert!(d.sigma.iter().all(|&s| s >= 0.0));
        prop_assert!(d.sigma[0] >= d.sigma[1] && d.sigma[1] >= d.sigma[2]);
    }

    #[test]
    fn sym_eig3_reconstructs(m in mat3()) {
        let s = m + m.transpose();
        let e = sym_eig3(&s).unwrap();
        prop_assert!((e.reconstruct() - s).norm() <= 1e-11 * (1.0 + s.norm()));
        prop_assert!((e.vectors.transpose() * e.vectors - Matrix3::identity()).norm() <= 1e-12);
        prop_assert!(e.values[0] >= e.values[1] && e.values[1] >= e.values[2]);
    }

    #[test]
    fn phi_identity(x in -100.0..100.0f64) {
        let (c, s) = (phi_c(x), phi_s(x));
        // Both sides are O(cosh²√|x|) for negative x; measure against that scale.
        let scale = c * c + x.abs() * s * s;
        prop_assert!((c * c + x * s * s - 1.0).abs() <= 1e-12 * scale);
    }

    #[test]
    fn oracle_inverse(seed in any::<u64>()) {
        let a = random_matrix(&mut rng(seed), 10.0);
        let e = oracle(&a);
        let f = oracle(&(-a));
        let scale = e.norm() * f.norm();
        prop_assert!((e * f - Mat4::identity()).norm() <= 1e-12 * scale);
    }

    #[test]
    fn oracle_transpose(seed in any::<u64>()) {
        let a = random_matrix(&mut rng(seed), 10.0);
        prop_assert!(rel_error(&oracle(&a.transpose()), &oracle(&a).transpose()) <= 1e-13);
    }

    #[test]
    fn closed_form_matches_oracle(name in sample_name(), seed in any::<u64>()) {
        let s = sample(&name, &mut rng(seed));
        prop_assert!(rel_error(&s.closed, &oracle(&s.a)) <= 1e-10, "{name}");
    }

    #[test]
    fn semigroup(name in sample_name(), seed in any::<u64>()) {
        let s = sample(&name, &mut rng(seed));
        let opts = ExpOptions::default();
        let method = Method::Class(tag_for(&name));
        let e1 = expm_auto(&s.a, &method, &opts).unwrap().value;
        let e2 = expm_auto(&(s.a * 2.0), &method, &opts).unwrap().value;
        prop_assert!(rel_error(&(e1 * e1), &e2) <= 1e-10, "{name}");
    }

    #[test]
    fn classify_finds_class(name in sample_name(), seed in any::<u64>()) {
        let s = sample(&name, &mut rng(seed));
        let tag = tag_for(&name);
        let found = classify(&s.a, DEFAULT_TOL);
        let class = found.iter().find(|c| c.tag() == tag);
        prop_assert!(class.is_some(), "{name}: {:?}", found.iter().map(|c| c.tag()).collect::<Vec<_>>());
        let back = class.unwrap().reconstruct().map(|z| z.re);
        prop_assert!((back - s.a).norm() <= 1e-12 * (1.0 + s.a.norm()), "{name}");
    }

    #[test]
    fn classify_rejects_perturbed(name in sample_name(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = sample(&name, &mut r);
        let tag = tag_for(&name);
        let noise = random_matrix(&mut r, 1.0);
        let noisy = s.a + noise * (10.0 * DEFAULT_TOL * s.a.norm() / noise.norm());
        let found: Vec<_> = classify(&noisy, DEFAULT_TOL).iter().map(|c| c.tag()).collect();
        prop_assert!(!found.contains(&tag), "{name}: {found:?}");
    }

    #[test]
    fn toeplitz_and_hsp_are_symmetric(which in 0..3usize, seed in any::<u64>()) {
        let name = ["toeplitz-tridiag", "toeplitz-s13", "ham-sym-persym"][which];
        let s = sample(name, &mut rng(seed));
        let tags: Vec<_> = classify(&s.a, DEFAULT_TOL).iter().map(|c| c.tag()).collect();
        prop_assert!(tags.contains(&ClassTag::SymmetricGeneral), "{name}: {tags:?}");
    }

    #[test]
    fn structure_preservation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let skew = sample("skew-symmetric", &mut r).closed;
        prop_assert!((skew.transpose() * skew - Mat4::identity()).norm() <= 1e-11);
        prop_assert!((skew.determinant() - 1.0).abs() <= 1e-11);

        let lie1 = sample("lie1", &mut r).closed;
        let scale = lie1.norm_squared();
        prop_assert!((lie1.transpose() * i22() * lie1 - i22()).norm() <= 1e-11 * scale);

        let per = sample("perskew", &mut r).closed;
        let scale = per.norm_squared();
        prop_assert!((per.transpose() * r4() * per - r4()).norm() <= 1e-11 * scale);

        let sym = sample("symmetric", &mut r).closed;
        prop_assert!((sym - sym.transpose()).norm() <= 1e-11 * sym.norm());
        prop_assert!(sym.cholesky().is_some());
    }

    #[test]
    fn covering_homomorphism(alg in prop::sample::select(CoveringAlgebra::ALL.to_vec()), seed in any::<u64>(), t in -2.0..2.0f64) {
        let a = algebra_element(alg, seed, 1.0);
        let lhs = exp_via_covering(alg, &(&a * (1.0 + t)), 1e-9).unwrap();
        let rhs = exp_via_covering(alg, &a, 1e-9).unwrap() * exp_via_covering(alg, &(&a * t), 1e-9).unwrap();
        prop_assert!(rel_error(&lhs, &rhs) <= 1e-10, "{alg}");
        let dim = alg.dim();
        let oracle = structexp::oracle::expm_series_dyn(&a, &cfg()).unwrap();
        prop_assert!(rel_error(&exp_via_covering(alg, &a, 1e-9).unwrap(), &oracle) <= 1e-10, "{alg} n={dim}");
    }

    #[test]
    fn covering_preserves_form(alg in prop::sample::select(CoveringAlgebra::ALL.to_vec()), seed in any::<u64>()) {
        let a = algebra_element(alg, seed, 1.0);
        let g = exp_via_covering(alg, &a, 1e-9).unwrap();
        let m = gram(alg);
        let scale = g.norm_squared() * m.norm();
        prop_assert!((g.transpose() * &m * &g - &m).norm() <= 1e-11 * scale, "{alg}");
    }

    #[test]
    fn psi_is_lie_homomorphism(alg in prop::sample::select(CoveringAlgebra::ALL.to_vec()), s1 in any::<u64>(), s2 in any::<u64>()) {
        let (g1, h1) = domain_pair(alg, s1, 1.0);
        let (g2, h2) = domain_pair(alg, s2, 1.0);
        let br = |x: &Mat2C, y: &Mat2C| x * y - y * x;
        let lhs = psi(alg, &br(&g1, &g2), &br(&h1, &h2));
        let (p1, p2) = (psi(alg, &g1, &h1), psi(alg, &g2, &h2));
        let rhs = &p1 * &p2 - &p2 * &p1;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + p1.norm() * p2.norm()), "{alg}");
    }

    #[test]
    fn psi_inverse_round_trip(alg in prop::sample::select(CoveringAlgebra::ALL.to_vec()), seed in any::<u64>()) {
        let (g, h) = domain_pair(alg, seed, 1.0);
        let a = psi(alg, &g, &h);
        let (g2, h2) = psi_inverse(alg, &a, 1e-9).unwrap();
        prop_assert!((g2 - g).norm() <= 1e-12 && (h2 - h).norm() <= 1e-12, "{alg}");
    }

    #[test]
    fn covering_sign_ambiguity(alg in prop::sample::select(CoveringAlgebra::ALL.to_vec()), seed in any::<u64>()) {
        let (g, h) = domain_pair(alg, seed, 1.0);
        let (gg, hh) = (expm2(&g), expm2(&h));
        let lhs = phi(alg, &(-gg), &(-hh));
        prop_assert!((lhs - phi(alg, &gg, &hh)).norm() <= 1e-13 * (1.0 + phi(alg, &gg, &hh).norm()));
    }

    #[test]
    fn quartic_annihilates(s in pure_q(3.0), t in pure_q(3.0)) {
        let tm = HxH::tensor(s, Quaternion::ONE).to_matrix() + HxH::tensor(Quaternion::ONE, t).to_matrix();
        let mp = minimal_poly_skew(s, t, 1e-9);
        let res = MinimalPoly::evaluate(&mp.quartic, &tm).norm();
        prop_assert!(res <= 1e-10 * tm.norm().powi(4).max(1.0));
        let res_min = MinimalPoly::evaluate(&mp.minimal, &tm).norm();
        prop_assert!(res_min <= 1e-10 * tm.norm().powi(4).max(1.0));
        prop_assert_eq!(mp.degree, 4);
    }

    #[test]
    fn degree_drops_at_loci(s in pure_q(3.0), dir in pure_q(1.0)) {
        prop_assume!(s.norm() > 1e-3 && dir.norm() > 1e-3);
        let zero = Quaternion::ZERO;
        let equal = dir.scale(s.norm() / dir.norm());
        let cases = [(zero, s, 2), (s, zero, 2), (s, equal, 3), (zero, zero, 1)];
        for (p, q, want) in cases {
            let mp = minimal_poly_skew(p, q, 1e-9);
            prop_assert_eq!(mp.degree, want);
            let tm = HxH::tensor(p, Quaternion::ONE).to_matrix() + HxH::tensor(Quaternion::ONE, q).to_matrix();
            let res = MinimalPoly::evaluate(&mp.minimal, &tm).norm();
            prop_assert!(res <= 1e-10 * tm.norm().powi(4).max(1.0));
        }
    }
}

fn domain_pair(alg: CoveringAlgebra, seed: u64, radius: f64) -> (Mat2C, Mat2C) {
    let mut r = rng(seed);
    let basis = alg.domain_basis();
    let k = basis.len();
    let v = ball(&mut r, 2 * k, radius);
    let combine = |off: usize| {
        basis.iter().enumerate().fold(Mat2C::zeros(), |acc, (n, e)| acc + e * Complex64::new(v[off + n], 0.0))
    };
    let g = combine(0);
    let h = if alg.two_factor() { combine(k) } else { g };
    (g, h)
}

fn algebra_element(alg: CoveringAlgebra, seed: u64, radius: f64) -> DMatrix<f64> {
    let (g, h) = domain_pair(alg, seed, radius);
    psi(alg, &g, &h)
}

#[test]
fn basis_is_orthogonal() {
    for a in Unit::ALL {
        for b in Unit::ALL {
            for c in Unit::ALL {
                for d in Unit::ALL {
                    let ip = basis_matrix(a, b).dot(&basis_matrix(c, d));
                    let want = if a == c && b == d { 4.0 } else { 0.0 };
                    assert_eq!(ip, want);
                }
            }
        }
    }
}

#[test]
fn psi_is_isomorphism_on_basis() {
    // Injective: the matrix of (g, h) ↦ ψ(g, h) has full column rank.
    for alg in CoveringAlgebra::ALL {
        let domain = alg.domain_basis();
        let zero = Mat2C::zeros();
        let mut gens: Vec<(Mat2C, Mat2C)> = domain.iter().map(|e| (*e, zero)).collect();
        if alg.two_factor() {
            gens.extend(domain.iter().map(|e| (zero, *e)));
        }
        let cols: Vec<_> = gens
            .iter()
            .map(|(g, h)| nalgebra::DVector::from_column_slice(psi(alg, g, h).as_slice()))
            .collect();
        let m = DMatrix::from_columns(&cols);
        assert_eq!(m.rank(1e-10), gens.len(), "{alg}");
        let n = alg.dim();
        assert_eq!(gens.len(), n * (n - 1) / 2, "{alg}");
    }
}

#[test]
fn expm_series_agrees_with_expm2_on_grid() {
    for k in 0..50 {
        let x = f64::from(k) * 0.1 - 2.5;
        let a = Matrix2::new(x, 1.0 - x, 0.5 * x, -0.3);
        assert!(rel_error(&expm2(&a), &expm_series(&a, &cfg()).unwrap()) <= 1e-13);
    }
}
