use gelfand_core::dirlim::*;
use gelfand_core::numerics::exact::rat;
use gelfand_core::numerics::Tolerances;
use gelfand_core::Error;
use num_rational::BigRational;
use proptest::prelude::*;

/// Number of degree-`d` monomials in `n` variables by direct enumeration.
fn count_monomials(n: usize, d: usize) -> i64 {
    if n == 1 {
        return 1;
    }
    (0..=d).map(|e| count_monomials(n - 1, d - e)).sum()
}

fn exact(n: i64, d: i64) -> Scalar {
    Scalar::Exact(rat(n, d))
}

fn invariant_fn(backend: Backend, level: usize, coeffs: &[(usize, Scalar)]) -> LadderedFunction {
    LadderedFunction::new(backend, level, true, coeffs.iter().map(|(i, a)| (vec![*i], a.clone())).collect())
}

#[test]
fn unitary_ladder_constants_and_squares() {
    for d in 0..=4 {
        let ladder = un_polynomial_ladder(&[1, 2, 3, 4, 5], d).unwrap();
        assert!(ladder.is_exact());
        for m in 1..=5 {
            for n in 1..=m {
                let oracle = rat(count_monomials(n, d), count_monomials(m, d));
                assert_eq!(ladder.c_sq_of(m, n).unwrap(), Scalar::Exact(oracle.clone()));
                assert_eq!(un_projection_constant_sq(m, n, d), oracle);
                let sq = ladder.verify_commuting_square(m, n).unwrap();
                assert_eq!(sq.plain, Scalar::Exact(BigRational::from_integer(0.into())));
                assert_eq!(sq.tilde, Scalar::Exact(BigRational::from_integer(0.into())));
            }
        }
        assert_eq!(ladder.cocycle_residual(), exact(0, 1));
    }
    // d = 1: c(m,n)² = n/m; d = 2, (2,3): 1/2; d = 0: c = 1
    let l1 = un_polynomial_ladder(&[2, 3, 7], 1).unwrap();
    assert_eq!(l1.c_sq_of(7, 3).unwrap(), exact(3, 7));
    let l2 = un_polynomial_ladder(&[2, 3], 2).unwrap();
    assert_eq!(l2.c_sq_of(3, 2).unwrap(), exact(1, 2));
    let l0 = un_polynomial_ladder(&[1, 4], 0).unwrap();
    assert_eq!(l0.c_sq_of(4, 1).unwrap(), exact(1, 1));
}

#[test]
fn sphere_cocycles() {
    let levels = [2, 3, 4, 5];
    for d in 0..=4 {
        let ex = sphere_ladder(&levels, d, SphereConstants::Exact).unwrap();
        assert_eq!(ex.cocycle_residual(), exact(0, 1), "d = {d}");
        for source in [SphereConstants::Quadrature, SphereConstants::Gegenbauer] {
            let l = sphere_ladder(&levels, d, source).unwrap();
            assert!(l.cocycle_residual().to_f64() <= 1e-9, "d = {d} {source:?}");
            for (i, &m) in levels.iter().enumerate() {
                for &n in &levels[..=i] {
                    assert!(l.verify_commuting_square(m, n).unwrap().passes(1e-9));
                    let c = l.c_sq_of(m, n).unwrap().to_f64();
                    assert!(c > 0.0 && c <= 1.0 + 1e-12);
                }
            }
        }
    }
}

#[test]
fn promotion_consistency() {
    let tol = Tolerances::default();
    let f_coeffs = [(0, exact(3, 2)), (1, exact(-1, 3))];
    let g_coeffs = [(0, exact(1, 1)), (1, exact(2, 5))];
    for d in 1..=3 {
        let l = un_polynomial_ladder(&[2, 3, 4], d).unwrap();
        let f = invariant_fn(Backend::Unitary, 2, &f_coeffs);
        let g = invariant_fn(Backend::Unitary, 2, &g_coeffs);
        let f3 = apply_nu(&l, &f, 3).unwrap();
        let g3 = apply_nu(&l, &g, 3).unwrap();
        let base = limit_inner_product(&l, &f, &g).unwrap();
        assert!(base.is_exact());
        assert_eq!(limit_inner_product(&l, &f3, &g3).unwrap(), base);
        let f4 = apply_nu(&l, &f3, 4).unwrap();
        let g4 = apply_nu(&l, &g3, 4).unwrap();
        assert_eq!(limit_inner_product(&l, &f4, &g4).unwrap(), base);
        assert_eq!(promotion_residual(&l, &f, &g, 4).unwrap(), exact(0, 1));
    }
    for d in 1..=4 {
        let l = sphere_ladder(&[2, 3, 4, 5], d, SphereConstants::Quadrature).unwrap();
        let f = invariant_fn(Backend::Sphere, 2, &[(0, Scalar::Float(0.7)), (2, Scalar::Float(-1.1))]);
        let g = invariant_fn(Backend::Sphere, 2, &[(0, Scalar::Float(0.3)), (2, Scalar::Float(0.4))]);
        for m in [3, 4, 5] {
            assert!(promotion_residual(&l, &f, &g, m).unwrap().to_f64() <= 1e-9);
        }
    }
    for t in [0.5, 1.0, 2.0, -1.0] {
        let l = heisenberg_ladder(&[1, 2, 3], t, true, &tol).unwrap();
        let d1 = l.deg_of(1).unwrap().to_f64();
        assert!((d1 * std::f64::consts::PI / t.abs() - 1.0).abs() < 1e-8);
        let f = invariant_fn(Backend::Heisenberg, 1, &[(0, Scalar::Float(1.5)), (3, Scalar::Float(0.25))]);
        let g = invariant_fn(Backend::Heisenberg, 1, &[(0, Scalar::Float(-0.5)), (3, Scalar::Float(2.0))]);
        for m in [2, 3] {
            assert!(promotion_residual(&l, &f, &g, m).unwrap().to_f64() <= 1e-9);
        }
    }
}

#[test]
fn zeta_is_isometric_and_nu_inverts_restriction() {
    let l = un_polynomial_ladder(&[1, 2, 3], 2).unwrap();
    let f = LadderedFunction::new(
        Backend::Unitary,
        1,
        false,
        vec![(vec![0, 0], exact(2, 1))],
    );
    let up = apply_zeta(&l, &f, 3).unwrap();
    assert_eq!(l2_norm_sq(&l, &up).unwrap(), l2_norm_sq(&l, &f).unwrap());
    assert_eq!(apply_zeta(&l, &f, 1).unwrap(), f);
    let inv = invariant_fn(Backend::Unitary, 2, &[(0, exact(1, 3)), (2, exact(5, 1))]);
    let promoted = apply_nu(&l, &inv, 3).unwrap();
    assert_eq!(restrict(&l, &promoted, 2).unwrap(), inv);
    assert_eq!(apply_nu(&l, &inv, 2).unwrap(), inv);
    // the tilde maps contract, strictly unless c = 1
    assert!(l.tilde_zeta_scale(3, 2).unwrap().value() < l.zeta_scale(3, 2).unwrap().value());
    let h = heisenberg_ladder(&[1, 2, 5], 2.0, false, &Tolerances::default()).unwrap();
    assert_eq!(h.tilde_zeta_scale(5, 1).unwrap(), h.zeta_scale(5, 1).unwrap());
    assert!((h.zeta_scale(5, 2).unwrap().value() - 2f64.powf(1.5)).abs() < 1e-12);
}

#[test]
fn errors() {
    let l = un_polynomial_ladder(&[1, 2, 3], 1).unwrap();
    let s = invariant_fn(Backend::Sphere, 2, &[(0, exact(1, 1))]);
    assert!(matches!(limit_inner_product(&l, &s, &s), Err(Error::BackendMismatch(..))));
    let f = invariant_fn(Backend::Unitary, 3, &[(0, exact(1, 1))]);
    assert!(matches!(apply_nu(&l, &f, 2), Err(Error::LevelOrder { .. })));
    assert!(matches!(apply_nu(&l, &f, 9), Err(Error::MissingLevel(9))));
    let wide = invariant_fn(Backend::Unitary, 1, &[(4, exact(1, 1))]);
    assert!(apply_nu(&l, &wide, 2).is_err());
    let single = un_polynomial_ladder(&[4], 3).unwrap();
    assert!(single.verify_commuting_square(4, 4).unwrap().passes(0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn limit_inner_product_is_positive_and_promotable(
        coeffs in proptest::collection::vec((-20i64..20, 1i64..6), 1..4),
        d in 1usize..4,
    ) {
        let l = un_polynomial_ladder(&[3, 4, 6], d).unwrap();
        let f = invariant_fn(
            Backend::Unitary,
            3,
            &coeffs.iter().enumerate().map(|(i, &(a, b))| (i, exact(a, b))).collect::<Vec<_>>(),
        );
        let ff = limit_inner_product(&l, &f, &f).unwrap();
        let all_zero = coeffs.iter().all(|&(a, _)| a == 0);
        prop_assert_eq!(ff.is_zero(), all_zero);
        prop_assert!(ff.to_f64() >= 0.0);
        prop_assert_eq!(promotion_residual(&l, &f, &f, 6).unwrap(), exact(0, 1));
    }
}
