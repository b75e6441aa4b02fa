use gelfand_core::fock::*;
use gelfand_core::numerics::exact::rat_to_f64;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `D(α)|m>` for one mode by summing `A^k |m> / k!` in a large space,
/// `A = α a† - conj(α) a`; no matrix exponential, no closed form.
fn series_column(alpha: Complex64, m: usize, dim: usize) -> DVector<Complex64> {
    let mut a = DMatrix::<Complex64>::zeros(dim, dim);
    for j in 0..dim - 1 {
        a[(j + 1, j)] = alpha * ((j + 1) as f64).sqrt();
        a[(j, j + 1)] = -alpha.conj() * ((j + 1) as f64).sqrt();
    }
    let mut term = DVector::<Complex64>::zeros(dim);
    term[m] = Complex64::new(1.0, 0.0);
    let mut sum = term.clone();
    for k in 1..200 {
        term = (&a * &term) / Complex64::new(k as f64, 0.0);
        sum += &term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    sum
}

#[test]
fn vacuum_overlap_matches_series() {
    // at t = 2 the displacement |α| = 0.71 trips the cutoff guard for D = 20
    for t in [0.5, 1.0, -1.0] {
        for v in [c(0.5, 0.0), c(0.0, -0.5), c(0.3, 0.4), c(-0.2, 0.1)] {
            let g = HeisenbergPoint::new(0.0, vec![v]);
            let op = fock_operator(1, t, &g, 20).unwrap();
            let alpha = alpha_for(t, &[v])[0];
            let col = series_column(alpha, 0, 80);
            assert!((op.entry(&[0], &[0]).unwrap() - col[0]).norm() < 1e-10, "t={t} v={v}");
            for l in 0..=10 {
                assert!((displacement_element(&[l], &[0], &[alpha]) - col[l]).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn protected_block_matches_untruncated_elements() {
    let g = HeisenbergPoint::new(0.0, vec![c(0.25, -0.3)]);
    for t in [0.5, 1.0, -2.0] {
        let op = fock_operator(1, t, &g, 24).unwrap();
        let alpha = alpha_for(t, &g.w)[0];
        for m in 0..=12 {
            let col = series_column(alpha, m, 90);
            for l in 0..=12 {
                assert!((op.entry(&[l], &[m]).unwrap() - col[l]).norm() < 1e-9);
                let exact = matrix_coefficient(t, &[l], &[m], &g, 24).unwrap();
                assert!((exact - col[l]).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn two_variable_operator_is_unitary_and_multiplicative() {
    let g = HeisenbergPoint::new(0.1, vec![c(0.2, 0.1), c(-0.1, 0.25)]);
    let h = HeisenbergPoint::new(-0.4, vec![c(0.0, -0.2), c(0.3, 0.0)]);
    for t in [1.0, -0.5] {
        let op = fock_operator(2, t, &g, 16).unwrap();
        assert!(op.unitarity_defect(8) < 1e-8);
        let d = representation_defect(2, t, &g, &h, 16, 8).unwrap();
        assert!(d.protected < 1e-6, "{d:?}");
    }
}

#[test]
fn cutoff_guard() {
    let far = HeisenbergPoint::new(0.0, vec![c(2.0, 0.0)]);
    assert!(matches!(
        fock_operator(1, 2.0, &far, 12),
        Err(gelfand_core::Error::CutoffTooSmall { .. })
    ));
}

#[test]
fn coefficient_orthogonality_and_formal_degree() {
    let mut diag_scaled = Vec::new();
    for t in [0.5, 1.0, 2.0] {
        let g = coefficient_gram(1, t, 16, 1e-8).unwrap();
        let k = g.pairs.len();
        let mut off: f64 = 0.0;
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    off = off.max(g.gram[(a, b)].norm());
                } else {
                    assert!(g.gram[(a, a)].im.abs() < 1e-9);
                    diag_scaled.push(g.gram[(a, a)].re * t);
                }
            }
        }
        assert!(off < 1e-8, "t={t}: off-diagonal {off:e}");
    }
    let first = diag_scaled[0];
    for d in &diag_scaled {
        assert!((d - first).abs() <= 1e-6 * first);
    }
    // with Lebesgue measure on C the constant is π
    assert!((first - std::f64::consts::PI).abs() < 1e-8);
}

#[test]
fn two_variable_orthogonality() {
    let t = 0.7;
    let g = coefficient_gram(2, t, 2, 1e-10).unwrap();
    let k = g.pairs.len();
    for a in 0..k {
        for b in 0..k {
            let v = g.gram[(a, b)];
            if a == b {
                assert!((v.re * t * t - std::f64::consts::PI.powi(2)).abs() < 1e-8);
            } else {
                assert!(v.norm() < 1e-8);
            }
        }
    }
}

#[test]
fn gamma_identity_and_regular_norms() {
    for n in 0..=12u32 {
        for k in 0..=(12 - n) {
            let exact = rat_to_f64(&regular_norm_sq(n, k));
            let quad = regular_norm_sq_quadrature(n, k);
            assert!((quad - exact).abs() <= 1e-10 * exact, "n={n} k={k}");
        }
    }
}

#[test]
fn regular_functions_span_densely() {
    for n in [1u32, 2] {
        for m in [10usize, 25, 50] {
            let gens = regular_generators(n as usize, m);
            assert_eq!(gens.len(), m);
            assert_eq!(regular_gram(n, &gens).rank(), m, "n={n} M={m}");
        }
    }
}

#[test]
fn regular_function_evaluation_uses_coefficients() {
    use gelfand_core::numerics::exact::rat;
    let g = HeisenbergPoint::new(0.3, vec![c(0.1, -0.2)]);
    let f = RegularFunction::single(vec![rat(1, 1), rat(-1, 2)], vec![2], vec![1]);
    let t: f64 = 1.5;
    let want = (-t).exp() * (1.0 - t / 2.0) * matrix_coefficient(t, &[2], &[1], &g, 10).unwrap();
    assert!((f.eval(t, &g).unwrap() - want).norm() < 1e-14);
}

fn point(n: usize) -> impl Strategy<Value = HeisenbergPoint> {
    (-2.0f64..2.0, proptest::collection::vec((-0.3f64..0.3, -0.3f64..0.3), n))
        .prop_map(|(z, w)| HeisenbergPoint::new(z, w.into_iter().map(|(a, b)| c(a, b)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_law_is_associative(a in point(2), b in point(2), d in point(2)) {
        let left = heis_mul(&heis_mul(&a, &b).unwrap(), &d).unwrap();
        let right = heis_mul(&a, &heis_mul(&b, &d).unwrap()).unwrap();
        prop_assert!((left.z - right.z).abs() < 1e-12);
        let comm = heis_commutator(&a, &b).unwrap();
        prop_assert!((comm.z - 2.0 * hermitian(&a.w, &b.w).im).abs() < 1e-12);
        prop_assert!(comm.norm_w() < 1e-12);
    }

    #[test]
    fn representation_property(a in point(1), b in point(1), t in prop_oneof![Just(0.5), Just(1.0), Just(-1.0), Just(2.0)]) {
        let d = representation_defect(1, t, &a, &b, 20, 10).unwrap();
        prop_assert!(d.protected < 1e-6);
    }

    #[test]
    fn coefficient_conjugate_symmetry(g in point(1), l in 0usize..6, m in 0usize..6) {
        let a = matrix_coefficient(1.2, &[l], &[m], &heis_inv(&g), 8).unwrap();
        let b = matrix_coefficient(1.2, &[m], &[l], &g, 8).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-12);
    }
}
