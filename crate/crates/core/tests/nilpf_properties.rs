use gelfand_core::nilpf::*;
use gelfand_core::numerics::exact::{rat, RatMatrix};
use gelfand_core::numerics::Poly;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bareiss fraction-free determinant after clearing denominators.
fn det_oracle(m: &RatMatrix) -> BigRational {
    let n = m.rows;
    if n == 0 {
        return BigRational::one();
    }
    let mut lcm = num_bigint::BigInt::one();
    for i in 0..n {
        for j in 0..n {
            lcm = num_integer::Integer::lcm(&lcm, m[(i, j)].denom());
        }
    }
    let mut a: Vec<Vec<num_bigint::BigInt>> =
        (0..n).map(|i| (0..n).map(|j| (&m[(i, j)] * BigRational::from_integer(lcm.clone())).to_integer()).collect()).collect();
    let mut sign = 1i32;
    let mut prev = num_bigint::BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = BigRational::from_integer(a[n - 1][n - 1].clone() * sign);
    d / BigRational::from_integer(num_traits::pow(lcm, n))
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = if rng.gen_bool(0.2) { rat(0, 1) } else { rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)) };
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
    }
    m
}

#[test]
fn pfaffian_squared_is_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 0..=12 {
        for _ in 0..6 {
            let m = random_skew(&mut rng, n);
            let pf = pfaffian(&m).unwrap();
            assert_eq!(&pf * &pf, det_oracle(&m), "n = {n}");
            if n <= 8 {
                let sym: Vec<Vec<Poly>> = (0..n)
                    .map(|i| (0..n).map(|j| Poly::constant(0, m[(i, j)].clone())).collect())
                    .collect();
                assert_eq!(pfaffian_symbolic(&sym, 0).eval_rat(&[]), pf);
            }
        }
    }
}

#[test]
fn basis_change_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 4, 6, 8] {
        for _ in 0..4 {
            let b = random_skew(&mut rng, n);
            let a = RatMatrix::from_fn(n, n, |_, _| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
            let lhs = pfaffian(&a.transpose().mul(&b).unwrap().mul(&a).unwrap()).unwrap();
            assert_eq!(lhs, det_oracle(&a) * pfaffian(&b).unwrap());
        }
    }
    // the same on the level of algebras
    let h = build_heisenberg(2, DivisionAlgebra::Complex).unwrap();
    let s = RatMatrix::from_fn(4, 4, |i, j| rat(((i * 3 + j * 5) % 7) as i64 - 3, 1 + (i == j) as i64));
    let hs = h.change_basis(&s).unwrap();
    let (p, ps) = (pfaffian_polynomial(&h), pfaffian_polynomial(&hs));
    assert_eq!(ps.poly, p.poly.scale(&det_oracle(&s)));
}

#[test]
fn pfaffian_polynomials_of_standard_algebras() {
    for n in 1..=4 {
        let p = pfaffian_polynomial(&build_heisenberg(n, DivisionAlgebra::Complex).unwrap());
        assert_eq!(p.poly, Poly::monomial(vec![n as u32], BigRational::one()));
    }
    let norm = Poly::var(3, 0).pow(2).add(&Poly::var(3, 1).pow(2)).add(&Poly::var(3, 2).pow(2));
    for n in 1..=2 {
        let p = pfaffian_polynomial(&build_heisenberg(n, DivisionAlgebra::Quaternion).unwrap());
        let (c, e) = is_scalar_times_power(&p.poly, &norm).expect("power of |t|^2");
        assert_eq!(e as usize, n);
        assert!(!c.is_zero());
    }
    let f2 = build_free_two_step(2).unwrap();
    assert_eq!(pfaffian_polynomial(&f2).poly, Poly::var(1, 0));
    assert!(!is_generically_square_integrable(&build_free_two_step(3).unwrap()));
    assert!(is_generically_square_integrable(&build_free_two_step(4).unwrap()));
    // u(n)-type: P is a nonzero form of degree n on u(n)
    for n in 1..=3 {
        let p = pfaffian_polynomial(&build_un_type(n).unwrap());
        assert_eq!(p.poly.degree(), Some(n as u32));
        assert!(p.poly.is_homogeneous());
    }
}

#[test]
fn direct_sums_multiply() {
    let a = algebra_from_id("heis:2+heis:1").unwrap();
    let p = pfaffian_polynomial(&a);
    assert_eq!(p.poly, Poly::monomial(vec![2, 1], BigRational::one()));
    assert!(a.center_is_derived());
}

#[test]
fn zero_set_sampling() {
    let h2 = build_heisenberg(2, DivisionAlgebra::Complex).unwrap();
    assert_eq!(sample_zero_set(&h2, 10_000, 1), 0.0);
    assert_eq!(sample_zero_set(&build_free_two_step(3).unwrap(), 50, 1), 1.0);
    // deterministic in the seed
    let u = build_un_type(2).unwrap();
    assert_eq!(sample_zero_set(&u, 200, 5), sample_zero_set(&u, 200, 5));
}

#[test]
fn density_and_heisenberg_quotient() {
    let q = build_heisenberg(1, DivisionAlgebra::Quaternion).unwrap();
    let d = plancherel_density(&q, &[0.6, 0.0, 0.8]).unwrap();
    assert!((d - 1.0).abs() < 1e-12);
    assert!(plancherel_density(&q, &[1.0]).is_err());
    let hq = quotient_to_heisenberg(&q, &[rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap();
    assert_eq!(hq.level, 2);
    let u = build_un_type(2).unwrap();
    let t: Vec<BigRational> = (1..=4).map(|k| rat(k, 3)).collect();
    let uq = quotient_to_heisenberg(&u, &t).unwrap();
    let b = b_form(&u, &t).unwrap();
    let nb = uq.basis.transpose().mul(&b).unwrap().mul(&uq.basis).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let want = match (i % 2, j % 2) {
                (0, 1) if j == i + 1 => rat(1, 1),
                (1, 0) if i == j + 1 => rat(-1, 1),
                _ => rat(0, 1),
            };
            assert_eq!(nb[(i, j)], want);
        }
    }
    assert!(quotient_to_heisenberg(&build_free_two_step(3).unwrap(), &[rat(1, 1), rat(2, 1), rat(3, 1)]).is_err());
}

#[test]
fn nested_heisenberg_monotonicity() {
    let h4 = build_heisenberg(4, DivisionAlgebra::Complex).unwrap();
    for n in 1..=4 {
        for m in n..=4 {
            assert!(nested_divisibility(&h4, 2 * n, 2 * m).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pfaffian_vanishes_at_origin(kind in 0usize..4, n in 1usize..4) {
        let alg = match kind {
            0 => build_heisenberg(n, DivisionAlgebra::Complex),
            1 => build_heisenberg(n.min(2), DivisionAlgebra::Quaternion),
            2 => build_free_two_step(n + 1),
            _ => build_un_type(n),
        }.unwrap();
        let p = pfaffian_polynomial(&alg);
        prop_assert!(p.eval_rat(&vec![BigRational::zero(); alg.dim_z]).is_zero());
    }

    #[test]
    fn pfaffian_matches_numeric_b_form(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = algebra_from_id("quat:1+heis:1").unwrap();
        let t = random_rational_point(&mut rng, alg.dim_z);
        let b = b_form(&alg, &t).unwrap();
        let pf = pfaffian(&b).unwrap();
        prop_assert_eq!(pfaffian_polynomial(&alg).eval_rat(&t), pf.clone());
        prop_assert_eq!(&pf * &pf, det_oracle(&b));
        prop_assert!(pf.abs() > BigRational::zero() || t.iter().all(|x| x.is_zero()) || t[3].is_zero());
    }
}
