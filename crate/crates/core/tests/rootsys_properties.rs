use gelfand_core::rootsys::{
    build_root_system, freudenthal_dimension, is_dominant, stabilize_weight, weyl_dimension, DominantWeight, Family,
};
use proptest::prelude::*;

const FAMILIES: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

fn grid(rank: usize, max: i64) -> Vec<Vec<i64>> {
    (0..(max + 1).pow(rank as u32))
        .map(|mut n| {
            (0..rank)
                .map(|_| {
                    let k = n % (max + 1);
                    n /= max + 1;
                    k
                })
                .collect()
        })
        .collect()
}

#[test]
fn weyl_dimension_matches_freudenthal_through_rank_six() {
    std::thread::scope(|scope| {
        for fam in FAMILIES {
            for l in 5..=6 {
                scope.spawn(move || {
                    let rs = build_root_system(fam, l).unwrap();
                    for c in grid(l, 2) {
                        let w = DominantWeight::new(fam, c).unwrap();
                        assert_eq!(weyl_dimension(&rs, &w).unwrap(), freudenthal_dimension(&rs, &w).unwrap(), "{w}");
                    }
                });
            }
        }
    });
}

#[test]
fn stabilized_dimension_is_monotone() {
    for fam in FAMILIES {
        let lo = if fam == Family::D { 2 } else { 1 };
        for n in lo..=4 {
            for m in n..=5 {
                let small = build_root_system(fam, n).unwrap();
                let big = build_root_system(fam, m).unwrap();
                for c in grid(n, 2) {
                    let w = DominantWeight::new(fam, c).unwrap();
                    let s = stabilize_weight(&w, m).unwrap();
                    let d_small = weyl_dimension(&small, &w).unwrap();
                    let d_big = weyl_dimension(&big, &s).unwrap();
                    assert!(d_big >= d_small, "{w} -> {s}: {d_small} > {d_big}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn stabilized_weights_stay_dominant(
        fam_idx in 0usize..4,
        coeffs in proptest::collection::vec(0i64..5, 2..6),
        extra in 0usize..4,
    ) {
        let fam = FAMILIES[fam_idx];
        let w = DominantWeight::new(fam, coeffs.clone()).unwrap();
        let target = coeffs.len() + extra;
        let s = stabilize_weight(&w, target).unwrap();
        let rs = build_root_system(fam, target).unwrap();
        prop_assert!(is_dominant(&rs, &s.coeffs));
        prop_assert_eq!(&s.coeffs[..coeffs.len()], &coeffs[..]);
    }

    #[test]
    fn weyl_dimension_is_positive_integer(
        fam_idx in 0usize..4,
        coeffs in proptest::collection::vec(0i64..4, 2..5),
    ) {
        let fam = FAMILIES[fam_idx];
        let rs = build_root_system(fam, coeffs.len()).unwrap();
        let w = DominantWeight::new(fam, coeffs).unwrap();
        prop_assert!(weyl_dimension(&rs, &w).unwrap() >= 1);
    }
}
