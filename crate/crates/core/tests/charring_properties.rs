use std::collections::{BTreeMap, HashMap};

use gelfand_core::charring::{
    check_stability, invariant_dimension, is_multiplicity_free_polynomial_action, lookup_row, sym_power_decompose,
    table_rows, tensor_decompose, weight_system, Construction, Factor, GroupDatum, KeyMode,
};
use gelfand_core::numerics::binomial;
use gelfand_core::rootsys::{build_root_system, weyl_dimension, DominantWeight, Family, RootSystemData};
use proptest::prelude::*;

/// Brute-force tensor product: multiply weight multisets, then peel off the
/// highest weight (largest sum of fundamental coordinates weighted by heights).
fn brute_tensor(rs: &RootSystemData, a: &DominantWeight, b: &DominantWeight) -> BTreeMap<Vec<i64>, i64> {
    let wa = weight_system(rs, a).unwrap();
    let wb = weight_system(rs, b).unwrap();
    let mut chi: HashMap<Vec<i64>, i64> = HashMap::new();
    for (x, mx) in &wa {
        for (y, my) in &wb {
            let s: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *chi.entry(s).or_insert(0) += (mx * my) as i64;
        }
    }
    let h = rs.fundamental_heights().to_vec();
    let height = |w: &Vec<i64>| -> i64 { w.iter().zip(&h).map(|(x, y)| x * y).sum() };
    let mut out = BTreeMap::new();
    loop {
        chi.retain(|_, m| *m != 0);
        let Some((top, m)) = chi.iter().max_by_key(|(w, _)| (height(w), (*w).clone())).map(|(w, m)| (w.clone(), *m))
        else {
            break;
        };
        assert!(m > 0 && top.iter().all(|&c| c >= 0));
        for (w, mw) in weight_system(rs, &DominantWeight::new(rs.family, top.clone()).unwrap()).unwrap() {
            *chi.get_mut(&w).unwrap() -= m * mw as i64;
        }
        out.insert(top, m);
    }
    out
}

fn grid(rank: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..=max).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

#[test]
fn brauer_klimyk_matches_weight_product_oracle() {
    for (fam, rank) in [(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::C, 2), (Family::D, 2)] {
        let rs = build_root_system(fam, rank).unwrap();
        for a in grid(rank, 2) {
            for b in grid(rank, 2) {
                let la = DominantWeight::new(fam, a.clone()).unwrap();
                let lb = DominantWeight::new(fam, b.clone()).unwrap();
                let got: BTreeMap<Vec<i64>, i64> = tensor_decompose(&rs, &la, &lb)
                    .unwrap()
                    .entries
                    .into_iter()
                    .map(|e| (e.highest[0].clone(), e.mult as i64))
                    .collect();
                assert_eq!(got, brute_tensor(&rs, &la, &lb), "{fam}{rank} {a:?} x {b:?}");
                let swapped = tensor_decompose(&rs, &lb, &la).unwrap();
                assert_eq!(swapped.entries.len(), got.len());
                let total: u128 = got
                    .iter()
                    .map(|(w, m)| *m as u128 * weyl_dimension(&rs, &DominantWeight::new(fam, w.clone()).unwrap()).unwrap())
                    .sum();
                assert_eq!(total, weyl_dimension(&rs, &la).unwrap() * weyl_dimension(&rs, &lb).unwrap());
            }
        }
    }
}

#[test]
fn weight_systems_are_weyl_symmetric() {
    for (fam, rank) in [(Family::A, 2), (Family::B, 2), (Family::C, 3), (Family::D, 3)] {
        let rs = build_root_system(fam, rank).unwrap();
        let cartan = rs.cartan();
        for c in grid(rank, 2) {
            let ws: HashMap<Vec<i64>, u64> =
                weight_system(&rs, &DominantWeight::new(fam, c.clone()).unwrap()).unwrap().into_iter().collect();
            for (w, m) in &ws {
                for (i, row) in cartan.iter().enumerate() {
                    let r: Vec<i64> = w.iter().zip(row).map(|(x, a)| x - w[i] * a).collect();
                    assert_eq!(ws.get(&r), Some(m));
                }
            }
        }
    }
}

/// Rank steps checked for every direct-system row. Row 5a starts at SO(4)
/// because SO(2) is a circle without fundamental weights. In row 15 the
/// determinant of SU(m) appears in degree m, so the ranks must exceed the
/// degree bound.
fn jaw_steps(id: &str) -> (i64, i64) {
    let row = lookup_row(id).unwrap();
    match id {
        "jaw:5a" => return (2, 3),
        "jaw:15" => return (5, 6),
        _ => {}
    }
    let v = row.admissible_values(2);
    (v[0], v[1])
}

#[test]
fn direct_system_rows_multiplicity_free_and_stable() {
    let mut failures = Vec::new();
    for row in table_rows().into_iter().filter(|r| r.id.starts_with("jaw:")) {
        let (n, m) = jaw_steps(&row.id);
        let kn = row.instantiate(n).unwrap();
        let km = row.instantiate(m).unwrap();
        for (k, v) in [(&kn, n), (&km, m)] {
            let rep = is_multiplicity_free_polynomial_action(k, 4).unwrap();
            if !rep.multiplicity_free {
                failures.push(format!("{}@{v}", row.id));
            }
        }
        for d in 0..=4 {
            let s = check_stability(&kn, &km, d).unwrap();
            assert!(s.stable, "{} {n}->{m} d={d}: {:?}", row.id, s.missing);
        }
    }
    // S(U(2) x U(2)) at m = 2 is the only failure among these ranks
    assert_eq!(failures, vec!["jaw:10@2".to_string()]);
}

#[test]
fn special_unitary_times_sp4_at_rank_four() {
    let row = lookup_row("jaw:15").unwrap();
    assert!(is_multiplicity_free_polynomial_action(&row.instantiate(3).unwrap(), 4).unwrap().multiplicity_free);
    // Λ^4 C^4 ⊗ Λ^4 C^8 contains an invariant, repeating the constants
    let rep = is_multiplicity_free_polynomial_action(&row.instantiate(4).unwrap(), 4).unwrap();
    assert!(!rep.multiplicity_free);
    let v = rep.violation.unwrap();
    assert_eq!((v.degree, v.first_degree), (4, 0));
    let with_center = lookup_row("jaw:16").unwrap().instantiate(4).unwrap();
    assert!(is_multiplicity_free_polynomial_action(&with_center, 4).unwrap().multiplicity_free);
}

#[test]
fn determinant_one_versus_full_torus() {
    let det1 = lookup_row("jaw:10").unwrap();
    let full = lookup_row("jaw:10u").unwrap();
    for m in 1..=4 {
        let a = is_multiplicity_free_polynomial_action(&det1.instantiate(m).unwrap(), 4).unwrap();
        let b = is_multiplicity_free_polynomial_action(&full.instantiate(m).unwrap(), 4).unwrap();
        assert!(b.multiplicity_free);
        assert_eq!(a.multiplicity_free, m != 2, "l = 2, m = {m}");
    }
}

#[test]
fn kac_rows_at_smallest_rank() {
    for id in ["kac:1", "kac:2", "kac:3", "kac:5", "kac:6", "kac:8"] {
        let row = lookup_row(id).unwrap();
        let k = row.instantiate(row.smallest_admissible().unwrap()).unwrap();
        assert!(is_multiplicity_free_polynomial_action(&k, 4).unwrap().multiplicity_free, "{id}");
    }
}

#[test]
fn invariants_at_most_one_when_multiplicity_free() {
    for id in ["jaw:2", "jaw:3", "jaw:4", "jaw:5b", "jaw:6", "jaw:11"] {
        let row = lookup_row(id).unwrap();
        let k = row.instantiate(row.smallest_admissible().unwrap()).unwrap();
        assert!(is_multiplicity_free_polynomial_action(&k, 3).unwrap().multiplicity_free);
        for d in 0..=3 {
            let rho = sym_power_decompose(&k, d).unwrap();
            for e in &rho.entries {
                let kappa = k.dual_label(&e.highest);
                assert_eq!(invariant_dimension(&k, &kappa, &rho), 1, "{id} d={d}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn polynomial_dimensions_conserved(idx in 0usize..8, d in 0usize..4) {
        let factors = [
            vec![Factor::Unitary(3)],
            vec![Factor::Special(3)],
            vec![Factor::Symplectic(2)],
            vec![Factor::Torus, Factor::Orthogonal(4)],
            vec![Factor::Torus, Factor::Orthogonal(5)],
            vec![Factor::Unitary(2), Factor::Special(3)],
            vec![Factor::Special(2), Factor::Symplectic(1)],
            vec![Factor::Unitary(2), Factor::Unitary(1)],
        ];
        let k = GroupDatum::new("p", factors[idx].clone(), Construction::Standard, KeyMode::Full).unwrap();
        let n = k.space_dim().unwrap() as u64;
        let dec = sym_power_decompose(&k, d).unwrap();
        let total: u128 = dec.entries.iter().map(|e| e.mult as u128 * k.irrep_dim(&e.highest).unwrap()).sum();
        prop_assert_eq!(total, binomial(n + d as u64 - 1, d as u64));
    }
}
