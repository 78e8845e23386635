mod common;

use proptest::prelude::*;
use qccodes::bounds::{
    best_bounds, cyclic_bound, eigenstructure, jensen_bound, lally_bound, BoundOptions, CyclicMethod, ZeroSet,
};
use qccodes::{ExtNat, Field, Poly, QcCode};
use rand::Rng;

use common::{brute_distance, rng, small_qc};

fn as_ext(d: Option<u64>) -> ExtNat {
    d.map_or(ExtNat::Infinite, ExtNat::Finite)
}

fn binary_or_ternary() -> impl Strategy<Value = QcCode> {
    (any::<u64>(), prop::bool::ANY).prop_map(|(seed, binary)| {
        if binary {
            small_qc(seed, 2, &[3, 5, 7, 9], 3)
        } else {
            small_qc(seed, 3, &[4, 5, 7], 2)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_bound_is_below_the_brute_force_distance(code in binary_or_ternary()) {
        prop_assume!(code.dimension() <= 10);
        let truth = as_ext(brute_distance(&code.expand()));
        let r = best_bounds(&code, &BoundOptions::default()).unwrap();
        for (name, b) in &r.bounds {
            prop_assert!(b.value <= truth, "{} = {} above {}", name, b.value, truth);
        }
        prop_assert!(jensen_bound(&code, 1 << 20).unwrap().value <= truth);
        prop_assert!(lally_bound(&code, 1 << 20).unwrap().value <= truth);
    }

    #[test]
    fn stronger_cyclic_methods_give_stronger_spectral_bounds(code in binary_or_ternary()) {
        prop_assume!(code.dimension() <= 10);
        let r = best_bounds(&code, &BoundOptions::default()).unwrap();
        let v = |n: &str| r.get(n).unwrap();
        prop_assert!(v("spectral_bch") <= v("spectral_ht"));
        prop_assert!(v("spectral_ht") <= v("spectral_shift"));
        prop_assert!(v("spectral_bch") <= v("spectral_roos"));
    }

    #[test]
    fn larger_eigenvalue_sets_give_weaker_eigencodes(code in binary_or_ternary()) {
        let es = eigenstructure(&code).unwrap();
        let exps = es.exponents();
        prop_assume!(exps.len() >= 2 && !es.is_full_spectrum());
        let small = es.common_space(&exps[..1]).unwrap();
        let large = es.common_space(&exps).unwrap();
        let d_small = es.eigencode(&small).unwrap().min_distance(1 << 20).unwrap();
        let d_large = es.eigencode(&large).unwrap().min_distance(1 << 20).unwrap();
        prop_assert!(d_large <= d_small);
    }

    #[test]
    fn cyclic_bounds_hold_for_ternary_cyclic_codes(seed in any::<u64>(), m in prop::sample::select(vec![4usize, 5, 7, 8, 10, 11, 13])) {
        let f = Field::of_order(3).unwrap();
        let fact = qccodes::cyclotomic::factor_xm1(3, m).unwrap();
        let mut r = rng(seed);
        let chosen: Vec<usize> = (0..fact.len()).filter(|_| r.gen_bool(0.5)).collect();
        prop_assume!(!chosen.is_empty() && chosen.len() < fact.len());
        let g = chosen.iter().fold(Poly::one(&f), |acc, &i| &acc * &fact.factors()[i].poly);
        let zeros = ZeroSet::new(m, chosen.iter().flat_map(|&i| fact.factors()[i].coset.clone())).unwrap();
        let code = QcCode::new(&f, m, 1, vec![vec![g]]).unwrap();
        let truth = brute_distance(&code.expand()).unwrap();
        for method in CyclicMethod::ALL {
            let b = cyclic_bound(zeros, method).unwrap().value;
            prop_assert!(b <= truth, "{:?} gives {} above {} for zeros {}", method, b, truth, zeros);
        }
    }
}

#[test]
fn hamming_as_quasi_cyclic_of_index_one() {
    let f = Field::of_order(2).unwrap();
    let code = QcCode::new(&f, 7, 1, vec![vec![Poly::parse(&f, "1,1,0,1").unwrap()]]).unwrap();
    let r = best_bounds(&code, &BoundOptions { exact: true, ..Default::default() }).unwrap();
    for m in CyclicMethod::ALL {
        assert_eq!(r.get(&format!("spectral_{}", m.name())), Some(ExtNat::Finite(3)));
    }
    assert_eq!(brute_distance(&code.expand()), Some(3));
}
