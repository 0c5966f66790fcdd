use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dihom_core::bimod::{chain_bimodule, module_deunitalize, module_unitalize};
use dihom_core::exactlin::{smith_normal_form, Subquotient};
use dihom_core::homology::{chain_complex, homology, induced_map, verify_boundary_equivariance};
use dihom_core::nualg::{find_local_unit, path_algebra, unitalize, Side};
use dihom_core::scat::{
    build_from_poset, category_from_json, category_to_json, relabel_isomorphism, Poset, Relabeling,
};
use dihom_core::{CoefficientRing, EnrichedCategory, Matrix};

fn z() -> CoefficientRing {
    CoefficientRing::Integers
}

/// Random poset on `0..k` from a bitmask of cover candidates `i < j`.
fn poset(k: usize, mask: u16) -> Poset {
    let mut covers = Vec::new();
    let mut bit = 0;
    for i in 0..k {
        for j in i + 1..k {
            if mask >> bit & 1 == 1 {
                covers.push((i.to_string(), j.to_string()));
            }
            bit += 1;
        }
    }
    Poset::from_covers((0..k).map(|i| i.to_string()).collect(), &covers)
}

fn category(k: usize, mask: u16, d: usize) -> EnrichedCategory {
    build_from_poset(&poset(k, mask), d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn smith_form_certificates(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-9i64..10, 16)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect()).collect();
        let m = Matrix::from_rows(z(), &data);
        let snf = smith_normal_form(&m).unwrap();
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        prop_assert_eq!(snf.u.mul(&snf.u_inv), Matrix::identity(z(), rows));
        prop_assert_eq!(snf.v_inv.mul(&snf.v), Matrix::identity(z(), cols));
        let diag = snf.diagonal();
        for w in diag[..snf.rank].windows(2) {
            prop_assert!(z().divides(&w[0], &w[1]));
        }
    }

    #[test]
    fn subquotient_lift_round_trip(entries in prop::collection::vec(-4i64..5, 9), coords in prop::collection::vec(-6i64..7, 3)) {
        let b = Matrix::from_rows(z(), &[entries[0..3].to_vec(), entries[3..6].to_vec(), entries[6..9].to_vec()]);
        let sq = Subquotient::new(Matrix::identity(z(), 3), b).unwrap();
        let n = sq.module().generator_count();
        let x: Vec<_> = coords.iter().take(n).map(|&c| z().from_int(c)).collect();
        let back = sq.class_of(&sq.lift(&x)).unwrap();
        prop_assert!(sq.module().same_element(&back, &x));
    }

    #[test]
    fn poset_complexes(k in 1usize..5, mask in 0u16..64, d in 1usize..4) {
        let c = category(k, mask, d);
        prop_assert!(c.validate().is_valid());
        let cx = chain_complex(&c, z()).unwrap();
        prop_assert!(cx.square_failure().is_none());
        prop_assert!(verify_boundary_equivariance(&cx).passed());
        let morphisms = c.underlying_category().morphism_count();
        for n in 0..d {
            let h = homology(&cx, n).unwrap();
            let expected = if n == 0 { morphisms } else { 0 };
            prop_assert_eq!(h.free_rank(), expected);
            prop_assert!(h.invariant_factors().is_empty());
        }
    }

    #[test]
    fn path_algebra_local_units(k in 1usize..5, mask in 0u16..64, seed in any::<u64>()) {
        let a = path_algebra(&category(k, mask, 1).underlying_category(), z());
        prop_assert!(a.is_associative());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<_> = (0..3).map(|_| a.random_element(&mut rng, 5)).collect();
        for side in [Side::Left, Side::Right, Side::Both] {
            let e = find_local_unit(&a, &xs, side).unwrap();
            for x in &xs {
                if side.left() { prop_assert_eq!(&a.mul(&e, x), x); }
                if side.right() { prop_assert_eq!(&a.mul(x, &e), x); }
            }
        }
    }

    #[test]
    fn unitalization_product(k in 1usize..4, mask in 0u16..8, seed in any::<u64>()) {
        let a = path_algebra(&category(k, mask, 1).underlying_category(), z());
        let hat = unitalize(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (hat.random_element(&mut rng, 4), hat.random_element(&mut rng, 4));
        let ((p, r), (q, s)) = (hat.split(&x).unwrap(), hat.split(&y).unwrap());
        let first = a.add(&a.add(&a.mul(&p, &q), &a.scale(&r, &q)), &a.scale(&s, &p));
        let expected = hat.pair(&first, &z().mul(&r, &s)).unwrap();
        prop_assert_eq!(hat.mul(&x, &y), expected);
    }

    #[test]
    fn chain_module_unitalization_round_trip(k in 1usize..4, mask in 0u16..8, n in 0usize..2) {
        let m = chain_bimodule(&category(k, mask, 1), n, z()).unwrap().to_bimodule().unwrap();
        let back = module_deunitalize(&module_unitalize(&m)).unwrap();
        prop_assert_eq!(back.left_actions(), m.left_actions());
        prop_assert_eq!(back.right_actions(), m.right_actions());
        prop_assert_eq!(back.left_algebra(), m.left_algebra());
    }

    #[test]
    fn relabeling_preserves_homology(k in 1usize..5, mask in 0u16..64, seed in any::<u64>()) {
        let c = category(k, mask, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c2, f, g) = relabel_isomorphism(&c, &Relabeling::random(&c, &mut rng)).unwrap();
        prop_assert!(c2.validate().is_valid());
        let (cx, cx2) = (chain_complex(&c, z()).unwrap(), chain_complex(&c2, z()).unwrap());
        let there = induced_map(&f, &cx, &cx2, 0).unwrap();
        let back = induced_map(&g, &cx2, &cx, 0).unwrap();
        prop_assert_eq!(there.source.invariant_factors(), there.target.invariant_factors());
        prop_assert_eq!(there.source.free_rank(), there.target.free_rank());
        prop_assert!(there.morphism.then(&back.morphism).unwrap().equals(&dihom_core::ModuleMorphism::identity(there.source.module())));
    }

    #[test]
    fn json_round_trip(k in 0usize..4, mask in 0u16..8, d in 1usize..3) {
        let c = category(k, mask, d);
        let back = category_from_json(&category_to_json(&c), None).unwrap();
        prop_assert_eq!(category_to_json(&back), category_to_json(&c));
    }
}
