use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use theta_cells::boxcalc::{
    boundary_inclusion, box_map, external_product, horn_inclusion, left_hom_object, orthogonality_equivalence_test, orthogonality_pools,
    p_star, right_hom_object, simplex, Bisite, OrthogonalityPools,
};
use theta_cells::catalog;
use theta_cells::presheaf::{self, enumerate_maps, Presheaf, PresheafMap};
use theta_cells::site::Bounds;

fn bisite() -> &'static Bisite {
    static B: OnceLock<Bisite> = OnceLock::new();
    B.get_or_init(|| Bisite::bounded(2, Bounds::new(2, 1), 1).unwrap())
}

fn pools() -> &'static OrthogonalityPools {
    static P: OnceLock<OrthogonalityPools> = OnceLock::new();
    P.get_or_init(|| orthogonality_pools(bisite()).unwrap())
}

fn theta_side() -> Vec<Arc<Presheaf>> {
    let th = &bisite().theta;
    let mut v: Vec<Arc<Presheaf>> = ["J", "D1", "pt"]
        .iter()
        .map(|c| presheaf::nerve(th, &catalog::category(c, 2).unwrap()).unwrap())
        .collect();
    for o in 0..th.num_objects() as u32 {
        v.push(presheaf::boundary(th, o).presheaf);
    }
    v
}

fn delta_side() -> Vec<Arc<Presheaf>> {
    let d = &bisite().delta;
    vec![
        simplex(d, 0).unwrap(),
        simplex(d, 1).unwrap(),
        boundary_inclusion(d, 1).unwrap().source,
        horn_inclusion(d, 1, 0).unwrap().source,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn external_products_are_bifunctorial(i in any::<usize>(), j in any::<usize>()) {
        let (xs, ys) = (theta_side(), delta_side());
        let (x, y) = (&xs[i % xs.len()], &ys[j % ys.len()]);
        let bs = bisite();
        let p = external_product(bs, x, y).unwrap();
        p.presheaf.check_functoriality().unwrap();
        let nd = bs.delta.num_objects() as u32;
        for o in 0..bs.site.num_objects() as u32 {
            prop_assert_eq!(p.presheaf.size(o), x.size(o / nd) * y.size(o % nd));
        }
        // identities box to the identity
        let id = box_map(bs, &p, &p, &PresheafMap::identity(x), &PresheafMap::identity(y)).unwrap();
        prop_assert!(id.is_iso() && PresheafMap::new(id.source.clone(), id.target.clone(), id.components().to_vec()).is_ok());
    }

    #[test]
    fn adjunction_counts(i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let bs = bisite();
        let (xs, ys) = (theta_side(), delta_side());
        let (x, y) = (&xs[i % xs.len()], &ys[j % ys.len()]);
        let zs = [
            p_star(bs, &xs[0]).unwrap().presheaf,
            external_product(bs, &xs[1], &ys[1]).unwrap().presheaf,
            pools().bisite[k % pools().bisite.len()].1.target.clone(),
        ];
        let z = &zs[k % zs.len()];
        let direct = enumerate_maps(&external_product(bs, x, y).unwrap().presheaf, z).unwrap().len();
        let via_left = enumerate_maps(y, &left_hom_object(bs, x, z).unwrap().presheaf).unwrap().len();
        let via_right = enumerate_maps(x, &right_hom_object(bs, z, y).unwrap().presheaf).unwrap().len();
        prop_assert_eq!(direct, via_left);
        prop_assert_eq!(direct, via_right);
    }

    #[test]
    fn orthogonality_verdicts_agree(i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let p = pools();
        let (u, v, f) = (&p.theta[i % p.theta.len()], &p.delta[j % p.delta.len()], &p.bisite[k % p.bisite.len()]);
        let r = orthogonality_equivalence_test(bisite(), &u.1, &v.1, &f.1).unwrap();
        prop_assert!(r.agree, "{} / {} / {}: {:?}", u.0, v.0, f.0, r);
    }
}
