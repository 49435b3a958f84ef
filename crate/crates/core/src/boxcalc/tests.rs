use std::sync::Arc;

use super::*;
use crate::lifting::nerve_to_point;
use crate::ncat::build_interval;
use crate::presheaf::{enumerate_maps, nerve, representable};
use crate::site::Bounds;
use crate::theta::Table;

fn small() -> Bisite {
    Bisite::bounded(1, Bounds::new(1, 2), 2).unwrap()
}

#[test]
fn simplicial_json_round_trip() {
    let bs = small();
    for x in [simplex(&bs.delta, 1).unwrap(), horn_inclusion(&bs.delta, 2, 1).unwrap().source] {
        let data = to_json(&x).unwrap();
        let back = from_json(&bs.delta, &data).unwrap();
        assert_eq!(back.sizes(), x.sizes());
        for g in 0..bs.delta.num_morphisms() as u32 {
            assert_eq!(back.action(g), x.action(g));
        }
    }
}

#[test]
fn simplicial_json_rejects_broken_identities() {
    let bs = small();
    let mut data = to_json(&simplex(&bs.delta, 1).unwrap()).unwrap();
    // d_0 s_0 = id fails once s_0 of the second vertex is rerouted
    data.degeneracies[0][0].swap(0, 1);
    assert!(from_json(&bs.delta, &data).is_err());
}

#[test]
fn horn_and_boundary_counts() {
    let bs = small();
    let d = &bs.delta;
    // Δ_2 has 3, 6, 10 simplices in degrees 0, 1, 2
    let top = simplex(d, 2).unwrap();
    assert_eq!((0..3).map(|m| top.size(level(d, m).unwrap())).collect::<Vec<_>>(), vec![3, 6, 10]);
    // ∂Δ_2 misses the identity; Λ^2_1 also misses the long edge d_1
    let b = boundary_inclusion(d, 2).unwrap().source;
    let h = horn_inclusion(d, 2, 1).unwrap().source;
    assert_eq!(b.size(level(d, 1).unwrap()), 6);
    assert_eq!(b.size(level(d, 2).unwrap()), 9);
    assert_eq!(h.size(level(d, 1).unwrap()), 5);
}

#[test]
fn external_product_counts() {
    let bs = small();
    let one = bs.theta.table(&Table::disk(1)).unwrap();
    let x = representable(&bs.theta, one).presheaf;
    let y = simplex(&bs.delta, 1).unwrap();
    let xy = external_product(&bs, &x, &y).unwrap();
    xy.presheaf.check_functoriality().unwrap();
    let p = bs.theta.point();
    assert_eq!(xy.presheaf.size(bs.object(p, 1).unwrap()), 2 * 3);
    // p*(X) agrees with X at every level
    let px = p_star(&bs, &x).unwrap();
    for a in 0..bs.theta.num_objects() as u32 {
        for m in 0..=2 {
            assert_eq!(px.presheaf.size(bs.object(a, m).unwrap()), x.size(a));
        }
    }
}

#[test]
fn pushout_product_of_boundaries() {
    let bs = small();
    let one = bs.theta.table(&Table::disk(1)).unwrap();
    let u = crate::presheaf::boundary(&bs.theta, one).inclusion;
    let v = boundary_inclusion(&bs.delta, 1).unwrap();
    let w = pushout_product(&bs, &u, &v).unwrap();
    assert!(w.is_mono());
    let o = bs.object(one, 1).unwrap();
    assert_eq!(w.target.size(o), 9);
    assert_eq!(w.source.size(o), 8);
    // with u an identity, u □′ v is invertible
    let id = PresheafMap::identity(&u.target);
    assert!(pushout_product(&bs, &id, &v).unwrap().is_iso());
}

#[test]
fn divisions_unwind() {
    let bs = small();
    let j = Arc::new(build_interval(1).unwrap().cat);
    let nj = nerve(&bs.theta, &j).unwrap();
    let y = simplex(&bs.delta, 1).unwrap();
    let x = external_product(&bs, &nj, &y).unwrap().presheaf;
    // pt \ X is X((0), •)
    let pt = Presheaf::terminal(&bs.theta);
    let h = left_hom_object(&bs, &pt, &x).unwrap();
    for m in 0..=2 {
        let l = level(&bs.delta, m).unwrap();
        assert_eq!(h.presheaf.size(l), x.size(bs.site.pair(bs.theta.point(), l)));
    }
    h.presheaf.check_functoriality().unwrap();
    // X / Δ_0 is X restricted to level 0
    let d0 = simplex(&bs.delta, 0).unwrap();
    let r = right_hom_object(&bs, &x, &d0).unwrap();
    for a in 0..bs.theta.num_objects() as u32 {
        assert_eq!(r.presheaf.size(a), x.size(bs.object(a, 0).unwrap()));
    }
}

#[test]
fn adjunction_counts() {
    let bs = small();
    let one = bs.theta.table(&Table::disk(1)).unwrap();
    let x = crate::presheaf::boundary(&bs.theta, one).presheaf;
    let y = boundary_inclusion(&bs.delta, 1).unwrap().target;
    let j = Arc::new(build_interval(1).unwrap().cat);
    let z = p_star(&bs, &nerve(&bs.theta, &j).unwrap()).unwrap().presheaf;
    let direct = enumerate_maps(&external_product(&bs, &x, &y).unwrap().presheaf, &z).unwrap().len();
    let left = enumerate_maps(&y, &left_hom_object(&bs, &x, &z).unwrap().presheaf).unwrap().len();
    let right = enumerate_maps(&x, &right_hom_object(&bs, &z, &y).unwrap().presheaf).unwrap().len();
    assert_eq!(direct, left);
    assert_eq!(direct, right);
}

#[test]
fn identity_divisions_are_isomorphisms() {
    let bs = small();
    let one = bs.theta.table(&Table::disk(1)).unwrap();
    let rep = representable(&bs.theta, one).presheaf;
    let j = Arc::new(build_interval(1).unwrap().cat);
    let f = crate::boxcalc::p_star_map(&bs, &nerve_to_point(&bs.theta, &j).unwrap()).unwrap();
    let d = left_division(&bs, &PresheafMap::identity(&rep), &f).unwrap();
    assert!(d.map.is_iso());
    let v = PresheafMap::identity(&simplex(&bs.delta, 1).unwrap());
    assert!(right_division(&bs, &f, &v).unwrap().map.is_iso());
}

#[test]
fn named_orthogonality_instance() {
    let bs = small();
    let t = named_triple(&bs).unwrap();
    let r = orthogonality_equivalence_test(&bs, &t.u, &t.v, &t.f).unwrap();
    assert!(r.agree);
    assert!(r.pushout_product);
}

#[test]
fn rezk_generator_sets() {
    let bs = Bisite::bounded(2, Bounds::new(2, 1), 1).unwrap();
    let c = rezk_generators(&bs, RezkVariant::Collapse).unwrap();
    assert!(c.labels().contains(&"p*(nerve j)"));
    assert!(c.labels().contains(&"p*(nerve j2)"));
    let s = rezk_generators(&bs, RezkVariant::Sections).unwrap();
    assert!(s.members.iter().all(|(_, m)| m.is_mono()));
}

#[test]
fn resolution_small() {
    let r = resolution_check(1, 2, Bounds::new(1, 3)).unwrap();
    assert!(r.endpoints_mono);
    assert!(r.holds, "{r:?}");
}

#[test]
fn orthogonality_agrees_on_every_small_triple() {
    let bs = Bisite::bounded(1, Bounds::new(1, 1), 1).unwrap();
    let pools = orthogonality_pools(&bs).unwrap();
    let (mut total, mut negative) = (0, 0);
    for (lu, u) in &pools.theta {
        for (lv, v) in &pools.delta {
            for (lf, f) in &pools.bisite {
                let r = orthogonality_equivalence_test(&bs, u, v, f).unwrap();
                assert!(r.agree, "{lu}; {lv}; {lf}: {r:?}");
                total += 1;
                negative += usize::from(!r.pushout_product);
            }
        }
    }
    assert!(negative > 0 && negative < total, "{negative} of {total}");
}

#[test]
fn seeded_sample_agrees() {
    let bs = Bisite::bounded(2, Bounds::new(2, 1), 2).unwrap();
    let r = orthogonality_sample(&bs, 7, 50).unwrap();
    assert_eq!(r.samples.len(), 51);
    assert!(r.agree);
}

#[test]
fn trivial_fibrations_divide_to_trivial_fibrations() {
    let bs = small();
    let z = codiscrete(&bs);
    z.check_functoriality().unwrap();
    let f = crate::presheaf::to_terminal(&z);
    assert!(crate::lifting::check_trivial_fibration(&f).unwrap().holds);
    for m in 0..=2 {
        let d = right_division(&bs, &f, &boundary_inclusion(&bs.delta, m).unwrap()).unwrap();
        assert!(crate::lifting::check_trivial_fibration(&d.map).unwrap().holds, "m = {m}");
    }
}

#[test]
fn resolution_at_default_bounds() {
    let r = resolution_check(2, 2, Bounds::new(2, 2)).unwrap();
    assert!(r.endpoints_mono);
    assert!(r.holds, "{r:?}");
}

/// Functions from the vertices of `a × [m]` to `{0, 1}`: coskeletal in both
/// directions, so `Z → pt` is a trivial fibration.
fn codiscrete(bs: &Bisite) -> Arc<Presheaf> {
    let s = &bs.site;
    let (th, d) = (&bs.theta, &bs.delta);
    let nd = d.num_objects() as u32;
    let verts = |o: u32| -> (usize, usize) {
        let (a, b) = (o / nd, o % nd);
        (th.cell_map(th.identity(a))[0].len(), d.cell_map(d.identity(b))[0].len())
    };
    let sizes: Vec<usize> = (0..s.num_objects() as u32)
        .map(|o| {
            let (va, vb) = verts(o);
            1 << (va * vb)
        })
        .collect();
    let act = (0..s.num_morphisms() as u32)
        .map(|g| {
            let (f, h) = s.parts(g);
            let (fa, hb) = (&th.cell_map(f)[0], &d.cell_map(h)[0]);
            let (ta, tb) = verts(s.target(g));
            let (sa, sb) = verts(s.source(g));
            (0..1u32 << (ta * tb))
                .map(|bits| {
                    let mut out = 0u32;
                    for (i, &a) in fa.iter().enumerate().take(sa) {
                        for (j, &b) in hb.iter().enumerate().take(sb) {
                            let at = a as usize * tb + b as usize;
                            out |= ((bits >> at) & 1) << (i * sb + j);
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    let labels = sizes.iter().map(|&n| (0..n).map(|i| i.to_string()).collect()).collect();
    Presheaf::from_parts(s.clone(), sizes, act, labels).unwrap()
}
