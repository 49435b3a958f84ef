use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use theta_cells::boxcalc::level;
use theta_cells::ncat::{build_interval, disk, simply_connected_groupoid, FiniteNCat};
use theta_cells::presheaf::{self, enumerate_maps, Presheaf, PresheafMap};
use theta_cells::site::{Bounds, Site};
use theta_cells::theta::Theta;

fn site() -> &'static Arc<Site> {
    static S: OnceLock<Arc<Site>> = OnceLock::new();
    S.get_or_init(|| Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 2)).unwrap())
}

fn cats() -> &'static [Arc<FiniteNCat>] {
    static C: OnceLock<Vec<Arc<FiniteNCat>>> = OnceLock::new();
    C.get_or_init(|| {
        vec![
            FiniteNCat::terminal(2),
            disk(1, 2).0,
            disk(2, 2).0,
            simply_connected_groupoid(1).promote(2),
            simply_connected_groupoid(2).promote(2),
            build_interval(2).unwrap().cat,
        ]
        .into_iter()
        .map(Arc::new)
        .collect()
    })
}

/// Nerves, representables, boundaries, spines and a few (co)limits of them.
fn presheaves() -> &'static [Arc<Presheaf>] {
    static P: OnceLock<Vec<Arc<Presheaf>>> = OnceLock::new();
    P.get_or_init(|| {
        let s = site();
        let mut v: Vec<Arc<Presheaf>> = cats().iter().map(|c| presheaf::nerve(s, c).unwrap()).collect();
        for o in 0..s.num_objects() as u32 {
            v.push(presheaf::representable(s, o).presheaf);
            v.push(presheaf::boundary(s, o).presheaf);
            v.push(presheaf::spine(s, o).unwrap().presheaf);
        }
        let (nj, nd) = (v[3].clone(), v[1].clone());
        v.push(presheaf::product(&nj, &nd).unwrap().0);
        v.push(presheaf::coproduct(&nj, &nd).unwrap().0);
        v.push(Presheaf::empty(s));
        v
    })
}

/// Composable strings of `m` arrows, counted from the category itself.
fn strings(c: &FiniteNCat, m: usize) -> usize {
    let mut ends: Vec<u32> = (0..c.size(0) as u32).collect();
    for _ in 0..m {
        // one entry per string, holding the object it ends at
        ends = ends
            .iter()
            .flat_map(|&x| (0..c.size(1) as u32).filter(move |&f| c.src(1, f) == x).map(|f| c.tgt(1, f)))
            .collect();
    }
    ends.len()
}

#[test]
fn classical_nerves_count_composable_strings() {
    let delta = Site::delta(4).unwrap();
    let pool = [
        FiniteNCat::terminal(1),
        disk(1, 1).0,
        simply_connected_groupoid(1),
        simply_connected_groupoid(2),
        Theta::new(1).free_ncat(&"1 1 / 0".parse().unwrap()).unwrap().as_ref().clone(),
    ];
    for c in pool {
        let n = presheaf::nerve(&delta, &Arc::new(c.clone())).unwrap();
        for m in 0..=4 {
            assert_eq!(n.size(level(&delta, m).unwrap()), strings(&c, m), "{:?} at [{m}]", c.cell_counts());
        }
    }
}

#[test]
fn every_constructed_presheaf_is_functorial() {
    for x in presheaves() {
        x.check_functoriality().unwrap();
    }
}

#[test]
fn nerves_satisfy_the_segal_condition_everywhere() {
    let s = site();
    for c in cats() {
        for o in 0..s.num_objects() as u32 {
            assert!(presheaf::segal_check(s, c, o).unwrap(), "{:?} at {}", c.cell_counts(), s.object(o));
        }
    }
}

#[test]
fn boundaries_and_spines_sit_inside_representables() {
    let s = site();
    for o in 0..s.num_objects() as u32 {
        let b = presheaf::boundary(s, o);
        let sp = presheaf::spine(s, o).unwrap();
        assert!(b.inclusion.is_mono() && sp.inclusion.is_mono());
        assert!(!b.inclusion.is_epi(), "the boundary misses the identity");
        let width = match s.object(o) {
            theta_cells::site::SiteObject::Table(t) => t.width(),
            _ => unreachable!(),
        };
        if width >= 2 {
            assert!(!sp.inclusion.is_epi(), "spine of {} is everything", s.object(o));
            // the spine lies in the boundary
            for p in 0..s.num_objects() as u32 {
                let inside: Vec<u32> = b.inclusion.component(p).to_vec();
                assert!(sp.inclusion.component(p).iter().all(|y| inside.contains(y)));
            }
        } else {
            assert!(sp.inclusion.is_iso(), "a globe is its own spine");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn yoneda_counts(i in any::<usize>(), o in 0u32..8) {
        let p = presheaves();
        let x = &p[i % p.len()];
        let rep = presheaf::representable(site(), o).presheaf;
        prop_assert_eq!(enumerate_maps(&rep, x).unwrap().len(), x.size(o));
    }

    #[test]
    fn every_element_has_one_eilenberg_zilber_decomposition(i in any::<usize>()) {
        let p = presheaves();
        let x = &p[i % p.len()];
        let s = site();
        let ez = x.ez().unwrap();
        for o in 0..s.num_objects() as u32 {
            for e in 0..x.size(o) as u32 {
                let (g, y) = ez.decompose(o, e);
                prop_assert!(s.is_split_epi(g));
                prop_assert!(ez.is_nondegenerate(s.target(g), y));
                prop_assert_eq!(x.act(g, y), e);
                // independently: split epis out of o applied to nondegenerate elements
                let mut found = 0;
                for t in 0..s.num_objects() as u32 {
                    for &h in s.hom(o, t) {
                        if !s.is_split_epi(h) {
                            continue;
                        }
                        found += ez.nondegenerate(t).iter().filter(|&&z| x.act(h, z) == e).count();
                    }
                }
                prop_assert_eq!(found, 1);
            }
        }
    }

    #[test]
    fn products_and_coproducts_count_pointwise(i in any::<usize>(), j in any::<usize>()) {
        let p = presheaves();
        let (x, y) = (&p[i % p.len()], &p[j % p.len()]);
        let (prod, p1, p2) = presheaf::product(x, y).unwrap();
        let (sum, _, _) = presheaf::coproduct(x, y).unwrap();
        prod.check_functoriality().unwrap();
        sum.check_functoriality().unwrap();
        for o in 0..site().num_objects() as u32 {
            prop_assert_eq!(prod.size(o), x.size(o) * y.size(o));
            prop_assert_eq!(sum.size(o), x.size(o) + y.size(o));
        }
        // a product over the terminal presheaf is a pullback
        let pt = Presheaf::terminal(site());
        let bang = |z: &Arc<Presheaf>| PresheafMap::new(z.clone(), pt.clone(), z.sizes().iter().map(|&n| vec![0; n]).collect()).unwrap();
        let (pb, _, _) = presheaf::pullback(&bang(x), &bang(y)).unwrap();
        prop_assert_eq!(pb.sizes(), prod.sizes());
        for q in [&p1, &p2] {
            prop_assert!(PresheafMap::new(q.source.clone(), q.target.clone(), q.components().to_vec()).is_ok());
        }
    }
}
