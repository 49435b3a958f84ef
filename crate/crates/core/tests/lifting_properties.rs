use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use theta_cells::boxcalc::{rezk_generators, Bisite, RezkVariant};
use theta_cells::catalog;
use theta_cells::lifting::{
    anodyne_generators, for_each_square, has_rlp, nerve_of_functor, qcat_generators, spine_generators, GeneratorSet, IntervalObject, Lift,
    LiftingProblem,
};
use theta_cells::presheaf::{self, PresheafMap};
use theta_cells::site::{Bounds, Site};
use theta_cells::theta::Theta;

fn site() -> &'static Arc<Site> {
    static S: OnceLock<Arc<Site>> = OnceLock::new();
    S.get_or_init(|| Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 2)).unwrap())
}

const FUNCTORS: [&str; 9] = ["J->pt", "j2", "s0_2", "s1_2", "e0", "D1->pt", "G2->pt", "id:J2", "D2->pt"];

fn maps() -> &'static [PresheafMap] {
    static M: OnceLock<Vec<PresheafMap>> = OnceLock::new();
    M.get_or_init(|| {
        FUNCTORS
            .iter()
            .map(|f| nerve_of_functor(site(), &catalog::functor(f, 2).unwrap()).unwrap())
            .collect()
    })
}

fn generators() -> &'static [PresheafMap] {
    static G: OnceLock<Vec<PresheafMap>> = OnceLock::new();
    G.get_or_init(|| {
        let s = site();
        (0..s.num_objects() as u32)
            .flat_map(|o| [presheaf::boundary(s, o).inclusion, presheaf::spine(s, o).unwrap().inclusion])
            .collect()
    })
}

fn same(a: &PresheafMap, b: &PresheafMap) -> bool {
    a.components() == b.components()
}

/// `f ⊔ f` together with the injection and the fold, which exhibit `f` as
/// a retract of it.
struct Doubled {
    g: PresheafMap,
    in_x: PresheafMap,
    in_y: PresheafMap,
    fold_x: PresheafMap,
}

fn doubled(f: &PresheafMap) -> Doubled {
    let (xx, in_x, _) = presheaf::coproduct(&f.source, &f.source).unwrap();
    let (yy, in_y, _) = presheaf::coproduct(&f.target, &f.target).unwrap();
    let n = f.site().num_objects() as u32;
    let (sx, sy) = (&f.source, &f.target);
    let g = (0..n)
        .map(|o| {
            let (nx, ny) = (sx.size(o) as u32, sy.size(o) as u32);
            (0..2 * nx)
                .map(|e| if e < nx { f.apply(o, e) } else { f.apply(o, e - nx) + ny })
                .collect()
        })
        .collect();
    let fold = (0..n)
        .map(|o| (0..2 * sx.size(o) as u32).map(|e| e % sx.size(o) as u32).collect())
        .collect();
    Doubled {
        g: PresheafMap::new(xx.clone(), yy, g).unwrap(),
        in_x,
        in_y,
        fold_x: PresheafMap::new(xx, sx.clone(), fold).unwrap(),
    }
}

#[test]
fn generator_sets_are_monomorphisms() {
    let s = site();
    let spines = spine_generators(s).unwrap();
    let anodyne = anodyne_generators(&spines, &IntervalObject::nerve_of_j(s).unwrap(), 1).unwrap();
    let qcat = qcat_generators(s, false).unwrap();
    for (label, m) in anodyne.members.iter().chain(&spines.members) {
        assert!(m.is_mono(), "{label}");
    }
    for (label, m) in &qcat.members {
        assert_eq!(m.is_mono(), label.starts_with("spine"), "{label}");
    }
    let bs = Bisite::bounded(2, Bounds::new(2, 1), 1).unwrap();
    for (label, m) in &rezk_generators(&bs, RezkVariant::Sections).unwrap().members {
        assert!(m.is_mono(), "{label}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn find_and_count_agree(i in any::<usize>(), j in any::<usize>()) {
        let (f, u) = (&maps()[i % maps().len()], &generators()[j % generators().len()]);
        let mut seen = 0;
        let mut failure = None;
        for_each_square(f, u, |p| {
            seen += 1;
            let count = p.count_lifts()?;
            match p.find_lift()? {
                Lift::Lift(h) => {
                    if count == 0 || !same(&h.after(&p.left)?, &p.top) || !same(&p.right.after(&h)?, &p.bottom) {
                        failure = Some(format!("bad lift, count {count}"));
                    }
                }
                Lift::NoLift if count > 0 => failure = Some(format!("NoLift with {count} lifts")),
                Lift::NoLift => {}
            }
            Ok(failure.is_none() && seen < 200)
        })
        .unwrap();
        prop_assert!(failure.is_none(), "{:?}", failure);
    }

    #[test]
    fn lifts_transfer_to_retracts(i in any::<usize>(), j in any::<usize>()) {
        let (f, u) = (&maps()[i % maps().len()], &generators()[j % generators().len()]);
        let d = doubled(f);
        let mut gens = GeneratorSet::new();
        gens.push("u", u.clone());
        let (on_f, on_g) = (has_rlp(f, &gens).unwrap().holds, has_rlp(&d.g, &gens).unwrap().holds);
        if on_g {
            prop_assert!(on_f);
        }
        // a lift of the transported square retracts to a lift of the original
        let mut checked = 0;
        for_each_square(f, u, |p| {
            let moved = LiftingProblem::new(p.left.clone(), d.g.clone(), d.in_x.after(&p.top)?, d.in_y.after(&p.bottom)?)?;
            if let Lift::Lift(h) = moved.find_lift()? {
                let back = d.fold_x.after(&h)?;
                let ok = LiftingProblem::new(p.left.clone(), p.right.clone(), p.top.clone(), p.bottom.clone())?;
                assert!(same(&back.after(&ok.left)?, &ok.top) && same(&ok.right.after(&back)?, &ok.bottom));
            }
            checked += 1;
            Ok(checked < 100)
        })
        .unwrap();
    }
}
