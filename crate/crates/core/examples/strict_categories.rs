//! The intervals J_k, internal homs, truncations and unique lifts of strict
//! n-categories.
//!
//! cargo run --example strict_categories

use std::sync::Arc;

use theta_cells::ncat::{
    build_interval, disk, enumerate_functors, evaluation_at, internal_hom, is_fully_faithful, is_iso_fibration, truncate_right,
    truncate_right_functor, unique_lift, FiniteNCat, LiftClass, NFunctor,
};

fn main() -> theta_cells::Result<()> {
    for k in 1..=3 {
        let iv = build_interval(k)?;
        println!("J_{k}: cells {:?}, valid {}", iv.cat.cell_counts(), iv.cat.validate().is_valid());
    }

    let iv = build_interval(2)?;
    let tr = truncate_right(&iv.cat);
    println!("\nt_r(J_2) has {} objects and {} arrows", tr.size(0), tr.size(1));
    println!(
        "t_r(j_2) is an iso-fibration: {}",
        is_iso_fibration(&truncate_right_functor(&iv.j))?
    );

    let j = Arc::new(iv.cat.clone());
    let d1 = Arc::new(disk(1, 2).0);
    let h = internal_hom(&Arc::new(build_interval(1)?.cat.promote(2)), &d1)?;
    println!("\nHom(J, L(D_1)) has cells {:?}", h.cat.cell_counts());
    println!("evaluation at 0 is fully faithful: {}", is_fully_faithful(&evaluation_at(&h, 0)));

    // a bijective-on-objects functor against a fully faithful one
    let pt = Arc::new(FiniteNCat::terminal(2));
    let two = Arc::new(pt.coproduct(&pt)?);
    let u = enumerate_functors(&two, &j)?
        .into_iter()
        .find(NFunctor::is_bijective_on_objects)
        .expect("two objects");
    let v = NFunctor::identity(j.clone());
    let class = unique_lift(&u, &v, &u, &NFunctor::identity(j))?;
    println!(
        "\nsquare with a bijective-on-objects left leg: unique lift {}",
        matches!(class, LiftClass::UniqueLift(_))
    );
    Ok(())
}
