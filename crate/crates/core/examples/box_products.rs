//! External products on Θ_2×Δ, pushout-products, the two divisions and the
//! three-way orthogonality check.
//!
//! cargo run --release --example box_products

use theta_cells::boxcalc::{
    boundary_inclusion, external_product, left_division, named_triple, orthogonality_equivalence_test, orthogonality_sample,
    pushout_product, right_division, simplex, Bisite,
};
use theta_cells::presheaf;
use theta_cells::site::Bounds;
use theta_cells::theta::Table;

fn main() -> theta_cells::Result<()> {
    let bs = Bisite::bounded(2, Bounds::new(2, 1), 2)?;
    let arrow = bs.theta.table(&Table::disk(1))?;
    let rep = presheaf::representable(&bs.theta, arrow).presheaf;
    let d1 = simplex(&bs.delta, 1)?;
    let p = external_product(&bs, &rep, &d1)?;
    println!(
        "(1) □ Δ_1 at ((0), [1]): {} elements",
        p.presheaf.size(bs.object(bs.theta.point(), 1)?)
    );

    let u = presheaf::boundary(&bs.theta, arrow).inclusion;
    let v = boundary_inclusion(&bs.delta, 1)?;
    let pp = pushout_product(&bs, &u, &v)?;
    let at = bs.object(arrow, 1)?;
    println!("δ_(1) □′ δ_Δ1 at ((1), [1]): {} -> {}", pp.source.size(at), pp.target.size(at));

    let t = named_triple(&bs)?;
    let r = right_division(&bs, &t.f, &t.v)?;
    let l = left_division(&bs, &t.u, &t.f)?;
    println!(
        "⟨f/v⟩ has {} elements over Θ_2, ⟨u\\f⟩ has {} over Δ",
        r.map.source.total(),
        l.map.source.total()
    );
    let report = orthogonality_equivalence_test(&bs, &t.u, &t.v, &t.f)?;
    println!("{}: {:?}", t.label, report);

    let sample = orthogonality_sample(&bs, 7, 50)?;
    println!(
        "{} sampled triples, all agree {}, {} with lifts",
        sample.samples.len(),
        sample.agree,
        sample.positive
    );
    Ok(())
}
