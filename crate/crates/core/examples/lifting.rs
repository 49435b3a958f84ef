//! Lifting problems between presheaves and bounded trivial-fibration
//! verdicts.
//!
//! cargo run --example lifting

use std::sync::Arc;

use theta_cells::catalog;
use theta_cells::lifting::{
    anodyne_generators, check_trivial_fibration, for_each_square, interval_pushout_product, nerve_of_functor, spine_generators,
    EndpointMode, IntervalObject,
};
use theta_cells::presheaf;
use theta_cells::site::{Bounds, Site};
use theta_cells::theta::{Table, Theta};

fn main() -> theta_cells::Result<()> {
    let site = Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 2))?;

    // squares from the boundary of an arrow to N(J) -> pt, with their lifts
    let f = nerve_of_functor(&site, &catalog::functor("J->pt", 2)?)?;
    let arrow = presheaf::boundary(&site, site.table(&Table::disk(1))?).inclusion;
    for_each_square(&f, &arrow, |p| {
        println!("square over δ_(1): {} lift(s)", p.count_lifts()?);
        Ok(true)
    })?;

    for name in ["J->pt", "G2->pt", "j2", "D1->pt"] {
        let v = check_trivial_fibration(&nerve_of_functor(&site, &catalog::functor(name, 2)?)?)?;
        println!("N({name}): {} after {} squares", v.verdict, v.squares);
    }

    let interval = IntervalObject::nerve_of_j(&site)?;
    let both = interval_pushout_product(&arrow, &interval, EndpointMode::Both)?;
    println!(
        "\nδ_(1) against N(J) and both endpoints: domain {} elements, codomain {}",
        both.source.total(),
        both.target.total()
    );
    let gens = anodyne_generators(&spine_generators(&site)?, &interval, 1)?;
    println!("anodyne generators at depth 1: {}", gens.len());
    Ok(())
}
