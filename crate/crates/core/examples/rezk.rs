//! Generators of the Rezk localizer on Θ_2×Δ and the resolution given by the
//! simply connected groupoids.
//!
//! cargo run --example rezk

use theta_cells::boxcalc::{resolution_check, rezk_generators, Bisite, RezkVariant};
use theta_cells::site::Bounds;

fn main() -> theta_cells::Result<()> {
    let bs = Bisite::bounded(2, Bounds::new(2, 2), 1)?;
    for variant in [RezkVariant::Collapse, RezkVariant::Sections] {
        let g = rezk_generators(&bs, variant)?;
        let monos = g.members.iter().filter(|(_, m)| m.is_mono()).count();
        println!("{variant:?}: {} generators, {monos} of them monomorphisms", g.len());
        for (label, m) in &g.members {
            if !m.is_mono() {
                println!("  not mono: {label}");
            }
        }
    }

    let r = resolution_check(2, 2, Bounds::new(2, 2))?;
    println!("\n{}", r.verdict);
    println!("  endpoints N(G_0) ⊔ N(G_0) -> N(G_1) mono: {}", r.endpoints_mono);
    for (k, v) in &r.trivial_fibrations {
        println!("  N(G_{k}) -> pt: {}", v.verdict);
    }
    Ok(())
}
