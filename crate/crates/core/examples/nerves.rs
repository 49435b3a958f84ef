//! Nerves of strict 2-categories as presheaves on a bounded Θ_2, with
//! boundaries, spines and the Segal condition.
//!
//! cargo run --example nerves

use std::sync::Arc;

use theta_cells::catalog;
use theta_cells::presheaf::{self, enumerate_maps};
use theta_cells::site::{Bounds, Site};
use theta_cells::theta::{Table, Theta};

fn main() -> theta_cells::Result<()> {
    let site = Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 2))?;
    let j2 = catalog::category("J2", 2)?;
    let n = presheaf::nerve(&site, &j2)?;
    println!("N(J_2) on {}:", site.describe());
    for o in 0..site.num_objects() as u32 {
        println!("  {:<12} {:>3} elements", site.object(o).to_string(), n.size(o));
    }

    let tri = site.table(&"1 1 / 0".parse::<Table>()?)?;
    let b = presheaf::boundary(&site, tri);
    let s = presheaf::spine(&site, tri)?;
    println!(
        "\nat ((1,1);(0)): representable {}, boundary {}, spine {} elements in total",
        b.inclusion.target.total(),
        b.presheaf.total(),
        s.presheaf.total()
    );
    println!(
        "maps from the representable into N(J_2): {}",
        enumerate_maps(&b.inclusion.target, &n)?.len()
    );
    println!("maps from its spine into N(J_2): {}", enumerate_maps(&s.presheaf, &n)?.len());

    let ez = n.ez()?;
    println!("\nnondegenerate elements of N(J_2): {}", n.nondegenerate_cells()?.len());
    let (e, x) = ez.decompose(tri, 0);
    println!(
        "element 0 at ((1,1);(0)) degenerates from element {x} at {}",
        site.object(site.target(e))
    );

    for name in ["J", "J2", "D2", "G2"] {
        let c = catalog::category(name, 2)?;
        let ok = (0..site.num_objects() as u32).all(|o| presheaf::segal_check(&site, &c, o).unwrap_or(false));
        println!("Segal condition for N({name}): {ok}");
    }
    Ok(())
}
