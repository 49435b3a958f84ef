//! Tables of dimensions, the morphisms of Θ_n between them and their
//! split-epi/mono factorizations.
//!
//! cargo run --example cell_category

use theta_cells::theta::{enumerate_objects, Table, Theta};

fn main() -> theta_cells::Result<()> {
    let theta = Theta::new(2);
    let tables = enumerate_objects(2, 2);
    println!("{} tables of dimension <= 2 and width <= 2:", tables.len());
    for t in &tables {
        let free = theta.free_ncat(t)?;
        println!("  {:<10} free 2-category with cells {:?}", format!("({t})"), free.cell_counts());
    }

    let (s, t): (Table, Table) = ("1 1 / 0".parse()?, "2".parse()?);
    let homs = theta.hom(&s, &t)?;
    println!("\nhom({s}, {t}) has {} morphisms", homs.len());
    for f in &homs {
        let (e, m) = theta.ez_factorize(f)?;
        println!("  {:<24} = mono {} after split epi onto ({})", f.encode(), m.encode(), e.target);
    }

    let tri: Table = "1 1 / 0".parse()?;
    println!("\nproper monos into ({tri}): {}", theta.boundary_monos(&tri)?.len());
    let legs = theta.spine_inclusions(&tri)?;
    println!(
        "spine of ({tri}): {} globes glued along {} overlaps",
        legs.globes.len(),
        legs.overlaps.len()
    );
    Ok(())
}
