//! The nerve of the collapse j_2 : J_2 → D_1 is not a trivial fibration,
//! although its right truncation is an iso-fibration.
//!
//! cargo run --example counterexample

use theta_cells::lifting::{check_not_2qcat, verify_counterexample};
use theta_cells::site::Bounds;

fn main() -> theta_cells::Result<()> {
    let r = verify_counterexample(2, 2, Bounds::new(2, 2), 1)?;
    println!("{} (table {})", r.verdict, r.table);
    for (b, no_lift) in &r.no_lift_at {
        println!("  no lift against the boundary at ({b}): {no_lift}");
    }
    println!("  the triangle (id, a, b) has no filler: {}", r.named_square_no_lift);
    println!("  t_r(j_2) is an iso-fibration: {}", r.truncation_is_iso_fibration);
    println!("  anodyne generators: {}", r.anodyne.verdict);
    if let Some(w) = &r.witness {
        println!("\nwitness square against {}:", w.generator);
        for c in &w.top {
            println!("  top    {} {} -> {}", c.object, c.cell, c.image);
        }
        for c in &w.bottom {
            println!("  bottom {} {} -> {}", c.object, c.cell, c.image);
        }
    }

    let q = check_not_2qcat(Bounds::new(2, 2))?;
    println!(
        "\n{}; left map mono {}, sizes at the point {:?}",
        q.verdict, q.left_is_mono, q.counts_at_point
    );
    Ok(())
}
