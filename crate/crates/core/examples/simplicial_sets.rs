//! Finite simplicial sets: horns, boundaries, nerves and the JSON listing of
//! faces and degeneracies.
//!
//! cargo run --example simplicial_sets

use std::sync::Arc;

use theta_cells::boxcalc::{boundary_inclusion, from_json, horn_inclusion, level, to_json};
use theta_cells::ncat::simply_connected_groupoid;
use theta_cells::presheaf;
use theta_cells::site::Site;

fn main() -> theta_cells::Result<()> {
    let delta = Site::delta(3)?;
    for m in 1..=3 {
        let b = boundary_inclusion(&delta, m)?;
        let h = horn_inclusion(&delta, m, 0)?;
        let sizes = |x: &theta_cells::presheaf::Presheaf| (0..=3).map(|k| x.size(level(&delta, k).unwrap())).collect::<Vec<_>>();
        println!(
            "∂Δ_{m} {:?}, Λ^{m}_0 {:?}, Δ_{m} {:?}",
            sizes(&b.source),
            sizes(&h.source),
            sizes(&b.target)
        );
    }

    let n = presheaf::nerve(&delta, &Arc::new(simply_connected_groupoid(1)))?;
    let data = to_json(&n)?;
    println!("\nnerve of J: levels {:?}", data.levels);
    let text = serde_json::to_string(&data)?;
    let back = from_json(&delta, &serde_json::from_str(&text)?)?;
    println!(
        "read back from {} bytes of JSON: same sizes {}",
        text.len(),
        back.sizes() == n.sizes()
    );
    Ok(())
}
