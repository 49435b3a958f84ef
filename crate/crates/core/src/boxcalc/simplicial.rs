//! Finite simplicial sets as presheaves on a truncated Δ, with the classical
//! face/degeneracy presentation used for import and export.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presheaf::{self, Presheaf, PresheafMap};
use crate::site::Site;
use crate::theta::Table;

/// Levels `0..=max_level` of a simplicial set: the simplex counts, the faces
/// `faces[m-1][i]: X_m → X_{m-1}` and the degeneracies
/// `degeneracies[m][j]: X_m → X_{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSetJson {
    pub levels: Vec<usize>,
    pub faces: Vec<Vec<Vec<u32>>>,
    pub degeneracies: Vec<Vec<Vec<u32>>>,
}

/// Top level of a truncated Δ site.
pub fn max_level(delta: &Site) -> Result<usize> {
    match (delta.theta_context().map(|t| t.n()), delta.bounds()) {
        (Some(1), Some(b)) => Ok(b.max_width),
        _ => Err(Error::Invalid("not a site of simplices".into())),
    }
}

/// The object `[m]`.
pub fn level(delta: &Site, m: usize) -> Result<u32> {
    delta.table(&Table::simplex(m))
}

/// The morphism `[p] → [q]` with the given values, which must be monotone.
pub fn monotone(delta: &Site, p: usize, q: usize, values: &[u32]) -> Result<u32> {
    let (s, t) = (level(delta, p)?, level(delta, q)?);
    delta
        .by_object_map(s, t, values)
        .ok_or_else(|| Error::Invalid(format!("{values:?} is not a monotone map [{p}] -> [{q}]")))
}

/// The coface `[m-1] → [m]` skipping `i`.
pub fn coface(delta: &Site, m: usize, i: usize) -> Result<u32> {
    let values: Vec<u32> = (0..=m as u32).filter(|&x| x != i as u32).collect();
    monotone(delta, m - 1, m, &values)
}

/// The codegeneracy `[m+1] → [m]` hitting `j` twice.
pub fn codegeneracy(delta: &Site, m: usize, j: usize) -> Result<u32> {
    let values: Vec<u32> = (0..=m as u32 + 1).map(|x| if x > j as u32 { x - 1 } else { x }).collect();
    monotone(delta, m + 1, m, &values)
}

/// `Δ_m`.
pub fn simplex(delta: &Arc<Site>, m: usize) -> Result<Arc<Presheaf>> {
    Ok(presheaf::representable(delta, level(delta, m)?).presheaf)
}

/// `∂Δ_m → Δ_m`.
pub fn boundary_inclusion(delta: &Arc<Site>, m: usize) -> Result<PresheafMap> {
    Ok(presheaf::boundary(delta, level(delta, m)?).inclusion)
}

/// `Λ^m_k → Δ_m`: the union of the faces other than the `k`-th.
pub fn horn_inclusion(delta: &Arc<Site>, m: usize, k: usize) -> Result<PresheafMap> {
    if m == 0 || k > m {
        return Err(Error::Invalid(format!("no horn Λ^{m}_{k}")));
    }
    let top = level(delta, m)?;
    let rep = presheaf::representable(delta, top).presheaf;
    let s = level(delta, m - 1)?;
    let gens = (0..=m)
        .filter(|&i| i != k)
        .map(|i| {
            let d = coface(delta, m, i)?;
            let pos = delta.hom(s, top).iter().position(|&f| f == d).expect("coface in its hom-set");
            Ok((s, pos as u32))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(presheaf::subpresheaf(&rep, &gens).inclusion)
}

/// The classical presentation of a presheaf on a truncated Δ.
pub fn to_json(x: &Presheaf) -> Result<SimplicialSetJson> {
    let delta = x.site();
    let top = max_level(delta)?;
    let levels = (0..=top).map(|m| level(delta, m).map(|o| x.size(o))).collect::<Result<Vec<_>>>()?;
    let faces = (1..=top)
        .map(|m| {
            (0..=m)
                .map(|i| coface(delta, m, i).map(|d| x.action(d).to_vec()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let degeneracies = (0..top)
        .map(|m| {
            (0..=m)
                .map(|j| codegeneracy(delta, m, j).map(|s| x.action(s).to_vec()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialSetJson {
        levels,
        faces,
        degeneracies,
    })
}

/// Builds the presheaf from faces and degeneracies. A monotone `α` acts by
/// the faces deleting the indices outside its image, in descending order,
/// followed by the degeneracies `s_j` for `α(j) = α(j+1)`, in ascending order.
/// The simplicial identities are checked through functoriality.
pub fn from_json(delta: &Arc<Site>, data: &SimplicialSetJson) -> Result<Arc<Presheaf>> {
    let top = max_level(delta)?;
    let bad = |what: &str| Error::Parse(format!("simplicial set: {what}"));
    if data.levels.len() != top + 1 {
        return Err(bad(&format!("expected {} levels, got {}", top + 1, data.levels.len())));
    }
    if data.faces.len() != top || data.degeneracies.len() != top {
        return Err(bad("wrong number of face or degeneracy levels"));
    }
    for m in 1..=top {
        check_table(&data.faces[m - 1], m + 1, data.levels[m], data.levels[m - 1]).map_err(|e| bad(&format!("faces at level {m}: {e}")))?;
    }
    for m in 0..top {
        check_table(&data.degeneracies[m], m + 1, data.levels[m], data.levels[m + 1])
            .map_err(|e| bad(&format!("degeneracies at level {m}: {e}")))?;
    }
    let sizes: Vec<usize> = (0..delta.num_objects() as u32)
        .map(|o| Ok(data.levels[table_level(delta, o)?]))
        .collect::<Result<Vec<_>>>()?;
    let act = (0..delta.num_morphisms() as u32)
        .map(|g| {
            let (p, q) = (table_level(delta, delta.source(g))?, table_level(delta, delta.target(g))?);
            let alpha = &delta.cell_map(g)[0];
            Ok((0..data.levels[q] as u32).map(|x| act_monotone(data, alpha, p, q, x)).collect())
        })
        .collect::<Result<Vec<Vec<u32>>>>()?;
    let labels = sizes.iter().map(|&n| (0..n).map(|i| i.to_string()).collect()).collect();
    let x = Presheaf::from_parts(delta.clone(), sizes, act, labels)?;
    x.check_functoriality()
        .map_err(|e| bad(&format!("simplicial identities fail: {e}")))?;
    Ok(x)
}

fn check_table(t: &[Vec<u32>], count: usize, from: usize, to: usize) -> std::result::Result<(), String> {
    if t.len() != count {
        return Err(format!("expected {count} maps, got {}", t.len()));
    }
    if t.iter().any(|row| row.len() != from || row.iter().any(|&y| y as usize >= to)) {
        return Err("map of the wrong shape".into());
    }
    Ok(())
}

fn table_level(delta: &Site, o: u32) -> Result<usize> {
    match delta.object(o) {
        crate::site::SiteObject::Table(t) => t.as_simplex(),
        other => Err(Error::Invalid(format!("{other} is not a simplex"))),
    }
}

fn act_monotone(data: &SimplicialSetJson, alpha: &[u32], p: usize, q: usize, mut x: u32) -> u32 {
    let image: Vec<u32> = {
        let mut v = alpha.to_vec();
        v.dedup();
        v
    };
    let mut m = q;
    for i in (0..=q as u32).rev() {
        if !image.contains(&i) {
            x = data.faces[m - 1][i as usize][x as usize];
            m -= 1;
        }
    }
    for j in 0..p {
        if alpha[j] == alpha[j + 1] {
            x = data.degeneracies[m][j][x as usize];
            m += 1;
        }
    }
    x
}
