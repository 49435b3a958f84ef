//! The internal hom of strict n-categories.
//!
//! A `k`-cell of `Hom(C, D)` is a strict functor `C × D_k → D`. Sources and
//! targets restrict along the two inclusions `D_{k−1} → D_k`, identities
//! precompose with the collapse `D_{k+1} → D_k`, and the `j`-composite of two
//! `k`-cells is the unique extension to `C × (D_k ⊔_{D_j} D_k)` followed by
//! the comultiplication `D_k → D_k ⊔_{D_j} D_k`.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{compose_maps, disk, globe_map, glued_disks, CellMap, FiniteNCat, FunctorSearch, NFunctor};
use crate::error::{Error, Result};

/// `Hom(C, D)` with the functor behind each of its cells.
#[derive(Clone, Debug)]
pub struct InternalHom {
    pub cat: Arc<FiniteNCat>,
    pub source: Arc<FiniteNCat>,
    pub target: Arc<FiniteNCat>,
    /// `cells[k][x]` is the functor `C × D_k → D` of the `k`-cell `x`.
    pub cells: Vec<Vec<CellMap>>,
}

fn along(c: &Arc<FiniteNCat>, g: &NFunctor) -> CellMap {
    NFunctor::identity(c.clone()).product(g).expect("same level").map
}

pub fn internal_hom(c: &Arc<FiniteNCat>, d: &Arc<FiniteNCat>) -> Result<InternalHom> {
    if c.level() != d.level() {
        return Err(Error::LevelMismatch(c.level(), d.level()));
    }
    let n = c.level();
    let mut disks = Vec::new();
    let mut cells: Vec<Vec<CellMap>> = Vec::new();
    let mut index: Vec<FxHashMap<CellMap, u32>> = Vec::new();
    for k in 0..=n {
        let (dk, generator) = disk(k, n);
        let cd = c.product(&dk)?;
        let found = FunctorSearch::new(&cd, d)?.collect(None);
        index.push(found.iter().cloned().enumerate().map(|(i, m)| (m, i as u32)).collect());
        cells.push(found);
        disks.push((Arc::new(dk), generator));
    }
    let lookup = |index: &FxHashMap<CellMap, u32>, m: CellMap| -> u32 { *index.get(&m).expect("restriction of a functor is a functor") };

    let mut src = vec![vec![]; n + 1];
    let mut tgt = vec![vec![]; n + 1];
    for k in 1..=n {
        let (dk, generator) = &disks[k];
        let sigma = along(c, &globe_map(k - 1, dk.clone(), dk.src(k, *generator)));
        let tau = along(c, &globe_map(k - 1, dk.clone(), dk.tgt(k, *generator)));
        for f in &cells[k] {
            src[k].push(lookup(&index[k - 1], compose_maps(f, &sigma)));
            tgt[k].push(lookup(&index[k - 1], compose_maps(f, &tau)));
        }
    }
    let mut ident = vec![vec![]; n];
    for k in 0..n {
        let (dk, generator) = &disks[k];
        let collapse = along(c, &globe_map(k + 1, dk.clone(), dk.ident(k, *generator)));
        ident[k] = cells[k].iter().map(|f| lookup(&index[k + 1], compose_maps(f, &collapse))).collect();
    }

    let boundary_to = |table: &Vec<Vec<u32>>, k: usize, x: u32, j: usize| -> u32 {
        (j + 1..=k)
            .rev()
            .fold(x, |y, d| if d == j + 1 { table[d][y as usize] } else { src[d][y as usize] })
    };
    let mut comp = Vec::new();
    for k in 1..=n {
        for j in 0..k {
            let (glued, f, g) = glued_disks(k, j, n);
            let glued = Arc::new(glued);
            let leg_f = along(c, &globe_map(k, glued.clone(), f));
            let leg_g = along(c, &globe_map(k, glued.clone(), g));
            let cocomp = along(
                c,
                &globe_map(k, glued.clone(), glued.comp(j, k, g, f).expect("glued disks compose")),
            );
            let domain = c.product(&glued)?;
            let mut by_src: Vec<Vec<u32>> = vec![vec![]; cells[j].len()];
            for y in 0..cells[k].len() as u32 {
                by_src[boundary_to(&src, k, y, j) as usize].push(y);
            }
            let mut entries = Vec::new();
            for x in 0..cells[k].len() as u32 {
                for &y in &by_src[boundary_to(&tgt, k, x, j) as usize] {
                    let mut search = FunctorSearch::new(&domain, d)?;
                    for dim in 0..=n {
                        for (z, &w) in leg_f[dim].iter().enumerate() {
                            search = search.pin(dim, w, cells[k][x as usize][dim][z]);
                        }
                        for (z, &w) in leg_g[dim].iter().enumerate() {
                            search = search.pin(dim, w, cells[k][y as usize][dim][z]);
                        }
                    }
                    let h = search
                        .first()
                        .ok_or_else(|| Error::Invalid(format!("cells {y} and {x} of dimension {k} do not glue along dimension {j}")))?;
                    entries.push([y, x, lookup(&index[k], compose_maps(&h, &cocomp))]);
                }
            }
            comp.push((j, k, entries));
        }
    }
    let sizes = cells.iter().map(Vec::len).collect();
    let cat = FiniteNCat::from_parts(n, sizes, src, tgt, ident, comp)?;
    Ok(InternalHom {
        cat: Arc::new(cat),
        source: c.clone(),
        target: d.clone(),
        cells,
    })
}

/// Evaluation `Hom(C, D) → D` at the object `x` of `C`: a `k`-cell
/// `F : C × D_k → D` goes to `F(1_x, generator)`.
pub fn evaluation_at(h: &InternalHom, x: u32) -> NFunctor {
    let n = h.cat.level();
    let map = (0..=n)
        .map(|k| {
            let (dk, generator) = disk(k, n);
            let cell = h.source.ident_to(0, x, k) * dk.size(k) as u32 + generator;
            h.cells[k].iter().map(|f| f[k][cell as usize]).collect()
        })
        .collect();
    NFunctor::new_unchecked(h.cat.clone(), h.target.clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncat::{build_interval, is_fully_faithful, simply_connected_groupoid};

    #[test]
    fn hom_out_of_the_point_is_the_target() {
        let j2 = Arc::new(build_interval(2).unwrap().cat);
        let h = internal_hom(&Arc::new(FiniteNCat::terminal(2)), &j2).unwrap();
        assert_eq!(h.cat.cell_counts(), j2.cell_counts());
        assert!(h.cat.validate().is_valid());
        let ev = evaluation_at(&h, 0);
        assert!(ev.is_valid());
        assert!(ev.is_injective());
    }

    #[test]
    fn hom_from_j_into_a_groupoid() {
        let j = Arc::new(simply_connected_groupoid(1));
        let g = Arc::new(simply_connected_groupoid(2));
        let h = internal_hom(&j, &g).unwrap();
        // objects are the invertible arrows of the target
        assert_eq!(h.cat.size(0), 9);
        assert!(h.cat.validate().is_valid(), "{}", h.cat.validate());
        for x in 0..2 {
            let ev = evaluation_at(&h, x);
            assert!(ev.is_valid());
            assert!(is_fully_faithful(&ev));
        }
    }
}
