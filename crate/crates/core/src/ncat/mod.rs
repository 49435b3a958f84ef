//! Explicit finite strict n-categories.
//!
//! A [`FiniteNCat`] stores every cell of every dimension as an opaque integer
//! id, together with source/target maps, identities (stored explicitly) and one
//! partial composition table per pair of dimensions `j < k`. Composition
//! `comp(j, k, g, f)` is "g after f": it is defined when the `j`-target of `f`
//! equals the `j`-source of `g`.

mod build;
mod functor;
mod hom;
mod json;
mod props;
mod search;
mod truncate;
mod validate;

pub use build::{
    build_interval, disk, globe_map, glued_disks, simply_connected_groupoid, wreath, wreath_delta1, wreath_functor, Interval, Wreath,
};
pub use functor::{compose_maps, CellMap, NFunctor};
pub use hom::{evaluation_at, internal_hom, InternalHom};
pub use json::{CompJson, NCatJson};
pub use props::{is_fully_faithful, is_iso_fibration, iso_fibration_variants, unique_lift, LiftClass};
pub use search::{enumerate_functors, FunctorSearch};
pub use truncate::{truncate, truncate_right, truncate_right_functor, truncate_with_classes};
pub use validate::{Law, ValidationReport, Violation};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Partial composition table for one pair of dimensions.
#[derive(Clone, Debug, Default)]
pub struct CompTable {
    entries: Vec<[u32; 3]>,
    lookup: FxHashMap<u64, u32>,
}

#[inline]
fn key(g: u32, f: u32) -> u64 {
    ((g as u64) << 32) | f as u64
}

impl CompTable {
    pub fn from_entries(mut entries: Vec<[u32; 3]>) -> Self {
        entries.sort_unstable();
        entries.dedup();
        let lookup = entries.iter().map(|&[g, f, r]| (key(g, f), r)).collect();
        CompTable { entries, lookup }
    }

    #[inline]
    pub fn get(&self, g: u32, f: u32) -> Option<u32> {
        self.lookup.get(&key(g, f)).copied()
    }

    /// `(g, f, g∘f)` triples in ascending order.
    pub fn entries(&self) -> &[[u32; 3]] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn set(&mut self, g: u32, f: u32, r: u32) {
        if let Some(e) = self.entries.iter_mut().find(|e| e[0] == g && e[1] == f) {
            e[2] = r;
        } else {
            self.entries.push([g, f, r]);
            self.entries.sort_unstable();
        }
        self.lookup.insert(key(g, f), r);
    }
}

/// A finite strict n-category given by explicit cell tables.
#[derive(Clone, Debug)]
pub struct FiniteNCat {
    level: usize,
    sizes: Vec<usize>,
    // src[k], tgt[k] for k >= 1; index 0 is empty.
    src: Vec<Vec<u32>>,
    tgt: Vec<Vec<u32>>,
    // ident[k] : cells[k] -> cells[k+1] for k < level.
    ident: Vec<Vec<u32>>,
    // comp[k][j] for j < k.
    comp: Vec<Vec<CompTable>>,
}

impl FiniteNCat {
    /// Assembles a category from raw tables without checking any law; use
    /// [`FiniteNCat::validate`] to check it.
    pub fn from_parts(
        level: usize,
        sizes: Vec<usize>,
        src: Vec<Vec<u32>>,
        tgt: Vec<Vec<u32>>,
        ident: Vec<Vec<u32>>,
        comp: Vec<(usize, usize, Vec<[u32; 3]>)>,
    ) -> Result<Self> {
        if sizes.len() != level + 1 || src.len() != level + 1 || tgt.len() != level + 1 {
            return Err(Error::Invalid(format!(
                "expected {} dimensions of cells, sources and targets",
                level + 1
            )));
        }
        if ident.len() != level {
            return Err(Error::Invalid(format!("expected {level} identity tables")));
        }
        let mut tables: Vec<Vec<CompTable>> = (0..=level).map(|k| vec![CompTable::default(); k]).collect();
        for (j, k, entries) in comp {
            if j >= k || k > level {
                return Err(Error::Invalid(format!("composition table ({j},{k}) out of range")));
            }
            let mut all = std::mem::take(&mut tables[k][j]).entries;
            all.extend(entries);
            tables[k][j] = CompTable::from_entries(all);
        }
        Ok(FiniteNCat {
            level,
            sizes,
            src,
            tgt,
            ident,
            comp: tables,
        })
    }

    /// The terminal n-category: one cell in each dimension.
    pub fn terminal(level: usize) -> Self {
        let sizes = vec![1; level + 1];
        let src = (0..=level).map(|k| if k == 0 { vec![] } else { vec![0] }).collect();
        let tgt = (0..=level).map(|k| if k == 0 { vec![] } else { vec![0] }).collect();
        let ident = (0..level).map(|_| vec![0]).collect();
        let comp = (0..=level)
            .map(|k| (0..k).map(|_| CompTable::from_entries(vec![[0, 0, 0]])).collect())
            .collect();
        FiniteNCat {
            level,
            sizes,
            src,
            tgt,
            ident,
            comp,
        }
    }

    /// The empty n-category.
    pub fn empty(level: usize) -> Self {
        FiniteNCat {
            level,
            sizes: vec![0; level + 1],
            src: vec![vec![]; level + 1],
            tgt: vec![vec![]; level + 1],
            ident: vec![vec![]; level],
            comp: (0..=level).map(|k| vec![CompTable::default(); k]).collect(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Number of `k`-cells (identities included).
    pub fn size(&self, k: usize) -> usize {
        self.sizes[k]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_cells(&self) -> usize {
        self.sizes.iter().sum()
    }

    #[inline]
    pub fn src(&self, k: usize, x: u32) -> u32 {
        self.src[k][x as usize]
    }

    #[inline]
    pub fn tgt(&self, k: usize, x: u32) -> u32 {
        self.tgt[k][x as usize]
    }

    /// Identity `(k+1)`-cell on the `k`-cell `x`.
    #[inline]
    pub fn ident(&self, k: usize, x: u32) -> u32 {
        self.ident[k][x as usize]
    }

    /// `g ∘_j f` for `k`-cells, if defined.
    #[inline]
    pub fn comp(&self, j: usize, k: usize, g: u32, f: u32) -> Option<u32> {
        self.comp[k][j].get(g, f)
    }

    pub fn comp_table(&self, j: usize, k: usize) -> &CompTable {
        &self.comp[k][j]
    }

    pub(crate) fn src_table(&self, k: usize) -> &[u32] {
        &self.src[k]
    }

    pub(crate) fn tgt_table(&self, k: usize) -> &[u32] {
        &self.tgt[k]
    }

    pub(crate) fn ident_table(&self, k: usize) -> &[u32] {
        &self.ident[k]
    }

    /// Overwrites one composition entry without any check. Meant for
    /// building malformed fixtures for [`FiniteNCat::validate`].
    pub fn set_comp_raw(&mut self, j: usize, k: usize, g: u32, f: u32, r: u32) {
        self.comp[k][j].set(g, f, r);
    }

    /// Overwrites one source entry without any check.
    pub fn set_src_raw(&mut self, k: usize, x: u32, y: u32) {
        self.src[k][x as usize] = y;
    }

    /// Overwrites one identity entry without any check.
    pub fn set_ident_raw(&mut self, k: usize, x: u32, y: u32) {
        self.ident[k][x as usize] = y;
    }

    /// Iterated source of the `k`-cell `x` down to dimension `j`.
    pub fn src_to(&self, k: usize, x: u32, j: usize) -> u32 {
        (j + 1..=k).rev().fold(x, |c, d| self.src(d, c))
    }

    /// Iterated target of the `k`-cell `x` down to dimension `j`.
    pub fn tgt_to(&self, k: usize, x: u32, j: usize) -> u32 {
        (j + 1..=k).rev().fold(x, |c, d| self.tgt(d, c))
    }

    /// Iterated identity of the `j`-cell `x` up to dimension `k`.
    pub fn ident_to(&self, j: usize, x: u32, k: usize) -> u32 {
        (j..k).fold(x, |c, d| self.ident(d, c))
    }

    /// Whether the `k`-cell `x` is an identity (of some lower cell).
    pub fn is_identity(&self, k: usize, x: u32) -> bool {
        k > 0 && self.ident(k - 1, self.src(k, x)) == x
    }

    /// `k`-cells from `a` to `b` (both `(k-1)`-cells).
    pub fn hom_cells(&self, k: usize, a: u32, b: u32) -> impl Iterator<Item = u32> + '_ {
        (0..self.sizes[k] as u32).filter(move |&x| self.src(k, x) == a && self.tgt(k, x) == b)
    }

    /// Cell counts per dimension, e.g. `(2, 4, 6)` for `J_2`.
    pub fn cell_counts(&self) -> Vec<usize> {
        self.sizes.clone()
    }

    /// Cartesian product; cells are pairs `(c, d)` with id `c * |D_k| + d`.
    pub fn product(&self, other: &FiniteNCat) -> Result<FiniteNCat> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        let level = self.level;
        let pair = |k: usize, c: u32, d: u32| c * other.sizes[k] as u32 + d;
        let sizes: Vec<usize> = (0..=level).map(|k| self.sizes[k] * other.sizes[k]).collect();
        let mut src = vec![vec![]; level + 1];
        let mut tgt = vec![vec![]; level + 1];
        for k in 1..=level {
            for c in 0..self.sizes[k] as u32 {
                for d in 0..other.sizes[k] as u32 {
                    src[k].push(pair(k - 1, self.src(k, c), other.src(k, d)));
                    tgt[k].push(pair(k - 1, self.tgt(k, c), other.tgt(k, d)));
                }
            }
        }
        let mut ident = vec![vec![]; level];
        for (k, table) in ident.iter_mut().enumerate() {
            for c in 0..self.sizes[k] as u32 {
                for d in 0..other.sizes[k] as u32 {
                    table.push(pair(k + 1, self.ident(k, c), other.ident(k, d)));
                }
            }
        }
        let mut comp = Vec::new();
        for k in 1..=level {
            for j in 0..k {
                let mut entries = Vec::new();
                for &[g1, f1, r1] in self.comp_table(j, k).entries() {
                    for &[g2, f2, r2] in other.comp_table(j, k).entries() {
                        entries.push([pair(k, g1, g2), pair(k, f1, f2), pair(k, r1, r2)]);
                    }
                }
                comp.push((j, k, entries));
            }
        }
        FiniteNCat::from_parts(level, sizes, src, tgt, ident, comp)
    }

    /// Disjoint union; cells of `other` are shifted past those of `self`.
    pub fn coproduct(&self, other: &FiniteNCat) -> Result<FiniteNCat> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        let level = self.level;
        let off = |k: usize| self.sizes[k] as u32;
        let sizes = (0..=level).map(|k| self.sizes[k] + other.sizes[k]).collect();
        let mut src = vec![vec![]; level + 1];
        let mut tgt = vec![vec![]; level + 1];
        for k in 1..=level {
            src[k] = self.src[k].clone();
            src[k].extend(other.src[k].iter().map(|&x| x + off(k - 1)));
            tgt[k] = self.tgt[k].clone();
            tgt[k].extend(other.tgt[k].iter().map(|&x| x + off(k - 1)));
        }
        let ident = (0..level)
            .map(|k| {
                let mut t = self.ident[k].clone();
                t.extend(other.ident[k].iter().map(|&x| x + off(k + 1)));
                t
            })
            .collect();
        let mut comp = Vec::new();
        for k in 1..=level {
            for j in 0..k {
                let mut entries = self.comp_table(j, k).entries().to_vec();
                let o = off(k);
                entries.extend(other.comp_table(j, k).entries().iter().map(|&[g, f, r]| [g + o, f + o, r + o]));
                comp.push((j, k, entries));
            }
        }
        FiniteNCat::from_parts(level, sizes, src, tgt, ident, comp)
    }

    /// Views this category as a strict `level`-category by adding identity
    /// cells in every dimension above its own.
    pub fn promote(&self, level: usize) -> FiniteNCat {
        assert!(level >= self.level, "promote cannot lower the level");
        if level == self.level {
            return self.clone();
        }
        let top = self.level;
        let mut out = self.clone();
        out.level = level;
        for k in top + 1..=level {
            let n = self.sizes[top];
            out.sizes.push(n);
            out.src.push((0..n as u32).collect());
            out.tgt.push((0..n as u32).collect());
            out.ident.push((0..n as u32).collect());
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let entries = if j < top {
                    self.comp_table(j, top).entries().to_vec()
                } else {
                    (0..n as u32).map(|x| [x, x, x]).collect()
                };
                row.push(CompTable::from_entries(entries));
            }
            out.comp.push(row);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_is_valid() {
        for n in 0..4 {
            assert!(FiniteNCat::terminal(n).validate().is_valid());
        }
    }

    #[test]
    fn product_with_terminal_keeps_counts() {
        let j = simply_connected_groupoid(1).promote(2);
        let p = j.product(&FiniteNCat::terminal(2)).unwrap();
        assert_eq!(p.cell_counts(), j.cell_counts());
        assert!(p.validate().is_valid());
    }

    #[test]
    fn product_of_j_with_itself() {
        let j = simply_connected_groupoid(1);
        let p = j.product(&j).unwrap();
        assert_eq!(p.cell_counts(), vec![4, 16]);
        assert!(p.validate().is_valid());
    }

    #[test]
    fn product_level_mismatch() {
        let a = FiniteNCat::terminal(1);
        let b = FiniteNCat::terminal(2);
        assert!(matches!(a.product(&b), Err(Error::LevelMismatch(1, 2))));
    }

    #[test]
    fn promote_stays_valid() {
        let j2 = build_interval(2).unwrap().cat;
        let p = j2.promote(4);
        assert_eq!(p.cell_counts(), vec![2, 4, 6, 6, 6]);
        assert!(p.validate().is_valid(), "{}", p.validate());
    }

    #[test]
    fn coproduct_of_points() {
        let pt = FiniteNCat::terminal(2);
        let two = pt.coproduct(&pt).unwrap();
        assert_eq!(two.cell_counts(), vec![2, 2, 2]);
        assert!(two.validate().is_valid());
    }
}
