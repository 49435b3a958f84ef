//! Wreath products with Δ_p and the interval categories J_k.
//!
//! `wreath(level, [C_1, .., C_p])` is the strict n-category with objects
//! `0..=p` in which `Map(i, j)` for `i ≤ j` is the product `C_{i+1} × … × C_j`
//! (terminal when `i = j`) and `Map(i, j)` is empty for `i > j`. Horizontal
//! composition concatenates tuples; higher compositions act componentwise.
//! `wreath_delta1(C)` is the case `p = 1`.

use std::sync::Arc;

use super::{FiniteNCat, FunctorSearch, NFunctor};
use crate::error::{Error, Result};

/// Flattened layout of a wreath: which hom-block and which product cell each
/// id stands for.
#[derive(Clone, Debug)]
pub struct Wreath {
    pub cat: FiniteNCat,
    parts: Vec<FiniteNCat>,
    blocks: Vec<(usize, usize)>,
    // products[b] = Map(blocks[b])
    products: Vec<FiniteNCat>,
    // offsets[k][b] = first id of block b among k-cells (k >= 1)
    offsets: Vec<Vec<u32>>,
}

impl Wreath {
    pub fn new(level: usize, parts: &[&FiniteNCat]) -> Self {
        assert!(level >= 1, "a wreath has level at least 1");
        assert!(
            parts.iter().all(|c| c.level() + 1 == level),
            "wreath parts must have level {}",
            level - 1
        );
        let p = parts.len();
        let parts: Vec<FiniteNCat> = parts.iter().map(|&c| c.clone()).collect();
        let mut blocks = Vec::new();
        for len in 0..=p {
            for i in 0..=p - len {
                blocks.push((i, i + len));
            }
        }
        let products: Vec<FiniteNCat> = blocks
            .iter()
            .map(|&(i, j)| {
                parts[i..j]
                    .iter()
                    .fold(FiniteNCat::terminal(level - 1), |acc, c| acc.product(c).expect("same level"))
            })
            .collect();
        let mut offsets = vec![vec![]];
        let mut sizes = vec![p + 1];
        for k in 1..=level {
            let mut row = Vec::with_capacity(blocks.len());
            let mut total = 0u32;
            for prod in &products {
                row.push(total);
                total += prod.size(k - 1) as u32;
            }
            offsets.push(row);
            sizes.push(total as usize);
        }
        let block_of = |i: usize, j: usize| blocks.iter().position(|&b| b == (i, j)).expect("block exists");
        let id = |k: usize, b: usize, c: u32| offsets[k][b] + c;

        let mut src = vec![vec![]; level + 1];
        let mut tgt = vec![vec![]; level + 1];
        for k in 1..=level {
            for (b, &(i, j)) in blocks.iter().enumerate() {
                for c in 0..products[b].size(k - 1) as u32 {
                    if k == 1 {
                        src[k].push(i as u32);
                        tgt[k].push(j as u32);
                    } else {
                        src[k].push(id(k - 1, b, products[b].src(k - 1, c)));
                        tgt[k].push(id(k - 1, b, products[b].tgt(k - 1, c)));
                    }
                }
            }
        }
        let mut ident: Vec<Vec<u32>> = vec![(0..=p).map(|i| id(1, block_of(i, i), 0)).collect()];
        for k in 1..level {
            let mut row = Vec::new();
            for (b, prod) in products.iter().enumerate() {
                for c in 0..prod.size(k - 1) as u32 {
                    row.push(id(k + 1, b, prod.ident(k - 1, c)));
                }
            }
            ident.push(row);
        }
        let mut comp = Vec::new();
        for k in 1..=level {
            let mut horizontal = Vec::new();
            for (bf, &(i, j)) in blocks.iter().enumerate() {
                for (bg, &(j2, l)) in blocks.iter().enumerate() {
                    if j2 != j {
                        continue;
                    }
                    let br = block_of(i, l);
                    let radix = products[bg].size(k - 1) as u32;
                    for x in 0..products[bf].size(k - 1) as u32 {
                        for y in 0..radix {
                            horizontal.push([id(k, bg, y), id(k, bf, x), id(k, br, x * radix + y)]);
                        }
                    }
                }
            }
            comp.push((0, k, horizontal));
            for jj in 1..k {
                let mut entries = Vec::new();
                for (b, prod) in products.iter().enumerate() {
                    for &[g, f, r] in prod.comp_table(jj - 1, k - 1).entries() {
                        entries.push([id(k, b, g), id(k, b, f), id(k, b, r)]);
                    }
                }
                comp.push((jj, k, entries));
            }
        }
        let cat = FiniteNCat::from_parts(level, sizes, src, tgt, ident, comp).expect("well-formed wreath tables");
        Wreath {
            cat,
            parts,
            blocks,
            products,
            offsets,
        }
    }

    pub fn parts(&self) -> &[FiniteNCat] {
        &self.parts
    }

    /// Id of the `k`-cell (`k ≥ 1`) in `Map(i, j)` given by the `(k−1)`-cell `c`
    /// of the product.
    pub fn cell(&self, k: usize, i: usize, j: usize, c: u32) -> u32 {
        let b = self.block(i, j);
        self.offsets[k][b] + c
    }

    /// Inverse of [`Wreath::cell`].
    pub fn decode(&self, k: usize, x: u32) -> (usize, usize, u32) {
        let b = self.offsets[k].partition_point(|&o| o <= x) - 1;
        let (i, j) = self.blocks[b];
        (i, j, x - self.offsets[k][b])
    }

    pub fn hom_product(&self, i: usize, j: usize) -> &FiniteNCat {
        &self.products[self.block(i, j)]
    }

    /// Splits a `d`-cell of `Map(i, j)` into its components in `C_{i+1}..C_j`.
    pub fn components(&self, i: usize, j: usize, d: usize, mut c: u32) -> Vec<u32> {
        let mut out = vec![0; j - i];
        for m in (i..j).rev() {
            let r = self.parts[m].size(d) as u32;
            out[m - i] = c % r;
            c /= r;
        }
        out
    }

    /// Inverse of [`Wreath::components`].
    pub fn compose_components(&self, i: usize, d: usize, comps: &[u32]) -> u32 {
        comps
            .iter()
            .enumerate()
            .fold(0, |acc, (m, &x)| acc * self.parts[i + m].size(d) as u32 + x)
    }

    fn block(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j <= self.parts.len(), "no hom-block ({i}, {j})");
        let len = j - i;
        // blocks of length < len come first; there are p+1-l of length l
        let p = self.parts.len();
        (0..len).map(|l| p + 1 - l).sum::<usize>() + i
    }
}

/// `Δ_p ≀ (C_1, .., C_p)` at the given level.
pub fn wreath(level: usize, parts: &[&FiniteNCat]) -> FiniteNCat {
    Wreath::new(level, parts).cat
}

/// `Δ_1 ≀ C`: objects 0 and 1 with `Map(0, 1) = C`.
pub fn wreath_delta1(c: &FiniteNCat) -> FiniteNCat {
    wreath(c.level() + 1, &[c])
}

/// `Δ_p ≀ (F_1, .., F_p)` for functors `F_m : C_m → C'_m`.
pub fn wreath_functor(fs: &[&NFunctor]) -> NFunctor {
    assert!(!fs.is_empty(), "wreath_functor needs at least one functor");
    let level = fs[0].level() + 1;
    let sources: Vec<&FiniteNCat> = fs.iter().map(|f| &*f.source).collect();
    let targets: Vec<&FiniteNCat> = fs.iter().map(|f| &*f.target).collect();
    let ws = Wreath::new(level, &sources);
    let wt = Wreath::new(level, &targets);
    let mut map = vec![(0..ws.cat.size(0) as u32).collect::<Vec<_>>()];
    for k in 1..=level {
        let row = (0..ws.cat.size(k) as u32)
            .map(|x| {
                let (i, j, c) = ws.decode(k, x);
                let comps: Vec<u32> = ws
                    .components(i, j, k - 1, c)
                    .iter()
                    .enumerate()
                    .map(|(m, &y)| fs[i + m].apply(k - 1, y))
                    .collect();
                wt.cell(k, i, j, wt.compose_components(i, k - 1, &comps))
            })
            .collect();
        map.push(row);
    }
    NFunctor::new_unchecked(Arc::new(ws.cat), Arc::new(wt.cat), map)
}

/// The `k`-disk `D_k` as a strict `level`-category, with its top generator.
pub fn disk(k: usize, level: usize) -> (FiniteNCat, u32) {
    assert!(k <= level, "D_{k} does not exist at level {level}");
    let mut cat = FiniteNCat::terminal(level - k);
    let mut generator = 0;
    for d in 1..=k {
        let w = Wreath::new(level - k + d, &[&cat]);
        generator = w.cell(d, 0, 1, generator);
        cat = w.cat;
    }
    (cat, generator)
}

/// Two `k`-disks glued along a common `j`-cell, so that their generators
/// `f`, `g` are `j`-composable as `g ∘_j f`. Returns `(cat, f, g)`.
pub fn glued_disks(k: usize, j: usize, level: usize) -> (FiniteNCat, u32, u32) {
    assert!(j < k && k <= level, "cannot glue {k}-disks along dimension {j} at level {level}");
    if j == 0 {
        let (d, gen) = disk(k - 1, level - 1);
        let w = Wreath::new(level, &[&d, &d]);
        (w.cat.clone(), w.cell(k, 0, 1, gen), w.cell(k, 1, 2, gen))
    } else {
        let (inner, f, g) = glued_disks(k - 1, j - 1, level - 1);
        let w = Wreath::new(level, &[&inner]);
        (w.cat.clone(), w.cell(k, 0, 1, f), w.cell(k, 0, 1, g))
    }
}

/// The unique functor `D_k → target` sending the top generator to the
/// `k`-cell `x`.
pub fn globe_map(k: usize, target: Arc<FiniteNCat>, x: u32) -> NFunctor {
    let (d, generator) = disk(k, target.level());
    let d = Arc::new(d);
    let map = FunctorSearch::new(&d, &target)
        .expect("same level")
        .pin(k, generator, x)
        .first()
        .expect("a disk is free on its generator");
    NFunctor::new_unchecked(d, target, map)
}

/// `Δ̃_k`: the groupoid with objects `0..=k` and exactly one arrow `a → b`
/// for every pair; the arrow `a → b` has id `a * (k + 1) + b`.
pub fn simply_connected_groupoid(k: usize) -> FiniteNCat {
    let n = (k + 1) as u32;
    let arrow = |a: u32, b: u32| a * n + b;
    let mut src = vec![vec![], vec![]];
    let mut tgt = vec![vec![], vec![]];
    for a in 0..n {
        for b in 0..n {
            src[1].push(a);
            tgt[1].push(b);
        }
    }
    let ident = vec![(0..n).map(|a| arrow(a, a)).collect()];
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                entries.push([arrow(b, c), arrow(a, b), arrow(a, c)]);
            }
        }
    }
    FiniteNCat::from_parts(1, vec![n as usize, (n * n) as usize], src, tgt, ident, vec![(0, 1, entries)])
        .expect("well-formed groupoid tables")
}

/// `J_k` with its collapse `j_k : J_k → D_{k−1}` and the two sections
/// `s^ε_k : D_{k−1} → J_k`.
#[derive(Clone, Debug)]
pub struct Interval {
    pub cat: FiniteNCat,
    pub j: NFunctor,
    pub s0: NFunctor,
    pub s1: NFunctor,
}

/// Builds `J_k`, `j_k` and `s^ε_k` by iterating `Δ_1 ≀ −` from `J_1 = J`.
pub fn build_interval(k: usize) -> Result<Interval> {
    if k < 1 {
        return Err(Error::Invalid("the interval J_k needs k >= 1".into()));
    }
    let j1 = Arc::new(simply_connected_groupoid(1));
    let mut j = NFunctor::to_terminal(j1.clone());
    let mut s0 = NFunctor::point(j1.clone(), 0);
    let mut s1 = NFunctor::point(j1, 1);
    for _ in 1..k {
        j = wreath_functor(&[&j]);
        s0 = wreath_functor(&[&s0]);
        s1 = wreath_functor(&[&s1]);
        // share one copy of J_k between the three functors
        let cat = j.source.clone();
        s0.target = cat.clone();
        s1.target = cat;
        s1.source = s0.source.clone();
    }
    Ok(Interval {
        cat: (*j.source).clone(),
        j,
        s0,
        s1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncat::compose_maps;

    #[test]
    fn groupoid_counts() {
        for k in 0..4 {
            let g = simply_connected_groupoid(k);
            assert_eq!(g.cell_counts(), vec![k + 1, (k + 1) * (k + 1)]);
            assert!(g.validate().is_valid());
        }
        assert_eq!(simply_connected_groupoid(0).cell_counts(), FiniteNCat::terminal(1).cell_counts());
    }

    #[test]
    fn wreath_of_point_is_arrow() {
        let a = wreath_delta1(&FiniteNCat::terminal(0));
        assert_eq!(a.cell_counts(), vec![2, 3]);
        assert!(a.validate().is_valid());
    }

    #[test]
    fn wreath_of_j_is_j2() {
        let j2 = wreath_delta1(&simply_connected_groupoid(1));
        assert_eq!(j2.cell_counts(), vec![2, 4, 6]);
        assert!(j2.validate().is_valid(), "{}", j2.validate());
    }

    #[test]
    fn interval_sections_split_the_collapse() {
        for k in 1..=3 {
            let iv = build_interval(k).unwrap();
            assert!(iv.cat.validate().is_valid());
            for s in [&iv.s0, &iv.s1] {
                assert!(s.is_valid());
                let back = compose_maps(&iv.j.map, &s.map);
                assert_eq!(back, NFunctor::identity(iv.j.target.clone()).map);
            }
            assert!(iv.j.is_valid());
        }
    }

    #[test]
    fn j2_collapses_parallel_arrows() {
        let iv = build_interval(2).unwrap();
        let d1 = &iv.j.target;
        assert_eq!(d1.cell_counts(), vec![2, 3, 3]);
        let generator = (0..3).find(|&x| !d1.is_identity(1, x)).unwrap();
        let non_ids: Vec<u32> = (0..4).filter(|&x| !iv.cat.is_identity(1, x)).collect();
        assert_eq!(non_ids.len(), 2);
        for a in non_ids {
            assert_eq!(iv.j.apply(1, a), generator);
        }
    }

    #[test]
    fn disks_and_glued_disks() {
        let (d2, g) = disk(2, 2);
        assert_eq!(d2.cell_counts(), vec![2, 4, 5]);
        assert!(!d2.is_identity(2, g));
        let (d1, _) = disk(1, 3);
        assert_eq!(d1.cell_counts(), vec![2, 3, 3, 3]);
        let (gl, f, g) = glued_disks(2, 1, 2);
        assert!(gl.validate().is_valid());
        assert!(gl.comp(1, 2, g, f).is_some());
        let (gl, f, g) = glued_disks(1, 0, 2);
        assert_eq!(gl.cell_counts(), vec![3, 6, 6]);
        assert!(gl.comp(0, 1, g, f).is_some());
    }

    #[test]
    fn globe_maps_pick_cells() {
        let j2 = Arc::new(build_interval(2).unwrap().cat);
        for x in 0..j2.size(2) as u32 {
            let m = globe_map(2, j2.clone(), x);
            assert!(m.is_valid());
            let (_, gen) = disk(2, 2);
            assert_eq!(m.apply(2, gen), x);
        }
    }

    #[test]
    fn three_part_wreath_is_valid() {
        let a = simply_connected_groupoid(1);
        let b = FiniteNCat::terminal(1);
        let w = Wreath::new(2, &[&a, &b, &a]);
        assert!(w.cat.validate().is_valid(), "{}", w.cat.validate());
        assert_eq!(w.cat.size(0), 4);
        for x in 0..w.cat.size(2) as u32 {
            let (i, j, c) = w.decode(2, x);
            assert_eq!(w.cell(2, i, j, c), x);
            let comps = w.components(i, j, 1, c);
            assert_eq!(w.compose_components(i, 1, &comps), c);
        }
    }
}
