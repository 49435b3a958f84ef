//! Globular sums as n-graphs.

use serde::Serialize;

use super::{Free, Table};

/// Cell sets with source and target maps, no composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NGraph {
    pub sizes: Vec<usize>,
    /// `src[k][x]` for `k ≥ 1`; `src[0]` is empty.
    pub src: Vec<Vec<u32>>,
    pub tgt: Vec<Vec<u32>>,
}

impl NGraph {
    pub fn is_globular(&self) -> bool {
        (2..self.sizes.len()).all(|k| {
            (0..self.sizes[k]).all(|x| {
                let (s, t) = (self.src[k][x] as usize, self.tgt[k][x] as usize);
                self.src[k - 1][s] == self.src[k - 1][t] && self.tgt[k - 1][s] == self.tgt[k - 1][t]
            })
        })
    }
}

// A cell of the a-th disk: (dimension, 0 = source side, 1 = target side,
// 2 = the top cell).
type DiskCell = (usize, usize, u8);

fn disk_cells(a: usize, i: usize) -> Vec<DiskCell> {
    let mut v = Vec::new();
    for d in 0..i {
        v.push((a, d, 0));
        v.push((a, d, 1));
    }
    v.push((a, i, 2));
    v
}

fn dim_of(c: DiskCell) -> usize {
    c.1
}

// Boundary of a disk cell: the source and target cells one dimension down.
fn boundary(c: DiskCell) -> ((usize, usize, u8), (usize, usize, u8)) {
    let (a, d, _) = c;
    ((a, d - 1, 0), (a, d - 1, 1))
}

/// Numbers the cells of `sizes.len()` dimensions in first-occurrence order of
/// a scan over the disks, given a key identifying glued cells.
fn assemble<K: Eq + Copy>(t: &Table, n: usize, key: impl Fn(DiskCell) -> K) -> NGraph {
    let mut ids: Vec<Vec<K>> = vec![vec![]; n + 1];
    for (a, &i) in t.top.iter().enumerate() {
        for c in disk_cells(a, i) {
            let k = key(c);
            if !ids[dim_of(c)].contains(&k) {
                ids[dim_of(c)].push(k);
            }
        }
    }
    let sizes: Vec<usize> = ids.iter().map(Vec::len).collect();
    let mut src = vec![vec![u32::MAX; 0]; n + 1];
    let mut tgt = vec![vec![u32::MAX; 0]; n + 1];
    for k in 1..=n {
        src[k] = vec![u32::MAX; sizes[k]];
        tgt[k] = vec![u32::MAX; sizes[k]];
    }
    let pos = |d: usize, k: K| ids[d].iter().position(|&x| x == k).expect("scanned cell") as u32;
    for (a, &i) in t.top.iter().enumerate() {
        for c in disk_cells(a, i) {
            let d = dim_of(c);
            if d == 0 {
                continue;
            }
            let (s, tt) = boundary(c);
            let x = pos(d, key(c)) as usize;
            src[d][x] = pos(d - 1, key(s));
            tgt[d][x] = pos(d - 1, key(tt));
        }
    }
    NGraph { sizes, src, tgt }
}

/// `G_T`: the disks `D_{i_1}, …, D_{i_m}` glued, for each `k`, along the
/// target `D_{i'_k}` of the `k`-th disk and the source `D_{i'_k}` of the next.
pub fn globular_graph(t: &Table, n: usize) -> NGraph {
    // union-find over all disk cells
    let all: Vec<DiskCell> = t.top.iter().enumerate().flat_map(|(a, &i)| disk_cells(a, i)).collect();
    let index = |c: DiskCell| all.iter().position(|&x| x == c).expect("disk cell");
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (k, &b) in t.bottom.iter().enumerate() {
        // cells of D_b: (d, 0/1) for d < b and the top b-cell
        let mut pairs: Vec<(DiskCell, DiskCell)> = (0..b)
            .flat_map(|d| [((k, d, 0), (k + 1, d, 0)), ((k, d, 1), (k + 1, d, 1))])
            .collect();
        // the top cell of D_b is the target face of disk k and the source face of disk k+1
        let left = if t.top[k] == b { (k, b, 2) } else { (k, b, 1) };
        let right = if t.top[k + 1] == b { (k + 1, b, 2) } else { (k + 1, b, 0) };
        pairs.push((left, right));
        for (x, y) in pairs {
            let (rx, ry) = (find(&mut parent, index(x)), find(&mut parent, index(y)));
            parent[rx.max(ry)] = rx.min(ry);
        }
    }
    let roots: Vec<usize> = (0..all.len()).map(|i| find(&mut parent, i)).collect();
    assemble(t, n, |c| roots[index(c)])
}

/// The generating cells of `L(T)` with their sources and targets, numbered in
/// the same scan order as [`globular_graph`].
pub fn generator_graph(free: &Free, n: usize) -> NGraph {
    let c = &free.cat;
    let image = |cell: DiskCell| -> u32 {
        let (a, d, side) = cell;
        let (i, top) = free.legs[a];
        match side {
            2 => top,
            0 => c.src_to(i, top, d),
            _ => c.tgt_to(i, top, d),
        }
    };
    assemble(&free.table, n, image)
}
