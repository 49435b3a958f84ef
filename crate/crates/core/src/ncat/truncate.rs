//! The truncations `t` and `t_r` from strict n-categories to categories.

use std::sync::Arc;

use super::{FiniteNCat, NFunctor};

fn find(parent: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut y = x;
    while parent[y as usize] != r {
        let next = parent[y as usize];
        parent[y as usize] = r;
        y = next;
    }
    r
}

/// `t(C)` together with the class of every 1-cell of `C`.
///
/// Arrows are the 1-cells of `C` modulo the equivalence relation generated by
/// "some 2-cell joins them". Classes are numbered in order of their least
/// member, so `t(C) = C` on the nose when `C` has no 2-cells.
pub fn truncate_with_classes(c: &FiniteNCat) -> (FiniteNCat, Vec<u32>) {
    if c.level() == 0 {
        let one = c.promote(1);
        return (one, vec![]);
    }
    let n1 = c.size(1);
    let mut parent: Vec<u32> = (0..n1 as u32).collect();
    if c.level() >= 2 {
        for a in 0..c.size(2) as u32 {
            let (s, t) = (find(&mut parent, c.src(2, a)), find(&mut parent, c.tgt(2, a)));
            if s != t {
                // keep the smaller id as root so classes order by least member
                let (lo, hi) = if s < t { (s, t) } else { (t, s) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut class = vec![u32::MAX; n1];
    let mut reps = Vec::new();
    for x in 0..n1 as u32 {
        let r = find(&mut parent, x) as usize;
        if class[r] == u32::MAX {
            class[r] = reps.len() as u32;
            reps.push(x);
        }
        class[x as usize] = class[r];
    }
    let src = vec![vec![], reps.iter().map(|&x| c.src(1, x)).collect()];
    let tgt = vec![vec![], reps.iter().map(|&x| c.tgt(1, x)).collect()];
    let ident = vec![(0..c.size(0) as u32).map(|o| class[c.ident(0, o) as usize]).collect()];
    let mut entries: Vec<[u32; 3]> = c
        .comp_table(0, 1)
        .entries()
        .iter()
        .map(|&[g, f, r]| [class[g as usize], class[f as usize], class[r as usize]])
        .collect();
    entries.sort_unstable();
    entries.dedup();
    let t = FiniteNCat::from_parts(1, vec![c.size(0), reps.len()], src, tgt, ident, vec![(0, 1, entries)])
        .expect("well-formed truncation tables");
    (t, class)
}

/// The truncation `t`: 1-cells up to 2-cells.
pub fn truncate(c: &FiniteNCat) -> FiniteNCat {
    truncate_with_classes(c).0
}

/// The right truncation `t_r`: objects and 1-cells of `C`, higher cells dropped.
pub fn truncate_right(c: &FiniteNCat) -> FiniteNCat {
    if c.level() == 0 {
        return c.promote(1);
    }
    FiniteNCat::from_parts(
        1,
        vec![c.size(0), c.size(1)],
        vec![vec![], c.src_table(1).to_vec()],
        vec![vec![], c.tgt_table(1).to_vec()],
        vec![c.ident_table(0).to_vec()],
        vec![(0, 1, c.comp_table(0, 1).entries().to_vec())],
    )
    .expect("well-formed truncation tables")
}

/// `t_r(F)`: the action of `F` on objects and 1-cells.
pub fn truncate_right_functor(f: &NFunctor) -> NFunctor {
    let (s, t) = (truncate_right(&f.source), truncate_right(&f.target));
    let map = if f.level() == 0 {
        vec![f.map[0].clone(), vec![]]
    } else {
        f.map[..2].to_vec()
    };
    NFunctor::new(Arc::new(s), Arc::new(t), map).expect("truncation of a functor is a functor")
}
