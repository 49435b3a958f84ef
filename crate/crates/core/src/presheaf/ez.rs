use crate::error::{Error, Result};

use super::Presheaf;

/// Every element written uniquely as `e^*(y)` with `e` a split epimorphism
/// and `y` nondegenerate.
#[derive(Debug)]
pub struct Ez {
    nondeg: Vec<Vec<u32>>,
    // dec[o][x] = (e, y): x = e^*(y), y nondegenerate at the target of e
    dec: Vec<Vec<(u32, u32)>>,
}

impl Ez {
    pub(super) fn compute(x: &Presheaf) -> Result<Ez> {
        let s = x.site();
        let n = s.num_objects();
        let mut order: Vec<u32> = (0..n as u32).collect();
        // non-identity split epis strictly lower the rank
        order.sort_by_key(|&o| (s.rank(o), o));
        let mut nondeg = vec![vec![]; n];
        let mut dec: Vec<Vec<(u32, u32)>> = vec![vec![]; n];
        let mut done = vec![false; n];
        for &o in &order {
            let size = x.size(o);
            let mut found: Vec<Vec<(u32, u32)>> = vec![vec![]; size];
            for m in 0..n as u32 {
                for &e in s.hom(o, m) {
                    if !s.is_split_epi(e) || s.is_identity(e) {
                        continue;
                    }
                    if !done[m as usize] {
                        return Err(Error::Invariant(format!(
                            "split epi {} -> {} does not lower the rank",
                            s.object(o),
                            s.object(m)
                        )));
                    }
                    for &y in &nondeg[m as usize] {
                        found[x.act(e, y) as usize].push((e, y));
                    }
                }
            }
            let id = s.identity(o);
            let mut row = Vec::with_capacity(size);
            for (el, f) in found.into_iter().enumerate() {
                match f.len() {
                    0 => {
                        nondeg[o as usize].push(el as u32);
                        row.push((id, el as u32));
                    }
                    1 => row.push(f[0]),
                    k => {
                        return Err(Error::Invariant(format!(
                            "element {} at {} has {k} degeneracy decompositions",
                            x.label(o, el as u32),
                            s.object(o)
                        )))
                    }
                }
            }
            dec[o as usize] = row;
            done[o as usize] = true;
        }
        Ok(Ez { nondeg, dec })
    }

    pub fn nondegenerate(&self, o: u32) -> &[u32] {
        &self.nondeg[o as usize]
    }

    pub fn is_nondegenerate(&self, o: u32, x: u32) -> bool {
        self.dec[o as usize][x as usize].1 == x && self.nondeg[o as usize].binary_search(&x).is_ok()
    }

    /// `(e, y)` with `x = e^*(y)`; `e` is the identity when `x` is nondegenerate.
    pub fn decompose(&self, o: u32, x: u32) -> (u32, u32) {
        self.dec[o as usize][x as usize]
    }
}
