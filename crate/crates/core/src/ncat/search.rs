//! Backtracking enumeration of strict n-functors.
//!
//! Cells of the source are visited dimension by dimension. A cell's candidate
//! images are the target cells with the already-fixed source and target; a
//! cell that is an identity or a composite of earlier cells has its image
//! forced. Every composition and identity relation of the source is checked
//! as soon as all of its cells are assigned.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{CellMap, FiniteNCat, NFunctor};
use crate::error::{Error, Result};

const UNSET: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
enum Relation {
    // comp(j, k, g, f) = r
    Comp { j: usize, g: u32, f: u32, r: u32 },
    // ident(k - 1, x) = y, y in dimension k
    Ident { x: u32, y: u32 },
}

#[derive(Clone, Debug)]
struct Step {
    dim: usize,
    cell: u32,
    forced: Option<Relation>,
    checks: Vec<Relation>,
}

type CellFilter<'a> = Box<dyn Fn(usize, u32, u32) -> bool + 'a>;

/// Configurable search for strict functors `source → target`, with optional
/// pinned cell images and a per-cell candidate filter.
pub struct FunctorSearch<'a> {
    source: &'a FiniteNCat,
    target: &'a FiniteNCat,
    pins: Vec<Vec<u32>>,
    infeasible: bool,
    filter: Option<CellFilter<'a>>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(source: &'a FiniteNCat, target: &'a FiniteNCat) -> Result<Self> {
        if source.level() != target.level() {
            return Err(Error::LevelMismatch(source.level(), target.level()));
        }
        let pins = source.sizes().iter().map(|&s| vec![UNSET; s]).collect();
        Ok(FunctorSearch {
            source,
            target,
            pins,
            infeasible: false,
            filter: None,
        })
    }

    /// Requires the `k`-cell `x` to map to `y`. Conflicting pins make the
    /// search empty.
    pub fn pin(mut self, k: usize, x: u32, y: u32) -> Self {
        let slot = &mut self.pins[k][x as usize];
        if *slot != UNSET && *slot != y {
            self.infeasible = true;
        }
        *slot = y;
        self
    }

    /// Keeps only functors whose image of every `k`-cell `x` satisfies
    /// `filter(k, x, image)`.
    pub fn filter(mut self, filter: impl Fn(usize, u32, u32) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(filter));
        self
    }

    /// Visits every functor in canonical order (lexicographic in the cell
    /// images, dimension-major). Stops early when `visit` returns `false`.
    pub fn for_each(&self, mut visit: impl FnMut(&CellMap) -> bool) {
        if self.infeasible {
            return;
        }
        let steps = plan(self.source);
        let buckets = buckets(self.target);
        let mut map: CellMap = self.source.sizes().iter().map(|&s| vec![UNSET; s]).collect();
        let mut run = Run {
            search: self,
            steps: &steps,
            buckets: &buckets,
            map: &mut map,
            visit: &mut visit,
        };
        run.go(0);
    }

    pub fn collect(&self, limit: Option<usize>) -> Vec<CellMap> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(m.clone());
            limit.is_none_or(|l| out.len() < l)
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            true
        });
        n
    }

    pub fn first(&self) -> Option<CellMap> {
        self.collect(Some(1)).pop()
    }
}

/// All strict n-functors `source → target` in canonical order.
pub fn enumerate_functors(source: &Arc<FiniteNCat>, target: &Arc<FiniteNCat>) -> Result<Vec<NFunctor>> {
    let maps = FunctorSearch::new(source, target)?.collect(None);
    Ok(maps
        .into_iter()
        .map(|m| NFunctor::new_unchecked(source.clone(), target.clone(), m))
        .collect())
}

fn plan(c: &FiniteNCat) -> Vec<Step> {
    let mut pos: Vec<Vec<usize>> = Vec::new();
    let mut steps = Vec::new();
    for k in 0..=c.level() {
        let mut row = Vec::with_capacity(c.size(k));
        for x in 0..c.size(k) as u32 {
            row.push(steps.len());
            steps.push(Step {
                dim: k,
                cell: x,
                forced: None,
                checks: Vec::new(),
            });
        }
        pos.push(row);
    }
    for (k, row) in pos.iter().enumerate().skip(1) {
        for x in 0..c.size(k - 1) as u32 {
            let y = c.ident(k - 1, x);
            let p = row[y as usize];
            let rel = Relation::Ident { x, y };
            steps[p].checks.push(rel);
            steps[p].forced.get_or_insert(rel);
        }
        for j in 0..k {
            for &[g, f, r] in c.comp_table(j, k).entries() {
                let (pg, pf, pr) = (row[g as usize], row[f as usize], row[r as usize]);
                let rel = Relation::Comp { j, g, f, r };
                let last = pg.max(pf).max(pr);
                steps[last].checks.push(rel);
                if last == pr && pg < pr && pf < pr {
                    steps[pr].forced.get_or_insert(rel);
                }
            }
        }
    }
    steps
}

type Buckets = Vec<FxHashMap<(u32, u32), Vec<u32>>>;

fn buckets(t: &FiniteNCat) -> Buckets {
    let mut out = vec![FxHashMap::default()];
    for k in 1..=t.level() {
        let mut m: FxHashMap<(u32, u32), Vec<u32>> = FxHashMap::default();
        for y in 0..t.size(k) as u32 {
            m.entry((t.src(k, y), t.tgt(k, y))).or_default().push(y);
        }
        out.push(m);
    }
    out
}

struct Run<'r, 'a, V: FnMut(&CellMap) -> bool> {
    search: &'r FunctorSearch<'a>,
    steps: &'r [Step],
    buckets: &'r Buckets,
    map: &'r mut CellMap,
    visit: &'r mut V,
}

impl<V: FnMut(&CellMap) -> bool> Run<'_, '_, V> {
    fn relation_image(&self, k: usize, rel: Relation) -> Option<u32> {
        let t = self.search.target;
        match rel {
            Relation::Comp { j, g, f, .. } => t.comp(j, k, self.map[k][g as usize], self.map[k][f as usize]),
            Relation::Ident { x, .. } => Some(t.ident(k - 1, self.map[k - 1][x as usize])),
        }
    }

    fn admissible(&self, step: &Step, y: u32) -> bool {
        let (k, x) = (step.dim, step.cell);
        let (s, t) = (self.search.source, self.search.target);
        if k > 0 && (t.src(k, y) != self.map[k - 1][s.src(k, x) as usize] || t.tgt(k, y) != self.map[k - 1][s.tgt(k, x) as usize]) {
            return false;
        }
        if let Some(f) = &self.search.filter {
            if !f(k, x, y) {
                return false;
            }
        }
        true
    }

    fn checks_hold(&self, step: &Step) -> bool {
        let k = step.dim;
        step.checks.iter().all(|&rel| {
            let want = match rel {
                Relation::Comp { r, .. } => self.map[k][r as usize],
                Relation::Ident { y, .. } => self.map[k][y as usize],
            };
            self.relation_image(k, rel) == Some(want)
        })
    }

    /// Returns `false` once the visitor asked to stop.
    fn go(&mut self, p: usize) -> bool {
        if p == self.steps.len() {
            return (self.visit)(self.map);
        }
        let step = &self.steps[p];
        let (k, x) = (step.dim, step.cell);
        let pinned = self.search.pins[k][x as usize];
        let single;
        let candidates: &[u32] = if pinned != UNSET {
            single = [pinned];
            &single
        } else if let Some(rel) = step.forced {
            match self.relation_image(k, rel) {
                Some(y) => {
                    single = [y];
                    &single
                }
                None => return true,
            }
        } else if k == 0 {
            single = [0];
            // objects: iterate the full range below
            let n = self.search.target.size(0) as u32;
            for y in 0..n {
                if !self.try_value(p, y) {
                    return false;
                }
            }
            let _ = single;
            return true;
        } else {
            let key = (
                self.map[k - 1][self.search.source.src(k, x) as usize],
                self.map[k - 1][self.search.source.tgt(k, x) as usize],
            );
            match self.buckets[k].get(&key) {
                Some(v) => v,
                None => return true,
            }
        };
        // `candidates` may borrow from `self.buckets`, which is a shared ref.
        let candidates: Vec<u32> = candidates.to_vec();
        for y in candidates {
            if !self.try_value(p, y) {
                return false;
            }
        }
        true
    }

    fn try_value(&mut self, p: usize, y: u32) -> bool {
        let step = &self.steps[p];
        if !self.admissible(step, y) {
            return true;
        }
        let (k, x) = (step.dim, step.cell);
        self.map[k][x as usize] = y;
        let keep_going = if self.checks_hold(step) { self.go(p + 1) } else { true };
        self.map[k][x as usize] = UNSET;
        keep_going
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncat::{build_interval, simply_connected_groupoid, wreath_delta1};

    fn arrow(level: usize) -> Arc<FiniteNCat> {
        Arc::new(wreath_delta1(&FiniteNCat::terminal(0)).promote(level))
    }

    #[test]
    fn functors_from_terminal_are_objects() {
        let j = Arc::new(simply_connected_groupoid(1));
        let pt = Arc::new(FiniteNCat::terminal(1));
        assert_eq!(enumerate_functors(&pt, &j).unwrap().len(), 2);
    }

    #[test]
    fn endofunctors_of_the_arrow() {
        let a = arrow(1);
        assert_eq!(enumerate_functors(&a, &a).unwrap().len(), 3);
    }

    #[test]
    fn arrows_into_j2() {
        let j2 = Arc::new(build_interval(2).unwrap().cat);
        assert_eq!(enumerate_functors(&arrow(2), &j2).unwrap().len(), 4);
    }

    #[test]
    fn every_enumerated_functor_is_valid() {
        let j2 = Arc::new(build_interval(2).unwrap().cat);
        for f in enumerate_functors(&j2, &j2).unwrap() {
            assert!(f.is_valid());
        }
    }

    #[test]
    fn conflicting_pins_give_nothing() {
        let a = arrow(1);
        let s = FunctorSearch::new(&a, &a).unwrap().pin(0, 0, 0).pin(0, 0, 1);
        assert_eq!(s.count(), 0);
    }

    #[test]
    fn order_is_lexicographic() {
        let a = arrow(1);
        let maps = FunctorSearch::new(&a, &a).unwrap().collect(None);
        let mut sorted = maps.clone();
        sorted.sort();
        assert_eq!(maps, sorted);
    }
}
