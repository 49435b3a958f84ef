//! Joyal's cell category Θ_n.
//!
//! Objects are tables of dimensions. The free n-category `L(T)` on the
//! globular sum of a table is built through the wreath recursion: split `T`
//! at the zeros of its bottom row, build the free (n−1)-categories of the
//! lowered segments and take `Δ_p ≀ (…)`. Morphisms `S → T` are the strict
//! functors `L(S) → L(T)`.

mod graph;
mod table;

use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;
use serde::Serialize;

pub use graph::{generator_graph, globular_graph, NGraph};
pub use table::{enumerate_objects, Table};

use crate::error::{Error, Result};
use crate::ncat::{compose_maps, globe_map, CellMap, FiniteNCat, FunctorSearch, NFunctor, Wreath};

/// `L(T)` with its generating cells and the top cell of each globe leg.
#[derive(Clone, Debug)]
pub struct Free {
    pub table: Table,
    pub cat: Arc<FiniteNCat>,
    /// Generating cells of each dimension, ascending.
    pub generators: Vec<Vec<u32>>,
    /// `(i_a, top cell)` for the `a`-th globe of the table.
    pub legs: Vec<(usize, u32)>,
}

fn build_free(t: &Table, n: usize) -> Free {
    let segments = t.segments();
    if segments.is_empty() {
        let mut generators = vec![vec![]; n + 1];
        generators[0] = vec![0];
        return Free {
            table: t.clone(),
            cat: Arc::new(FiniteNCat::terminal(n)),
            generators,
            legs: vec![(0, 0)],
        };
    }
    let subs: Vec<Free> = segments.iter().map(|s| build_free(s, n - 1)).collect();
    let cats: Vec<&FiniteNCat> = subs.iter().map(|s| &*s.cat).collect();
    let w = Wreath::new(n, &cats);
    let mut generators = vec![(0..=subs.len() as u32).collect::<Vec<_>>()];
    for k in 1..=n {
        let mut gens: Vec<u32> = subs
            .iter()
            .enumerate()
            .flat_map(|(l, s)| s.generators[k - 1].iter().map(move |&c| (l, c)))
            .map(|(l, c)| w.cell(k, l, l + 1, c))
            .collect();
        gens.sort_unstable();
        generators.push(gens);
    }
    let legs = subs
        .iter()
        .enumerate()
        .flat_map(|(l, s)| s.legs.iter().map(move |&(d, c)| (l, d, c)))
        .map(|(l, d, c)| (d + 1, w.cell(d + 1, l, l + 1, c)))
        .collect();
    Free {
        table: t.clone(),
        cat: Arc::new(w.cat),
        generators,
        legs,
    }
}

/// A morphism of Θ_n: a strict functor between free n-categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ThetaMorphism {
    pub source: Table,
    pub target: Table,
    pub map: CellMap,
}

impl ThetaMorphism {
    /// `self ∘ other`.
    pub fn after(&self, other: &ThetaMorphism) -> ThetaMorphism {
        assert_eq!(other.target, self.source, "morphisms are not composable");
        ThetaMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            map: compose_maps(&self.map, &other.map),
        }
    }

    /// Injective on the cells of every dimension.
    pub fn is_mono(&self) -> bool {
        self.map.iter().all(|row| {
            let mut v = row.clone();
            v.sort_unstable();
            v.windows(2).all(|w| w[0] != w[1])
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().all(|row| row.iter().enumerate().all(|(i, &x)| i as u32 == x))
    }

    /// Compact encoding: the cell images, dimension by dimension.
    pub fn encode(&self) -> String {
        encode_cell_map(&self.map)
    }
}

pub(crate) fn encode_cell_map(map: &CellMap) -> String {
    map.iter()
        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

/// The globe legs `D_{i_k} → T` and the overlap legs `D_{i'_k} → T` of a
/// table, the data of its spine.
#[derive(Clone, Debug)]
pub struct SpineLegs {
    pub globes: Vec<ThetaMorphism>,
    pub overlaps: Vec<ThetaMorphism>,
}

type HomCache = Mutex<FxHashMap<(Table, Table), Arc<Vec<CellMap>>>>;

/// Θ_n with memoized free categories and hom-sets. Shared freely between
/// threads; each cache entry is computed once.
#[derive(Debug)]
pub struct Theta {
    n: usize,
    free: Mutex<FxHashMap<Table, Arc<Free>>>,
    homs: HomCache,
}

impl Theta {
    pub fn new(n: usize) -> Theta {
        Theta {
            n,
            free: Mutex::default(),
            homs: Mutex::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, t: &Table) -> Result<()> {
        if t.dim() > self.n {
            return Err(Error::DimensionTooLarge {
                table: t.to_string(),
                dim: t.dim(),
                n: self.n,
            });
        }
        Ok(())
    }

    /// `L_n(G_T)`.
    pub fn free(&self, t: &Table) -> Result<Arc<Free>> {
        self.check(t)?;
        if let Some(f) = self.free.lock().expect("cache lock").get(t) {
            return Ok(f.clone());
        }
        let built = Arc::new(build_free(t, self.n));
        Ok(self.free.lock().expect("cache lock").entry(t.clone()).or_insert(built).clone())
    }

    pub fn free_ncat(&self, t: &Table) -> Result<Arc<FiniteNCat>> {
        Ok(self.free(t)?.cat.clone())
    }

    /// Cell maps of all morphisms `s → t`, in canonical order.
    pub fn hom_maps(&self, s: &Table, t: &Table) -> Result<Arc<Vec<CellMap>>> {
        let key = (s.clone(), t.clone());
        if let Some(h) = self.homs.lock().expect("cache lock").get(&key) {
            return Ok(h.clone());
        }
        let (fs, ft) = (self.free_ncat(s)?, self.free_ncat(t)?);
        let maps = Arc::new(FunctorSearch::new(&fs, &ft)?.collect(None));
        Ok(self.homs.lock().expect("cache lock").entry(key).or_insert(maps).clone())
    }

    pub fn hom(&self, s: &Table, t: &Table) -> Result<Vec<ThetaMorphism>> {
        Ok(self
            .hom_maps(s, t)?
            .iter()
            .map(|m| ThetaMorphism {
                source: s.clone(),
                target: t.clone(),
                map: m.clone(),
            })
            .collect())
    }

    pub fn identity(&self, t: &Table) -> Result<ThetaMorphism> {
        let c = self.free_ncat(t)?;
        Ok(ThetaMorphism {
            source: t.clone(),
            target: t.clone(),
            map: NFunctor::identity(c).map,
        })
    }

    pub fn is_split_epi(&self, f: &ThetaMorphism) -> Result<bool> {
        let id = self.identity(&f.target)?;
        Ok(self
            .hom_maps(&f.target, &f.source)?
            .iter()
            .any(|s| compose_maps(&f.map, s) == id.map))
    }

    /// Every factorization `f = m ∘ e` with `e` split epi and `m` mono, the
    /// middle object ranging over tables no wider and no higher than the
    /// source.
    pub fn ez_candidates(&self, f: &ThetaMorphism) -> Result<Vec<(ThetaMorphism, ThetaMorphism)>> {
        let mut out = Vec::new();
        for mid in enumerate_objects(f.source.dim(), f.source.width()) {
            let monos: Vec<ThetaMorphism> = self.hom(&mid, &f.target)?.into_iter().filter(|m| m.is_mono()).collect();
            if monos.is_empty() {
                continue;
            }
            for e in self.hom(&f.source, &mid)? {
                if !self.is_split_epi(&e)? {
                    continue;
                }
                for m in &monos {
                    if compose_maps(&m.map, &e.map) == f.map {
                        out.push((e.clone(), m.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The unique split-epi-then-mono factorization `f = m ∘ e`.
    pub fn ez_factorize(&self, f: &ThetaMorphism) -> Result<(ThetaMorphism, ThetaMorphism)> {
        let mut found = self.ez_candidates(f)?;
        match found.len() {
            1 => Ok(found.pop().expect("one factorization")),
            0 => Err(Error::SearchBound(format!(
                "no factorization of a morphism {} -> {} through tables of dimension <= {} and width <= {}",
                f.source,
                f.target,
                f.source.dim(),
                f.source.width()
            ))),
            k => Err(Error::Invariant(format!(
                "{k} factorizations of a morphism {} -> {}",
                f.source, f.target
            ))),
        }
    }

    /// All monomorphisms `S → T` with `S ≠ T`; `S` ranges over tables no
    /// wider and no higher than `T`.
    pub fn boundary_monos(&self, t: &Table) -> Result<Vec<ThetaMorphism>> {
        let mut out = Vec::new();
        for s in enumerate_objects(t.dim(), t.width()) {
            if &s == t {
                continue;
            }
            out.extend(self.hom(&s, t)?.into_iter().filter(ThetaMorphism::is_mono));
        }
        Ok(out)
    }

    /// The globe legs and the overlap legs of `T`.
    pub fn spine_inclusions(&self, t: &Table) -> Result<SpineLegs> {
        let free = self.free(t)?;
        let c = &free.cat;
        let leg = |k: usize, x: u32| ThetaMorphism {
            source: Table::disk(k),
            target: t.clone(),
            map: globe_map(k, c.clone(), x).map,
        };
        let globes = free.legs.iter().map(|&(d, x)| leg(d, x)).collect();
        let overlaps = t
            .bottom
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                let (d, x) = free.legs[k];
                leg(b, c.tgt_to(d, x, b))
            })
            .collect();
        Ok(SpineLegs { globes, overlaps })
    }
}

/// `Δ_m ↦` its table in Θ_1.
pub fn delta_bridge(m: usize) -> Table {
    Table::simplex(m)
}

/// Inverse of [`delta_bridge`].
pub fn delta_unbridge(t: &Table) -> Result<usize> {
    t.as_simplex()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Table {
        s.parse().unwrap()
    }

    #[test]
    fn free_counts() {
        let th = Theta::new(2);
        assert_eq!(th.free_ncat(&t("1")).unwrap().cell_counts(), vec![2, 3, 3]);
        assert_eq!(th.free_ncat(&t("1 1 / 0")).unwrap().cell_counts(), vec![3, 6, 6]);
        assert_eq!(th.free_ncat(&t("2")).unwrap().cell_counts(), vec![2, 4, 5]);
        assert!(th.free_ncat(&t("3")).is_err());
        for table in enumerate_objects(2, 3) {
            assert!(th.free_ncat(&table).unwrap().validate().is_valid(), "{table}");
        }
    }

    #[test]
    fn hom_counts() {
        let th = Theta::new(2);
        assert_eq!(th.hom(&t("0"), &t("0")).unwrap().len(), 1);
        assert_eq!(th.hom(&t("1"), &t("2")).unwrap().len(), 4);
    }

    #[test]
    fn monos_and_split_epis() {
        let th = Theta::new(1);
        let id = th.identity(&t("1 1 / 0")).unwrap();
        assert!(id.is_mono() && th.is_split_epi(&id).unwrap());
        let incl = th.hom(&t("1"), &t("1 1 / 0")).unwrap();
        let monos: Vec<_> = incl.iter().filter(|f| f.is_mono()).collect();
        assert_eq!(monos.len(), 3);
        assert!(monos.iter().all(|f| !th.is_split_epi(f).unwrap()));
        let folds: Vec<_> = th
            .hom(&t("1 1 / 0"), &t("1"))
            .unwrap()
            .into_iter()
            .filter(|f| th.is_split_epi(f).unwrap())
            .collect();
        assert_eq!(folds.len(), 2);
        assert!(folds.iter().all(|f| !f.is_mono()));
    }

    #[test]
    fn constant_map_factors_through_a_point() {
        let th = Theta::new(2);
        for f in th.hom(&t("1"), &t("1")).unwrap() {
            let (e, m) = th.ez_factorize(&f).unwrap();
            assert_eq!(m.after(&e), f);
            if f.is_identity() {
                assert!(e.is_identity());
            } else {
                assert_eq!(e.target, Table::point());
            }
        }
    }

    #[test]
    fn spine_legs_of_a_simplex() {
        let th = Theta::new(1);
        let legs = th.spine_inclusions(&t("1 1 / 0")).unwrap();
        assert_eq!(legs.globes.len(), 2);
        assert_eq!(legs.overlaps.len(), 1);
        // the legs pick the edges 0 -> 1 and 1 -> 2
        let ends: Vec<(u32, u32)> = legs.globes.iter().map(|g| (g.map[0][0], g.map[0][1])).collect();
        assert_eq!(ends, vec![(0, 1), (1, 2)]);
        assert_eq!(legs.overlaps[0].map[0], vec![1]);
    }
}
