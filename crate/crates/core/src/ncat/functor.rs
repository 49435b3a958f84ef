use std::sync::Arc;

use super::FiniteNCat;
use crate::error::{Error, Result};

/// Cell-wise map: `map[k][x]` is the image of the `k`-cell `x`.
pub type CellMap = Vec<Vec<u32>>;

/// A strict n-functor between explicit finite n-categories.
#[derive(Clone, Debug)]
pub struct NFunctor {
    pub source: Arc<FiniteNCat>,
    pub target: Arc<FiniteNCat>,
    pub map: CellMap,
}

impl PartialEq for NFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for NFunctor {}

impl NFunctor {
    pub fn new(source: Arc<FiniteNCat>, target: Arc<FiniteNCat>, map: CellMap) -> Result<Self> {
        if source.level() != target.level() {
            return Err(Error::LevelMismatch(source.level(), target.level()));
        }
        let f = NFunctor { source, target, map };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteNCat>, target: Arc<FiniteNCat>, map: CellMap) -> Self {
        NFunctor { source, target, map }
    }

    pub fn identity(c: Arc<FiniteNCat>) -> Self {
        let map = c.sizes().iter().map(|&s| (0..s as u32).collect()).collect();
        NFunctor {
            source: c.clone(),
            target: c,
            map,
        }
    }

    /// The unique functor to the terminal category of the same level.
    pub fn to_terminal(c: Arc<FiniteNCat>) -> Self {
        let t = Arc::new(FiniteNCat::terminal(c.level()));
        let map = c.sizes().iter().map(|&s| vec![0; s]).collect();
        NFunctor { source: c, target: t, map }
    }

    /// The functor from the terminal category picking the object `x`.
    pub fn point(c: Arc<FiniteNCat>, x: u32) -> Self {
        let t = Arc::new(FiniteNCat::terminal(c.level()));
        let mut map = vec![vec![x]];
        for k in 0..c.level() {
            let prev = map[k][0];
            map.push(vec![c.ident(k, prev)]);
        }
        NFunctor { source: t, target: c, map }
    }

    #[inline]
    pub fn apply(&self, k: usize, x: u32) -> u32 {
        self.map[k][x as usize]
    }

    pub fn level(&self) -> usize {
        self.source.level()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &NFunctor) -> Result<NFunctor> {
        if !Arc::ptr_eq(&other.target, &self.source) && other.target.sizes() != self.source.sizes() {
            return Err(Error::Invalid("functors are not composable".into()));
        }
        Ok(NFunctor {
            source: other.source.clone(),
            target: self.target.clone(),
            map: compose_maps(&self.map, &other.map),
        })
    }

    /// Lists every way in which the map fails to be a strict n-functor.
    pub fn violations(&self) -> Vec<String> {
        let (s, t) = (&*self.source, &*self.target);
        let mut out = Vec::new();
        if self.map.len() != s.level() + 1 {
            out.push("wrong number of dimensions".to_string());
            return out;
        }
        for k in 0..=s.level() {
            if self.map[k].len() != s.size(k) {
                out.push(format!("dimension {k}: {} images for {} cells", self.map[k].len(), s.size(k)));
                return out;
            }
            if let Some(&bad) = self.map[k].iter().find(|&&y| y as usize >= t.size(k)) {
                out.push(format!("dimension {k}: image {bad} out of range"));
                return out;
            }
        }
        for k in 1..=s.level() {
            for x in 0..s.size(k) as u32 {
                let y = self.apply(k, x);
                if t.src(k, y) != self.apply(k - 1, s.src(k, x)) {
                    out.push(format!("source of {k}-cell {x}"));
                }
                if t.tgt(k, y) != self.apply(k - 1, s.tgt(k, x)) {
                    out.push(format!("target of {k}-cell {x}"));
                }
            }
        }
        for k in 0..s.level() {
            for x in 0..s.size(k) as u32 {
                if self.apply(k + 1, s.ident(k, x)) != t.ident(k, self.apply(k, x)) {
                    out.push(format!("identity of {k}-cell {x}"));
                }
            }
        }
        for k in 1..=s.level() {
            for j in 0..k {
                for &[g, f, r] in s.comp_table(j, k).entries() {
                    let image = t.comp(j, k, self.apply(k, g), self.apply(k, f));
                    if image != Some(self.apply(k, r)) {
                        out.push(format!("composite comp[{j}][{k}]({g}, {f})"));
                    }
                }
            }
        }
        out
    }

    fn check(&self) -> Result<()> {
        match self.violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::Invalid(format!("not a strict functor: {v}"))),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Injective in every dimension.
    pub fn is_injective(&self) -> bool {
        self.map.iter().zip(self.target.sizes()).all(|(m, &n)| {
            let mut seen = vec![false; n];
            m.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
        })
    }

    /// Bijective on objects.
    pub fn is_bijective_on_objects(&self) -> bool {
        if self.source.size(0) != self.target.size(0) {
            return false;
        }
        let mut seen = vec![false; self.target.size(0)];
        self.map[0].iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    /// `self × other : A × B → C × D`, cell-wise on pairs.
    pub fn product(&self, other: &NFunctor) -> Result<NFunctor> {
        let source = Arc::new(self.source.product(&other.source)?);
        let target = Arc::new(self.target.product(&other.target)?);
        let map = (0..=self.level())
            .map(|k| {
                let radix = other.target.size(k) as u32;
                let mut row = Vec::with_capacity(source.size(k));
                for &a in &self.map[k] {
                    for &b in &other.map[k] {
                        row.push(a * radix + b);
                    }
                }
                row
            })
            .collect();
        Ok(NFunctor { source, target, map })
    }

    /// Extends the functor with identity images in the dimensions added by
    /// [`FiniteNCat::promote`].
    pub fn promote(&self, level: usize) -> NFunctor {
        let source = Arc::new(self.source.promote(level));
        let target = Arc::new(self.target.promote(level));
        let mut map = self.map.clone();
        let top = self.level();
        for _ in top + 1..=level {
            map.push(self.map[top].clone());
        }
        NFunctor { source, target, map }
    }
}

/// `outer ∘ inner` on cell maps.
pub fn compose_maps(outer: &CellMap, inner: &CellMap) -> CellMap {
    inner
        .iter()
        .zip(outer)
        .map(|(i, o)| i.iter().map(|&x| o[x as usize]).collect())
        .collect()
}
