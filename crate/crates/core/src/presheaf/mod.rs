//! Finite presheaves on a bounded [`Site`]: evaluation tables, the
//! Eilenberg–Zilber decomposition, natural transformations and their
//! enumeration.
//!
//! A presheaf is evaluated eagerly at every object of its site, so the
//! evaluation is an immutable table shared through `Arc`.

mod build;
mod ez;
mod maps;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::site::{Site, SiteObject};

pub(crate) use build::from_marks;
pub use build::{
    boundary, coproduct, image, nerve, nerve_map, product, pullback, pullback_t, pushout, representable, segal_check, spine, subpresheaf,
    to_terminal, union_in, Generated,
};
pub use ez::Ez;
pub use maps::{enumerate_maps, MapSearch};

/// A presheaf on a finite site: a finite set `X(o)` per object and, for each
/// morphism `g: s → t`, the action `X(t) → X(s)`.
pub struct Presheaf {
    site: Arc<Site>,
    sizes: Vec<usize>,
    // act[g][x] = g^*(x) for x in X(target g)
    act: Vec<Vec<u32>>,
    labels: Vec<Vec<String>>,
    lookup: OnceLock<Vec<FxHashMap<String, u32>>>,
    ez: OnceLock<std::result::Result<Arc<Ez>, String>>,
    plan: OnceLock<Arc<maps::Plan>>,
}

impl fmt::Debug for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presheaf")
            .field("site", &self.site.describe())
            .field("sizes", &self.sizes)
            .finish()
    }
}

impl Presheaf {
    /// Assembles a presheaf from its action tables. Shapes are checked;
    /// functoriality is not, see [`Presheaf::check_functoriality`].
    pub fn from_parts(site: Arc<Site>, sizes: Vec<usize>, act: Vec<Vec<u32>>, labels: Vec<Vec<String>>) -> Result<Arc<Presheaf>> {
        if sizes.len() != site.num_objects() || labels.len() != sizes.len() {
            return Err(Error::Invalid(format!(
                "expected {} objects, got {}",
                site.num_objects(),
                sizes.len()
            )));
        }
        if act.len() != site.num_morphisms() {
            return Err(Error::Invalid(format!(
                "expected {} actions, got {}",
                site.num_morphisms(),
                act.len()
            )));
        }
        for (o, l) in labels.iter().enumerate() {
            if l.len() != sizes[o] {
                return Err(Error::Invalid(format!("object {o}: {} labels for {} elements", l.len(), sizes[o])));
            }
        }
        for (g, a) in act.iter().enumerate() {
            let (s, t) = (site.source(g as u32), site.target(g as u32));
            if a.len() != sizes[t as usize] || a.iter().any(|&y| y as usize >= sizes[s as usize]) {
                return Err(Error::Invalid(format!("action of morphism {g} has the wrong shape")));
            }
        }
        Ok(Arc::new(Presheaf {
            site,
            sizes,
            act,
            labels,
            lookup: OnceLock::new(),
            ez: OnceLock::new(),
            plan: OnceLock::new(),
        }))
    }

    /// The presheaf with one element everywhere.
    pub fn terminal(site: &Arc<Site>) -> Arc<Presheaf> {
        let n = site.num_objects();
        let act = vec![vec![0]; site.num_morphisms()];
        Presheaf::from_parts(site.clone(), vec![1; n], act, vec![vec!["*".into()]; n]).expect("well shaped")
    }

    pub fn empty(site: &Arc<Site>) -> Arc<Presheaf> {
        let n = site.num_objects();
        Presheaf::from_parts(site.clone(), vec![0; n], vec![vec![]; site.num_morphisms()], vec![vec![]; n]).expect("well shaped")
    }

    pub fn site(&self) -> &Arc<Site> {
        &self.site
    }

    /// `|X(o)|`.
    pub fn size(&self, o: u32) -> usize {
        self.sizes[o as usize]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `g^*(x)` for `g: s → t` and `x ∈ X(t)`.
    pub fn act(&self, g: u32, x: u32) -> u32 {
        self.act[g as usize][x as usize]
    }

    pub fn action(&self, g: u32) -> &[u32] {
        &self.act[g as usize]
    }

    /// Canonical encoding of an element.
    pub fn label(&self, o: u32, x: u32) -> &str {
        &self.labels[o as usize][x as usize]
    }

    pub fn labels(&self, o: u32) -> &[String] {
        &self.labels[o as usize]
    }

    /// The element with the given encoding.
    pub fn find(&self, o: u32, label: &str) -> Option<u32> {
        let lookup = self.lookup.get_or_init(|| {
            self.labels
                .iter()
                .map(|ls| ls.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect())
                .collect()
        });
        lookup[o as usize].get(label).copied()
    }

    /// `(gh)^* = h^* g^*` and `id^* = id` for every composable pair.
    pub fn check_functoriality(&self) -> Result<()> {
        let s = &self.site;
        for o in 0..s.num_objects() as u32 {
            let id = s.identity(o);
            if self.act[id as usize].iter().enumerate().any(|(i, &y)| i as u32 != y) {
                return Err(Error::Invariant(format!("identity of {} acts non-trivially", s.object(o))));
            }
        }
        for g in 0..s.num_morphisms() as u32 {
            for &h in s.incoming(s.source(g)) {
                let gh = s.compose(g, h);
                for x in 0..self.size(s.target(g)) as u32 {
                    if self.act(gh, x) != self.act(h, self.act(g, x)) {
                        return Err(Error::Invariant(format!(
                            "action is not functorial on {} -> {} -> {}",
                            s.object(s.source(h)),
                            s.object(s.source(g)),
                            s.object(s.target(g))
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The Eilenberg–Zilber decomposition of every element.
    pub fn ez(&self) -> Result<Arc<Ez>> {
        self.ez
            .get_or_init(|| Ez::compute(self).map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(Error::Invariant)
    }

    /// Elements admitting no decomposition through a non-identity split
    /// epimorphism, as `(object, element)` in site order.
    pub fn nondegenerate_cells(&self) -> Result<Vec<(u32, u32)>> {
        let ez = self.ez()?;
        Ok((0..self.sizes.len() as u32)
            .flat_map(|o| ez.nondegenerate(o).iter().map(move |&x| (o, x)))
            .collect())
    }

    /// The bounded JSON dump: every object with its element encodings.
    pub fn dump(&self) -> PresheafDump {
        PresheafDump {
            site: self.site.describe(),
            bounds: self.site.bounds().map(|b| DumpBounds {
                max_dim: b.max_dim,
                max_width: b.max_width,
            }),
            tables: (0..self.sizes.len() as u32)
                .map(|o| DumpEntry {
                    table: object_text(self.site.object(o)),
                    elements: self.labels(o).to_vec(),
                })
                .collect(),
        }
    }
}

fn object_text(o: &SiteObject) -> String {
    match o {
        SiteObject::Table(t) => t.to_string(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DumpBounds {
    pub max_dim: usize,
    pub max_width: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DumpEntry {
    pub table: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresheafDump {
    pub site: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<DumpBounds>,
    pub tables: Vec<DumpEntry>,
}

/// A natural transformation, stored as one component array per object.
#[derive(Clone)]
pub struct PresheafMap {
    pub source: Arc<Presheaf>,
    pub target: Arc<Presheaf>,
    comp: Vec<Vec<u32>>,
}

impl fmt::Debug for PresheafMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresheafMap")
            .field("source", &self.source.sizes)
            .field("target", &self.target.sizes)
            .field("comp", &self.comp)
            .finish()
    }
}

impl PartialEq for PresheafMap {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.source, &other.source) && Arc::ptr_eq(&self.target, &other.target) && self.comp == other.comp
    }
}

impl PresheafMap {
    /// Checks shapes and naturality against every morphism of the site.
    pub fn new(source: Arc<Presheaf>, target: Arc<Presheaf>, comp: Vec<Vec<u32>>) -> Result<PresheafMap> {
        let m = PresheafMap::new_unchecked(source, target, comp);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Arc<Presheaf>, target: Arc<Presheaf>, comp: Vec<Vec<u32>>) -> PresheafMap {
        PresheafMap { source, target, comp }
    }

    fn check(&self) -> Result<()> {
        let (x, y) = (&self.source, &self.target);
        if !Arc::ptr_eq(&x.site, &y.site) {
            return Err(Error::Invalid("presheaves live on different sites".into()));
        }
        let s = &x.site;
        if self.comp.len() != s.num_objects() {
            return Err(Error::Invalid("wrong number of components".into()));
        }
        for (o, c) in self.comp.iter().enumerate() {
            if c.len() != x.sizes[o] || c.iter().any(|&v| v as usize >= y.sizes[o]) {
                return Err(Error::Invalid(format!("component at {} has the wrong shape", s.object(o as u32))));
            }
        }
        for g in 0..s.num_morphisms() as u32 {
            let (a, b) = (s.source(g), s.target(g));
            for e in 0..x.size(b) as u32 {
                if y.act(g, self.apply(b, e)) != self.apply(a, x.act(g, e)) {
                    return Err(Error::Invariant(format!("not natural along {} -> {}", s.object(a), s.object(b))));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &Arc<Presheaf>) -> PresheafMap {
        let comp = x.sizes.iter().map(|&n| (0..n as u32).collect()).collect();
        PresheafMap::new_unchecked(x.clone(), x.clone(), comp)
    }

    pub fn apply(&self, o: u32, x: u32) -> u32 {
        self.comp[o as usize][x as usize]
    }

    pub fn component(&self, o: u32) -> &[u32] {
        &self.comp[o as usize]
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.comp
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &PresheafMap) -> Result<PresheafMap> {
        if !Arc::ptr_eq(&other.target, &self.source) {
            return Err(Error::Invalid("maps are not composable".into()));
        }
        let comp = other
            .comp
            .iter()
            .enumerate()
            .map(|(o, c)| c.iter().map(|&x| self.comp[o][x as usize]).collect())
            .collect();
        Ok(PresheafMap::new_unchecked(other.source.clone(), self.target.clone(), comp))
    }

    /// Injective at every object.
    pub fn is_mono(&self) -> bool {
        self.comp.iter().enumerate().all(|(o, c)| {
            let mut seen = vec![false; self.target.sizes[o]];
            c.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
        })
    }

    pub fn is_epi(&self) -> bool {
        self.comp.iter().enumerate().all(|(o, c)| {
            let mut seen = vec![false; self.target.sizes[o]];
            c.iter().for_each(|&x| seen[x as usize] = true);
            seen.into_iter().all(|b| b)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn site(&self) -> &Arc<Site> {
        &self.source.site
    }
}
