//! Bounded sites: finite full subcategories of Θ_n (all tables up to a given
//! dimension and width) and their products, with explicit morphism ids.
//!
//! Every presheaf in this crate lives on a site. Monomorphisms into and split
//! epimorphisms out of a bounded table stay within the bounds, so the
//! Eilenberg–Zilber decomposition of an element never leaves the site.

use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncat::{compose_maps, CellMap};
use crate::theta::{encode_cell_map, enumerate_objects, Table, Theta, ThetaMorphism};

/// Object of a site: a table, or a pair for a product site.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum SiteObject {
    Table(Table),
    Pair(Box<SiteObject>, Box<SiteObject>),
}

impl fmt::Display for SiteObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiteObject::Table(t) => write!(f, "({t})"),
            SiteObject::Pair(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// The size limits of a bounded site of Θ_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bounds {
    pub max_dim: usize,
    pub max_width: usize,
}

impl Bounds {
    pub fn new(max_dim: usize, max_width: usize) -> Bounds {
        Bounds { max_dim, max_width }
    }

    pub fn contains(&self, t: &Table) -> bool {
        t.dim() <= self.max_dim && t.width() <= self.max_width
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim <= {}, width <= {}", self.max_dim, self.max_width)
    }
}

#[derive(Clone, Copy, Debug)]
struct Arrow {
    source: u32,
    target: u32,
}

#[derive(Debug)]
enum Kind {
    Theta {
        theta: Arc<Theta>,
        bounds: Bounds,
        maps: Vec<CellMap>,
        // (source, target) -> cell map -> morphism id
        index: FxHashMap<(u32, u32), FxHashMap<CellMap, u32>>,
    },
    Product {
        left: Arc<Site>,
        right: Arc<Site>,
        parts: Vec<(u32, u32)>,
        index: FxHashMap<(u32, u32), u32>,
    },
}

/// A finite category with explicitly numbered objects and morphisms.
#[derive(Debug)]
pub struct Site {
    objects: Vec<SiteObject>,
    object_index: FxHashMap<SiteObject, u32>,
    ranks: Vec<usize>,
    arrows: Vec<Arrow>,
    // homs[s][t]: morphism ids s -> t
    homs: Vec<Vec<Vec<u32>>>,
    into: Vec<Vec<u32>>,
    identity: Vec<u32>,
    mono: Vec<bool>,
    split_epi: Vec<bool>,
    kind: Kind,
}

impl Site {
    /// All tables of dimension `≤ max_dim` and width `≤ max_width` in Θ_n.
    pub fn theta(theta: Arc<Theta>, bounds: Bounds) -> Result<Arc<Site>> {
        if bounds.max_dim > theta.n() {
            return Err(Error::Invalid(format!("bounds {bounds} exceed n = {}", theta.n())));
        }
        if bounds.max_width == 0 {
            return Err(Error::Invalid("bounds need width >= 1".into()));
        }
        let tables = enumerate_objects(bounds.max_dim, bounds.max_width);
        let objects: Vec<SiteObject> = tables.iter().cloned().map(SiteObject::Table).collect();
        let ranks = tables
            .iter()
            .map(|t| theta.free_ncat(t).map(|c| c.total_cells()))
            .collect::<Result<Vec<_>>>()?;
        let n_obj = tables.len();
        let mut arrows = Vec::new();
        let mut maps = Vec::new();
        let mut homs = vec![vec![vec![]; n_obj]; n_obj];
        let mut index: FxHashMap<(u32, u32), FxHashMap<CellMap, u32>> = FxHashMap::default();
        let mut mono = Vec::new();
        for (s, ts) in tables.iter().enumerate() {
            for (t, tt) in tables.iter().enumerate() {
                let h = theta.hom_maps(ts, tt)?;
                let slot = index.entry((s as u32, t as u32)).or_default();
                for m in h.iter() {
                    let id = arrows.len() as u32;
                    arrows.push(Arrow {
                        source: s as u32,
                        target: t as u32,
                    });
                    homs[s][t].push(id);
                    slot.insert(m.clone(), id);
                    mono.push(
                        ThetaMorphism {
                            source: ts.clone(),
                            target: tt.clone(),
                            map: m.clone(),
                        }
                        .is_mono(),
                    );
                    maps.push(m.clone());
                }
            }
        }
        let identity = tables
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let id = theta.identity(t)?;
                Ok(index[&(i as u32, i as u32)][&id.map])
            })
            .collect::<Result<Vec<_>>>()?;
        let kind = Kind::Theta {
            theta,
            bounds,
            maps,
            index,
        };
        Ok(Arc::new(Site::assemble(objects, ranks, arrows, homs, identity, mono, kind)))
    }

    /// Δ bounded at `[max_m]`, as the tables of Θ_1 of dimension `≤ 1`.
    pub fn delta(max_m: usize) -> Result<Arc<Site>> {
        Site::theta(Arc::new(Theta::new(1)), Bounds::new(1, max_m.max(1)))
    }

    /// The product site `A × B`; objects and morphisms are pairs.
    pub fn product(left: &Arc<Site>, right: &Arc<Site>) -> Arc<Site> {
        let (nl, nr) = (left.num_objects(), right.num_objects());
        let mut objects = Vec::new();
        let mut ranks = Vec::new();
        for a in 0..nl {
            for b in 0..nr {
                objects.push(SiteObject::Pair(
                    Box::new(left.objects[a].clone()),
                    Box::new(right.objects[b].clone()),
                ));
                ranks.push(left.ranks[a] + right.ranks[b]);
            }
        }
        let n_obj = objects.len();
        let mut arrows = Vec::new();
        let mut parts = Vec::new();
        let mut homs = vec![vec![vec![]; n_obj]; n_obj];
        let mut index = FxHashMap::default();
        let mut mono = Vec::new();
        for s in 0..n_obj as u32 {
            for t in 0..n_obj as u32 {
                let (sa, sb) = (s / nr as u32, s % nr as u32);
                let (ta, tb) = (t / nr as u32, t % nr as u32);
                for &f in left.hom(sa, ta) {
                    for &g in right.hom(sb, tb) {
                        let id = arrows.len() as u32;
                        arrows.push(Arrow { source: s, target: t });
                        homs[s as usize][t as usize].push(id);
                        parts.push((f, g));
                        index.insert((f, g), id);
                        mono.push(left.is_mono(f) && right.is_mono(g));
                    }
                }
            }
        }
        let identity = (0..nl as u32)
            .flat_map(|a| (0..nr as u32).map(move |b| (a, b)))
            .map(|(a, b)| index[&(left.identity(a), right.identity(b))])
            .collect();
        let kind = Kind::Product {
            left: left.clone(),
            right: right.clone(),
            parts,
            index,
        };
        Arc::new(Site::assemble(objects, ranks, arrows, homs, identity, mono, kind))
    }

    fn assemble(
        objects: Vec<SiteObject>,
        ranks: Vec<usize>,
        arrows: Vec<Arrow>,
        homs: Vec<Vec<Vec<u32>>>,
        identity: Vec<u32>,
        mono: Vec<bool>,
        kind: Kind,
    ) -> Site {
        let object_index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i as u32)).collect();
        let mut into = vec![vec![]; objects.len()];
        for (id, a) in arrows.iter().enumerate() {
            into[a.target as usize].push(id as u32);
        }
        let mut site = Site {
            objects,
            object_index,
            ranks,
            arrows,
            homs,
            into,
            identity,
            mono,
            split_epi: vec![],
            kind,
        };
        let split_epi = (0..site.arrows.len() as u32)
            .map(|f| {
                let a = site.arrows[f as usize];
                let id = site.identity[a.target as usize];
                site.hom(a.target, a.source).iter().any(|&s| site.compose(f, s) == id)
            })
            .collect();
        site.split_epi = split_epi;
        site
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.arrows.len()
    }

    pub fn object(&self, o: u32) -> &SiteObject {
        &self.objects[o as usize]
    }

    pub fn objects(&self) -> &[SiteObject] {
        &self.objects
    }

    pub fn find(&self, o: &SiteObject) -> Option<u32> {
        self.object_index.get(o).copied()
    }

    /// Index of a table in a site of Θ_n.
    pub fn table(&self, t: &Table) -> Result<u32> {
        self.find(&SiteObject::Table(t.clone()))
            .ok_or_else(|| Error::OutOfBounds(format!("table {t} is not in the site")))
    }

    pub fn pair(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            Kind::Product { right, .. } => a * right.num_objects() as u32 + b,
            Kind::Theta { .. } => panic!("not a product site"),
        }
    }

    /// Cell count of the object, used as the degree in searches.
    pub fn rank(&self, o: u32) -> usize {
        self.ranks[o as usize]
    }

    pub fn source(&self, f: u32) -> u32 {
        self.arrows[f as usize].source
    }

    pub fn target(&self, f: u32) -> u32 {
        self.arrows[f as usize].target
    }

    pub fn hom(&self, s: u32, t: u32) -> &[u32] {
        &self.homs[s as usize][t as usize]
    }

    /// All morphisms with the given target.
    pub fn incoming(&self, t: u32) -> &[u32] {
        &self.into[t as usize]
    }

    pub fn identity(&self, o: u32) -> u32 {
        self.identity[o as usize]
    }

    pub fn is_identity(&self, f: u32) -> bool {
        self.identity[self.source(f) as usize] == f
    }

    pub fn is_mono(&self, f: u32) -> bool {
        self.mono[f as usize]
    }

    pub fn is_split_epi(&self, f: u32) -> bool {
        self.split_epi[f as usize]
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: u32, f: u32) -> u32 {
        debug_assert_eq!(self.target(f), self.source(g), "morphisms are not composable");
        match &self.kind {
            Kind::Theta { maps, index, .. } => {
                let m = compose_maps(&maps[g as usize], &maps[f as usize]);
                index[&(self.source(f), self.target(g))][&m]
            }
            Kind::Product { left, right, parts, index } => {
                let ((g1, g2), (f1, f2)) = (parts[g as usize], parts[f as usize]);
                index[&(left.compose(g1, f1), right.compose(g2, f2))]
            }
        }
    }

    /// The Θ_n context of a site of tables.
    pub fn theta_context(&self) -> Option<&Arc<Theta>> {
        match &self.kind {
            Kind::Theta { theta, .. } => Some(theta),
            Kind::Product { .. } => None,
        }
    }

    pub fn bounds(&self) -> Option<Bounds> {
        match &self.kind {
            Kind::Theta { bounds, .. } => Some(*bounds),
            Kind::Product { .. } => None,
        }
    }

    /// The functor underlying a morphism of a site of tables.
    pub fn cell_map(&self, f: u32) -> &CellMap {
        match &self.kind {
            Kind::Theta { maps, .. } => &maps[f as usize],
            Kind::Product { .. } => panic!("cell maps exist only on sites of tables"),
        }
    }

    /// Id of the morphism with the given cell map.
    pub fn morphism_of(&self, s: u32, t: u32, map: &CellMap) -> Option<u32> {
        match &self.kind {
            Kind::Theta { index, .. } => index.get(&(s, t)).and_then(|m| m.get(map)).copied(),
            Kind::Product { .. } => None,
        }
    }

    pub fn factors(&self) -> Option<(&Arc<Site>, &Arc<Site>)> {
        match &self.kind {
            Kind::Product { left, right, .. } => Some((left, right)),
            Kind::Theta { .. } => None,
        }
    }

    /// The two components of a morphism of a product site.
    pub fn parts(&self, f: u32) -> (u32, u32) {
        match &self.kind {
            Kind::Product { parts, .. } => parts[f as usize],
            Kind::Theta { .. } => panic!("not a product site"),
        }
    }

    pub fn morphism_of_parts(&self, f: u32, g: u32) -> u32 {
        match &self.kind {
            Kind::Product { index, .. } => index[&(f, g)],
            Kind::Theta { .. } => panic!("not a product site"),
        }
    }

    /// The unique morphism to the terminal object `(0)` (or `((0), (0))`).
    pub fn to_point(&self, o: u32) -> u32 {
        let point = self.point();
        self.hom(o, point)[0]
    }

    pub fn point(&self) -> u32 {
        match &self.kind {
            Kind::Theta { .. } => self.find(&SiteObject::Table(Table::point())).expect("(0) is always bounded"),
            Kind::Product { left, right, .. } => self.pair(left.point(), right.point()),
        }
    }

    /// Canonical text form of a morphism: its cell map, or the pair of its
    /// components on a product site.
    pub fn morphism_label(&self, f: u32) -> String {
        match &self.kind {
            Kind::Theta { maps, .. } => encode_cell_map(&maps[f as usize]),
            Kind::Product { left, right, parts, .. } => {
                let (a, b) = parts[f as usize];
                format!("({};{})", left.morphism_label(a), right.morphism_label(b))
            }
        }
    }

    /// The morphism `s → t` acting on objects by `objects`.
    pub fn by_object_map(&self, s: u32, t: u32, objects: &[u32]) -> Option<u32> {
        self.hom(s, t).iter().copied().find(|&f| self.cell_map(f)[0] == objects)
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            Kind::Theta { theta, bounds, .. } => format!("Theta_{} ({bounds})", theta.n()),
            Kind::Product { left, right, .. } => format!("{} x {}", left.describe(), right.describe()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_site_matches_order_preserving_maps() {
        let d = Site::delta(3).unwrap();
        assert_eq!(d.num_objects(), 4);
        let binom = |a: u64, b: u64| (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1));
        for m in 0..=3usize {
            for k in 0..=3usize {
                let (s, t) = (d.table(&Table::simplex(m)).unwrap(), d.table(&Table::simplex(k)).unwrap());
                assert_eq!(d.hom(s, t).len() as u64, binom((m + k + 1) as u64, (m + 1) as u64));
            }
        }
    }

    #[test]
    fn composition_is_associative_and_unital() {
        let s = Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 2)).unwrap();
        for f in 0..s.num_morphisms() as u32 {
            assert_eq!(s.compose(s.identity(s.target(f)), f), f);
            assert_eq!(s.compose(f, s.identity(s.source(f))), f);
            for &g in s.incoming(s.source(f)).iter().take(4) {
                for &h in s.incoming(s.source(g)).iter().take(4) {
                    assert_eq!(s.compose(s.compose(f, g), h), s.compose(f, s.compose(g, h)));
                }
            }
        }
    }

    #[test]
    fn product_site_is_componentwise() {
        let a = Site::delta(1).unwrap();
        let p = Site::product(&a, &a);
        assert_eq!(p.num_objects(), 4);
        assert_eq!(p.num_morphisms(), a.num_morphisms() * a.num_morphisms());
        let point = p.point();
        assert_eq!(p.hom(point, point).len(), 1);
    }
}
