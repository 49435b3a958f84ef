//! The divisions `V\X` (a simplicial set) and `X/T` (a presheaf on Θ_n) of a
//! presheaf `X` on Θ_n×Δ, and the comparison maps `⟨u\f⟩` and `⟨f/v⟩`.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::presheaf::{self, enumerate_maps, Presheaf, PresheafMap};
use crate::site::Site;

use super::{box_map, external_product, Bisite, BoxProduct};

/// A presheaf `o ↦ maps(A(o), X)` for a functor `A` into presheaves on the
/// bisite, acting by precomposition.
#[derive(Clone, Debug)]
pub struct MappingPresheaf {
    pub presheaf: Arc<Presheaf>,
    pub sources: Vec<BoxProduct>,
    pub target: Arc<Presheaf>,
    maps: Vec<Vec<PresheafMap>>,
    index: Vec<FxHashMap<Vec<Vec<u32>>, u32>>,
}

impl MappingPresheaf {
    fn build(site: &Arc<Site>, sources: Vec<BoxProduct>, along: &[PresheafMap], target: &Arc<Presheaf>) -> Result<MappingPresheaf> {
        let n = site.num_objects();
        let maps: Vec<Vec<PresheafMap>> = sources.iter().map(|a| enumerate_maps(&a.presheaf, target)).collect::<Result<_>>()?;
        let index: Vec<FxHashMap<Vec<Vec<u32>>, u32>> = maps
            .iter()
            .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.components().to_vec(), i as u32)).collect())
            .collect();
        let act = (0..site.num_morphisms() as u32)
            .map(|g| {
                let s = site.source(g) as usize;
                let t = site.target(g) as usize;
                maps[t]
                    .iter()
                    .map(|phi| {
                        let r = phi.after(&along[g as usize])?;
                        index[s]
                            .get(r.components())
                            .copied()
                            .ok_or_else(|| Error::Invariant("restricted map is missing".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = maps.iter().map(|ms| ms.iter().map(encode).collect()).collect();
        let sizes = maps.iter().map(Vec::len).collect();
        debug_assert_eq!(n, sources.len());
        let presheaf = Presheaf::from_parts(site.clone(), sizes, act, labels)?;
        Ok(MappingPresheaf {
            presheaf,
            sources,
            target: target.clone(),
            maps,
            index,
        })
    }

    /// The map `A(o) → X` named by an element at `o`.
    pub fn element(&self, o: u32, x: u32) -> &PresheafMap {
        &self.maps[o as usize][x as usize]
    }

    /// The element naming a map `A(o) → X`.
    pub fn find(&self, o: u32, m: &PresheafMap) -> Option<u32> {
        self.index[o as usize].get(m.components()).copied()
    }

    /// The map `self → other` sending `φ` at `o` to `transform(o, φ)`.
    fn induced(&self, other: &MappingPresheaf, transform: impl Fn(u32, &PresheafMap) -> Result<PresheafMap>) -> Result<PresheafMap> {
        let comp = (0..self.maps.len() as u32)
            .map(|o| {
                self.maps[o as usize]
                    .iter()
                    .map(|phi| {
                        let psi = transform(o, phi)?;
                        other
                            .find(o, &psi)
                            .ok_or_else(|| Error::Invariant("induced map leaves the target".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PresheafMap::new(self.presheaf.clone(), other.presheaf.clone(), comp)
    }
}

fn encode(m: &PresheafMap) -> String {
    m.components()
        .iter()
        .map(|c| c.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

/// The representables of a site and the maps between them.
struct Yoneda {
    reps: Vec<Arc<Presheaf>>,
}

impl Yoneda {
    fn new(site: &Arc<Site>) -> Yoneda {
        Yoneda {
            reps: (0..site.num_objects() as u32)
                .map(|o| presheaf::representable(site, o).presheaf)
                .collect(),
        }
    }

    /// `hom(-, s) → hom(-, t)`, `h ↦ g∘h`.
    fn map(&self, site: &Site, g: u32) -> PresheafMap {
        let (s, t) = (site.source(g), site.target(g));
        let comp = (0..site.num_objects() as u32)
            .map(|r| {
                let into_t = site.hom(r, t);
                site.hom(r, s)
                    .iter()
                    .map(|&h| {
                        let gh = site.compose(g, h);
                        into_t.iter().position(|&k| k == gh).expect("composite in its hom-set") as u32
                    })
                    .collect()
            })
            .collect();
        PresheafMap::new_unchecked(self.reps[s as usize].clone(), self.reps[t as usize].clone(), comp)
    }
}

/// `W\Z`, with `(W\Z)_m = maps(W □ Δ_m, Z)`.
fn left_hom(bs: &Bisite, y: &Yoneda, w: &Arc<Presheaf>, z: &Arc<Presheaf>) -> Result<MappingPresheaf> {
    let d = &bs.delta;
    let sources = y.reps.iter().map(|r| external_product(bs, w, r)).collect::<Result<Vec<_>>>()?;
    let id = PresheafMap::identity(w);
    let along = (0..d.num_morphisms() as u32)
        .map(|g| {
            box_map(
                bs,
                &sources[d.source(g) as usize],
                &sources[d.target(g) as usize],
                &id,
                &y.map(d, g),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    MappingPresheaf::build(d, sources, &along, z)
}

/// `Z/T`, with `(Z/T)(a) = maps(hom(-, a) □ T, Z)`.
fn right_hom(bs: &Bisite, y: &Yoneda, z: &Arc<Presheaf>, t: &Arc<Presheaf>) -> Result<MappingPresheaf> {
    let th = &bs.theta;
    let sources = y.reps.iter().map(|r| external_product(bs, r, t)).collect::<Result<Vec<_>>>()?;
    let id = PresheafMap::identity(t);
    let along = (0..th.num_morphisms() as u32)
        .map(|g| {
            box_map(
                bs,
                &sources[th.source(g) as usize],
                &sources[th.target(g) as usize],
                &y.map(th, g),
                &id,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    MappingPresheaf::build(th, sources, &along, z)
}

/// A comparison map into a fiber product of divisions.
#[derive(Clone, Debug)]
pub struct Division {
    pub map: PresheafMap,
    pub source: MappingPresheaf,
}

fn into_fiber(
    source: &MappingPresheaf,
    first: &PresheafMap,
    second: &PresheafMap,
    p1: &PresheafMap,
    p2: &PresheafMap,
) -> Result<PresheafMap> {
    let fiber = &p1.source;
    let comp = (0..fiber.sizes().len() as u32)
        .map(|o| {
            let at: FxHashMap<(u32, u32), u32> = (0..fiber.size(o) as u32).map(|e| ((p1.apply(o, e), p2.apply(o, e)), e)).collect();
            (0..source.presheaf.size(o) as u32)
                .map(|x| {
                    at.get(&(first.apply(o, x), second.apply(o, x)))
                        .copied()
                        .ok_or_else(|| Error::Invariant("square into the fiber product does not commute".into()))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PresheafMap::new(source.presheaf.clone(), fiber.clone(), comp)
}

/// `⟨u\f⟩ : V\X → V\Y ×_{U\Y} U\X` for `u: U → V` on Θ_n and `f: X → Y` on
/// the bisite.
pub fn left_division(bs: &Bisite, u: &PresheafMap, f: &PresheafMap) -> Result<Division> {
    let y = Yoneda::new(&bs.delta);
    let vx = left_hom(bs, &y, &u.target, &f.source)?;
    let vy = left_hom(bs, &y, &u.target, &f.target)?;
    let ux = left_hom(bs, &y, &u.source, &f.source)?;
    let uy = left_hom(bs, &y, &u.source, &f.target)?;
    let restrict = |from: &MappingPresheaf, to: &MappingPresheaf| {
        from.induced(to, |m, phi| {
            let id = PresheafMap::identity(&y.reps[m as usize]);
            phi.after(&box_map(bs, &to.sources[m as usize], &from.sources[m as usize], u, &id)?)
        })
    };
    let u_x = restrict(&vx, &ux)?;
    let u_y = restrict(&vy, &uy)?;
    let v_f = vx.induced(&vy, |_, phi| f.after(phi))?;
    let u_f = ux.induced(&uy, |_, phi| f.after(phi))?;
    let (_, p1, p2) = presheaf::pullback(&u_y, &u_f)?;
    let map = into_fiber(&vx, &v_f, &u_x, &p1, &p2)?;
    Ok(Division { map, source: vx })
}

/// `⟨f/v⟩ : X/T → Y/T ×_{Y/S} X/S` for `f: X → Y` on the bisite and
/// `v: S → T` on Δ.
pub fn right_division(bs: &Bisite, f: &PresheafMap, v: &PresheafMap) -> Result<Division> {
    let y = Yoneda::new(&bs.theta);
    let xt = right_hom(bs, &y, &f.source, &v.target)?;
    let yt = right_hom(bs, &y, &f.target, &v.target)?;
    let xs = right_hom(bs, &y, &f.source, &v.source)?;
    let ys = right_hom(bs, &y, &f.target, &v.source)?;
    let restrict = |from: &MappingPresheaf, to: &MappingPresheaf| {
        from.induced(to, |a, phi| {
            let id = PresheafMap::identity(&y.reps[a as usize]);
            phi.after(&box_map(bs, &to.sources[a as usize], &from.sources[a as usize], &id, v)?)
        })
    };
    let x_v = restrict(&xt, &xs)?;
    let y_v = restrict(&yt, &ys)?;
    let f_t = xt.induced(&yt, |_, phi| f.after(phi))?;
    let f_s = xs.induced(&ys, |_, phi| f.after(phi))?;
    let (_, p1, p2) = presheaf::pullback(&y_v, &f_s)?;
    let map = into_fiber(&xt, &f_t, &x_v, &p1, &p2)?;
    Ok(Division { map, source: xt })
}

/// `W\Z` on its own.
pub fn left_hom_object(bs: &Bisite, w: &Arc<Presheaf>, z: &Arc<Presheaf>) -> Result<MappingPresheaf> {
    left_hom(bs, &Yoneda::new(&bs.delta), w, z)
}

/// `Z/T` on its own.
pub fn right_hom_object(bs: &Bisite, z: &Arc<Presheaf>, t: &Arc<Presheaf>) -> Result<MappingPresheaf> {
    right_hom(bs, &Yoneda::new(&bs.theta), z, t)
}
