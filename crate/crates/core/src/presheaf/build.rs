//! Constructions of presheaves and maps between them.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::ncat::{compose_maps, CellMap, FiniteNCat, FunctorSearch, NFunctor};
use crate::site::Site;
use crate::theta::{encode_cell_map, Table};

use super::{enumerate_maps, Presheaf, PresheafMap};

/// A subpresheaf with explicit generating elements.
#[derive(Clone, Debug)]
pub struct Generated {
    pub presheaf: Arc<Presheaf>,
    /// Inclusion into the ambient presheaf.
    pub inclusion: PresheafMap,
    /// `(object, element)` pairs, in the subpresheaf's own numbering.
    pub generators: Vec<(u32, u32)>,
}

fn same_site(a: &Presheaf, b: &Presheaf) -> Result<()> {
    if Arc::ptr_eq(a.site(), b.site()) {
        Ok(())
    } else {
        Err(Error::Invalid("presheaves live on different sites".into()))
    }
}

fn hom_positions(site: &Site) -> Vec<u32> {
    let mut pos = vec![0; site.num_morphisms()];
    for s in 0..site.num_objects() as u32 {
        for t in 0..site.num_objects() as u32 {
            for (i, &f) in site.hom(s, t).iter().enumerate() {
                pos[f as usize] = i as u32;
            }
        }
    }
    pos
}

/// `hom(-, o)`, generated by the identity.
pub fn representable(site: &Arc<Site>, o: u32) -> Generated {
    let pos = hom_positions(site);
    let sizes: Vec<usize> = (0..site.num_objects() as u32).map(|s| site.hom(s, o).len()).collect();
    let act = (0..site.num_morphisms() as u32)
        .map(|g| {
            site.hom(site.target(g), o)
                .iter()
                .map(|&f| pos[site.compose(f, g) as usize])
                .collect()
        })
        .collect();
    let labels = (0..site.num_objects() as u32)
        .map(|s| site.hom(s, o).iter().map(|&f| site.morphism_label(f)).collect())
        .collect();
    let x = Presheaf::from_parts(site.clone(), sizes, act, labels).expect("well shaped");
    let id = pos[site.identity(o) as usize];
    Generated {
        inclusion: PresheafMap::identity(&x),
        presheaf: x,
        generators: vec![(o, id)],
    }
}

/// The subpresheaf of `x` generated by `gens`.
pub fn subpresheaf(x: &Arc<Presheaf>, gens: &[(u32, u32)]) -> Generated {
    let site = x.site();
    let mut marks: Vec<Vec<bool>> = x.sizes().iter().map(|&n| vec![false; n]).collect();
    for &(o, el) in gens {
        for &h in site.incoming(o) {
            marks[site.source(h) as usize][x.act(h, el) as usize] = true;
        }
    }
    let (sub, inclusion) = from_marks(x, &marks);
    let generators = gens.iter().map(|&(o, el)| (o, new_id(&inclusion, o, el))).collect();
    Generated {
        presheaf: sub,
        inclusion,
        generators,
    }
}

fn new_id(inclusion: &PresheafMap, o: u32, el: u32) -> u32 {
    inclusion.component(o).binary_search(&el).expect("element of the subpresheaf") as u32
}

/// The subpresheaf on the marked elements, which must be closed under the
/// action.
pub(crate) fn from_marks(x: &Arc<Presheaf>, marks: &[Vec<bool>]) -> (Arc<Presheaf>, PresheafMap) {
    let site = x.site();
    let members: Vec<Vec<u32>> = marks
        .iter()
        .map(|m| m.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect())
        .collect();
    let mut renumber: Vec<Vec<u32>> = x.sizes().iter().map(|&n| vec![u32::MAX; n]).collect();
    for (o, ms) in members.iter().enumerate() {
        for (i, &el) in ms.iter().enumerate() {
            renumber[o][el as usize] = i as u32;
        }
    }
    let act = (0..site.num_morphisms() as u32)
        .map(|g| {
            let (s, t) = (site.source(g) as usize, site.target(g) as usize);
            members[t]
                .iter()
                .map(|&el| {
                    let r = renumber[s][x.act(g, el) as usize];
                    assert_ne!(r, u32::MAX, "marked elements are not closed under the action");
                    r
                })
                .collect()
        })
        .collect();
    let labels = members
        .iter()
        .enumerate()
        .map(|(o, ms)| ms.iter().map(|&el| x.label(o as u32, el).to_string()).collect())
        .collect();
    let sizes = members.iter().map(Vec::len).collect();
    let sub = Presheaf::from_parts(site.clone(), sizes, act, labels).expect("well shaped");
    let inclusion = PresheafMap::new_unchecked(sub.clone(), x.clone(), members);
    (sub, inclusion)
}

/// `∂T`: the elements of `hom(-, T)` factoring through a proper
/// monomorphism, generated by the maximal proper monomorphisms.
pub fn boundary(site: &Arc<Site>, o: u32) -> Generated {
    let rep = representable(site, o).presheaf;
    let pos = hom_positions(site);
    let proper: Vec<u32> = (0..site.num_objects() as u32)
        .filter(|&s| s != o)
        .flat_map(|s| site.hom(s, o).iter().copied())
        .filter(|&m| site.is_mono(m))
        .collect();
    let mut maximal = vec![true; site.num_morphisms()];
    for &m in &proper {
        for &g in site.incoming(site.source(m)) {
            if !site.is_identity(g) {
                let c = site.compose(m, g);
                if site.source(c) != o {
                    maximal[c as usize] = false;
                }
            }
        }
    }
    let all: Vec<(u32, u32)> = proper.iter().map(|&m| (site.source(m), pos[m as usize])).collect();
    let mut g = subpresheaf(&rep, &all);
    g.generators = proper
        .iter()
        .zip(g.generators.iter())
        .filter(|(&m, _)| maximal[m as usize])
        .map(|(_, &gen)| gen)
        .collect();
    g
}

/// `I_T`: the subpresheaf of `hom(-, T)` generated by the globe legs.
pub fn spine(site: &Arc<Site>, o: u32) -> Result<Generated> {
    let theta = site
        .theta_context()
        .ok_or_else(|| Error::Invalid("spines need a site of tables".into()))?;
    let t = table_of(site, o)?;
    let rep = representable(site, o).presheaf;
    let pos = hom_positions(site);
    let legs = theta.spine_inclusions(&t)?;
    let gens = legs
        .globes
        .iter()
        .map(|leg| {
            let d = site.table(&leg.source)?;
            let f = site
                .morphism_of(d, o, &leg.map)
                .ok_or_else(|| Error::Invariant(format!("globe leg of {t} is not a morphism of the site")))?;
            Ok((d, pos[f as usize]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(subpresheaf(&rep, &gens))
}

fn table_of(site: &Site, o: u32) -> Result<Table> {
    match site.object(o) {
        crate::site::SiteObject::Table(t) => Ok(t.clone()),
        other => Err(Error::Invalid(format!("{other} is not a table"))),
    }
}

/// Pointwise union of subobjects of a common ambient presheaf.
pub fn union_in(x: &Arc<Presheaf>, subs: &[&Generated]) -> Result<Generated> {
    let mut marks: Vec<Vec<bool>> = x.sizes().iter().map(|&n| vec![false; n]).collect();
    let mut gens = Vec::new();
    for s in subs {
        if !Arc::ptr_eq(&s.inclusion.target, x) {
            return Err(Error::Invalid("subobjects of different ambients".into()));
        }
        for (o, comp) in s.inclusion.components().iter().enumerate() {
            for &el in comp {
                marks[o][el as usize] = true;
            }
        }
        gens.extend(s.generators.iter().map(|&(o, el)| (o, s.inclusion.apply(o, el))));
    }
    let (sub, inclusion) = from_marks(x, &marks);
    let generators = gens.iter().map(|&(o, el)| (o, new_id(&inclusion, o, el))).collect();
    Ok(Generated {
        presheaf: sub,
        inclusion,
        generators,
    })
}

/// The image of a map, generated by the images of the nondegenerate cells.
pub fn image(f: &PresheafMap) -> Result<Generated> {
    let x = &f.target;
    let mut marks: Vec<Vec<bool>> = x.sizes().iter().map(|&n| vec![false; n]).collect();
    for (o, comp) in f.components().iter().enumerate() {
        for &el in comp {
            marks[o][el as usize] = true;
        }
    }
    let (sub, inclusion) = from_marks(x, &marks);
    let generators = f
        .source
        .nondegenerate_cells()?
        .into_iter()
        .map(|(o, el)| (o, new_id(&inclusion, o, f.apply(o, el))))
        .collect();
    Ok(Generated {
        presheaf: sub,
        inclusion,
        generators,
    })
}

/// `X × Y` with its projections; `(a, b)` has id `a·|Y(o)| + b`.
pub fn product(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<(Arc<Presheaf>, PresheafMap, PresheafMap)> {
    same_site(x, y)?;
    let site = x.site();
    let sizes: Vec<usize> = (0..site.num_objects() as u32).map(|o| x.size(o) * y.size(o)).collect();
    let act = (0..site.num_morphisms() as u32)
        .map(|g| {
            let (s, t) = (site.source(g), site.target(g));
            let ny = y.size(s) as u32;
            (0..x.size(t) as u32)
                .flat_map(|a| (0..y.size(t) as u32).map(move |b| (a, b)))
                .map(|(a, b)| x.act(g, a) * ny + y.act(g, b))
                .collect()
        })
        .collect();
    let labels = (0..site.num_objects() as u32)
        .map(|o| {
            (0..x.size(o) as u32)
                .flat_map(|a| (0..y.size(o) as u32).map(move |b| (a, b)))
                .map(|(a, b)| format!("({},{})", x.label(o, a), y.label(o, b)))
                .collect()
        })
        .collect();
    let p = Presheaf::from_parts(site.clone(), sizes, act, labels)?;
    let proj = |first: bool| -> Vec<Vec<u32>> {
        (0..site.num_objects() as u32)
            .map(|o| {
                let ny = y.size(o) as u32;
                (0..p.size(o) as u32).map(|e| if first { e / ny } else { e % ny }).collect()
            })
            .collect()
    };
    let p1 = PresheafMap::new_unchecked(p.clone(), x.clone(), proj(true));
    let p2 = PresheafMap::new_unchecked(p.clone(), y.clone(), proj(false));
    Ok((p, p1, p2))
}

/// `X ⊔ Y` with its injections; `X` comes first.
pub fn coproduct(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<(Arc<Presheaf>, PresheafMap, PresheafMap)> {
    same_site(x, y)?;
    let site = x.site();
    let sizes: Vec<usize> = (0..site.num_objects() as u32).map(|o| x.size(o) + y.size(o)).collect();
    let act = (0..site.num_morphisms() as u32)
        .map(|g| {
            let s = site.source(g);
            let nx = x.size(s) as u32;
            x.action(g).iter().copied().chain(y.action(g).iter().map(|&b| b + nx)).collect()
        })
        .collect();
    let labels = (0..site.num_objects() as u32)
        .map(|o| {
            x.labels(o)
                .iter()
                .map(|l| format!("0:{l}"))
                .chain(y.labels(o).iter().map(|l| format!("1:{l}")))
                .collect()
        })
        .collect();
    let c = Presheaf::from_parts(site.clone(), sizes, act, labels)?;
    let i1 = (0..site.num_objects() as u32).map(|o| (0..x.size(o) as u32).collect()).collect();
    let i2 = (0..site.num_objects() as u32)
        .map(|o| {
            let nx = x.size(o) as u32;
            (0..y.size(o) as u32).map(|b| b + nx).collect()
        })
        .collect();
    Ok((
        c.clone(),
        PresheafMap::new_unchecked(x.clone(), c.clone(), i1),
        PresheafMap::new_unchecked(y.clone(), c, i2),
    ))
}

fn find(p: &mut [u32], mut x: u32) -> u32 {
    while p[x as usize] != x {
        p[x as usize] = p[p[x as usize] as usize];
        x = p[x as usize];
    }
    x
}

/// The pushout of `B ← A → C` with its two legs into it.
pub fn pushout(u: &PresheafMap, v: &PresheafMap) -> Result<(Arc<Presheaf>, PresheafMap, PresheafMap)> {
    if !Arc::ptr_eq(&u.source, &v.source) {
        return Err(Error::Invalid("pushout legs must share their source".into()));
    }
    let (a, b, c) = (&u.source, &u.target, &v.target);
    same_site(b, c)?;
    let site = a.site();
    let n = site.num_objects();
    // class[o][i] for i in B(o) ⊔ C(o), classes numbered by least member
    let mut class: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut reps: Vec<Vec<u32>> = Vec::with_capacity(n);
    for o in 0..n as u32 {
        let nb = b.size(o) as u32;
        let total = nb + c.size(o) as u32;
        let mut p: Vec<u32> = (0..total).collect();
        for el in 0..a.size(o) as u32 {
            let (x, y) = (find(&mut p, u.apply(o, el)), find(&mut p, nb + v.apply(o, el)));
            p[x.max(y) as usize] = x.min(y);
        }
        let mut ids = vec![u32::MAX; total as usize];
        let mut cls = Vec::with_capacity(total as usize);
        let mut rs = Vec::new();
        for i in 0..total {
            let r = find(&mut p, i);
            if ids[r as usize] == u32::MAX {
                ids[r as usize] = rs.len() as u32;
                rs.push(i);
            }
            cls.push(ids[r as usize]);
        }
        class.push(cls);
        reps.push(rs);
    }
    let act = (0..site.num_morphisms() as u32)
        .map(|g| {
            let (s, t) = (site.source(g) as usize, site.target(g) as usize);
            let (nbt, nbs) = (b.size(t as u32) as u32, b.size(s as u32) as u32);
            reps[t]
                .iter()
                .map(|&r| {
                    let img = if r < nbt { b.act(g, r) } else { nbs + c.act(g, r - nbt) };
                    class[s][img as usize]
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|o| {
            let nb = b.size(o as u32) as u32;
            reps[o]
                .iter()
                .map(|&r| {
                    if r < nb {
                        format!("0:{}", b.label(o as u32, r))
                    } else {
                        format!("1:{}", c.label(o as u32, r - nb))
                    }
                })
                .collect()
        })
        .collect();
    let sizes = reps.iter().map(Vec::len).collect();
    let p = Presheaf::from_parts(site.clone(), sizes, act, labels)?;
    let jb = (0..n).map(|o| (0..b.size(o as u32)).map(|i| class[o][i]).collect()).collect();
    let jc = (0..n)
        .map(|o| {
            let nb = b.size(o as u32);
            (0..c.size(o as u32)).map(|i| class[o][nb + i]).collect()
        })
        .collect();
    Ok((
        p.clone(),
        PresheafMap::new_unchecked(b.clone(), p.clone(), jb),
        PresheafMap::new_unchecked(c.clone(), p, jc),
    ))
}

/// The pullback of `X → Z ← Y`: pairs `(x, y)` with `f x = g y`, ordered
/// lexicographically, with its two projections.
pub fn pullback(f: &PresheafMap, g: &PresheafMap) -> Result<(Arc<Presheaf>, PresheafMap, PresheafMap)> {
    if !Arc::ptr_eq(&f.target, &g.target) {
        return Err(Error::Invalid("pullback legs must share their target".into()));
    }
    let (x, y) = (&f.source, &g.source);
    let site = x.site();
    let n = site.num_objects();
    let mut pairs: Vec<Vec<(u32, u32)>> = Vec::with_capacity(n);
    let mut index: Vec<FxHashMap<(u32, u32), u32>> = Vec::with_capacity(n);
    for o in 0..n as u32 {
        let mut by_value: FxHashMap<u32, Vec<u32>> = FxHashMap::default();
        for b in 0..y.size(o) as u32 {
            by_value.entry(g.apply(o, b)).or_default().push(b);
        }
        let ps: Vec<(u32, u32)> = (0..x.size(o) as u32)
            .flat_map(|a| by_value.get(&f.apply(o, a)).into_iter().flatten().map(move |&b| (a, b)))
            .collect();
        index.push(ps.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect());
        pairs.push(ps);
    }
    let act = (0..site.num_morphisms() as u32)
        .map(|h| {
            let (s, t) = (site.source(h) as usize, site.target(h) as usize);
            pairs[t].iter().map(|&(a, b)| index[s][&(x.act(h, a), y.act(h, b))]).collect()
        })
        .collect();
    let labels = (0..n)
        .map(|o| {
            pairs[o]
                .iter()
                .map(|&(a, b)| format!("({},{})", x.label(o as u32, a), y.label(o as u32, b)))
                .collect()
        })
        .collect();
    let sizes = pairs.iter().map(Vec::len).collect();
    let p = Presheaf::from_parts(site.clone(), sizes, act, labels)?;
    let p1 = pairs.iter().map(|ps| ps.iter().map(|&(a, _)| a).collect()).collect();
    let p2 = pairs.iter().map(|ps| ps.iter().map(|&(_, b)| b).collect()).collect();
    Ok((
        p.clone(),
        PresheafMap::new_unchecked(p.clone(), x.clone(), p1),
        PresheafMap::new_unchecked(p, y.clone(), p2),
    ))
}

/// The unique map to a fresh terminal presheaf.
pub fn to_terminal(x: &Arc<Presheaf>) -> PresheafMap {
    let t = Presheaf::terminal(x.site());
    let comp = x.sizes().iter().map(|&n| vec![0; n]).collect();
    PresheafMap::new_unchecked(x.clone(), t, comp)
}

/// `N_n(C)`: the functors `L(T) → C`, acting by precomposition.
pub fn nerve(site: &Arc<Site>, c: &Arc<FiniteNCat>) -> Result<Arc<Presheaf>> {
    let theta = site
        .theta_context()
        .ok_or_else(|| Error::Invalid("nerves need a site of tables".into()))?;
    if c.level() != theta.n() {
        return Err(Error::LevelMismatch(theta.n(), c.level()));
    }
    let n = site.num_objects();
    let mut elements: Vec<Vec<CellMap>> = Vec::with_capacity(n);
    for o in 0..n as u32 {
        let t = table_of(site, o)?;
        let free = theta.free_ncat(&t)?;
        elements.push(FunctorSearch::new(&free, c)?.collect(None));
    }
    let index: Vec<FxHashMap<&CellMap, u32>> = elements
        .iter()
        .map(|es| es.iter().enumerate().map(|(i, m)| (m, i as u32)).collect())
        .collect();
    let act = (0..site.num_morphisms() as u32)
        .map(|g| {
            let (s, t) = (site.source(g) as usize, site.target(g) as usize);
            elements[t].iter().map(|m| index[s][&compose_maps(m, site.cell_map(g))]).collect()
        })
        .collect();
    let labels = elements.iter().map(|es| es.iter().map(encode_cell_map).collect()).collect();
    let sizes = elements.iter().map(Vec::len).collect();
    Presheaf::from_parts(site.clone(), sizes, act, labels)
}

/// `N_n(F)` between nerves built by [`nerve`] for the source and target of `F`.
pub fn nerve_map(source: &Arc<Presheaf>, target: &Arc<Presheaf>, f: &NFunctor) -> Result<PresheafMap> {
    same_site(source, target)?;
    let site = source.site();
    let comp = (0..site.num_objects() as u32)
        .map(|o| {
            source
                .labels(o)
                .iter()
                .map(|l| {
                    let m = decode_cell_map(l);
                    target
                        .find(o, &encode_cell_map(&compose_maps(&f.map, &m)))
                        .ok_or_else(|| Error::Invalid("target presheaf is not the nerve of the functor's target".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PresheafMap::new(source.clone(), target.clone(), comp)
}

fn decode_cell_map(s: &str) -> CellMap {
    s.split('|')
        .map(|row| {
            if row.is_empty() {
                vec![]
            } else {
                row.split(',').map(|x| x.parse().expect("encoded id")).collect()
            }
        })
        .collect()
}

/// `t*X` for a presheaf `X` on Δ: `(t*X)(T) = X(Δ_p)` with `p` the number of
/// segments of `T`, acting through the map of objects.
pub fn pullback_t(theta_site: &Arc<Site>, x: &Arc<Presheaf>) -> Result<Arc<Presheaf>> {
    let delta = x.site();
    if delta.theta_context().map(|t| t.n()) != Some(1) || theta_site.theta_context().is_none() {
        return Err(Error::Invalid("t* takes a presheaf on Δ to one on Θ_n".into()));
    }
    let n = theta_site.num_objects();
    let level: Vec<u32> = (0..n as u32)
        .map(|o| {
            let t = table_of(theta_site, o)?;
            delta.table(&Table::simplex(t.segments().len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let act = (0..theta_site.num_morphisms() as u32)
        .map(|g| {
            let (s, t) = (theta_site.source(g), theta_site.target(g));
            let objects = &theta_site.cell_map(g)[0];
            let d = delta
                .by_object_map(level[s as usize], level[t as usize], objects)
                .ok_or_else(|| Error::Invariant("map of objects is not monotone".into()))?;
            Ok(x.action(d).to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    let sizes = level.iter().map(|&l| x.size(l)).collect();
    let labels = level.iter().map(|&l| x.labels(l).to_vec()).collect();
    Presheaf::from_parts(theta_site.clone(), sizes, act, labels)
}

/// Whether restriction along `i_T` is a bijection from maps
/// `hom(-, T) → N(C)` to maps `I_T → N(C)`.
pub fn segal_check(site: &Arc<Site>, c: &Arc<FiniteNCat>, o: u32) -> Result<bool> {
    let nc = nerve(site, c)?;
    segal_check_nerve(site, &nc, o)
}

fn segal_check_nerve(site: &Arc<Site>, nc: &Arc<Presheaf>, o: u32) -> Result<bool> {
    let sp = spine(site, o)?;
    let rep = sp.inclusion.target.clone();
    let i_t = &sp.inclusion;
    let mut restricted: Vec<Vec<Vec<u32>>> = enumerate_maps(&rep, nc)?
        .iter()
        .map(|m| m.after(i_t).map(|r| r.components().to_vec()))
        .collect::<Result<_>>()?;
    let before = restricted.len();
    restricted.sort();
    restricted.dedup();
    if restricted.len() != before {
        return Ok(false);
    }
    let mut on_spine: Vec<Vec<Vec<u32>>> = enumerate_maps(&sp.presheaf, nc)?.iter().map(|m| m.components().to_vec()).collect();
    on_spine.sort();
    Ok(on_spine == restricted)
}
