//! The two-variable calculus on Θ_n×Δ: the external product `X □ Y`, the
//! pushout-product `u □′ v`, the divisions `V\X` and `X/T`, and the checks
//! built on them.
//!
//! Presheaves on Θ_n×Δ are ordinary presheaves on the product of a bounded
//! site of tables with a truncated Δ, so every construction here is exact
//! for those finite categories.

mod division;
mod orth;
mod simplicial;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presheaf::{self, Presheaf, PresheafMap};
use crate::site::{Bounds, Site};
use crate::theta::Theta;

pub use division::{left_division, left_hom_object, right_division, right_hom_object, Division, MappingPresheaf};
pub use orth::{
    named_triple, orthogonality_equivalence_test, orthogonality_pools, orthogonality_sample, resolution_check, rezk_generators,
    OrthogonalityPools, OrthogonalityReport, ResolutionReport, RezkVariant, SampleReport, Triple,
};
pub use simplicial::{
    boundary_inclusion, codegeneracy, coface, from_json, horn_inclusion, level, max_level, monotone, simplex, to_json, SimplicialSetJson,
};

/// A bounded Θ_n, a truncated Δ and their product.
#[derive(Clone, Debug)]
pub struct Bisite {
    pub theta: Arc<Site>,
    pub delta: Arc<Site>,
    pub site: Arc<Site>,
}

impl Bisite {
    pub fn new(theta: Arc<Site>, max_level: usize) -> Result<Bisite> {
        if theta.theta_context().is_none() {
            return Err(Error::Invalid("the first factor must be a site of tables".into()));
        }
        let delta = Site::delta(max_level)?;
        let site = Site::product(&theta, &delta);
        Ok(Bisite { theta, delta, site })
    }

    /// Θ_n at `bounds` times Δ up to `[max_level]`.
    pub fn bounded(n: usize, bounds: Bounds, max_level: usize) -> Result<Bisite> {
        Bisite::new(Site::theta(Arc::new(Theta::new(n)), bounds)?, max_level)
    }

    pub fn n(&self) -> usize {
        self.theta.theta_context().expect("checked on construction").n()
    }

    /// The object `(a, [m])`.
    pub fn object(&self, a: u32, m: usize) -> Result<u32> {
        Ok(self.site.pair(a, level(&self.delta, m)?))
    }
}

/// `X □ Y` remembering its factors.
#[derive(Clone, Debug)]
pub struct BoxProduct {
    pub presheaf: Arc<Presheaf>,
    pub left: Arc<Presheaf>,
    pub right: Arc<Presheaf>,
}

fn check_factors(bs: &Bisite, x: &Presheaf, y: &Presheaf) -> Result<()> {
    if !Arc::ptr_eq(x.site(), &bs.theta) || !Arc::ptr_eq(y.site(), &bs.delta) {
        return Err(Error::Invalid("factors must live on the two sites of the bisite".into()));
    }
    Ok(())
}

/// `(X □ Y)(a, m) = X(a) × Y(m)` with the componentwise action; `(x, y)` has
/// id `x·|Y(m)| + y`.
pub fn external_product(bs: &Bisite, x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<BoxProduct> {
    check_factors(bs, x, y)?;
    let s = &bs.site;
    let nd = bs.delta.num_objects() as u32;
    let split = |o: u32| (o / nd, o % nd);
    let sizes: Vec<usize> = (0..s.num_objects() as u32)
        .map(|o| {
            let (a, b) = split(o);
            x.size(a) * y.size(b)
        })
        .collect();
    let act = (0..s.num_morphisms() as u32)
        .map(|g| {
            let (f, h) = s.parts(g);
            let (tb, sb) = (split(s.target(g)).1, split(s.source(g)).1);
            let (nt, ns) = (y.size(tb) as u32, y.size(sb) as u32);
            let ta = split(s.target(g)).0;
            (0..x.size(ta) as u32)
                .flat_map(|i| (0..nt).map(move |j| (i, j)))
                .map(|(i, j)| x.act(f, i) * ns + y.act(h, j))
                .collect()
        })
        .collect();
    let labels = (0..s.num_objects() as u32)
        .map(|o| {
            let (a, b) = split(o);
            (0..x.size(a) as u32)
                .flat_map(|i| (0..y.size(b) as u32).map(move |j| (i, j)))
                .map(|(i, j)| format!("({},{})", x.label(a, i), y.label(b, j)))
                .collect()
        })
        .collect();
    let presheaf = Presheaf::from_parts(s.clone(), sizes, act, labels)?;
    Ok(BoxProduct {
        presheaf,
        left: x.clone(),
        right: y.clone(),
    })
}

/// `u □ v` between two external products whose factors match.
pub fn box_map(bs: &Bisite, source: &BoxProduct, target: &BoxProduct, u: &PresheafMap, v: &PresheafMap) -> Result<PresheafMap> {
    let fits = Arc::ptr_eq(&u.source, &source.left)
        && Arc::ptr_eq(&u.target, &target.left)
        && Arc::ptr_eq(&v.source, &source.right)
        && Arc::ptr_eq(&v.target, &target.right);
    if !fits {
        return Err(Error::Invalid("box map factors do not match the products".into()));
    }
    let nd = bs.delta.num_objects() as u32;
    let comp = (0..bs.site.num_objects() as u32)
        .map(|o| {
            let (a, b) = (o / nd, o % nd);
            let (ns, nt) = (source.right.size(b) as u32, target.right.size(b) as u32);
            (0..source.presheaf.size(o) as u32)
                .map(|e| u.apply(a, e / ns) * nt + v.apply(b, e % ns))
                .collect()
        })
        .collect();
    Ok(PresheafMap::new_unchecked(source.presheaf.clone(), target.presheaf.clone(), comp))
}

/// `p*(X) = X □ Δ_0`.
pub fn p_star(bs: &Bisite, x: &Arc<Presheaf>) -> Result<BoxProduct> {
    external_product(bs, x, &Presheaf::terminal(&bs.delta))
}

/// `p*(u)` with fresh products for its source and target.
pub fn p_star_map(bs: &Bisite, u: &PresheafMap) -> Result<PresheafMap> {
    let pt = Presheaf::terminal(&bs.delta);
    let (a, b) = (external_product(bs, &u.source, &pt)?, external_product(bs, &u.target, &pt)?);
    box_map(bs, &a, &b, u, &PresheafMap::identity(&pt))
}

/// `u □′ v : U□T ⊔_{U□S} V□S → V□T`, with the domain computed as a pushout,
/// so that it is the union of the two images when `u` and `v` are monos.
pub fn pushout_product(bs: &Bisite, u: &PresheafMap, v: &PresheafMap) -> Result<PresheafMap> {
    let ut = external_product(bs, &u.source, &v.target)?;
    let vs = external_product(bs, &u.target, &v.source)?;
    let us = external_product(bs, &u.source, &v.source)?;
    let vt = external_product(bs, &u.target, &v.target)?;
    let id_u = PresheafMap::identity(&u.source);
    let id_s = PresheafMap::identity(&v.source);
    let id_v = PresheafMap::identity(&u.target);
    let id_t = PresheafMap::identity(&v.target);
    let a = box_map(bs, &us, &ut, &id_u, v)?;
    let b = box_map(bs, &us, &vs, u, &id_s)?;
    let (p, ja, jb) = presheaf::pushout(&a, &b)?;
    let to_vt_a = box_map(bs, &ut, &vt, u, &id_t)?;
    let to_vt_b = box_map(bs, &vs, &vt, &id_v, v)?;
    let comp = (0..bs.site.num_objects() as u32)
        .map(|o| {
            let mut out = vec![u32::MAX; p.size(o)];
            for (e, &c) in ja.component(o).iter().enumerate() {
                out[c as usize] = to_vt_a.apply(o, e as u32);
            }
            for (e, &c) in jb.component(o).iter().enumerate() {
                out[c as usize] = to_vt_b.apply(o, e as u32);
            }
            out
        })
        .collect();
    PresheafMap::new(p, vt.presheaf, comp)
}

#[cfg(test)]
mod tests;
