//! Lifting problems between presheaves on a bounded site, right lifting
//! properties against generator sets, and the generator sets of the
//! n-quasi-category localizer.
//!
//! Maps out of a presheaf whose nondegenerate cells lie in the site are
//! enumerated completely, so a `NoLift` verdict is final while positive
//! verdicts about a whole class of generators hold up to the site's bounds.

mod verify;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncat::{build_interval, FiniteNCat, NFunctor};
use crate::presheaf::{self, from_marks, nerve, nerve_map, MapSearch, Presheaf, PresheafMap};
use crate::site::{Bounds, Site};

pub use verify::{check_not_2qcat, verify_counterexample, CounterexampleReport, Not2QcatReport};

/// A commutative square `top: U → X`, `bottom: V → Y` over `left: U → V` and
/// `right: X → Y`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub left: PresheafMap,
    pub right: PresheafMap,
    pub top: PresheafMap,
    pub bottom: PresheafMap,
}

#[derive(Clone, Debug)]
pub enum Lift {
    NoLift,
    Lift(PresheafMap),
}

impl Lift {
    pub fn exists(&self) -> bool {
        matches!(self, Lift::Lift(_))
    }
}

impl LiftingProblem {
    /// Checks that the four maps form a commutative square.
    pub fn new(left: PresheafMap, right: PresheafMap, top: PresheafMap, bottom: PresheafMap) -> Result<LiftingProblem> {
        let shaped = Arc::ptr_eq(&top.source, &left.source)
            && Arc::ptr_eq(&top.target, &right.source)
            && Arc::ptr_eq(&bottom.source, &left.target)
            && Arc::ptr_eq(&bottom.target, &right.target);
        if !shaped {
            return Err(Error::Invalid("the four maps do not form a square".into()));
        }
        if right.after(&top)?.components() != bottom.after(&left)?.components() {
            return Err(Error::NotCommutative("right∘top differs from bottom∘left".into()));
        }
        Ok(LiftingProblem { left, right, top, bottom })
    }

    fn search(&self) -> Result<MapSearch<'_>> {
        let (u, v) = (&self.left.source, &self.left.target);
        let mut s = MapSearch::new(v, &self.right.source)?;
        for o in 0..u.site().num_objects() as u32 {
            for a in 0..u.size(o) as u32 {
                s = s.require(o, self.left.apply(o, a), self.top.apply(o, a));
            }
        }
        let (right, bottom) = (&self.right, &self.bottom);
        Ok(s.filter(move |o, y, z| right.apply(o, z) == bottom.apply(o, y)))
    }

    /// The first diagonal `h: V → X` with `h∘left = top` and
    /// `right∘h = bottom`, in enumeration order.
    pub fn find_lift(&self) -> Result<Lift> {
        Ok(match self.search()?.first() {
            Some(h) => Lift::Lift(h),
            None => Lift::NoLift,
        })
    }

    pub fn count_lifts(&self) -> Result<usize> {
        Ok(self.search()?.count())
    }
}

/// A labeled list of maps.
#[derive(Clone, Debug, Default)]
pub struct GeneratorSet {
    pub members: Vec<(String, PresheafMap)>,
}

impl GeneratorSet {
    pub fn new() -> GeneratorSet {
        GeneratorSet::default()
    }

    pub fn push(&mut self, label: impl Into<String>, map: PresheafMap) {
        self.members.push((label.into(), map));
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members.iter().map(|(l, _)| l.as_str()).collect()
    }

    pub fn extend(&mut self, other: GeneratorSet) {
        self.members.extend(other.members);
    }
}

/// Image of one nondegenerate cell under a map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellImage {
    pub object: String,
    pub cell: String,
    pub image: String,
}

/// A commutative square with no lift.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub generator: String,
    /// The top map on the nondegenerate cells of its domain.
    pub top: Vec<CellImage>,
    /// The bottom map on the nondegenerate cells of its domain.
    pub bottom: Vec<CellImage>,
}

/// Describes a map by its values on nondegenerate cells.
pub fn describe_map(f: &PresheafMap) -> Result<Vec<CellImage>> {
    let site = f.site();
    Ok(f.source
        .nondegenerate_cells()?
        .into_iter()
        .map(|(o, x)| CellImage {
            object: site.object(o).to_string(),
            cell: f.source.label(o, x).to_string(),
            image: f.target.label(o, f.apply(o, x)).to_string(),
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct RlpOutcome {
    pub holds: bool,
    /// Commutative squares examined.
    pub squares: usize,
    pub witness: Option<(Witness, LiftingProblem)>,
}

/// Every commutative square from a generator to `f`, generators in order,
/// then bottoms, then tops.
pub fn for_each_square(f: &PresheafMap, u: &PresheafMap, mut visit: impl FnMut(LiftingProblem) -> Result<bool>) -> Result<()> {
    let (x, y) = (&f.source, &f.target);
    let (uu, v) = (&u.source, &u.target);
    let mut err = None;
    let mut go_on = true;
    MapSearch::new(v, y)?.for_each(|bottom| {
        let bu = match bottom.after(u) {
            Ok(m) => m,
            Err(e) => {
                err = Some(e);
                return false;
            }
        };
        let tops = match MapSearch::new(uu, x) {
            Ok(s) => s.filter(|o, a, z| f.apply(o, z) == bu.apply(o, a)),
            Err(e) => {
                err = Some(e);
                return false;
            }
        };
        tops.for_each(|top| {
            let p = LiftingProblem {
                left: u.clone(),
                right: f.clone(),
                top: top.clone(),
                bottom: bottom.clone(),
            };
            match visit(p) {
                Ok(c) => go_on = c,
                Err(e) => {
                    err = Some(e);
                    go_on = false;
                }
            }
            go_on
        });
        go_on
    });
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Whether `f` has the right lifting property against every member of
/// `gens`, reporting the first square without a lift.
pub fn has_rlp(f: &PresheafMap, gens: &GeneratorSet) -> Result<RlpOutcome> {
    let mut squares = 0;
    for (label, u) in &gens.members {
        let mut failure = None;
        for_each_square(f, u, |p| {
            squares += 1;
            if p.find_lift()?.exists() {
                return Ok(true);
            }
            failure = Some(p);
            Ok(false)
        })?;
        if let Some(p) = failure {
            let w = Witness {
                generator: label.clone(),
                top: describe_map(&p.top)?,
                bottom: describe_map(&p.bottom)?,
            };
            return Ok(RlpOutcome {
                holds: false,
                squares,
                witness: Some((w, p)),
            });
        }
    }
    Ok(RlpOutcome {
        holds: true,
        squares,
        witness: None,
    })
}

/// The boundary inclusions `δ_T` for every object of the site.
pub fn boundary_generators(site: &Arc<Site>) -> GeneratorSet {
    let mut g = GeneratorSet::new();
    for o in 0..site.num_objects() as u32 {
        g.push(format!("boundary {}", site.object(o)), presheaf::boundary(site, o).inclusion);
    }
    g
}

/// A verdict that is certain when negative and holds up to the recorded
/// bounds when positive.
#[derive(Clone, Debug, Serialize)]
pub struct BoundedVerdict {
    pub holds: bool,
    pub verdict: String,
    pub bounds: Option<Bounds>,
    pub squares: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl BoundedVerdict {
    fn from_outcome(site: &Site, out: RlpOutcome, positive: &str, negative: &str) -> BoundedVerdict {
        let bounds = site.bounds();
        let verdict = if out.holds {
            match bounds {
                Some(b) => format!("{positive} up to ({b})"),
                None => format!("{positive} up to ({})", site.describe()),
            }
        } else {
            negative.to_string()
        };
        BoundedVerdict {
            holds: out.holds,
            verdict,
            bounds,
            squares: out.squares,
            witness: out.witness.map(|w| w.0),
        }
    }
}

/// Right lifting against every `δ_T` of the site.
pub fn check_trivial_fibration(f: &PresheafMap) -> Result<BoundedVerdict> {
    let site = f.site().clone();
    let out = has_rlp(f, &boundary_generators(&site))?;
    Ok(BoundedVerdict::from_outcome(
        &site,
        out,
        "trivial fibration",
        "not a trivial fibration",
    ))
}

/// A presheaf with two points `e_0, e_1` at the terminal object.
#[derive(Clone, Debug)]
pub struct IntervalObject {
    pub presheaf: Arc<Presheaf>,
    pub endpoints: [u32; 2],
}

impl IntervalObject {
    /// `N_n(J)` with the endpoints given by the objects `0` and `1` of `J`.
    pub fn nerve_of_j(site: &Arc<Site>) -> Result<IntervalObject> {
        let n = site
            .theta_context()
            .ok_or_else(|| Error::Invalid("intervals need a site of tables".into()))?
            .n();
        let j = Arc::new(build_interval(1)?.cat.promote(n));
        let presheaf = nerve(site, &j)?;
        let p = site.point();
        // a point of N(J) is a functor from D_0; its label starts with the object
        let e = |x: &str| {
            (0..presheaf.size(p) as u32)
                .find(|&i| presheaf.label(p, i).split('|').next() == Some(x))
                .ok_or_else(|| Error::Invariant(format!("N(J) has no point {x}")))
        };
        let endpoints = [e("0")?, e("1")?];
        Ok(IntervalObject { presheaf, endpoints })
    }

    /// The constant element at `o` on the endpoint `eps`.
    pub fn constant(&self, o: u32, eps: usize) -> u32 {
        let site = self.presheaf.site();
        self.presheaf.act(site.to_point(o), self.endpoints[eps])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EndpointMode {
    Endpoint0,
    Endpoint1,
    Both,
}

/// `U×I ∪ V×{ε} → V×I` (or `V×∂I` for [`EndpointMode::Both`]) as an
/// inclusion of subpresheaves of `V×I`.
pub fn interval_pushout_product(u: &PresheafMap, interval: &IntervalObject, mode: EndpointMode) -> Result<PresheafMap> {
    if !u.is_mono() {
        return Err(Error::Invalid("interval pushout-product needs a monomorphism".into()));
    }
    let i = &interval.presheaf;
    let (vi, _, _) = presheaf::product(&u.target, i)?;
    let site = u.site();
    let eps: &[usize] = match mode {
        EndpointMode::Endpoint0 => &[0],
        EndpointMode::Endpoint1 => &[1],
        EndpointMode::Both => &[0, 1],
    };
    let marks: Vec<Vec<bool>> = (0..site.num_objects() as u32)
        .map(|o| {
            let ni = i.size(o) as u32;
            let mut m = vec![false; vi.size(o)];
            for a in 0..u.source.size(o) as u32 {
                for k in 0..ni {
                    m[(u.apply(o, a) * ni + k) as usize] = true;
                }
            }
            for &e in eps {
                let c = interval.constant(o, e);
                for v in 0..u.target.size(o) as u32 {
                    m[(v * ni + c) as usize] = true;
                }
            }
            m
        })
        .collect();
    Ok(from_marks(&vi, &marks).1)
}

/// `Λ^0 = S`, `Λ^{j+1}` the interval pushout-products (both endpoints) of
/// `Λ^j`, together with `δ_T □′ e_ε` for every `T` of the site.
pub fn anodyne_generators(s: &GeneratorSet, interval: &IntervalObject, depth: usize) -> Result<GeneratorSet> {
    let mut out = s.clone();
    if depth == 0 {
        return Ok(out);
    }
    let mut layer = s.clone();
    for d in 1..=depth {
        let mut next = GeneratorSet::new();
        for (label, u) in &layer.members {
            next.push(
                format!("lambda{d}({label})"),
                interval_pushout_product(u, interval, EndpointMode::Both)?,
            );
        }
        out.members.extend(next.members.iter().cloned());
        layer = next;
    }
    let site = interval.presheaf.site();
    for o in 0..site.num_objects() as u32 {
        let delta = presheaf::boundary(site, o).inclusion;
        for (e, mode) in [(0, EndpointMode::Endpoint0), (1, EndpointMode::Endpoint1)] {
            out.push(
                format!("endpoint{e}(boundary {})", site.object(o)),
                interval_pushout_product(&delta, interval, mode)?,
            );
        }
    }
    for (label, m) in &out.members {
        if !m.is_mono() {
            return Err(Error::Invariant(format!("anodyne generator {label} is not a monomorphism")));
        }
    }
    Ok(out)
}

/// The spine inclusions `i_T` for every object of the site.
pub fn spine_generators(site: &Arc<Site>) -> Result<GeneratorSet> {
    let mut g = GeneratorSet::new();
    for o in 0..site.num_objects() as u32 {
        g.push(format!("spine {}", site.object(o)), presheaf::spine(site, o)?.inclusion);
    }
    Ok(g)
}

/// `N_n(j_k): N_n(J_k) → N_n(D_{k-1})` on the site.
pub fn nerve_of_interval_map(site: &Arc<Site>, k: usize) -> Result<PresheafMap> {
    let n = site
        .theta_context()
        .ok_or_else(|| Error::Invalid("nerves need a site of tables".into()))?
        .n();
    let f = build_interval(k)?.j.promote(n);
    nerve_of_functor(site, &f)
}

/// `N_n(F)` with freshly built nerves of the source and target.
pub fn nerve_of_functor(site: &Arc<Site>, f: &NFunctor) -> Result<PresheafMap> {
    let (s, t) = (nerve(site, &f.source)?, nerve(site, &f.target)?);
    nerve_map(&s, &t, f)
}

/// `I_n ∪ J_n`: the spines and the maps `N_n(j_k)`, `1 < k ≤ n`; with
/// `sections`, also the maps `N_n(s^ε_k)`.
pub fn qcat_generators(site: &Arc<Site>, sections: bool) -> Result<GeneratorSet> {
    let n = site
        .theta_context()
        .ok_or_else(|| Error::Invalid("generators need a site of tables".into()))?
        .n();
    let mut g = spine_generators(site)?;
    for k in 2..=n {
        let iv = build_interval(k)?;
        g.push(format!("nerve j{k}"), nerve_of_functor(site, &iv.j.promote(n))?);
        if sections {
            g.push(format!("nerve s0_{k}"), nerve_of_functor(site, &iv.s0.promote(n))?);
            g.push(format!("nerve s1_{k}"), nerve_of_functor(site, &iv.s1.promote(n))?);
        }
    }
    Ok(g)
}

/// `N_n(C) → N_n(D_0)`.
pub fn nerve_to_point(site: &Arc<Site>, c: &Arc<FiniteNCat>) -> Result<PresheafMap> {
    let f = NFunctor::to_terminal(c.clone());
    nerve_of_functor(site, &f)
}
