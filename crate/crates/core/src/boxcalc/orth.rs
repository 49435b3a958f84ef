//! The three-way orthogonality check, Rezk generator data and the checks on
//! the resolution `N_n Δ̃_•`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lifting::{check_trivial_fibration, has_rlp, nerve_of_functor, nerve_to_point, BoundedVerdict, GeneratorSet};
use crate::ncat::{build_interval, simply_connected_groupoid, FiniteNCat, NFunctor};
use crate::presheaf::{self, nerve, nerve_map, Presheaf, PresheafMap};
use crate::site::{Bounds, Site};
use crate::theta::Theta;

use super::{
    boundary_inclusion, box_map, external_product, horn_inclusion, left_division, max_level, p_star_map, pushout_product, right_division,
    simplex, Bisite,
};

/// The three lifting verdicts of `u`, `v` against `f`.
#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    /// `(u □′ v) ⋔ f`.
    pub pushout_product: bool,
    /// `u ⋔ ⟨f/v⟩`.
    pub right_division: bool,
    /// `v ⋔ ⟨u\f⟩`.
    pub left_division: bool,
    pub agree: bool,
}

fn lifts(u: &PresheafMap, f: &PresheafMap) -> Result<bool> {
    let mut g = GeneratorSet::new();
    g.push("u", u.clone());
    Ok(has_rlp(f, &g)?.holds)
}

/// Decides `(u □′ v) ⋔ f`, `u ⋔ ⟨f/v⟩` and `v ⋔ ⟨u\f⟩` by exhaustive search.
pub fn orthogonality_equivalence_test(bs: &Bisite, u: &PresheafMap, v: &PresheafMap, f: &PresheafMap) -> Result<OrthogonalityReport> {
    let a = lifts(&pushout_product(bs, u, v)?, f)?;
    let b = lifts(u, &right_division(bs, f, v)?.map)?;
    let c = lifts(v, &left_division(bs, u, f)?.map)?;
    Ok(OrthogonalityReport {
        pushout_product: a,
        right_division: b,
        left_division: c,
        agree: a == b && b == c,
    })
}

/// A labelled triple `(u, v, f)`.
#[derive(Clone, Debug)]
pub struct Triple {
    pub label: String,
    pub u: PresheafMap,
    pub v: PresheafMap,
    pub f: PresheafMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub seed: u64,
    pub samples: Vec<(String, OrthogonalityReport)>,
    pub agree: bool,
    /// Samples on which the common verdict was a lift.
    pub positive: usize,
}

type Pool = Vec<(String, PresheafMap)>;

/// Candidate maps for the three slots of an orthogonality triple.
#[derive(Clone, Debug)]
pub struct OrthogonalityPools {
    /// Monomorphisms on Θ_n.
    pub theta: Pool,
    /// Monomorphisms on Δ.
    pub delta: Pool,
    /// Maps on Θ_n×Δ.
    pub bisite: Pool,
}

/// Boundary and non-invertible spine inclusions on Θ_n; boundaries, horns on
/// Δ; box products of nerve maps with simplicial maps on the bisite. Each
/// pool also holds an identity.
pub fn orthogonality_pools(bs: &Bisite) -> Result<OrthogonalityPools> {
    Ok(OrthogonalityPools {
        theta: theta_pool(bs)?,
        delta: delta_pool(bs)?,
        bisite: bisite_pool(bs)?,
    })
}

fn theta_pool(bs: &Bisite) -> Result<Pool> {
    let s = &bs.theta;
    let mut out = Pool::new();
    for o in 0..s.num_objects() as u32 {
        let t = s.object(o);
        out.push((format!("boundary {t}"), presheaf::boundary(s, o).inclusion));
        let sp = presheaf::spine(s, o)?.inclusion;
        if !sp.is_iso() {
            out.push((format!("spine {t}"), sp));
        }
    }
    let rep = presheaf::representable(s, s.point()).presheaf;
    out.push(("id (0)".into(), PresheafMap::identity(&rep)));
    Ok(out)
}

fn delta_pool(bs: &Bisite) -> Result<Pool> {
    let d = &bs.delta;
    let mut out = Pool::new();
    for m in 0..=max_level(d)? {
        out.push((format!("boundary D{m}"), boundary_inclusion(d, m)?));
        for k in (0..=m).filter(|_| m > 0) {
            out.push((format!("horn {m},{k}"), horn_inclusion(d, m, k)?));
        }
    }
    out.push(("id D0".into(), PresheafMap::identity(&simplex(d, 0)?)));
    Ok(out)
}

fn bisite_pool(bs: &Bisite) -> Result<Pool> {
    let n = bs.n();
    let th = &bs.theta;
    let d = &bs.delta;
    let j = Arc::new(build_interval(1)?.cat.promote(n));
    let d1 = Arc::new(crate::ncat::disk(1, n).0);
    let mut cats: Vec<(String, Arc<FiniteNCat>)> = vec![("J".into(), j), ("D1".into(), d1)];
    if n >= 2 {
        cats.push(("J2".into(), Arc::new(build_interval(2)?.cat.promote(n))));
    }
    let mut left: Pool = Vec::new();
    for (name, c) in &cats {
        left.push((format!("nerve {name} -> pt"), nerve_to_point(th, c)?));
    }
    for k in 2..=n {
        left.push((format!("nerve j{k}"), nerve_of_functor(th, &build_interval(k)?.j.promote(n))?));
    }
    let nd1 = nerve(th, &cats[1].1)?;
    left.push(("id nerve D1".into(), PresheafMap::identity(&nd1)));
    // Y → Δ_0 for simplicial sets Y, connected or not, and two inclusions
    let pt = simplex(d, 0)?;
    let to_pt = |y: &Arc<Presheaf>| PresheafMap::new(y.clone(), pt.clone(), y.sizes().iter().map(|&k| vec![0; k]).collect());
    let mut right: Pool = vec![("D0 -> D0".into(), PresheafMap::identity(&pt))];
    if max_level(d)? >= 1 {
        let b = boundary_inclusion(d, 1)?;
        right.push(("D1 -> D0".into(), to_pt(&b.target)?));
        right.push(("boundary D1 -> D0".into(), to_pt(&b.source)?));
        right.push(("boundary D1 -> D1".into(), b));
    }
    if max_level(d)? >= 2 {
        let h = horn_inclusion(d, 2, 1)?;
        right.push(("horn 2,1 -> D0".into(), to_pt(&h.source)?));
        right.push(("horn 2,1 -> D2".into(), h));
    }
    let mut out = Pool::new();
    for (lu, u) in &left {
        for (lv, v) in &right {
            let a = external_product(bs, &u.source, &v.source)?;
            let b = external_product(bs, &u.target, &v.target)?;
            out.push((format!("({lu}) [] ({lv})"), box_map(bs, &a, &b, u, v)?));
        }
    }
    Ok(out)
}

/// Orthogonality agreement on `count` triples drawn with a seeded generator,
/// followed by the instance `u = δ_(1)`, `v = δ_{Δ_1}`, `f = p*(N(J) → pt)`.
pub fn orthogonality_sample(bs: &Bisite, seed: u64, count: usize) -> Result<SampleReport> {
    let pools = orthogonality_pools(bs)?;
    let (us, vs, fs) = (&pools.theta, &pools.delta, &pools.bisite);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::with_capacity(count + 1);
    for _ in 0..count {
        let (lu, u) = &us[rng.gen_range(0..us.len())];
        let (lv, v) = &vs[rng.gen_range(0..vs.len())];
        let (lf, f) = &fs[rng.gen_range(0..fs.len())];
        triples.push(Triple {
            label: format!("{lu}; {lv}; {lf}"),
            u: u.clone(),
            v: v.clone(),
            f: f.clone(),
        });
    }
    triples.push(named_triple(bs)?);
    let mut samples = Vec::with_capacity(triples.len());
    for t in &triples {
        samples.push((t.label.clone(), orthogonality_equivalence_test(bs, &t.u, &t.v, &t.f)?));
    }
    let agree = samples.iter().all(|(_, r)| r.agree);
    let positive = samples.iter().filter(|(_, r)| r.pushout_product).count();
    Ok(SampleReport {
        seed,
        samples,
        agree,
        positive,
    })
}

/// `u = δ_(1)`, `v = δ_{Δ_1}`, `f = p*(N(J) → pt)`.
pub fn named_triple(bs: &Bisite) -> Result<Triple> {
    let th = &bs.theta;
    let o = th.table(&crate::theta::Table::disk(1))?;
    let u = presheaf::boundary(th, o).inclusion;
    let v = boundary_inclusion(&bs.delta, 1)?;
    let j = Arc::new(build_interval(1)?.cat.promote(bs.n()));
    let f = p_star_map(bs, &nerve_to_point(th, &j)?)?;
    Ok(Triple {
        label: "boundary (1); boundary D1; p*(nerve J -> pt)".into(),
        u,
        v,
        f,
    })
}

/// Which of the two generating sets of the Rezk localizer to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RezkVariant {
    /// `p*(I_n) ∪ {p*(N(J) → N(D_0))} ∪ p*(J_n)`.
    Collapse,
    /// `p*(I_n) ∪ {p*(N(e_ε))} ∪ p*(J'_n)`, all monomorphisms.
    Sections,
}

/// The non-vertical part of a generating set of the Rezk localizer, as maps
/// on the bisite; the vertical equivalences are not represented.
pub fn rezk_generators(bs: &Bisite, variant: RezkVariant) -> Result<GeneratorSet> {
    let n = bs.n();
    let th = &bs.theta;
    let mut g = GeneratorSet::new();
    for o in 0..th.num_objects() as u32 {
        g.push(
            format!("p*(spine {})", th.object(o)),
            p_star_map(bs, &presheaf::spine(th, o)?.inclusion)?,
        );
    }
    let iv = build_interval(1)?;
    match variant {
        RezkVariant::Collapse => {
            g.push("p*(nerve j)", p_star_map(bs, &nerve_of_functor(th, &iv.j.promote(n))?)?);
        }
        RezkVariant::Sections => {
            g.push("p*(nerve e0)", p_star_map(bs, &nerve_of_functor(th, &iv.s0.promote(n))?)?);
            g.push("p*(nerve e1)", p_star_map(bs, &nerve_of_functor(th, &iv.s1.promote(n))?)?);
        }
    }
    for k in 2..=n {
        let iv = build_interval(k)?;
        match variant {
            RezkVariant::Collapse => g.push(format!("p*(nerve j{k})"), p_star_map(bs, &nerve_of_functor(th, &iv.j.promote(n))?)?),
            RezkVariant::Sections => {
                g.push(
                    format!("p*(nerve s0_{k})"),
                    p_star_map(bs, &nerve_of_functor(th, &iv.s0.promote(n))?)?,
                );
                g.push(
                    format!("p*(nerve s1_{k})"),
                    p_star_map(bs, &nerve_of_functor(th, &iv.s1.promote(n))?)?,
                );
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub holds: bool,
    pub verdict: String,
    pub n: usize,
    pub bounds: Bounds,
    /// `N_n Δ̃_0 ⊔ N_n Δ̃_0 → N_n Δ̃_1` is injective at every object.
    pub endpoints_mono: bool,
    /// `N_n Δ̃_k → N_n D_0` for `k = 0..=k_max`.
    pub trivial_fibrations: Vec<(usize, BoundedVerdict)>,
}

/// Checks the two conditions making `N_n Δ̃_•` a resolution, within bounds.
pub fn resolution_check(n: usize, k_max: usize, bounds: Bounds) -> Result<ResolutionReport> {
    if n == 0 {
        return Err(Error::Invalid("need n >= 1".into()));
    }
    let site = Site::theta(Arc::new(Theta::new(n)), bounds)?;
    let endpoints_mono = endpoints_are_mono(&site, n)?;
    let mut trivial_fibrations = Vec::new();
    for k in 0..=k_max {
        let c = Arc::new(simply_connected_groupoid(k).promote(n));
        trivial_fibrations.push((k, check_trivial_fibration(&nerve_to_point(&site, &c)?)?));
    }
    let holds = endpoints_mono && trivial_fibrations.iter().all(|(_, v)| v.holds);
    let verdict = if holds {
        format!("N_{n} of the simply connected groupoids is a resolution up to ({bounds})")
    } else {
        "resolution conditions fail".to_string()
    };
    Ok(ResolutionReport {
        holds,
        verdict,
        n,
        bounds,
        endpoints_mono,
        trivial_fibrations,
    })
}

fn endpoints_are_mono(site: &Arc<Site>, n: usize) -> Result<bool> {
    let one = Arc::new(simply_connected_groupoid(1).promote(n));
    let n1 = nerve(site, &one)?;
    let e0 = NFunctor::point(one.clone(), 0);
    let n0 = nerve(site, &e0.source)?;
    let legs = [e0, NFunctor::point(one, 1)]
        .iter()
        .map(|e| nerve_map(&n0, &n1, e))
        .collect::<Result<Vec<_>>>()?;
    let (c, _, _) = presheaf::coproduct(&n0, &n0)?;
    let comp = (0..site.num_objects() as u32)
        .map(|o| legs.iter().flat_map(|l| l.component(o).iter().copied()).collect())
        .collect();
    Ok(PresheafMap::new(c, n1, comp)?.is_mono())
}
