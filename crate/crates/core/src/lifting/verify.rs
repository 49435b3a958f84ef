//! The counterexample showing `N_n(j_k)` is not a trivial fibration, and the
//! failure of `N_2(J_2)` to be fibrant.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncat::{build_interval, is_iso_fibration, truncate_right_functor};
use crate::presheaf::{self, from_marks, nerve, nerve_map, PresheafMap};
use crate::site::{Bounds, Site};
use crate::theta::{Table, Theta};

use super::{
    anodyne_generators, describe_map, for_each_square, has_rlp, spine_generators, BoundedVerdict, IntervalObject, LiftingProblem, Witness,
};

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub holds: bool,
    pub verdict: String,
    pub n: usize,
    pub k: usize,
    pub table: String,
    /// `NoLift` was found against `δ_T` at each of these bounds.
    pub no_lift_at: Vec<(Bounds, bool)>,
    /// The first square without a lift at the smallest bounds.
    pub witness: Option<Witness>,
    /// The square on the triangle `(id_0, a, b)` with `j_k(a) = j_k(b)` has no lift.
    pub named_square_no_lift: bool,
    pub truncation_is_iso_fibration: bool,
    pub anodyne: BoundedVerdict,
}

/// The table of two composable `(k-1)`-cells glued along a `(k-2)`-cell.
fn witness_table(k: usize) -> Table {
    Table {
        top: vec![k - 1, k - 1],
        bottom: vec![k - 2],
    }
}

/// Checks that `N_n(j_k)` fails the right lifting property against `δ_T`
/// for the table `T` of two composable `(k-1)`-cells, at `bounds` and at one
/// more unit of width; that `t_r(j_k)` is an iso-fibration; and that
/// `N_n(j_k)` lifts against the anodyne generators of the given depth.
pub fn verify_counterexample(n: usize, k: usize, bounds: Bounds, depth: usize) -> Result<CounterexampleReport> {
    if k < 2 || k > n {
        return Err(Error::Invalid(format!("need 2 <= k <= n, got k = {k}, n = {n}")));
    }
    let t = witness_table(k);
    if !bounds.contains(&t) {
        return Err(Error::OutOfBounds(format!("table {t} is outside bounds ({bounds})")));
    }
    let theta = Arc::new(Theta::new(n));
    let mut no_lift_at = Vec::new();
    let mut witness = None;
    let mut named = false;
    for b in [bounds, Bounds::new(bounds.max_dim, bounds.max_width + 1)] {
        let site = Site::theta(theta.clone(), b)?;
        let f = super::nerve_of_interval_map(&site, k)?;
        let o = site.table(&t)?;
        let mut gens = super::GeneratorSet::new();
        gens.push(format!("boundary ({t})"), presheaf::boundary(&site, o).inclusion);
        let out = has_rlp(&f, &gens)?;
        no_lift_at.push((b, !out.holds));
        if witness.is_none() {
            witness = out.witness.map(|w| w.0);
            named = named_square_fails(&f, &gens.members[0].1, k)?;
        }
    }
    let iv = build_interval(k)?;
    let tr = is_iso_fibration(&truncate_right_functor(&iv.j))?;
    let site = Site::theta(theta, bounds)?;
    let interval = IntervalObject::nerve_of_j(&site)?;
    let gens = anodyne_generators(&spine_generators(&site)?, &interval, depth)?;
    let f = super::nerve_of_interval_map(&site, k)?;
    let out = has_rlp(&f, &gens)?;
    let anodyne = BoundedVerdict::from_outcome(&site, out, "lifts against the anodyne generators", "fails an anodyne generator");
    let holds = no_lift_at.iter().all(|&(_, x)| x) && named && tr && anodyne.holds;
    let verdict = if holds {
        format!("N_{n}(j_{k}) is not a trivial fibration")
    } else {
        "counterexample not confirmed".to_string()
    };
    Ok(CounterexampleReport {
        holds,
        verdict,
        n,
        k,
        table: t.to_string(),
        no_lift_at,
        witness,
        named_square_no_lift: named,
        truncation_is_iso_fibration: tr,
        anodyne,
    })
}

fn parse_cell(label: &str, dim: usize) -> Option<Vec<u32>> {
    let row = label.split('|').nth(dim)?;
    row.split(',').map(|x| x.parse().ok()).collect()
}

/// Looks for the square whose top sends one face of `∂T` to an identity and
/// the other two to distinct non-identity cells; it must have no lift.
fn named_square_fails(f: &PresheafMap, delta: &PresheafMap, k: usize) -> Result<bool> {
    let iv = build_interval(k)?;
    let jk = iv.cat;
    // labels list the images of every cell of the disk, identities included
    let disk = &iv.j.target;
    let top_cell = (0..disk.size(k - 1) as u32)
        .position(|x| !disk.is_identity(k - 1, x))
        .ok_or_else(|| Error::Invariant("disk without a top cell".into()))?;
    let site = f.site().clone();
    let d = site.table(&Table::disk(k - 1))?;
    let mut found = None;
    for_each_square(f, delta, |p| {
        let dom = &p.top.source;
        let faces: Vec<u32> = dom.ez()?.nondegenerate(d).to_vec();
        if faces.len() != 3 {
            return Ok(true);
        }
        let value = |x: u32| parse_cell(p.top.target.label(d, p.top.apply(d, x)), k - 1).and_then(|c| c.get(top_cell).copied());
        let vals: Vec<Option<u32>> = faces.iter().map(|&x| value(x)).collect();
        let (Some(a), Some(b), Some(c)) = (vals[0], vals[1], vals[2]) else {
            return Ok(true);
        };
        let ident = |x: u32| jk.is_identity(k - 1, x);
        let cells: Vec<u32> = [a, b, c].to_vec();
        let n_ident = cells.iter().filter(|&&x| ident(x)).count();
        if n_ident == 1 {
            let others: Vec<u32> = cells.iter().copied().filter(|&x| !ident(x)).collect();
            if others.len() == 2 && others[0] != others[1] {
                found = Some(p.find_lift()?.exists());
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    Ok(found == Some(false))
}

#[derive(Clone, Debug, Serialize)]
pub struct Not2QcatReport {
    pub holds: bool,
    pub verdict: String,
    pub bounds: Bounds,
    pub left_is_mono: bool,
    /// `|domain((0))|` and `|codomain((0))|` of the left map.
    pub counts_at_point: (usize, usize),
    pub witness: Option<Witness>,
}

/// Builds `N(D_1)×N(J) ∪ N(J_2)×∂N(J) → N(J_2)×N(J)` from `N(s^0_2)` and the
/// endpoints of `N(J)`, and checks that `N_2(J_2) → pt` has no lift against
/// the square whose top is the identity over `0` and the collapse
/// `s^0_2 ∘ j_2` over `1`.
pub fn check_not_2qcat(bounds: Bounds) -> Result<Not2QcatReport> {
    let n = 2;
    let site = Site::theta(Arc::new(Theta::new(n)), bounds)?;
    let iv = build_interval(2)?;
    let j2 = Arc::new(iv.cat.clone());
    let nj2 = nerve(&site, &j2)?;
    let nd1 = nerve(&site, &iv.s0.source)?;
    let s0 = nerve_map(&nd1, &nj2, &iv.s0)?;
    let collapse = nerve_map(&nj2, &nj2, &iv.s0.compose(&iv.j)?)?;
    let interval = IntervalObject::nerve_of_j(&site)?;
    let nj = &interval.presheaf;
    let (prod, p1, _) = presheaf::product(&nj2, nj)?;
    let in_image: Vec<Vec<bool>> = (0..site.num_objects() as u32)
        .map(|o| {
            let mut m = vec![false; nj2.size(o)];
            s0.component(o).iter().for_each(|&x| m[x as usize] = true);
            m
        })
        .collect();
    let marks: Vec<Vec<bool>> = (0..site.num_objects() as u32)
        .map(|o| {
            let ni = nj.size(o) as u32;
            let ends = [interval.constant(o, 0), interval.constant(o, 1)];
            (0..prod.size(o) as u32)
                .map(|e| in_image[o as usize][(e / ni) as usize] || ends.contains(&(e % ni)))
                .collect()
        })
        .collect();
    let (dom, left) = from_marks(&prod, &marks);
    let top_comp = (0..site.num_objects() as u32)
        .map(|o| {
            let ni = nj.size(o) as u32;
            let one = interval.constant(o, 1);
            left.component(o)
                .iter()
                .map(|&e| {
                    let x = p1.apply(o, e);
                    if e % ni == one {
                        collapse.apply(o, x)
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let top = PresheafMap::new(dom.clone(), nj2.clone(), top_comp)?;
    let right = presheaf::to_terminal(&nj2);
    let pt = right.target.clone();
    let bottom = PresheafMap::new(prod.clone(), pt, prod.sizes().iter().map(|&s| vec![0; s]).collect())?;
    let problem = LiftingProblem::new(left.clone(), right, top, bottom)?;
    let lift = problem.find_lift()?;
    let p = site.point();
    let counts = (dom.size(p), prod.size(p));
    let left_is_mono = left.is_mono();
    let holds = !lift.exists() && left_is_mono;
    let witness = if lift.exists() {
        None
    } else {
        Some(Witness {
            generator: "N(D_1)xN(J) u N(J_2)x boundary N(J) -> N(J_2)xN(J)".into(),
            top: describe_map(&problem.top)?,
            bottom: describe_map(&problem.bottom)?,
        })
    };
    let verdict = if holds {
        "N_2(J_2) is not a 2-quasi-category"
    } else {
        "no obstruction found"
    }
    .to_string();
    Ok(Not2QcatReport {
        holds,
        verdict,
        bounds,
        left_is_mono,
        counts_at_point: counts,
        witness,
    })
}
