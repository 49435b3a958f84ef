//! Functor-level properties: full faithfulness, iso-fibrations and unique
//! lifting against squares of strict functors.

use rustc_hash::FxHashMap;

use super::{compose_maps, FiniteNCat, FunctorSearch, NFunctor};
use crate::error::{Error, Result};

fn hom_groups(c: &FiniteNCat, k: usize) -> FxHashMap<(u32, u32), Vec<u32>> {
    let mut m: FxHashMap<(u32, u32), Vec<u32>> = FxHashMap::default();
    for x in 0..c.size(k) as u32 {
        m.entry((c.src(k, x), c.tgt(k, x))).or_default().push(x);
    }
    m
}

/// Whether `u` induces a bijection `Hom(f, g) → Hom(u f, u g)` for every
/// parallel pair `f, g` of `(k−1)`-cells, `0 < k ≤ n`.
pub fn is_fully_faithful(u: &NFunctor) -> bool {
    let (s, t) = (&*u.source, &*u.target);
    for k in 1..=s.level() {
        let src_groups = hom_groups(s, k);
        let tgt_groups = hom_groups(t, k);
        let parallel = |a: u32, b: u32| k == 1 || (s.src(k - 1, a) == s.src(k - 1, b) && s.tgt(k - 1, a) == s.tgt(k - 1, b));
        for a in 0..s.size(k - 1) as u32 {
            for b in 0..s.size(k - 1) as u32 {
                if !parallel(a, b) {
                    continue;
                }
                let here = src_groups.get(&(a, b)).map_or(&[][..], Vec::as_slice);
                let there = tgt_groups.get(&(u.apply(k - 1, a), u.apply(k - 1, b))).map_or(0, Vec::len);
                if here.len() != there {
                    return false;
                }
                let mut images: Vec<u32> = here.iter().map(|&x| u.apply(k, x)).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != here.len() {
                    return false;
                }
            }
        }
    }
    true
}

fn is_invertible(c: &FiniteNCat, f: u32) -> bool {
    (0..c.size(1) as u32).any(|g| {
        c.comp(0, 1, g, f).is_some_and(|r| r == c.ident(0, c.src(1, f))) && c.comp(0, 1, f, g).is_some_and(|r| r == c.ident(0, c.tgt(1, f)))
    })
}

/// The two iso-fibration conditions for a functor between categories:
/// lifting invertible arrows with a prescribed source (endpoint 0) and with a
/// prescribed target (endpoint 1).
pub fn iso_fibration_variants(u: &NFunctor) -> Result<(bool, bool)> {
    if u.level() != 1 {
        return Err(Error::Invalid(format!(
            "iso-fibrations are defined between categories, got level {}",
            u.level()
        )));
    }
    let (s, t) = (&*u.source, &*u.target);
    let invertible_source: Vec<u32> = (0..s.size(1) as u32).filter(|&f| is_invertible(s, f)).collect();
    let lifts = |f_prime: u32, endpoint: u32, at_target: bool| {
        invertible_source
            .iter()
            .any(|&f| u.apply(1, f) == f_prime && (if at_target { s.tgt(1, f) } else { s.src(1, f) }) == endpoint)
    };
    let mut variants = [true, true];
    for f_prime in (0..t.size(1) as u32).filter(|&f| is_invertible(t, f)) {
        for y in 0..s.size(0) as u32 {
            if u.apply(0, y) == t.src(1, f_prime) && !lifts(f_prime, y, false) {
                variants[0] = false;
            }
            if u.apply(0, y) == t.tgt(1, f_prime) && !lifts(f_prime, y, true) {
                variants[1] = false;
            }
        }
    }
    Ok((variants[0], variants[1]))
}

/// Whether `u` is an iso-fibration. Both endpoint variants are computed and
/// must agree.
pub fn is_iso_fibration(u: &NFunctor) -> Result<bool> {
    let (v0, v1) = iso_fibration_variants(u)?;
    if v0 != v1 {
        return Err(Error::Invariant(format!(
            "iso-fibration variants disagree: endpoint 0 {v0}, endpoint 1 {v1}"
        )));
    }
    Ok(v1)
}

/// Classification of the lifts in a square of strict functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftClass {
    NoLift,
    UniqueLift(NFunctor),
    MultipleLifts(NFunctor, NFunctor),
}

/// Enumerates the diagonals `h : B → C` of the square
///
/// ```text
///   A --top--> C
///   |u         |v
///   B --bot--> D
/// ```
///
/// with `h ∘ u = top` and `v ∘ h = bottom`.
pub fn unique_lift(u: &NFunctor, v: &NFunctor, top: &NFunctor, bottom: &NFunctor) -> Result<LiftClass> {
    if compose_maps(&v.map, &top.map) != compose_maps(&bottom.map, &u.map) {
        return Err(Error::NotCommutative("v ∘ top differs from bottom ∘ u".into()));
    }
    let (b, c) = (&u.target, &v.source);
    let mut search = FunctorSearch::new(b, c)?;
    for (k, row) in u.map.iter().enumerate() {
        for (a, &x) in row.iter().enumerate() {
            search = search.pin(k, x, top.map[k][a]);
        }
    }
    let search = search.filter(|k, x, y| v.apply(k, y) == bottom.apply(k, x));
    let mut found = search.collect(Some(2)).into_iter();
    let wrap = |m| NFunctor::new_unchecked(b.clone(), c.clone(), m);
    Ok(match (found.next(), found.next()) {
        (None, _) => LiftClass::NoLift,
        (Some(h), None) => LiftClass::UniqueLift(wrap(h)),
        (Some(h1), Some(h2)) => LiftClass::MultipleLifts(wrap(h1), wrap(h2)),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ncat::{build_interval, simply_connected_groupoid, truncate_right};

    #[test]
    fn identity_is_fully_faithful() {
        let j2 = Arc::new(build_interval(2).unwrap().cat);
        assert!(is_fully_faithful(&NFunctor::identity(j2)));
    }

    #[test]
    fn collapse_of_j2_is_not_fully_faithful() {
        assert!(!is_fully_faithful(&build_interval(2).unwrap().j));
    }

    #[test]
    fn iso_fibrations() {
        let j = Arc::new(simply_connected_groupoid(1));
        assert!(is_iso_fibration(&NFunctor::to_terminal(j.clone())).unwrap());
        assert!(!is_iso_fibration(&NFunctor::point(j, 0)).unwrap());
        let iv = build_interval(2).unwrap();
        let tr = NFunctor::new(
            Arc::new(truncate_right(&iv.j.source)),
            Arc::new(truncate_right(&iv.j.target)),
            iv.j.map[..2].to_vec(),
        )
        .unwrap();
        assert!(is_iso_fibration(&tr).unwrap());
    }

    #[test]
    fn identity_square_on_the_point() {
        let pt = Arc::new(FiniteNCat::terminal(1));
        let id = NFunctor::identity(pt);
        assert!(matches!(unique_lift(&id, &id, &id, &id).unwrap(), LiftClass::UniqueLift(_)));
    }

    #[test]
    fn lifts_out_of_the_empty_category() {
        let j2 = Arc::new(build_interval(2).unwrap().cat);
        let pt = Arc::new(FiniteNCat::terminal(2));
        let empty = Arc::new(FiniteNCat::empty(2));
        let u = NFunctor::new(empty.clone(), pt.clone(), vec![vec![]; 3]).unwrap();
        let top = NFunctor::new(empty, j2.clone(), vec![vec![]; 3]).unwrap();
        let v = NFunctor::to_terminal(j2);
        let bottom = NFunctor::identity(pt);
        assert!(matches!(unique_lift(&u, &v, &top, &bottom).unwrap(), LiftClass::MultipleLifts(..)));
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let j = Arc::new(simply_connected_groupoid(1));
        let p0 = NFunctor::point(j.clone(), 0);
        let p1 = NFunctor::point(j.clone(), 1);
        let id = NFunctor::identity(j);
        let pt = NFunctor::identity(p0.source.clone());
        assert!(unique_lift(&pt, &id, &p0, &p1).is_err());
    }
}
