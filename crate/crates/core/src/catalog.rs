//! Named strict n-categories and functors, parsed from short text names.
//!
//! Categories:
//! - `pt`, `D<k>`: the disks (`pt = D0`)
//! - `J`, `J<k>`: the intervals
//! - `G<k>`: the simply connected groupoid `Δ̃_k` on `k + 1` objects
//! - `[<table>]`: the free n-category on a table, e.g. `[1 1 / 0]`
//! - `@<path>`: a category in the JSON format of [`FiniteNCat::to_json`]
//!
//! Functors:
//! - `j<k>`: the collapse `J_k → D_{k-1}` (`j = j1`)
//! - `s0_<k>`, `s1_<k>`: its two sections (`e0`, `e1` for `k = 1`)
//! - `<cat>->pt`: the map to the terminal category
//! - `id:<cat>`: the identity
//!
//! Every result is promoted to the requested level.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncat::{build_interval, disk, simply_connected_groupoid, FiniteNCat, NFunctor};
use crate::theta::{Table, Theta};

fn number(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

fn lift_to(c: FiniteNCat, level: usize, name: &str) -> Result<Arc<FiniteNCat>> {
    if c.level() > level {
        return Err(Error::Invalid(format!("{name} has level {} > {level}", c.level())));
    }
    Ok(Arc::new(c.promote(level)))
}

/// The category called `name`, as a strict `level`-category.
pub fn category(name: &str, level: usize) -> Result<Arc<FiniteNCat>> {
    let name = name.trim();
    if let Some(path) = name.strip_prefix('@') {
        let c = FiniteNCat::from_json(&std::fs::read_to_string(path)?)?;
        return lift_to(c, level, name);
    }
    if let Some(t) = name.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let t: Table = t.parse()?;
        return Theta::new(level).free_ncat(&t);
    }
    let c = match name {
        "pt" => FiniteNCat::terminal(0),
        "J" => build_interval(1)?.cat,
        _ => {
            let (head, rest) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
            match head {
                "D" => {
                    let k = number(rest, "disk dimension")?;
                    if k > level {
                        return Err(Error::Invalid(format!("{name} does not exist at level {level}")));
                    }
                    disk(k, k).0
                }
                "J" => build_interval(number(rest, "interval index")?)?.cat,
                "G" => simply_connected_groupoid(number(rest, "groupoid size")?),
                _ => return Err(Error::Parse(format!("unknown category {name:?}"))),
            }
        }
    };
    lift_to(c, level, name)
}

/// The functor called `name`, as a functor of strict `level`-categories.
pub fn functor(name: &str, level: usize) -> Result<NFunctor> {
    let name = name.trim();
    let promote = |f: NFunctor| -> Result<NFunctor> {
        if f.level() > level {
            return Err(Error::Invalid(format!("{name} does not exist at level {level}")));
        }
        Ok(f.promote(level))
    };
    if let Some(c) = name.strip_suffix("->pt") {
        return Ok(NFunctor::to_terminal(category(c, level)?));
    }
    if let Some(c) = name.strip_prefix("id:") {
        return Ok(NFunctor::identity(category(c, level)?));
    }
    match name {
        "j" => return promote(build_interval(1)?.j),
        "e0" => return promote(build_interval(1)?.s0),
        "e1" => return promote(build_interval(1)?.s1),
        _ => {}
    }
    if let Some(k) = name.strip_prefix('j') {
        return promote(build_interval(number(k, "interval index")?)?.j);
    }
    for (prefix, eps) in [("s0_", 0), ("s1_", 1)] {
        if let Some(k) = name.strip_prefix(prefix) {
            let iv = build_interval(number(k, "interval index")?)?;
            return promote(if eps == 0 { iv.s0 } else { iv.s1 });
        }
    }
    Err(Error::Parse(format!("unknown functor {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_categories() {
        assert_eq!(category("pt", 2).unwrap().cell_counts(), vec![1, 1, 1]);
        assert_eq!(category("J", 1).unwrap().cell_counts(), vec![2, 4]);
        assert_eq!(category("J2", 2).unwrap().cell_counts(), vec![2, 4, 6]);
        assert_eq!(category("D1", 2).unwrap().cell_counts(), vec![2, 3, 3]);
        assert_eq!(category("G2", 1).unwrap().cell_counts(), vec![3, 9]);
        assert_eq!(category("[2]", 2).unwrap().cell_counts(), vec![2, 4, 5]);
        assert!(category("D3", 2).is_err());
        assert!(category("J2", 1).is_err());
        assert!(category("X", 2).is_err());
    }

    #[test]
    fn named_functors() {
        let j2 = functor("j2", 2).unwrap();
        assert_eq!(j2.source.cell_counts(), vec![2, 4, 6]);
        assert!(j2.is_valid());
        assert!(functor("s1_2", 2).unwrap().is_valid());
        assert!(functor("e0", 2).unwrap().is_valid());
        assert_eq!(functor("J->pt", 1).unwrap().target.cell_counts(), vec![1, 1]);
        assert!(functor("id:D1", 1).unwrap().is_valid());
        assert!(functor("q", 1).is_err());
    }

    #[test]
    fn json_round_trip_through_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("j.json");
        std::fs::write(&path, category("J", 1).unwrap().to_json()).unwrap();
        let c = category(&format!("@{}", path.display()), 2).unwrap();
        assert_eq!(c.cell_counts(), vec![2, 4, 4]);
    }
}
