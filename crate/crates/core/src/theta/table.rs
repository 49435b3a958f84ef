use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An object of Θ_n: a table of dimensions
///
/// ```text
///   i_1    i_2   …   i_m
///      i'_1   …   i'_{m-1}
/// ```
///
/// with `i_k > i'_k < i_{k+1}`. Tables compare lexicographically, top row
/// first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Table {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl Table {
    pub fn new(top: Vec<usize>, bottom: Vec<usize>) -> Result<Table> {
        let t = Table { top, bottom };
        t.check()?;
        Ok(t)
    }

    /// The disk `D_k`, the width-1 table `(k)`.
    pub fn disk(k: usize) -> Table {
        Table {
            top: vec![k],
            bottom: vec![],
        }
    }

    pub fn point() -> Table {
        Table::disk(0)
    }

    pub fn width(&self) -> usize {
        self.top.len()
    }

    pub fn dim(&self) -> usize {
        self.top.iter().copied().max().unwrap_or(0)
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    fn check(&self) -> Result<()> {
        if self.top.is_empty() {
            return Err(Error::InvalidTable("empty top row".into()));
        }
        if self.bottom.len() + 1 != self.top.len() {
            return Err(Error::InvalidTable(format!(
                "top row has {} entries, bottom row {}; expected one fewer below",
                self.top.len(),
                self.bottom.len()
            )));
        }
        for (k, &b) in self.bottom.iter().enumerate() {
            if self.top[k] <= b || self.top[k + 1] <= b {
                return Err(Error::InvalidTable(format!(
                    "{self}: bottom entry {b} is not below both neighbours"
                )));
            }
        }
        Ok(())
    }

    /// Splits the table at the zeros of its bottom row and lowers every entry
    /// of each piece by one. `(0)` has no segments.
    pub fn segments(&self) -> Vec<Table> {
        if self.top == [0] {
            return vec![];
        }
        let mut out = Vec::new();
        let mut start = 0;
        for k in 0..=self.bottom.len() {
            if k == self.bottom.len() || self.bottom[k] == 0 {
                out.push(Table {
                    top: self.top[start..=k].iter().map(|&x| x - 1).collect(),
                    bottom: self.bottom[start..k].iter().map(|&x| x - 1).collect(),
                });
                start = k + 1;
            }
        }
        out
    }

    /// `Δ_m` as a table: `m` ones over `m − 1` zeros, `(0)` for `m = 0`.
    pub fn simplex(m: usize) -> Table {
        if m == 0 {
            return Table::point();
        }
        Table {
            top: vec![1; m],
            bottom: vec![0; m - 1],
        }
    }

    /// Inverse of [`Table::simplex`].
    pub fn as_simplex(&self) -> Result<usize> {
        if self.top == [0] {
            return Ok(0);
        }
        if self.top.iter().all(|&x| x == 1) && self.bottom.iter().all(|&x| x == 0) {
            return Ok(self.width());
        }
        Err(Error::InvalidTable(format!("{self} is not the table of a simplex")))
    }
}

impl fmt::Display for Table {
    /// Text form `"1 1 / 0"`; the slash is omitted for width 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        if self.bottom.is_empty() {
            write!(f, "{}", join(&self.top))
        } else {
            write!(f, "{} / {}", join(&self.top), join(&self.bottom))
        }
    }
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Table> {
        let mut rows = s.split('/');
        let parse_row = |r: &str| -> Result<Vec<usize>> {
            r.split_whitespace()
                .map(|x| {
                    x.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad entry {x:?} in table {s:?}")))
                })
                .collect()
        };
        let top = parse_row(rows.next().unwrap_or(""))?;
        let bottom = match rows.next() {
            Some(r) => parse_row(r)?,
            None => vec![],
        };
        if rows.next().is_some() {
            return Err(Error::Parse(format!("table {s:?} has more than two rows")));
        }
        Table::new(top, bottom)
    }
}

/// All tables of dimension `≤ n` and width `≤ max_width`, sorted.
pub fn enumerate_objects(n: usize, max_width: usize) -> Vec<Table> {
    let mut out = vec![];
    for m in 1..=max_width {
        let mut top = vec![0; m];
        let mut bottom = vec![0; m - 1];
        fill(n, 0, &mut top, &mut bottom, &mut out);
    }
    out.sort();
    out
}

fn fill(n: usize, pos: usize, top: &mut Vec<usize>, bottom: &mut Vec<usize>, out: &mut Vec<Table>) {
    if pos == top.len() {
        let t = Table {
            top: top.clone(),
            bottom: bottom.clone(),
        };
        if t.is_valid() {
            out.push(t);
        }
        return;
    }
    for a in 0..=n {
        top[pos] = a;
        if pos + 1 < top.len() {
            for b in 0..a.min(n) {
                bottom[pos] = b;
                fill(n, pos + 1, top, bottom, out);
            }
        } else {
            fill(n, pos + 1, top, bottom, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t: Table = "1 1 / 0".parse().unwrap();
        assert_eq!(
            t,
            Table {
                top: vec![1, 1],
                bottom: vec![0]
            }
        );
        assert_eq!(t.to_string(), "1 1 / 0");
        assert_eq!("2".parse::<Table>().unwrap(), Table::disk(2));
        assert!("1 1 / 1".parse::<Table>().is_err());
        assert!("1 x".parse::<Table>().is_err());
        assert!("1 1".parse::<Table>().is_err());
    }

    #[test]
    fn segments_split_at_zeros() {
        let t: Table = "2 1 / 0".parse().unwrap();
        assert_eq!(t.segments(), vec![Table::disk(1), Table::disk(0)]);
        let t: Table = "2 2 / 1".parse().unwrap();
        assert_eq!(t.segments(), vec!["1 1 / 0".parse().unwrap()]);
        assert!(Table::point().segments().is_empty());
    }

    #[test]
    fn simplices() {
        assert_eq!(Table::simplex(2).to_string(), "1 1 / 0");
        for m in 0..5 {
            assert_eq!(Table::simplex(m).as_simplex().unwrap(), m);
        }
        assert!(Table::disk(2).as_simplex().is_err());
    }
}
