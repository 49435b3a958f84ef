use serde::{Deserialize, Serialize};

use super::FiniteNCat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompJson {
    pub j: usize,
    pub k: usize,
    /// `[g, f, g∘f]` triples.
    pub pairs: Vec<[u32; 3]>,
}

/// Serialized form of a [`FiniteNCat`]. `src` and `tgt` have one list per
/// dimension with an empty list for objects; ids are listed in ascending
/// order everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NCatJson {
    pub level: usize,
    pub cells: Vec<Vec<u32>>,
    pub src: Vec<Vec<u32>>,
    pub tgt: Vec<Vec<u32>>,
    pub ident: Vec<Vec<u32>>,
    pub comp: Vec<CompJson>,
}

impl From<&FiniteNCat> for NCatJson {
    fn from(c: &FiniteNCat) -> Self {
        let n = c.level();
        let mut comp = Vec::new();
        for k in 1..=n {
            for j in 0..k {
                comp.push(CompJson {
                    j,
                    k,
                    pairs: c.comp_table(j, k).entries().to_vec(),
                });
            }
        }
        NCatJson {
            level: n,
            cells: c.sizes().iter().map(|&s| (0..s as u32).collect()).collect(),
            src: (0..=n).map(|k| if k == 0 { vec![] } else { c.src_table(k).to_vec() }).collect(),
            tgt: (0..=n).map(|k| if k == 0 { vec![] } else { c.tgt_table(k).to_vec() }).collect(),
            ident: (0..n).map(|k| c.ident_table(k).to_vec()).collect(),
            comp,
        }
    }
}

impl TryFrom<NCatJson> for FiniteNCat {
    type Error = Error;

    /// Rebuilds the tables. Cell ids must be `0..size` in each dimension; the
    /// laws are not checked here, use [`FiniteNCat::validate`].
    fn try_from(j: NCatJson) -> Result<Self> {
        for (k, ids) in j.cells.iter().enumerate() {
            if ids.iter().enumerate().any(|(i, &x)| x as usize != i) {
                return Err(Error::Parse(format!("cell ids of dimension {k} are not 0..{}", ids.len())));
            }
        }
        let sizes = j.cells.iter().map(Vec::len).collect();
        let comp = j.comp.into_iter().map(|c| (c.j, c.k, c.pairs)).collect();
        FiniteNCat::from_parts(j.level, sizes, j.src, j.tgt, j.ident, comp)
    }
}

impl FiniteNCat {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&NCatJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<FiniteNCat> {
        let j: NCatJson = serde_json::from_str(s)?;
        FiniteNCat::try_from(j)
    }
}
