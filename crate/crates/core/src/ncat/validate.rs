use std::fmt;

use serde::Serialize;

use super::FiniteNCat;

/// The law a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    IndexRange,
    Globularity,
    UnitSource,
    UnitTarget,
    CompDomain,
    CompMissing,
    CompBoundary,
    Unit,
    IdentityComp,
    Associativity,
    Interchange,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::IndexRange => "index-range",
            Law::Globularity => "globularity",
            Law::UnitSource => "unit-source",
            Law::UnitTarget => "unit-target",
            Law::CompDomain => "comp-domain",
            Law::CompMissing => "comp-missing",
            Law::CompBoundary => "comp-boundary",
            Law::Unit => "unit",
            Law::IdentityComp => "identity-comp",
            Law::Associativity => "associativity",
            Law::Interchange => "interchange",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, law: Law) -> usize {
        self.violations.iter().filter(|v| v.law == law).count()
    }

    fn push(&mut self, law: Law, detail: String) {
        self.violations.push(Violation { law, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.law, v.detail)?;
        }
        Ok(())
    }
}

impl FiniteNCat {
    /// Checks every axiom of a strict n-category by exhaustive iteration over
    /// the tables. The report is empty iff the data is a strict n-category.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        check_ranges(self, &mut report);
        if !report.is_valid() {
            return report;
        }
        let n = self.level;
        for k in 2..=n {
            for x in 0..self.size(k) as u32 {
                let (s, t) = (self.src(k, x), self.tgt(k, x));
                if self.src(k - 1, s) != self.src(k - 1, t) || self.tgt(k - 1, s) != self.tgt(k - 1, t) {
                    report.push(Law::Globularity, format!("{k}-cell {x}"));
                }
            }
        }
        for k in 0..n {
            for x in 0..self.size(k) as u32 {
                let i = self.ident(k, x);
                if self.src(k + 1, i) != x {
                    report.push(Law::UnitSource, format!("ident of {k}-cell {x} = {i}"));
                }
                if self.tgt(k + 1, i) != x {
                    report.push(Law::UnitTarget, format!("ident of {k}-cell {x} = {i}"));
                }
            }
        }
        if !report.is_valid() {
            return report;
        }
        for k in 1..=n {
            for j in 0..k {
                check_domain(self, j, k, &mut report);
            }
        }
        if !report.is_valid() {
            return report;
        }
        for k in 1..=n {
            for j in 0..k {
                check_boundaries(self, j, k, &mut report);
                check_units(self, j, k, &mut report);
                check_associativity(self, j, k, &mut report);
                if k < n {
                    check_identity_comp(self, j, k, &mut report);
                }
                for i in j + 1..k {
                    check_interchange(self, j, i, k, &mut report);
                }
            }
        }
        report
    }
}

fn check_ranges(c: &FiniteNCat, report: &mut ValidationReport) {
    let n = c.level;
    for k in 1..=n {
        for (name, table) in [("src", c.src_table(k)), ("tgt", c.tgt_table(k))] {
            if table.len() != c.size(k) {
                report.push(
                    Law::IndexRange,
                    format!("{name}[{k}] has {} entries, expected {}", table.len(), c.size(k)),
                );
            }
            for (x, &y) in table.iter().enumerate() {
                if y as usize >= c.size(k - 1) {
                    report.push(Law::IndexRange, format!("{name}[{k}]({x}) = {y} is not a {}-cell", k - 1));
                }
            }
        }
    }
    for k in 0..n {
        let table = c.ident_table(k);
        if table.len() != c.size(k) {
            report.push(
                Law::IndexRange,
                format!("ident[{k}] has {} entries, expected {}", table.len(), c.size(k)),
            );
        }
        for (x, &y) in table.iter().enumerate() {
            if y as usize >= c.size(k + 1) {
                report.push(Law::IndexRange, format!("ident[{k}]({x}) = {y} is not a {}-cell", k + 1));
            }
        }
    }
    for k in 1..=n {
        for j in 0..k {
            for &[g, f, r] in c.comp_table(j, k).entries() {
                if [g, f, r].iter().any(|&x| x as usize >= c.size(k)) {
                    report.push(Law::IndexRange, format!("comp[{j}][{k}] entry ({g}, {f}) -> {r}"));
                }
            }
        }
    }
}

fn composable(c: &FiniteNCat, j: usize, k: usize, g: u32, f: u32) -> bool {
    c.tgt_to(k, f, j) == c.src_to(k, g, j)
}

fn check_domain(c: &FiniteNCat, j: usize, k: usize, report: &mut ValidationReport) {
    let table = c.comp_table(j, k);
    for &[g, f, _] in table.entries() {
        if !composable(c, j, k, g, f) {
            report.push(
                Law::CompDomain,
                format!("comp[{j}][{k}]({g}, {f}) defined on a non-composable pair"),
            );
        }
    }
    // Group k-cells by their j-source so that composable pairs are found directly.
    let mut by_src: Vec<Vec<u32>> = vec![vec![]; c.size(j)];
    for g in 0..c.size(k) as u32 {
        by_src[c.src_to(k, g, j) as usize].push(g);
    }
    for f in 0..c.size(k) as u32 {
        for &g in &by_src[c.tgt_to(k, f, j) as usize] {
            if table.get(g, f).is_none() {
                report.push(Law::CompMissing, format!("comp[{j}][{k}]({g}, {f}) undefined"));
            }
        }
    }
}

fn check_boundaries(c: &FiniteNCat, j: usize, k: usize, report: &mut ValidationReport) {
    for &[g, f, r] in c.comp_table(j, k).entries() {
        let (s, t) = if j + 1 == k {
            (c.src(k, f), c.tgt(k, g))
        } else {
            match (
                c.comp(j, k - 1, c.src(k, g), c.src(k, f)),
                c.comp(j, k - 1, c.tgt(k, g), c.tgt(k, f)),
            ) {
                (Some(s), Some(t)) => (s, t),
                _ => {
                    report.push(Law::CompBoundary, format!("comp[{j}][{k}]({g}, {f}): boundary composite undefined"));
                    continue;
                }
            }
        };
        if c.src(k, r) != s || c.tgt(k, r) != t {
            report.push(Law::CompBoundary, format!("comp[{j}][{k}]({g}, {f}) = {r}"));
        }
    }
}

fn check_units(c: &FiniteNCat, j: usize, k: usize, report: &mut ValidationReport) {
    for x in 0..c.size(k) as u32 {
        let left = c.ident_to(j, c.tgt_to(k, x, j), k);
        let right = c.ident_to(j, c.src_to(k, x, j), k);
        if c.comp(j, k, left, x) != Some(x) {
            report.push(Law::Unit, format!("comp[{j}][{k}]({left}, {x}) != {x}"));
        }
        if c.comp(j, k, x, right) != Some(x) {
            report.push(Law::Unit, format!("comp[{j}][{k}]({x}, {right}) != {x}"));
        }
    }
}

fn check_associativity(c: &FiniteNCat, j: usize, k: usize, report: &mut ValidationReport) {
    let table = c.comp_table(j, k);
    let mut by_tgt: Vec<Vec<u32>> = vec![vec![]; c.size(j)];
    for h in 0..c.size(k) as u32 {
        by_tgt[c.tgt_to(k, h, j) as usize].push(h);
    }
    for &[g, f, gf] in table.entries() {
        for &h in &by_tgt[c.src_to(k, f, j) as usize] {
            let lhs = table.get(gf, h);
            let rhs = table.get(f, h).and_then(|fh| table.get(g, fh));
            if lhs != rhs {
                report.push(Law::Associativity, format!("comp[{j}][{k}] on ({g}, {f}, {h})"));
            }
        }
    }
}

fn check_identity_comp(c: &FiniteNCat, j: usize, k: usize, report: &mut ValidationReport) {
    for &[g, f, r] in c.comp_table(j, k).entries() {
        let lhs = c.comp(j, k + 1, c.ident(k, g), c.ident(k, f));
        if lhs != Some(c.ident(k, r)) {
            report.push(Law::IdentityComp, format!("comp[{j}][{}] of identities on ({g}, {f})", k + 1));
        }
    }
}

/// `(δ ∘_i γ) ∘_j (β ∘_i α) = (δ ∘_j β) ∘_i (γ ∘_j α)` for `j < i < k`.
fn check_interchange(c: &FiniteNCat, j: usize, i: usize, k: usize, report: &mut ValidationReport) {
    let vertical = c.comp_table(i, k);
    let horizontal = c.comp_table(j, k);
    let mut by_src: Vec<Vec<[u32; 3]>> = vec![vec![]; c.size(j)];
    for &e in vertical.entries() {
        by_src[c.src_to(k, e[1], j) as usize].push(e);
    }
    for &[beta, alpha, ba] in vertical.entries() {
        for &[delta, gamma, dg] in &by_src[c.tgt_to(k, alpha, j) as usize] {
            let (Some(db), Some(ga)) = (horizontal.get(delta, beta), horizontal.get(gamma, alpha)) else {
                continue;
            };
            let lhs = horizontal.get(dg, ba);
            let rhs = vertical.get(db, ga);
            if lhs != rhs {
                report.push(
                    Law::Interchange,
                    format!("dims ({j},{i},{k}) on α={alpha}, β={beta}, γ={gamma}, δ={delta}"),
                );
            }
        }
    }
}
