//! Command-line front end: enumeration, hom sets, nerves, lifting verdicts
//! and the verification suites, all reporting JSON.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a negative
//! verdict, 2 for usage and parse errors, 3 when a table falls outside the
//! bounds of the site.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use theta_cells::boxcalc::{self, Bisite};
use theta_cells::catalog;
use theta_cells::lifting::{self, GeneratorSet, IntervalObject};
use theta_cells::ncat::NCatJson;
use theta_cells::presheaf::{self, Presheaf};
use theta_cells::site::{Bounds, Site, SiteObject};
use theta_cells::theta::{enumerate_objects, Table, Theta};
use theta_cells::Error;

#[derive(Parser)]
#[command(
    name = "theta",
    version,
    about = "Finite computations with Θ_n, strict n-categories and their nerves"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add wall-clock timings to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    /// The n of Θ_n.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Largest table dimension in the site (default: min(n, 2)).
    #[arg(long)]
    max_dim: Option<usize>,
    /// Largest table width in the site.
    #[arg(long, default_value_t = 2)]
    max_width: usize,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds::new(self.max_dim.unwrap_or(self.n.min(2)), self.max_width)
    }

    fn site(&self) -> Result<Arc<Site>, Error> {
        let b = self.bounds();
        if b.max_dim > self.n {
            return Err(Error::Invalid(format!("--max-dim {} exceeds --n {}", b.max_dim, self.n)));
        }
        Site::theta(Arc::new(Theta::new(self.n)), b)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Against {
    Boundary,
    Spine,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    /// The category itself.
    Cat,
    /// Its nerve on the bounded site of Θ_n.
    Nerve,
    /// Its classical nerve with faces and degeneracies, up to `--levels`.
    Simplicial,
}

#[derive(Subcommand)]
enum Verb {
    /// List the tables of dimension <= n and width <= max-width.
    Objects(BoundArgs),
    /// The morphisms between two tables.
    Hom {
        #[arg(long)]
        from: Table,
        #[arg(long)]
        to: Table,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// Cell counts of the free n-category on a table.
    Free {
        #[arg(long)]
        table: Table,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// The nerve of a named category on the bounded site.
    Nerve {
        #[arg(long)]
        cat: String,
        /// List the elements, not just their number.
        #[arg(long)]
        elements: bool,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// The boundary of a table as a subpresheaf of its representable.
    Boundary {
        #[arg(long)]
        table: Table,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// The spine of a table as a subpresheaf of its representable.
    Spine {
        #[arg(long)]
        table: Table,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// Whether the nerve of a functor lifts against one boundary or spine inclusion.
    Lift {
        #[arg(long)]
        functor: String,
        #[arg(long, value_enum)]
        against: Against,
        #[arg(long)]
        table: Table,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// Whether the nerve of a functor lifts against every boundary inclusion of the site.
    Trivfib {
        #[arg(long)]
        functor: String,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// Whether the nerve of a functor lifts against the anodyne generators built from the spines.
    Anodyne {
        #[arg(long)]
        functor: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// N(j_k) is not a trivial fibration, yet t_r(j_k) is an iso-fibration.
    VerifyCounterexample {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// N_2(J_2) fails to lift against a pushout-product with the interval.
    #[command(name = "verify-not-2qcat")]
    VerifyNot2qcat {
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_width: usize,
    },
    /// The Segal condition for the nerve of a category at every table of the site.
    VerifySegal {
        #[arg(long)]
        cat: String,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// The nerves of the simply connected groupoids form a resolution.
    VerifyResolution {
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// Three-way orthogonality on sampled triples and the named instance.
    VerifyOrthogonality {
        /// Top level of the truncated Δ.
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        b: BoundArgs,
    },
    /// Dump a named category, its nerve or its classical nerve as JSON.
    Export {
        #[arg(long)]
        cat: String,
        #[arg(long, value_enum, default_value = "cat")]
        what: ExportKind,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[command(flatten)]
        b: BoundArgs,
    },
}

/// A report and whether its verdict is positive.
struct Outcome {
    report: Value,
    positive: bool,
    /// Export output is printed as is, without bounds or timings.
    raw: bool,
}

fn report(v: impl Serialize) -> Result<Value, Error> {
    Ok(serde_json::to_value(v)?)
}

fn ok(report: Value) -> Outcome {
    Outcome {
        report,
        positive: true,
        raw: false,
    }
}

fn verdict(report: Value, positive: bool) -> Outcome {
    Outcome {
        report,
        positive,
        raw: false,
    }
}

fn table_text(o: &SiteObject) -> String {
    match o {
        SiteObject::Table(t) => t.to_string(),
        other => other.to_string(),
    }
}

fn counts(x: &Presheaf) -> Vec<Value> {
    let site = x.site();
    (0..site.num_objects() as u32)
        .map(|o| json!({"table": table_text(site.object(o)), "size": x.size(o)}))
        .collect()
}

fn subpresheaf_report(g: &presheaf::Generated, t: &Table) -> Result<Value, Error> {
    let site = g.presheaf.site();
    let rep = &g.inclusion.target;
    let rows: Vec<Value> = (0..site.num_objects() as u32)
        .map(|o| json!({"table": table_text(site.object(o)), "size": g.presheaf.size(o), "representable": rep.size(o)}))
        .collect();
    Ok(json!({
        "table": t.to_string(),
        "generators": g.generators.len(),
        "nondegenerate": g.presheaf.nondegenerate_cells()?.len(),
        "counts": rows,
    }))
}

fn rlp_report(out: lifting::RlpOutcome) -> Outcome {
    let witness = out.witness.map(|w| w.0);
    verdict(json!({"holds": out.holds, "squares": out.squares, "witness": witness}), out.holds)
}

fn run(verb: &Verb) -> Result<(Outcome, Option<Bounds>), Error> {
    Ok(match verb {
        Verb::Objects(b) => {
            let tables = enumerate_objects(b.n, b.max_width);
            let names: Vec<String> = tables.iter().map(ToString::to_string).collect();
            let r = json!({"n": b.n, "max_width": b.max_width, "count": names.len(), "tables": names});
            (ok(r), Some(Bounds::new(b.n, b.max_width)))
        }
        Verb::Hom { from, to, b } => {
            let theta = Theta::new(b.n);
            let maps = theta.hom(from, to)?;
            let rows: Vec<Value> = maps
                .iter()
                .map(|f| Ok(json!({"map": f.encode(), "mono": f.is_mono(), "split_epi": theta.is_split_epi(f)?})))
                .collect::<Result<_, Error>>()?;
            let r = json!({"from": from.to_string(), "to": to.to_string(), "n": b.n, "count": rows.len(), "morphisms": rows});
            (ok(r), None)
        }
        Verb::Free { table, b } => {
            let c = Theta::new(b.n).free_ncat(table)?;
            (ok(json!({"table": table.to_string(), "n": b.n, "cells": c.cell_counts()})), None)
        }
        Verb::Nerve { cat, elements, b } => {
            let site = b.site()?;
            let x = presheaf::nerve(&site, &catalog::category(cat, b.n)?)?;
            let r = if *elements {
                report(x.dump())?
            } else {
                json!({"category": cat, "counts": counts(&x)})
            };
            (ok(r), Some(b.bounds()))
        }
        Verb::Boundary { table, b } => {
            let site = b.site()?;
            let g = presheaf::boundary(&site, site.table(table)?);
            (ok(subpresheaf_report(&g, table)?), Some(b.bounds()))
        }
        Verb::Spine { table, b } => {
            let site = b.site()?;
            let g = presheaf::spine(&site, site.table(table)?)?;
            (ok(subpresheaf_report(&g, table)?), Some(b.bounds()))
        }
        Verb::Lift {
            functor,
            against,
            table,
            b,
        } => {
            let site = b.site()?;
            let f = lifting::nerve_of_functor(&site, &catalog::functor(functor, b.n)?)?;
            let o = site.table(table)?;
            let mut gens = GeneratorSet::new();
            match against {
                Against::Boundary => gens.push(format!("boundary {table}"), presheaf::boundary(&site, o).inclusion),
                Against::Spine => gens.push(format!("spine {table}"), presheaf::spine(&site, o)?.inclusion),
            }
            (rlp_report(lifting::has_rlp(&f, &gens)?), Some(b.bounds()))
        }
        Verb::Trivfib { functor, b } => {
            let site = b.site()?;
            let f = lifting::nerve_of_functor(&site, &catalog::functor(functor, b.n)?)?;
            let v = lifting::check_trivial_fibration(&f)?;
            (verdict(report(&v)?, v.holds), Some(b.bounds()))
        }
        Verb::Anodyne { functor, depth, b } => {
            let site = b.site()?;
            let f = lifting::nerve_of_functor(&site, &catalog::functor(functor, b.n)?)?;
            let gens = lifting::anodyne_generators(&lifting::spine_generators(&site)?, &IntervalObject::nerve_of_j(&site)?, *depth)?;
            let mut o = rlp_report(lifting::has_rlp(&f, &gens)?);
            o.report["generators"] = json!(gens.len());
            o.report["depth"] = json!(depth);
            (o, Some(b.bounds()))
        }
        Verb::VerifyCounterexample { k, depth, b } => {
            let r = lifting::verify_counterexample(b.n, *k, b.bounds(), *depth)?;
            (verdict(report(&r)?, r.holds), Some(b.bounds()))
        }
        Verb::VerifyNot2qcat { max_dim, max_width } => {
            let bounds = Bounds::new(max_dim.unwrap_or(2), *max_width);
            let r = lifting::check_not_2qcat(bounds)?;
            (verdict(report(&r)?, r.holds), Some(bounds))
        }
        Verb::VerifySegal { cat, b } => {
            let site = b.site()?;
            let c = catalog::category(cat, b.n)?;
            let rows: Vec<(String, bool)> = (0..site.num_objects() as u32)
                .map(|o| Ok((table_text(site.object(o)), presheaf::segal_check(&site, &c, o)?)))
                .collect::<Result<_, Error>>()?;
            let holds = rows.iter().all(|r| r.1);
            let rows: Vec<Value> = rows.into_iter().map(|(t, h)| json!({"table": t, "holds": h})).collect();
            (
                verdict(json!({"category": cat, "holds": holds, "tables": rows}), holds),
                Some(b.bounds()),
            )
        }
        Verb::VerifyResolution { k_max, b } => {
            let r = boxcalc::resolution_check(b.n, *k_max, b.bounds())?;
            (verdict(report(&r)?, r.holds), Some(b.bounds()))
        }
        Verb::VerifyOrthogonality { levels, seed, samples, b } => {
            let bs = Bisite::new(b.site()?, *levels)?;
            let sample = boxcalc::orthogonality_sample(&bs, *seed, *samples)?;
            let t = boxcalc::named_triple(&bs)?;
            let named = boxcalc::orthogonality_equivalence_test(&bs, &t.u, &t.v, &t.f)?;
            let holds = sample.agree && named.agree;
            let r = json!({"holds": holds, "levels": levels, "named": {"label": t.label, "report": named}, "sample": sample});
            (verdict(r, holds), Some(b.bounds()))
        }
        Verb::Export { cat, what, levels, b } => {
            let r = match what {
                ExportKind::Cat => report(NCatJson::from(catalog::category(cat, b.n)?.as_ref()))?,
                ExportKind::Nerve => report(presheaf::nerve(&b.site()?, &catalog::category(cat, b.n)?)?.dump())?,
                ExportKind::Simplicial => {
                    let delta = Site::delta(*levels)?;
                    report(boxcalc::to_json(&*presheaf::nerve(&delta, &catalog::category(cat, 1)?)?)?)?
                }
            };
            (
                Outcome {
                    report: r,
                    positive: true,
                    raw: true,
                },
                None,
            )
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OutOfBounds(_) | Error::SearchBound(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (outcome, bounds) = match run(&cli.verb) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut value = outcome.report;
    if !outcome.raw {
        value = json!({"bounds": bounds, "report": value});
        if cli.timings {
            value["timings"] = json!({"total_ms": start.elapsed().as_secs_f64() * 1e3});
        }
    }
    let text = serde_json::to_string_pretty(&value).expect("reports serialize") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(if outcome.positive { 0 } else { 1 })
}
