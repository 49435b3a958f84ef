//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line; exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use theta_cells::boxcalc::{self, Bisite};
use theta_cells::lifting::{self, check_trivial_fibration, nerve_to_point};
use theta_cells::ncat::{
    build_interval, disk, enumerate_functors, evaluation_at, internal_hom, is_fully_faithful, simply_connected_groupoid, unique_lift,
    FiniteNCat, LiftClass, NFunctor,
};
use theta_cells::presheaf::{self, segal_check};
use theta_cells::site::{Bounds, Site};
use theta_cells::theta::{delta_bridge, enumerate_objects, Table, Theta};
use theta_cells::Result;

type Check = fn() -> Result<(bool, String)>;

/// Order-preserving maps `{0..m} → {0..k}` by brute force over all functions.
fn monotone_maps(m: usize, k: usize) -> usize {
    let total = (k + 1).pow(m as u32 + 1);
    (0..total)
        .filter(|&code| {
            let values: Vec<usize> = (0..=m).map(|i| code / (k + 1).pow(i as u32) % (k + 1)).collect();
            values.windows(2).all(|w| w[0] <= w[1])
        })
        .count()
}

fn simplex_homs() -> Result<(bool, String)> {
    let theta = Theta::new(1);
    let mut bad = vec![];
    for m in 0..=4 {
        for k in 0..=4 {
            let got = theta.hom(&delta_bridge(m), &delta_bridge(k))?.len();
            if got != monotone_maps(m, k) {
                bad.push(format!("[{m}]->[{k}]: {got} vs {}", monotone_maps(m, k)));
            }
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            "25 hom-sets match the monotone-map count".into()
        } else {
            bad.join(", ")
        },
    ))
}

/// Counts split-epi-then-mono factorizations by trying every middle table.
fn ez_unique() -> Result<(bool, String)> {
    let theta = Theta::new(2);
    let tables = enumerate_objects(2, 2);
    let (mut morphisms, mut bad) = (0, 0);
    for s in &tables {
        for t in &tables {
            for f in theta.hom(s, t)? {
                morphisms += 1;
                let mut found = 0;
                for u in &tables {
                    let monos: Vec<_> = theta.hom(u, t)?.into_iter().filter(|i| i.is_mono()).collect();
                    for p in theta.hom(s, u)? {
                        if !theta.is_split_epi(&p)? {
                            continue;
                        }
                        found += monos.iter().filter(|i| i.after(&p) == f).count();
                    }
                }
                if found != 1 {
                    bad += 1;
                }
            }
        }
    }
    Ok((bad == 0, format!("{morphisms} morphisms, {bad} without a unique factorization")))
}

fn segal() -> Result<(bool, String)> {
    let site = Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 3))?;
    let cats = [
        ("J_2", build_interval(2)?.cat),
        ("L(D_2)", disk(2, 2).0),
        ("J", simply_connected_groupoid(1).promote(2)),
    ];
    let mut failures = vec![];
    for (name, c) in cats {
        let c = Arc::new(c);
        for o in 0..site.num_objects() as u32 {
            if !segal_check(&site, &c, o)? {
                failures.push(format!("{name} at {}", site.object(o)));
            }
        }
    }
    let detail = format!("3 categories x {} tables, failures: {:?}", site.num_objects(), failures);
    Ok((failures.is_empty(), detail))
}

fn boundary_points() -> Result<(bool, String)> {
    let site = Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 2))?;
    let p = site.point();
    let mut bad = vec![];
    for o in 0..site.num_objects() as u32 {
        if o == p {
            continue;
        }
        let b = presheaf::boundary(&site, o);
        if b.presheaf.size(p) != b.inclusion.target.size(p) {
            bad.push(site.object(o).to_string());
        }
    }
    Ok((
        bad.is_empty(),
        format!("{} tables checked, mismatches: {bad:?}", site.num_objects() - 1),
    ))
}

fn counterexample() -> Result<(bool, String)> {
    let r = lifting::verify_counterexample(2, 2, Bounds::new(2, 2), 1)?;
    let ok = r.holds
        && r.witness.is_some()
        && r.no_lift_at.iter().all(|(_, v)| *v)
        && r.named_square_no_lift
        && r.truncation_is_iso_fibration
        && r.anodyne.holds;
    let detail = format!(
        "NoLift at {} bound levels, named square {}, t_r(j_2) iso-fibration {}, anodyne lifts {}",
        r.no_lift_at.len(),
        r.named_square_no_lift,
        r.truncation_is_iso_fibration,
        r.anodyne.holds
    );
    Ok((ok, detail))
}

fn positive_trivial_fibrations() -> Result<(bool, String)> {
    let site = Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 2))?;
    let j = check_trivial_fibration(&nerve_to_point(&site, &Arc::new(simply_connected_groupoid(1).promote(2)))?)?;
    let g = check_trivial_fibration(&nerve_to_point(&site, &Arc::new(simply_connected_groupoid(2).promote(2)))?)?;
    Ok((j.holds && g.holds, format!("N(J): {}; N(G_2): {}", j.verdict, g.verdict)))
}

fn evaluation_fully_faithful() -> Result<(bool, String)> {
    let j = Arc::new(simply_connected_groupoid(1).promote(2));
    let mut parts = vec![];
    let mut ok = true;
    for (name, c) in [("L(D_1)", disk(1, 2).0), ("J_2", build_interval(2)?.cat)] {
        let h = internal_hom(&j, &Arc::new(c))?;
        for x in 0..2 {
            let ff = is_fully_faithful(&evaluation_at(&h, x));
            ok &= ff;
            parts.push(format!("{name} at {x}: {ff}"));
        }
    }
    Ok((ok, parts.join(", ")))
}

/// Squares with a bijective-on-objects left leg and a fully faithful right
/// leg, over every pair from a pool of small categories.
fn squares_in(cats: &[Arc<FiniteNCat>]) -> Result<(usize, usize, usize, usize)> {
    let (mut lefts, mut rights): (Vec<NFunctor>, Vec<NFunctor>) = (vec![], vec![]);
    for a in cats {
        for b in cats {
            for f in enumerate_functors(a, b)? {
                if f.is_bijective_on_objects() {
                    lefts.push(f.clone());
                }
                if is_fully_faithful(&f) {
                    rights.push(f);
                }
            }
        }
    }
    let (mut squares, mut other) = (0, 0);
    for u in &lefts {
        for v in &rights {
            for bottom in enumerate_functors(&u.target, &v.target)? {
                let bu = bottom.compose(u)?;
                for top in enumerate_functors(&u.source, &v.source)? {
                    if v.compose(&top)?.map != bu.map {
                        continue;
                    }
                    squares += 1;
                    if !matches!(unique_lift(u, v, &top, &bottom)?, LiftClass::UniqueLift(_)) {
                        other += 1;
                    }
                }
            }
        }
    }
    Ok((lefts.len(), rights.len(), squares, other))
}

fn unique_lifts() -> Result<(bool, String)> {
    let pt = FiniteNCat::terminal(1);
    let ones = vec![
        FiniteNCat::empty(1),
        pt.clone(),
        pt.coproduct(&pt)?,
        disk(1, 1).0,
        simply_connected_groupoid(1),
        Theta::new(1).free_ncat(&"1 1 / 0".parse::<Table>()?)?.as_ref().clone(),
    ];
    let twos = vec![
        FiniteNCat::terminal(2),
        disk(1, 2).0,
        disk(2, 2).0,
        simply_connected_groupoid(1).promote(2),
        build_interval(2)?.cat,
    ];
    let mut ok = true;
    let mut parts = vec![];
    for (level, pool) in [(1, ones), (2, twos)] {
        let pool: Vec<_> = pool.into_iter().map(Arc::new).collect();
        let (l, r, squares, other) = squares_in(&pool)?;
        ok &= squares >= 20 && other == 0;
        parts.push(format!(
            "level {level}: {l} left legs, {r} right legs, {squares} squares, {other} without a unique lift"
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn orthogonality() -> Result<(bool, String)> {
    let bs = Bisite::bounded(2, Bounds::new(2, 1), 2)?;
    let sample = boxcalc::orthogonality_sample(&bs, 7, 50)?;
    let t = boxcalc::named_triple(&bs)?;
    let named = boxcalc::orthogonality_equivalence_test(&bs, &t.u, &t.v, &t.f)?;
    let ok = sample.samples.len() >= 50 && sample.agree && named.agree;
    let detail = format!(
        "{} triples agree {} ({} with lifts), named instance agrees {}",
        sample.samples.len(),
        sample.agree,
        sample.positive,
        named.agree
    );
    Ok((ok, detail))
}

fn not_2qcat() -> Result<(bool, String)> {
    let r = lifting::check_not_2qcat(Bounds::new(2, 2))?;
    let ok = r.holds && r.witness.is_some() && r.left_is_mono;
    Ok((
        ok,
        format!(
            "{}; left map mono {}; counts at (0) {:?}",
            r.verdict, r.left_is_mono, r.counts_at_point
        ),
    ))
}

fn resolution() -> Result<(bool, String)> {
    let r = boxcalc::resolution_check(2, 2, Bounds::new(2, 2))?;
    Ok((
        r.holds && r.endpoints_mono,
        format!("{}; endpoints mono {}", r.verdict, r.endpoints_mono),
    ))
}

fn counting_goldens() -> Result<(bool, String)> {
    let objects = enumerate_objects(2, 2).len();
    let free = Theta::new(2).free_ncat(&Table::disk(2))?.cell_counts();
    let j2 = Arc::new(build_interval(2)?.cat);
    let site = Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 2))?;
    let at_arrow = presheaf::nerve(&site, &j2)?.size(site.table(&Table::disk(1))?);
    let ok = objects == 8 && free == [2, 4, 5] && j2.cell_counts() == [2, 4, 6] && at_arrow == 4;
    Ok((
        ok,
        format!(
            "objects {objects}, free (2) {free:?}, J_2 {:?}, N(J_2)((1)) {at_arrow}",
            j2.cell_counts()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, u64); 12] = [
        ("simplex hom-sets equal monotone-map counts", simplex_homs, 10),
        ("unique split-epi/mono factorization in bounded Θ_2", ez_unique, 60),
        ("Segal condition for J_2, L(D_2), J up to width 3", segal, 300),
        ("boundary and representable agree at the point", boundary_points, 30),
        ("N(j_2) fails to lift against δ_((1,1);(0))", counterexample, 120),
        ("N(J) and N(G_2) are trivial fibrations at (2,2)", positive_trivial_fibrations, 120),
        ("evaluation Hom(J, C) -> C is fully faithful", evaluation_fully_faithful, 60),
        (
            "bijective-on-objects maps lift uniquely against fully faithful ones",
            unique_lifts,
            120,
        ),
        ("three-way orthogonality agreement", orthogonality, 300),
        ("N_2(J_2) is not a 2-quasi-category", not_2qcat, 120),
        ("N(G_k) resolution conditions at (2,2)", resolution, 120),
        ("counting goldens", counting_goldens, 10),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (ok, detail) = match result {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        let time = format!("{:.2}s of {limit}s", elapsed.as_secs_f64());
        println!(
            "criterion {:>2} {}: {name} ({time}); {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
