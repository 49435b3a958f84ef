use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use theta_cells::ncat::compose_maps;
use theta_cells::site::{Bounds, Site};
use theta_cells::theta::{delta_bridge, enumerate_objects, Table, Theta, ThetaMorphism};

fn theta2() -> &'static Theta {
    static T: OnceLock<Theta> = OnceLock::new();
    T.get_or_init(|| Theta::new(2))
}

fn site22() -> &'static Arc<Site> {
    static S: OnceLock<Arc<Site>> = OnceLock::new();
    S.get_or_init(|| Site::theta(Arc::new(Theta::new(2)), Bounds::new(2, 2)).unwrap())
}

fn tables() -> &'static [Table] {
    static T: OnceLock<Vec<Table>> = OnceLock::new();
    T.get_or_init(|| enumerate_objects(2, 2))
}

fn pick(s: &Table, t: &Table, i: usize) -> ThetaMorphism {
    let hom = theta2().hom(s, t).unwrap();
    hom[i % hom.len()].clone()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn tables_are_counted_by_an_independent_recursion() {
    // tables of width m and dimension <= n: strings i_1..i_m with bottoms
    // i'_k < min(i_k, i_{k+1}), counted directly
    fn count(n: usize, w: usize) -> usize {
        let mut total = 0;
        for m in 1..=w {
            let tops = (0..=n).collect::<Vec<_>>();
            let mut rows: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..m {
                rows = rows
                    .into_iter()
                    .flat_map(|r| tops.iter().map(move |&x| [r.clone(), vec![x]].concat()))
                    .collect();
            }
            for top in rows {
                let mut ways = 1;
                for k in 0..m - 1 {
                    ways *= top[k].min(top[k + 1]);
                }
                total += ways;
            }
        }
        total
    }
    for n in 0..=3 {
        for w in 1..=3 {
            assert_eq!(enumerate_objects(n, w).len(), count(n, w), "n = {n}, width {w}");
        }
    }
}

#[test]
fn no_table_has_a_non_identity_automorphism() {
    for t in tables() {
        let autos: Vec<_> = theta2().hom(t, t).unwrap().into_iter().filter(|f| f.is_mono()).collect();
        assert_eq!(autos.len(), 1, "{t}");
        assert!(autos[0].is_identity());
    }
}

#[test]
fn boundary_monos_are_the_proper_monos_of_the_site() {
    let site = site22();
    for t in tables() {
        let o = site.table(t).unwrap();
        let monos = theta2().boundary_monos(t).unwrap();
        let from_site = (0..site.num_objects() as u32)
            .filter(|&s| s != o)
            .flat_map(|s| site.hom(s, o).iter().copied())
            .filter(|&f| site.is_mono(f))
            .count();
        assert_eq!(monos.len(), from_site, "{t}");
        assert!(monos.iter().all(|m| m.is_mono() && m.source != *t));
    }
}

#[test]
fn spine_legs_match_the_table() {
    for t in tables() {
        let legs = theta2().spine_inclusions(t).unwrap();
        assert_eq!(legs.globes.len(), t.width());
        assert_eq!(legs.overlaps.len(), t.width() - 1);
        for (k, g) in legs.globes.iter().enumerate() {
            assert_eq!(g.source, Table::disk(t.top[k]));
            assert!(g.is_mono());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_homs_are_binomial(m in 0usize..=5, k in 0usize..=5) {
        let theta = Theta::new(1);
        let n = theta.hom(&delta_bridge(m), &delta_bridge(k)).unwrap().len();
        prop_assert_eq!(n, binomial(m + k + 1, m + 1));
    }

    #[test]
    fn composition_is_associative(a in 0usize..8, b in 0usize..8, c in 0usize..8, d in 0usize..8, i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let t = tables();
        let f = pick(&t[a], &t[b], i);
        let g = pick(&t[b], &t[c], j);
        let h = pick(&t[c], &t[d], k);
        prop_assert_eq!(h.after(&g).after(&f), h.after(&g.after(&f)));
        let id = theta2().identity(&t[b]).unwrap();
        prop_assert_eq!(id.after(&f), f.clone());
        prop_assert_eq!(g.after(&id), g);
    }

    #[test]
    fn factorization_is_split_epi_then_mono(a in 0usize..8, b in 0usize..8, i in any::<usize>()) {
        let t = tables();
        let f = pick(&t[a], &t[b], i);
        let (e, m) = theta2().ez_factorize(&f).unwrap();
        prop_assert!(theta2().is_split_epi(&e).unwrap());
        prop_assert!(m.is_mono());
        prop_assert_eq!(e.is_identity(), f.is_mono());
        prop_assert_eq!(m.after(&e), f);
    }

    #[test]
    fn site_composition_matches_cell_maps(a in 0u32..8, b in 0u32..8, c in 0u32..8, i in any::<usize>(), j in any::<usize>()) {
        let s = site22();
        let (h1, h2) = (s.hom(a, b), s.hom(b, c));
        let (f, g) = (h1[i % h1.len()], h2[j % h2.len()]);
        let gf = s.compose(g, f);
        prop_assert_eq!((s.source(gf), s.target(gf)), (a, c));
        prop_assert_eq!(s.cell_map(gf), &compose_maps(s.cell_map(g), s.cell_map(f)));
    }

    #[test]
    fn table_text_round_trips(a in 0usize..8) {
        let t = &tables()[a];
        prop_assert_eq!(&t.to_string().parse::<Table>().unwrap(), t);
        let json = serde_json::to_string(t).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Table>(&json).unwrap(), t);
    }
}
