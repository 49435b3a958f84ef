//! Enumeration of natural transformations `V → X`.
//!
//! A map is determined by the images of the nondegenerate cells of `V`; the
//! image of `e^*(y)` is forced to be `e^*(F y)`. An assignment is natural iff
//! for every nondegenerate `x` at `S` and every `h: R → S`, writing
//! `h^*(x) = e^*(y)`, we have `h^*(F x) = e^*(F y)`. Every morphism of the site
//! is checked, not only faces and degeneracies.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

use super::{Presheaf, PresheafMap};

#[derive(Clone, Copy, Debug)]
struct Check {
    h: u32,
    e: u32,
}

/// Search order and constraints for maps out of a fixed presheaf.
#[derive(Debug)]
pub(crate) struct Plan {
    vars: Vec<(u32, u32)>,
    var_of: FxHashMap<(u32, u32), usize>,
    // unary[a]: constraints h^*(F vars[a]) = e^*(F vars[a])
    unary: Vec<Vec<(u32, u32)>>,
    // forward[a]: (b, check) with b > a, meaning h^*(F vars[b]) = e^*(F vars[a])
    forward: Vec<Vec<(usize, Check)>>,
}

impl Plan {
    fn build(v: &Presheaf) -> Result<Plan> {
        let s = v.site();
        let ez = v.ez()?;
        let mut vars: Vec<(u32, u32)> = (0..s.num_objects() as u32)
            .flat_map(|o| ez.nondegenerate(o).iter().map(move |&x| (o, x)))
            .collect();
        vars.sort_by_key(|&(o, x)| (s.rank(o), o, x));
        let var_of: FxHashMap<(u32, u32), usize> = vars.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut unary = vec![vec![]; vars.len()];
        let mut forward = vec![vec![]; vars.len()];
        for (a, &(o, x)) in vars.iter().enumerate() {
            for &h in s.incoming(o) {
                if s.is_identity(h) {
                    continue;
                }
                let r = s.source(h);
                let (e, y) = ez.decompose(r, v.act(h, x));
                if e == h {
                    continue;
                }
                let b = var_of[&(s.target(e), y)];
                if b == a {
                    unary[a].push((h, e));
                } else if b < a {
                    forward[b].push((a, Check { h, e }));
                } else {
                    forward[a].push((b, Check { h: e, e: h }));
                }
            }
        }
        Ok(Plan {
            vars,
            var_of,
            unary,
            forward,
        })
    }
}

type Filter<'a> = Box<dyn Fn(u32, u32, u32) -> bool + 'a>;

/// Builder for an enumeration of maps `V → X` in deterministic order, with
/// optional prescribed values and candidate filters.
pub struct MapSearch<'a> {
    v: Arc<Presheaf>,
    x: Arc<Presheaf>,
    plan: Arc<Plan>,
    required: Vec<Vec<(u32, u32)>>,
    filter: Option<Filter<'a>>,
    infeasible: bool,
}

impl<'a> MapSearch<'a> {
    pub fn new(v: &Arc<Presheaf>, x: &Arc<Presheaf>) -> Result<MapSearch<'a>> {
        if !Arc::ptr_eq(v.site(), x.site()) {
            return Err(Error::Invalid("presheaves live on different sites".into()));
        }
        let plan = match v.plan.get() {
            Some(p) => p.clone(),
            None => {
                let p = Arc::new(Plan::build(v)?);
                v.plan.get_or_init(|| p).clone()
            }
        };
        let required = vec![vec![]; plan.vars.len()];
        Ok(MapSearch {
            v: v.clone(),
            x: x.clone(),
            plan,
            required,
            filter: None,
            infeasible: false,
        })
    }

    /// Only maps sending `el ∈ V(o)` to `value ∈ X(o)`.
    pub fn require(mut self, o: u32, el: u32, value: u32) -> Self {
        if value as usize >= self.x.size(o) {
            self.infeasible = true;
            return self;
        }
        let ez = self.v.ez().expect("plan exists, so the decomposition does");
        let (e, y) = ez.decompose(o, el);
        let var = self.plan.var_of[&(self.v.site().target(e), y)];
        if !self.required[var].contains(&(e, value)) {
            self.required[var].push((e, value));
        }
        self
    }

    /// Only maps whose value `z` on each nondegenerate cell `y` at `o`
    /// satisfies `keep(o, y, z)`.
    pub fn filter(mut self, keep: impl Fn(u32, u32, u32) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(keep));
        self
    }

    /// Candidate values of every variable under the unary constraints.
    fn initial_domains(&self) -> Vec<Vec<u32>> {
        let x = &self.x;
        self.plan
            .vars
            .iter()
            .enumerate()
            .map(|(a, &(o, y))| {
                (0..x.size(o) as u32)
                    .filter(|&z| self.required[a].iter().all(|&(e, value)| x.act(e, z) == value))
                    .filter(|&z| self.plan.unary[a].iter().all(|&(h, e)| x.act(h, z) == x.act(e, z)))
                    .filter(|&z| self.filter.as_ref().is_none_or(|f| f(o, y, z)))
                    .collect()
            })
            .collect()
    }

    fn search(&self, visit: &mut dyn FnMut(&[u32]) -> bool) {
        if self.infeasible {
            return;
        }
        let mut domains = self.initial_domains();
        if domains.iter().any(Vec::is_empty) {
            return;
        }
        let mut assign = vec![0u32; self.plan.vars.len()];
        let mut trail = Vec::new();
        self.step(0, &mut assign, &mut domains, &mut trail, visit);
    }

    // Forward checking: assigning a variable prunes the domains of the later
    // variables constrained by it, and a wiped-out domain rejects the value.
    fn step(
        &self,
        a: usize,
        assign: &mut Vec<u32>,
        domains: &mut Vec<Vec<u32>>,
        trail: &mut Vec<(usize, Vec<u32>)>,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if a == assign.len() {
            return visit(assign);
        }
        let x = &self.x;
        let candidates = domains[a].clone();
        for z in candidates {
            assign[a] = z;
            let mark = trail.len();
            let mut wiped = false;
            for &(b, c) in &self.plan.forward[a] {
                let want = x.act(c.e, z);
                let kept: Vec<u32> = domains[b].iter().copied().filter(|&w| x.act(c.h, w) == want).collect();
                if kept.len() != domains[b].len() {
                    let old = std::mem::replace(&mut domains[b], kept);
                    trail.push((b, old));
                }
                if domains[b].is_empty() {
                    wiped = true;
                    break;
                }
            }
            let go_on = wiped || self.step(a + 1, assign, domains, trail, visit);
            while trail.len() > mark {
                let (b, old) = trail.pop().expect("trail entry");
                domains[b] = old;
            }
            if !go_on {
                return false;
            }
        }
        true
    }

    fn expand(&self, assign: &[u32]) -> PresheafMap {
        let (v, x) = (&self.v, &self.x);
        let s = v.site();
        let ez = v.ez().expect("plan exists");
        let comp = (0..s.num_objects() as u32)
            .map(|o| {
                (0..v.size(o) as u32)
                    .map(|el| {
                        let (e, y) = ez.decompose(o, el);
                        x.act(e, assign[self.plan.var_of[&(s.target(e), y)]])
                    })
                    .collect()
            })
            .collect();
        PresheafMap::new_unchecked(v.clone(), x.clone(), comp)
    }

    /// Visits maps in order until `visit` returns `false`.
    pub fn for_each(&self, mut visit: impl FnMut(&PresheafMap) -> bool) {
        self.search(&mut |assign| visit(&self.expand(assign)));
    }

    pub fn collect(&self, limit: Option<usize>) -> Vec<PresheafMap> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(m.clone());
            limit.is_none_or(|l| out.len() < l)
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.search(&mut |_| {
            n += 1;
            true
        });
        n
    }

    pub fn first(&self) -> Option<PresheafMap> {
        self.collect(Some(1)).pop()
    }
}

/// All natural transformations `V → X`.
pub fn enumerate_maps(v: &Arc<Presheaf>, x: &Arc<Presheaf>) -> Result<Vec<PresheafMap>> {
    Ok(MapSearch::new(v, x)?.collect(None))
}
