//! Seeded generators for L-ordered sets, closure spaces and relations.
//! Every emitted structure is re-validated before it is returned.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::approx::{enumerate_scott_maps, sample_scott_maps, theta_of, ApproxRelation};
use crate::closure::{closure_of_domain, ClosureSpace};
use crate::domain::is_continuous;
use crate::error::{Error, Result};
use crate::fixtures::fixture;
use crate::limits::Limits;
use crate::order::LOrderedSet;
use crate::quantale::{Elem, FiniteQuantale};

/// Fixtures cycled through when the configured quantale is `mixed`.
pub const MIXED: &[&str] = &["boolean", "lukasiewicz-3", "goedel-3"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    /// A fixture id, or `mixed` to cycle through [`MIXED`] per instance.
    pub quantale: String,
    pub min_size: usize,
    pub max_size: usize,
    pub instances: usize,
    pub limits: Limits,
    /// Largest candidate space enumerated exhaustively by equivalence checks.
    pub budget: u64,
    /// Rejection-sampling attempts per generated structure.
    pub attempts: usize,
    /// Generated spaces whose `𝔠(X)` exceeds this many members are rejected.
    pub max_dir_closed: usize,
    /// Worker threads; never part of serialized reports.
    #[serde(skip, default = "one")]
    pub workers: usize,
}

fn one() -> usize {
    1
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 42,
            quantale: "mixed".into(),
            min_size: 1,
            max_size: 4,
            instances: 30,
            limits: Limits::default(),
            budget: 1 << 16,
            attempts: 200,
            max_dir_closed: 8,
            workers: 1,
        }
    }
}

impl GenConfig {
    pub fn quantale_id(&self, instance: usize) -> &str {
        if self.quantale == "mixed" {
            MIXED[instance % MIXED.len()]
        } else {
            &self.quantale
        }
    }

    pub fn quantale_for(&self, instance: usize) -> Result<Arc<FiniteQuantale>> {
        Ok(Arc::new(fixture(self.quantale_id(instance))?))
    }

    /// Quantales used by the run, each listed once.
    pub fn quantale_ids(&self) -> Vec<String> {
        if self.quantale == "mixed" {
            MIXED.iter().map(|s| s.to_string()).collect()
        } else {
            vec![self.quantale.clone()]
        }
    }

    pub fn size(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(self.min_size.max(1)..=self.max_size.max(self.min_size.max(1)))
    }
}

fn above_unit(q: &FiniteQuantale) -> Vec<Elem> {
    q.elements().filter(|&a| q.at_least_unit(a)).collect()
}

fn below_unit(q: &FiniteQuantale) -> Vec<Elem> {
    q.elements().filter(|&a| !q.at_least_unit(a)).collect()
}

/// A reflexive, ⊗-transitive degree table on `n` points whose `≥ u` part
/// contains a random classical partial order. Antisymmetry is not enforced.
pub fn gen_preorder_table(rng: &mut ChaCha8Rng, q: &FiniteQuantale, n: usize) -> Vec<Elem> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pos = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        pos[p] = i;
    }
    let density = rng.gen_range(0.2..0.7);
    let fuzz = [0.0, 0.35, 0.7][rng.gen_range(0..3)];
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = x == y || (pos[x] < pos[y] && rng.gen_bool(density));
        }
    }
    for k in 0..n {
        for x in 0..n {
            for y in 0..n {
                if leq[x * n + k] && leq[k * n + y] {
                    leq[x * n + y] = true;
                }
            }
        }
    }
    let high = above_unit(q);
    let low = below_unit(q);
    let mut e: Vec<Elem> = (0..n * n)
        .map(|k| {
            if leq[k] {
                *high.choose(rng).expect("u ≤ 1")
            } else if !low.is_empty() && rng.gen_bool(fuzz) {
                *low.choose(rng).expect("nonempty")
            } else {
                q.bottom()
            }
        })
        .collect();
    repair_transitivity(q, n, &mut e);
    e
}

/// Raises degrees until `e(x,y) ⊗ e(y,z) ≤ e(x,z)` everywhere.
pub fn repair_transitivity(q: &FiniteQuantale, n: usize, e: &mut [Elem]) {
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = q.tensor(e[x * n + y], e[y * n + z]);
                    if !q.leq(v, e[x * n + z]) {
                        e[x * n + z] = q.join(e[x * n + z], v);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

fn point_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn budget_error(what: &str, attempts: usize) -> Error {
    Error::Budget(format!("no {what} found within {attempts} attempts"))
}

pub fn gen_lordered_set(rng: &mut ChaCha8Rng, q: &Arc<FiniteQuantale>, n: usize, attempts: usize) -> Result<LOrderedSet> {
    for _ in 0..attempts {
        let e = gen_preorder_table(rng, q, n);
        let antisymmetric = (0..n).all(|x| {
            (0..n).all(|y| x == y || !q.at_least_unit(q.meet(e[x * n + y], e[y * n + x])))
        });
        if antisymmetric {
            return LOrderedSet::new(q.clone(), point_labels(n), e);
        }
    }
    Err(budget_error("L-ordered set", attempts))
}

pub fn gen_ldcpo(rng: &mut ChaCha8Rng, q: &Arc<FiniteQuantale>, n: usize, limits: &Limits, attempts: usize) -> Result<LOrderedSet> {
    for _ in 0..attempts {
        let p = gen_lordered_set(rng, q, n, attempts)?.with_limits(*limits);
        if p.is_ldcpo()?.passed {
            return Ok(p);
        }
    }
    Err(budget_error("L-dcpo", attempts))
}

pub fn gen_continuous(rng: &mut ChaCha8Rng, q: &Arc<FiniteQuantale>, n: usize, limits: &Limits, attempts: usize) -> Result<LOrderedSet> {
    for _ in 0..attempts {
        let p = gen_ldcpo(rng, q, n, limits, attempts)?;
        if is_continuous(&p)?.passed {
            return Ok(p);
        }
    }
    Err(budget_error("continuous L-dcpo", attempts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceRoute {
    /// `C_x = ⇓x` on a random continuous L-dcpo.
    Domain,
    /// Point closures from a random L-preorder; always an L-closure space.
    Lclosure,
    /// Random point closures kept only when GC2 and IT1–IT3 hold.
    Rejection,
}

/// A validated interpolative space with `|𝔠(X)| ≤ cfg.max_dir_closed`.
/// The domain route falls back to rejection sampling when it runs dry.
pub fn gen_interpolative_space(
    rng: &mut ChaCha8Rng,
    q: &Arc<FiniteQuantale>,
    n: usize,
    route: SpaceRoute,
    cfg: &GenConfig,
) -> Result<ClosureSpace> {
    for _ in 0..cfg.attempts {
        let candidate = match route {
            SpaceRoute::Domain => match gen_continuous(rng, q, n, &cfg.limits, cfg.attempts) {
                Ok(p) => closure_of_domain(&p)?,
                Err(Error::Budget(_)) => match rejection_candidate(rng, q, n, cfg)? {
                    Some(s) => s,
                    None => continue,
                },
                Err(e) => return Err(e),
            },
            SpaceRoute::Lclosure => {
                let e = gen_preorder_table(rng, q, n);
                let c = (0..n).map(|x| (0..n).map(|y| e[y * n + x]).collect()).collect();
                ClosureSpace::point_generated(q.clone(), point_labels(n), c)?.with_limits(cfg.limits)
            }
            SpaceRoute::Rejection => match rejection_candidate(rng, q, n, cfg)? {
                Some(s) => s,
                None => continue,
            },
        };
        if !candidate.validate_generalized()?.passed || !candidate.is_interpolative()?.passed {
            continue;
        }
        if route == SpaceRoute::Lclosure && !candidate.is_l_closure_space()?.passed {
            continue;
        }
        if candidate.dir_closed_members()?.len() <= cfg.max_dir_closed {
            return Ok(candidate);
        }
    }
    Err(budget_error("interpolative space", cfg.attempts))
}

fn rejection_candidate(
    rng: &mut ChaCha8Rng,
    q: &Arc<FiniteQuantale>,
    n: usize,
    cfg: &GenConfig,
) -> Result<Option<ClosureSpace>> {
    let elems: Vec<Elem> = q.elements().collect();
    let high: Vec<Elem> = q.elements().filter(|&a| q.at_least_unit(a)).collect();
    let c: Vec<Vec<Elem>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if x == y {
                        *high.choose(rng).expect("top is at least the unit")
                    } else if rng.gen_bool(0.5) {
                        q.bottom()
                    } else {
                        *elems.choose(rng).expect("nonempty")
                    }
                })
                .collect()
        })
        .collect();
    let s = ClosureSpace::point_generated(q.clone(), point_labels(n), c)?.with_limits(cfg.limits);
    Ok((s.validate_generalized()?.passed && s.is_interpolative()?.passed).then_some(s))
}

/// `Θ_ψ` for a random Scott continuous `ψ : 𝔠(X) → 𝔠(Y)`; exhaustive pool
/// when it fits in the budget, sampled otherwise.
pub fn gen_approx_relation(
    rng: &mut ChaCha8Rng,
    xs: &Arc<ClosureSpace>,
    ys: &Arc<ClosureSpace>,
    cfg: &GenConfig,
) -> Result<Option<ApproxRelation>> {
    let pool = match enumerate_scott_maps(xs, ys, cfg.budget)? {
        Some(all) => all,
        None => sample_scott_maps(xs, ys, rng, cfg.attempts)?,
    };
    match pool.choose(rng) {
        None => Ok(None),
        Some(psi) => Ok(Some(theta_of(psi)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn boolean_orders_are_posets() {
        let q = Arc::new(fixture("boolean").unwrap());
        let mut r = rng(3);
        for n in 1..=5 {
            let p = gen_lordered_set(&mut r, &q, n, 50).unwrap();
            assert!(p.table().iter().all(|&v| v == q.bottom() || v == q.top()));
        }
    }

    #[test]
    fn same_seed_same_structure() {
        let q = Arc::new(fixture("lukasiewicz-3").unwrap());
        let a = gen_lordered_set(&mut rng(7), &q, 3, 50).unwrap();
        let b = gen_lordered_set(&mut rng(7), &q, 3, 50).unwrap();
        assert_eq!(a, b);
        let cfg = GenConfig::default();
        let s = gen_interpolative_space(&mut rng(9), &q, 3, SpaceRoute::Lclosure, &cfg).unwrap();
        let t = gen_interpolative_space(&mut rng(9), &q, 3, SpaceRoute::Lclosure, &cfg).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn routes_produce_valid_spaces() {
        let cfg = GenConfig::default();
        for id in ["boolean", "lukasiewicz-3", "goedel-3"] {
            let q = Arc::new(fixture(id).unwrap());
            let mut r = rng(11);
            for route in [SpaceRoute::Domain, SpaceRoute::Lclosure, SpaceRoute::Rejection] {
                let s = gen_interpolative_space(&mut r, &q, 3, route, &cfg).unwrap();
                assert!(s.is_interpolative().unwrap().passed);
                if route == SpaceRoute::Lclosure {
                    assert!(s.is_l_closure_space().unwrap().passed);
                }
            }
        }
    }

    #[test]
    fn relations_are_approximable() {
        let cfg = GenConfig::default();
        let q = Arc::new(fixture("goedel-3").unwrap());
        let mut r = rng(5);
        let x = Arc::new(gen_interpolative_space(&mut r, &q, 2, SpaceRoute::Lclosure, &cfg).unwrap());
        let y = Arc::new(gen_interpolative_space(&mut r, &q, 2, SpaceRoute::Domain, &cfg).unwrap());
        let rel = gen_approx_relation(&mut r, &x, &y, &cfg).unwrap().unwrap();
        assert!(rel.validate().unwrap().passed);
    }
}
