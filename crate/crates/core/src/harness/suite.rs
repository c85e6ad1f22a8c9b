//! Named verification suites.
//!
//! Each instance draws from its own ChaCha stream (`seed`, instance index),
//! so results do not depend on scheduling. Instances run on a dedicated
//! rayon pool and are reported in index order. Timings live only in the
//! text rendering; the JSON document is a pure function of the config.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::{check_equivalence_suite, compose, identity_relation, psi_of, ApproxRelation};
use crate::check::CheckResult;
use crate::closure::{
    check_approximants, check_dense_isomorphism, closure_of_algebraic, closure_of_domain, is_dense_subspace,
    restrict_to_subspace, ClosureSpace,
};
use crate::domain::{compactness_cross_check, compact_elements, is_algebraic, is_continuous, k_values, way_below_alt, way_below_table};
use crate::error::{Error, Result};
use crate::harness::gen::{gen_approx_relation, gen_interpolative_space, gen_ldcpo, gen_lordered_set, GenConfig, SpaceRoute};
use crate::harness::oracle::{classical_ideal_lattice, classical_oracle};
use crate::io::{lordered_doc, space_doc, Document};
use crate::lsubset::{pointwise_leq, sub_degree};
use crate::order::{check_iso_via, is_scott_continuous, validate_lorder, LOrderedSet};
use crate::quantale::{check_residuation_laws, validate_quantale, Elem};

pub const SUITES: &[&str] = &["core", "oracle", "waybelow", "rep1", "rep2", "rep3", "dense", "equiv"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: String,
    #[serde(flatten)]
    pub result: CheckResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    pub quantale: String,
    pub descriptor: String,
    /// Replayable serialization of the generated structures.
    pub instance: Vec<Document>,
    pub checks: Vec<PropertyCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sampled: Vec<String>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.result.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertySummary {
    pub property: String,
    pub passed: usize,
    pub failed: usize,
    pub sampled: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// Everything checked passed but some properties were only sampled.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: GenConfig,
    pub status: SuiteStatus,
    pub properties: Vec<PropertySummary>,
    pub instances: Vec<InstanceReport>,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            SuiteStatus::Pass => 0,
            SuiteStatus::Fail => 1,
            SuiteStatus::Sampled => 3,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = (&InstanceReport, &PropertyCheck)> {
        self.instances
            .iter()
            .flat_map(|i| i.checks.iter().filter(|c| !c.result.passed).map(move |c| (i, c)))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {} seed={} quantale={} instances={}: {}",
            self.suite,
            self.config.seed,
            self.config.quantale,
            self.instances.len(),
            match self.status {
                SuiteStatus::Pass => "PASS",
                SuiteStatus::Fail => "FAIL",
                SuiteStatus::Sampled => "PASS (sampled)",
            }
        );
        for p in &self.properties {
            let _ = writeln!(
                out,
                "  {:<28} pass {:>4}  fail {:>4}{}",
                p.property,
                p.passed,
                p.failed,
                if p.sampled > 0 { format!("  sampled {}", p.sampled) } else { String::new() }
            );
        }
        for (inst, c) in self.failures().take(10) {
            let _ = writeln!(out, "  failure in instance {} ({}): {} {}", inst.index, inst.descriptor, c.property, c.result);
        }
        for (phase, d) in &self.timings {
            let _ = writeln!(out, "  time {phase}: {:.3}s", d.as_secs_f64());
        }
        out
    }
}

struct Ctx {
    checks: Vec<PropertyCheck>,
    docs: Vec<Document>,
    sampled: Vec<String>,
    descriptor: String,
}

impl Ctx {
    fn new() -> Self {
        Ctx {
            checks: Vec::new(),
            docs: Vec::new(),
            sampled: Vec::new(),
            descriptor: String::new(),
        }
    }

    fn check(&mut self, property: &str, result: CheckResult) -> bool {
        let ok = result.passed;
        self.checks.push(PropertyCheck {
            property: property.to_string(),
            result,
        });
        ok
    }

    fn flag(&mut self, property: &str, ok: bool, trace: &str) -> bool {
        self.check(property, CheckResult::from_bool(property, ok, trace))
    }

    fn lorder(&mut self, p: &LOrderedSet) {
        self.docs.push(Document::LOrderedSet(lordered_doc(p)));
    }

    fn space(&mut self, s: &ClosureSpace) {
        self.docs.push(Document::ClosureSpace(space_doc(s)));
    }
}

fn instance_rng(cfg: &GenConfig, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    rng
}

/// Runs a suite on a pool of `cfg.workers` threads.
pub fn run_suite(name: &str, cfg: &GenConfig) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownLabel {
            label: name.to_string(),
            context: format!("suite (known: {})", SUITES.join(", ")),
        });
    }
    let mut cfg = cfg.clone();
    if name == "oracle" && cfg.quantale == "mixed" {
        cfg.quantale = "boolean".into();
    }
    gate(name, &cfg)?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::Budget(format!("cannot start worker pool: {e}")))?;
    let total = if name == "equiv" { cfg.instances + 1 } else { cfg.instances };
    let instances: Vec<InstanceReport> = pool.install(|| {
        (0..total)
            .into_par_iter()
            .map(|i| run_instance(name, &cfg, i))
            .collect()
    });
    let elapsed = start.elapsed();

    let mut props: BTreeMap<String, PropertySummary> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for inst in &instances {
        for c in &inst.checks {
            let e = props.entry(c.property.clone()).or_insert_with(|| {
                order.push(c.property.clone());
                PropertySummary {
                    property: c.property.clone(),
                    passed: 0,
                    failed: 0,
                    sampled: 0,
                }
            });
            if c.result.passed {
                e.passed += 1;
            } else {
                e.failed += 1;
            }
        }
        for s in &inst.sampled {
            if let Some(e) = props.get_mut(s) {
                e.sampled += 1;
            }
        }
    }
    let properties: Vec<PropertySummary> = order.iter().map(|p| props[p].clone()).collect();
    let status = if instances.iter().any(|i| !i.passed()) {
        SuiteStatus::Fail
    } else if instances.iter().any(|i| !i.sampled.is_empty()) {
        SuiteStatus::Sampled
    } else {
        SuiteStatus::Pass
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        config: cfg,
        status,
        properties,
        instances,
        timings: vec![("instances".into(), elapsed)],
    })
}

fn gate(name: &str, cfg: &GenConfig) -> Result<()> {
    for id in cfg.quantale_ids() {
        let q = crate::fixtures::fixture(&id)?;
        if matches!(name, "dense" | "rep3") && !q.is_integral() {
            return Err(Error::NonIntegral(format!("suite {name} on {id} (unit {})", q.label(q.unit()))));
        }
        if name == "oracle" && !(q.size() == 2 && q.is_integral()) {
            return Err(Error::precondition(format!("suite oracle compares against classical orders and needs boolean, not {id}")));
        }
    }
    Ok(())
}

fn run_instance(name: &str, cfg: &GenConfig, index: usize) -> InstanceReport {
    let mut ctx = Ctx::new();
    let quantale = if name == "equiv" && index == 0 {
        "boolean".to_string()
    } else {
        cfg.quantale_id(index).to_string()
    };
    let outcome = match name {
        "core" => core_instance(cfg, index, &mut ctx),
        "oracle" => oracle_instance(cfg, index, &mut ctx),
        "waybelow" => waybelow_instance(cfg, index, &mut ctx),
        "rep1" => rep1_instance(cfg, index, &mut ctx),
        "rep2" => rep2_instance(cfg, index, &mut ctx).map(|_| ()),
        "rep3" => rep3_instance(cfg, index, &mut ctx),
        "dense" => dense_instance(cfg, index, &mut ctx),
        "equiv" if index == 0 => equiv_tiny(cfg, &mut ctx),
        "equiv" => equiv_instance(cfg, index, &mut ctx),
        _ => unreachable!("suite names are checked before dispatch"),
    };
    if let Err(e) = outcome {
        ctx.check("error", CheckResult::fail("error", vec![], e.to_string()));
    }
    InstanceReport {
        index,
        quantale,
        descriptor: ctx.descriptor,
        instance: ctx.docs,
        checks: ctx.checks,
        sampled: ctx.sampled,
    }
}

fn core_instance(cfg: &GenConfig, index: usize, ctx: &mut Ctx) -> Result<()> {
    let q = cfg.quantale_for(index)?;
    let mut rng = instance_rng(cfg, index);
    let def = q.to_def();
    let axioms = validate_quantale(&def, &cfg.limits)?;
    ctx.check("quantale-axioms", axioms.summary("quantale-axioms"));
    ctx.check("residuation-laws", check_residuation_laws(&q).summary("residuation-laws"));

    let n = cfg.size(&mut rng);
    let p = gen_ldcpo(&mut rng, &q, n, &cfg.limits, cfg.attempts)?;
    ctx.descriptor = format!("random L-dcpo on {n} points");
    ctx.lorder(&p);
    let l = p.quantale().clone();
    ctx.check("lorder", validate_lorder(&l, p.labels(), p.table())?.summary("lorder"));
    ctx.check("ldcpo", p.is_ldcpo()?);

    let wb = way_below_table(&p)?;
    let alt_ok = (0..n).all(|x| way_below_alt(&p, x).map(|s| s.values() == wb[x].as_slice()).unwrap_or(false));
    ctx.flag("way-below-forms", alt_ok, "ideal and directed forms of ⇓x differ");
    ctx.flag(
        "way-below-below-down",
        (0..n).all(|x| pointwise_leq(&l, &wb[x], &p.down_values(x))),
        "⇓x is not below ↓x",
    );
    let mut monotone = true;
    for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                for v in 0..n {
                    let lhs = l.tensor(l.tensor(p.degree(a, x), wb[y][x]), p.degree(y, v));
                    monotone &= l.leq(lhs, wb[v][a]);
                }
            }
        }
    }
    ctx.flag("way-below-monotone", monotone, "e(u',x)⊗⇓y(x)⊗e(y,v) exceeds ⇓v(u')");
    ctx.check("compactness-forms", compactness_cross_check(&p)?);

    let cont = is_continuous(&p)?;
    let alg = is_algebraic(&p)?;
    ctx.flag("algebraic-implies-continuous", !alg.passed || cont.passed, "algebraic but not continuous");
    if cont.passed {
        let interp = (0..n).all(|y| {
            (0..n).all(|x| wb[y][x] == l.join_all((0..n).map(|z| l.tensor(wb[y][z], wb[z][x]))))
        });
        ctx.flag("interpolation", interp, "⇓y(x) differs from ⋁_z ⇓y(z)⊗⇓z(x)");
        let identity: Vec<usize> = (0..n).collect();
        let family = LOrderedSet::family_order(l.clone(), &wb)?;
        ctx.flag("way-below-iso", check_iso_via(&identity, &p, &family), "(⇓x, sub) is not isomorphic to P");
    }
    if alg.passed {
        let compact = compact_elements(&p)?;
        let ks: Vec<Vec<Elem>> = (0..n).map(|x| k_values(&p, &compact, x)).collect();
        let identity: Vec<usize> = (0..n).collect();
        let family = LOrderedSet::family_order(l.clone(), &ks)?;
        ctx.flag("k-iso", check_iso_via(&identity, &p, &family), "(k(x), sub) is not isomorphic to P");
    }
    let identity: Vec<usize> = (0..n).collect();
    ctx.check("scott-identity", is_scott_continuous(&identity, &p, &p)?);
    let up_ok = (0..n).all(|x| {
        (0..n).all(|y| p.degree(x, y) == sub_degree(&l, &p.down_values(x), &p.down_values(y)))
    });
    ctx.flag("down-set-embedding", up_ok, "e(x,y) differs from sub(↓x,↓y)");
    Ok(())
}

fn oracle_instance(cfg: &GenConfig, index: usize, ctx: &mut Ctx) -> Result<()> {
    let q = cfg.quantale_for(index)?;
    let mut rng = instance_rng(cfg, index);
    let n = cfg.size(&mut rng);
    let p = gen_lordered_set(&mut rng, &q, n, cfg.attempts)?.with_limits(cfg.limits);
    ctx.descriptor = format!("random poset on {n} points");
    ctx.lorder(&p);
    ctx.check("ldcpo", p.is_ldcpo()?);
    for c in classical_oracle(&p)?.checks {
        let name = c.label.clone();
        ctx.check(&name, c);
    }
    ctx.check("oracle-ideal-lattice", classical_ideal_lattice(&p)?);
    Ok(())
}

fn waybelow_instance(cfg: &GenConfig, index: usize, ctx: &mut Ctx) -> Result<()> {
    let q = cfg.quantale_for(index)?;
    let mut rng = instance_rng(cfg, index);
    let n = cfg.size(&mut rng);
    let p = gen_ldcpo(&mut rng, &q, n, &cfg.limits, cfg.attempts)?;
    ctx.descriptor = format!("random L-dcpo on {n} points");
    ctx.lorder(&p);
    let wb = way_below_table(&p)?;
    for x in 0..n {
        let alt = way_below_alt(&p, x)?;
        if alt.values() != wb[x].as_slice() {
            ctx.check(
                "way-below-forms",
                CheckResult::fail(
                    "way-below-forms",
                    vec![p.label(x).to_string(), p.render(&wb[x]), p.render(alt.values())],
                    "ideal and directed forms of ⇓x differ",
                ),
            );
            return Ok(());
        }
    }
    ctx.check("way-below-forms", CheckResult::pass("way-below-forms"));
    Ok(())
}

/// Index of each value vector among sorted members.
fn index_in(members: &[Vec<Elem>], rows: &[Vec<Elem>]) -> Option<Vec<usize>> {
    rows.iter().map(|r| members.binary_search(r).ok()).collect()
}

fn rep1_instance(cfg: &GenConfig, index: usize, ctx: &mut Ctx) -> Result<()> {
    let q = cfg.quantale_for(index)?;
    let mut rng = instance_rng(cfg, index);
    let n = cfg.size(&mut rng);
    let s = gen_interpolative_space(&mut rng, &q, n, SpaceRoute::Domain, cfg)?;
    ctx.descriptor = format!("interpolative space on {n} points");
    ctx.space(&s);
    ctx.check("generalized", s.validate_generalized()?);
    ctx.check("interpolative", s.is_interpolative()?);
    let members = s.dir_closed_members()?;
    let ps = index_in(&members, s.point_closure_table());
    ctx.flag("point-closures-closed", ps.is_some(), "some ⟨u_x⟩ is not directed closed");
    let fixed = members.iter().all(|u| s.fixed_point_values(u));
    ctx.flag("fixed-point", fixed, "U differs from ⋁ U(x)⊗⟨u_x⟩");

    let c = s.dir_closed_sets()?;
    ctx.lorder(&c);
    ctx.check("c-lorder", validate_lorder(c.quantale(), c.labels(), c.table())?.summary("c-lorder"));
    if !ctx.check("c-ldcpo", c.is_ldcpo()?) {
        return Ok(());
    }
    if !ctx.check("c-continuous", is_continuous(&c)?) {
        return Ok(());
    }
    ctx.check("approximants", check_approximants(&s, &c)?);

    let t = closure_of_domain(&c)?;
    let tm = t.dir_closed_members()?;
    let wb = way_below_table(&c)?;
    let mut expected = wb.to_vec();
    expected.sort();
    expected.dedup();
    ctx.flag("rep1-carrier", *tm == expected, "𝔠 of the domain closure differs from {⇓x}");
    let map = index_in(&tm, &wb);
    let tc = t.dir_closed_sets()?;
    ctx.flag(
        "rep1-iso",
        map.is_some_and(|m| check_iso_via(&m, &c, &tc)),
        "x ↦ ⇓x is not an L-order isomorphism",
    );
    Ok(())
}

/// Returns `𝔠(X)` when it is algebraic, for reuse by the dense suites.
fn rep2_instance(cfg: &GenConfig, index: usize, ctx: &mut Ctx) -> Result<Option<Arc<LOrderedSet>>> {
    let q = cfg.quantale_for(index)?;
    let mut rng = instance_rng(cfg, index);
    let n = cfg.size(&mut rng);
    let s = gen_interpolative_space(&mut rng, &q, n, SpaceRoute::Lclosure, cfg)?;
    ctx.descriptor = format!("L-closure space on {n} points");
    ctx.space(&s);
    ctx.check("lclosure", s.is_l_closure_space()?);
    let c = s.dir_closed_sets()?;
    ctx.lorder(&c);
    if !ctx.check("c-ldcpo", c.is_ldcpo()?) {
        return Ok(None);
    }
    if !ctx.check("c-algebraic", is_algebraic(&c)?) {
        return Ok(None);
    }
    let members = s.dir_closed_members()?;
    let compact = compact_elements(&c)?;
    let psi = index_in(&members, s.point_closure_table());
    ctx.flag(
        "psi-compact",
        psi.is_some_and(|ix| ix.iter().all(|i| compact.contains(i))),
        "some ⟨u_x⟩ is not a compact element of 𝔠(X)",
    );
    let t = closure_of_algebraic(&c)?;
    let tm = t.dir_closed_members()?;
    let rows: Vec<Vec<Elem>> = (0..c.size())
        .map(|x| compact.iter().map(|&k| c.degree(k, x)).collect())
        .collect();
    let map = index_in(&tm, &rows);
    let tc = t.dir_closed_sets()?;
    ctx.flag(
        "rep2-iso",
        map.is_some_and(|m| check_iso_via(&m, &c, &tc)),
        "x ↦ ↓x|K(P) is not an L-order isomorphism",
    );
    Ok(Some(c))
}

fn dense_instance(cfg: &GenConfig, index: usize, ctx: &mut Ctx) -> Result<()> {
    let Some(p) = rep2_instance(cfg, index, ctx)? else {
        return Ok(());
    };
    let x = closure_of_domain(&p)?;
    let k = compact_elements(&p)?;
    ctx.check("dense-subspace", is_dense_subspace(&x, &k)?);
    ctx.check("dense-iso", check_dense_isomorphism(&x, &k)?);
    let restricted = restrict_to_subspace(&x, &k)?;
    let alg = closure_of_algebraic(&p)?;
    ctx.flag(
        "restriction-is-algebraic-closure",
        restricted.point_closure_table() == alg.point_closure_table(),
        "⟨·⟩|K(P) differs from the algebraic closure operator",
    );
    ctx.check("subspace-lclosure", restricted.is_l_closure_space()?);
    let cx = x.dir_closed_sets()?;
    ctx.check("rep3", is_algebraic(&cx)?);
    Ok(())
}

fn rep3_instance(cfg: &GenConfig, index: usize, ctx: &mut Ctx) -> Result<()> {
    let q = cfg.quantale_for(index)?;
    let mut rng = instance_rng(cfg, index);
    let n = cfg.size(&mut rng);
    let route = if index.is_multiple_of(2) { SpaceRoute::Domain } else { SpaceRoute::Rejection };
    let s = gen_interpolative_space(&mut rng, &q, n, route, cfg)?;
    ctx.descriptor = format!("interpolative space on {n} points");
    ctx.space(&s);
    let mut witness = None;
    for mask in 1u32..(1 << n) {
        let y: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if is_dense_subspace(&s, &y)?.passed && restrict_to_subspace(&s, &y)?.is_l_closure_space()?.passed {
            witness = Some(y);
            break;
        }
    }
    let c = s.dir_closed_sets()?;
    let alg = is_algebraic(&c)?;
    match witness {
        Some(y) => {
            let names: Vec<String> = y.iter().map(|&i| s.labels()[i].clone()).collect();
            ctx.check("rep3", alg.with_trace(format!("dense L-closure subspace {{{}}}", names.join(","))));
            ctx.check("dense-iso", check_dense_isomorphism(&s, &y)?);
        }
        None => {
            ctx.check("rep3-vacuous", CheckResult::pass("rep3-vacuous"));
        }
    }
    Ok(())
}

/// Every Boolean interpolative point-generated space on one or two points,
/// paired with every other, checked exhaustively.
fn equiv_tiny(cfg: &GenConfig, ctx: &mut Ctx) -> Result<()> {
    let q = Arc::new(crate::fixtures::fixture("boolean")?);
    let (o, z) = (q.top(), q.bottom());
    let mut spaces: Vec<Arc<ClosureSpace>> = Vec::new();
    for n in 1..=2usize {
        let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        for mask in 0u32..(1 << (n * n)) {
            let c: Vec<Vec<Elem>> = (0..n)
                .map(|x| (0..n).map(|y| if mask & (1 << (x * n + y)) != 0 { o } else { z }).collect())
                .collect();
            let s = ClosureSpace::point_generated(q.clone(), labels.clone(), c)?.with_limits(cfg.limits);
            if s.validate_generalized()?.passed && s.is_interpolative()?.passed {
                spaces.push(Arc::new(s));
            }
        }
    }
    ctx.descriptor = format!("{} tiny Boolean spaces, all pairs", spaces.len());
    for s in &spaces {
        ctx.space(s);
    }
    let mut pairs = 0;
    let mut relations = 0;
    for x in &spaces {
        for y in &spaces {
            let out = check_equivalence_suite(x, y, cfg.budget.max(16), cfg.seed)?;
            pairs += 1;
            relations += crate::approx::enumerate_approximable(x, y, 16)?.map_or(0, |v| v.len());
            if !out.sampled.is_empty() {
                return Err(Error::Budget("tiny instances must be exhaustive".into()));
            }
            for c in out.report.checks {
                if !c.passed {
                    let name = c.label.clone();
                    ctx.check(&name, c);
                    return Ok(());
                }
            }
        }
    }
    for p in ["faithful", "full", "round-trip", "identity-laws", "functor-identity", "functor-composition", "essentially-surjective"] {
        ctx.check(p, CheckResult::pass(p).with_trace(format!("{pairs} pairs, {relations} approximable relations")));
    }
    Ok(())
}

fn equiv_instance(cfg: &GenConfig, index: usize, ctx: &mut Ctx) -> Result<()> {
    let q = cfg.quantale_for(index)?;
    let mut rng = instance_rng(cfg, index);
    let small = GenConfig {
        max_size: cfg.max_size.min(3),
        ..cfg.clone()
    };
    let routes = [SpaceRoute::Domain, SpaceRoute::Lclosure, SpaceRoute::Rejection];
    let n = small.size(&mut rng);
    let m = small.size(&mut rng);
    let xs = Arc::new(gen_interpolative_space(&mut rng, &q, n, routes[index % 3], &small)?);
    let ys = Arc::new(gen_interpolative_space(&mut rng, &q, m, routes[(index + 1) % 3], &small)?);
    ctx.descriptor = format!("spaces on {n} and {m} points");
    ctx.space(&xs);
    ctx.space(&ys);

    let rel = gen_approx_relation(&mut rng, &xs, &ys, cfg)?;
    if let Some(t) = &rel {
        ctx.check("approximable", t.validate()?);
        let id_x = identity_relation(&xs)?;
        let id_y = identity_relation(&ys)?;
        ctx.flag(
            "identity-laws",
            compose(t, &id_x)?.table() == t.table() && compose(&id_y, t)?.table() == t.table(),
            "Θ∘id or id∘Θ differs from Θ",
        );
        let preserves = xs.dir_closed_members()?.iter().all(|u| {
            t.apply_to_closed(u).map(|v| ys.directed_closed_values(&v).passed).unwrap_or(false)
        });
        ctx.flag("apply-preserves-closed", preserves, "Θ̃ leaves 𝔠(Y)");
        let back = gen_approx_relation(&mut rng, &ys, &xs, cfg)?;
        if let Some(u) = back {
            let comp: ApproxRelation = compose(&u, t)?;
            ctx.check("composite-approximable", comp.validate()?);
            ctx.flag(
                "functor-composition",
                psi_of(&comp)? == psi_of(t)?.then(&psi_of(&u)?)?,
                "F(Υ∘Θ) differs from F(Υ)∘F(Θ)",
            );
        }
    }
    let out = check_equivalence_suite(&xs, &ys, cfg.budget, cfg.seed ^ index as u64)?;
    for c in out.report.checks {
        let name = c.label.clone();
        ctx.check(&name, c);
    }
    ctx.sampled = out.sampled;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(instances: usize) -> GenConfig {
        GenConfig {
            instances,
            ..GenConfig::default()
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &cfg(1)), Err(Error::UnknownLabel { .. })));
    }

    #[test]
    fn dense_refuses_nonintegral() {
        let c = GenConfig {
            quantale: "nonintegral-3".into(),
            ..cfg(1)
        };
        assert!(matches!(run_suite("dense", &c), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn core_passes_and_is_deterministic() {
        let c = cfg(3);
        let a = run_suite("core", &c).unwrap();
        assert_eq!(a.status, SuiteStatus::Pass, "{}", a.to_text());
        let b = run_suite("core", &GenConfig { workers: 3, ..c }).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
