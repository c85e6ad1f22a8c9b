//! Generalized L-closure spaces, directed closed sets and the passages
//! between continuous/algebraic L-dcpos and closure spaces.
//!
//! A space keeps its operator in one of two forms. `TableBacked` stores
//! `⟨A⟩` for every `A ∈ L^X` (indexed by lexicographic rank). `PointGenerated`
//! stores only the point closures `C_x` and evaluates `⟨A⟩ = ⋁ₓ A(x) ⊗ C_x`.
//! Validators pick a strategy per form: GC1 is exhaustive for tables and
//! sampled for point-generated operators (where it holds by construction),
//! and GC2 for point-generated operators reduces to `⋁_y C_x(y) ⊗ C_y ≤ C_x`.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::check::CheckResult;
use crate::domain::{compact_elements, is_algebraic, is_continuous, way_below_table};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lsubset::{
    characteristic, count_lsubsets, height, join_scaled_into, pointwise_leq, rank_of, render,
    sub_degree, subset_at_rank, CarrierId, LSubset,
};
use crate::order::{check_iso_via, LOrderedSet};
use crate::quantale::{Elem, FiniteQuantale};

/// Number of random `(A, B)` pairs used to re-assert GC1 on point-generated
/// operators whose pair space is larger than [`GC1_EXHAUSTIVE_PAIRS`].
pub const GC1_SAMPLES: usize = 4096;
pub const GC1_EXHAUSTIVE_PAIRS: u64 = 1 << 16;
const GC1_SEED: u64 = 0x6c31_5eed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureOperator {
    TableBacked { table: Vec<Vec<Elem>> },
    PointGenerated { closures: Vec<Vec<Elem>> },
}

impl ClosureOperator {
    pub fn kind(&self) -> &'static str {
        match self {
            ClosureOperator::TableBacked { .. } => "table",
            ClosureOperator::PointGenerated { .. } => "point",
        }
    }
}

pub struct ClosureSpace {
    q: Arc<FiniteQuantale>,
    labels: Vec<String>,
    id: CarrierId,
    op: ClosureOperator,
    points: Vec<Vec<Elem>>,
    limits: Limits,
    generalized: OnceLock<Result<CheckResult>>,
    interpolative: OnceLock<Result<CheckResult>>,
    lclosure: OnceLock<Result<CheckResult>>,
    dir_closed: OnceLock<Result<Arc<Vec<Vec<Elem>>>>>,
    dir_closed_order: OnceLock<Result<Arc<LOrderedSet>>>,
}

impl Clone for ClosureSpace {
    fn clone(&self) -> Self {
        ClosureSpace {
            q: self.q.clone(),
            labels: self.labels.clone(),
            id: self.id,
            op: self.op.clone(),
            points: self.points.clone(),
            limits: self.limits,
            generalized: self.generalized.clone(),
            interpolative: self.interpolative.clone(),
            lclosure: self.lclosure.clone(),
            dir_closed: self.dir_closed.clone(),
            dir_closed_order: self.dir_closed_order.clone(),
        }
    }
}

impl PartialEq for ClosureSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.op == other.op && self.q.same_as(&other.q)
    }
}

impl std::fmt::Debug for ClosureSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClosureSpace")
            .field("carrier", &self.labels)
            .field("kind", &self.op.kind())
            .field(
                "point_closures",
                &self.points.iter().map(|c| render(&self.q, c)).collect::<Vec<_>>(),
            )
            .finish()
    }
}

fn check_values(q: &FiniteQuantale, n: usize, v: &[Elem], what: &str) -> Result<()> {
    if v.len() != n {
        return Err(Error::CarrierMismatch(format!(
            "{what} has {} values, carrier has {n} points",
            v.len()
        )));
    }
    if v.iter().any(|e| e.index() >= q.size()) {
        return Err(Error::structural(format!("{what} uses an element outside the quantale")));
    }
    Ok(())
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::structural(format!("duplicate point label {l}")));
        }
    }
    Ok(())
}

impl ClosureSpace {
    pub fn point_generated(
        q: Arc<FiniteQuantale>,
        labels: Vec<String>,
        closures: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        if closures.len() != n {
            return Err(Error::CarrierMismatch(format!(
                "{} point closures for {n} points",
                closures.len()
            )));
        }
        for (x, c) in closures.iter().enumerate() {
            check_values(&q, n, c, &format!("point closure of {}", labels[x]))?;
        }
        Ok(Self::assemble(q, labels, ClosureOperator::PointGenerated { closures: closures.clone() }, closures))
    }

    /// `table[r]` is `⟨A⟩` for the L-subset `A` of lexicographic rank `r`.
    pub fn table_backed(
        q: Arc<FiniteQuantale>,
        labels: Vec<String>,
        table: Vec<Vec<Elem>>,
        limits: &Limits,
    ) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let count = count_lsubsets(&q, n, limits)?;
        if table.len() as u64 != count {
            return Err(Error::structural(format!(
                "closure table has {} rows, L^X has {count} elements",
                table.len()
            )));
        }
        for (r, row) in table.iter().enumerate() {
            check_values(&q, n, row, &format!("closure table row {r}"))?;
        }
        let base = q.size();
        let points = (0..n)
            .map(|x| table[rank_of(base, &characteristic(&q, n, x)) as usize].clone())
            .collect();
        Ok(Self::assemble(q, labels, ClosureOperator::TableBacked { table }, points).with_limits(*limits))
    }

    /// Table-backed operator computed from a function on value vectors.
    pub fn from_operator(
        q: Arc<FiniteQuantale>,
        labels: Vec<String>,
        limits: &Limits,
        f: impl Fn(&[Elem]) -> Vec<Elem>,
    ) -> Result<Self> {
        let n = labels.len();
        let count = count_lsubsets(&q, n, limits)?;
        let base = q.size();
        let table = (0..count).map(|r| f(&subset_at_rank(base, n, r))).collect();
        Self::table_backed(q, labels, table, limits)
    }

    fn assemble(q: Arc<FiniteQuantale>, labels: Vec<String>, op: ClosureOperator, points: Vec<Vec<Elem>>) -> Self {
        ClosureSpace {
            id: CarrierId::of(&labels),
            q,
            labels,
            op,
            points,
            limits: Limits::default(),
            generalized: OnceLock::new(),
            interpolative: OnceLock::new(),
            lclosure: OnceLock::new(),
            dir_closed: OnceLock::new(),
            dir_closed_order: OnceLock::new(),
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self.generalized = OnceLock::new();
        self.interpolative = OnceLock::new();
        self.lclosure = OnceLock::new();
        self.dir_closed = OnceLock::new();
        self.dir_closed_order = OnceLock::new();
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn quantale(&self) -> &Arc<FiniteQuantale> {
        &self.q
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn carrier_id(&self) -> CarrierId {
        self.id
    }

    pub fn operator(&self) -> &ClosureOperator {
        &self.op
    }

    pub fn point(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
            context: "closure space".into(),
        })
    }

    pub fn subset(&self, values: Vec<Elem>) -> Result<LSubset> {
        check_values(&self.q, self.size(), &values, "L-subset")?;
        Ok(LSubset::new(self.id, values))
    }

    /// `⟨u_x⟩` as a value vector.
    pub fn c(&self, x: usize) -> &[Elem] {
        &self.points[x]
    }

    pub fn point_closure_table(&self) -> &[Vec<Elem>] {
        &self.points
    }

    pub(crate) fn close_values(&self, a: &[Elem]) -> Vec<Elem> {
        match &self.op {
            ClosureOperator::TableBacked { table } => table[rank_of(self.q.size(), a) as usize].clone(),
            ClosureOperator::PointGenerated { closures } => {
                let mut out = vec![self.q.bottom(); self.size()];
                for (x, &ax) in a.iter().enumerate() {
                    join_scaled_into(&self.q, &mut out, ax, &closures[x]);
                }
                out
            }
        }
    }

    pub fn close(&self, a: &LSubset) -> Result<LSubset> {
        if a.carrier() != self.id || a.len() != self.size() {
            return Err(Error::CarrierMismatch("L-subset is not over this closure space".into()));
        }
        Ok(LSubset::new(self.id, self.close_values(a.values())))
    }

    fn names(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// GC1 and GC2, plus the consequences `sub(A,⟨B⟩) ≤ sub(⟨A⟩,⟨B⟩)` and
    /// `⟨A⟩(x) ≤ sub(⟨u_x⟩,⟨A⟩)`.
    pub fn validate_generalized(&self) -> Result<CheckResult> {
        self.generalized.get_or_init(|| self.compute_generalized()).clone()
    }

    fn compute_generalized(&self) -> Result<CheckResult> {
        let q = &self.q;
        let n = self.size();
        let base = q.size();
        match &self.op {
            ClosureOperator::PointGenerated { closures } => {
                for x in 0..n {
                    let mut acc = vec![q.bottom(); n];
                    for (d, cy) in closures[x].iter().zip(closures.iter()) {
                        join_scaled_into(q, &mut acc, *d, cy);
                    }
                    if let Some(z) = (0..n).find(|&z| !q.leq(acc[z], closures[x][z])) {
                        return Ok(CheckResult::fail(
                            "GC2",
                            self.names(&[x, z]),
                            format!(
                                "⋁_y C_x(y)⊗C_y = {} exceeds C_x = {} at {}",
                                render(q, &acc),
                                render(q, &closures[x]),
                                self.labels[z]
                            ),
                        ));
                    }
                }
                let pairs = self.limits.check_power("L^X × L^X", base, 2 * n, u64::MAX).unwrap_or(u64::MAX);
                let (ranks, note): (Vec<(u64, u64)>, _) = if pairs <= GC1_EXHAUSTIVE_PAIRS {
                    let m = pairs.isqrt();
                    ((0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect(), None)
                } else {
                    let m = count_lsubsets(q, n, &Limits { enum_cap: u64::MAX, ..self.limits })?;
                    let mut rng = ChaCha8Rng::seed_from_u64(GC1_SEED);
                    let ranks = (0..GC1_SAMPLES).map(|_| (rng.gen_range(0..m), rng.gen_range(0..m))).collect();
                    (ranks, Some(format!("GC1 sampled on {GC1_SAMPLES} pairs")))
                };
                Ok(self.gc1_over(&ranks).unwrap_or_else(|| match note {
                    Some(t) => CheckResult::pass("generalized").with_trace(t),
                    None => CheckResult::pass("generalized"),
                }))
            }
            ClosureOperator::TableBacked { table } => {
                self.limits.check_power("L^X × L^X", base, 2 * n, self.limits.pair_cap)?;
                let m = table.len() as u64;
                for (r, a) in table.iter().enumerate() {
                    let aa = self.close_values(a);
                    if let Some(z) = (0..n).find(|&z| !q.leq(aa[z], a[z])) {
                        let arg = subset_at_rank(base, n, r as u64);
                        return Ok(CheckResult::fail(
                            "GC2",
                            vec![render(q, &arg), self.labels[z].clone()],
                            format!("⟨⟨A⟩⟩ = {} is not below ⟨A⟩ = {}", render(q, &aa), render(q, a)),
                        ));
                    }
                }
                let found = (0..m).into_par_iter().find_map_first(|a| {
                    let ranks: Vec<(u64, u64)> = (0..m).map(|b| (a, b)).collect();
                    self.gc1_over(&ranks)
                });
                Ok(found.unwrap_or_else(|| CheckResult::pass("generalized")))
            }
        }
    }

    fn gc1_over(&self, ranks: &[(u64, u64)]) -> Option<CheckResult> {
        let q = &self.q;
        let n = self.size();
        let base = q.size();
        for &(ra, rb) in ranks {
            let a = subset_at_rank(base, n, ra);
            let b = subset_at_rank(base, n, rb);
            let ca = self.close_values(&a);
            let cb = self.close_values(&b);
            let closed = sub_degree(q, &ca, &cb);
            if !q.leq(sub_degree(q, &a, &b), closed) {
                return Some(CheckResult::fail(
                    "GC1",
                    vec![render(q, &a), render(q, &b)],
                    "sub(A,B) exceeds sub(⟨A⟩,⟨B⟩)",
                ));
            }
            if !q.leq(sub_degree(q, &a, &cb), closed) {
                return Some(CheckResult::fail(
                    "GC-sub-bound",
                    vec![render(q, &a), render(q, &b)],
                    "sub(A,⟨B⟩) exceeds sub(⟨A⟩,⟨B⟩)",
                ));
            }
            for x in 0..n {
                if !q.leq(ca[x], sub_degree(q, &self.points[x], &ca)) {
                    return Some(CheckResult::fail(
                        "GC-point-bound",
                        vec![render(q, &a), self.labels[x].clone()],
                        "⟨A⟩(x) exceeds sub(⟨u_x⟩,⟨A⟩)",
                    ));
                }
            }
        }
        None
    }

    fn require(&self, flag: Result<CheckResult>, what: &str, who: &str) -> Result<()> {
        let r = flag?;
        if r.passed {
            Ok(())
        } else {
            Err(Error::precondition(format!("{who} requires a {what} space; {r}")))
        }
    }

    pub fn is_interpolative(&self) -> Result<CheckResult> {
        self.interpolative
            .get_or_init(|| {
                self.require(self.validate_generalized(), "generalized L-closure", "interpolation check")?;
                Ok(self.compute_interpolative())
            })
            .clone()
    }

    fn compute_interpolative(&self) -> CheckResult {
        let q = &self.q;
        let n = self.size();
        let c = &self.points;
        for (x, cx) in c.iter().enumerate() {
            if !q.at_least_unit(height(q, cx)) {
                return CheckResult::fail("IT1", self.names(&[x]), "⋁_t ⟨u_x⟩(t) is not above u");
            }
        }
        for x in 0..n {
            for y in 0..n {
                let rhs = q.join_all((0..n).map(|t| q.tensor(c[x][t], c[t][y])));
                if !q.leq(c[x][y], rhs) {
                    return CheckResult::fail("IT2", self.names(&[x, y]), "⟨u_x⟩(y) is not interpolated");
                }
            }
        }
        for x in 0..n {
            for a in 0..n {
                for b in a..n {
                    let lhs = q.tensor(c[x][a], c[x][b]);
                    let rhs = q.join_all((0..n).map(|t| q.tensor(c[x][t], q.tensor(c[t][a], c[t][b]))));
                    if !q.leq(lhs, rhs) {
                        return CheckResult::fail("IT3", self.names(&[x, a, b]), "pair not interpolated");
                    }
                }
            }
        }
        CheckResult::pass("interpolative")
    }

    /// Point criterion `⟨u_x⟩(x) ≥ u` for point-generated operators; LC1 and
    /// LC3 directly for tables.
    pub fn is_l_closure_space(&self) -> Result<CheckResult> {
        self.lclosure
            .get_or_init(|| {
                self.require(self.validate_generalized(), "generalized L-closure", "L-closure check")?;
                let r = self.compute_lclosure()?;
                if r.passed && !self.is_interpolative()?.passed {
                    return Ok(CheckResult::fail(
                        "LC-IT",
                        vec![],
                        "L-closure space that is not interpolative",
                    ));
                }
                Ok(r)
            })
            .clone()
    }

    fn compute_lclosure(&self) -> Result<CheckResult> {
        let q = &self.q;
        let n = self.size();
        match &self.op {
            ClosureOperator::PointGenerated { .. } => {
                for x in 0..n {
                    if !q.at_least_unit(self.points[x][x]) {
                        return Ok(CheckResult::fail("LC1", self.names(&[x]), "⟨u_x⟩(x) is not above u"));
                    }
                }
            }
            ClosureOperator::TableBacked { table } => {
                let base = q.size();
                for (r, ca) in table.iter().enumerate() {
                    let a = subset_at_rank(base, n, r as u64);
                    if !pointwise_leq(q, &a, ca) {
                        return Ok(CheckResult::fail("LC1", vec![render(q, &a)], "A is not below ⟨A⟩"));
                    }
                    if self.close_values(ca) != *ca {
                        return Ok(CheckResult::fail("LC3", vec![render(q, &a)], "⟨⟨A⟩⟩ differs from ⟨A⟩"));
                    }
                }
            }
        }
        Ok(CheckResult::pass("L-closure"))
    }

    /// `Ψ(X)` deduplicated and lexicographically sorted, with the index of
    /// `⟨u_x⟩` for every point.
    pub fn point_closures(&self) -> (Vec<Vec<Elem>>, Vec<usize>) {
        let mut family = self.points.clone();
        family.sort();
        family.dedup();
        let index = self
            .points
            .iter()
            .map(|c| family.binary_search(c).expect("present"))
            .collect();
        (family, index)
    }

    pub fn is_directed_closed(&self, u: &LSubset) -> Result<CheckResult> {
        if u.carrier() != self.id || u.len() != self.size() {
            return Err(Error::CarrierMismatch("L-subset is not over this closure space".into()));
        }
        self.require(self.is_interpolative(), "interpolative", "directed-closedness")?;
        Ok(self.directed_closed_values(u.values()))
    }

    pub(crate) fn directed_closed_values(&self, u: &[Elem]) -> CheckResult {
        let q = &self.q;
        let n = self.size();
        let c = &self.points;
        if !q.at_least_unit(height(q, u)) {
            return CheckResult::fail("DC1", vec![render(q, u)], "⋁U is not above u");
        }
        for x in 0..n {
            if !q.leq(u[x], sub_degree(q, &c[x], u)) {
                return CheckResult::fail("DC2", vec![render(q, u), self.labels[x].clone()], "U(x) exceeds sub(⟨u_x⟩,U)");
            }
        }
        for x in 0..n {
            let rhs = q.join_all((0..n).map(|y| q.tensor(u[y], c[y][x])));
            if !q.leq(u[x], rhs) {
                return CheckResult::fail("DC3", vec![render(q, u), self.labels[x].clone()], "U(x) is not covered");
            }
        }
        for x in 0..n {
            for y in x..n {
                let lhs = q.tensor(u[x], u[y]);
                let rhs = q.join_all((0..n).map(|z| q.tensor(u[z], q.tensor(c[z][x], c[z][y]))));
                if !q.leq(lhs, rhs) {
                    return CheckResult::fail(
                        "DC4",
                        vec![render(q, u), self.labels[x].clone(), self.labels[y].clone()],
                        "pair has no common closure bound",
                    );
                }
            }
        }
        CheckResult::pass("directed-closed")
    }

    /// Members of `𝔠(X)` in lexicographic order.
    pub fn dir_closed_members(&self) -> Result<Arc<Vec<Vec<Elem>>>> {
        self.dir_closed
            .get_or_init(|| {
                self.require(self.is_interpolative(), "interpolative", "𝔠(X)")?;
                let n = self.size();
                let base = self.q.size();
                let count = count_lsubsets(&self.q, n, &self.limits)?;
                let members: Vec<Vec<Elem>> = (0..count)
                    .into_par_iter()
                    .filter_map(|r| {
                        let u = subset_at_rank(base, n, r);
                        self.directed_closed_values(&u).passed.then_some(u)
                    })
                    .collect();
                Ok(Arc::new(members))
            })
            .clone()
    }

    /// `(𝔠(X), sub)`, validated as an L-ordered set.
    pub fn dir_closed_sets(&self) -> Result<Arc<LOrderedSet>> {
        self.dir_closed_order
            .get_or_init(|| {
                let members = self.dir_closed_members()?;
                Ok(Arc::new(LOrderedSet::family_order(self.q.clone(), &members)?.with_limits(self.limits)))
            })
            .clone()
    }

    /// `U = ⋁ₓ U(x) ⊗ ⟨u_x⟩`.
    pub fn check_fixed_point_characterization(&self, u: &LSubset) -> Result<bool> {
        if u.carrier() != self.id || u.len() != self.size() {
            return Err(Error::CarrierMismatch("L-subset is not over this closure space".into()));
        }
        self.require(self.is_interpolative(), "interpolative", "fixed-point characterization")?;
        Ok(self.fixed_point_values(u.values()))
    }

    pub(crate) fn fixed_point_values(&self, u: &[Elem]) -> bool {
        let mut acc = vec![self.q.bottom(); self.size()];
        for (x, &ux) in u.iter().enumerate() {
            join_scaled_into(&self.q, &mut acc, ux, &self.points[x]);
        }
        acc == u
    }

    /// `𝒟_U(V) = ⋁_{⟨u_x⟩ = V} U(x)` over the members of `𝔠(X)`.
    pub fn approximant(&self, u: &[Elem]) -> Result<Vec<Elem>> {
        let members = self.dir_closed_members()?;
        let q = &self.q;
        let mut out = vec![q.bottom(); members.len()];
        for (x, c) in self.points.iter().enumerate() {
            let i = members.binary_search(c).map_err(|_| {
                Error::Axiom(format!("⟨u_{}⟩ is not a directed closed set", self.labels[x]))
            })?;
            out[i] = q.join(out[i], u[x]);
        }
        Ok(out)
    }
}

/// `C_x = ⇓x` on a continuous L-dcpo.
pub fn closure_of_domain(p: &LOrderedSet) -> Result<ClosureSpace> {
    let cont = is_continuous(p)?;
    if !cont.passed {
        return Err(Error::precondition(format!("closure of a domain requires a continuous L-dcpo; {cont}")));
    }
    let wb = way_below_table(p)?;
    let s = ClosureSpace::point_generated(p.quantale().clone(), p.labels().to_vec(), wb.to_vec())?
        .with_limits(*p.limits());
    for r in [s.validate_generalized()?, s.is_interpolative()?] {
        if !r.passed {
            return Err(Error::Axiom(format!("closure of a continuous L-dcpo failed {r}")));
        }
    }
    Ok(s)
}

/// `C_k = ↓k` restricted to `K(P)` on an algebraic L-dcpo.
pub fn closure_of_algebraic(p: &LOrderedSet) -> Result<ClosureSpace> {
    let alg = is_algebraic(p)?;
    if !alg.passed {
        return Err(Error::precondition(format!("closure of an algebraic domain requires an algebraic L-dcpo; {alg}")));
    }
    let k = compact_elements(p)?;
    let closures = k.iter().map(|&x| k.iter().map(|&y| p.degree(y, x)).collect()).collect();
    let s = ClosureSpace::point_generated(p.quantale().clone(), p.names(&k), closures)?.with_limits(*p.limits());
    for r in [s.validate_generalized()?, s.is_l_closure_space()?] {
        if !r.passed {
            return Err(Error::Axiom(format!("closure of an algebraic L-dcpo failed {r}")));
        }
    }
    Ok(s)
}

fn check_subspace(s: &ClosureSpace, y: &[usize]) -> Result<()> {
    if y.is_empty() {
        return Err(Error::precondition("subspace must be nonempty"));
    }
    for (i, &p) in y.iter().enumerate() {
        if p >= s.size() {
            return Err(Error::UnknownLabel { label: format!("#{p}"), context: "closure space".into() });
        }
        if y[..i].contains(&p) {
            return Err(Error::structural(format!("subspace lists {} twice", s.labels[p])));
        }
    }
    Ok(())
}

/// `⟨·⟩|_Y`: point closures restricted for point-generated operators; for
/// tables, `⟨B⟩|_Y` is the closure of the zero-extension of `B`, restricted.
pub fn restrict_to_subspace(s: &ClosureSpace, y: &[usize]) -> Result<ClosureSpace> {
    check_subspace(s, y)?;
    let labels: Vec<String> = s.names(y);
    let q = s.q.clone();
    match &s.op {
        ClosureOperator::PointGenerated { closures } => {
            let c = y.iter().map(|&a| y.iter().map(|&b| closures[a][b]).collect()).collect();
            Ok(ClosureSpace::point_generated(q, labels, c)?.with_limits(s.limits))
        }
        ClosureOperator::TableBacked { .. } => {
            let n = s.size();
            let bottom = q.bottom();
            ClosureSpace::from_operator(q, labels, &s.limits, |b| {
                let mut ext = vec![bottom; n];
                for (i, &p) in y.iter().enumerate() {
                    ext[p] = b[i];
                }
                let closed = s.close_values(&ext);
                y.iter().map(|&p| closed[p]).collect()
            })
        }
    }
}

fn require_integral(s: &ClosureSpace, who: &str) -> Result<()> {
    if s.q.is_integral() {
        Ok(())
    } else {
        Err(Error::NonIntegral(format!("{who} is defined only over integral quantales (unit must be top)")))
    }
}

/// `⟨u_x⟩(a) ≤ ⋁_{y∈Y} ⟨u_x⟩(y) ⊗ ⟨u_y⟩(a)` for all `x, a`.
pub fn is_dense_subspace(s: &ClosureSpace, y: &[usize]) -> Result<CheckResult> {
    require_integral(s, "dense-subspace check")?;
    check_subspace(s, y)?;
    s.require(s.is_interpolative(), "interpolative", "dense-subspace check")?;
    let q = &s.q;
    let c = &s.points;
    for x in 0..s.size() {
        for a in 0..s.size() {
            let rhs = q.join_all(y.iter().map(|&t| q.tensor(c[x][t], c[t][a])));
            if !q.leq(c[x][a], rhs) {
                return Ok(CheckResult::fail("DS", s.names(&[x, a]), "⟨u_x⟩(a) does not factor through Y"));
            }
        }
    }
    Ok(CheckResult::pass("dense"))
}

/// `E ↦ E|_Y` is an L-order isomorphism `𝔠(X) → 𝔠(Y)` preserving `sub`.
pub fn check_dense_isomorphism(s: &ClosureSpace, y: &[usize]) -> Result<CheckResult> {
    require_integral(s, "dense-subspace isomorphism")?;
    let sub = restrict_to_subspace(s, y)?;
    let big = s.dir_closed_sets()?;
    let small = sub.dir_closed_sets()?;
    let small_members = sub.dir_closed_members()?;
    let mut map = Vec::with_capacity(big.size());
    for e in s.dir_closed_members()?.iter() {
        let r: Vec<Elem> = y.iter().map(|&p| e[p]).collect();
        match small_members.binary_search(&r) {
            Ok(i) => map.push(i),
            Err(_) => {
                return Ok(CheckResult::fail(
                    "dense-iso",
                    vec![render(&s.q, e)],
                    "restriction is not a directed closed set of the subspace",
                ))
            }
        }
    }
    Ok(CheckResult::from_bool(
        "dense-iso",
        check_iso_via(&map, &big, &small),
        "restriction is not a sub-preserving bijection",
    ))
}

/// For every `U ∈ 𝔠(X)`: `𝒟_U` is directed in `𝔠(X)`, `⊔𝒟_U = U`, and
/// `𝒟_U ≤ ⇓U`. Requires `𝔠(X)` to be an L-dcpo.
pub fn check_approximants(s: &ClosureSpace, c: &LOrderedSet) -> Result<CheckResult> {
    let members = s.dir_closed_members()?;
    let wb = way_below_table(c)?;
    let q = &s.q;
    for (i, u) in members.iter().enumerate() {
        let d = s.approximant(u)?;
        let name = vec![c.label(i).to_string()];
        if !c.directed_values(&d).passed {
            return Ok(CheckResult::fail("approximant", name, "𝒟_U is not directed"));
        }
        if c.sup_values(&d) != Some(i) {
            return Ok(CheckResult::fail("approximant", name, "⊔𝒟_U differs from U"));
        }
        if !pointwise_leq(q, &d, &wb[i]) {
            return Ok(CheckResult::fail("approximant", name, "𝒟_U is not below ⇓U"));
        }
    }
    Ok(CheckResult::pass("approximant"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    fn q(name: &str) -> Arc<FiniteQuantale> {
        Arc::new(fixture(name).unwrap())
    }

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn down_space(p: &LOrderedSet) -> ClosureSpace {
        let c = (0..p.size()).map(|x| p.down_values(x)).collect();
        ClosureSpace::point_generated(p.quantale().clone(), p.labels().to_vec(), c).unwrap()
    }

    fn two_chain() -> LOrderedSet {
        LOrderedSet::from_crisp(q("boolean"), labels(&["bot", "top"]), |i, j| i <= j).unwrap()
    }

    #[test]
    fn point_generated_evaluation() {
        let p = two_chain();
        let s = closure_of_domain(&p).unwrap();
        let l = p.quantale().clone();
        let zero = s.subset(vec![l.bottom(); 2]).unwrap();
        assert_eq!(s.close(&zero).unwrap(), zero);
        for x in 0..2 {
            let ux = s.subset(characteristic(&l, 2, x)).unwrap();
            assert_eq!(s.close(&ux).unwrap().values(), p.down_values(x).as_slice());
        }
    }

    #[test]
    fn down_set_closure_is_generalized() {
        let l = q("lukasiewicz-3");
        let h = l.elem("1/2").unwrap();
        let p = LOrderedSet::from_fn(l.clone(), labels(&["a", "b"]), |i, j| {
            if i == j || i == 0 { l.top() } else { h }
        })
        .unwrap();
        let s = down_space(&p);
        assert!(s.validate_generalized().unwrap().passed);
        assert!(s.is_l_closure_space().unwrap().passed);
        assert!(s.is_interpolative().unwrap().passed);
    }

    #[test]
    fn identity_table_operator() {
        let l = q("lukasiewicz-3");
        let s = ClosureSpace::from_operator(l, labels(&["a", "b"]), &Limits::default(), |a| a.to_vec()).unwrap();
        assert!(s.validate_generalized().unwrap().passed);
        assert!(s.is_l_closure_space().unwrap().passed);
        assert!(s.is_interpolative().unwrap().passed);
    }

    #[test]
    fn table_and_point_forms_agree() {
        let p = two_chain();
        let s = down_space(&p);
        let t = ClosureSpace::from_operator(p.quantale().clone(), p.labels().to_vec(), &Limits::default(), |a| {
            s.close_values(a)
        })
        .unwrap();
        assert_eq!(s.point_closure_table(), t.point_closure_table());
        assert_eq!(*s.dir_closed_members().unwrap(), *t.dir_closed_members().unwrap());
        assert!(t.is_l_closure_space().unwrap().passed);
    }

    #[test]
    fn empty_point_closure_fails_it1() {
        let l = q("boolean");
        let s = ClosureSpace::point_generated(l.clone(), labels(&["a"]), vec![vec![l.bottom()]]).unwrap();
        assert!(s.validate_generalized().unwrap().passed);
        let r = s.is_interpolative().unwrap();
        assert_eq!(r.label, "IT1");
        assert_eq!(r.witness, labels(&["a"]));
    }

    #[test]
    fn gc2_violation_is_reported() {
        // C_a = {a, b}, C_b = {b, c}, C_c = {c}: closing twice reaches c from a.
        let l = q("boolean");
        let (o, z) = (l.top(), l.bottom());
        let s = ClosureSpace::point_generated(
            l,
            labels(&["a", "b", "c"]),
            vec![vec![o, o, z], vec![z, o, o], vec![z, z, o]],
        )
        .unwrap();
        let r = s.validate_generalized().unwrap();
        assert_eq!(r.label, "GC2");
        assert_eq!(r.witness, labels(&["a", "c"]));
        assert!(matches!(s.is_interpolative(), Err(Error::Precondition(_))));
    }

    #[test]
    fn point_closures_deduplicate() {
        let p = two_chain();
        let (fam, idx) = down_space(&p).point_closures();
        assert_eq!(fam.len(), 2);
        assert_eq!(idx, vec![0, 1]);
        let l = q("boolean");
        let same = ClosureSpace::point_generated(l.clone(), labels(&["a", "b"]), vec![vec![l.top(); 2]; 2]).unwrap();
        assert_eq!(same.point_closures(), (vec![vec![l.top(); 2]], vec![0, 0]));
    }

    #[test]
    fn directed_closed_sets_of_domains() {
        let p = two_chain();
        let s = closure_of_domain(&p).unwrap();
        let members = s.dir_closed_members().unwrap();
        let expected: Vec<Vec<Elem>> = (0..2).map(|x| p.down_values(x)).collect();
        let mut sorted = expected.clone();
        sorted.sort();
        assert_eq!(*members, sorted);
        let l = p.quantale().clone();
        let zero = s.subset(vec![l.bottom(); 2]).unwrap();
        assert_eq!(s.is_directed_closed(&zero).unwrap().label, "DC1");
        assert!(s.check_fixed_point_characterization(&zero).unwrap());
        for x in 0..2 {
            let c = s.subset(s.c(x).to_vec()).unwrap();
            assert!(s.is_directed_closed(&c).unwrap().passed);
            assert!(s.check_fixed_point_characterization(&c).unwrap());
        }
    }

    #[test]
    fn single_point_space() {
        let l = q("boolean");
        let s = ClosureSpace::point_generated(l.clone(), labels(&["a"]), vec![vec![l.unit()]]).unwrap();
        assert_eq!(*s.dir_closed_members().unwrap(), vec![vec![l.unit()]]);
    }

    #[test]
    fn lclosure_fails_when_point_misses_itself() {
        let l = q("lukasiewicz-3");
        let h = l.elem("1/2").unwrap();
        let s = ClosureSpace::point_generated(l.clone(), labels(&["a"]), vec![vec![h]]).unwrap();
        assert!(s.validate_generalized().unwrap().passed);
        let r = s.is_l_closure_space().unwrap();
        assert_eq!(r.label, "LC1");
        assert_eq!(r.witness, labels(&["a"]));
    }

    #[test]
    fn algebraic_round_trip_on_flat_domain() {
        let p = LOrderedSet::from_crisp(q("boolean"), labels(&["bot", "a", "b"]), |i, j| i == j || i == 0).unwrap();
        let s = closure_of_algebraic(&p).unwrap();
        assert_eq!(s.labels(), p.labels());
        let c = s.dir_closed_sets().unwrap();
        assert_eq!(c.size(), 3);
        assert!(crate::order::find_lorder_iso(&p, &c).unwrap().is_some());
    }

    #[test]
    fn dense_subspace_checks() {
        let p = two_chain();
        let s = closure_of_domain(&p).unwrap();
        assert!(is_dense_subspace(&s, &[0, 1]).unwrap().passed);
        assert!(check_dense_isomorphism(&s, &[0, 1]).unwrap().passed);
        let r = is_dense_subspace(&s, &[0]).unwrap();
        assert_eq!(r.label, "DS");

        let n = q("nonintegral-3");
        let t = ClosureSpace::point_generated(n.clone(), labels(&["a"]), vec![vec![n.unit()]]).unwrap();
        assert!(matches!(is_dense_subspace(&t, &[0]), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn restriction_semantics() {
        let p = two_chain();
        let s = down_space(&p);
        let full = restrict_to_subspace(&s, &[0, 1]).unwrap();
        assert_eq!(full.point_closure_table(), s.point_closure_table());
        let t = ClosureSpace::from_operator(p.quantale().clone(), p.labels().to_vec(), &Limits::default(), |a| {
            s.close_values(a)
        })
        .unwrap();
        let rt = restrict_to_subspace(&t, &[1]).unwrap();
        let rs = restrict_to_subspace(&s, &[1]).unwrap();
        assert_eq!(rt.point_closure_table(), rs.point_closure_table());
        assert!(restrict_to_subspace(&s, &[]).is_err());
        assert!(restrict_to_subspace(&s, &[5]).is_err());
    }

    #[test]
    fn approximants_on_chain() {
        let s = closure_of_domain(&two_chain()).unwrap();
        let c = s.dir_closed_sets().unwrap();
        assert!(check_approximants(&s, &c).unwrap().passed);
    }
}
