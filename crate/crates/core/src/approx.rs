//! Approximable L-relations between interpolative generalized L-closure
//! spaces and their correspondence with Scott continuous maps between the
//! spaces of directed closed sets.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::{CheckResult, Report};
use crate::closure::{closure_of_domain, ClosureSpace};
use crate::domain::way_below_table;
use crate::error::{Error, Result};
use crate::limits::checked_pow;
use crate::lsubset::{render, subset_at_rank};
use crate::order::{check_iso_via, is_scott_continuous, LOrderedSet};
use crate::quantale::{Elem, FiniteQuantale};

/// An L-valued relation `X × Y → L`, stored row-major.
pub struct ApproxRelation {
    source: Arc<ClosureSpace>,
    target: Arc<ClosureSpace>,
    theta: Vec<Elem>,
    validated: OnceLock<Result<CheckResult>>,
}

impl Clone for ApproxRelation {
    fn clone(&self) -> Self {
        ApproxRelation {
            source: self.source.clone(),
            target: self.target.clone(),
            theta: self.theta.clone(),
            validated: self.validated.clone(),
        }
    }
}

impl PartialEq for ApproxRelation {
    fn eq(&self, other: &Self) -> bool {
        self.theta == other.theta && *self.source == *other.source && *self.target == *other.target
    }
}

impl std::fmt::Debug for ApproxRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let q = self.source.quantale();
        let rows: Vec<String> = (0..self.source.size())
            .map(|x| render(q, self.row(x)))
            .collect();
        f.debug_struct("ApproxRelation").field("theta", &rows).finish()
    }
}

fn same_quantale(a: &ClosureSpace, b: &ClosureSpace) -> Result<()> {
    if a.quantale().same_as(b.quantale()) {
        Ok(())
    } else {
        Err(Error::QuantaleMismatch("spaces use different quantales".into()))
    }
}

fn require_interpolative(s: &ClosureSpace, who: &str) -> Result<()> {
    let r = s.is_interpolative()?;
    if r.passed {
        Ok(())
    } else {
        Err(Error::precondition(format!("{who} requires interpolative spaces; {r}")))
    }
}

impl ApproxRelation {
    pub fn new(source: Arc<ClosureSpace>, target: Arc<ClosureSpace>, theta: Vec<Elem>) -> Result<Self> {
        same_quantale(&source, &target)?;
        if theta.len() != source.size() * target.size() {
            return Err(Error::CarrierMismatch(format!(
                "relation table has {} entries, expected {}",
                theta.len(),
                source.size() * target.size()
            )));
        }
        if theta.iter().any(|e| e.index() >= source.quantale().size()) {
            return Err(Error::structural("relation uses an element outside the quantale"));
        }
        Ok(ApproxRelation {
            source,
            target,
            theta,
            validated: OnceLock::new(),
        })
    }

    pub fn from_fn(
        source: Arc<ClosureSpace>,
        target: Arc<ClosureSpace>,
        f: impl Fn(usize, usize) -> Elem,
    ) -> Result<Self> {
        let m = target.size();
        let theta = (0..source.size() * m).map(|k| f(k / m, k % m)).collect();
        Self::new(source, target, theta)
    }

    pub fn source(&self) -> &Arc<ClosureSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ClosureSpace> {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.theta
    }

    pub fn quantale(&self) -> &Arc<FiniteQuantale> {
        self.source.quantale()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Elem {
        self.theta[x * self.target.size() + y]
    }

    pub fn row(&self, x: usize) -> &[Elem] {
        let m = self.target.size();
        &self.theta[x * m..(x + 1) * m]
    }

    pub fn is_validated(&self) -> bool {
        matches!(self.validated.get(), Some(Ok(r)) if r.passed)
    }

    /// AP1 to AP5 and the two absorption equalities.
    pub fn validate(&self) -> Result<CheckResult> {
        self.validated
            .get_or_init(|| {
                require_interpolative(&self.source, "approximable-relation check")?;
                require_interpolative(&self.target, "approximable-relation check")?;
                Ok(self.compute_validation())
            })
            .clone()
    }

    fn compute_validation(&self) -> CheckResult {
        let q = self.quantale();
        let (xs, ys) = (&self.source, &self.target);
        let (n, m) = (xs.size(), ys.size());
        let cx = |x: usize, t: usize| xs.c(x)[t];
        let cy = |y: usize, t: usize| ys.c(y)[t];
        let name = |x: usize, y: usize| vec![xs.labels()[x].clone(), ys.labels()[y].clone()];

        for x in 0..n {
            if !q.at_least_unit(q.join_all(self.row(x).iter().copied())) {
                return CheckResult::fail("AP1", vec![xs.labels()[x].clone()], "⋁_y Θ(x,y) is not above u");
            }
        }
        for x in 0..n {
            for x2 in 0..n {
                for y in 0..m {
                    if !q.leq(q.tensor(cx(x2, x), self.get(x, y)), self.get(x2, y)) {
                        let mut w = name(x, y);
                        w.insert(1, xs.labels()[x2].clone());
                        return CheckResult::fail("AP2", w, "⟨u_x'⟩(x)⊗Θ(x,y) exceeds Θ(x',y)");
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..m {
                for y2 in 0..m {
                    if !q.leq(q.tensor(self.get(x, y), cy(y, y2)), self.get(x, y2)) {
                        let mut w = name(x, y);
                        w.push(ys.labels()[y2].clone());
                        return CheckResult::fail("AP3", w, "Θ(x,y)⊗⟨u_y⟩(y') exceeds Θ(x,y')");
                    }
                }
            }
        }
        let both_lclosure = matches!(xs.is_l_closure_space(), Ok(r) if r.passed)
            && matches!(ys.is_l_closure_space(), Ok(r) if r.passed);
        for x in 0..n {
            for y in 0..m {
                let rhs = q.join_all((0..n).flat_map(|x2| {
                    (0..m).map(move |y2| q.tensor(cx(x, x2), q.tensor(self.get(x2, y2), cy(y2, y))))
                }));
                if !q.leq(self.get(x, y), rhs) {
                    let trace = if both_lclosure {
                        "AP4 should hold automatically between L-closure spaces"
                    } else {
                        "Θ(x,y) is not interpolated"
                    };
                    return CheckResult::fail("AP4", name(x, y), trace);
                }
            }
        }
        for x in 0..n {
            for y1 in 0..m {
                for y2 in y1..m {
                    let lhs = q.tensor(self.get(x, y1), self.get(x, y2));
                    let rhs = q.join_all((0..m).map(|y3| {
                        q.tensor(self.get(x, y3), q.tensor(cy(y3, y1), cy(y3, y2)))
                    }));
                    if !q.leq(lhs, rhs) {
                        let mut w = name(x, y1);
                        w.push(ys.labels()[y2].clone());
                        return CheckResult::fail("AP5", w, "pair of images has no common bound");
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..m {
                let left = q.join_all((0..n).map(|x2| q.tensor(cx(x, x2), self.get(x2, y))));
                let right = q.join_all((0..m).map(|y2| q.tensor(self.get(x, y2), cy(y2, y))));
                if left != self.get(x, y) {
                    return CheckResult::fail("AP-left-absorb", name(x, y), "Θ differs from ⋁ ⟨u_x⟩(x')⊗Θ(x',y)");
                }
                if right != self.get(x, y) {
                    return CheckResult::fail("AP-right-absorb", name(x, y), "Θ differs from ⋁ Θ(x,y')⊗⟨u_y'⟩(y)");
                }
            }
        }
        let trace = if both_lclosure { "AP4 automatic between L-closure spaces; verified" } else { "" };
        CheckResult::pass("approximable").with_trace(trace)
    }

    fn require_validated(&self, who: &str) -> Result<()> {
        let r = self.validate()?;
        if r.passed {
            Ok(())
        } else {
            Err(Error::precondition(format!("{who} requires an approximable relation; {r}")))
        }
    }

    /// `Θ̃(U)(y) = ⋁ₓ U(x) ⊗ Θ(x, y)`, refusing `U` outside `𝔠(X)`.
    pub fn apply_to_closed(&self, u: &[Elem]) -> Result<Vec<Elem>> {
        self.require_validated("Θ̃")?;
        let dc = self.source.directed_closed_values(u);
        if !dc.passed {
            return Err(Error::precondition(format!("Θ̃ requires a directed closed set; {dc}")));
        }
        Ok(self.apply_values(u))
    }

    pub(crate) fn apply_values(&self, u: &[Elem]) -> Vec<Elem> {
        let q = self.quantale();
        (0..self.target.size())
            .map(|y| q.join_all(u.iter().enumerate().map(|(x, &ux)| q.tensor(ux, self.get(x, y)))))
            .collect()
    }
}

/// `id_X(x, y) = ⟨u_x⟩(y)`.
pub fn identity_relation(s: &Arc<ClosureSpace>) -> Result<ApproxRelation> {
    require_interpolative(s, "identity relation")?;
    let r = ApproxRelation::from_fn(s.clone(), s.clone(), |x, y| s.c(x)[y])?;
    let v = r.validate()?;
    if !v.passed {
        return Err(Error::Axiom(format!("identity relation failed {v}")));
    }
    Ok(r)
}

/// `(Υ ∘ Θ)(x, z) = ⋁_y Θ(x, y) ⊗ Υ(y, z)`; the composite is re-validated.
pub fn compose(upsilon: &ApproxRelation, theta: &ApproxRelation) -> Result<ApproxRelation> {
    if *theta.target != *upsilon.source {
        return Err(Error::CarrierMismatch("middle spaces of the composite differ".into()));
    }
    theta.require_validated("composition")?;
    upsilon.require_validated("composition")?;
    let q = theta.quantale();
    let m = theta.target.size();
    let r = ApproxRelation::from_fn(theta.source.clone(), upsilon.target.clone(), |x, z| {
        q.join_all((0..m).map(|y| q.tensor(theta.get(x, y), upsilon.get(y, z))))
    })?;
    let v = r.validate()?;
    if !v.passed {
        return Err(Error::Axiom(format!("composite relation failed {v}")));
    }
    Ok(r)
}

/// A map `𝔠(X) → 𝔠(Y)` given by indices into the lexicographically ordered
/// members of both spaces.
#[derive(Clone)]
pub struct ScottMap {
    source: Arc<ClosureSpace>,
    target: Arc<ClosureSpace>,
    images: Vec<usize>,
}

impl PartialEq for ScottMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && *self.source == *other.source && *self.target == *other.target
    }
}

impl std::fmt::Debug for ScottMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScottMap").field("images", &self.images).finish()
    }
}

/// Serializable image table of a Scott map, keyed by rendered members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScottMapImage {
    pub from: String,
    pub to: String,
}

impl ScottMap {
    /// Builds a map from image indices, checking it is Scott continuous.
    pub fn new(source: Arc<ClosureSpace>, target: Arc<ClosureSpace>, images: Vec<usize>) -> Result<Self> {
        same_quantale(&source, &target)?;
        let cx = source.dir_closed_sets()?;
        let cy = target.dir_closed_sets()?;
        if images.len() != cx.size() || images.iter().any(|&i| i >= cy.size()) {
            return Err(Error::CarrierMismatch("map does not go from 𝔠(X) to 𝔠(Y)".into()));
        }
        let sc = is_scott_continuous(&images, &cx, &cy)?;
        if !sc.passed {
            return Err(Error::precondition(format!("map is not Scott continuous; {sc}")));
        }
        Ok(ScottMap { source, target, images })
    }

    pub fn source(&self) -> &Arc<ClosureSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ClosureSpace> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_table(&self) -> Result<Vec<ScottMapImage>> {
        let cx = self.source.dir_closed_sets()?;
        let cy = self.target.dir_closed_sets()?;
        Ok(self
            .images
            .iter()
            .enumerate()
            .map(|(i, &j)| ScottMapImage {
                from: cx.label(i).to_string(),
                to: cy.label(j).to_string(),
            })
            .collect())
    }

    /// `g ∘ f`.
    pub fn then(&self, g: &ScottMap) -> Result<ScottMap> {
        if *self.target != *g.source {
            return Err(Error::CarrierMismatch("maps are not composable".into()));
        }
        Ok(ScottMap {
            source: self.source.clone(),
            target: g.target.clone(),
            images: self.images.iter().map(|&i| g.images[i]).collect(),
        })
    }

    pub fn identity(s: &Arc<ClosureSpace>) -> Result<ScottMap> {
        let n = s.dir_closed_sets()?.size();
        Ok(ScottMap {
            source: s.clone(),
            target: s.clone(),
            images: (0..n).collect(),
        })
    }
}

/// `ψ_Θ`: `U ↦ Θ̃(U)`, with every image re-checked for directed-closedness.
pub fn psi_of(theta: &ApproxRelation) -> Result<ScottMap> {
    theta.require_validated("ψ_Θ")?;
    let xs = theta.source.dir_closed_members()?;
    let ys = theta.target.dir_closed_members()?;
    let mut images = Vec::with_capacity(xs.len());
    for u in xs.iter() {
        let v = theta.apply_values(u);
        match ys.binary_search(&v) {
            Ok(j) => images.push(j),
            Err(_) => {
                let dc = theta.target.directed_closed_values(&v);
                return Err(Error::Axiom(format!(
                    "Θ̃({}) = {} is not directed closed ({dc})",
                    render(theta.quantale(), u),
                    render(theta.quantale(), &v)
                )));
            }
        }
    }
    let cx = theta.source.dir_closed_sets()?;
    let cy = theta.target.dir_closed_sets()?;
    let sc = is_scott_continuous(&images, &cx, &cy)?;
    if !sc.passed {
        return Err(Error::Axiom(format!("ψ_Θ is not Scott continuous; {sc}")));
    }
    Ok(ScottMap {
        source: theta.source.clone(),
        target: theta.target.clone(),
        images,
    })
}

/// `Θ_ψ(x, y) = ψ(⟨u_x⟩)(y)`.
pub fn theta_of(psi: &ScottMap) -> Result<ApproxRelation> {
    let xs = psi.source.dir_closed_members()?;
    let ys = psi.target.dir_closed_members()?;
    let mut rows = Vec::with_capacity(psi.source.size());
    for x in 0..psi.source.size() {
        let i = xs
            .binary_search(&psi.source.c(x).to_vec())
            .map_err(|_| Error::Axiom(format!("⟨u_{}⟩ is not directed closed", psi.source.labels()[x])))?;
        rows.push(ys[psi.images[i]].clone());
    }
    let theta = rows.concat();
    let r = ApproxRelation::new(psi.source.clone(), psi.target.clone(), theta)?;
    let v = r.validate()?;
    if !v.passed {
        return Err(Error::Axiom(format!("Θ_ψ failed {v}")));
    }
    Ok(r)
}

/// All approximable relations `X → Y`, or `None` when the table space
/// exceeds `budget`.
pub fn enumerate_approximable(
    xs: &Arc<ClosureSpace>,
    ys: &Arc<ClosureSpace>,
    budget: u64,
) -> Result<Option<Vec<ApproxRelation>>> {
    same_quantale(xs, ys)?;
    let base = xs.quantale().size();
    let cells = xs.size() * ys.size();
    let count = match checked_pow(base, cells) {
        Some(c) if c <= budget as u128 => c as u64,
        _ => return Ok(None),
    };
    let mut out = Vec::new();
    for r in 0..count {
        let rel = ApproxRelation::new(xs.clone(), ys.clone(), subset_at_rank(base, cells, r))?;
        if rel.validate()?.passed {
            out.push(rel);
        }
    }
    Ok(Some(out))
}

/// All Scott continuous maps `𝔠(X) → 𝔠(Y)`, or `None` over budget.
pub fn enumerate_scott_maps(
    xs: &Arc<ClosureSpace>,
    ys: &Arc<ClosureSpace>,
    budget: u64,
) -> Result<Option<Vec<ScottMap>>> {
    let cx = xs.dir_closed_sets()?;
    let cy = ys.dir_closed_sets()?;
    let count = match checked_pow(cy.size(), cx.size()) {
        Some(c) if c <= budget as u128 => c as u64,
        _ => return Ok(None),
    };
    let mut out = Vec::new();
    for r in 0..count {
        let images: Vec<usize> = subset_at_rank(cy.size(), cx.size(), r).iter().map(|e| e.index()).collect();
        if is_scott_continuous(&images, &cx, &cy)?.passed {
            out.push(ScottMap {
                source: xs.clone(),
                target: ys.clone(),
                images,
            });
        }
    }
    Ok(Some(out))
}

/// Random Scott continuous maps found by sampling image vectors.
pub fn sample_scott_maps(
    xs: &Arc<ClosureSpace>,
    ys: &Arc<ClosureSpace>,
    rng: &mut ChaCha8Rng,
    attempts: usize,
) -> Result<Vec<ScottMap>> {
    let cx = xs.dir_closed_sets()?;
    let cy = ys.dir_closed_sets()?;
    let mut out: Vec<ScottMap> = Vec::new();
    for _ in 0..attempts {
        let images = monotone_candidate(&cx, &cy, rng);
        if is_scott_continuous(&images, &cx, &cy)?.passed && !out.iter().any(|m| m.images == images) {
            out.push(ScottMap {
                source: xs.clone(),
                target: ys.clone(),
                images,
            });
        }
    }
    Ok(out)
}

/// Picks images point by point, preferring targets compatible with the
/// crisp order already fixed.
fn monotone_candidate(cx: &LOrderedSet, cy: &LOrderedSet, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let q = cx.quantale();
    let mut images: Vec<usize> = Vec::with_capacity(cx.size());
    for i in 0..cx.size() {
        let ok: Vec<usize> = (0..cy.size())
            .filter(|&j| {
                (0..i).all(|k| {
                    q.leq(cx.degree(k, i), cy.degree(images[k], j)) && q.leq(cx.degree(i, k), cy.degree(j, images[k]))
                })
            })
            .collect();
        let pick = if ok.is_empty() { rng.gen_range(0..cy.size()) } else { ok[rng.gen_range(0..ok.len())] };
        images.push(pick);
    }
    images
}

/// Outcome of the equivalence checks between two spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceOutcome {
    pub report: Report,
    /// Properties checked on a sample rather than exhaustively.
    #[serde(default)]
    pub sampled: Vec<String>,
}

/// Faithfulness, fullness, identity and composition laws, round trips and
/// an essential-surjectivity spot check on `𝔠(X)`.
pub fn check_equivalence_suite(
    xs: &Arc<ClosureSpace>,
    ys: &Arc<ClosureSpace>,
    budget: u64,
    seed: u64,
) -> Result<EquivalenceOutcome> {
    same_quantale(xs, ys)?;
    require_interpolative(xs, "equivalence suite")?;
    require_interpolative(ys, "equivalence suite")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    let mut sampled = Vec::new();

    let id_x = identity_relation(xs)?;
    let id_y = identity_relation(ys)?;

    let exhaustive_rel = enumerate_approximable(xs, ys, budget)?;
    let exhaustive_maps = enumerate_scott_maps(xs, ys, budget)?;
    let maps = match &exhaustive_maps {
        Some(m) => m.clone(),
        None => {
            sampled.push("scott-maps".to_string());
            sample_scott_maps(xs, ys, &mut rng, 64)?
        }
    };
    let relations = match &exhaustive_rel {
        Some(r) => r.clone(),
        None => {
            sampled.push("relations".to_string());
            maps.iter().map(theta_of).collect::<Result<Vec<_>>>()?
        }
    };

    let psis: Vec<ScottMap> = relations.iter().map(psi_of).collect::<Result<_>>()?;
    let distinct: BTreeSet<&[usize]> = psis.iter().map(|p| p.images()).collect();
    report.push(CheckResult::from_bool(
        "faithful",
        distinct.len() == psis.len(),
        "distinct relations share ψ_Θ",
    ));

    let full = match (&exhaustive_rel, &exhaustive_maps) {
        (Some(_), Some(all)) => {
            let hit = all.iter().find(|m| !distinct.contains(m.images()));
            match hit {
                None => CheckResult::pass("full").with_trace(format!(
                    "{} approximable relations ↔ {} Scott continuous maps",
                    relations.len(),
                    all.len()
                )),
                Some(m) => CheckResult::fail("full", vec![format!("{:?}", m.images())], "Scott map not of the form ψ_Θ"),
            }
        }
        _ => {
            sampled.push("full".to_string());
            let bad = maps.iter().find(|m| !matches!(theta_of(m).and_then(|t| psi_of(&t)), Ok(p) if p == **m));
            match bad {
                None => CheckResult::pass("full").with_trace("round-trip evidence ψ_{Θ_ψ} = ψ"),
                Some(m) => CheckResult::fail("full", vec![format!("{:?}", m.images())], "ψ_{Θ_ψ} differs from ψ"),
            }
        }
    };
    report.push(full);

    let mut round = CheckResult::pass("round-trip");
    for t in &relations {
        if theta_of(&psi_of(t)?)?.table() != t.table() {
            round = CheckResult::fail("round-trip", vec![format!("{t:?}")], "Θ_{ψ_Θ} differs from Θ");
            break;
        }
    }
    if round.passed {
        for m in &maps {
            if psi_of(&theta_of(m)?)? != *m {
                round = CheckResult::fail("round-trip", vec![format!("{:?}", m.images())], "ψ_{Θ_ψ} differs from ψ");
                break;
            }
        }
    }
    report.push(round);

    let mut ident = CheckResult::pass("identity-laws");
    for t in &relations {
        if compose(t, &id_x)?.table() != t.table() || compose(&id_y, t)?.table() != t.table() {
            ident = CheckResult::fail("identity-laws", vec![format!("{t:?}")], "Θ∘id or id∘Θ differs from Θ");
            break;
        }
    }
    report.push(ident);

    let f_id = psi_of(&id_x)? == ScottMap::identity(xs)? && psi_of(&id_y)? == ScottMap::identity(ys)?;
    report.push(CheckResult::from_bool("functor-identity", f_id, "F(id) differs from id"));

    let backward = enumerate_approximable(ys, xs, budget)?;
    let backward = match backward {
        Some(b) => b,
        None => {
            if !sampled.contains(&"functor-composition".to_string()) {
                sampled.push("functor-composition".to_string());
            }
            sample_scott_maps(ys, xs, &mut rng, 64)?.iter().map(theta_of).collect::<Result<_>>()?
        }
    };
    let pairs: Vec<(usize, usize)> = (0..relations.len())
        .flat_map(|i| (0..backward.len()).map(move |j| (i, j)))
        .collect();
    let chosen: Vec<(usize, usize)> = if pairs.len() as u64 <= budget.min(4096) {
        pairs
    } else {
        if !sampled.contains(&"functor-composition".to_string()) {
            sampled.push("functor-composition".to_string());
        }
        (0..64).map(|_| pairs[rng.gen_range(0..pairs.len())]).collect()
    };
    let mut comp = CheckResult::pass("functor-composition");
    for (i, j) in chosen {
        let (t, u) = (&relations[i], &backward[j]);
        let lhs = psi_of(&compose(u, t)?)?;
        let rhs = psi_of(t)?.then(&psi_of(u)?)?;
        if lhs != rhs {
            comp = CheckResult::fail("functor-composition", vec![format!("{t:?}"), format!("{u:?}")], "F(Υ∘Θ) differs from F(Υ)∘F(Θ)");
            break;
        }
    }
    report.push(comp);

    let cx = xs.dir_closed_sets()?;
    report.push(essential_surjectivity(&cx)?);
    Ok(EquivalenceOutcome { report, sampled })
}

/// `F(closureOfDomain(P)) ≅ P` via `x ↦ ⇓x` for a continuous L-dcpo `P`.
pub fn essential_surjectivity(p: &LOrderedSet) -> Result<CheckResult> {
    let s = closure_of_domain(p)?;
    let c = s.dir_closed_sets()?;
    let members = s.dir_closed_members()?;
    let wb = way_below_table(p)?;
    let mut map = Vec::with_capacity(p.size());
    for (x, row) in wb.iter().enumerate() {
        match members.binary_search(row) {
            Ok(i) => map.push(i),
            Err(_) => {
                return Ok(CheckResult::fail(
                    "essentially-surjective",
                    vec![p.label(x).to_string()],
                    "⇓x is not a directed closed set",
                ))
            }
        }
    }
    Ok(CheckResult::from_bool(
        "essentially-surjective",
        map.len() == c.size() && check_iso_via(&map, p, &c),
        "x ↦ ⇓x is not an isomorphism onto 𝔠",
    ))
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

    fn down_space(p: &LOrderedSet) -> Arc<ClosureSpace> {
        let c = (0..p.size()).map(|x| p.down_values(x)).collect();
        Arc::new(ClosureSpace::point_generated(p.quantale().clone(), p.labels().to_vec(), c).unwrap())
    }

    fn chain(name: &str, n: usize) -> Arc<ClosureSpace> {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        down_space(&LOrderedSet::from_crisp(q(name), names, |i, j| i <= j).unwrap())
    }

    #[test]
    fn identity_and_zero() {
        let s = chain("boolean", 2);
        let id = identity_relation(&s).unwrap();
        assert!(id.validate().unwrap().passed);
        let l = s.quantale().clone();
        let zero = ApproxRelation::new(s.clone(), s.clone(), vec![l.bottom(); 4]).unwrap();
        assert_eq!(zero.validate().unwrap().label, "AP1");
    }

    #[test]
    fn one_point_identity() {
        let s = chain("boolean", 1);
        let id = identity_relation(&s).unwrap();
        assert_eq!(id.table(), &[s.quantale().unit()]);
        let all = enumerate_approximable(&s, &s, 1 << 10).unwrap().unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(enumerate_scott_maps(&s, &s, 1 << 10).unwrap().unwrap().len(), 1);
    }

    #[test]
    fn composition_formula() {
        let s = chain("boolean", 2);
        let l = s.quantale().clone();
        let (o, z) = (l.top(), l.bottom());
        // Θ sends everything to the top point's down-set.
        let t = ApproxRelation::new(s.clone(), s.clone(), vec![o, o, o, o]).unwrap();
        assert!(t.validate().unwrap().passed);
        let id = identity_relation(&s).unwrap();
        assert_eq!(id.table(), &[o, z, o, o]);
        assert_eq!(compose(&t, &id).unwrap().table(), t.table());
        assert_eq!(compose(&id, &t).unwrap().table(), t.table());
    }

    #[test]
    fn apply_refuses_non_closed() {
        let s = chain("boolean", 2);
        let l = s.quantale().clone();
        let id = identity_relation(&s).unwrap();
        assert!(matches!(id.apply_to_closed(&[l.bottom(), l.bottom()]), Err(Error::Precondition(_))));
        for u in s.dir_closed_members().unwrap().iter() {
            assert_eq!(&id.apply_to_closed(u).unwrap(), u);
        }
    }

    #[test]
    fn tiny_boolean_bijection() {
        let s = chain("boolean", 2);
        let rels = enumerate_approximable(&s, &s, 16).unwrap().unwrap();
        let maps = enumerate_scott_maps(&s, &s, 16).unwrap().unwrap();
        assert_eq!(rels.len(), maps.len());
        let out = check_equivalence_suite(&s, &s, 1 << 12, 1).unwrap();
        assert!(out.report.all_passed(), "{}", out.report);
        assert!(out.sampled.is_empty());
    }

    #[test]
    fn lukasiewicz_equivalence() {
        let a = chain("lukasiewicz-3", 2);
        let b = chain("lukasiewicz-3", 1);
        let out = check_equivalence_suite(&a, &b, 1 << 12, 2).unwrap();
        assert!(out.report.all_passed(), "{}", out.report);
    }

    #[test]
    fn round_trips() {
        let s = chain("goedel-3", 2);
        let id = identity_relation(&s).unwrap();
        let psi = psi_of(&id).unwrap();
        assert_eq!(psi, ScottMap::identity(&s).unwrap());
        assert_eq!(theta_of(&psi).unwrap().table(), id.table());
    }

    #[test]
    fn quantale_mismatch() {
        let a = chain("boolean", 1);
        let b = chain("goedel-3", 1);
        assert!(matches!(
            ApproxRelation::new(a, b, vec![Elem::from_index(1)]),
            Err(Error::QuantaleMismatch(_))
        ));
    }

    #[test]
    fn non_scott_map_is_refused() {
        let s = chain("boolean", 2);
        // Reversing the two members breaks order preservation.
        assert!(matches!(ScottMap::new(s.clone(), s, vec![1, 0]), Err(Error::Precondition(_))));
    }

    #[test]
    fn middle_mismatch() {
        let a = chain("boolean", 1);
        let b = chain("boolean", 2);
        let ia = identity_relation(&a).unwrap();
        let ib = identity_relation(&b).unwrap();
        assert!(matches!(compose(&ib, &ia), Err(Error::CarrierMismatch(_))));
    }

    #[test]
    fn ap4_failure_is_labelled() {
        // Point closures that are not reflexive leave room for AP4 to fail.
        let l = q("boolean");
        let (o, z) = (l.top(), l.bottom());
        let s = Arc::new(ClosureSpace::point_generated(l.clone(), labels(&["a", "b"]), vec![vec![z, o], vec![z, o]]).unwrap());
        assert!(s.is_interpolative().unwrap().passed);
        let t = ApproxRelation::new(s.clone(), s.clone(), vec![o, o, z, o]).unwrap();
        let r = t.validate().unwrap();
        assert_eq!(r.label, "AP4");
        assert_eq!(r.witness, labels(&["a", "a"]));
    }
}
