//! L-ordered sets: lower/upper sets, directedness, suprema and infima,
//! L-dcpo recognition, Scott continuity and L-order isomorphisms.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::check::{CheckResult, Report};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lsubset::{
    characteristic, count_lsubsets, enumerate_lsubsets, height, render, sub_degree,
    subset_at_rank, CarrierId, LSubset,
};
use crate::quantale::{Elem, FiniteQuantale};

/// A directed L-subset together with its supremum, if any.
#[derive(Debug, Clone)]
pub struct DirectedEntry {
    pub values: Vec<Elem>,
    pub sup: Option<usize>,
    pub is_lower: bool,
}

/// All directed L-subsets of a carrier in lexicographic order.
#[derive(Debug)]
pub struct DirectedFamily {
    pub entries: Vec<DirectedEntry>,
}

impl DirectedFamily {
    pub fn ideals(&self) -> impl Iterator<Item = &DirectedEntry> {
        self.entries.iter().filter(|d| d.is_lower)
    }
}

/// A finite carrier with an L-valued order `e`.
#[derive(Clone)]
pub struct LOrderedSet {
    q: Arc<FiniteQuantale>,
    labels: Vec<String>,
    id: CarrierId,
    e: Vec<Elem>,
    limits: Limits,
    directed: OnceLock<Result<Arc<DirectedFamily>>>,
    pub(crate) way_below: OnceLock<Result<Arc<Vec<Vec<Elem>>>>>,
}

impl PartialEq for LOrderedSet {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.e == other.e && self.q.same_as(&other.q)
    }
}

impl fmt::Debug for LOrderedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for i in 0..self.size() {
            let row: Vec<&str> = (0..self.size()).map(|j| self.q.label(self.degree(i, j))).collect();
            m.entry(&self.labels[i], &row);
        }
        m.finish()
    }
}

/// Checks reflexivity, transitivity and antisymmetry of a degree table.
pub fn validate_lorder(q: &FiniteQuantale, labels: &[String], e: &[Elem]) -> Result<Report> {
    let n = labels.len();
    if e.len() != n * n {
        return Err(Error::structural(format!(
            "order table has {} entries, expected {}",
            e.len(),
            n * n
        )));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::structural(format!("duplicate point label `{l}`")));
        }
    }
    let d = |i: usize, j: usize| e[i * n + j];
    let names = |xs: &[usize]| xs.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>();
    let mut report = Report::new();

    report.push(match (0..n).find(|&x| !q.at_least_unit(d(x, x))) {
        None => CheckResult::pass("reflexivity"),
        Some(x) => CheckResult::fail("reflexivity", names(&[x]), "e(x,x) ≱ u"),
    });

    let mut trans = CheckResult::pass("transitivity");
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !q.leq(q.tensor(d(x, y), d(y, z)), d(x, z)) {
                    trans = CheckResult::fail(
                        "transitivity",
                        names(&[x, y, z]),
                        "e(x,y)⊗e(y,z) ≰ e(x,z)",
                    );
                    break 'outer;
                }
            }
        }
    }
    report.push(trans);

    let anti = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| x != y && q.at_least_unit(q.meet(d(x, y), d(y, x))));
    report.push(match anti {
        None => CheckResult::pass("antisymmetry"),
        Some((x, y)) => CheckResult::fail("antisymmetry", names(&[x, y]), "e(x,y)∧e(y,x) ≥ u"),
    });
    Ok(report)
}

impl LOrderedSet {
    /// Builds and validates an L-ordered set from a dense degree table.
    pub fn new(q: Arc<FiniteQuantale>, labels: Vec<String>, e: Vec<Elem>) -> Result<Self> {
        let report = validate_lorder(&q, &labels, &e)?;
        if let Some(fail) = report.first_failure() {
            return Err(Error::Axiom(format!(
                "{} violated at ({})",
                fail.label,
                fail.witness.join(", ")
            )));
        }
        Ok(Self::new_unchecked(q, labels, e))
    }

    pub(crate) fn new_unchecked(q: Arc<FiniteQuantale>, labels: Vec<String>, e: Vec<Elem>) -> Self {
        LOrderedSet {
            id: CarrierId::of(&labels),
            q,
            labels,
            e,
            limits: Limits::default(),
            directed: OnceLock::new(),
            way_below: OnceLock::new(),
        }
    }

    pub fn from_fn(
        q: Arc<FiniteQuantale>,
        labels: Vec<String>,
        f: impl Fn(usize, usize) -> Elem,
    ) -> Result<Self> {
        let n = labels.len();
        let e = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(q, labels, e)
    }

    /// Embeds a classical partial order given as `leq(i, j)`.
    pub fn from_crisp(
        q: Arc<FiniteQuantale>,
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let (top, bottom) = (q.top(), q.bottom());
        Self::from_fn(q, labels, |i, j| if leq(i, j) { top } else { bottom })
    }

    /// `(L, e_L)` with `e_L(x, y) = x → y`.
    pub fn lattice_order(q: Arc<FiniteQuantale>) -> Result<Self> {
        let labels = q.labels().to_vec();
        let qq = q.clone();
        Self::from_fn(q, labels, move |i, j| {
            qq.residuate(Elem::from_index(i), Elem::from_index(j))
        })
    }

    /// `(τ, sub)` for a family of value vectors over a common carrier.
    pub fn family_order(q: Arc<FiniteQuantale>, members: &[Vec<Elem>]) -> Result<Self> {
        let labels = members.iter().map(|m| render(&q, m)).collect();
        let qq = q.clone();
        Self::from_fn(q, labels, |i, j| sub_degree(&qq, &members[i], &members[j]))
    }

    /// `(L^X, sub)` on an `n`-point carrier.
    pub fn powerset_order(q: Arc<FiniteQuantale>, n: usize, limits: &Limits) -> Result<Self> {
        let members: Vec<Vec<Elem>> = enumerate_lsubsets(&q, n, limits)?.collect();
        Ok(Self::family_order(q, &members)?.with_limits(*limits))
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self.directed = OnceLock::new();
        self.way_below = OnceLock::new();
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

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn carrier_id(&self) -> CarrierId {
        self.id
    }

    pub fn point(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel {
                label: label.to_string(),
                context: "L-ordered set".into(),
            })
    }

    #[inline]
    pub fn degree(&self, x: usize, y: usize) -> Elem {
        self.e[x * self.size() + y]
    }

    pub fn table(&self) -> &[Elem] {
        &self.e
    }

    pub fn names(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn render(&self, values: &[Elem]) -> String {
        render(&self.q, values)
    }

    /// Wraps a value vector as an L-subset of this carrier.
    pub fn subset(&self, values: Vec<Elem>) -> Result<LSubset> {
        if values.len() != self.size() {
            return Err(Error::CarrierMismatch(format!(
                "L-subset has {} values, carrier has {} points",
                values.len(),
                self.size()
            )));
        }
        Ok(LSubset::new(self.id, values))
    }

    fn own(&self, s: &LSubset) -> Result<()> {
        if s.carrier() != self.id || s.len() != self.size() {
            return Err(Error::CarrierMismatch(
                "L-subset is not over this L-ordered set".into(),
            ));
        }
        Ok(())
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x < self.size() {
            Ok(())
        } else {
            Err(Error::UnknownLabel {
                label: format!("#{x}"),
                context: "L-ordered set".into(),
            })
        }
    }

    pub fn characteristic(&self, x: usize) -> Result<LSubset> {
        self.check_point(x)?;
        Ok(LSubset::new(self.id, characteristic(&self.q, self.size(), x)))
    }

    pub fn constant(&self, a: Elem) -> LSubset {
        LSubset::new(self.id, vec![a; self.size()])
    }

    pub fn up_set(&self, x: usize) -> Result<LSubset> {
        self.check_point(x)?;
        Ok(LSubset::new(self.id, self.up_values(x)))
    }

    pub fn down_set(&self, x: usize) -> Result<LSubset> {
        self.check_point(x)?;
        Ok(LSubset::new(self.id, self.down_values(x)))
    }

    /// `↑x(y) = e(x, y)`.
    pub fn up_values(&self, x: usize) -> Vec<Elem> {
        (0..self.size()).map(|y| self.degree(x, y)).collect()
    }

    /// `↓x(y) = e(y, x)`.
    pub fn down_values(&self, x: usize) -> Vec<Elem> {
        (0..self.size()).map(|y| self.degree(y, x)).collect()
    }

    pub(crate) fn lower_values(&self, s: &[Elem], upper: bool) -> CheckResult {
        let q = &self.q;
        let n = self.size();
        let label = if upper { "upper-set" } else { "lower-set" };
        for x in 0..n {
            for y in 0..n {
                let e = if upper { self.degree(x, y) } else { self.degree(y, x) };
                if !q.leq(q.tensor(s[x], e), s[y]) {
                    return if upper {
                        CheckResult::fail(label, self.names(&[x, y]), "S(a)⊗e(a,b) ≰ S(b)")
                    } else {
                        CheckResult::fail(label, self.names(&[y, x]), "e(a,b)⊗S(b) ≰ S(a)")
                    };
                }
            }
        }
        CheckResult::pass(label)
    }

    pub fn is_lower_set(&self, s: &LSubset) -> Result<CheckResult> {
        self.own(s)?;
        Ok(self.lower_values(s.values(), false))
    }

    pub fn is_upper_set(&self, s: &LSubset) -> Result<CheckResult> {
        self.own(s)?;
        Ok(self.lower_values(s.values(), true))
    }

    /// (D1) and (D2) on a raw value vector.
    pub(crate) fn directed_values(&self, d: &[Elem]) -> CheckResult {
        let q = &self.q;
        let n = self.size();
        if !q.at_least_unit(height(q, d)) {
            return CheckResult::fail("D1", vec![], "⋁D(x) ≱ u");
        }
        for x in 0..n {
            for y in 0..n {
                let lhs = q.tensor(d[x], d[y]);
                if lhs == q.bottom() {
                    continue;
                }
                let rhs = q.join_all(
                    (0..n).map(|z| q.tensor(q.tensor(d[z], self.degree(x, z)), self.degree(y, z))),
                );
                if !q.leq(lhs, rhs) {
                    return CheckResult::fail(
                        "D2",
                        self.names(&[x, y]),
                        "D(x)⊗D(y) ≰ ⋁_z D(z)⊗e(x,z)⊗e(y,z)",
                    );
                }
            }
        }
        CheckResult::pass("directed")
    }

    pub fn is_directed(&self, d: &LSubset) -> Result<CheckResult> {
        self.own(d)?;
        Ok(self.directed_values(d.values()))
    }

    pub fn is_ideal(&self, d: &LSubset) -> Result<CheckResult> {
        self.own(d)?;
        Ok(self.ideal_values(d.values()))
    }

    pub(crate) fn ideal_values(&self, d: &[Elem]) -> CheckResult {
        let dir = self.directed_values(d);
        if !dir.passed {
            return dir;
        }
        let low = self.lower_values(d, false);
        if !low.passed {
            return low;
        }
        CheckResult::pass("ideal")
    }

    /// Supremum via `e(x₀, y) = sub(A, ↓y)` for all `y`.
    pub(crate) fn sup_values(&self, a: &[Elem]) -> Option<usize> {
        let n = self.size();
        let q = &self.q;
        let target: Vec<Elem> = (0..n)
            .map(|y| q.meet_all((0..n).map(|x| q.residuate(a[x], self.degree(x, y)))))
            .collect();
        let mut found = (0..n).filter(|&x0| (0..n).all(|y| self.degree(x0, y) == target[y]));
        let first = found.next();
        debug_assert!(found.next().is_none(), "antisymmetry makes suprema unique");
        first
    }

    /// Infimum via `e(y, x₀) = sub(A, ↑y)` for all `y`.
    pub(crate) fn inf_values(&self, a: &[Elem]) -> Option<usize> {
        let n = self.size();
        let q = &self.q;
        let target: Vec<Elem> = (0..n)
            .map(|y| q.meet_all((0..n).map(|x| q.residuate(a[x], self.degree(y, x)))))
            .collect();
        let mut found = (0..n).filter(|&x0| (0..n).all(|y| self.degree(y, x0) == target[y]));
        let first = found.next();
        debug_assert!(found.next().is_none(), "antisymmetry makes infima unique");
        first
    }

    pub fn supremum(&self, a: &LSubset) -> Result<Option<usize>> {
        self.own(a)?;
        Ok(self.sup_values(a.values()))
    }

    pub fn infimum(&self, a: &LSubset) -> Result<Option<usize>> {
        self.own(a)?;
        Ok(self.inf_values(a.values()))
    }

    /// Every L-subset of the carrier, lexicographically.
    pub fn all_subsets(&self) -> Result<impl Iterator<Item = LSubset> + '_> {
        let id = self.id;
        Ok(enumerate_lsubsets(&self.q, self.size(), &self.limits)?.map(move |v| LSubset::new(id, v)))
    }

    /// Directed L-subsets with their suprema; computed once per instance.
    pub fn directed_family(&self) -> Result<Arc<DirectedFamily>> {
        self.directed
            .get_or_init(|| {
                let count = count_lsubsets(&self.q, self.size(), &self.limits)?;
                let base = self.q.size();
                let n = self.size();
                let entries = (0..count)
                    .into_par_iter()
                    .filter_map(|rank| {
                        let values = subset_at_rank(base, n, rank);
                        if !self.directed_values(&values).passed {
                            return None;
                        }
                        let sup = self.sup_values(&values);
                        let is_lower = self.lower_values(&values, false).passed;
                        Some(DirectedEntry {
                            values,
                            sup,
                            is_lower,
                        })
                    })
                    .collect();
                Ok(Arc::new(DirectedFamily { entries }))
            })
            .clone()
    }

    /// Every directed L-subset has a supremum.
    pub fn is_ldcpo(&self) -> Result<CheckResult> {
        let fam = self.directed_family()?;
        Ok(match fam.entries.iter().find(|d| d.sup.is_none()) {
            None => CheckResult::pass("L-dcpo"),
            Some(d) => CheckResult::fail(
                "L-dcpo",
                vec![self.render(&d.values)],
                "directed L-subset without supremum",
            ),
        })
    }

    pub(crate) fn require_ldcpo(&self, who: &str) -> Result<Arc<DirectedFamily>> {
        let fam = self.directed_family()?;
        if let Some(d) = fam.entries.iter().find(|d| d.sup.is_none()) {
            return Err(Error::precondition(format!(
                "{who} requires an L-dcpo; {} has no supremum",
                self.render(&d.values)
            )));
        }
        Ok(fam)
    }

    /// The sub-L-ordered set on the given points (in the given order).
    pub fn restrict(&self, points: &[usize]) -> Result<LOrderedSet> {
        for &p in points {
            self.check_point(p)?;
        }
        let labels = points.iter().map(|&p| self.labels[p].clone()).collect();
        let k = points.len();
        let e = (0..k * k)
            .map(|i| self.degree(points[i / k], points[i % k]))
            .collect();
        Ok(LOrderedSet::new_unchecked(self.q.clone(), labels, e).with_limits(self.limits))
    }
}

/// `f→(A)(y) = ⋁_{f(x)=y} A(x)`.
pub fn zadeh_forward(q: &FiniteQuantale, f: &[usize], a: &[Elem], target_size: usize) -> Vec<Elem> {
    let mut out = vec![q.bottom(); target_size];
    for (x, &fx) in f.iter().enumerate() {
        out[fx] = q.join(out[fx], a[x]);
    }
    out
}

fn check_map(f: &[usize], p: &LOrderedSet, q: &LOrderedSet) -> Result<()> {
    if f.len() != p.size() || f.iter().any(|&y| y >= q.size()) {
        return Err(Error::structural("point map is not total between the carriers"));
    }
    if !p.quantale().same_as(q.quantale()) {
        return Err(Error::QuantaleMismatch("L-ordered sets over different quantales".into()));
    }
    Ok(())
}

/// `e_P(x, y) ≤ e_Q(f x, f y)` for all pairs.
pub fn is_order_preserving(f: &[usize], p: &LOrderedSet, q: &LOrderedSet) -> Result<CheckResult> {
    check_map(f, p, q)?;
    let l = p.quantale();
    for x in 0..p.size() {
        for y in 0..p.size() {
            if !l.leq(p.degree(x, y), q.degree(f[x], f[y])) {
                return Ok(CheckResult::fail(
                    "order-preserving",
                    p.names(&[x, y]),
                    "e_P(x,y) ≰ e_Q(f(x),f(y))",
                ));
            }
        }
    }
    Ok(CheckResult::pass("order-preserving"))
}

/// Order preservation plus `f(⊔D) = ⊔f→(D)` for every directed `D`.
pub fn is_scott_continuous(f: &[usize], p: &LOrderedSet, q: &LOrderedSet) -> Result<CheckResult> {
    check_map(f, p, q)?;
    let fam = p.require_ldcpo("Scott continuity")?;
    q.require_ldcpo("Scott continuity")?;
    let mono = is_order_preserving(f, p, q)?;
    if !mono.passed {
        return Ok(mono);
    }
    let l = p.quantale();
    let bad = fam.entries.par_iter().find_first(|d| {
        let image = zadeh_forward(l, f, &d.values, q.size());
        let sup = d.sup.expect("L-dcpo");
        q.sup_values(&image) != Some(f[sup])
    });
    Ok(match bad {
        None => CheckResult::pass("scott-continuous"),
        Some(d) => CheckResult::fail(
            "scott-continuous",
            vec![p.render(&d.values)],
            "f(⊔D) ≠ ⊔f→(D)",
        ),
    })
}

/// `f` is a bijection with `e_P(x, y) = e_Q(f x, f y)`.
pub fn check_iso_via(f: &[usize], p: &LOrderedSet, q: &LOrderedSet) -> bool {
    if f.len() != p.size() || p.size() != q.size() || !p.quantale().same_as(q.quantale()) {
        return false;
    }
    let mut seen = vec![false; q.size()];
    for &y in f {
        if y >= q.size() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    (0..p.size()).all(|x| (0..p.size()).all(|y| p.degree(x, y) == q.degree(f[x], f[y])))
}

/// Searches for an L-order isomorphism by backtracking.
pub fn find_lorder_iso(p: &LOrderedSet, q: &LOrderedSet) -> Result<Option<Vec<usize>>> {
    let guard = p.limits().iso_guard;
    if p.size() > guard {
        return Err(Error::TooLarge {
            size: p.size(),
            limit: guard,
        });
    }
    if p.size() != q.size() || !p.quantale().same_as(q.quantale()) {
        return Ok(None);
    }
    fn extend(p: &LOrderedSet, q: &LOrderedSet, f: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let x = f.len();
        if x == p.size() {
            return true;
        }
        for y in 0..q.size() {
            if used[y] || p.degree(x, x) != q.degree(y, y) {
                continue;
            }
            let ok = (0..x).all(|w| {
                p.degree(w, x) == q.degree(f[w], y) && p.degree(x, w) == q.degree(y, f[w])
            });
            if !ok {
                continue;
            }
            used[y] = true;
            f.push(y);
            if extend(p, q, f, used) {
                return true;
            }
            f.pop();
            used[y] = false;
        }
        false
    }
    let mut f = Vec::with_capacity(p.size());
    let mut used = vec![false; q.size()];
    Ok(extend(p, q, &mut f, &mut used).then_some(f))
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

    fn two_chain() -> LOrderedSet {
        LOrderedSet::from_crisp(q("boolean"), labels(&["bot", "top"]), |i, j| i <= j).unwrap()
    }

    fn antichain() -> LOrderedSet {
        LOrderedSet::from_crisp(q("boolean"), labels(&["a", "b"]), |i, j| i == j).unwrap()
    }

    #[test]
    fn down_and_up_sets() {
        let p = two_chain();
        let l = p.quantale().clone();
        assert_eq!(p.down_set(1).unwrap().values(), &[l.top(), l.top()]);
        for x in 0..2 {
            assert!(l.at_least_unit(p.down_set(x).unwrap().get(x)));
            assert!(p.is_lower_set(&p.down_set(x).unwrap()).unwrap().passed);
            assert!(p.is_upper_set(&p.up_set(x).unwrap()).unwrap().passed);
        }
        assert!(p.down_set(2).is_err());

        let ql = q("lukasiewicz-3");
        let el = LOrderedSet::lattice_order(ql.clone()).unwrap();
        let half = el.point("1/2").unwrap();
        let one = el.point("1").unwrap();
        assert_eq!(el.down_set(half).unwrap().get(one), ql.elem("1/2").unwrap());
    }

    #[test]
    fn lower_set_counterexample() {
        let p = two_chain();
        let l = p.quantale();
        let s = p.subset(vec![l.bottom(), l.top()]).unwrap();
        let r = p.is_lower_set(&s).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness, vec!["bot".to_string(), "top".to_string()]);
        for a in l.elements() {
            assert!(p.is_lower_set(&p.constant(a)).unwrap().passed);
        }
    }

    #[test]
    fn directedness() {
        let p = two_chain();
        let l = p.quantale().clone();
        assert!(p.is_directed(&p.down_set(1).unwrap()).unwrap().passed);
        let zero = p.constant(l.bottom());
        assert_eq!(p.is_directed(&zero).unwrap().label, "D1");
        assert!(!p.is_ideal(&zero).unwrap().passed);

        let a = antichain();
        let both = a.subset(vec![l.unit(), l.unit()]).unwrap();
        let r = a.is_directed(&both).unwrap();
        assert_eq!(r.label, "D2");
        assert_eq!(r.witness, vec!["a".to_string(), "b".to_string()]);

        // ↑⊤ on the 2-chain is directed but not a lower set.
        let up = p.up_set(1).unwrap();
        assert!(p.is_directed(&up).unwrap().passed);
        assert_eq!(p.is_ideal(&up).unwrap().label, "lower-set");
    }

    #[test]
    fn suprema_and_infima() {
        let p = two_chain();
        for x in 0..2 {
            assert_eq!(p.supremum(&p.down_set(x).unwrap()).unwrap(), Some(x));
            assert_eq!(p.supremum(&p.characteristic(x).unwrap()).unwrap(), Some(x));
            assert_eq!(p.infimum(&p.up_set(x).unwrap()).unwrap(), Some(x));
            assert_eq!(p.infimum(&p.characteristic(x).unwrap()).unwrap(), Some(x));
        }
        let a = antichain();
        let l = a.quantale().clone();
        let both = a.subset(vec![l.unit(), l.unit()]).unwrap();
        assert_eq!(a.supremum(&both).unwrap(), None);
        assert_eq!(a.infimum(&both).unwrap(), None);
    }

    #[test]
    fn ldcpo_recognition() {
        // Finite classical posets are dcpos: u_a ∨ u_b on the antichain is not directed.
        assert!(antichain().is_ldcpo().unwrap().passed);
        assert!(two_chain().is_ldcpo().unwrap().passed);
        let ps = LOrderedSet::powerset_order(q("boolean"), 2, &Limits::default()).unwrap();
        assert!(ps.is_ldcpo().unwrap().passed);
    }

    #[test]
    fn powerset_suprema_are_weighted_joins() {
        let l = q("lukasiewicz-3");
        let ps = LOrderedSet::powerset_order(l.clone(), 1, &Limits::default()).unwrap();
        let members: Vec<Vec<Elem>> = enumerate_lsubsets(&l, 1, &Limits::default()).unwrap().collect();
        for fam in ps.all_subsets().unwrap() {
            let mut join = vec![l.bottom(); 1];
            let mut meet = vec![l.top(); 1];
            for (i, m) in members.iter().enumerate() {
                crate::lsubset::join_scaled_into(&l, &mut join, fam.get(i), m);
                meet[0] = l.meet(meet[0], l.residuate(fam.get(i), m[0]));
            }
            let sup = ps.supremum(&fam).unwrap().unwrap();
            assert_eq!(members[sup], join);
            let inf = ps.infimum(&fam).unwrap().unwrap();
            assert_eq!(members[inf], meet);
        }
    }

    #[test]
    fn zadeh_examples() {
        let l = q("lukasiewicz-3");
        let a = vec![l.elem("1/2").unwrap(), l.top()];
        assert_eq!(zadeh_forward(&l, &[0, 1], &a, 2), a);
        assert_eq!(zadeh_forward(&l, &[0, 0], &a, 1), vec![l.top()]);
        assert_eq!(zadeh_forward(&l, &[1, 1], &a, 2), vec![l.bottom(), l.top()]);
    }

    #[test]
    fn scott_continuity() {
        let chain3 =
            LOrderedSet::from_crisp(q("boolean"), labels(&["a", "b", "c"]), |i, j| i <= j).unwrap();
        assert!(is_scott_continuous(&[0, 1, 2], &chain3, &chain3).unwrap().passed);
        assert!(is_scott_continuous(&[1, 1, 1], &chain3, &chain3).unwrap().passed);
        let r = is_scott_continuous(&[2, 1, 1], &chain3, &chain3).unwrap();
        assert_eq!(r.label, "order-preserving");
        assert_eq!(r.witness, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn isomorphisms() {
        let p = two_chain();
        assert_eq!(find_lorder_iso(&p, &p).unwrap(), Some(vec![0, 1]));
        assert_eq!(find_lorder_iso(&p, &antichain()).unwrap(), None);
        let flipped =
            LOrderedSet::from_crisp(q("boolean"), labels(&["x", "y"]), |i, j| i >= j).unwrap();
        assert_eq!(find_lorder_iso(&p, &flipped).unwrap(), Some(vec![1, 0]));
        assert!(check_iso_via(&[1, 0], &p, &flipped));
        assert!(!check_iso_via(&[0, 1], &p, &flipped));
        let big = LOrderedSet::from_crisp(q("boolean"), (0..9).map(|i| i.to_string()).collect(), |i, j| i <= j).unwrap();
        assert!(matches!(find_lorder_iso(&big, &big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn validation_witnesses() {
        let l = q("boolean");
        let (o, i) = (l.bottom(), l.top());
        let r = validate_lorder(&l, &labels(&["a", "b"]), &[i, i, i, i]).unwrap();
        assert_eq!(r.first_failure().unwrap().label, "antisymmetry");
        let r = validate_lorder(&l, &labels(&["a", "b"]), &[o, o, o, i]).unwrap();
        assert_eq!(r.first_failure().unwrap().label, "reflexivity");
        let r = validate_lorder(&l, &labels(&["a", "b", "c"]), &[i, i, o, o, i, i, o, o, i]).unwrap();
        assert_eq!(r.first_failure().unwrap().label, "transitivity");
        assert!(validate_lorder(&l, &labels(&["a"]), &[i, i]).is_err());
    }

    #[test]
    fn carrier_mismatch_is_structural() {
        let p = two_chain();
        let other = antichain();
        let s = other.down_set(0).unwrap();
        assert!(matches!(p.is_directed(&s), Err(Error::CarrierMismatch(_))));
    }
}
