//! Finite commutative unital quantales.
//!
//! A quantale is given by raw tables ([`QuantaleDef`]): a list of element
//! labels, generating order pairs, a tensor table and a unit. Construction
//! closes the order reflexively and transitively, checks every axiom and
//! derives the join, meet and residuation tables once. Element labels are
//! opaque; [`Elem`] is an index into the canonical (input) order.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::{CheckResult, Report};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// An element of a finite quantale, by canonical index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Elem(u8);

impl Elem {
    pub const fn from_index(i: usize) -> Elem {
        Elem(i as u8)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// Raw, unvalidated quantale tables keyed by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleDef {
    pub elements: Vec<String>,
    /// Generating pairs `a ≤ b`; the reflexive-transitive closure is taken.
    pub order: Vec<(String, String)>,
    /// Triples `(a, b, a⊗b)`; every ordered pair must be covered (entries for
    /// `(a, b)` also define `(b, a)` unless given separately).
    pub tensor: Vec<(String, String, String)>,
    pub unit: String,
}

/// Index-level tables after structural validation, before axiom checks.
#[derive(Debug, Clone)]
struct RawTables {
    labels: Vec<String>,
    leq: Vec<bool>,
    tensor: Vec<u8>,
    unit: u8,
}

impl RawTables {
    fn from_def(def: &QuantaleDef, limits: &Limits) -> Result<RawTables> {
        let n = def.elements.len();
        if n == 0 {
            return Err(Error::structural("quantale carrier is empty"));
        }
        if n > limits.max_quantale || n > u8::MAX as usize {
            return Err(Error::TooLarge {
                size: n,
                limit: limits.max_quantale.min(u8::MAX as usize),
            });
        }
        for (i, a) in def.elements.iter().enumerate() {
            if def.elements[..i].contains(a) {
                return Err(Error::structural(format!("duplicate element label `{a}`")));
            }
        }
        let idx = |label: &str, ctx: &str| -> Result<usize> {
            def.elements
                .iter()
                .position(|e| e == label)
                .ok_or_else(|| Error::UnknownLabel {
                    label: label.to_string(),
                    context: ctx.to_string(),
                })
        };

        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in &def.order {
            let (a, b) = (idx(a, "order")?, idx(b, "order")?);
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }

        let mut tensor: Vec<Option<u8>> = vec![None; n * n];
        let mut explicit = vec![false; n * n];
        for (a, b, c) in &def.tensor {
            let (a, b, c) = (idx(a, "tensor")?, idx(b, "tensor")?, idx(c, "tensor")? as u8);
            if explicit[a * n + b] && tensor[a * n + b] != Some(c) {
                return Err(Error::structural(format!(
                    "conflicting tensor entries for ({}, {})",
                    def.elements[a], def.elements[b]
                )));
            }
            tensor[a * n + b] = Some(c);
            explicit[a * n + b] = true;
            if !explicit[b * n + a] {
                tensor[b * n + a] = Some(c);
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                match tensor[a * n + b] {
                    Some(c) => table.push(c),
                    None => {
                        return Err(Error::structural(format!(
                            "missing tensor entry for ({}, {})",
                            def.elements[a], def.elements[b]
                        )))
                    }
                }
            }
        }
        let unit = idx(&def.unit, "unit")? as u8;
        Ok(RawTables {
            labels: def.elements.clone(),
            leq,
            tensor: table,
            unit,
        })
    }

    fn n(&self) -> usize {
        self.labels.len()
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n() + b]
    }

    fn t(&self, a: usize, b: usize) -> usize {
        self.tensor[a * self.n() + b] as usize
    }

    fn names(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// Least upper bound (or greatest lower bound) of a pair, if unique.
    fn bound(&self, a: usize, b: usize, upper: bool) -> Option<usize> {
        let n = self.n();
        let rel = |x: usize, y: usize| if upper { self.le(x, y) } else { self.le(y, x) };
        let candidates: Vec<usize> = (0..n).filter(|&c| rel(a, c) && rel(b, c)).collect();
        candidates
            .iter()
            .copied()
            .find(|&c| candidates.iter().all(|&d| rel(c, d)))
    }

    fn extreme(&self, bottom: bool) -> Option<usize> {
        let n = self.n();
        (0..n).find(|&c| (0..n).all(|d| if bottom { self.le(c, d) } else { self.le(d, c) }))
    }

    fn check_axioms(&self) -> Report {
        let n = self.n();
        let mut report = Report::new();

        let antisym = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && self.le(a, b) && self.le(b, a));
        report.push(match antisym {
            None => CheckResult::pass("partial-order"),
            Some((a, b)) => CheckResult::fail(
                "partial-order",
                self.names(&[a, b]),
                "order closure identifies distinct elements",
            ),
        });

        let mut lattice = CheckResult::pass("lattice-completeness");
        if self.extreme(true).is_none() {
            lattice = CheckResult::fail("lattice-completeness", vec![], "no bottom element");
        } else if self.extreme(false).is_none() {
            lattice = CheckResult::fail("lattice-completeness", vec![], "no top element");
        } else {
            'outer: for a in 0..n {
                for b in a + 1..n {
                    if self.bound(a, b, true).is_none() {
                        lattice = CheckResult::fail(
                            "lattice-completeness",
                            self.names(&[a, b]),
                            "pair has no join",
                        );
                        break 'outer;
                    }
                    if self.bound(a, b, false).is_none() {
                        lattice = CheckResult::fail(
                            "lattice-completeness",
                            self.names(&[a, b]),
                            "pair has no meet",
                        );
                        break 'outer;
                    }
                }
            }
        }
        let is_lattice = report.all_passed() && lattice.passed;
        report.push(lattice);

        let comm = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.t(a, b) != self.t(b, a));
        report.push(match comm {
            None => CheckResult::pass("commutativity"),
            Some((a, b)) => CheckResult::fail(
                "commutativity",
                self.names(&[a, b]),
                format!(
                    "{}⊗{} = {} but {}⊗{} = {}",
                    self.labels[a],
                    self.labels[b],
                    self.labels[self.t(a, b)],
                    self.labels[b],
                    self.labels[a],
                    self.labels[self.t(b, a)]
                ),
            ),
        });

        let assoc = triples(n).find(|&(a, b, c)| self.t(self.t(a, b), c) != self.t(a, self.t(b, c)));
        report.push(match assoc {
            None => CheckResult::pass("associativity"),
            Some((a, b, c)) => CheckResult::fail(
                "associativity",
                self.names(&[a, b, c]),
                "(a⊗b)⊗c ≠ a⊗(b⊗c)",
            ),
        });

        let u = self.unit as usize;
        let unit = (0..n).find(|&a| self.t(u, a) != a || self.t(a, u) != a);
        report.push(match unit {
            None => CheckResult::pass("unit"),
            Some(a) => CheckResult::fail("unit", self.names(&[u, a]), "u⊗a ≠ a"),
        });

        // Finite joins: distributivity over ∅ and over binary joins suffices.
        if is_lattice {
            let bottom = self.extreme(true).expect("lattice has bottom");
            let mut dist = CheckResult::pass("join-distributivity");
            if let Some(a) = (0..n).find(|&a| self.t(a, bottom) != bottom) {
                dist = CheckResult::fail(
                    "join-distributivity",
                    self.names(&[a]),
                    "a⊗0 ≠ 0 (empty join)",
                );
            } else if let Some((a, b, c)) = triples(n).find(|&(a, b, c)| {
                let j = self.bound(b, c, true).expect("lattice");
                let lhs = self.t(a, j);
                let rhs = self.bound(self.t(a, b), self.t(a, c), true).expect("lattice");
                lhs != rhs
            }) {
                dist = CheckResult::fail(
                    "join-distributivity",
                    self.names(&[a, b, c]),
                    "a⊗(b∨c) ≠ (a⊗b)∨(a⊗c)",
                );
            }
            report.push(dist);
        } else {
            report.push(CheckResult::fail(
                "join-distributivity",
                vec![],
                "not checked: carrier is not a lattice",
            ));
        }
        report
    }
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

/// Runs the structural and axiom checks on raw tables.
///
/// Structural problems (unknown labels, missing entries) are returned as
/// `Err`; axiom failures are reported in the `Ok` report with witnesses.
pub fn validate_quantale(def: &QuantaleDef, limits: &Limits) -> Result<Report> {
    let raw = RawTables::from_def(def, limits)?;
    Ok(raw.check_axioms())
}

/// A validated finite commutative unital quantale with derived tables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuantale {
    labels: Vec<String>,
    leq: Vec<bool>,
    tensor: Vec<Elem>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    residuum: Vec<Elem>,
    unit: Elem,
    bottom: Elem,
    top: Elem,
}

impl fmt::Debug for FiniteQuantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuantale")
            .field("elements", &self.labels)
            .field("unit", &self.label(self.unit))
            .finish_non_exhaustive()
    }
}

impl FiniteQuantale {
    pub fn from_def(def: &QuantaleDef) -> Result<Self> {
        Self::from_def_with(def, &Limits::default())
    }

    pub fn from_def_with(def: &QuantaleDef, limits: &Limits) -> Result<Self> {
        let raw = RawTables::from_def(def, limits)?;
        let report = raw.check_axioms();
        if let Some(fail) = report.first_failure() {
            return Err(Error::Axiom(format!("{}: {}", fail.label, fail.trace)));
        }
        Ok(Self::derive(raw))
    }

    fn derive(raw: RawTables) -> Self {
        let n = raw.n();
        let mut join = vec![Elem(0); n * n];
        let mut meet = vec![Elem(0); n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = Elem(raw.bound(a, b, true).expect("validated") as u8);
                meet[a * n + b] = Elem(raw.bound(a, b, false).expect("validated") as u8);
            }
        }
        let bottom = Elem(raw.extreme(true).expect("validated") as u8);
        let top = Elem(raw.extreme(false).expect("validated") as u8);
        let mut residuum = vec![Elem(0); n * n];
        for a in 0..n {
            for b in 0..n {
                let mut r = bottom;
                for c in 0..n {
                    if raw.le(raw.t(a, c), b) {
                        r = join[r.index() * n + c];
                    }
                }
                residuum[a * n + b] = r;
            }
        }
        FiniteQuantale {
            leq: raw.leq,
            tensor: raw.tensor.iter().map(|&c| Elem(c)).collect(),
            unit: Elem(raw.unit),
            labels: raw.labels,
            join,
            meet,
            residuum,
            bottom,
            top,
        }
    }

    /// Reconstructs raw tables (generating order = full order relation).
    pub fn to_def(&self) -> QuantaleDef {
        let mut order = Vec::new();
        let mut tensor = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a != b && self.leq(a, b) {
                    order.push((self.label(a).to_string(), self.label(b).to_string()));
                }
                tensor.push((
                    self.label(a).to_string(),
                    self.label(b).to_string(),
                    self.label(self.tensor(a, b)).to_string(),
                ));
            }
        }
        QuantaleDef {
            elements: self.labels.clone(),
            order,
            tensor,
            unit: self.label(self.unit).to_string(),
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size()).map(|i| Elem(i as u8))
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elem(&self, label: &str) -> Result<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| Elem(i as u8))
            .ok_or_else(|| Error::UnknownLabel {
                label: label.to_string(),
                context: "quantale".to_string(),
            })
    }

    #[inline]
    fn at(&self, a: Elem, b: Elem) -> usize {
        a.index() * self.size() + b.index()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[self.at(a, b)]
    }

    #[inline]
    pub fn tensor(&self, a: Elem, b: Elem) -> Elem {
        self.tensor[self.at(a, b)]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[self.at(a, b)]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[self.at(a, b)]
    }

    /// `a → b`, the largest `c` with `a ⊗ c ≤ b`.
    #[inline]
    pub fn residuate(&self, a: Elem, b: Elem) -> Elem {
        self.residuum[self.at(a, b)]
    }

    #[inline]
    pub fn unit(&self) -> Elem {
        self.unit
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    /// `a ≥ u`.
    #[inline]
    pub fn at_least_unit(&self, a: Elem) -> bool {
        self.leq(self.unit, a)
    }

    pub fn is_integral(&self) -> bool {
        self.unit == self.top
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn tensor_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.unit, |acc, x| self.tensor(acc, x))
    }

    pub fn same_as(&self, other: &FiniteQuantale) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

/// Subsets of the carrier used by the (Q6)/(Q7) checks: all of them for
/// small carriers, a fixed-seed sample otherwise.
fn law_subsets(n: usize) -> Vec<Vec<Elem>> {
    const EXHAUSTIVE_UP_TO: usize = 10;
    const SAMPLES: usize = 2048;
    let to_set = |mask: u64| -> Vec<Elem> {
        (0..n).filter(|i| mask >> i & 1 == 1).map(Elem::from_index).collect()
    };
    if n <= EXHAUSTIVE_UP_TO {
        (0..1u64 << n).map(to_set).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5157_0006);
        let total = 1usize << n;
        sample(&mut rng, total, SAMPLES.min(total))
            .into_iter()
            .map(|m| to_set(m as u64))
            .collect()
    }
}

/// Exhaustively checks the residuation laws (Q1)–(Q7), the adjunction and
/// monotonicity of ⊗ on a validated quantale.
pub fn check_residuation_laws(q: &FiniteQuantale) -> Report {
    let els: Vec<Elem> = q.elements().collect();
    let lab = |xs: &[Elem]| xs.iter().map(|&x| q.label(x).to_string()).collect::<Vec<_>>();
    let mut report = Report::new();

    let find3 = |pred: &dyn Fn(Elem, Elem, Elem) -> bool| -> Option<[Elem; 3]> {
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    if !pred(a, b, c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    };
    let push3 = |report: &mut Report, label: &str, hit: Option<[Elem; 3]>, msg: &str| {
        report.push(match hit {
            None => CheckResult::pass(label),
            Some(w) => CheckResult::fail(label, lab(&w), msg),
        });
    };

    let adj = find3(&|a, b, c| q.leq(q.tensor(a, c), b) == q.leq(c, q.residuate(a, b)));
    push3(&mut report, "adjunction", adj, "a⊗c ≤ b disagrees with c ≤ a→b");

    let mono = find3(&|a, b, c| !q.leq(a, b) || q.leq(q.tensor(a, c), q.tensor(b, c)));
    push3(&mut report, "monotonicity", mono, "a ≤ b but a⊗c ≰ b⊗c");

    let q1 = find3(&|a, b, _| q.at_least_unit(q.residuate(a, b)) == q.leq(a, b));
    push3(&mut report, "Q1", q1, "u ≤ a→b disagrees with a ≤ b");

    let q2 = find3(&|a, _, _| q.residuate(q.bottom(), a) == q.top());
    push3(&mut report, "Q2", q2, "0→a ≠ 1");

    let q3 = find3(&|a, _, _| q.residuate(q.unit(), a) == a);
    push3(&mut report, "Q3", q3, "u→a ≠ a");

    let q4 = find3(&|a, b, _| q.leq(q.tensor(a, q.residuate(a, b)), b));
    push3(&mut report, "Q4", q4, "a⊗(a→b) ≰ b");

    let q5 = find3(&|a, b, c| {
        q.residuate(a, q.residuate(b, c)) == q.residuate(q.tensor(a, b), c)
    });
    push3(&mut report, "Q5", q5, "a→(b→c) ≠ (a⊗b)→c");

    let subsets = law_subsets(els.len());
    let mut q6 = CheckResult::pass("Q6");
    let mut q7 = CheckResult::pass("Q7");
    'subsets: for s in &subsets {
        for &b in &els {
            let lhs = q.residuate(q.join_all(s.iter().copied()), b);
            let rhs = q.meet_all(s.iter().map(|&a| q.residuate(a, b)));
            if q6.passed && lhs != rhs {
                let mut w = vec![format!("{{{}}}", lab(s).join(","))];
                w.push(q.label(b).to_string());
                q6 = CheckResult::fail("Q6", w, "(⋁aᵢ)→b ≠ ⋀(aᵢ→b)");
            }
            let lhs = q.residuate(b, q.meet_all(s.iter().copied()));
            let rhs = q.meet_all(s.iter().map(|&c| q.residuate(b, c)));
            if q7.passed && lhs != rhs {
                let mut w = vec![q.label(b).to_string()];
                w.push(format!("{{{}}}", lab(s).join(",")));
                q7 = CheckResult::fail("Q7", w, "a→(⋀bⱼ) ≠ ⋀(a→bⱼ)");
            }
            if !q6.passed && !q7.passed {
                break 'subsets;
            }
        }
    }
    report.push(q6);
    report.push(q7);
    report
}
