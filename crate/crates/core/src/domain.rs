//! Way-below L-subsets, continuity, compact elements and algebraicity.
//!
//! `⇓x` is computed from the ideal form
//! `⇓x(y) = ⋀_{I ideal} e(x, ⊔I) → I(y)`; the directed form
//! ([`way_below_alt`]) is kept as an independent second route.
//! Continuity and algebraicity refuse inputs that are not L-dcpos so that a
//! failed check always means a genuine counterexample.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::check::CheckResult;
use crate::error::{Error, Result};
use crate::lsubset::LSubset;
use crate::order::LOrderedSet;
use crate::quantale::Elem;

/// `⇓x` for every point, cached on the L-ordered set.
pub fn way_below_table(p: &LOrderedSet) -> Result<Arc<Vec<Vec<Elem>>>> {
    p.way_below
        .get_or_init(|| {
            let fam = p.require_ldcpo("way-below")?;
            let q = p.quantale();
            let n = p.size();
            let mut table = vec![vec![q.top(); n]; n];
            for ideal in fam.ideals() {
                let sup = ideal.sup.expect("L-dcpo");
                for (x, row) in table.iter_mut().enumerate() {
                    let a = p.degree(x, sup);
                    for (y, cell) in row.iter_mut().enumerate() {
                        *cell = q.meet(*cell, q.residuate(a, ideal.values[y]));
                    }
                }
            }
            Ok(Arc::new(table))
        })
        .clone()
}

fn point(p: &LOrderedSet, x: usize) -> Result<()> {
    if x < p.size() {
        Ok(())
    } else {
        Err(Error::UnknownLabel {
            label: format!("#{x}"),
            context: "L-ordered set".into(),
        })
    }
}

pub fn way_below(p: &LOrderedSet, x: usize) -> Result<LSubset> {
    point(p, x)?;
    let table = way_below_table(p)?;
    p.subset(table[x].clone())
}

/// `⇓x(y) = ⋀_{D directed} e(x, ⊔D) → ⋁_d D(d) ⊗ e(y, d)`.
pub fn way_below_alt(p: &LOrderedSet, x: usize) -> Result<LSubset> {
    point(p, x)?;
    let fam = p.require_ldcpo("way-below")?;
    let q = p.quantale();
    let n = p.size();
    let mut row = vec![q.top(); n];
    for d in &fam.entries {
        let a = p.degree(x, d.sup.expect("L-dcpo"));
        for (y, cell) in row.iter_mut().enumerate() {
            let cover = q.join_all((0..n).map(|t| q.tensor(d.values[t], p.degree(y, t))));
            *cell = q.meet(*cell, q.residuate(a, cover));
        }
    }
    p.subset(row)
}

/// Per point: `⇓x` is directed and `⊔⇓x = x`.
pub fn is_continuous(p: &LOrderedSet) -> Result<CheckResult> {
    let table = way_below_table(p)?;
    for (x, wb) in table.iter().enumerate() {
        let dir = p.directed_values(wb);
        if !dir.passed {
            return Ok(CheckResult::fail(
                "continuous",
                p.names(&[x]),
                format!("⇓x is not directed ({})", dir.label),
            ));
        }
        if p.sup_values(wb) != Some(x) {
            return Ok(CheckResult::fail("continuous", p.names(&[x]), "⊔⇓x ≠ x"));
        }
    }
    Ok(CheckResult::pass("continuous"))
}

/// `K(P) = {x : ⇓x(x) ≥ u}` in carrier order.
pub fn compact_elements(p: &LOrderedSet) -> Result<Vec<usize>> {
    let table = way_below_table(p)?;
    let q = p.quantale();
    Ok((0..p.size()).filter(|&x| q.at_least_unit(table[x][x])).collect())
}

pub(crate) fn k_values(p: &LOrderedSet, compact: &[usize], x: usize) -> Vec<Elem> {
    let q = p.quantale();
    (0..p.size())
        .map(|y| if compact.contains(&y) { p.degree(y, x) } else { q.bottom() })
        .collect()
}

/// `k(x)(y) = e(y, x)` for compact `y`, otherwise 0.
pub fn k_subset(p: &LOrderedSet, x: usize) -> Result<LSubset> {
    point(p, x)?;
    let compact = compact_elements(p)?;
    p.subset(k_values(p, &compact, x))
}

/// Per point: `k(x)` is directed and `⊔k(x) = x`; also cross-checks the
/// form that tests directedness of `k(x)` restricted to `K(P)`.
pub fn is_algebraic(p: &LOrderedSet) -> Result<CheckResult> {
    let compact = compact_elements(p)?;
    let kp = p.restrict(&compact)?;
    let mut verdict = CheckResult::pass("algebraic");
    for x in 0..p.size() {
        let k = k_values(p, &compact, x);
        let full = p.directed_values(&k).passed && p.sup_values(&k) == Some(x);
        let restricted: Vec<Elem> = compact.iter().map(|&y| p.degree(y, x)).collect();
        let alt = kp.directed_values(&restricted).passed && p.sup_values(&k) == Some(x);
        if full != alt {
            return Ok(CheckResult::fail(
                "algebraic",
                p.names(&[x]),
                "full and K(P)-restricted forms disagree",
            ));
        }
        if !full && verdict.passed {
            let why = if p.directed_values(&k).passed {
                "⊔k(x) ≠ x"
            } else {
                "k(x) is not directed"
            };
            verdict = CheckResult::fail("algebraic", p.names(&[x]), why);
        }
    }
    Ok(verdict)
}

/// Compactness through ideals and through directed sets must agree with
/// `⇓x(x) ≥ u`.
pub fn compactness_cross_check(p: &LOrderedSet) -> Result<CheckResult> {
    let fam = p.require_ldcpo("compactness")?;
    let compact = compact_elements(p)?;
    let q = p.quantale();
    let n = p.size();
    for x in 0..n {
        let by_ideals = fam
            .ideals()
            .all(|i| i.values[x] == p.degree(x, i.sup.expect("L-dcpo")));
        let by_directed = fam.entries.iter().all(|d| {
            let cover = q.join_all((0..n).map(|t| q.tensor(d.values[t], p.degree(x, t))));
            cover == p.degree(x, d.sup.expect("L-dcpo"))
        });
        let primary = compact.contains(&x);
        if by_ideals != primary || by_directed != primary {
            return Ok(CheckResult::fail(
                "compactness-forms",
                p.names(&[x]),
                format!("⇓x(x)≥u: {primary}, ideal form: {by_ideals}, directed form: {by_directed}"),
            ));
        }
    }
    Ok(CheckResult::pass("compactness-forms"))
}

/// Summary of the domain-theoretic structure of an L-ordered set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainAnalysis {
    pub points: Vec<String>,
    pub ldcpo: CheckResult,
    /// `⇓x` rows as element labels, present only for L-dcpos.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub way_below: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub compact: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub continuous: Option<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebraic: Option<CheckResult>,
}

impl DomainAnalysis {
    pub fn is_continuous(&self) -> bool {
        self.continuous.as_ref().is_some_and(|c| c.passed)
    }

    pub fn is_algebraic(&self) -> bool {
        self.algebraic.as_ref().is_some_and(|c| c.passed)
    }
}

/// Largest carrier whose full `⇓` table goes into a serialized analysis.
pub const WAY_BELOW_TABLE_MAX: usize = 6;

pub fn analyze(p: &LOrderedSet) -> Result<DomainAnalysis> {
    let ldcpo = p.is_ldcpo()?;
    let mut out = DomainAnalysis {
        points: p.labels().to_vec(),
        ldcpo: ldcpo.clone(),
        way_below: None,
        compact: Vec::new(),
        continuous: None,
        algebraic: None,
    };
    if !ldcpo.passed {
        return Ok(out);
    }
    let q = p.quantale();
    let table = way_below_table(p)?;
    if p.size() <= WAY_BELOW_TABLE_MAX {
        out.way_below = Some(
            table
                .iter()
                .map(|row| row.iter().map(|&v| q.label(v).to_string()).collect())
                .collect(),
        );
    }
    out.compact = p.names(&compact_elements(p)?);
    out.continuous = Some(is_continuous(p)?);
    out.algebraic = Some(is_algebraic(p)?);
    Ok(out)
}
