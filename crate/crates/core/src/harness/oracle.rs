//! Classical brute-force reference implementations for the Boolean
//! quantale. They work on plain `bool` relations and subsets and share no
//! code with the quantale-valued algorithms they are compared against.

use crate::check::{CheckResult, Report};
use crate::closure::ClosureSpace;
use crate::domain::{self, compact_elements, way_below_table};
use crate::error::{Error, Result};
use crate::order::LOrderedSet;

/// A finite classical order as an adjacency matrix `leq[x][y]`.
pub type Poset = Vec<Vec<bool>>;

fn members(mask: u32, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |i| mask & (1 << i) != 0)
}

pub fn is_directed(leq: &Poset, mask: u32) -> bool {
    let n = leq.len();
    if mask == 0 {
        return false;
    }
    members(mask, n).all(|a| {
        members(mask, n).all(|b| members(mask, n).any(|c| leq[a][c] && leq[b][c]))
    })
}

pub fn is_lower(leq: &Poset, mask: u32) -> bool {
    let n = leq.len();
    members(mask, n).all(|a| (0..n).all(|b| !leq[b][a] || mask & (1 << b) != 0))
}

pub fn is_ideal(leq: &Poset, mask: u32) -> bool {
    is_directed(leq, mask) && is_lower(leq, mask)
}

/// Least upper bound of an arbitrary subset (the empty set included).
pub fn supremum(leq: &Poset, mask: u32) -> Option<usize> {
    let n = leq.len();
    let ub: Vec<usize> = (0..n).filter(|&y| members(mask, n).all(|a| leq[a][y])).collect();
    ub.iter().copied().find(|&s| ub.iter().all(|&t| leq[s][t]))
}

/// `wb[x][y]` is true iff `y ≪ x`: every directed set whose supremum lies
/// above `x` contains an element above `y`.
pub fn way_below(leq: &Poset) -> Vec<Vec<bool>> {
    let n = leq.len();
    let directed: Vec<(u32, usize)> = (1..(1u32 << n))
        .filter(|&m| is_directed(leq, m))
        .filter_map(|m| supremum(leq, m).map(|s| (m, s)))
        .collect();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    directed
                        .iter()
                        .filter(|(_, s)| leq[x][*s])
                        .all(|(m, _)| members(*m, n).any(|d| leq[y][d]))
                })
                .collect()
        })
        .collect()
}

pub fn is_algebraic(leq: &Poset) -> bool {
    let n = leq.len();
    let wb = way_below(leq);
    let compact: u32 = (0..n).filter(|&x| wb[x][x]).fold(0, |m, x| m | (1 << x));
    (0..n).all(|x| {
        let k = members(compact, n).filter(|&c| leq[c][x]).fold(0u32, |m, c| m | (1 << c));
        is_directed(leq, k) && supremum(leq, k) == Some(x)
    })
}

pub fn ideals(leq: &Poset) -> Vec<u32> {
    let n = leq.len();
    (1..(1u32 << n)).filter(|&m| is_ideal(leq, m)).collect()
}

fn require_boolean(p: &LOrderedSet) -> Result<Poset> {
    let q = p.quantale();
    if q.size() != 2 || !q.is_integral() {
        return Err(Error::precondition("the classical oracle needs the Boolean quantale"));
    }
    let n = p.size();
    Ok((0..n).map(|x| (0..n).map(|y| p.degree(x, y) == q.top()).collect()).collect())
}

fn crisp(p: &LOrderedSet, mask: u32) -> Vec<crate::quantale::Elem> {
    let q = p.quantale();
    (0..p.size())
        .map(|i| if mask & (1 << i) != 0 { q.top() } else { q.bottom() })
        .collect()
}

/// Compares directedness, ideals, suprema, way-below and algebraicity of a
/// Boolean L-ordered set with the classical brute-force answers.
pub fn classical_oracle(p: &LOrderedSet) -> Result<Report> {
    let leq = require_boolean(p)?;
    let n = p.size();
    let q = p.quantale();
    let mut report = Report::new();
    let mut dir = CheckResult::pass("oracle-directed");
    let mut ideal = CheckResult::pass("oracle-ideal");
    let mut sup = CheckResult::pass("oracle-supremum");
    for mask in 0..(1u32 << n) {
        let s = p.subset(crisp(p, mask))?;
        let w = vec![p.render(s.values())];
        if dir.passed && p.is_directed(&s)?.passed != is_directed(&leq, mask) {
            dir = CheckResult::fail("oracle-directed", w.clone(), "directedness disagrees");
        }
        if ideal.passed && p.is_ideal(&s)?.passed != is_ideal(&leq, mask) {
            ideal = CheckResult::fail("oracle-ideal", w.clone(), "ideal test disagrees");
        }
        if sup.passed && p.supremum(&s)? != supremum(&leq, mask) {
            sup = CheckResult::fail("oracle-supremum", w, "suprema disagree");
        }
    }
    report.push(dir);
    report.push(ideal);
    report.push(sup);

    let wb = way_below_table(p)?;
    let classical = way_below(&leq);
    let mismatch = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| {
        (wb[x][y] == q.top()) != classical[x][y]
    });
    report.push(match mismatch {
        None => CheckResult::pass("oracle-way-below"),
        Some((x, y)) => CheckResult::fail("oracle-way-below", p.names(&[x, y]), "⇓x(y) disagrees"),
    });
    let compact_classical: Vec<usize> = (0..n).filter(|&x| classical[x][x]).collect();
    report.push(CheckResult::from_bool(
        "oracle-compact",
        compact_elements(p)? == compact_classical,
        "compact elements disagree",
    ));
    report.push(CheckResult::from_bool(
        "oracle-algebraic",
        domain::is_algebraic(p)?.passed == is_algebraic(&leq),
        "algebraicity disagrees",
    ));
    Ok(report)
}

/// `𝔠(X)` of the down-set operator must be the classical ideal family.
pub fn classical_ideal_lattice(p: &LOrderedSet) -> Result<CheckResult> {
    let leq = require_boolean(p)?;
    let c = (0..p.size()).map(|x| p.down_values(x)).collect();
    let s = ClosureSpace::point_generated(p.quantale().clone(), p.labels().to_vec(), c)?.with_limits(*p.limits());
    let mut ours: Vec<Vec<crate::quantale::Elem>> = s.dir_closed_members()?.to_vec();
    let mut theirs: Vec<Vec<crate::quantale::Elem>> = ideals(&leq).into_iter().map(|m| crisp(p, m)).collect();
    ours.sort();
    theirs.sort();
    Ok(CheckResult::from_bool(
        "oracle-ideal-lattice",
        ours == theirs,
        "directed closed sets differ from classical ideals",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect()
    }

    #[test]
    fn chains() {
        let leq = chain(3);
        assert!(is_directed(&leq, 0b101));
        assert_eq!(supremum(&leq, 0b011), Some(1));
        assert_eq!(supremum(&leq, 0), Some(0));
        assert!(is_algebraic(&leq));
        let wb = way_below(&leq);
        assert!(wb[2][0] && wb[2][2] && !wb[0][2]);
        assert_eq!(ideals(&leq), vec![0b001, 0b011, 0b111]);
    }

    #[test]
    fn antichain() {
        let leq: Poset = vec![vec![true, false], vec![false, true]];
        assert!(!is_directed(&leq, 0b11));
        assert_eq!(supremum(&leq, 0b11), None);
        assert_eq!(supremum(&leq, 0), None);
    }
}
