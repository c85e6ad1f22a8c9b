//! Graphviz rendering of the u-cut of an L-order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::order::LOrderedSet;

pub const DOT_MAX_POINTS: usize = 64;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Edges `x -> y` with `e(x,y) ≥ u`, transitively reduced, in index order.
pub fn cover_edges(p: &LOrderedSet) -> Vec<(usize, usize)> {
    let q = p.quantale();
    let n = p.size();
    let cut = |x: usize, y: usize| x != y && q.at_least_unit(p.degree(x, y));
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if cut(x, y) && !(0..n).any(|z| z != x && z != y && cut(x, z) && cut(z, y)) {
                edges.push((x, y));
            }
        }
    }
    edges
}

/// Renders `p` as a DOT digraph. Edges whose degree is not the top element
/// carry the degree as a label.
pub fn to_dot(p: &LOrderedSet, name: &str) -> Result<String> {
    if p.size() > DOT_MAX_POINTS {
        return Err(Error::TooLarge {
            size: p.size(),
            limit: DOT_MAX_POINTS,
        });
    }
    let q = p.quantale();
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box];");
    for (i, l) in p.labels().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(l));
    }
    for (x, y) in cover_edges(p) {
        let d = p.degree(x, y);
        if d == q.top() {
            let _ = writeln!(out, "  n{x} -> n{y};");
        } else {
            let _ = writeln!(out, "  n{x} -> n{y} [label={}];", quote(q.label(d)));
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use std::sync::Arc;

    fn crisp(id: &str, n: usize, leq: impl Fn(usize, usize) -> bool) -> LOrderedSet {
        let q = Arc::new(fixture(id).unwrap());
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        LOrderedSet::from_crisp(q, labels, leq).unwrap()
    }

    #[test]
    fn two_chain_has_one_edge() {
        let p = crisp("boolean", 2, |x, y| x <= y);
        let dot = to_dot(&p, "chain").unwrap();
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("n0 -> n1;"));
    }

    #[test]
    fn three_chain_is_reduced() {
        let p = crisp("boolean", 3, |x, y| x <= y);
        assert_eq!(cover_edges(&p), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn antichain_is_edgeless() {
        let p = crisp("boolean", 3, |x, y| x == y);
        let dot = to_dot(&p, "a").unwrap();
        assert!(!dot.contains("->"));
        assert_eq!(dot.matches("[label=").count(), 3);
    }

    #[test]
    fn lattice_order_cut_is_the_chain() {
        let q = Arc::new(fixture("goedel-3").unwrap());
        let p = LOrderedSet::lattice_order(q).unwrap();
        assert_eq!(cover_edges(&p).len(), 2);
        let dot = to_dot(&p, "l").unwrap();
        assert_eq!(dot, to_dot(&p, "l").unwrap());
    }

    #[test]
    fn non_top_edges_are_labelled() {
        let q = Arc::new(fixture("nonintegral-3").unwrap());
        let u = q.unit();
        let e = vec![u, u, q.bottom(), u];
        let p = LOrderedSet::new(q, vec!["a".into(), "b".into()], e).unwrap();
        let dot = to_dot(&p, "n").unwrap();
        assert!(dot.contains("n0 -> n1 [label=\"u\"];"), "{dot}");
    }

    #[test]
    fn size_guard() {
        let p = crisp("boolean", 65, |x, y| x == y);
        assert!(matches!(to_dot(&p, "big"), Err(Error::TooLarge { .. })));
    }
}
