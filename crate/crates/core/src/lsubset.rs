//! L-subsets of finite carriers and the `L^X` enumeration substrate.

use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::quantale::{Elem, FiniteQuantale};

/// Identity of a finite carrier, derived from its point labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CarrierId(u64);

impl CarrierId {
    pub fn of(labels: &[String]) -> CarrierId {
        // FNV-1a; stable across runs and platforms.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for l in labels {
            for b in l.as_bytes().iter().chain(std::iter::once(&0xffu8)) {
                h ^= *b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        CarrierId(h ^ labels.len() as u64)
    }
}

/// A map from a finite carrier into `L`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LSubset {
    carrier: CarrierId,
    values: Vec<Elem>,
}

impl Hash for LSubset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.carrier.hash(state);
        self.values.hash(state);
    }
}

impl LSubset {
    pub fn new(carrier: CarrierId, values: Vec<Elem>) -> LSubset {
        LSubset { carrier, values }
    }

    pub fn carrier(&self) -> CarrierId {
        self.carrier
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Elem> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Elem {
        self.values[i]
    }

    pub fn same_carrier(&self, other: &LSubset) -> Result<()> {
        if self.carrier == other.carrier && self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(
                "L-subsets live on different carriers".into(),
            ))
        }
    }

    /// Pointwise order `A ≤ B`.
    pub fn leq(&self, q: &FiniteQuantale, other: &LSubset) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(pointwise_leq(q, &self.values, &other.values))
    }

    pub fn render(&self, q: &FiniteQuantale) -> String {
        render(q, &self.values)
    }
}

/// Renders a value vector as `[a,b,…]` using element labels.
pub fn render(q: &FiniteQuantale, values: &[Elem]) -> String {
    let parts: Vec<&str> = values.iter().map(|&v| q.label(v)).collect();
    format!("[{}]", parts.join(","))
}

/// `sub(A, B) = ⋀ₓ A(x) → B(x)`.
pub fn sub_degree(q: &FiniteQuantale, a: &[Elem], b: &[Elem]) -> Elem {
    debug_assert_eq!(a.len(), b.len());
    q.meet_all(a.iter().zip(b).map(|(&x, &y)| q.residuate(x, y)))
}

/// Checked version of [`sub_degree`] on tagged L-subsets.
pub fn subdeg(q: &FiniteQuantale, a: &LSubset, b: &LSubset) -> Result<Elem> {
    a.same_carrier(b)?;
    Ok(sub_degree(q, &a.values, &b.values))
}

pub fn pointwise_leq(q: &FiniteQuantale, a: &[Elem], b: &[Elem]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| q.leq(x, y))
}

/// `a ⊗ A`.
pub fn scale(q: &FiniteQuantale, a: Elem, values: &[Elem]) -> Vec<Elem> {
    values.iter().map(|&v| q.tensor(a, v)).collect()
}

/// `acc := acc ∨ (a ⊗ B)`.
pub fn join_scaled_into(q: &FiniteQuantale, acc: &mut [Elem], a: Elem, b: &[Elem]) {
    for (x, &y) in acc.iter_mut().zip(b) {
        *x = q.join(*x, q.tensor(a, y));
    }
}

/// `⋁ A(x)` over the carrier.
pub fn height(q: &FiniteQuantale, values: &[Elem]) -> Elem {
    q.join_all(values.iter().copied())
}

/// The characteristic L-subset `u_a` on a carrier of `n` points.
pub fn characteristic(q: &FiniteQuantale, n: usize, a: usize) -> Vec<Elem> {
    (0..n).map(|i| if i == a { q.unit() } else { q.bottom() }).collect()
}

/// The constant L-subset `a_X`.
pub fn constant(n: usize, a: Elem) -> Vec<Elem> {
    vec![a; n]
}

/// Number of elements of `L^X`, or a cap error.
pub fn count_lsubsets(q: &FiniteQuantale, n: usize, limits: &Limits) -> Result<u64> {
    limits.check_enum("L^X", q.size(), n)
}

/// The L-subset at position `rank` of the lexicographic enumeration
/// (first carrier point most significant).
pub fn subset_at_rank(base: usize, n: usize, mut rank: u64) -> Vec<Elem> {
    let mut out = vec![Elem::default(); n];
    for slot in out.iter_mut().rev() {
        *slot = Elem::from_index((rank % base as u64) as usize);
        rank /= base as u64;
    }
    out
}

/// Position of a value vector in the lexicographic enumeration.
pub fn rank_of(base: usize, values: &[Elem]) -> u64 {
    values
        .iter()
        .fold(0u64, |acc, v| acc * base as u64 + v.index() as u64)
}

/// Deterministic lexicographic stream over `L^X`.
pub struct LSubsetIter {
    base: usize,
    current: Option<Vec<Elem>>,
}

impl Iterator for LSubsetIter {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            let v = next[i].index() + 1;
            if v < self.base {
                next[i] = Elem::from_index(v);
                self.current = Some(next);
                break;
            }
            next[i] = Elem::from_index(0);
        }
        Some(out)
    }
}

/// Streams every L-subset of an `n`-point carrier exactly once.
pub fn enumerate_lsubsets(q: &FiniteQuantale, n: usize, limits: &Limits) -> Result<LSubsetIter> {
    count_lsubsets(q, n, limits)?;
    Ok(LSubsetIter {
        base: q.size(),
        current: Some(vec![Elem::from_index(0); n]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn enumeration_counts() {
        let l = Limits::default();
        let q2 = fixture("boolean").unwrap();
        assert_eq!(enumerate_lsubsets(&q2, 3, &l).unwrap().count(), 8);
        let q3 = fixture("lukasiewicz-3").unwrap();
        assert_eq!(enumerate_lsubsets(&q3, 4, &l).unwrap().count(), 81);
        let q4 = fixture("prod(boolean,boolean)").unwrap();
        match enumerate_lsubsets(&q4, 12, &l) {
            Err(Error::CapExceeded { count, cap, .. }) => {
                assert_eq!(count, 4u128.pow(12));
                assert_eq!(cap, 1_000_000);
            }
            _ => panic!("expected cap error"),
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_matches_rank() {
        let q = fixture("lukasiewicz-3").unwrap();
        let all: Vec<_> = enumerate_lsubsets(&q, 3, &Limits::default()).unwrap().collect();
        for (i, s) in all.iter().enumerate() {
            assert_eq!(rank_of(3, s), i as u64);
            assert_eq!(&subset_at_rank(3, 3, i as u64), s);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_carrier_has_one_subset() {
        let q = fixture("boolean").unwrap();
        assert_eq!(enumerate_lsubsets(&q, 0, &Limits::default()).unwrap().count(), 1);
    }

    #[test]
    fn subdeg_examples() {
        let q = fixture("lukasiewicz-3").unwrap();
        let e = |s: &str| q.elem(s).unwrap();
        let id = CarrierId::of(&["p".to_string(), "q".to_string()]);
        let a = LSubset::new(id, vec![e("1/2"), e("1")]);
        let b = LSubset::new(id, vec![e("0"), e("1/2")]);
        assert_eq!(subdeg(&q, &a, &b).unwrap(), e("1/2"));
        assert_eq!(subdeg(&q, &a, &a).unwrap(), q.top());
        let zero = LSubset::new(id, constant(2, q.bottom()));
        assert_eq!(subdeg(&q, &zero, &b).unwrap(), q.top());
        let other = LSubset::new(CarrierId::of(&["r".to_string(), "s".to_string()]), vec![e("0"); 2]);
        assert!(matches!(subdeg(&q, &a, &other), Err(Error::CarrierMismatch(_))));
    }

    #[test]
    fn rendering_ignores_carrier() {
        let q = fixture("boolean").unwrap();
        let a = LSubset::new(CarrierId::of(&["a".into()]), vec![q.unit()]);
        let b = LSubset::new(CarrierId::of(&["b".into()]), vec![q.unit()]);
        assert_eq!(a.render(&q), b.render(&q));
        assert_ne!(a, b);
    }
}
