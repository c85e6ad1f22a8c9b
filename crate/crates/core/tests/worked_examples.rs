use std::sync::Arc;

use qvdomain::approx::{enumerate_approximable, enumerate_scott_maps, identity_relation, ApproxRelation};
use qvdomain::closure::{closure_of_domain, is_dense_subspace, ClosureSpace};
use qvdomain::domain::{compact_elements, is_algebraic, is_continuous, k_subset, way_below};
use qvdomain::fixtures::{fixture, FIXTURE_IDS};
use qvdomain::harness::gen::gen_lordered_set;
use qvdomain::lsubset::sub_degree;
use qvdomain::order::{find_lorder_iso, validate_lorder, zadeh_forward};
use qvdomain::quantale::{validate_quantale, Elem, QuantaleDef};
use qvdomain::{FiniteQuantale, LOrderedSet, Limits};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(id: &str) -> Arc<FiniteQuantale> {
    Arc::new(fixture(id).unwrap())
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn el(q: &FiniteQuantale, s: &str) -> Elem {
    q.elem(s).unwrap()
}

/// Largest `c` with `c ⊗ a ≤ b`, found by scanning the carrier.
fn residuate_by_search(q: &FiniteQuantale, a: Elem, b: Elem) -> Elem {
    let candidates: Vec<Elem> = q.elements().filter(|&c| q.leq(q.tensor(c, a), b)).collect();
    *candidates
        .iter()
        .find(|&&c| candidates.iter().all(|&d| q.leq(d, c)))
        .expect("a complete lattice has a largest such element")
}

fn chain(id: &str, names: &[&str]) -> LOrderedSet {
    LOrderedSet::from_crisp(q(id), labels(names), |i, j| i <= j).unwrap()
}

fn antichain(names: &[&str]) -> LOrderedSet {
    LOrderedSet::from_crisp(q("boolean"), labels(names), |i, j| i == j).unwrap()
}

#[test]
fn residuation_values() {
    let b = q("boolean");
    for a in b.elements() {
        assert_eq!(b.residuate(b.bottom(), a), b.top());
    }
    for id in FIXTURE_IDS {
        let l = q(id);
        for a in l.elements() {
            assert_eq!(l.residuate(l.unit(), a), a, "{id}");
        }
    }
    let l = q("lukasiewicz-3");
    let half = el(&l, "1/2");
    assert_eq!(l.residuate(half, l.bottom()), half);
    for a in l.elements() {
        for c in l.elements() {
            assert_eq!(l.residuate(a, c), residuate_by_search(&l, a, c));
        }
    }
}

fn lukasiewicz_with_half_square(value: &str) -> QuantaleDef {
    let mut def = qvdomain::fixtures::fixture_def("lukasiewicz-3").unwrap();
    for t in def.tensor.iter_mut() {
        if t.0 == "1/2" && t.1 == "1/2" {
            t.2 = value.to_string();
        }
    }
    def
}

#[test]
fn corrupted_lukasiewicz_tables() {
    let limits = Limits::default();
    // Setting ½⊗½ = ½ turns the table into min, a valid quantale.
    let goedel_like = validate_quantale(&lukasiewicz_with_half_square("1/2"), &limits).unwrap();
    assert!(goedel_like.all_passed());
    let broken = validate_quantale(&lukasiewicz_with_half_square("1"), &limits).unwrap();
    let fail = broken.first_failure().expect("½⊗½ = 1 breaks the axioms");
    assert!(!fail.witness.is_empty());
}

#[test]
fn nonintegral_fixture_is_a_quantale() {
    let def = qvdomain::fixtures::fixture_def("nonintegral-3").unwrap();
    assert!(validate_quantale(&def, &Limits::default()).unwrap().all_passed());
    assert!(!q("nonintegral-3").is_integral());
}

#[test]
fn subsethood_degrees() {
    let l = q("lukasiewicz-3");
    let (z, h, o) = (l.bottom(), el(&l, "1/2"), l.top());
    assert_eq!(sub_degree(&l, &[h, o], &[z, h]), h);
    for b in [[z, z], [h, o], [o, z]] {
        assert_eq!(sub_degree(&l, &[z, z], &b), o);
    }
}

#[test]
fn down_sets() {
    let p = chain("boolean", &["bot", "top"]);
    let l = p.quantale().clone();
    assert_eq!(p.down_values(1), vec![l.top(), l.top()]);
    let lat = LOrderedSet::lattice_order(q("lukasiewicz-3")).unwrap();
    let ll = lat.quantale().clone();
    let half = el(&ll, "1/2").index();
    assert_eq!(lat.down_values(half)[2], el(&ll, "1/2"));
    let top_only = p.subset(vec![l.bottom(), l.top()]).unwrap();
    let r = p.is_lower_set(&top_only).unwrap();
    assert!(!r.passed);
    assert_eq!(r.witness, labels(&["bot", "top"]));
}

#[test]
fn antichain_examples() {
    let p = antichain(&["a", "b"]);
    let l = p.quantale().clone();
    let both = p.subset(vec![l.top(), l.top()]).unwrap();
    let d = p.is_directed(&both).unwrap();
    assert_eq!(d.label, "D2");
    assert_eq!(d.witness, labels(&["a", "b"]));
    assert_eq!(p.supremum(&both).unwrap(), None);
    // Every directed subset of a finite antichain is a single point with its
    // supremum, so the antichain is an L-dcpo.
    assert!(p.is_ldcpo().unwrap().passed);
}

#[test]
fn powerset_is_an_ldcpo() {
    let p = LOrderedSet::powerset_order(q("boolean"), 2, &Limits::default()).unwrap();
    assert!(p.is_ldcpo().unwrap().passed);
}

#[test]
fn forward_image() {
    let l = q("lukasiewicz-3");
    let img = zadeh_forward(&l, &[0, 0], &[el(&l, "1/2"), l.top()], 1);
    assert_eq!(img, vec![l.top()]);
}

#[test]
fn chain_is_not_an_antichain() {
    assert_eq!(find_lorder_iso(&chain("boolean", &["a", "b"]), &antichain(&["a", "b"])).unwrap(), None);
}

#[test]
fn flat_domain_way_below() {
    let p = LOrderedSet::from_crisp(q("boolean"), labels(&["bot", "a", "b"]), |i, j| i == j || i == 0).unwrap();
    let l = p.quantale().clone();
    assert_eq!(way_below(&p, 1).unwrap().get(2), l.bottom());
    assert_eq!(compact_elements(&p).unwrap(), vec![0, 1, 2]);
    for x in 0..3 {
        assert_eq!(k_subset(&p, x).unwrap().values(), p.down_values(x).as_slice());
    }
    assert!(is_algebraic(&p).unwrap().passed);
}

/// Finds a continuous L-dcpo with a non-compact point by seeded search.
fn continuous_non_algebraic() -> LOrderedSet {
    for id in ["lukasiewicz-3", "goedel-3"] {
        let l = q(id);
        for seed in 0..400u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 2 + (seed % 3) as usize;
            let Ok(p) = gen_lordered_set(&mut rng, &l, n, 50) else { continue };
            if !p.is_ldcpo().unwrap().passed || !is_continuous(&p).unwrap().passed {
                continue;
            }
            if compact_elements(&p).unwrap().len() < n {
                return p;
            }
        }
    }
    panic!("no continuous L-dcpo with a non-compact point found");
}

#[test]
fn way_below_closure_fails_lc_at_non_compact_points() {
    let p = continuous_non_algebraic();
    let s = closure_of_domain(&p).unwrap();
    assert!(s.is_interpolative().unwrap().passed);
    let lc = s.is_l_closure_space().unwrap();
    assert!(!lc.passed);
    let compact = compact_elements(&p).unwrap();
    let x = p.point(&lc.witness[0]).unwrap();
    assert!(!compact.contains(&x));
}

#[test]
fn point_closure_of_unit_singleton() {
    let l = q("goedel-3");
    let h = el(&l, "1/2");
    let s = ClosureSpace::point_generated(l.clone(), labels(&["a", "b"]), vec![vec![l.top(), h], vec![l.bottom(), l.top()]])
        .unwrap();
    for x in 0..2 {
        let ux = s.subset(qvdomain::lsubset::characteristic(&l, 2, x)).unwrap();
        assert_eq!(s.close(&ux).unwrap().values(), s.c(x));
    }
}

#[test]
fn single_point_directed_closed_sets() {
    let l = q("boolean");
    let s = ClosureSpace::point_generated(l.clone(), labels(&["a"]), vec![vec![l.top()]]).unwrap();
    assert_eq!(*s.dir_closed_members().unwrap(), vec![vec![l.top()]]);
}

#[test]
fn empty_set_is_a_fixed_point_but_not_directed_closed() {
    let l = q("boolean");
    let s = ClosureSpace::point_generated(l.clone(), labels(&["bot", "top"]), vec![vec![l.top(), l.bottom()], vec![l.top(), l.top()]])
        .unwrap();
    let zero = s.subset(vec![l.bottom(); 2]).unwrap();
    assert!(s.check_fixed_point_characterization(&zero).unwrap());
    assert_eq!(s.is_directed_closed(&zero).unwrap().label, "DC1");
}

#[test]
fn dense_subspace_needs_the_right_points() {
    let p = chain("boolean", &["bot", "top"]);
    let s = closure_of_domain(&p).unwrap();
    assert!(is_dense_subspace(&s, &[0, 1]).unwrap().passed);
    let r = is_dense_subspace(&s, &[0]).unwrap();
    assert!(!r.passed);
    assert!(!r.witness.is_empty());
}

#[test]
fn one_point_relations() {
    let l = q("boolean");
    let s = Arc::new(ClosureSpace::point_generated(l.clone(), labels(&["a"]), vec![vec![l.top()]]).unwrap());
    let all = [l.bottom(), l.top()];
    let approximable: Vec<Elem> = all
        .iter()
        .copied()
        .filter(|&d| ApproxRelation::new(s.clone(), s.clone(), vec![d]).unwrap().validate().unwrap().passed)
        .collect();
    assert_eq!(approximable, vec![l.top()]);
    assert_eq!(enumerate_approximable(&s, &s, 16).unwrap().unwrap().len(), 1);
    assert_eq!(enumerate_scott_maps(&s, &s, 16).unwrap().unwrap().len(), 1);
}

#[test]
fn two_point_down_set_relations_match_scott_maps() {
    let l = q("boolean");
    let (o, z) = (l.top(), l.bottom());
    let s = Arc::new(ClosureSpace::point_generated(l.clone(), labels(&["bot", "top"]), vec![vec![o, z], vec![o, o]]).unwrap());
    let mut count = 0;
    for mask in 0u32..16 {
        let theta = (0..4).map(|i| if mask & (1 << i) != 0 { o } else { z }).collect();
        if ApproxRelation::new(s.clone(), s.clone(), theta).unwrap().validate().unwrap().passed {
            count += 1;
        }
    }
    let maps = enumerate_scott_maps(&s, &s, 1 << 10).unwrap().unwrap();
    assert_eq!(count, maps.len());
    // Monotone self-maps of a 2-chain.
    assert_eq!(count, 3);
    assert!(identity_relation(&s).unwrap().validate().unwrap().passed);
}

#[test]
fn generated_order_is_valid() {
    let l = q("lukasiewicz-3");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = gen_lordered_set(&mut rng, &l, 3, 50).unwrap();
    assert!(validate_lorder(&l, p.labels(), p.table()).unwrap().all_passed());
}
