//! Property tests for the algebraic invariants that hold on all inputs,
//! not just the tabulated ones.

use std::collections::BTreeMap;

use iwasawa::chevalley::{Elem, StructureConstants};
use iwasawa::linalg::rat;
use iwasawa::rootsys::{Family, Root, RootSystem, SimpleType};
use iwasawa::weyl::{reflect_root, reflect_vec};
use num::Zero;
use proptest::prelude::*;

fn small_types() -> Vec<SimpleType> {
    vec![
        SimpleType::new(Family::A, 3).unwrap(),
        SimpleType::new(Family::B, 3).unwrap(),
        SimpleType::new(Family::C, 3).unwrap(),
        SimpleType::new(Family::D, 4).unwrap(),
        SimpleType::new(Family::G, 2).unwrap(),
    ]
}

proptest! {
    #[test]
    fn reflections_are_involutions(ti in 0usize..5, node in 0usize..4, coeffs in proptest::collection::vec(-6i64..=6, 4)) {
        let t = small_types()[ti];
        let rs = RootSystem::build(t);
        let i = node % rs.rank();
        let v: Vec<num::BigRational> = coeffs.iter().take(rs.rank()).map(|&c| rat(c)).collect();
        let twice = reflect_vec(&rs, i, &reflect_vec(&rs, i, &v));
        prop_assert_eq!(twice, v);
    }

    #[test]
    fn reflections_permute_roots(ti in 0usize..5, node in 0usize..4, ri in 0usize..24) {
        let t = small_types()[ti];
        let rs = RootSystem::build(t);
        let i = node % rs.rank();
        let r = rs.positive_roots[ri % rs.num_positive()].clone();
        let img = reflect_root(&rs, i, &r);
        prop_assert!(rs.is_root(&img));
    }

    #[test]
    fn pairing_is_linear_in_the_first_slot(ti in 0usize..5, a in 0usize..24, b in 0usize..24, c in 0usize..24) {
        let t = small_types()[ti];
        let rs = RootSystem::build(t);
        let ra = &rs.positive_roots[a % rs.num_positive()];
        let rb = &rs.positive_roots[b % rs.num_positive()];
        let rc = &rs.positive_roots[c % rs.num_positive()];
        // ⟨·, c∨⟩ extends additively even when the sum is not a root
        let sum = ra.add(rb);
        prop_assert_eq!(
            rs.pairing(ra, rc) + rs.pairing(rb, rc),
            2 * rs.inner(&sum, rc) / rs.inner(rc, rc)
        );
    }
}

fn sparse_elem(sc: &StructureConstants, picks: &[(usize, i64)]) -> Elem {
    let mut e: Elem = BTreeMap::new();
    for &(i, c) in picks {
        if c != 0 {
            let entry = e.entry(i % sc.dim()).or_insert_with(num::BigRational::zero);
            *entry += rat(c);
        }
    }
    e.retain(|_, v| !v.is_zero());
    e
}

proptest! {
    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        ti in 0usize..3,
        xs in proptest::collection::vec((0usize..40, -3i64..=3), 1..5),
        ys in proptest::collection::vec((0usize..40, -3i64..=3), 1..5),
        scale in 1i64..=4,
    ) {
        let t = [
            SimpleType::new(Family::A, 2).unwrap(),
            SimpleType::new(Family::B, 2).unwrap(),
            SimpleType::new(Family::G, 2).unwrap(),
        ][ti];
        let sc = StructureConstants::new(RootSystem::build(t));
        let x = sparse_elem(&sc, &xs);
        let y = sparse_elem(&sc, &ys);
        // antisymmetry
        let xy = sc.bracket(&x, &y);
        let mut yx = sc.bracket(&y, &x);
        for v in yx.values_mut() {
            *v = -v.clone();
        }
        prop_assert_eq!(&xy, &yx);
        // homogeneity
        let sx: Elem = x.iter().map(|(&i, v)| (i, v * rat(scale))).collect();
        let sxy = sc.bracket(&sx, &y);
        let expect: Elem = xy.iter().map(|(&i, v)| (i, v * rat(scale))).collect();
        prop_assert_eq!(sxy, expect);
    }

    #[test]
    fn strings_are_unbroken(ti in 0usize..5, a in 0usize..24, b in 0usize..24) {
        // the α-string through β has no gaps: p − q = ⟨β, α∨⟩
        let t = small_types()[ti];
        let rs = RootSystem::build(t);
        let alpha = &rs.positive_roots[a % rs.num_positive()];
        let beta = &rs.positive_roots[b % rs.num_positive()];
        prop_assume!(alpha != beta);
        let mut p = 0i64;
        let mut cur = beta.sub(alpha);
        while rs.is_root(&cur) {
            p += 1;
            cur = cur.sub(alpha);
        }
        let mut q = 0i64;
        let mut cur = beta.add(alpha);
        while rs.is_root(&cur) {
            q += 1;
            cur = cur.add(alpha);
        }
        prop_assert_eq!(p - q, rs.pairing(beta, alpha));
    }
}

#[test]
fn roots_never_mix_signs() {
    for t in small_types() {
        let rs = RootSystem::build(t);
        for r in rs.all_roots() {
            let pos = r.coeffs.iter().any(|&c| c > 0);
            let neg = r.coeffs.iter().any(|&c| c < 0);
            assert!(!(pos && neg), "{t}: mixed-sign root {r:?}");
        }
    }
}

#[test]
fn every_stored_root_is_in_the_enumerated_set() {
    let rs = RootSystem::build(SimpleType::new(Family::F, 4).unwrap());
    for r in &rs.positive_roots {
        assert!(rs.is_positive_root(r));
        assert!(rs.is_root(&r.neg()));
    }
    let fake = Root {
        coeffs: vec![1, 0, 0, 1],
    };
    assert!(!rs.is_root(&fake));
}
