//! The Kostant cascade: a maximal family of pairwise strongly orthogonal
//! roots obtained by recursively splitting off the highest root.
//!
//! `kostant_cascade` follows the recursion
//!   K(∅) = ∅,
//!   K(S) = K(S_1) ∪ … ∪ K(S_r) over connected components,
//!   K(S) = {S} ∪ K({α ∈ S : ⟨α, ε_S∨⟩ = 0}) for connected S,
//! with a deterministic ordering: parents precede children, components
//! by least node. The tables shipped with the crate are re-derived from
//! this recursion; nothing is hard-coded outside test fixtures.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::rootsys::{Root, RootSystem, SimpleType};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CascadeElement {
    /// Connected subset `K` of the base.
    pub subset: BTreeSet<usize>,
    /// `ε_K`, the highest root of `Δ^K`.
    pub epsilon: Root,
    /// `Γ^K = {α ∈ Δ^K : ⟨α, ε_K∨⟩ > 0}` (all positive).
    pub gamma: Vec<Root>,
    /// `Γ₀^K = Γ^K \ {ε_K}`.
    pub gamma0: Vec<Root>,
    /// Index of the enclosing cascade element, when nested.
    pub parent: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Cascade {
    pub elements: Vec<CascadeElement>,
    /// For each positive root `α`, the index of the unique `K` with
    /// `α ∈ Γ^K`. Total when the cascade is over the full base.
    root_to_element: HashMap<Root, usize>,
}

impl Cascade {
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn epsilons(&self) -> Vec<Root> {
        self.elements.iter().map(|e| e.epsilon.clone()).collect()
    }
    pub fn element_of_epsilon(&self, eps: &Root) -> Option<usize> {
        self.elements.iter().position(|e| &e.epsilon == eps)
    }
}

/// Build `K(S)`.
pub fn kostant_cascade(rs: &RootSystem, s: &BTreeSet<usize>) -> Cascade {
    let mut elements = Vec::new();
    for comp in rs.connected_components(s) {
        build_connected(rs, &comp, None, &mut elements);
    }
    let mut root_to_element = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        for g in &e.gamma {
            let prev = root_to_element.insert(g.clone(), i);
            debug_assert!(prev.is_none(), "Γ sets must be disjoint");
        }
    }
    Cascade {
        elements,
        root_to_element,
    }
}

fn build_connected(
    rs: &RootSystem,
    comp: &BTreeSet<usize>,
    parent: Option<usize>,
    out: &mut Vec<CascadeElement>,
) {
    let epsilon = rs.highest_root(comp).expect("component is connected");
    let gamma: Vec<Root> = rs
        .positive_roots
        .iter()
        .filter(|r| r.support().is_subset(comp) && rs.pairing(r, &epsilon) > 0)
        .cloned()
        .collect();
    let gamma0: Vec<Root> = gamma.iter().filter(|r| **r != epsilon).cloned().collect();
    let idx = out.len();
    out.push(CascadeElement {
        subset: comp.clone(),
        epsilon: epsilon.clone(),
        gamma,
        gamma0,
        parent,
    });
    let orthogonal: BTreeSet<usize> = comp
        .iter()
        .copied()
        .filter(|&i| rs.pairing(&rs.simple_root(i), &epsilon) == 0)
        .collect();
    for sub in rs.connected_components(&orthogonal) {
        build_connected(rs, &sub, Some(idx), out);
    }
}

/// `k_𝔤`: the size of the cascade over the full base. An invariant of
/// the simple type.
pub fn k_g(t: SimpleType) -> usize {
    let rs = RootSystem::build(t);
    kostant_cascade(&rs, &rs.full_base()).len()
}

/// Closed-form value of `k_𝔤` used as a test oracle.
pub fn k_g_closed_form(t: SimpleType) -> usize {
    use crate::rootsys::Family::*;
    let l = t.rank;
    match t.family {
        A => (l + 1) / 2,
        B | C => l,
        D => 2 * (l / 2),
        E => match l {
            6 => 4,
            7 => 7,
            _ => 8,
        },
        F => 4,
        G => 2,
    }
}

/// `K_α`: the unique cascade element whose `Γ` contains the positive
/// root `α`.
pub fn k_alpha<'c>(c: &'c Cascade, alpha: &Root) -> &'c CascadeElement {
    let idx = c
        .root_to_element
        .get(alpha)
        .copied()
        .expect("every positive root lies in exactly one Γ^K");
    &c.elements[idx]
}

pub fn k_alpha_index(c: &Cascade, alpha: &Root) -> Option<usize> {
    c.root_to_element.get(alpha).copied()
}

/// `Γ₁^K = {α ∈ Γ₀^K : ε_K − α ∈ Δ₊′}` for a supplied set of positive
/// imaginary roots.
pub fn gamma1(k: &CascadeElement, imaginary: &HashSet<Root>) -> Vec<Root> {
    k.gamma0
        .iter()
        .filter(|a| imaginary.contains(&k.epsilon.sub(a)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn system(f: Family, l: usize) -> RootSystem {
        RootSystem::build(SimpleType::new(f, l).unwrap())
    }

    fn full_cascade(rs: &RootSystem) -> Cascade {
        kostant_cascade(rs, &rs.full_base())
    }

    fn eps_set(c: &Cascade) -> BTreeSet<Vec<i64>> {
        c.elements.iter().map(|e| e.epsilon.coeffs.clone()).collect()
    }

    #[test]
    fn a3_cascade() {
        let rs = system(Family::A, 3);
        let c = full_cascade(&rs);
        assert_eq!(
            eps_set(&c),
            [vec![1, 1, 1], vec![0, 1, 0]].into_iter().collect()
        );
    }

    #[test]
    fn g2_cascade() {
        let rs = system(Family::G, 2);
        let c = full_cascade(&rs);
        // highest root (2,3); the base vector orthogonal to it is β2
        assert_eq!(
            eps_set(&c),
            [vec![2, 3], vec![0, 1]].into_iter().collect()
        );
    }

    #[test]
    fn e7_cascade_has_seven_elements() {
        let rs = system(Family::E, 7);
        let c = full_cascade(&rs);
        assert_eq!(c.len(), 7);
        let expect: BTreeSet<Vec<i64>> = [
            vec![2, 2, 3, 4, 3, 2, 1],
            vec![0, 1, 1, 2, 2, 2, 1],
            vec![0, 1, 1, 2, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1],
            vec![0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0],
        ]
        .into_iter()
        .collect();
        assert_eq!(eps_set(&c), expect);
    }

    #[test]
    fn k_g_agrees_with_closed_form() {
        // A5 → 3, D7 → 6, F4 → 4 and friends
        assert_eq!(k_g(SimpleType::new(Family::A, 5).unwrap()), 3);
        assert_eq!(k_g(SimpleType::new(Family::D, 7).unwrap()), 6);
        assert_eq!(k_g(SimpleType::new(Family::F, 4).unwrap()), 4);
        for (f, lo, hi) in [
            (Family::A, 1, 9),
            (Family::B, 2, 9),
            (Family::C, 3, 9),
            (Family::D, 4, 9),
        ] {
            for l in lo..=hi {
                let t = SimpleType::new(f, l).unwrap();
                assert_eq!(k_g(t), k_g_closed_form(t), "{t:?}");
            }
        }
    }

    #[test]
    fn gamma_partition_and_strong_orthogonality() {
        for (f, l) in [
            (Family::A, 4),
            (Family::B, 4),
            (Family::C, 4),
            (Family::D, 5),
            (Family::F, 4),
            (Family::G, 2),
            (Family::E, 6),
        ] {
            let rs = system(f, l);
            let c = full_cascade(&rs);
            let total: usize = c.elements.iter().map(|e| e.gamma.len()).sum();
            assert_eq!(total, rs.num_positive(), "{f:?}{l}");
            // pairwise strong orthogonality of the ε's
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    let a = &c.elements[i].epsilon;
                    let b = &c.elements[j].epsilon;
                    assert!(!rs.is_root(&a.add(b)));
                    assert!(!rs.is_root(&a.sub(b)));
                }
            }
        }
    }

    #[test]
    fn heisenberg_matching() {
        // α ↦ ε_K − α is a fixed-point-free involution on Γ₀ with
        // ⟨α, ε_K∨⟩ = 1
        for (f, l) in [(Family::C, 4), (Family::E, 6), (Family::B, 5)] {
            let rs = system(f, l);
            let c = full_cascade(&rs);
            for e in &c.elements {
                for a in &e.gamma0 {
                    let b = e.epsilon.sub(a);
                    assert!(e.gamma0.contains(&b));
                    assert_ne!(&b, a);
                    assert_eq!(rs.pairing(a, &e.epsilon), 1);
                }
            }
        }
    }

    #[test]
    fn gamma_sum_rule() {
        // α, β ∈ Γ^K and α+β ∈ Δ ⟹ α+β = ε_K
        for (f, l) in [(Family::B, 4), (Family::F, 4), (Family::G, 2)] {
            let rs = system(f, l);
            let c = full_cascade(&rs);
            for e in &c.elements {
                for a in &e.gamma {
                    for b in &e.gamma {
                        let s = a.add(b);
                        if rs.is_root(&s) {
                            assert_eq!(s, e.epsilon);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nesting_or_strong_orthogonality_of_subsystems() {
        for (f, l) in [(Family::D, 6), (Family::B, 5)] {
            let rs = system(f, l);
            let c = full_cascade(&rs);
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    let ki = &c.elements[i].subset;
                    let kj = &c.elements[j].subset;
                    if ki.is_subset(kj) || kj.is_subset(ki) {
                        continue;
                    }
                    assert!(ki.is_disjoint(kj));
                    for a in rs.subsystem_roots(ki) {
                        for b in rs.subsystem_roots(kj) {
                            assert!(!rs.is_root(&a.add(&b)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn k_alpha_examples() {
        let rs = system(Family::A, 3);
        let c = full_cascade(&rs);
        for e in &c.elements {
            assert_eq!(k_alpha(&c, &e.epsilon).epsilon, e.epsilon);
        }
        // β2 sits in the inner element, β1 in the outer one
        let inner = k_alpha(&c, &rs.simple_root(1));
        assert_eq!(inner.subset, [1].into_iter().collect());
        let outer = k_alpha(&c, &rs.simple_root(0));
        assert_eq!(outer.subset, rs.full_base());
    }

    #[test]
    fn gamma1_empty_without_imaginary_roots() {
        let rs = system(Family::B, 3);
        let c = full_cascade(&rs);
        let empty = HashSet::new();
        for e in &c.elements {
            assert!(gamma1(e, &empty).is_empty());
        }
    }

    #[test]
    fn deterministic_ordering_parents_first() {
        let rs = system(Family::E, 7);
        let c = full_cascade(&rs);
        for (i, e) in c.elements.iter().enumerate() {
            if let Some(p) = e.parent {
                assert!(p < i);
                assert!(e.subset.is_subset(&c.elements[p].subset));
            }
        }
    }
}
