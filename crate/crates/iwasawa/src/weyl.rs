//! The little piece of Weyl-group machinery the involution construction
//! needs: simple reflections and the longest element of a parabolic,
//! computed by descent rather than from stored reduced words.

use std::collections::BTreeSet;

use crate::linalg::Rat;
use crate::rootsys::{Root, RootSystem};
use num::Zero;

/// `s_i(v) = v − ⟨v, β_i∨⟩ β_i` on a root.
pub fn reflect_root(rs: &RootSystem, i: usize, r: &Root) -> Root {
    let p = rs.pairing_simple(&r.coeffs, i);
    let mut coeffs = r.coeffs.clone();
    coeffs[i] -= p;
    Root { coeffs }
}

/// `s_i` on a rational coefficient vector.
pub fn reflect_vec(rs: &RootSystem, i: usize, v: &[Rat]) -> Vec<Rat> {
    let p = rs.pairing_simple_rat(v, i);
    let mut out = v.to_vec();
    if !p.is_zero() {
        let t = &out[i] - &p;
        out[i] = t;
    }
    out
}

/// A reduced word for the longest element of the parabolic subgroup
/// `W_S`, found by reflecting `2ρ_S` into the `S`-antidominant chamber.
pub fn longest_element_word(rs: &RootSystem, s: &BTreeSet<usize>) -> Vec<usize> {
    let l = rs.rank();
    let mut v = vec![0i64; l];
    for r in &rs.positive_roots {
        if r.support().is_subset(s) {
            for j in 0..l {
                v[j] += r.coeffs[j];
            }
        }
    }
    let mut letters = Vec::new();
    loop {
        let mut moved = false;
        for &i in s {
            let p = rs.pairing_simple(&v, i);
            if p > 0 {
                v[i] -= p;
                letters.push(i);
                moved = true;
                break;
            }
        }
        if !moved {
            return letters;
        }
    }
}

/// Apply `w₀` of `W_S` to a root.
pub fn longest_element_on_root(rs: &RootSystem, s: &BTreeSet<usize>, r: &Root) -> Root {
    let word = longest_element_word(rs, s);
    apply_word_root(rs, &word, r)
}

/// Apply `w₀` of `W_S` to a rational coefficient vector.
pub fn longest_element_action(rs: &RootSystem, s: &BTreeSet<usize>, v: &[Rat]) -> Vec<Rat> {
    let word = longest_element_word(rs, s);
    apply_word_vec(rs, &word, v)
}

pub fn apply_word_root(rs: &RootSystem, word: &[usize], r: &Root) -> Root {
    let mut cur = r.clone();
    for &i in word {
        cur = reflect_root(rs, i, &cur);
    }
    cur
}

pub fn apply_word_vec(rs: &RootSystem, word: &[usize], v: &[Rat]) -> Vec<Rat> {
    let mut cur = v.to_vec();
    for &i in word {
        cur = reflect_vec(rs, i, &cur);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, SimpleType};

    fn rs(f: Family, l: usize) -> RootSystem {
        RootSystem::build(SimpleType::new(f, l).unwrap())
    }

    /// Brute-force oracle: all Weyl group elements as root permutations,
    /// generated from the simple reflections restricted to `Δ^S`.
    fn all_weyl_images(rs: &RootSystem, s: &BTreeSet<usize>, r: &Root) -> Vec<Root> {
        // enumerate group elements as maps on a fixed tuple of roots
        let gen: Vec<usize> = s.iter().copied().collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut elems = vec![vec![]];
        let mut images = Vec::new();
        let keyed = |word: &[usize]| -> Vec<i64> {
            let mut out = Vec::new();
            for i in 0..rs.rank() {
                let im = apply_word_root(rs, word, &rs.simple_root(i));
                out.extend(im.coeffs);
            }
            out
        };
        seen.insert(keyed(&[]));
        let mut queue = vec![vec![]];
        while let Some(w) = queue.pop() {
            images.push(apply_word_root(rs, &w, r));
            for &g in &gen {
                let mut w2 = w.clone();
                w2.push(g);
                if seen.insert(keyed(&w2)) {
                    queue.push(w2.clone());
                    elems.push(w2);
                }
            }
        }
        images
    }

    #[test]
    fn reflection_basics() {
        let a2 = rs(Family::A, 2);
        let b1 = a2.simple_root(0);
        assert_eq!(reflect_root(&a2, 0, &b1), b1.neg());
        let b2 = a2.simple_root(1);
        assert_eq!(reflect_root(&a2, 0, &b2).coeffs, vec![1, 1]);
        // involution
        for r in a2.all_roots() {
            assert_eq!(reflect_root(&a2, 1, &reflect_root(&a2, 1, &r)), r);
        }
    }

    #[test]
    fn empty_parabolic_is_identity() {
        let a2 = rs(Family::A, 2);
        let s = BTreeSet::new();
        let hr = a2.highest_root(&a2.full_base()).unwrap();
        assert_eq!(longest_element_on_root(&a2, &s, &hr), hr);
    }

    #[test]
    fn a2_longest_element_is_minus_flip() {
        let a2 = rs(Family::A, 2);
        let s = a2.full_base();
        // w₀(β1) = −β2, checked against brute force over all 6 elements
        let b1 = a2.simple_root(0);
        let w0b1 = longest_element_on_root(&a2, &s, &b1);
        assert_eq!(w0b1, a2.simple_root(1).neg());
        let images = all_weyl_images(&a2, &s, &b1);
        assert_eq!(images.len(), 6);
        // w₀ sends Δ₊ to Δ₋; only one brute-force element does that for all roots
        let mut count = 0;
        for r in &a2.positive_roots {
            let im = longest_element_on_root(&a2, &s, r);
            assert!(!im.is_positive());
            count += 1;
        }
        assert_eq!(count, 3);
    }

    #[test]
    fn b2_longest_element_is_minus_identity() {
        let b2 = rs(Family::B, 2);
        let s = b2.full_base();
        for r in b2.all_roots() {
            assert_eq!(longest_element_on_root(&b2, &s, &r), r.neg());
        }
        // brute force: the 8-element group contains −id and the descent
        // word reproduces it
        let b1 = b2.simple_root(0);
        let images = all_weyl_images(&b2, &s, &b1);
        assert_eq!(images.len(), 8);
        assert!(images.contains(&b1.neg()));
    }

    #[test]
    fn parabolic_longest_element_permutes_subsystem() {
        let d4 = rs(Family::D, 4);
        let s: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        for r in &d4.positive_roots {
            if r.support().is_subset(&s) {
                let im = longest_element_on_root(&d4, &s, r);
                assert!(!im.is_positive());
                assert!(im.neg().support().is_subset(&s));
            }
        }
    }
}
