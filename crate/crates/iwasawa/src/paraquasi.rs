//! Quasi-reductivity of the standard parabolics `p_{{α}}` attached to a
//! single simple root, in a complex simple Lie algebra.
//!
//! The positive roots split into `Δ₊¹` (outside the span `E_Π` of the
//! cascade roots), `Δ₊²` (the cascade roots themselves) and `Δ₊³` (the
//! rest of `E_Π`), with `Δ₊³′ ⊆ Δ₊³` those of the shape
//! `½(ε_{K_α} − ε_{K′})` with `ε_{K′} + α` a root. The parabolic
//! `p_{{α}}` is quasi-reductive exactly when `α ∈ Δ₊¹ ∪ Δ₊² ∪ Δ₊³′`;
//! `direct_parabolic_check` re-derives the verdict from first
//! principles through the index machinery.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::cascade::{k_alpha_index, kostant_cascade, Cascade};
use crate::chevalley::StructureConstants;
use crate::indexcalc::{self, Ambient, IndexError, Subalgebra};
use crate::linalg::{self, rat, Rat};
use crate::rootsys::{Root, RootSystem, SimpleType};
use num::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum PartClass {
    /// Outside the span of the cascade roots.
    D1,
    /// A cascade root.
    D2,
    /// Inside the span but not a cascade root.
    D3,
    /// In `Δ₊³` of the special half-difference shape.
    D3Prime,
}

#[derive(Clone, Debug)]
pub struct RootPartition {
    pub d1: Vec<Root>,
    pub d2: Vec<Root>,
    pub d3: Vec<Root>,
    pub d3prime: Vec<Root>,
    /// For each `α ∈ Δ₊³′`, the witness `(K_α, K′_α)` as cascade
    /// element indices with `α = ½(ε_{K_α} − ε_{K′_α})`.
    pub witnesses: HashMap<Root, (usize, usize)>,
    pub class_of: HashMap<Root, PartClass>,
}

/// Partition the positive roots against the cascade of the full base.
pub fn partition_roots(rs: &RootSystem, c: &Cascade) -> RootPartition {
    let eps: Vec<&Root> = c.elements.iter().map(|e| &e.epsilon).collect();
    let eps_set: BTreeSet<&Root> = eps.iter().copied().collect();
    // columns of the span matrix: the epsilons
    let l = rs.rank();
    let span_cols: Vec<Vec<Rat>> = (0..l)
        .map(|i| eps.iter().map(|e| rat(e.coeffs[i])).collect())
        .collect();
    let mut out = RootPartition {
        d1: vec![],
        d2: vec![],
        d3: vec![],
        d3prime: vec![],
        witnesses: HashMap::new(),
        class_of: HashMap::new(),
    };
    for a in &rs.positive_roots {
        if eps_set.contains(a) {
            out.d2.push(a.clone());
            out.class_of.insert(a.clone(), PartClass::D2);
            continue;
        }
        let rhs: Vec<Rat> = a.coeffs.iter().map(|&v| rat(v)).collect();
        if linalg::solve(&span_cols, &rhs).is_none() {
            out.d1.push(a.clone());
            out.class_of.insert(a.clone(), PartClass::D1);
            continue;
        }
        out.d3.push(a.clone());
        // Δ₊³′ test: ε_{K_α} − 2α must be the epsilon of some K′ with
        // ε_{K′} + α a root
        let ka = k_alpha_index(c, a).expect("positive root lies in some Γ");
        let v = c.elements[ka].epsilon.sub(a).sub(a);
        let mut class = PartClass::D3;
        if let Some(kp) = c.element_of_epsilon(&v) {
            if rs.is_root(&c.elements[kp].epsilon.add(a)) {
                out.d3prime.push(a.clone());
                out.witnesses.insert(a.clone(), (ka, kp));
                class = PartClass::D3Prime;
            }
        }
        out.class_of.insert(a.clone(), class);
    }
    out
}

/// `K′(α)`: cascade elements `M` with `ε_M + α` a root.
pub fn kprime_set(rs: &RootSystem, c: &Cascade, alpha: &Root) -> Vec<usize> {
    (0..c.len())
        .filter(|&i| rs.is_root(&c.elements[i].epsilon.add(alpha)))
        .collect()
}

/// Criterion for `p_{{α}}`, `α` simple: quasi-reductive iff
/// `α ∈ Δ₊¹ ∪ Δ₊² ∪ Δ₊³′`.
pub fn parabolic_quasi_reductive(part: &RootPartition, alpha: &Root) -> bool {
    matches!(
        part.class_of.get(alpha),
        Some(PartClass::D1) | Some(PartClass::D2) | Some(PartClass::D3Prime)
    )
}

/// Verdicts for all simple roots of a type.
pub fn table_row(t: SimpleType) -> Vec<bool> {
    let rs = RootSystem::build(t);
    let c = kostant_cascade(&rs, &rs.full_base());
    let part = partition_roots(&rs, &c);
    (0..t.rank)
        .map(|i| parabolic_quasi_reductive(&part, &rs.simple_root(i)))
        .collect()
}

/// Build `p_{{α}} = l ⊕ u` as a subalgebra: the full Cartan, all
/// positive root vectors, and `X_{−α}`.
pub fn build_parabolic(
    sc: Arc<StructureConstants>,
    alpha_index: usize,
) -> Result<Subalgebra, IndexError> {
    let ambient = Ambient::simple(sc);
    let rank = ambient.sc.rs.rank();
    let torus: Vec<Vec<Rat>> = (0..rank)
        .map(|i| {
            let mut v = vec![Rat::zero(); rank];
            v[i] = Rat::one();
            v
        })
        .collect();
    let m = ambient.sc.num_positive();
    let simple = Root::simple(rank, alpha_index);
    let si = ambient.sc.rs.root_index(&simple).unwrap();
    let mut roots: Vec<(usize, usize)> = (0..m).map(|i| (0, i)).collect();
    roots.push((0, m + si));
    Subalgebra::new(ambient, torus, roots)
}

/// Independent cross-check of the criterion: build `p_{{α}}`, find a
/// regular functional by sampling, and test reductivity directly.
pub fn direct_parabolic_check(
    sc: Arc<StructureConstants>,
    alpha_index: usize,
    seed: u64,
) -> Result<bool, IndexError> {
    let q = build_parabolic(sc, alpha_index)?;
    let comp = indexcalc::index(&q, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let tries = 24;
    for _ in 0..tries {
        let phi: Vec<Rat> = (0..q.dim())
            .map(|_| rat(rng.gen_range(1..=65536i64)))
            .collect();
        match indexcalc::is_reductive_form(&q, &phi, comp.index) {
            Ok(v) => return Ok(v),
            Err(IndexError::NotRegular { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(IndexError::NoRegularSample(tries))
}

#[derive(Serialize)]
pub struct TableRowJson {
    pub family: String,
    pub rank: usize,
    pub quasi_reductive: Vec<usize>,
    pub not_quasi_reductive: Vec<usize>,
}

pub fn table_row_json(t: SimpleType) -> TableRowJson {
    let verdicts = table_row(t);
    TableRowJson {
        family: t.family.to_string(),
        rank: t.rank,
        quasi_reductive: verdicts
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| i + 1)
            .collect(),
        not_quasi_reductive: verdicts
            .iter()
            .enumerate()
            .filter(|(_, &v)| !v)
            .map(|(i, _)| i + 1)
            .collect(),
    }
}

/// `ε_L − α ∈ Δ ⟺ L = K_α` for simple `α`. When `α` is itself a
/// cascade root the difference on the `K_α` side degenerates to zero,
/// so the existence half applies only for `α ≠ ε_{K_α}`.
pub fn cond_root_i_violations(rs: &RootSystem, c: &Cascade) -> usize {
    let mut bad = 0;
    for i in 0..rs.rank() {
        let alpha = rs.simple_root(i);
        let ka = k_alpha_index(c, &alpha).unwrap();
        for (li, e) in c.elements.iter().enumerate() {
            let is_root = rs.is_root(&e.epsilon.sub(&alpha));
            let expect = li == ka && e.epsilon != alpha;
            if is_root != expect {
                bad += 1;
            }
        }
    }
    bad
}

/// `α ∈ Π ∩ Δ₊³′ ⟹ |K′(α)| = 1`.
pub fn cond_root_ii_violations(rs: &RootSystem, c: &Cascade, part: &RootPartition) -> usize {
    let mut bad = 0;
    for i in 0..rs.rank() {
        let alpha = rs.simple_root(i);
        if part.class_of.get(&alpha) == Some(&PartClass::D3Prime)
            && kprime_set(rs, c, &alpha).len() != 1
        {
            bad += 1;
        }
    }
    bad
}

/// For `α ∈ Π ∩ (Δ₊³ \ Δ₊³′)`: no identity `ε_M + α = ε_N + γ` with
/// `M ∈ K′(α)` and `γ ≠ α`.
pub fn cond_root_iii_violations(rs: &RootSystem, c: &Cascade, part: &RootPartition) -> usize {
    let mut bad = 0;
    for i in 0..rs.rank() {
        let alpha = rs.simple_root(i);
        if part.class_of.get(&alpha) != Some(&PartClass::D3) {
            continue;
        }
        for &mi in &kprime_set(rs, c, &alpha) {
            let lhs = c.elements[mi].epsilon.add(&alpha);
            for e in &c.elements {
                let gamma = lhs.sub(&e.epsilon);
                if gamma.is_positive() && rs.is_positive_root(&gamma) && gamma != alpha {
                    bad += 1;
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn setup(f: Family, l: usize) -> (RootSystem, Cascade) {
        let rs = RootSystem::build(SimpleType::new(f, l).unwrap());
        let c = kostant_cascade(&rs, &rs.full_base());
        (rs, c)
    }

    #[test]
    fn a_type_simple_roots_never_in_d3() {
        for l in 1..=6 {
            let (rs, c) = setup(Family::A, l);
            let part = partition_roots(&rs, &c);
            for i in 0..l {
                let cl = part.class_of[&rs.simple_root(i)];
                assert!(matches!(cl, PartClass::D1 | PartClass::D2), "A{l} β{}", i + 1);
            }
        }
    }

    #[test]
    fn c_type_half_differences() {
        // β_i = ½(ε_{K_i} − ε_{K_{i+1}}) for i ≤ l−1
        for l in [3usize, 5, 8] {
            let (rs, c) = setup(Family::C, l);
            let part = partition_roots(&rs, &c);
            for i in 0..l - 1 {
                let alpha = rs.simple_root(i);
                assert_eq!(part.class_of[&alpha], PartClass::D3Prime, "C{l} β{}", i + 1);
                let (ka, kp) = part.witnesses[&alpha];
                let diff = c.elements[ka].epsilon.sub(&c.elements[kp].epsilon);
                assert_eq!(diff, alpha.add(&alpha));
            }
            // β_l is a cascade root
            assert_eq!(part.class_of[&rs.simple_root(l - 1)], PartClass::D2);
        }
    }

    #[test]
    fn f4_beta3_witness() {
        let (rs, c) = setup(Family::F, 4);
        let part = partition_roots(&rs, &c);
        let b3 = rs.simple_root(2);
        assert_eq!(part.class_of[&b3], PartClass::D3Prime);
        let (ka, kp) = part.witnesses[&b3];
        let knodes: BTreeSet<usize> = c.elements[ka].subset.iter().copied().collect();
        let kpnodes: BTreeSet<usize> = c.elements[kp].subset.iter().copied().collect();
        assert_eq!(knodes, [1, 2].into_iter().collect()); // {β2, β3}
        assert_eq!(kpnodes, [1].into_iter().collect()); // {β2}
    }

    #[test]
    fn partition_is_a_partition() {
        for (f, l) in [
            (Family::B, 5),
            (Family::D, 6),
            (Family::E, 7),
            (Family::G, 2),
        ] {
            let (rs, c) = setup(f, l);
            let part = partition_roots(&rs, &c);
            assert_eq!(
                part.d1.len() + part.d2.len() + part.d3.len(),
                rs.num_positive()
            );
            assert_eq!(part.d2.len(), c.len());
            for a in &part.d3prime {
                assert!(part.d3.contains(a));
            }
        }
    }

    #[test]
    fn kprime_of_cascade_roots_is_empty() {
        for (f, l) in [(Family::C, 3), (Family::F, 4), (Family::E, 6)] {
            let (rs, c) = setup(f, l);
            for e in &c.elements {
                assert!(kprime_set(&rs, &c, &e.epsilon).is_empty(), "{f:?}{l}");
            }
        }
    }

    #[test]
    fn c3_kprime_of_beta1() {
        let (rs, c) = setup(Family::C, 3);
        let ks = kprime_set(&rs, &c, &rs.simple_root(0));
        assert_eq!(ks.len(), 1);
        let nodes: BTreeSet<usize> = c.elements[ks[0]].subset.iter().copied().collect();
        assert_eq!(nodes, [1, 2].into_iter().collect()); // K_2 = {β2, β3}
    }

    #[test]
    fn g2_kprime_of_beta1() {
        // brute force over the six positive roots: only (0,1) + β1 is a root
        let (rs, c) = setup(Family::G, 2);
        let b1 = rs.simple_root(0);
        let brute: Vec<usize> = (0..c.len())
            .filter(|&i| {
                rs.positive_roots
                    .iter()
                    .any(|r| *r == c.elements[i].epsilon.add(&b1))
            })
            .collect();
        assert_eq!(kprime_set(&rs, &c, &b1), brute);
        assert_eq!(brute.len(), 1);
    }

    #[test]
    fn table_verdicts_exceptional_types() {
        let g2 = table_row(SimpleType::new(Family::G, 2).unwrap());
        assert_eq!(g2, vec![false, true]);
        let f4 = table_row(SimpleType::new(Family::F, 4).unwrap());
        assert_eq!(f4, vec![false, true, true, true]);
        let e6 = table_row(SimpleType::new(Family::E, 6).unwrap());
        assert_eq!(e6, vec![true, false, true, true, true, true]);
        let e7 = table_row(SimpleType::new(Family::E, 7).unwrap());
        assert_eq!(e7, vec![false, true, true, false, true, false, true]);
        let e8 = table_row(SimpleType::new(Family::E, 8).unwrap());
        assert_eq!(
            e8,
            vec![false, true, true, false, true, false, true, false]
        );
    }

    #[test]
    fn b_type_verdicts_by_parity() {
        // odd i always quasi-reductive (cascade roots); β_l extra for l even
        for l in 2..=8 {
            let row = table_row(SimpleType::new(Family::B, l).unwrap());
            for (i, &v) in row.iter().enumerate() {
                let expect = (i + 1) % 2 == 1 || (i + 1 == l && l % 2 == 0);
                assert_eq!(v, expect, "B{l} β{}", i + 1);
            }
        }
    }

    #[test]
    fn cond_root_properties_exhaustive_small() {
        for (f, l) in [
            (Family::A, 5),
            (Family::B, 6),
            (Family::C, 6),
            (Family::D, 6),
            (Family::F, 4),
            (Family::G, 2),
            (Family::E, 7),
        ] {
            let (rs, c) = setup(f, l);
            let part = partition_roots(&rs, &c);
            assert_eq!(cond_root_i_violations(&rs, &c), 0, "{f:?}{l} (i)");
            assert_eq!(cond_root_ii_violations(&rs, &c, &part), 0, "{f:?}{l} (ii)");
            assert_eq!(
                cond_root_iii_violations(&rs, &c, &part),
                0,
                "{f:?}{l} (iii)"
            );
        }
    }

    #[test]
    fn simple_d3prime_only_for_f4_c_and_even_b() {
        // derived fact: Π ∩ Δ₊³′ is nonempty exactly for F4, C_l, and
        // B_l with l even (the shipped table's "l odd" is a transcription
        // slip; see the verification notes)
        for l in 2..=9 {
            let (rs, c) = setup(Family::B, l);
            let part = partition_roots(&rs, &c);
            let nonempty = (0..l).any(|i| {
                part.class_of[&rs.simple_root(i)] == PartClass::D3Prime
            });
            assert_eq!(nonempty, l % 2 == 0, "B{l}");
        }
        for l in 3..=9 {
            let (rs, c) = setup(Family::C, l);
            let part = partition_roots(&rs, &c);
            assert!((0..l).any(|i| part.class_of[&rs.simple_root(i)] == PartClass::D3Prime));
        }
        for (f, l) in [
            (Family::A, 8),
            (Family::D, 8),
            (Family::E, 8),
            (Family::G, 2),
        ] {
            let (rs, c) = setup(f, l);
            let part = partition_roots(&rs, &c);
            assert!(
                !(0..l).any(|i| part.class_of[&rs.simple_root(i)] == PartClass::D3Prime),
                "{f:?}{l}"
            );
        }
        let (rs, c) = setup(Family::F, 4);
        let part = partition_roots(&rs, &c);
        assert!((0..4).any(|i| part.class_of[&rs.simple_root(i)] == PartClass::D3Prime));
    }

    #[test]
    fn direct_check_agrees_on_small_types() {
        use crate::indexcalc::ScCache;
        let cache = ScCache::new();
        for (f, l) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let t = SimpleType::new(f, l).unwrap();
            let sc = cache.get(t);
            let row = table_row(t);
            for (i, &expect) in row.iter().enumerate() {
                let got = direct_parabolic_check(sc.clone(), i, 1234).unwrap();
                assert_eq!(got, expect, "{f:?}{l} β{}", i + 1);
            }
        }
    }
}
